// Command-line driver: single runs, the error-table sweep, the corrector
// scaling studies and the corrector verification suite.

#include "layerfv/correctors.hpp"
#include "layerfv/nfvm.hpp"
#include "layerfv/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace layerfv;

struct Options {
    std::string scheme = "nfvm";
    double eps = 1e-2;
    int n = 20;
    double dt = 1e-2;
    double t_end = 1.0;
    double theta = 1.0;
    double alpha = 1.0;
    double lin_tol = 1e-10;
    std::string out;
    std::string format = "csv";
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
};

SimConfig to_config(const Options& o) {
    SimConfig cfg;
    cfg.eps = o.eps;
    cfg.alpha = o.alpha;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.theta = o.theta;
    cfg.lin_tol = o.lin_tol;
    cfg.scheme = o.scheme == "cfvm" ? Scheme::CFVM : Scheme::NFVM;
    return cfg;
}

int cmd_run(const Options& o) {
    SimConfig cfg = to_config(o);
    const GridSpec g = build_grid(o.n, o.n, o.n);
    const ExactSolution es{cfg.eps, cfg.alpha};
    const ForcingFn f = [es](double x, double y, double z, double t) {
        return forcing(es, x, y, z, t);
    };
    const RunResult r = run_scheme(cfg, g, f, &es);
    if (r.status == RunStatus::Completed) {
        std::printf("scheme=%s eps=%g N=%d dt=%g t=%g theta=%g alpha=%g\n",
                    scheme_name(cfg.scheme), cfg.eps, o.n, cfg.dt, cfg.t_end, cfg.theta,
                    cfg.alpha);
        std::printf("velocity L2 error: %.6e\n", r.final_vel_err);
        std::printf("pressure L2 error: %.6e\n", r.final_p_err);
        if (r.compatibility_warnings > 0)
            std::printf("warning: psi compatibility flag raised on %d step(s)\n",
                        r.compatibility_warnings);
        return 0;
    }
    std::printf("run did not complete: %s\n", r.message.c_str());
    std::printf("status=%s steps=%d\n", r.status == RunStatus::BlowUp ? "blowup" : "solver_failure",
                r.steps_completed);
    if (!r.history.empty()) {
        const auto& d = r.history.back();
        std::printf("last finite diagnostics: step=%d velocity_norm=%.6e div_flux=%.6e\n", d.step,
                    d.vel_l2, d.div_flux_l2);
    }
    return 2;
}

int cmd_table(const Options& o) {
    SimConfig cfg = to_config(o);
    const std::vector<int> grids{10, 20, 30};
    const std::vector<double> eps_list{1e-2, 1e-3, 1e-5, 1e-6, 1e-7};
    const auto rows =
        run_table(grids, eps_list, {Scheme::CFVM, Scheme::NFVM}, cfg, std::max(1, o.jobs));
    const TableFormat fmt = o.format == "markdown" ? TableFormat::Markdown : TableFormat::Csv;
    if (o.out.empty()) {
        emit(rows, fmt, std::cout);
    } else {
        emit(rows, fmt, o.out);
        std::printf("wrote %zu rows to %s\n", rows.size(), o.out.c_str());
    }
    return 0;
}

int cmd_scaling(const Options& o) {
    const std::vector<double> eps_list{1e-2, 1e-3, 1e-4, 1e-5};
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            std::fprintf(stderr, "cannot open %s\n", o.out.c_str());
            return 1;
        }
        os = &file;
    }
    struct Check {
        ScalingQuantity q;
        double expect;
    };
    int rc = 0;
    for (const Check c : {Check{ScalingQuantity::dphi3_dt_L2, 0.75},
                          Check{ScalingQuantity::z_eps_d2phi3_L2, 1.25},
                          Check{ScalingQuantity::phi3_over_sqrt_eps_L2, 0.25}}) {
        try {
            const auto r = run_scaling_study(eps_list, c.q, o.alpha);
            emit_scaling(r, *os);
            std::printf("%-20s slope %.4f (expected about %.2f)\n", quantity_name(c.q),
                        r.study.slope, c.expect);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "scaling study failed: %s\n", e.what());
            rc = 2;
        }
    }
    return rc;
}

int cmd_verify_correctors(const Options& o) {
    int failures = 0;
    auto check = [&](bool ok, const char* name, double value) {
        std::printf("%-34s %s (%.3e)\n", name, ok ? "pass" : "FAIL", value);
        if (!ok) ++failures;
    };

    CorrectorEval ce;
    ce.eps = 1.0;
    ce.alpha = 0.0;
    ce.quad_tol = 1e-12;

    // closed-form oracle: constant unit trace against -erfc(z/(2 sqrt t))
    BoundaryTrace unit{[](double, double, double) { return 1.0; },
                       [](double, double, double) { return 0.0; }};
    double worst = 0.0;
    for (double t : {0.25, 0.5, 1.0})
        for (double z : {0.05, 0.2, 1.0}) {
            const auto v = exact_tangential_corrector(ce, unit, t, 0, 0, z);
            worst = std::max(worst, std::abs(v[0] + std::erfc(z / (2.0 * std::sqrt(t)))));
        }
    check(worst < 1e-8, "erfc oracle", worst);

    // boundary attainment for a time-dependent trace under rotation
    ce.alpha = 1.0;
    ce.eps = 1e-3;
    BoundaryTrace ramp{[](double t, double, double) { return t; },
                       [](double, double, double) { return 0.0; }};
    const auto v0 = exact_tangential_corrector(ce, ramp, 1.0, 0, 0, 0.0);
    check(std::abs(v0[0] + 1.0) < 1e-12, "boundary attainment", std::abs(v0[0] + 1.0));

    // stretched PDE residual by centered differences
    ce.eps = 1.0;
    BoundaryTrace smooth{[](double t, double, double) { return t; },
                         [](double t, double, double) { return t * t; }};
    double worst_res = 0.0;
    for (double alpha : {0.0, 1.0, 5.0}) {
        ce.alpha = alpha;
        const double h = 1e-3;
        for (const auto& [t, z] : {std::pair{0.7, 1.3}, std::pair{0.5, 0.8}, std::pair{0.9, 2.0}}) {
            auto u = [&](double tt, double zz) {
                return exact_tangential_corrector(ce, smooth, tt, 0, 0, zz);
            };
            const auto up = u(t + h, z), um = u(t - h, z);
            const auto uc = u(t, z), uzp = u(t, z + h), uzm = u(t, z - h);
            for (int comp = 0; comp < 2; ++comp) {
                const double ut = (up[comp] - um[comp]) / (2 * h);
                const double uzz = (uzp[comp] - 2 * uc[comp] + uzm[comp]) / (h * h);
                const double rot = alpha * (comp == 0 ? -uc[1] : uc[0]);
                worst_res = std::max(worst_res, std::abs(ut - uzz + rot));
            }
        }
    }
    check(worst_res < 5e-7, "stretched PDE residual", worst_res);

    // far-field decay and zero-initial-data limits
    ce.alpha = 1.0;
    const auto far = exact_tangential_corrector(ce, ramp, 1.0, 0, 0, 45.0);
    check(std::abs(far[0]) < 1e-8 && std::abs(far[1]) < 1e-8, "far-field decay",
          std::max(std::abs(far[0]), std::abs(far[1])));

    (void)o;
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver for the rotating Stokes channel with "
                 "boundary-layer-corrector enrichment"};
    app.set_config("--config", "", "key=value configuration file; flags take precedence");

    Options o;
    app.add_option("--scheme", o.scheme, "cfvm|nfvm")->check(CLI::IsMember({"cfvm", "nfvm"}))
        ->capture_default_str();
    app.add_option("--eps", o.eps, "viscosity (inverse Reynolds number)")->capture_default_str();
    app.add_option("--n", o.n, "cells per direction (M=N=L)")->capture_default_str();
    app.add_option("--dt", o.dt, "time step")->capture_default_str();
    app.add_option("--t-end", o.t_end, "final time")->capture_default_str();
    app.add_option("--theta", o.theta, "flux relaxation coefficient")->capture_default_str();
    app.add_option("--alpha", o.alpha, "rotation rate")->capture_default_str();
    app.add_option("--lin-tol", o.lin_tol, "linear solve residual tolerance")
        ->capture_default_str();
    app.add_option("--out", o.out, "output path (stdout if omitted)")->capture_default_str();
    app.add_option("--format", o.format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
    app.add_option("--jobs", o.jobs, "worker threads for table sweeps")->capture_default_str();

    auto* run = app.add_subcommand("run", "single simulation, prints the two L2 errors");
    auto* table = app.add_subcommand("table", "error-table sweep over grids and viscosities");
    auto* scaling = app.add_subcommand("scaling", "corrector-norm eps power-law studies");
    auto* verify = app.add_subcommand("verify-correctors", "corrector property suite");
    for (auto* sub : {run, table, scaling, verify}) sub->fallthrough();
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(o);
        if (*table) return cmd_table(o);
        if (*scaling) return cmd_scaling(o);
        if (*verify) return cmd_verify_correctors(o);
        std::cout << app.help();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
