#include "layerfv/cfvm.hpp"

#include "layerfv/nfvm.hpp"
#include "layerfv/operators.hpp"

#include <cmath>
#include <sstream>

namespace layerfv {

void SimConfig::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("SimConfig: eps must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("SimConfig: t_end must be at least dt");
    if (theta < 0.0) throw std::invalid_argument("SimConfig: theta must be nonnegative");
    if (!(lin_tol > 0.0)) throw std::invalid_argument("SimConfig: lin_tol must be positive");
    if (!std::isfinite(alpha)) throw std::invalid_argument("SimConfig: alpha must be finite");
}

double coefficient_a(const SimConfig& cfg, const GridSpec& g) {
    return 3.0 * g.dx * g.dy * g.dz / (2.0 * cfg.dt) +
           2.0 * cfg.eps * (g.dx * g.dy / g.dz + g.dy * g.dz / g.dx + g.dx * g.dz / g.dy);
}

void startup(SchemeState& st, const SimConfig& cfg, const GridSpec& g, const VectorField& u0) {
    st.u_n = u0;
    st.u_nm1 = u0;
    st.u_np1 = u0;
    st.p_n.fill(0.0);
    st.p_nm1.fill(0.0);
    st.F_n = interpolate_fluxes(u0, st.p_n, cfg, g);
    st.F_nm1 = st.F_n;
    st.F_np1 = st.F_n;
    st.step_index = 0;
    st.time = 0.0;
    if (cfg.scheme == Scheme::NFVM) {
        const int mn = g.M * g.N;
        st.enrich.r_bottom_u.assign(mn, 0.0);
        st.enrich.r_bottom_v.assign(mn, 0.0);
        st.enrich.r_top_u.assign(mn, 0.0);
        st.enrich.r_top_v.assign(mn, 0.0);
    }
}

VectorField assemble_momentum_rhs(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                                  const VectorField& f_np1) {
    // pressure extrapolation 2 p^n - p^{n-1} with ghost rules applied
    CellField pex(g);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                pex(i, j, k) = 2.0 * st.p_n(i, j, k) - st.p_nm1(i, j, k);
    fill_periodic_ghosts(pex);
    fill_pressure_wall_ghosts(pex);
    const VectorField gp = grad_pressure(pex, g);

    const double idt = 1.0 / (2.0 * cfg.dt);
    VectorField rhs(g);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const double ue = 2.0 * st.u_n.u(i, j, k) - st.u_nm1.u(i, j, k);
                const double ve = 2.0 * st.u_n.v(i, j, k) - st.u_nm1.v(i, j, k);
                rhs.u(i, j, k) = f_np1.u(i, j, k) +
                                 (4.0 * st.u_n.u(i, j, k) - st.u_nm1.u(i, j, k)) * idt +
                                 cfg.alpha * ve - gp.u(i, j, k);
                rhs.v(i, j, k) = f_np1.v(i, j, k) +
                                 (4.0 * st.u_n.v(i, j, k) - st.u_nm1.v(i, j, k)) * idt -
                                 cfg.alpha * ue - gp.v(i, j, k);
                rhs.w(i, j, k) = f_np1.w(i, j, k) +
                                 (4.0 * st.u_n.w(i, j, k) - st.u_nm1.w(i, j, k)) * idt -
                                 gp.w(i, j, k);
            }
    return rhs;
}

double momentum_residual_dirichlet(const CellField& u, const CellField& rhs,
                                   const SimConfig& cfg, const GridSpec& g) {
    CellField uu = u;
    fill_periodic_ghosts(uu);
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            uu(i, j, 0) = -uu(i, j, 1);
            uu(i, j, g.L + 1) = -uu(i, j, g.L);
        }
    const CellField lap = laplacian(uu, g);
    const double sigma = 3.0 / (2.0 * cfg.dt);
    double num = 0.0, den = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const double r = sigma * uu(i, j, k) - cfg.eps * lap(i, j, k) - rhs(i, j, k);
                num += r * r;
                den += rhs(i, j, k) * rhs(i, j, k);
            }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

VectorField momentum_step(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                          const VectorField& f_np1, const ModeSolver& ms,
                          double* residual_out) {
    const VectorField rhs = assemble_momentum_rhs(st, cfg, g, f_np1);
    VectorField out(g);
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        ms.solve_helmholtz_dirichlet(rhs.component(c), out.component(c));
        const double res = momentum_residual_dirichlet(out.component(c), rhs.component(c), cfg, g);
        worst = std::max(worst, res);
        if (res > cfg.lin_tol) {
            std::ostringstream os;
            os << "momentum_step: residual contract violated, component " << c << ", relative "
               << res;
            throw SolverError(os.str(), res);
        }
    }
    if (residual_out) *residual_out = worst;
    return out;
}

FaceFluxes interpolate_fluxes(const VectorField& vel, const CellField& p_n, const SimConfig& cfg,
                              const GridSpec& g) {
    FaceFluxes F(g);
    const double a = coefficient_a(cfg, g);
    const double cu = cfg.theta * g.dy * g.dz / (4.0 * a);
    const double cv = cfg.theta * g.dx * g.dz / (4.0 * a);
    const double cw = cfg.theta * g.dx * g.dy / (4.0 * a);

    for (int f = 1; f <= g.M; ++f) {
        const int i = f, ip = g.wrap_x(f + 1), ipp = g.wrap_x(f + 2), im = g.wrap_x(f - 1);
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                double flux = 0.5 * (vel.u(i, j, k) + vel.u(ip, j, k));
                if (cfg.theta != 0.0)
                    flux += cu * (p_n(ipp, j, k) - 3.0 * p_n(ip, j, k) + 3.0 * p_n(i, j, k) -
                                  p_n(im, j, k));
                F.Fu(f, j, k) = flux;
            }
    }
    for (int j = 1; j <= g.N; ++j)
        for (int k = 1; k <= g.L; ++k) F.Fu(0, j, k) = F.Fu(g.M, j, k);

    for (int f = 1; f <= g.N; ++f) {
        const int j = f, jp = g.wrap_y(f + 1), jpp = g.wrap_y(f + 2), jm = g.wrap_y(f - 1);
        for (int i = 1; i <= g.M; ++i)
            for (int k = 1; k <= g.L; ++k) {
                double flux = 0.5 * (vel.v(i, j, k) + vel.v(i, jp, k));
                if (cfg.theta != 0.0)
                    flux += cv * (p_n(i, jpp, k) - 3.0 * p_n(i, jp, k) + 3.0 * p_n(i, j, k) -
                                  p_n(i, jm, k));
                F.Fv(i, f, k) = flux;
            }
    }
    for (int i = 1; i <= g.M; ++i)
        for (int k = 1; k <= g.L; ++k) F.Fv(i, 0, k) = F.Fv(i, g.N, k);

    // interior z-faces; walls stay 0.  The theta correction needs p at k-1
    // and k+2, which the wall-adjacent faces do not have without inventing a
    // near-wall stencil, so it is dropped there.
    for (int f = 1; f <= g.L - 1; ++f) {
        const bool corrected = cfg.theta != 0.0 && f >= 2 && f <= g.L - 2;
        for (int i = 1; i <= g.M; ++i)
            for (int j = 1; j <= g.N; ++j) {
                double flux = 0.5 * (vel.w(i, j, f) + vel.w(i, j, f + 1));
                if (corrected)
                    flux += cw * (p_n(i, j, f + 2) - 3.0 * p_n(i, j, f + 1) +
                                  3.0 * p_n(i, j, f) - p_n(i, j, f - 1));
                F.Fw(i, j, f) = flux;
            }
    }
    return F;
}

namespace {

FaceFluxes bdf2_flux_combo(const FaceFluxes& F1, const FaceFluxes& F0, const FaceFluxes& Fm,
                           const GridSpec& g, double dt) {
    FaceFluxes out(g);
    const double s = 1.0 / (2.0 * dt);
    for (int f = 0; f <= g.M; ++f)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                out.Fu(f, j, k) = s * (3.0 * F1.Fu(f, j, k) - 4.0 * F0.Fu(f, j, k) + Fm.Fu(f, j, k));
    for (int i = 1; i <= g.M; ++i)
        for (int f = 0; f <= g.N; ++f)
            for (int k = 1; k <= g.L; ++k)
                out.Fv(i, f, k) = s * (3.0 * F1.Fv(i, f, k) - 4.0 * F0.Fv(i, f, k) + Fm.Fv(i, f, k));
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int f = 0; f <= g.L; ++f)
                out.Fw(i, j, f) = s * (3.0 * F1.Fw(i, j, f) - 4.0 * F0.Fw(i, j, f) + Fm.Fw(i, j, f));
    return out;
}

} // namespace

CellField solve_psi(const FaceFluxes& F_np1, const FaceFluxes& F_n, const FaceFluxes& F_nm1,
                    const GridSpec& g, const SimConfig& cfg, const ModeSolver& ms,
                    bool* compat_warning) {
    const FaceFluxes combo = bdf2_flux_combo(F_np1, F_n, F_nm1, g, cfg.dt);
    const CellField rhs = divergence(combo, g);
    CellField psi(g);
    const double mean = ms.solve_poisson_neumann(rhs, psi);
    if (compat_warning) *compat_warning = std::abs(mean) > 1e3 * cfg.lin_tol;
    return psi;
}

CellField update_pressure(const CellField& psi, const SchemeState& st, const FaceFluxes& F_np1,
                          const GridSpec& g, const SimConfig& cfg) {
    const CellField div = divergence(F_np1, g);
    CellField p(g);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                p(i, j, k) = psi(i, j, k) + 2.0 * st.p_n(i, j, k) - st.p_nm1(i, j, k) -
                             cfg.eps * div(i, j, k);
    const double mean = p.interior_mean();
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) p(i, j, k) -= mean;
    return p;
}

double velocity_l2_norm(const VectorField& v, const GridSpec& g) {
    double s = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                s += v.u(i, j, k) * v.u(i, j, k) + v.v(i, j, k) * v.v(i, j, k) +
                     v.w(i, j, k) * v.w(i, j, k);
    return std::sqrt(s * g.cell_volume());
}

RunResult run_scheme(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                     const ExactSolution* exact, SchemeState* final_state) {
    cfg.validate();
    SchemeState st(g);
    VectorField u0(g); // zero initial data for the manufactured test
    startup(st, cfg, g, u0);

    const ModeSolver ms(g, cfg.dt, cfg.eps);
    const int nsteps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));

    RunResult out;
    VectorField f_np1(g);
    for (int n = 0; n < nsteps; ++n) {
        const double t1 = (n + 1) * cfg.dt;
        for (int i = 1; i <= g.M; ++i)
            for (int j = 1; j <= g.N; ++j)
                for (int k = 1; k <= g.L; ++k) {
                    const auto fv = f(g.x_center(i), g.y_center(j), g.z_center(k), t1);
                    f_np1.u(i, j, k) = fv[0];
                    f_np1.v(i, j, k) = fv[1];
                    f_np1.w(i, j, k) = fv[2];
                }

        StepDiagnostics diag;
        diag.step = n + 1;
        diag.time = t1;
        try {
            if (cfg.scheme == Scheme::CFVM) {
                st.u_np1 = momentum_step(st, cfg, g, f_np1, ms, &diag.momentum_residual);
            } else {
                st.u_np1 = nfvm_momentum_step(st, cfg, g, f_np1, ms, t1, &st.enrich,
                                              &diag.momentum_residual);
            }

            st.F_np1 = interpolate_fluxes(st.u_np1, st.p_n, cfg, g);
            bool warn = false;
            const CellField psi = solve_psi(st.F_np1, st.F_n, st.F_nm1, g, cfg, ms, &warn);
            if (warn) ++out.compatibility_warnings;
            CellField p1 = update_pressure(psi, st, st.F_np1, g, cfg);

            // rotate histories
            st.u_nm1 = st.u_n;
            st.u_n = st.u_np1;
            st.p_nm1 = st.p_n;
            st.p_n = p1;
            st.F_nm1 = st.F_n;
            st.F_n = st.F_np1;
            st.step_index = n + 1;
            st.time = t1;
        } catch (const SolverError& e) {
            out.status = RunStatus::SolverFailure;
            out.message = std::string(e.what()) + " at step " + std::to_string(n + 1);
            break;
        }

        diag.vel_l2 = velocity_l2_norm(st.u_n, g);
        diag.div_flux_l2 = [&] {
            const CellField d = divergence(st.F_n, g);
            double s = 0.0;
            for (int i = 1; i <= g.M; ++i)
                for (int j = 1; j <= g.N; ++j)
                    for (int k = 1; k <= g.L; ++k) s += d(i, j, k) * d(i, j, k);
            return std::sqrt(s * g.cell_volume());
        }();
        if (exact) {
            diag.vel_err_l2 = l2_error(st.u_n, *exact, t1, g);
            diag.p_err_l2 = l2_error(st.p_n, *exact, t1, g);
        }
        out.history.push_back(diag);
        out.steps_completed = n + 1;

        const bool finite = st.u_n.u.interior_finite() && st.u_n.v.interior_finite() &&
                            st.u_n.w.interior_finite() && st.p_n.interior_finite();
        if (!finite || diag.vel_l2 > 1e30) {
            out.status = RunStatus::BlowUp;
            out.message = "blow-up detected at step " + std::to_string(n + 1) +
                          " (velocity L2 norm " + std::to_string(diag.vel_l2) + ")";
            break;
        }
    }

    if (out.status == RunStatus::Completed && exact && !out.history.empty()) {
        out.final_vel_err = out.history.back().vel_err_l2;
        out.final_p_err = out.history.back().p_err_l2;
    }
    if (final_state) *final_state = st;
    return out;
}

RunResult cfvm_run(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                   const ExactSolution* exact) {
    SimConfig c = cfg;
    c.scheme = Scheme::CFVM;
    return run_scheme(c, g, f, exact);
}

} // namespace layerfv
