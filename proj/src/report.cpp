#include "layerfv/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace layerfv {

namespace {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

} // namespace

bool operator==(const ExperimentRow& a, const ExperimentRow& b) {
    return a.N == b.N && a.t == b.t && a.eps == b.eps && a.scheme == b.scheme &&
           a.vel_l2 == b.vel_l2 && a.p_l2 == b.p_l2 && a.dt == b.dt && a.theta == b.theta &&
           a.alpha == b.alpha && a.status == b.status; // wall clock excluded
}

const char* scheme_name(Scheme s) { return s == Scheme::CFVM ? "cfvm" : "nfvm"; }

const char* quantity_name(ScalingQuantity q) {
    switch (q) {
    case ScalingQuantity::dphi3_dt_L2: return "dphi3_dt";
    case ScalingQuantity::z_eps_d2phi3_L2: return "z_eps_d2phi3";
    case ScalingQuantity::phi3_over_sqrt_eps_L2: return "phi3_over_sqrt_eps";
    }
    return "?";
}

std::vector<ExperimentRow> run_table(const std::vector<int>& grids,
                                     const std::vector<double>& eps_list,
                                     const std::vector<Scheme>& schemes, const SimConfig& base,
                                     int jobs) {
    struct Job {
        int N;
        double eps;
        Scheme scheme;
    };
    std::vector<Job> work;
    for (double eps : eps_list)
        for (int N : grids)
            for (Scheme s : schemes) work.push_back({N, eps, s});

    std::vector<ExperimentRow> rows(work.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= work.size()) return;
            const Job& jb = work[idx];
            SimConfig cfg = base;
            cfg.eps = jb.eps;
            cfg.scheme = jb.scheme;
            ExperimentRow row;
            row.N = jb.N;
            row.t = cfg.t_end;
            row.eps = jb.eps;
            row.scheme = jb.scheme;
            row.dt = cfg.dt;
            row.theta = cfg.theta;
            row.alpha = cfg.alpha;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const GridSpec g = build_grid(jb.N, jb.N, jb.N);
                const ExactSolution es{jb.eps, cfg.alpha};
                const ForcingFn f = [es](double x, double y, double z, double t) {
                    return forcing(es, x, y, z, t);
                };
                const RunResult r = run_scheme(cfg, g, f, &es);
                if (r.status == RunStatus::Completed) {
                    row.vel_l2 = r.final_vel_err;
                    row.p_l2 = r.final_p_err;
                    row.status = "ok";
                } else {
                    row.status = r.status == RunStatus::BlowUp ? "blowup" : "solver_failure";
                }
            } catch (const std::exception&) {
                row.status = "solver_failure";
            }
            row.wall_clock_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rows[idx] = row;
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

void emit(const std::vector<ExperimentRow>& rows, TableFormat fmt, std::ostream& os) {
    if (rows.empty()) throw std::invalid_argument("emit: rows must be nonempty");
    if (fmt == TableFormat::Csv) {
        os << "N,t,eps,scheme,vel_l2,p_l2,dt,theta,alpha,status,wall_clock_s\n";
        for (const auto& r : rows) {
            os << r.N << ',' << fmt_full(r.t) << ',' << fmt_full(r.eps) << ','
               << scheme_name(r.scheme) << ',' << (r.vel_l2 ? fmt_full(*r.vel_l2) : "") << ','
               << (r.p_l2 ? fmt_full(*r.p_l2) : "") << ',' << fmt_full(r.dt) << ','
               << fmt_full(r.theta) << ',' << fmt_full(r.alpha) << ',' << r.status << ','
               << fmt_short(r.wall_clock_s) << '\n';
        }
    } else {
        os << "| N=M=L | t | eps | scheme | velocity L2 | pressure L2 | status |\n";
        os << "|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            os << "| " << r.N << " | " << fmt_short(r.t) << " | " << fmt_short(r.eps) << " | "
               << scheme_name(r.scheme) << " | " << (r.vel_l2 ? fmt_short(*r.vel_l2) : "-")
               << " | " << (r.p_l2 ? fmt_short(*r.p_l2) : "-") << " | " << r.status << " |\n";
        }
    }
}

void emit(const std::vector<ExperimentRow>& rows, TableFormat fmt, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit: cannot open " + path);
    emit(rows, fmt, os);
}

std::vector<ExperimentRow> parse_csv(std::istream& is) {
    std::vector<ExperimentRow> rows;
    std::string line;
    if (!std::getline(is, line)) return rows; // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 11) cells.emplace_back();
        ExperimentRow r;
        r.N = std::stoi(cells[0]);
        r.t = std::stod(cells[1]);
        r.eps = std::stod(cells[2]);
        r.scheme = cells[3] == "cfvm" ? Scheme::CFVM : Scheme::NFVM;
        if (!cells[4].empty()) r.vel_l2 = std::stod(cells[4]);
        if (!cells[5].empty()) r.p_l2 = std::stod(cells[5]);
        r.dt = std::stod(cells[6]);
        r.theta = std::stod(cells[7]);
        r.alpha = std::stod(cells[8]);
        r.status = cells[9];
        if (!cells[10].empty()) r.wall_clock_s = std::stod(cells[10]);
        rows.push_back(r);
    }
    return rows;
}

ScalingStudyResult run_scaling_study(const std::vector<double>& eps_list, ScalingQuantity q,
                                     double alpha, double quad_tol) {
    if (eps_list.empty())
        throw std::invalid_argument("run_scaling_study: eps_list must be nonempty");
    CorrectorEval ce;
    ce.alpha = alpha;
    ce.quad_tol = quad_tol;
    ce.eps = eps_list.front();
    ScalingStudyResult out;
    out.quantity = q;
    out.study = scaling_slope(ce, q, eps_list);
    return out;
}

void emit_scaling(const ScalingStudyResult& r, std::ostream& os) {
    os << "quantity,eps,l2_norm\n";
    for (size_t i = 0; i < r.study.eps.size(); ++i)
        os << quantity_name(r.quantity) << ',' << fmt_full(r.study.eps[i]) << ','
           << fmt_full(r.study.norms[i]) << '\n';
    os << "# slope," << fmt_full(r.study.slope) << '\n';
}

} // namespace layerfv
