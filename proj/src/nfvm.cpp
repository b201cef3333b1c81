#include "layerfv/nfvm.hpp"

#include "layerfv/operators.hpp"

#include <cmath>
#include <sstream>

namespace layerfv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ProfileIntegrals profile_integrals(double eps, double t, double h) {
    if (!(t > 0.0)) throw std::domain_error("profile_integrals: t must be positive");
    if (!(h > 0.0)) throw std::domain_error("profile_integrals: h must be positive");
    const double st = std::sqrt(eps * t);
    ProfileIntegrals p;
    p.I0h = -std::sqrt(kPi) * st * std::erf(h / (2.0 * st));
    p.phi_0 = -1.0;
    p.phi_h2 = -std::exp(-h * h / (16.0 * eps * t));
    p.phi_h = -std::exp(-h * h / (4.0 * eps * t));
    p.I_zgrad_lower = p.phi_h2 - p.phi_0;
    p.I_zgrad_upper = p.phi_h - p.phi_h2;
    return p;
}

ClosureRow near_wall_equation(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                              const VectorField& f_np1, WallLayer layer, int i, int j,
                              int comp) {
    const double t1 = (st.step_index + 1) * cfg.dt;
    const ProfileIntegrals pr = profile_integrals(cfg.eps, t1, g.dz);
    const double I0 = pr.I0h;
    const double cw = cfg.eps * pr.phi_h2 / g.dz;

    ClosureRow row;
    row.c_r = -2.0 * cw;
    row.c_u1 = I0 * (3.0 / (2.0 * cfg.dt)) +
               I0 * cfg.eps * (2.0 / (g.dx * g.dx) + 2.0 / (g.dy * g.dy)) + 3.0 * cw;
    row.c_u2 = -cw;
    row.c_ux = -I0 * cfg.eps / (g.dx * g.dx);
    row.c_uy = -I0 * cfg.eps / (g.dy * g.dy);

    // Explicit side: the same per-unit-volume combination as the momentum
    // right-hand side at the wall-adjacent cell, weighted by I0h.
    const VectorField rhs = assemble_momentum_rhs(st, cfg, g, f_np1);
    const int k = layer == WallLayer::Bottom ? 1 : g.L;
    row.rhs = I0 * rhs.component(comp)(i, j, k);
    return row;
}

VectorField nfvm_momentum_step(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                               const VectorField& f_np1, const ModeSolver& ms, double t_np1,
                               EnrichmentData* enrich, double* residual_out) {
    const VectorField rhs = assemble_momentum_rhs(st, cfg, g, f_np1);
    const ProfileIntegrals pr = profile_integrals(cfg.eps, t_np1, g.dz);

    VectorField out(g);
    double worst = 0.0;
    for (int c = 0; c < 2; ++c) {
        std::vector<double>& rb = c == 0 ? enrich->r_bottom_u : enrich->r_bottom_v;
        std::vector<double>& rt = c == 0 ? enrich->r_top_u : enrich->r_top_v;
        ms.solve_helmholtz_enriched(rhs.component(c), pr.I0h, pr.phi_h2, out.component(c), rb,
                                    rt);

        // stencil-side residual of the augmented system
        CellField uu = out.component(c);
        fill_periodic_ghosts(uu);
        for (int i = 1; i <= g.M; ++i)
            for (int j = 1; j <= g.N; ++j) {
                uu(i, j, 0) = 2.0 * rb[(i - 1) * g.N + (j - 1)] - uu(i, j, 1);
                uu(i, j, g.L + 1) = 2.0 * rt[(i - 1) * g.N + (j - 1)] - uu(i, j, g.L);
            }
        fill_periodic_ghosts(uu); // ghost corners after wall fill
        const CellField lap = laplacian(uu, g);
        const double sigma = 3.0 / (2.0 * cfg.dt);
        double num = 0.0, den = 0.0;
        for (int i = 1; i <= g.M; ++i)
            for (int j = 1; j <= g.N; ++j)
                for (int k = 1; k <= g.L; ++k) {
                    const double r =
                        sigma * uu(i, j, k) - cfg.eps * lap(i, j, k) - rhs.component(c)(i, j, k);
                    num += r * r;
                    den += rhs.component(c)(i, j, k) * rhs.component(c)(i, j, k);
                }
        // closure rows
        const double cw = cfg.eps * pr.phi_h2 / g.dz;
        const double hx = cfg.eps / (g.dx * g.dx), hy = cfg.eps / (g.dy * g.dy);
        for (int i = 1; i <= g.M; ++i)
            for (int j = 1; j <= g.N; ++j) {
                const int ip = g.wrap_x(i + 1), im = g.wrap_x(i - 1);
                const int jp = g.wrap_y(j + 1), jm = g.wrap_y(j - 1);
                const CellField& u = out.component(c);
                const double horlap_b = hx * (u(ip, j, 1) - 2.0 * u(i, j, 1) + u(im, j, 1)) +
                                        hy * (u(i, jp, 1) - 2.0 * u(i, j, 1) + u(i, jm, 1));
                const double rb_ij = rb[(i - 1) * g.N + (j - 1)];
                double r = pr.I0h * (sigma * u(i, j, 1) - horlap_b) +
                           cw * (3.0 * u(i, j, 1) - 2.0 * rb_ij - u(i, j, 2)) -
                           pr.I0h * rhs.component(c)(i, j, 1);
                num += r * r;
                const double horlap_t =
                    hx * (u(ip, j, g.L) - 2.0 * u(i, j, g.L) + u(im, j, g.L)) +
                    hy * (u(i, jp, g.L) - 2.0 * u(i, j, g.L) + u(i, jm, g.L));
                const double rt_ij = rt[(i - 1) * g.N + (j - 1)];
                r = pr.I0h * (sigma * u(i, j, g.L) - horlap_t) +
                    cw * (3.0 * u(i, j, g.L) - 2.0 * rt_ij - u(i, j, g.L - 1)) -
                    pr.I0h * rhs.component(c)(i, j, g.L);
                num += r * r;
            }
        const double rel = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
        worst = std::max(worst, rel);
        if (rel > cfg.lin_tol) {
            std::ostringstream os;
            os << "nfvm_momentum_step: residual contract violated, component " << c
               << ", relative " << rel;
            throw SolverError(os.str(), rel);
        }
    }

    // normal component: no enrichment (corrector's third component is zero)
    ms.solve_helmholtz_dirichlet(rhs.w, out.w);
    const double res_w = momentum_residual_dirichlet(out.w, rhs.w, cfg, g);
    if (res_w > cfg.lin_tol)
        throw SolverError("nfvm_momentum_step: w residual contract violated", res_w);
    worst = std::max(worst, res_w);
    if (residual_out) *residual_out = worst;
    return out;
}

RunResult nfvm_run(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                   const ExactSolution* exact) {
    SimConfig c = cfg;
    c.scheme = Scheme::NFVM;
    return run_scheme(c, g, f, exact);
}

} // namespace layerfv
