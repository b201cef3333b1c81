#pragma once

#include "layerfv/cfvm.hpp"

namespace layerfv {

/// Cell-layer integrals and point values of the approximate corrector
/// profile phi(z) = -exp(-z^2/(4 eps t)) needed by the near-wall
/// weighted-residual rows; recomputed each step (the profile depends on t).
struct ProfileIntegrals {
    double I0h;           // integral of phi over (0,h); negative
    double phi_0;         // phi(0) = -1
    double phi_h2;        // phi(h/2)
    double phi_h;         // phi(h)
    double I_zgrad_lower; // phi(h/2) - phi(0)
    double I_zgrad_upper; // phi(h) - phi(h/2)
};

ProfileIntegrals profile_integrals(double eps, double t, double h);

enum class WallLayer { Bottom, Top };

/// One corrector-weighted near-wall relation: the coefficients of the
/// unknowns it couples (the r-node, the first two cell layers and the
/// horizontal neighbors of the first layer) and the assembled explicit side.
/// All entries are per unit horizontal cell area.
struct ClosureRow {
    double c_r;        // r_{i,j}
    double c_u1;       // u at the wall-adjacent cell (k=1 or k=L)
    double c_u2;       // u one layer inward
    double c_ux;       // each x-neighbor of the wall-adjacent cell
    double c_uy;       // each y-neighbor
    double rhs;        // right-hand side
};

/// Assembles the weighted-residual relation for horizontal cell (i,j),
/// tangential component comp (0=u, 1=v), at time (st.step_index+1)*dt.
ClosureRow near_wall_equation(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                              const VectorField& f_np1, WallLayer layer, int i, int j, int comp);

/// Enriched momentum solve: tangential components get r-node wall unknowns
/// closed by the near-wall relations; w keeps the classical solve.  Checks
/// the full augmented residual (momentum rows with reconstructed ghosts plus
/// closure rows) against cfg.lin_tol.  On success the wall ghost identity
/// u_0 = 2 r - u_1 is folded into the returned field's ghost layers.
VectorField nfvm_momentum_step(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                               const VectorField& f_np1, const ModeSolver& ms, double t_np1,
                               EnrichmentData* enrich, double* residual_out = nullptr);

RunResult nfvm_run(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                   const ExactSolution* exact = nullptr);

} // namespace layerfv
