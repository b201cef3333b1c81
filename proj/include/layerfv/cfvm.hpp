#pragma once

#include "layerfv/grid.hpp"
#include "layerfv/mms.hpp"
#include "layerfv/mode_solver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace layerfv {

enum class Scheme { CFVM, NFVM };

struct SimConfig {
    double eps = 1e-2;
    double alpha = 1.0;
    double dt = 1e-2;
    double t_end = 1.0;
    double theta = 1.0;
    Scheme scheme = Scheme::NFVM;
    double lin_tol = 1e-10;
    int lin_maxit = 10000;

    void validate() const;
};

/// Wall-node unknowns of the enriched scheme, one value per horizontal cell
/// for each tangential component; the normal component has no enrichment
/// (the corrector profile's third component is zero), so its r-nodes are
/// identically 0 and w keeps the midpoint Dirichlet ghosts.
struct EnrichmentData {
    std::vector<double> r_bottom_u, r_bottom_v;
    std::vector<double> r_top_u, r_top_v;
    bool active() const { return !r_bottom_u.empty(); }
};

struct SchemeState {
    VectorField u_np1, u_n, u_nm1;
    CellField p_n, p_nm1;
    FaceFluxes F_np1, F_n, F_nm1;
    EnrichmentData enrich;
    int step_index = 0;
    double time = 0.0;

    explicit SchemeState(const GridSpec& g)
        : u_np1(g), u_n(g), u_nm1(g), p_n(g), p_nm1(g), F_np1(g), F_n(g), F_nm1(g) {}
};

struct StepDiagnostics {
    int step = 0;
    double time = 0.0;
    double vel_l2 = 0.0;          // L2 norm of the velocity field
    double div_flux_l2 = 0.0;     // L2 norm of div F^{n+1}
    double momentum_residual = 0.0; // relative residual of the implicit solve
    double vel_err_l2 = -1.0;     // vs exact solution, when supplied
    double p_err_l2 = -1.0;
};

enum class RunStatus { Completed, BlowUp, SolverFailure };

struct RunResult {
    RunStatus status = RunStatus::Completed;
    std::vector<StepDiagnostics> history;
    std::string message;
    int compatibility_warnings = 0; // psi right-hand-side mean beyond threshold
    double final_vel_err = -1.0;
    double final_p_err = -1.0;
    int steps_completed = 0;
};

/// Thrown when an implicit solve violates the residual contract.
struct SolverError : std::runtime_error {
    double residual;
    SolverError(const std::string& what, double res) : std::runtime_error(what), residual(res) {}
};

using ForcingFn = std::function<std::array<double, 3>(double x, double y, double z, double t)>;

/// Flux-relaxation denominator a = 3 dx dy dz/(2 dt) + 2 eps (dx dy/dz +
/// dy dz/dx + dx dz/dy).
double coefficient_a(const SimConfig& cfg, const GridSpec& g);

/// Initializes all histories from u^0 (first step becomes a first-order
/// start: u^{-1} := u^0, p^0 = p^{-1} := 0, flux histories from u^0).
void startup(SchemeState& st, const SimConfig& cfg, const GridSpec& g, const VectorField& u0);

/// One implicit momentum solve (classical scheme: midpoint Dirichlet walls
/// for every component).  f_np1 is the forcing sampled at cell centers at
/// time (n+1) dt.  Throws SolverError if the residual contract fails.
VectorField momentum_step(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                          const VectorField& f_np1, const ModeSolver& ms,
                          double* residual_out = nullptr);

/// Relaxed momentum-interpolation fluxes: neighbor averages plus the
/// theta-weighted difference of one-sided pressure second differences.
/// Wall z-faces carry exactly 0; the z-face correction is dropped on the
/// faces adjacent to the walls.
FaceFluxes interpolate_fluxes(const VectorField& u_np1, const CellField& p_n,
                              const SimConfig& cfg, const GridSpec& g);

/// Pressure-increment Poisson solve from the BDF2 flux divergence; warns (via
/// return flag) when the pre-subtraction mean exceeds 1e3 * tol.
CellField solve_psi(const FaceFluxes& F_np1, const FaceFluxes& F_n, const FaceFluxes& F_nm1,
                    const GridSpec& g, const SimConfig& cfg, const ModeSolver& ms,
                    bool* compat_warning = nullptr);

/// p^{n+1} = psi + 2 p^n - p^{n-1} - eps div F^{n+1}, re-centered to zero
/// mean.
CellField update_pressure(const CellField& psi, const SchemeState& st, const FaceFluxes& F_np1,
                          const GridSpec& g, const SimConfig& cfg);

RunResult cfvm_run(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                   const ExactSolution* exact = nullptr);

/// Shared splitting loop used by both schemes (cfvm_run and nfvm_run are
/// thin wrappers that pin cfg.scheme).
RunResult run_scheme(const SimConfig& cfg, const GridSpec& g, const ForcingFn& f,
                     const ExactSolution* exact = nullptr, SchemeState* final_state = nullptr);

// shared helpers (also used by the enriched scheme and tests)
VectorField assemble_momentum_rhs(const SchemeState& st, const SimConfig& cfg, const GridSpec& g,
                                  const VectorField& f_np1);
double velocity_l2_norm(const VectorField& v, const GridSpec& g);
double momentum_residual_dirichlet(const CellField& u, const CellField& rhs,
                                   const SimConfig& cfg, const GridSpec& g);

} // namespace layerfv
