#pragma once

#include <array>
#include <functional>
#include <vector>

namespace layerfv {

/// Tangential boundary trace to be cancelled at the wall; g3 is identically
/// zero.  Functions take (t, x, y).
struct BoundaryTrace {
    std::function<double(double, double, double)> g1;
    std::function<double(double, double, double)> g2;
};

/// Evaluation context for the boundary-layer correctors: viscosity, rotation
/// rate and quadrature controls.
struct CorrectorEval {
    double eps = 1e-2;
    double alpha = 1.0;
    double quad_tol = 1e-9;
    double t_singularity_cut = 0.0; // the substituted integrand needs no cut
    int max_subdiv = 1 << 14;

    void validate() const;
};

/// Fundamental solution of the 1D heat equation, K(t,z) = (4 pi t)^{-1/2}
/// exp(-z^2/(4t)).  Throws std::domain_error for t <= 0.
double heat_kernel(double t, double z);

/// Tangential boundary-layer corrector cancelling the trace g at z=0: the
/// rotating heat-layer convolution evaluated by adaptive quadrature on the
/// substituted (singularity-free) integrand.  Returns (phi1, phi2) at the
/// stretched height z/sqrt(eps); attains exactly -(g1,g2)(t,x,y) at z=0.
std::array<double, 2> exact_tangential_corrector(const CorrectorEval& ce,
                                                 const BoundaryTrace& g, double t, double x,
                                                 double y, double z);

/// Wall traces feeding the normal corrector: dz_u3 is d(u3)/dz at z=0 and
/// curl is (dx u2 - dy u1) at z=0, both functions of (tau, x, y).  The _dt
/// members (time derivatives of the traces) are needed only by the
/// time-derivative evaluator and the scaling study.
struct NormalTraces {
    std::function<double(double, double, double)> dz_u3;
    std::function<double(double, double, double)> curl;
    std::function<double(double, double, double)> dz_u3_dt;
    std::function<double(double, double, double)> curl_dt;
};

/// Normal component of the corrector recovered from incompressibility,
/// including the exponentially small counter-term that zeroes it at z=1.
/// O(sqrt(eps)) in magnitude.
double normal_corrector_phi3(const CorrectorEval& ce, const NormalTraces& tr, double t,
                             double x, double y, double z);

/// d(phi3)/dt: boundary term of the moving integration limit plus the
/// integral against the time-differentiated traces.
double normal_corrector_phi3_dt(const CorrectorEval& ce, const NormalTraces& tr, double t,
                                double x, double y, double z);

/// z * eps * d2(phi3)/dz2, evaluated on the cancellation-free rescaled
/// integrand (the raw second derivative is unbounded at the wall; the
/// z-weighted form is the quantity with a clean eps power law).
double normal_corrector_phi3_scaled_zz(const CorrectorEval& ce, const NormalTraces& tr,
                                       double t, double x, double y, double z);

/// Approximate bottom-layer profile used inside the enriched scheme:
/// (-exp(-z^2/(4 eps t)), -exp(-z^2/(4 eps t)), 0).
std::array<double, 3> approx_corrector(double eps, double t, double z);

/// Top-wall mirror of approx_corrector (profile in 1-z).
std::array<double, 3> mirrored_corrector(double eps, double t, double z);

enum class ScalingQuantity { dphi3_dt_L2, z_eps_d2phi3_L2, phi3_over_sqrt_eps_L2 };

struct ScalingStudy {
    double slope = 0.0;
    std::vector<double> eps;
    std::vector<double> norms;
};

/// Measures the eps power law of the named L2(Omega) norm at fixed t with
/// fixed smooth separable traces (dz_u3 = tau * cos(2 pi x) cos(2 pi y),
/// zero curl trace), and returns the least-squares log-log slope.
ScalingStudy scaling_slope(const CorrectorEval& ce, ScalingQuantity q,
                           const std::vector<double>& eps_list, double t = 1.0);

} // namespace layerfv
