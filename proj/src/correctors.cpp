#include "layerfv/correctors.hpp"

#include "layerfv/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace layerfv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

[[noreturn]] void quad_failure(const char* what, const QuadResult& r) {
    throw std::runtime_error(std::string(what) + ": quadrature did not converge, achieved error " +
                             std::to_string(r.error_estimate) + " after " +
                             std::to_string(r.subdivisions) + " subdivisions");
}

double checked(const QuadResult& r, const char* what) {
    if (!r.converged) quad_failure(what, r);
    return r.value;
}

// exp(-a) guarding the a<0 case never arises here; underflow to 0 is fine.
double decay(double a) { return std::exp(-a); }

} // namespace

void CorrectorEval::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("CorrectorEval: eps must be positive");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("CorrectorEval: quad_tol must be positive");
}

double heat_kernel(double t, double z) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

std::array<double, 2> exact_tangential_corrector(const CorrectorEval& ce, const BoundaryTrace& g,
                                                 double t, double x, double y, double z) {
    ce.validate();
    if (!(t > 0.0)) throw std::domain_error("exact_tangential_corrector: t must be positive");
    if (z < 0.0) throw std::domain_error("exact_tangential_corrector: z must be >= 0");

    if (z == 0.0) // boundary value attained: minus the trace at time t
        return {-g.g1(t, x, y), -g.g2(t, x, y)};

    const double zb = z / std::sqrt(ce.eps);
    const double xi0 = zb / (2.0 * std::sqrt(t));
    const double xi1 = xi0 + 7.5; // exp(-xi^2) tail beyond is below any tolerance used here

    // After tau -> xi = zb / (2 sqrt(t - tau)) the kernel becomes a plain
    // Gaussian and the (t - tau)^{-3/2} endpoint singularity disappears.
    std::array<double, 2> out{};
    for (int comp = 0; comp < 2; ++comp) {
        auto integrand = [&](double xi) {
            const double tau = t - zb * zb / (4.0 * xi * xi);
            const double g1 = g.g1(tau, x, y), g2 = g.g2(tau, x, y);
            const double e1 = -g2, e2 = g1; // e3 x g
            const double c = std::cos(ce.alpha * (tau - t));
            const double s = std::sin(ce.alpha * (tau - t));
            const double B = comp == 0 ? 2.0 * g1 * c + 2.0 * e1 * s : 2.0 * g2 * c + 2.0 * e2 * s;
            return std::exp(-xi * xi) * B / std::sqrt(kPi);
        };
        QuadResult r =
            integrate_adaptive(integrand, xi0, xi1, ce.quad_tol, ce.quad_tol, ce.max_subdiv);
        out[comp] = -checked(r, "exact_tangential_corrector");
    }
    return out;
}

namespace {

// Trace combination entering every phi3 integral, as a function of the
// back-substituted variable v = sqrt(t - tau):
//   A(v) = -2 dz_u3(t - v^2) cos(alpha v^2) + 2 curl(t - v^2) sin(alpha v^2)
double trace_combo(const NormalTraces& tr, double alpha, double t, double x, double y, double v) {
    const double tau = t - v * v;
    return -2.0 * tr.dz_u3(tau, x, y) * std::cos(alpha * v * v) +
           2.0 * tr.curl(tau, x, y) * std::sin(alpha * v * v);
}

double trace_combo_dt(const NormalTraces& tr, double alpha, double t, double x, double y,
                      double v) {
    const double tau = t - v * v;
    return -2.0 * tr.dz_u3_dt(tau, x, y) * std::cos(alpha * v * v) +
           2.0 * tr.curl_dt(tau, x, y) * std::sin(alpha * v * v);
}

} // namespace

double normal_corrector_phi3(const CorrectorEval& ce, const NormalTraces& tr, double t, double x,
                             double y, double z) {
    ce.validate();
    if (!(t > 0.0)) throw std::domain_error("normal_corrector_phi3: t must be positive");
    const double eps = ce.eps;
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double iv2 = 1.0 / (4.0 * eps * v * v);
        const double Ez = decay(z * z * iv2);
        const double E1 = decay(iv2); // counter-term, exponentially small
        return (Ez - E1) * trace_combo(tr, ce.alpha, t, x, y, v);
    };
    QuadResult r = integrate_adaptive(integrand, 0.0, std::sqrt(t), ce.quad_tol, ce.quad_tol,
                                      ce.max_subdiv);
    return -std::sqrt(eps / kPi) * checked(r, "normal_corrector_phi3");
}

double normal_corrector_phi3_dt(const CorrectorEval& ce, const NormalTraces& tr, double t,
                                double x, double y, double z) {
    ce.validate();
    if (!(t > 0.0)) throw std::domain_error("normal_corrector_phi3_dt: t must be positive");
    if (!tr.dz_u3_dt || !tr.curl_dt)
        throw std::invalid_argument("normal_corrector_phi3_dt: trace time derivatives required");
    const double eps = ce.eps;

    // Moving-limit boundary term (v = sqrt(t), i.e. tau = 0).
    const double Ez = decay(z * z / (4.0 * eps * t));
    const double E1 = decay(1.0 / (4.0 * eps * t));
    const double A0 = -2.0 * tr.dz_u3(0.0, x, y) * std::cos(ce.alpha * t) +
                      2.0 * tr.curl(0.0, x, y) * std::sin(ce.alpha * t);
    const double boundary = -std::sqrt(eps / kPi) * (Ez - E1) * A0 / (2.0 * std::sqrt(t));

    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double iv2 = 1.0 / (4.0 * eps * v * v);
        return (decay(z * z * iv2) - decay(iv2)) * trace_combo_dt(tr, ce.alpha, t, x, y, v);
    };
    QuadResult r = integrate_adaptive(integrand, 0.0, std::sqrt(t), ce.quad_tol, ce.quad_tol,
                                      ce.max_subdiv);
    return boundary - std::sqrt(eps / kPi) * checked(r, "normal_corrector_phi3_dt");
}

double normal_corrector_phi3_scaled_zz(const CorrectorEval& ce, const NormalTraces& tr, double t,
                                       double x, double y, double z) {
    ce.validate();
    if (!(t > 0.0))
        throw std::domain_error("normal_corrector_phi3_scaled_zz: t must be positive");
    if (z == 0.0) return 0.0;
    const double eps = ce.eps;
    const double w0 = z / (2.0 * std::sqrt(eps * t));
    // In w = z / (2 sqrt(eps (t - tau))) the z-weighted second derivative is
    //   -(eps / sqrt(pi)) * int_{w0}^inf (2 w^2 - 1) e^{-w^2} A(v(w)) dw,
    // free of the near-wall cancellation of the raw v-form.
    auto integrand = [&](double w) {
        const double v = z / (2.0 * std::sqrt(eps) * w);
        return (2.0 * w * w - 1.0) * std::exp(-w * w) * trace_combo(tr, ce.alpha, t, x, y, v);
    };
    QuadResult r = integrate_adaptive(integrand, w0, w0 + 8.0, ce.quad_tol, ce.quad_tol,
                                      ce.max_subdiv);
    return -(eps / std::sqrt(kPi)) * checked(r, "normal_corrector_phi3_scaled_zz");
}

std::array<double, 3> approx_corrector(double eps, double t, double z) {
    if (!(t > 0.0)) throw std::domain_error("approx_corrector: t must be positive");
    const double e = std::exp(-z * z / (4.0 * eps * t));
    return {-e, -e, 0.0};
}

std::array<double, 3> mirrored_corrector(double eps, double t, double z) {
    return approx_corrector(eps, t, 1.0 - z);
}

ScalingStudy scaling_slope(const CorrectorEval& ce, ScalingQuantity q,
                           const std::vector<double>& eps_list, double t) {
    ce.validate();
    if (eps_list.empty()) throw std::invalid_argument("scaling_slope: eps_list must be nonempty");
    if (!(t > 0.0)) throw std::domain_error("scaling_slope: t must be positive");

    // Separable traces: dz_u3 = tau * cos(2 pi x) cos(2 pi y), zero curl.
    // The horizontal factor integrates analytically (norm 1/2 on the unit
    // cell); the quadratures below handle the z profile at x = y = 0.
    NormalTraces tr;
    tr.dz_u3 = [](double tau, double x, double y) {
        return tau * std::cos(kTwoPi * x) * std::cos(kTwoPi * y);
    };
    tr.curl = [](double, double, double) { return 0.0; };
    tr.dz_u3_dt = [](double, double x, double y) {
        return std::cos(kTwoPi * x) * std::cos(kTwoPi * y);
    };
    tr.curl_dt = [](double, double, double) { return 0.0; };
    const double horizontal_norm = 0.5;

    ScalingStudy out;
    out.eps = eps_list;
    for (double eps : eps_list) {
        CorrectorEval ce_eps = ce;
        ce_eps.eps = eps;
        auto profile = [&](double z) {
            switch (q) {
            case ScalingQuantity::dphi3_dt_L2:
                return normal_corrector_phi3_dt(ce_eps, tr, t, 0.0, 0.0, z);
            case ScalingQuantity::z_eps_d2phi3_L2:
                return normal_corrector_phi3_scaled_zz(ce_eps, tr, t, 0.0, 0.0, z);
            case ScalingQuantity::phi3_over_sqrt_eps_L2:
                return normal_corrector_phi3(ce_eps, tr, t, 0.0, 0.0, z) / std::sqrt(eps);
            }
            return 0.0;
        };
        auto sq = [&](double z) {
            const double p = profile(z);
            return p * p;
        };
        QuadResult r = integrate_adaptive(sq, 0.0, 1.0, 0.0, 1e-8, ce.max_subdiv);
        if (!r.converged && r.error_estimate > 1e-6 * std::abs(r.value))
            quad_failure("scaling_slope z-norm", r);
        out.norms.push_back(horizontal_norm * std::sqrt(std::max(r.value, 0.0)));
    }

    // least-squares slope of log(norm) against log(eps)
    const int n = static_cast<int>(eps_list.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(eps_list[i]);
        const double ly = std::log(out.norms[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

} // namespace layerfv
