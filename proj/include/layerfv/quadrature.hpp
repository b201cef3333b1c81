#pragma once

#include <functional>

namespace layerfv {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7,15) quadrature on [a,b].  Bisects the
/// segment with the largest error estimate until the summed estimate drops
/// below max(abs_tol, rel_tol*|value|) or the subdivision budget runs out.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_subdiv = 1 << 14);

} // namespace layerfv
