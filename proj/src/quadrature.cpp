#include "layerfv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace layerfv {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    double rk = wgk[7] * fv[7];
    double rg = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        rk += wgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) rg += wg[i / 2] * (fv[i] + fv[14 - i]);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = rk * h;
    p.error = std::abs((rk - rg) * h);
    return p;
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_subdiv) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Panel> panels;
    panels.push(gk15(f, a, b));
    double total = panels.top().value, err = panels.top().error;
    int n = 0;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_subdiv) {
        Panel worst = panels.top();
        panels.pop();
        total -= worst.value;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval exhausted by rounding
            total += worst.value;
            err += worst.error;
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value;
        err += left.error + right.error;
        panels.push(left);
        panels.push(right);
        ++n;
    }
    res.value = total;
    res.error_estimate = err;
    res.subdivisions = n;
    res.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

} // namespace layerfv
