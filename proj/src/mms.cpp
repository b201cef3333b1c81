#include "layerfv/mms.hpp"

#include <cmath>

namespace layerfv {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kPi = 3.14159265358979323846;

// Bottom-wall layer factor B(z) = 1 - exp(-s) cos(s), s = z/sqrt(eps), and
// its first two z-derivatives.  The top factor is the mirror in 1-z.
struct Layer {
    double val, d1, d2;
};

Layer layer_bottom(double z, double se, double eps) {
    const double s = z / se;
    const double e = std::exp(-s);
    Layer f;
    f.val = 1.0 - e * std::cos(s);
    f.d1 = e * (std::cos(s) + std::sin(s)) / se;
    f.d2 = -2.0 * e * std::sin(s) / eps;
    return f;
}

Layer layer_top(double z, double se, double eps) {
    const double s = (1.0 - z) / se;
    const double e = std::exp(-s);
    Layer f;
    f.val = 1.0 - e * std::cos(s);
    f.d1 = -e * (std::cos(s) + std::sin(s)) / se;
    f.d2 = -2.0 * e * std::sin(s) / eps;
    return f;
}

} // namespace

FieldSample exact_eval(const ExactSolution& es, double x, double y, double z, double t) {
    const double se = std::sqrt(es.eps);
    const Layer B = layer_bottom(z, se, es.eps);
    const Layer T = layer_top(z, se, es.eps);
    FieldSample s;
    s.u = t * std::sin(kTwoPi * y) * B.val * T.val;
    s.v = t * std::sin(kTwoPi * x) * B.val * T.val;
    s.w = 0.0;
    s.p = std::cos(kTwoPi * x) * std::cos(kTwoPi * y) * std::cos(kPi * z) * t;
    return s;
}

std::array<double, 3> forcing(const ExactSolution& es, double x, double y, double z, double t) {
    const double eps = es.eps, se = std::sqrt(eps);
    const Layer B = layer_bottom(z, se, eps);
    const Layer T = layer_top(z, se, eps);
    const double BT = B.val * T.val;
    const double BTzz = B.d2 * T.val + 2.0 * B.d1 * T.d1 + B.val * T.d2;

    const double sy = std::sin(kTwoPi * y), sx = std::sin(kTwoPi * x);
    const double u = t * sy * BT, v = t * sx * BT;
    const double ut = sy * BT, vt = sx * BT;
    const double uyy = -kTwoPi * kTwoPi * u;
    const double vxx = -kTwoPi * kTwoPi * v;
    const double uzz = t * sy * BTzz;
    const double vzz = t * sx * BTzz;

    const double cz = std::cos(kPi * z);
    const double px = -kTwoPi * std::sin(kTwoPi * x) * std::cos(kTwoPi * y) * cz * t;
    const double py = -kTwoPi * std::cos(kTwoPi * x) * std::sin(kTwoPi * y) * cz * t;
    const double pz = -kPi * std::cos(kTwoPi * x) * std::cos(kTwoPi * y) * std::sin(kPi * z) * t;

    // u depends on (y,z), v on (x,z): the remaining Laplacian terms vanish.
    return {ut - eps * (uyy + uzz) - es.alpha * v + px,
            vt - eps * (vxx + vzz) + es.alpha * u + py,
            pz};
}

double l2_error(const VectorField& num, const ExactSolution& es, double t, const GridSpec& g) {
    double s = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const FieldSample e =
                    exact_eval(es, g.x_center(i), g.y_center(j), g.z_center(k), t);
                const double du = num.u(i, j, k) - e.u;
                const double dv = num.v(i, j, k) - e.v;
                const double dw = num.w(i, j, k) - e.w;
                s += du * du + dv * dv + dw * dw;
            }
    return std::sqrt(s * g.cell_volume());
}

double l2_error(const CellField& num_p, const ExactSolution& es, double t, const GridSpec& g) {
    const int cells = g.M * g.N * g.L;
    double mean_num = 0.0, mean_ex = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                mean_num += num_p(i, j, k);
                mean_ex += exact_eval(es, g.x_center(i), g.y_center(j), g.z_center(k), t).p;
            }
    mean_num /= cells;
    mean_ex /= cells;
    double s = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const double ep =
                    exact_eval(es, g.x_center(i), g.y_center(j), g.z_center(k), t).p - mean_ex;
                const double d = (num_p(i, j, k) - mean_num) - ep;
                s += d * d;
            }
    return std::sqrt(s * g.cell_volume());
}

void sample_exact(const ExactSolution& es, double t, const GridSpec& g, VectorField& vel,
                  CellField& p) {
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const FieldSample e =
                    exact_eval(es, g.x_center(i), g.y_center(j), g.z_center(k), t);
                vel.u(i, j, k) = e.u;
                vel.v(i, j, k) = e.v;
                vel.w(i, j, k) = e.w;
                p(i, j, k) = e.p;
            }
}

} // namespace layerfv
