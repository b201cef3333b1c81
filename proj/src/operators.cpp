#include "layerfv/operators.hpp"

namespace layerfv {

CellField laplacian(const CellField& f, const GridSpec& g) {
    CellField out(g);
    const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy), az = 1.0 / (g.dz * g.dz);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                const double c = f(i, j, k);
                out(i, j, k) = ax * (f(i + 1, j, k) - 2.0 * c + f(i - 1, j, k)) +
                               ay * (f(i, j + 1, k) - 2.0 * c + f(i, j - 1, k)) +
                               az * (f(i, j, k + 1) - 2.0 * c + f(i, j, k - 1));
            }
    return out;
}

VectorField grad_pressure(const CellField& p, const GridSpec& g) {
    VectorField out(g);
    const double cx = 0.5 / g.dx, cy = 0.5 / g.dy, cz = 0.5 / g.dz;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                out.u(i, j, k) = cx * (p(i + 1, j, k) - p(i - 1, j, k));
                out.v(i, j, k) = cy * (p(i, j + 1, k) - p(i, j - 1, k));
                out.w(i, j, k) = cz * (p(i, j, k + 1) - p(i, j, k - 1));
            }
    return out;
}

CellField divergence(const FaceFluxes& F, const GridSpec& g) {
    CellField out(g);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                out(i, j, k) = (F.Fu(i, j, k) - F.Fu(i - 1, j, k)) / g.dx +
                               (F.Fv(i, j, k) - F.Fv(i, j - 1, k)) / g.dy +
                               (F.Fw(i, j, k) - F.Fw(i, j, k - 1)) / g.dz;
    return out;
}

VectorField rotate(const VectorField& v, const RotationParams& r) {
    const GridSpec& g = v.grid();
    VectorField out(g);
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j)
            for (int k = 0; k <= g.L + 1; ++k) {
                out.u(i, j, k) = -r.alpha * v.v(i, j, k);
                out.v(i, j, k) = r.alpha * v.u(i, j, k);
                out.w(i, j, k) = 0.0;
            }
    return out;
}

} // namespace layerfv
