#include "layerfv/grid.hpp"

#include <cmath>

namespace layerfv {

GridSpec build_grid(int M, int N, int L) { return build_grid(M, N, L, 1.0, 1.0, 1.0); }

GridSpec build_grid(int M, int N, int L, double Lx, double Ly, double Lz) {
    if (M < 3 || N < 3 || L < 3)
        throw std::invalid_argument("build_grid: need at least 3 cells per direction "
                                    "(stencils and the compact wall extrapolation)");
    if (!(Lx > 0.0) || !(Ly > 0.0) || !(Lz > 0.0))
        throw std::invalid_argument("build_grid: domain lengths must be positive");
    GridSpec g;
    g.M = M; g.N = N; g.L = L;
    g.Lx = Lx; g.Ly = Ly; g.Lz = Lz;
    g.dx = Lx / M; g.dy = Ly / N; g.dz = Lz / L;
    return g;
}

double CellField::interior_mean() const {
    double s = 0.0;
    for (int i = 1; i <= g_.M; ++i)
        for (int j = 1; j <= g_.N; ++j)
            for (int k = 1; k <= g_.L; ++k) s += (*this)(i, j, k);
    return s / (double(g_.M) * g_.N * g_.L);
}

double CellField::interior_max_abs() const {
    double m = 0.0;
    for (int i = 1; i <= g_.M; ++i)
        for (int j = 1; j <= g_.N; ++j)
            for (int k = 1; k <= g_.L; ++k) m = std::max(m, std::abs((*this)(i, j, k)));
    return m;
}

bool CellField::interior_finite() const {
    for (int i = 1; i <= g_.M; ++i)
        for (int j = 1; j <= g_.N; ++j)
            for (int k = 1; k <= g_.L; ++k)
                if (!std::isfinite((*this)(i, j, k))) return false;
    return true;
}

bool FaceFluxes::finite() const {
    for (double x : fu_)
        if (!std::isfinite(x)) return false;
    for (double x : fv_)
        if (!std::isfinite(x)) return false;
    for (double x : fw_)
        if (!std::isfinite(x)) return false;
    return true;
}

void fill_periodic_ghosts(CellField& f) {
    const GridSpec& g = f.grid();
    for (int j = 0; j <= g.N + 1; ++j)
        for (int k = 0; k <= g.L + 1; ++k) {
            f(0, j, k) = f(g.M, j, k);
            f(g.M + 1, j, k) = f(1, j, k);
        }
    for (int i = 0; i <= g.M + 1; ++i)
        for (int k = 0; k <= g.L + 1; ++k) {
            f(i, 0, k) = f(i, g.N, k);
            f(i, g.N + 1, k) = f(i, 1, k);
        }
}

namespace {

void velocity_wall_ghosts(CellField& f) {
    const GridSpec& g = f.grid();
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            f(i, j, 0) = -f(i, j, 1);
            f(i, j, g.L + 1) = -f(i, j, g.L);
        }
}

} // namespace

void fill_velocity_wall_ghosts(VectorField& v) {
    velocity_wall_ghosts(v.u);
    velocity_wall_ghosts(v.v);
    velocity_wall_ghosts(v.w);
}

void fill_pressure_wall_ghosts(CellField& p) {
    const GridSpec& g = p.grid();
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            p(i, j, 0) = 2.5 * p(i, j, 1) - 2.0 * p(i, j, 2) + 0.5 * p(i, j, 3);
            p(i, j, g.L + 1) =
                2.5 * p(i, j, g.L) - 2.0 * p(i, j, g.L - 1) + 0.5 * p(i, j, g.L - 2);
        }
}

} // namespace layerfv
