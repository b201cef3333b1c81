#include "layerfv/mms.hpp"
#include "layerfv/operators.hpp"

#include <doctest.h>

#include <cmath>

using namespace layerfv;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

TEST_CASE("laplacian: constants and discrete eigenfunctions") {
    const GridSpec g = build_grid(16, 12, 8, kTwoPi, kTwoPi, 1.0);
    CellField f(g);
    f.fill(2.5);
    fill_periodic_ghosts(f);
    const CellField lc = laplacian(f, g);
    CHECK(lc.interior_max_abs() < 1e-13);

    // cos(x) is an eigenfunction of the periodic 3-point stencil
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) f(i, j, k) = std::cos(g.x_center(i));
    fill_periodic_ghosts(f);
    // z-ghosts: constant continuation so the z-part contributes zero
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            f(i, j, 0) = f(i, j, 1);
            f(i, j, g.L + 1) = f(i, j, g.L);
        }
    const double sym = -(2.0 - 2.0 * std::cos(g.dx)) / (g.dx * g.dx);
    const CellField le = laplacian(f, g);
    double worst = 0.0;
    for (int i = 1; i <= g.M; ++i)
        worst = std::max(worst, std::abs(le(i, 3, 3) - sym * f(i, 3, 3)));
    CHECK(worst < 1e-12);

    // separability: cos(x) cos(2y) gets the sum of the two 1D symbols
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                f(i, j, k) = std::cos(g.x_center(i)) * std::cos(2.0 * g.y_center(j));
    fill_periodic_ghosts(f);
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            f(i, j, 0) = f(i, j, 1);
            f(i, j, g.L + 1) = f(i, j, g.L);
        }
    const double sym2 = sym - (2.0 - 2.0 * std::cos(2.0 * g.dy)) / (g.dy * g.dy);
    const CellField ls = laplacian(f, g);
    worst = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            worst = std::max(worst, std::abs(ls(i, j, 4) - sym2 * f(i, j, 4)));
    CHECK(worst < 1e-11);
}

TEST_CASE("laplacian telescoping sum on horizontally periodic fields") {
    const GridSpec g = build_grid(9, 7, 5);
    CellField f(g);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k)
                f(i, j, k) = std::sin(kTwoPi * g.x_center(i)) + std::cos(kTwoPi * g.y_center(j));
    fill_periodic_ghosts(f);
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j) {
            f(i, j, 0) = f(i, j, 1); // constant in z: z-part vanishes cellwise
            f(i, j, g.L + 1) = f(i, j, g.L);
        }
    const CellField l = laplacian(f, g);
    double sum = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) sum += l(i, j, k);
    CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("grad_pressure: constants, modes, walls") {
    const GridSpec g = build_grid(12, 12, 8, kTwoPi, kTwoPi, 1.0);
    CellField p(g);
    p.fill(-3.0);
    fill_periodic_ghosts(p);
    fill_pressure_wall_ghosts(p);
    VectorField gp = grad_pressure(p, g);
    CHECK(gp.u.interior_max_abs() < 1e-14);
    CHECK(gp.w.interior_max_abs() < 1e-14);

    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) p(i, j, k) = std::cos(g.x_center(i));
    fill_periodic_ghosts(p);
    fill_pressure_wall_ghosts(p);
    gp = grad_pressure(p, g);
    double worst = 0.0;
    for (int i = 1; i <= g.M; ++i) {
        const double expect = -std::sin(g.x_center(i)) * std::sin(g.dx) / g.dx;
        worst = std::max(worst, std::abs(gp.u(i, 2, 2) - expect));
    }
    CHECK(worst < 1e-13);

    // linear in z: the compact ghost reproduces linears, so the wall-cell
    // z-gradient is exact
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) p(i, j, k) = 2.0 * g.z_center(k) + 0.7;
    fill_periodic_ghosts(p);
    fill_pressure_wall_ghosts(p);
    gp = grad_pressure(p, g);
    CHECK(gp.w(3, 3, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gp.w(3, 3, g.L) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("divergence: constants, linear exactness, manufactured fluxes") {
    const GridSpec g = build_grid(10, 10, 10);
    FaceFluxes F(g);
    for (int f = 0; f <= g.M; ++f)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) F.Fu(f, j, k) = 1.0;
    for (int i = 1; i <= g.M; ++i)
        for (int f = 0; f <= g.N; ++f)
            for (int k = 1; k <= g.L; ++k) F.Fv(i, f, k) = 1.0;
    // wall z faces stay 0, interior constant
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int f = 1; f < g.L; ++f) F.Fw(i, j, f) = 1.0;
    CellField d = divergence(F, g);
    double worst = 0.0;
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 2; k < g.L; ++k) worst = std::max(worst, std::abs(d(i, j, k)));
    CHECK(worst < 1e-13);

    // F_u = x at faces reproduces div = 1 exactly
    FaceFluxes Fx(g);
    for (int f = 0; f <= g.M; ++f)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) Fx.Fu(f, j, k) = g.x_face(f);
    d = divergence(Fx, g);
    // interior cells away from the periodic seam (the seam face wraps x)
    for (int i = 2; i < g.M; ++i) CHECK(d(i, 4, 4) == doctest::Approx(1.0).epsilon(1e-12));

    // face-sampled manufactured solution: its structure (u independent of x,
    // v of y, w = 0) makes the discrete divergence vanish identically
    {
        const GridSpec gg = build_grid(12, 12, 12);
        const ExactSolution es{1e-2, 1.0};
        FaceFluxes Fe(gg);
        for (int f = 0; f <= gg.M; ++f)
            for (int j = 1; j <= gg.N; ++j)
                for (int k = 1; k <= gg.L; ++k)
                    Fe.Fu(f, j, k) =
                        exact_eval(es, gg.x_face(f), gg.y_center(j), gg.z_center(k), 1.0).u;
        for (int i = 1; i <= gg.M; ++i)
            for (int f = 0; f <= gg.N; ++f)
                for (int k = 1; k <= gg.L; ++k)
                    Fe.Fv(i, f, k) =
                        exact_eval(es, gg.x_center(i), gg.y_face(f), gg.z_center(k), 1.0).v;
        CHECK(divergence(Fe, gg).interior_max_abs() < 1e-14);
    }

    // a solenoidal field with x-z coupling at distinct wavenumbers: the
    // discrete divergence is a genuine O(h^2) quantity
    auto max_div = [](int n) {
        const GridSpec gg = build_grid(n, n, n);
        FaceFluxes Fe(gg);
        for (int f = 0; f <= gg.M; ++f)
            for (int j = 1; j <= gg.N; ++j)
                for (int k = 1; k <= gg.L; ++k)
                    Fe.Fu(f, j, k) = std::sin(2.0 * kTwoPi * gg.x_face(f)) *
                                     std::sin(kTwoPi * gg.z_center(k));
        for (int i = 1; i <= gg.M; ++i)
            for (int j = 1; j <= gg.N; ++j)
                for (int f = 1; f < gg.L; ++f)
                    Fe.Fw(i, j, f) = -2.0 * std::cos(2.0 * kTwoPi * gg.x_center(i)) *
                                     (1.0 - std::cos(kTwoPi * gg.z_face(f)));
        const CellField dd = divergence(Fe, gg);
        return dd.interior_max_abs();
    };
    const double d10 = max_div(10), d30 = max_div(30);
    CHECK(d30 * 3.0 < d10);
}

TEST_CASE("rotate: identities and skewness") {
    const GridSpec g = build_grid(4, 4, 4);
    VectorField v(g);
    for (int i = 0; i <= g.M + 1; ++i)
        for (int j = 0; j <= g.N + 1; ++j)
            for (int k = 0; k <= g.L + 1; ++k) {
                v.u(i, j, k) = std::sin(0.3 * i + 0.7 * j + 0.1 * k);
                v.v(i, j, k) = std::cos(0.2 * i - 0.4 * k);
                v.w(i, j, k) = 0.5 * i - 0.25 * j;
            }

    VectorField r0 = rotate(v, RotationParams{0.0});
    CHECK(r0.u.interior_max_abs() == 0.0);
    CHECK(r0.v.interior_max_abs() == 0.0);

    VectorField e1(g);
    e1.u.fill(1.0);
    const VectorField r = rotate(e1, RotationParams{2.0});
    CHECK(r.u(1, 1, 1) == 0.0);
    CHECK(r.v(1, 1, 1) == 2.0);
    CHECK(r.w(1, 1, 1) == 0.0);

    const RotationParams rp{1.7};
    const VectorField rr = rotate(rotate(v, rp), rp);
    double worst = 0.0, dot = 0.0;
    const VectorField rv = rotate(v, rp);
    for (int i = 1; i <= g.M; ++i)
        for (int j = 1; j <= g.N; ++j)
            for (int k = 1; k <= g.L; ++k) {
                worst = std::max(worst,
                                 std::abs(rr.u(i, j, k) + rp.alpha * rp.alpha * v.u(i, j, k)));
                worst = std::max(worst,
                                 std::abs(rr.v(i, j, k) + rp.alpha * rp.alpha * v.v(i, j, k)));
                dot += rv.u(i, j, k) * v.u(i, j, k) + rv.v(i, j, k) * v.v(i, j, k) +
                       rv.w(i, j, k) * v.w(i, j, k);
            }
    CHECK(worst < 1e-14);
    CHECK(std::abs(dot) < 1e-13); // exact cellwise skewness
}
