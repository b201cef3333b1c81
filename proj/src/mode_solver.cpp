#include "layerfv/mode_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace layerfv {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

using cplx = std::complex<double>;

// Thomas algorithm, real coefficients, complex right-hand side.  All systems
// passed here are strictly diagonally dominant.
void thomas(const std::vector<double>& sub, const std::vector<double>& diag,
            const std::vector<double>& sup, std::vector<cplx>& d) {
    const int n = static_cast<int>(d.size());
    std::vector<double> cp(n);
    cp[0] = sup[0] / diag[0];
    d[0] /= diag[0];
    for (int k = 1; k < n; ++k) {
        const double m = diag[k] - sub[k] * cp[k - 1];
        cp[k] = sup[k] / m;
        d[k] = (d[k] - sub[k] * d[k - 1]) / m;
    }
    for (int k = n - 2; k >= 0; --k) d[k] -= cp[k] * d[k + 1];
}

// Dense LU with partial pivoting for the small per-mode systems.
struct DenseLU {
    int n = 0;
    std::vector<double> a; // row-major, factored in place
    std::vector<int> piv;

    void factor(std::vector<double> m, int dim) {
        n = dim;
        a = std::move(m);
        piv.resize(n);
        for (int c = 0; c < n; ++c) {
            int p = c;
            double best = std::abs(a[c * n + c]);
            for (int r = c + 1; r < n; ++r) {
                const double v = std::abs(a[r * n + c]);
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            if (best == 0.0) throw std::runtime_error("ModeSolver: singular mode system");
            piv[c] = p;
            if (p != c)
                for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[p * n + k]);
            const double inv = 1.0 / a[c * n + c];
            for (int r = c + 1; r < n; ++r) {
                const double f = a[r * n + c] * inv;
                a[r * n + c] = f;
                for (int k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            }
        }
    }

    void solve(std::vector<double>& b) const {
        // interchanges first (the stored multipliers sit in final row order)
        for (int c = 0; c < n; ++c)
            if (piv[c] != c) std::swap(b[c], b[piv[c]]);
        for (int c = 0; c < n; ++c)
            for (int r = c + 1; r < n; ++r) b[r] -= a[r * n + c] * b[c];
        for (int r = n - 1; r >= 0; --r) {
            for (int k = r + 1; k < n; ++k) b[r] -= a[r * n + k] * b[k];
            b[r] /= a[r * n + r];
        }
    }
};

} // namespace

ModeSolver::ModeSolver(const GridSpec& g, double dt, double eps)
    : g_(g), dt_(dt), eps_(eps), sigma_(3.0 / (2.0 * dt)) {
    if (!(dt > 0.0)) throw std::invalid_argument("ModeSolver: dt must be positive");
    const int M = g.M, N = g.N;
    Wx_.resize(M * M);
    iWx_.resize(M * M);
    Wy_.resize(N * N);
    iWy_.resize(N * N);
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < M; ++i) {
            const double ph = -kTwoPi * m * i / M;
            Wx_[m * M + i] = cplx(std::cos(ph), std::sin(ph));
            iWx_[m * M + i] = cplx(std::cos(ph), -std::sin(ph)) / double(M);
        }
    for (int n = 0; n < N; ++n)
        for (int j = 0; j < N; ++j) {
            const double ph = -kTwoPi * n * j / N;
            Wy_[n * N + j] = cplx(std::cos(ph), std::sin(ph));
            iWy_[n * N + j] = cplx(std::cos(ph), -std::sin(ph)) / double(N);
        }
    lambda_.resize(M * N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            lambda_[m * N + n] = (2.0 - 2.0 * std::cos(kTwoPi * m / M)) / (g.dx * g.dx) +
                                 (2.0 - 2.0 * std::cos(kTwoPi * n / N)) / (g.dy * g.dy);
}

// spec layout: [(m*N + n)*L + k], k = 0..L-1 for interior level k+1
void ModeSolver::forward(const CellField& f, std::vector<cplx>& spec) const {
    const int M = g_.M, N = g_.N, L = g_.L;
    spec.assign(M * N * L, cplx(0.0, 0.0));
    std::vector<cplx> line(N);
    std::vector<cplx> xpass(M * N);
    for (int k = 0; k < L; ++k) {
        // transform along x for each j
        for (int j = 0; j < N; ++j)
            for (int m = 0; m < M; ++m) {
                cplx s(0.0, 0.0);
                const cplx* row = &Wx_[m * M];
                for (int i = 0; i < M; ++i) s += row[i] * f(i + 1, j + 1, k + 1);
                xpass[m * N + j] = s;
            }
        // then along y for each m
        for (int m = 0; m < M; ++m) {
            const cplx* src = &xpass[m * N];
            for (int n = 0; n < N; ++n) {
                cplx s(0.0, 0.0);
                const cplx* row = &Wy_[n * N];
                for (int j = 0; j < N; ++j) s += row[j] * src[j];
                spec[(m * N + n) * L + k] = s;
            }
        }
    }
}

void ModeSolver::inverse(std::vector<cplx>& spec, CellField& f) const {
    const int M = g_.M, N = g_.N, L = g_.L;
    std::vector<cplx> ypass(M * N);
    for (int k = 0; k < L; ++k) {
        for (int m = 0; m < M; ++m)
            for (int j = 0; j < N; ++j) {
                cplx s(0.0, 0.0);
                const cplx* row = &iWy_[j * N];
                for (int n = 0; n < N; ++n) s += row[n] * spec[(m * N + n) * L + k];
                ypass[m * N + j] = s;
            }
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                cplx s(0.0, 0.0);
                const cplx* row = &iWx_[i * M];
                for (int m = 0; m < M; ++m) s += row[m] * ypass[m * N + j];
                f(i + 1, j + 1, k + 1) = s.real();
            }
    }
}

void ModeSolver::solve_helmholtz_dirichlet(const CellField& rhs, CellField& out) const {
    const int M = g_.M, N = g_.N, L = g_.L;
    const double ah = eps_ / (g_.dz * g_.dz);
    std::vector<cplx> spec;
    forward(rhs, spec);
    std::vector<double> sub(L, -ah), sup(L, -ah), diag(L);
    std::vector<cplx> d(L);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            const double base = sigma_ + eps_ * lambda_[m * N + n];
            for (int k = 0; k < L; ++k) {
                diag[k] = base + ((k == 0 || k == L - 1) ? 3.0 : 2.0) * ah;
                d[k] = spec[(m * N + n) * L + k];
            }
            thomas(sub, diag, sup, d);
            for (int k = 0; k < L; ++k) spec[(m * N + n) * L + k] = d[k];
        }
    inverse(spec, out);
}

void ModeSolver::solve_helmholtz_enriched(const CellField& rhs, double I0h, double phi_h2,
                                          CellField& out, std::vector<double>& r_bottom,
                                          std::vector<double>& r_top) const {
    const int M = g_.M, N = g_.N, L = g_.L;
    const double h = g_.dz;
    const double ah = eps_ / (h * h);
    const double cw = eps_ * phi_h2 / h; // closure viscous weight

    std::vector<cplx> spec;
    forward(rhs, spec);
    std::vector<cplx> rb_spec(M * N), rt_spec(M * N);

    const int nb = L + 2; // [r0, u_1..u_L, r_top]
    std::vector<double> mat(nb * nb);
    std::vector<double> re(nb), im(nb);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            const double base = sigma_ + eps_ * lambda_[m * N + n];
            std::fill(mat.begin(), mat.end(), 0.0);
            // bottom closure row
            mat[0 * nb + 0] = -2.0 * cw;
            mat[0 * nb + 1] = I0h * base + 3.0 * cw;
            mat[0 * nb + 2] = -cw;
            // momentum rows
            for (int k = 1; k <= L; ++k) {
                mat[k * nb + k] = base + ((k == 1 || k == L) ? 3.0 : 2.0) * ah;
                if (k > 1) mat[k * nb + (k - 1)] = -ah;
                if (k < L) mat[k * nb + (k + 1)] = -ah;
            }
            mat[1 * nb + 0] = -2.0 * ah;
            mat[L * nb + (L + 1)] = -2.0 * ah;
            // top closure row
            mat[(L + 1) * nb + (L + 1)] = -2.0 * cw;
            mat[(L + 1) * nb + L] = I0h * base + 3.0 * cw;
            mat[(L + 1) * nb + (L - 1)] = -cw;

            DenseLU lu;
            lu.factor(mat, nb);

            const cplx* rc = &spec[(m * N + n) * L];
            re[0] = I0h * rc[0].real();
            im[0] = I0h * rc[0].imag();
            for (int k = 1; k <= L; ++k) {
                re[k] = rc[k - 1].real();
                im[k] = rc[k - 1].imag();
            }
            re[L + 1] = I0h * rc[L - 1].real();
            im[L + 1] = I0h * rc[L - 1].imag();
            lu.solve(re);
            lu.solve(im);
            for (int k = 0; k < L; ++k)
                spec[(m * N + n) * L + k] = cplx(re[k + 1], im[k + 1]);
            rb_spec[m * N + n] = cplx(re[0], im[0]);
            rt_spec[m * N + n] = cplx(re[L + 1], im[L + 1]);
        }
    inverse(spec, out);

    // inverse 2D transform of the r-node layers
    r_bottom.assign(M * N, 0.0);
    r_top.assign(M * N, 0.0);
    std::vector<cplx> ypass(M * N);
    for (auto [src, dst] : {std::pair{&rb_spec, &r_bottom}, std::pair{&rt_spec, &r_top}}) {
        for (int m = 0; m < M; ++m)
            for (int j = 0; j < N; ++j) {
                cplx s(0.0, 0.0);
                for (int n = 0; n < N; ++n) s += iWy_[j * N + n] * (*src)[m * N + n];
                ypass[m * N + j] = s;
            }
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                cplx s(0.0, 0.0);
                for (int m = 0; m < M; ++m) s += iWx_[i * M + m] * ypass[m * N + j];
                (*dst)[i * N + j] = s.real();
            }
    }
}

double ModeSolver::solve_poisson_neumann(const CellField& rhs, CellField& out) const {
    const int M = g_.M, N = g_.N, L = g_.L;
    const double ah = 1.0 / (g_.dz * g_.dz);
    const double mean = rhs.interior_mean();

    CellField shifted = rhs;
    for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= L; ++k) shifted(i, j, k) -= mean;

    std::vector<cplx> spec;
    forward(shifted, spec);

    std::vector<double> sub(L, ah), sup(L, ah), diag(L);
    std::vector<cplx> d(L);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            if (m == 0 && n == 0) continue; // handled densely below
            const double lam = lambda_[m * N + n];
            for (int k = 0; k < L; ++k) {
                diag[k] = -lam - ((k == 0 || k == L - 1) ? 1.0 : 2.0) * ah;
                d[k] = spec[(m * N + n) * L + k];
            }
            thomas(sub, diag, sup, d);
            for (int k = 0; k < L; ++k) spec[(m * N + n) * L + k] = d[k];
        }

    // Zero horizontal mode: the Neumann matrix is singular (constants); the
    // mean-subtracted right-hand side is compatible, so replace the last row
    // with the zero-mean constraint.
    {
        std::vector<double> mat(L * L, 0.0);
        for (int k = 0; k < L; ++k) {
            if (k < L - 1) {
                mat[k * L + k] = -((k == 0) ? 1.0 : 2.0) * ah;
                if (k > 0) mat[k * L + (k - 1)] = ah;
                mat[k * L + (k + 1)] = ah;
            } else {
                for (int q = 0; q < L; ++q) mat[k * L + q] = 1.0;
            }
        }
        DenseLU lu;
        lu.factor(mat, L);
        std::vector<double> re(L), im(L);
        for (int k = 0; k < L - 1; ++k) {
            re[k] = spec[k].real();
            im[k] = spec[k].imag();
        }
        re[L - 1] = 0.0;
        im[L - 1] = 0.0;
        lu.solve(re);
        lu.solve(im);
        for (int k = 0; k < L; ++k) spec[k] = cplx(re[k], im[k]);
    }

    inverse(spec, out);
    const double pm = out.interior_mean();
    for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= L; ++k) out(i, j, k) -= pm;
    return mean;
}

} // namespace layerfv
