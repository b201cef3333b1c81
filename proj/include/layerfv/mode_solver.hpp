#pragma once

#include "layerfv/grid.hpp"

#include <complex>
#include <vector>

namespace layerfv {

/// Direct solver for the implicit stages: a discrete Fourier transform over
/// the periodic horizontal directions reduces every solve to independent
/// banded systems in z (tridiagonal for the classical scheme and the
/// pressure increment, pentadiagonal-with-end-rows for the enriched one).
/// Exact up to round-off, so the residual contract of the schemes holds by
/// construction; residuals are still checked stencil-side by the callers.
class ModeSolver {
  public:
    ModeSolver(const GridSpec& g, double dt, double eps);

    /// (3/(2dt) - eps*Lap_h) u = rhs with periodic x,y and homogeneous
    /// Dirichlet walls imposed by the midpoint ghost rule.
    void solve_helmholtz_dirichlet(const CellField& rhs, CellField& out) const;

    /// Same Helmholtz operator for one tangential component of the enriched
    /// scheme: the wall ghosts are unknowns tied to the r-nodes
    /// (u_0 = 2 r - u_1) and the system is closed by the corrector-weighted
    /// near-wall relations with profile data (I0h, phi(h/2)).
    /// r_bottom/r_top are (M*N)-sized, row-major (i-1)*N + (j-1).
    void solve_helmholtz_enriched(const CellField& rhs, double I0h, double phi_h2,
                                  CellField& out, std::vector<double>& r_bottom,
                                  std::vector<double>& r_top) const;

    /// Lap psi = rhs - mean(rhs), periodic x,y, homogeneous Neumann z; the
    /// solution is normalized to zero mean.  Returns mean(rhs) before
    /// subtraction (compatibility diagnostic).
    double solve_poisson_neumann(const CellField& rhs, CellField& out) const;

    double sigma() const { return sigma_; }

  private:
    using cplx = std::complex<double>;

    void forward(const CellField& f, std::vector<cplx>& spec) const;
    void inverse(std::vector<cplx>& spec, CellField& f) const;

    GridSpec g_;
    double dt_, eps_, sigma_;
    std::vector<cplx> Wx_, Wy_, iWx_, iWy_; // DFT matrices, row-major [mode][index]
    std::vector<double> lambda_;            // -Lap_h symbol per horizontal mode, M*N
};

} // namespace layerfv
