#pragma once

#include "layerfv/grid.hpp"

#include <array>

namespace layerfv {

/// Closed-form test solution of the rotating Stokes system on the unit
/// periodic channel: tangential velocities carry counter-rotating boundary
/// layers of width sqrt(eps) at both walls, w is identically zero and the
/// pressure is a separable trigonometric mode growing linearly in time.
struct ExactSolution {
    double eps = 1e-2;
    double alpha = 1.0;
};

struct FieldSample {
    double u, v, w, p;
};

FieldSample exact_eval(const ExactSolution& es, double x, double y, double z, double t);

/// Source term making the exact solution solve the momentum equation:
/// f = du/dt - eps*Lap(u) + omega x u + grad p, assembled from hand-derived
/// closed-form partials (no numeric differentiation).
std::array<double, 3> forcing(const ExactSolution& es, double x, double y, double z, double t);

/// Discrete L2 error by cell-midpoint quadrature over the interior,
/// all three velocity components.
double l2_error(const VectorField& num, const ExactSolution& es, double t, const GridSpec& g);

/// Pressure L2 error; both fields are mean-centered first (the pressure is
/// defined up to a constant).
double l2_error(const CellField& num_p, const ExactSolution& es, double t, const GridSpec& g);

/// Samples the exact state at cell centers (interior), ghosts left at zero.
void sample_exact(const ExactSolution& es, double t, const GridSpec& g, VectorField& vel,
                  CellField& p);

} // namespace layerfv
