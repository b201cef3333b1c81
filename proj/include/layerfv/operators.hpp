#pragma once

#include "layerfv/grid.hpp"

namespace layerfv {

/// Rotation axis is e3; omega = alpha * e3.
struct RotationParams {
    double alpha = 0.0;
};

/// 7-point second-difference Laplacian per unit volume.  Ghost layers of f
/// must already be filled for its boundary type; only interior cells of the
/// result are meaningful.
CellField laplacian(const CellField& f, const GridSpec& g);

/// Central-difference pressure gradient, per unit volume.  Expects periodic
/// x,y ghosts and compact z ghosts filled.
VectorField grad_pressure(const CellField& p, const GridSpec& g);

/// Face-flux divergence per unit volume.  Wall z-faces carry 0 by
/// construction of FaceFluxes.
CellField divergence(const FaceFluxes& F, const GridSpec& g);

/// omega x v = alpha * (-v2, v1, 0), cellwise over the whole array.
VectorField rotate(const VectorField& v, const RotationParams& r);

} // namespace layerfv
