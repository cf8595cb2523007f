#pragma once

#include "edlab/grid.hpp"

namespace edlab {

// Second-order central difference along a periodic axis:
// (f[j+1] - f[j-1]) / (2h)
GridField deriv(const GridField& f, int axis);

// Compact 3-point second derivative along one axis:
// (f[j+1] - 2 f[j] + f[j-1]) / h^2
GridField deriv2(const GridField& f, int axis);

// Sum of deriv2 over the active axes.
GridField laplacian(const GridField& f);

// Spatial divergence of a vector of fields (one per active axis).
GridField divergence(const GridField& vx, const GridField& vy, const GridField& vz);

}  // namespace edlab
