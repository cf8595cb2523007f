#pragma once

#include "edlab/grid.hpp"

namespace edlab {

// Forward/inverse DFT of a field (unnormalized forward, normalized inverse).
GridField fft_forward(const GridField& f);
GridField fft_inverse(const GridField& f);

// Spectral (exact) spatial derivatives, used to build initial data and
// zero-mean projections; the evolution operators use the FD stencils.
GridField spectral_deriv(const GridField& f, int axis);
GridField spectral_laplacian(const GridField& f);

struct HelmholtzOptions {
  int max_iters = 200;
  double tol = 1e-12;        // relative fixed-point increment
  double symbol_floor = 1e-12;
};

// Solve (laplacian - coeff) u = rhs on the periodic grid with a spectrally
// preconditioned fixed-point iteration: the constant part of coeff is folded
// into the symbol, the fluctuation is iterated. If the mean coefficient is
// (numerically) zero the k=0 mode is fixed by the zero-mean convention and
// rhs must have (numerically) zero mean.
GridField helmholtz_solve(const GridField& rhs, const GridField& coeff,
                          const HelmholtzOptions& opts = {});

// Poisson convenience: laplacian u = rhs, zero-mean u.
GridField poisson_solve(const GridField& rhs);

}  // namespace edlab
