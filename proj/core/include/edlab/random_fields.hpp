#pragma once

#include <cstdint>

#include "edlab/grid.hpp"

namespace edlab {

// Band-limited random smooth fields: a few low Fourier modes with seeded
// coefficients, plus analytic time dependence so exact time derivatives of
// the same realization are available for convergence oracles.
struct RandomFieldOptions {
  int max_mode = 2;         // |k_a| <= max_mode per axis
  double amplitude = 0.1;   // per-mode coefficient scale
  double max_freq = 1.0;    // temporal angular frequency scale
  int max_total_sq = 0;     // if > 0, also require sum k_a^2 <= max_total_sq
};

class RandomField {
 public:
  // kind Real: field(t,x) real; kind Complex: independent real/imag parts.
  RandomField(const GridSpec& spec, FieldKind kind, std::uint64_t seed,
              const RandomFieldOptions& opts = {});

  // sample the field and its exact time derivatives at time t
  GridField at(double t, int time_deriv = 0) const;

  const GridSpec& spec() const { return spec_; }

  struct Mode {
    double kx, ky, kz;   // angular wavenumbers
    double omega;        // temporal angular frequency
    cd amp;              // complex coefficient
    double phase;        // temporal phase
  };

 private:
  GridSpec spec_;
  FieldKind kind_;
  std::vector<Mode> modes_re_, modes_im_;

  GridField eval(const std::vector<Mode>& modes, double t, int d) const;
};

}  // namespace edlab
