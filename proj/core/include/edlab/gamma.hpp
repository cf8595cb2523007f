#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace edlab {

using Mat4 = Eigen::Matrix4cd;

// Chiral representation with the off-diagonal -I blocks in gamma^0:
//   gamma^0 = [[0, -I], [-I, 0]],  gamma^i = [[0, sigma^i], [-sigma^i, 0]].
// Satisfies {gamma^mu, gamma^nu} = 2 g^{mu nu} with signature (+,-,-,-),
// (gamma^0)^2 = I, (gamma^mu)^dagger = gamma^0 gamma^mu gamma^0.
struct GammaSet {
  std::array<Mat4, 4> g;  // g[0..3] = gamma^0..gamma^3
  const Mat4& operator[](int mu) const { return g[mu]; }
};

GammaSet gammas();

}  // namespace edlab
