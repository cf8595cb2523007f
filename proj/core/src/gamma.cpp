#include "edlab/gamma.hpp"

namespace edlab {

GammaSet gammas() {
  using namespace std::complex_literals;
  Eigen::Matrix2cd s1, s2, s3, id;
  s1 << 0, 1, 1, 0;
  s2 << 0, -1i, 1i, 0;
  s3 << 1, 0, 0, -1;
  id.setIdentity();

  GammaSet G;
  for (auto& m : G.g) m.setZero();
  G.g[0].block<2, 2>(0, 2) = -id;
  G.g[0].block<2, 2>(2, 0) = -id;
  const Eigen::Matrix2cd sig[3] = {s1, s2, s3};
  for (int i = 0; i < 3; ++i) {
    G.g[i + 1].block<2, 2>(0, 2) = sig[i];
    G.g[i + 1].block<2, 2>(2, 0) = -sig[i];
  }
  return G;
}

}  // namespace edlab
