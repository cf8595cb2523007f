#include <cmath>
#include <complex>

#include "doctest.h"
#include "edlab/carleman.hpp"

using namespace edlab;
using namespace edlab::fock;
using namespace std::complex_literals;

namespace {

// Poisson tail bound: mass of a coherent state beyond occupation n_max
double coherent_tail(double xi_sq, int n_max) {
  double term = std::exp(-xi_sq), cdf = term;
  for (int n = 1; n <= n_max; ++n) {
    term *= xi_sq / n;
    cdf += term;
  }
  return std::sqrt(std::max(1.0 - cdf, 0.0));
}

}  // namespace

TEST_CASE("FockBasis dimension and index round trip") {
  FockBasis b(2, 3);
  CHECK(b.dim() == 10);  // C(3+2, 2)
  for (int i = 0; i < b.dim(); ++i) CHECK(b.index(b.tuple(i)) == i);
  CHECK(b.index({4, 0}) == -1);
  CHECK(b.index({2, 2}) == -1);
}

TEST_CASE("ladder operators satisfy the truncated algebra") {
  FockBasis b(2, 4);
  LadderOps L = ladder_ops(b);
  const int vac = b.index({0, 0});
  Vec v0 = Vec::Zero(b.dim());
  v0[vac] = 1.0;
  CHECK((L.a[0] * v0).norm() == 0.0);
  CHECK((L.a[1] * v0).norm() == 0.0);

  // [a, a^dag] = 1 strictly below the cutoff shell
  Mat comm = L.a[0] * L.a_dag[0] - L.a_dag[0] * L.a[0];
  for (int i = 0; i < b.dim(); ++i) {
    const auto& t = b.tuple(i);
    const int total = t[0] + t[1];
    if (total < b.n_max()) {
      CHECK(std::abs(comm(i, i) - 1.0) < 1e-14);
    } else {
      // a^dag annihilates the top shell, leaving -a^dag a = -n there
      CHECK(std::abs(comm(i, i) + double(t[0])) < 1e-14);
    }
  }

  Mat cross = L.a[0] * L.a[1] - L.a[1] * L.a[0];
  CHECK(cross.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coherent state basics") {
  FockBasis b(1, 12);
  Vec xi0 = Vec::Zero(1);
  Vec vac = coherent(xi0, b);
  CHECK(std::abs(vac.norm() - 1.0) < 1e-14);

  Vec xi(1);
  xi[0] = cd(0.3, 0.4);  // |xi| = 0.5
  Vec v = coherent(xi, b);
  CHECK(std::abs(v.norm() - 1.0) < 1e-9);
  // a v = xi v up to the top-shell coefficient ~ |xi|^n/sqrt(n!) ~ 1e-8
  LadderOps L = ladder_ops(b);
  CHECK((L.a[0] * v - xi[0] * v).norm() < 1e-7);

  Vec big(1);
  big[0] = 0.6;
  CHECK_THROWS_AS(coherent(big, b), AmplitudeTooLarge);
}

TEST_CASE("hamiltonian of the linear rotor is diagonal") {
  const double omega = 1.7;
  FockBasis b(1, 6);
  Mat M = hamiltonian(PolyVectorField::linear_rotor(1, omega), b);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      const cd expect =
          (i == j) ? cd(0.0, -omega * b.tuple(i)[0]) : cd(0.0, 0.0);
      CHECK(std::abs(M(i, j) - expect) < 1e-14);
    }
}

TEST_CASE("constant vector field maps to a creation operator") {
  FockBasis b(1, 5);
  PolyVectorField F;
  F.k = 1;
  F.F = {{Monomial{cd(0.3, -0.2), {0}}}};
  Mat M = hamiltonian(F, b);
  LadderOps L = ladder_ops(b);
  CHECK((M - cd(0.3, -0.2) * L.a_dag[0]).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("vacuum is stationary under any polynomial drift") {
  FockBasis b(1, 6);
  Mat M = hamiltonian(PolyVectorField::nonlinear_mode(0.3), b);
  Vec vac = coherent(Vec::Zero(1), b);
  Vec v = fock_evolve(vac, M, 1.0, 1e-2);
  CHECK((v - vac).norm() < 1e-13);
}

TEST_CASE("rotor coherent state follows the classical rotation") {
  FockBasis b(1, 10);
  PolyVectorField F = PolyVectorField::linear_rotor(1, 1.0);
  Mat M = hamiltonian(F, b);
  Vec xi0(1);
  xi0[0] = 0.4;
  Vec v = fock_evolve(coherent(xi0, b), M, 2.0, 1e-3);
  CoherentParams cp = classical_evolve(xi0, F, 2.0, 1e-3);
  CHECK(std::abs(cp.xi[0] - xi0[0] * std::exp(-2.0i)) < 1e-9);
  CHECK(std::abs(cp.norm_log) < 1e-9);
  CHECK(embedding_gap(v, cp, b) <
        1e-6 + 2.0 * coherent_tail(std::norm(xi0[0]), b.n_max()));
}

TEST_CASE("classical_evolve matches the analytic decay solution") {
  PolyVectorField F = PolyVectorField::decay(1);
  Vec xi0(1);
  xi0[0] = cd(0.2, 0.1);
  const double T = 1.5;
  CoherentParams cp = classical_evolve(xi0, F, T, 1e-4);
  CHECK(std::abs(cp.xi[0] - xi0[0] * std::exp(-T)) < 1e-10);
  const double n0 = std::norm(xi0[0]);
  CHECK(std::abs(cp.norm_log - 0.5 * (n0 * std::exp(-2.0 * T) - n0)) < 1e-10);
}

TEST_CASE("embedding gap vanishes at t = 0") {
  FockBasis b(1, 8);
  Vec xi0(1);
  xi0[0] = cd(0.1, 0.25);
  CoherentParams cp;
  cp.xi = xi0;
  CHECK(embedding_gap(coherent(xi0, b), cp, b) < 1e-14);
}

TEST_CASE("fock_evolve is strictly linear") {
  FockBasis b(1, 8);
  Mat M = hamiltonian(PolyVectorField::nonlinear_mode(0.2), b);
  Vec xa(1), xb(1);
  xa[0] = 0.3;
  xb[0] = cd(0.0, 0.25);
  Vec va = coherent(xa, b), vb = coherent(xb, b);
  const cd ca(0.7, 0.1), cb(-0.4, 0.3);
  Vec lhs = fock_evolve(ca * va + cb * vb, M, 1.0, 1e-3);
  Vec rhs = ca * fock_evolve(va, M, 1.0, 1e-3) +
            cb * fock_evolve(vb, M, 1.0, 1e-3);
  CHECK((lhs - rhs).norm() < 1e-10 * rhs.norm());
}

TEST_CASE("weak_superposition deviation grows with amplitude") {
  FockBasis b(1, 8);
  PolyVectorField F = PolyVectorField::nonlinear_mode(0.3);
  Vec xi(1), eta(1);
  xi[0] = 0.3;
  eta[0] = cd(0.0, 0.3);
  auto pts = weak_superposition(cd(1.0, 0.0), cd(0.0, 1.0), xi, eta, F, 1.0,
                                1e-3, b, {1.0, 0.5, 0.25});
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].deviation > pts[1].deviation);
  CHECK(pts[1].deviation > pts[2].deviation);
}
