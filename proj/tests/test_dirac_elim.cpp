#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "edlab/dirac_elim.hpp"
#include "edlab/gamma.hpp"
#include "edlab/random_fields.hpp"
#include "edlab/spinor.hpp"
#include "edlab/stencil.hpp"

using namespace edlab;
using namespace std::complex_literals;

namespace {

constexpr double kL = 2.0 * std::numbers::pi;

RealPotential zero_potential(const GridSpec& g) { return RealPotential(g); }

// uniform rotating electric background, |iF1+F2| bounded below
RealPotential rotating_background(const GridSpec& g, double amp, double t) {
  RealPotential A(g);
  A.A[1] = GridField::constant(g, amp * std::cos(t));
  A.A[2] = GridField::constant(g, amp * std::sin(t));
  A.A[1].set_kind(FieldKind::Real);
  A.A[2].set_kind(FieldKind::Real);
  return A;
}

SpinorField random_spinor(const GridSpec& g, std::uint64_t seed, double amp,
                          double t = 0.0) {
  RandomFieldOptions o;
  o.max_mode = 1;
  o.max_total_sq = 1;
  o.amplitude = amp;
  SpinorField psi(g);
  for (int c = 0; c < 4; ++c)
    psi.c[c] = RandomField(g, FieldKind::Complex, seed + c, o).at(t);
  return psi;
}

double spinor_sup(const SpinorField& s) {
  double m = 0.0;
  for (int c = 0; c < 4; ++c) m = std::max(m, sup_norm(s.c[c]));
  return m;
}

double spinor_l2(const SpinorField& s) {
  double sum = 0.0;
  for (int c = 0; c < 4; ++c) {
    const double n = l2_norm(s.c[c]);
    sum += n * n;
  }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("gammas reproduce the chiral representation and Clifford algebra") {
  GammaSet G = gammas();
  CHECK(G[0](0, 2) == cd(-1.0, 0.0));
  CHECK(G[0](2, 0) == cd(-1.0, 0.0));
  CHECK(G[1](0, 3) == cd(1.0, 0.0));   // upper-right sigma^1 block
  CHECK(G[1](2, 1) == cd(-1.0, 0.0));  // lower-left -sigma^1 block
  const double metric[4] = {1.0, -1.0, -1.0, -1.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Mat4 anti = G[mu] * G[nu] + G[nu] * G[mu];
      Mat4 expect = Mat4::Identity() *
                    (mu == nu ? 2.0 * metric[mu] : 0.0);
      CHECK((anti - expect).cwiseAbs().maxCoeff() < 1e-15);
    }
  for (int mu = 0; mu < 4; ++mu) {
    Mat4 herm = G[mu].adjoint() - G[0] * G[mu] * G[0];
    CHECK(herm.cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("chiral_f vanishes for a static pure-gauge potential") {
  GridSpec g = GridSpec::cube(8, kL);
  GridField chi = GridField::sample_real(g, [](double x, double y, double) {
    return std::sin(x) + 0.5 * std::cos(y);
  });
  RealPotential A(g);
  for (int k = 0; k < 3; ++k) A.A[k + 1] = deriv(chi, k);
  PotStack As(0.1, 3);
  for (int j = 0; j < 3; ++j) As.push(A);
  ChiralTriple F = chiral_f(As, 1);
  CHECK(sup_norm(F.F1) < 1e-13);
  CHECK(sup_norm(F.F2) < 1e-13);
  CHECK(sup_norm(F.F3) < 1e-13);
}

TEST_CASE("chiral_f matches a direct field-strength assembly") {
  GridSpec g = GridSpec::cube(8, kL);
  RealPotential A(g);
  A.A[3] = GridField::sample_real(
      g, [](double x, double, double) { return std::sin(x); });
  PotStack As(0.1, 3);
  for (int j = 0; j < 3; ++j) As.push(A);
  ChiralTriple F = chiral_f(As, 1);
  // static, A^3 only: E = 0, H = curl A -> H^2 = -d_x A^3
  GridField H2 = deriv(A.A[3], 0) * (-1.0);
  CHECK(sup_norm(F.F1) < 1e-13);
  CHECK(sup_norm(F.F3) < 1e-13);
  CHECK(sup_norm(F.F2 - H2 * 1.0i) < 1e-13);
}

TEST_CASE("dirac_residual is zero on the zero spinor") {
  GridSpec g = GridSpec::cube(8, kL);
  SpinorStack ps(0.1, 3);
  PotStack As(0.1, 3);
  for (int j = 0; j < 3; ++j) {
    ps.push(SpinorField(g));
    As.push(zero_potential(g));
  }
  CHECK(spinor_sup(dirac_residual(ps, As, 1)) == 0.0);
}

TEST_CASE("rest-frame spinor solves the free Dirac equation") {
  GridSpec g = GridSpec::cube(8, kL);
  // gamma^0 u = u picks u = (v, -v); psi = u e^{-it}
  SpinorField u(g);
  u.c[0] = GridField::constant(g, 1.0 / std::sqrt(2.0));
  u.c[2] = GridField::constant(g, -1.0 / std::sqrt(2.0));

  const double dt = 0.01;
  SpinorStack ps(dt, 3);
  PotStack As(dt, 3);
  for (int j = -1; j <= 1; ++j) {
    ps.push(u * std::exp(cd(0.0, -j * dt)));
    As.push(zero_potential(g));
  }
  CHECK(spinor_sup(dirac_residual(ps, As, 1)) < 1e-4);

  // evolve with dirac_step and compare against the analytic phase
  SpinorField psi = u;
  auto A_of_t = [&](double) { return zero_potential(g); };
  for (int j = 0; j < 100; ++j) psi = dirac_step(psi, A_of_t, j * dt, dt);
  SpinorField expect = u * std::exp(cd(0.0, -100 * dt));
  CHECK(spinor_sup(psi - expect) < 1e-9);
}

TEST_CASE("dirac_step conserves the L2 norm of free wave packets") {
  GridSpec g = GridSpec::cube(8, kL);
  SpinorField psi = random_spinor(g, 17, 0.2);
  const double n0 = spinor_l2(psi);
  auto A_of_t = [&](double) { return zero_potential(g); };
  const double dt = 0.02;
  for (int j = 0; j < 100; ++j) psi = dirac_step(psi, A_of_t, j * dt, dt);
  CHECK(std::abs(spinor_l2(psi) - n0) < 1e-6 * n0);
}

TEST_CASE("constant A0 shifts the solution by a pure phase") {
  GridSpec g = GridSpec::cube(8, kL);
  const double a0 = 0.3, dt = 0.02;
  SpinorField psi_free = random_spinor(g, 23, 0.2);
  SpinorField psi_shift = psi_free;
  auto free_pot = [&](double) { return zero_potential(g); };
  auto shift_pot = [&](double) {
    RealPotential A(g);
    A.A[0] = GridField::constant(g, a0);
    A.A[0].set_kind(FieldKind::Real);
    return A;
  };
  for (int j = 0; j < 50; ++j) {
    psi_free = dirac_step(psi_free, free_pot, j * dt, dt);
    psi_shift = dirac_step(psi_shift, shift_pot, j * dt, dt);
  }
  SpinorField expect = psi_free * std::exp(cd(0.0, -a0 * 50 * dt));
  CHECK(spinor_sup(psi_shift - expect) < 1e-8);
}

TEST_CASE("lower_components vanish on zero upper components") {
  GridSpec g = GridSpec::cube(8, kL);
  ScalarStack p1(0.1, 3), p2(0.1, 3);
  PotStack As(0.1, 3);
  for (int j = 0; j < 3; ++j) {
    p1.push(GridField(g, FieldKind::Complex));
    p2.push(GridField(g, FieldKind::Complex));
    As.push(zero_potential(g));
  }
  auto [p3, p4] = lower_components(p1, p2, As, 1);
  CHECK(sup_norm(p3) == 0.0);
  CHECK(sup_norm(p4) == 0.0);
}

TEST_CASE("psi2_from_psi1 is linear in psi1 and rejects degenerate F") {
  GridSpec g = GridSpec::cube(8, kL);
  const double dt = 0.05;
  RandomFieldOptions o;
  o.amplitude = 0.1;
  RandomField f(g, FieldKind::Complex, 31, o);

  ScalarStack p1(dt, 7), p1s(dt, 7);
  PotStack As(dt, 7), A0s(dt, 7);
  const cd scale(0.7, -0.4);
  for (int j = 0; j < 7; ++j) {
    GridField slice = f.at(j * dt);
    p1.push(slice);
    p1s.push(slice * scale);
    As.push(rotating_background(g, 0.5, j * dt));
    A0s.push(zero_potential(g));
  }
  GridField a = psi2_from_psi1(p1, As, 3);
  GridField b = psi2_from_psi1(p1s, As, 3);
  CHECK(sup_norm(b - a * scale) < 1e-12);
  CHECK_THROWS_AS(psi2_from_psi1(p1, A0s, 3), DegenerateField);
}

TEST_CASE("fourth_order_residual is zero on zero psi1") {
  GridSpec g = GridSpec::cube(8, kL);
  const double dt = 0.05;
  ScalarStack p1(dt, 7);
  PotStack As(dt, 7);
  for (int j = 0; j < 7; ++j) {
    p1.push(GridField(g, FieldKind::Complex));
    As.push(rotating_background(g, 0.5, j * dt));
  }
  CHECK(sup_norm(fourth_order_residual(p1, As, 3)) == 0.0);
}

TEST_CASE("two-path identity: Eq20 direct equals Eq19 after Eq16") {
  GridSpec g = GridSpec::cube(8, kL);
  const double dt = 0.05;
  RandomFieldOptions o;
  o.amplitude = 0.1;
  RandomField f(g, FieldKind::Complex, 37, o);
  ScalarStack p1(dt, 7);
  PotStack As(dt, 7);
  for (int j = 0; j < 7; ++j) {
    p1.push(f.at(j * dt));
    As.push(rotating_background(g, 0.5, j * dt));
  }
  GridField r1 = fourth_order_residual(p1, As, 3);
  ScalarStack w(dt, 5);
  PotStack At(dt, 5);
  for (std::size_t j = 1; j <= 5; ++j) {
    w.push(psi2_from_psi1(p1, As, j) * (-1.0));
    At.push(As.at(j));
  }
  ChiralTriple Fc = chiral_f(As, 3);
  GridField r2 = boxprime(w, At, 2) - pointwise_mul(Fc.F3, w.at(2)) * 1.0i;
  r2 += pointwise_mul(Fc.F2 - Fc.F1 * 1.0i, p1.at(3));
  CHECK(sup_norm(r1 - r2) / std::max(sup_norm(r1), 1e-300) < 1e-12);
}

TEST_CASE("current is real and follows the single-component pattern") {
  GridSpec g = GridSpec::cube(8, kL);
  SpinorField psi = random_spinor(g, 41, 0.3);
  auto j = current(psi);
  for (int mu = 0; mu < 4; ++mu) CHECK(j[mu].max_imag() < 1e-13);

  SpinorField only1(g);
  only1.c[0] = psi.c[0];
  auto j1 = current(only1);
  GridField dens = pointwise_mul(psi.c[0].conjugate(), psi.c[0]);
  CHECK(sup_norm(j1[0] - dens) < 1e-13);
  CHECK(sup_norm(j1[1]) < 1e-13);
  CHECK(sup_norm(j1[2]) < 1e-13);
  // with only psi1, |j^3| = j^0 (chiral representation)
  CHECK(sup_norm(j1[3]) == doctest::Approx(sup_norm(j1[0])).epsilon(1e-12));
}

TEST_CASE("conservation identity gap shrinks at stencil order") {
  RandomFieldOptions o;
  o.amplitude = 0.1;
  o.max_total_sq = 1;
  auto gap = [&](int N) {
    GridSpec g = GridSpec::cube(N, kL);
    const double dt = 0.25 * g.h(0);
    SpinorStack ps(dt, 3);
    PotStack As(dt, 3);
    std::vector<RandomField> pf, af;
    for (int c = 0; c < 4; ++c) pf.emplace_back(g, FieldKind::Complex, 50 + c, o);
    for (int mu = 0; mu < 4; ++mu)
      af.emplace_back(g, FieldKind::Real, 60 + mu, o);
    for (int j = -1; j <= 1; ++j) {
      SpinorField psi(g);
      for (int c = 0; c < 4; ++c) psi.c[c] = pf[c].at(j * dt);
      RealPotential A(g);
      for (int mu = 0; mu < 4; ++mu) A.A[mu] = af[mu].at(j * dt);
      ps.push(std::move(psi));
      As.push(std::move(A));
    }
    return l2_norm(conservation_identity_gap(ps, As, 1));
  };
  const double e8 = gap(8), e16 = gap(16);
  CHECK(e8 / e16 > 3.0);
}

TEST_CASE("unwrap_phase handles constant phases and detects winding") {
  GridSpec g = GridSpec::cube(8, kL);
  GridField f = GridField::constant(g, std::exp(cd(0.0, 0.8)) * 2.0);
  GridField a = unwrap_phase(f);
  CHECK(sup_norm(a - GridField::constant(g, 0.8)) < 1e-13);

  GridField winding = GridField::sample_complex(
      g, [](double x, double, double) { return std::exp(cd(0.0, x)); });
  CHECK_THROWS_AS(unwrap_phase(winding), WindingObstruction);
}

TEST_CASE("make_real_gauge leaves a real psi1 unchanged and preserves F") {
  GridSpec g = GridSpec::cube(8, kL);
  const double dt = 0.05;
  SpinorStack ps(dt, 3);
  PotStack As(dt, 3);
  RandomFieldOptions o;
  o.amplitude = 0.1;
  o.max_total_sq = 1;
  RandomField mag(g, FieldKind::Real, 71, o);
  for (int j = -1; j <= 1; ++j) {
    SpinorField psi = random_spinor(g, 73, 0.1, j * dt);
    psi.c[0] = GridField::constant(g, 1.0) + mag.at(j * dt);
    ps.push(std::move(psi));
    As.push(rotating_background(g, 0.5, j * dt));
  }
  RealGauge rg = make_real_gauge(ps, As, 1);
  CHECK(sup_norm(rg.alpha) < 1e-13);
  CHECK(spinor_sup(rg.psi - ps.at(1)) < 1e-13);
}
