#include <cmath>
#include <numbers>

#include "doctest.h"
#include "edlab/scalar_ed.hpp"
#include "edlab/stencil.hpp"

using namespace edlab;

namespace {

constexpr double kL = 2.0 * std::numbers::pi;

GridField cos_wave(const GridSpec& g, double amp) {
  return GridField::sample_real(
      g, [amp](double x, double, double) { return amp * std::cos(x); });
}

// smooth 1+1D preset with phi >= 0.5 and a mode-1 potential wave
ScalarState preset(int N, const Couplings& c) {
  GridSpec g = GridSpec::line(N, kL);
  GridField phi = GridField::constant(g, 1.0) + cos_wave(g, 0.05);
  GridField phid = cos_wave(g, 0.025);
  std::array<GridField, 3> B{cos_wave(g, 0.0656), GridField(), GridField()};
  std::array<GridField, 3> Bd{cos_wave(g, -0.052), GridField(), GridField()};
  return make_initial_data(phi, phid, B, Bd, c);
}

}  // namespace

TEST_CASE("reconstruct_density vanishes for constant B0 vacuum") {
  GridSpec g = GridSpec::line(16, kL);
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  s.B[0] = GridField::constant(g, 0.3);
  CHECK(sup_norm(reconstruct_density(s, Couplings{})) < 1e-14);
}

TEST_CASE("reconstruct_density rejects B0 crossing zero") {
  GridSpec g = GridSpec::line(16, kL);
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  s.B[0] = GridField::constant(g, 0.3);
  s.B[0][5] = 1e-9;
  CHECK_THROWS_AS(reconstruct_density(s, Couplings{}), DegeneratePotential);
}

TEST_CASE("make_initial_data satisfies the constraints") {
  Couplings c;
  ScalarState s = preset(64, c);
  CHECK(gauss_residual(s, c) < 5e-4);

  // reconstructed density matches the prescribed phi^2 within O(h^2)
  GridField Phi = pointwise_mul(s.phi, s.phi);
  double gap64 = sup_norm(reconstruct_density(eliminate(s), c) - Phi);
  ScalarState s2 = preset(128, c);
  GridField Phi2 = pointwise_mul(s2.phi, s2.phi);
  double gap128 = sup_norm(reconstruct_density(eliminate(s2), c) - Phi2);
  CHECK(gap64 < 5e-3);
  CHECK(gap64 / gap128 > 3.0);
}

TEST_CASE("make_initial_data trivial data gives zero B0") {
  GridSpec g = GridSpec::line(16, kL);
  Couplings c;
  ScalarState s = make_initial_data(
      GridField::constant(g, 1.0), GridField(g, FieldKind::Real),
      {GridField(), GridField(), GridField()},
      {GridField(), GridField(), GridField()}, c);
  CHECK(sup_norm(s.B[0]) < 1e-13);
  CHECK(sup_norm(s.B_dot[0]) < 1e-13);
}

TEST_CASE("make_initial_data B0 is linear in B_dot") {
  GridSpec g = GridSpec::line(32, kL);
  Couplings c;
  GridField phi = GridField::constant(g, 1.0) + cos_wave(g, 0.1);
  GridField zero(g, FieldKind::Real);
  auto with_bd = [&](double amp) {
    return make_initial_data(phi, zero, {GridField(), GridField(), GridField()},
                             {cos_wave(g, amp), GridField(), GridField()}, c);
  };
  ScalarState a = with_bd(0.1), b = with_bd(0.2);
  CHECK(sup_norm(b.B[0] - a.B[0] * 2.0) < 1e-11);
}

TEST_CASE("density_dot trivial cases") {
  GridSpec g = GridSpec::line(16, kL);
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  s.B[0] = GridField::constant(g, 1.0);
  GridField Phi = GridField::constant(g, 0.7);
  CHECK(sup_norm(density_dot(s, Phi, Couplings{})) < 1e-14);
  CHECK(sup_norm(density_dot(s, GridField(g, FieldKind::Real), Couplings{})) <
        1e-14);
}

TEST_CASE("density_ddot of a uniform density is -2 m^2 Phi") {
  GridSpec g = GridSpec::line(16, kL);
  Couplings c;
  c.m = 1.3;
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  GridField Phi = GridField::constant(g, 0.7);
  GridField out = density_ddot(s, Phi, GridField(g, FieldKind::Real), c);
  CHECK(sup_norm(out - Phi * (-2.0 * c.m * c.m)) < 1e-13);
}

TEST_CASE("density_ddot rejects vanishing density") {
  GridSpec g = GridSpec::line(16, kL);
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  CHECK_THROWS_AS(density_ddot(s, GridField(g, FieldKind::Real),
                               GridField(g, FieldKind::Real), Couplings{}),
                  VanishingDensity);
}

TEST_CASE("density derivatives match the coupled evolution") {
  Couplings c;
  auto gaps = [&](int N) {
    ScalarState s = preset(N, c);
    const double dt = 1e-3;
    std::vector<GridField> Phis;
    std::vector<ScalarState> states;
    for (int j = 0; j < 5; ++j) {
      states.push_back(s);
      Phis.push_back(pointwise_mul(s.phi, s.phi));
      s = coupled_step(s, dt, c);
    }
    GridField fd1 = (Phis[3] - Phis[1]) * (1.0 / (2.0 * dt));
    GridField fd2 = (Phis[3] - Phis[2] * 2.0 + Phis[1]) * (1.0 / (dt * dt));
    EliminatedState e = eliminate(states[2]);
    GridField Phi = Phis[2];
    GridField pd = density_dot(e, Phi, c);
    GridField pdd = density_ddot(e, Phi, pd, c);
    return std::pair{sup_norm(pd - fd1), sup_norm(pdd - fd2)};
  };
  auto [d1a, d2a] = gaps(32);
  auto [d1b, d2b] = gaps(64);
  CHECK(d1a / d1b > 3.0);
  CHECK(d2a / d2b > 3.0);
}

TEST_CASE("accel_spatial two code paths agree to machine precision") {
  Couplings c;
  ScalarState s = preset(32, c);
  EliminatedState e = eliminate(s);
  auto via = accel_spatial(e, c, {}, true);
  auto direct = accel_spatial(e, c, {}, false);
  for (int a = 0; a < 3; ++a) CHECK(sup_norm(via[a] - direct[a]) < 1e-13);
}

TEST_CASE("accel_spatial vanishes for uniform B0 without spatial waves") {
  GridSpec g = GridSpec::line(16, kL);
  EliminatedState s;
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  s.B[0] = GridField::constant(g, 0.5);
  auto acc = accel_spatial(s, Couplings{});
  for (int a = 0; a < 3; ++a) CHECK(sup_norm(acc[a]) < 1e-14);
}

TEST_CASE("accelerations match second time differences of the coupled run") {
  Couplings c;
  auto gaps = [&](int N) {
    ScalarState s = preset(N, c);
    const double dt = 1e-3;
    std::vector<ScalarState> states;
    for (int j = 0; j < 3; ++j) {
      states.push_back(s);
      s = coupled_step(s, dt, c);
    }
    EliminatedState e = eliminate(states[1]);
    GridField fd_b1 = (states[2].B[1] - states[1].B[1] * 2.0 + states[0].B[1]) *
                      (1.0 / (dt * dt));
    GridField fd_b0 = (states[2].B[0] - states[1].B[0] * 2.0 + states[0].B[0]) *
                      (1.0 / (dt * dt));
    auto acc = accel_spatial(e, c);
    GridField acc0 = accel_temporal(e, c);
    return std::pair{sup_norm(acc[0] - fd_b1), sup_norm(acc0 - fd_b0)};
  };
  auto [sa, ta] = gaps(32);
  auto [sb, tb] = gaps(64);
  CHECK(sa / sb > 3.0);
  CHECK(ta / tb > 2.5);
}

TEST_CASE("eliminated_step tracks the coupled step over a short horizon") {
  Couplings c;
  ScalarState s = preset(32, c);
  const double dt = 5e-4;
  EliminatedState e = eliminate(s);
  ScalarState sc = s;
  for (int j = 0; j < 20; ++j) {
    e = eliminated_step(e, dt, c);
    sc = coupled_step(sc, dt, c);
  }
  // rhs of the two solvers differ by O(h^2) stencil arrangement, so the gap
  // is O(T dt h^2), far below the field scale
  CHECK(sup_norm(e.B[1] - sc.B[1]) < 1e-5);
  CHECK(sup_norm(e.B[0] - sc.B[0]) < 1e-5);
  GridField Phi = pointwise_mul(sc.phi, sc.phi);
  CHECK(sup_norm(reconstruct_density(e, c) - Phi) < 1e-2);
}

TEST_CASE("coupled zero mode oscillates at the Klein-Gordon frequency") {
  GridSpec g = GridSpec::line(8, kL);
  Couplings c;
  ScalarState s;
  s.phi = GridField::constant(g, 1.0);
  s.phi_dot = GridField(g, FieldKind::Real);
  for (int mu = 0; mu < 4; ++mu) {
    s.B[mu] = GridField(g, FieldKind::Real);
    s.B_dot[mu] = GridField(g, FieldKind::Real);
  }
  const double dt = 1e-3;
  const int periods = 10;
  const int steps =
      static_cast<int>(std::round(periods * 2.0 * std::numbers::pi / dt));
  for (int j = 0; j < steps; ++j) s = coupled_step(s, dt, c);
  const double expect = std::cos(steps * dt);
  CHECK(std::abs(s.phi[0].real() - expect) < 1e-6);
  CHECK(sup_norm(s.B[0]) < 1e-12);
}

TEST_CASE("gauss residual stays bounded over a unit horizon") {
  Couplings c;
  ScalarState s = preset(64, c);
  const double dt = 0.25 * s.phi.spec().h(0);
  const int steps = static_cast<int>(std::ceil(1.0 / dt));
  const double g0 = gauss_residual(s, c);
  double gmax = g0;
  for (int j = 0; j < steps; ++j) {
    s = coupled_step(s, dt, c);
    gmax = std::max(gmax, gauss_residual(s, c));
  }
  CHECK(gmax / std::max(g0, 1e-12) <= 10.0);
}

TEST_CASE("gauss residual of an eliminated state is zero by construction") {
  Couplings c;
  EliminatedState e = eliminate(preset(32, c));
  CHECK(gauss_residual(e, c) < 1e-12);
}

TEST_CASE("gauss residual responds linearly to a B0 perturbation") {
  Couplings c;
  ScalarState s = preset(64, c);
  const double g0 = gauss_residual(s, c);
  GridField bump = cos_wave(s.phi.spec(), 1.0);
  ScalarState p1 = s, p2 = s;
  p1.B[0] += bump * 1e-3;
  p2.B[0] += bump * 2e-3;
  const double r1 = gauss_residual(p1, c) - g0;
  const double r2 = gauss_residual(p2, c) - g0;
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.05));
}
