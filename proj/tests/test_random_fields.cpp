#include "doctest.h"
#include "edlab/random_fields.hpp"

using namespace edlab;

TEST_CASE("RandomField is deterministic in the seed") {
  GridSpec g = GridSpec::cube(8, 1.0);
  RandomField a(g, FieldKind::Complex, 42);
  RandomField b(g, FieldKind::Complex, 42);
  RandomField c(g, FieldKind::Complex, 43);
  CHECK(sup_norm(a.at(0.3) - b.at(0.3)) == 0.0);
  CHECK(sup_norm(a.at(0.3) - c.at(0.3)) > 0.0);
}

TEST_CASE("RandomField real kind has no imaginary part") {
  GridSpec g = GridSpec::cube(8, 1.0);
  RandomField f(g, FieldKind::Real, 7);
  CHECK(f.at(1.2).max_imag() == 0.0);
}

TEST_CASE("RandomField analytic time derivative matches finite differences") {
  GridSpec g = GridSpec::cube(8, 1.0);
  RandomField f(g, FieldKind::Complex, 5);
  const double t = 0.4, dt = 1e-4;
  GridField fd = (f.at(t + dt) - f.at(t - dt)) * (1.0 / (2.0 * dt));
  CHECK(sup_norm(fd - f.at(t, 1)) < 1e-6);
  GridField fd2 = (f.at(t + dt) - f.at(t) * 2.0 + f.at(t - dt)) *
                  (1.0 / (dt * dt));
  CHECK(sup_norm(fd2 - f.at(t, 2)) < 1e-5);
}

TEST_CASE("max_total_sq restricts to low-|k| modes without reseeding") {
  GridSpec g = GridSpec::cube(8, 1.0);
  RandomFieldOptions all, axis;
  axis.max_total_sq = 1;
  RandomField fa(g, FieldKind::Real, 9, all);
  RandomField fb(g, FieldKind::Real, 9, axis);
  // the axis-restricted field is a strict sub-sum of the full one
  CHECK(sup_norm(fa.at(0.0) - fb.at(0.0)) > 0.0);
}
