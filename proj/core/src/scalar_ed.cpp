#include "edlab/scalar_ed.hpp"

#include <cmath>
#include <string>

#include "edlab/elliptic.hpp"
#include "edlab/rk4.hpp"
#include "edlab/stencil.hpp"

namespace edlab {

namespace {

// div of the spatial part, lower-index storage: sum_a d_a B_a
GridField div_lower(const FourField& B) {
  const GridSpec& s = B[1].spec();
  GridField out = deriv(B[1], 0);
  for (int a = 1; a < s.dim; ++a) out += deriv(B[a + 1], a);
  return out;
}

// sum_a B_a d_a f
GridField bdotgrad(const FourField& B, const GridField& f) {
  const GridSpec& s = f.spec();
  GridField out = pointwise_mul(B[1], deriv(f, 0));
  for (int a = 1; a < s.dim; ++a)
    out += pointwise_mul(B[a + 1], deriv(f, a));
  return out;
}

// sum_a d_a (f B_a), conservative product form: commutes exactly with the
// other central stencils, which is what keeps the discrete Gauss constraint
// propagated by coupled_step
GridField div_of_product(const FourField& B, const GridField& f) {
  const GridSpec& s = f.spec();
  GridField out = deriv(pointwise_mul(f, B[1]), 0);
  for (int a = 1; a < s.dim; ++a)
    out += deriv(pointwise_mul(f, B[a + 1]), a);
  return out;
}

// sum_a D_a D_a f with D_a the central first derivative. Composing first
// derivatives (instead of the compact 3-point laplacian) makes the discrete
// Gauss identity close exactly under the coupled evolution.
GridField wide_laplacian(const GridField& f) {
  const GridSpec& s = f.spec();
  GridField out = deriv(deriv(f, 0), 0);
  for (int a = 1; a < s.dim; ++a) out += deriv(deriv(f, a), a);
  return out;
}

void check_B0(const GridField& B0, double eps_rel) {
  const double floor = eps_rel * std::max(sup_norm(B0), 1e-100);
  for (std::size_t i = 0; i < B0.size(); ++i)
    if (std::abs(B0[i]) < floor)
      throw DegeneratePotential("B0 below threshold at site " +
                                std::to_string(i));
}

void check_density(const GridField& Phi, double eps) {
  for (std::size_t i = 0; i < Phi.size(); ++i)
    if (Phi[i].real() < eps)
      throw VanishingDensity("density below threshold at site " +
                             std::to_string(i));
}

// B0_ddot from the time-differentiated current conservation, given the
// density and its first two time derivatives.
GridField b0_ddot_from_density(const FourField& B, const FourField& Bd,
                               const GridField& Phi, const GridField& Phid,
                               const GridField& Phidd) {
  GridField divB = div_lower(B);
  GridField divBd = div_lower(Bd);
  // (B0dd - divBd) Phi + (B0d - divB) Phid + B0d Phid - sum Bd_i d_i Phi
  //   + B0 Phidd - sum B_i d_i Phid = 0
  GridField num = pointwise_mul(divBd, Phi);
  num -= pointwise_mul(Bd[0] - divB, Phid);
  num -= pointwise_mul(Bd[0], Phid);
  num += bdotgrad(Bd, Phi);
  num -= pointwise_mul(B[0], Phidd);
  num += bdotgrad(B, Phid);
  return pointwise_div(num, Phi);
}

}  // namespace

ScalarState ScalarState::operator+(const ScalarState& o) const {
  ScalarState r = *this;
  r.phi += o.phi;
  r.phi_dot += o.phi_dot;
  for (int mu = 0; mu < 4; ++mu) {
    r.B[mu] += o.B[mu];
    r.B_dot[mu] += o.B_dot[mu];
  }
  r.time += o.time;
  return r;
}

ScalarState ScalarState::operator*(double s) const {
  ScalarState r = *this;
  r.phi *= s;
  r.phi_dot *= s;
  for (int mu = 0; mu < 4; ++mu) {
    r.B[mu] *= s;
    r.B_dot[mu] *= s;
  }
  r.time *= s;
  return r;
}

bool ScalarState::is_finite() const {
  bool ok = phi.is_finite() && phi_dot.is_finite();
  for (int mu = 0; mu < 4; ++mu)
    ok = ok && B[mu].is_finite() && B_dot[mu].is_finite();
  return ok;
}

EliminatedState EliminatedState::operator+(const EliminatedState& o) const {
  EliminatedState r = *this;
  for (int mu = 0; mu < 4; ++mu) {
    r.B[mu] += o.B[mu];
    r.B_dot[mu] += o.B_dot[mu];
  }
  r.time += o.time;
  return r;
}

EliminatedState EliminatedState::operator*(double s) const {
  EliminatedState r = *this;
  for (int mu = 0; mu < 4; ++mu) {
    r.B[mu] *= s;
    r.B_dot[mu] *= s;
  }
  r.time *= s;
  return r;
}

bool EliminatedState::is_finite() const {
  for (int mu = 0; mu < 4; ++mu)
    if (!B[mu].is_finite() || !B_dot[mu].is_finite()) return false;
  return true;
}

GridField reconstruct_density(const EliminatedState& s, const Couplings& c,
                              const ScalarThresholds& th) {
  c.validate();
  check_B0(s.B[0], th.eps_B0_rel);
  GridField num = laplacian(s.B[0]) - div_lower(s.B_dot);
  GridField denom = s.B[0] * (2.0 * c.e * c.e);
  return pointwise_div(num, denom);
}

GridField density_dot(const EliminatedState& s, const GridField& Phi,
                      const Couplings&, const ScalarThresholds& th) {
  check_B0(s.B[0], th.eps_B0_rel);
  GridField num = pointwise_mul(div_lower(s.B) - s.B_dot[0], Phi);
  num += bdotgrad(s.B, Phi);
  return pointwise_div(num, s.B[0]);
}

GridField density_ddot(const EliminatedState& s, const GridField& Phi,
                       const GridField& Phi_dot, const Couplings& c,
                       const ScalarThresholds& th) {
  check_density(Phi, th.eps_Phi);
  const GridSpec& g = Phi.spec();
  GridField out = laplacian(Phi);
  // (Phid^2 - |grad Phi|^2) / (2 Phi)
  GridField quad = pointwise_mul(Phi_dot, Phi_dot);
  for (int a = 0; a < g.dim; ++a) {
    GridField d = deriv(Phi, a);
    quad -= pointwise_mul(d, d);
  }
  out += pointwise_div(quad, Phi) * 0.5;
  // 2 (e^2 B^mu B_mu - m^2) Phi with B^mu B_mu = B0^2 - sum B_i^2
  GridField bb = pointwise_mul(s.B[0], s.B[0]);
  for (int i = 1; i <= 3; ++i) bb -= pointwise_mul(s.B[i], s.B[i]);
  out += pointwise_mul(bb * (c.e * c.e) -
                           GridField::constant(g, c.m * c.m),
                       Phi) *
         2.0;
  return out;
}

std::array<GridField, 3> accel_spatial(const EliminatedState& s,
                                       const Couplings& c,
                                       const ScalarThresholds& th,
                                       bool via_density) {
  GridField grad_src = s.B_dot[0] - div_lower(s.B);
  GridField source_scalar(s.B[0].spec(), FieldKind::Real);
  if (via_density) {
    GridField Phi = reconstruct_density(s, c, th);
    source_scalar = Phi * (2.0 * c.e * c.e);  // multiplies B_i below
  } else {
    check_B0(s.B[0], th.eps_B0_rel);
    GridField num = laplacian(s.B[0]) - div_lower(s.B_dot);
    source_scalar = pointwise_div(num, s.B[0]);
  }
  std::array<GridField, 3> out{GridField(s.B[1].spec(), FieldKind::Real),
                               GridField(s.B[2].spec(), FieldKind::Real),
                               GridField(s.B[3].spec(), FieldKind::Real)};
  const int dim = s.B[0].spec().dim;
  for (int a = 0; a < 3; ++a) {
    GridField acc = laplacian(s.B[a + 1]);
    if (a < dim) acc += deriv(grad_src, a);
    acc -= pointwise_mul(s.B[a + 1], source_scalar);
    out[a] = acc;
  }
  return out;
}

GridField accel_temporal(const EliminatedState& s, const Couplings& c,
                         const ScalarThresholds& th) {
  GridField Phi = reconstruct_density(s, c, th);
  check_density(Phi, th.eps_Phi);
  GridField Phid = density_dot(s, Phi, c, th);
  GridField Phidd = density_ddot(s, Phi, Phid, c, th);
  return b0_ddot_from_density(s.B, s.B_dot, Phi, Phid, Phidd);
}

EliminatedState eliminated_step(const EliminatedState& s, double dt,
                                const Couplings& c,
                                const ScalarThresholds& th) {
  auto rhs = [&](const EliminatedState& y) {
    EliminatedState d;
    d.B = y.B_dot;
    auto acc = accel_spatial(y, c, th, false);
    d.B_dot[0] = accel_temporal(y, c, th);
    for (int a = 0; a < 3; ++a) d.B_dot[a + 1] = acc[a];
    d.time = 1.0;
    return d;
  };
  return rk4_step(s, dt, rhs);
}

ScalarState coupled_step(const ScalarState& s, double dt, const Couplings& c) {
  c.validate();
  const GridSpec& g = s.phi.spec();
  auto rhs = [&](const ScalarState& y) {
    ScalarState d;
    d.phi = y.phi_dot;
    // phi_ddot = lap phi + (e^2 (B0^2 - sum B_i^2) - m^2) phi
    GridField bb = pointwise_mul(y.B[0], y.B[0]);
    for (int i = 1; i <= 3; ++i) bb -= pointwise_mul(y.B[i], y.B[i]);
    GridField phidd = laplacian(y.phi);
    phidd += pointwise_mul(bb * (c.e * c.e) -
                               GridField::constant(g, c.m * c.m),
                           y.phi);
    d.phi_dot = phidd;
    d.B = y.B_dot;
    // Maxwell spatial components with j_i = -2 e^2 B_i phi^2
    GridField Phi = pointwise_mul(y.phi, y.phi);
    GridField grad_src = y.B_dot[0] - div_lower(y.B);
    for (int a = 0; a < 3; ++a) {
      GridField acc = wide_laplacian(y.B[a + 1]);
      if (a < g.dim) acc += deriv(grad_src, a);
      acc -= pointwise_mul(y.B[a + 1], Phi) * (2.0 * c.e * c.e);
      d.B_dot[a + 1] = acc;
    }
    // B0_ddot from the twice-differentiated Gauss constraint in conservative
    // form: d/dt [B0_dot Phi + B0 Phid - div(Phi B)] = 0 solved for B0_ddot.
    // With product-form divergences this identity holds exactly on the grid,
    // so the discrete Gauss residual is constant along the semidiscrete flow.
    GridField Phid = pointwise_mul(y.phi, y.phi_dot) * 2.0;
    GridField Phidd =
        (pointwise_mul(y.phi_dot, y.phi_dot) + pointwise_mul(y.phi, phidd)) *
        2.0;
    GridField num = div_of_product(y.B, Phid) + div_of_product(y.B_dot, Phi);
    num -= pointwise_mul(y.B_dot[0], Phid) * 2.0;
    num -= pointwise_mul(y.B[0], Phidd);
    d.B_dot[0] = pointwise_div(num, Phi);
    d.time = 1.0;
    return d;
  };
  return rk4_step(s, dt, rhs);
}

ScalarState make_initial_data(const GridField& phi, const GridField& phi_dot,
                              const std::array<GridField, 3>& B_spatial,
                              const std::array<GridField, 3>& B_dot_spatial,
                              const Couplings& c) {
  c.validate();
  const GridSpec& g = phi.spec();
  ScalarState s;
  s.phi = phi;
  s.phi_dot = phi_dot;
  for (int a = 0; a < 3; ++a) {
    // empty inputs stand for identically-zero components on inactive axes
    s.B[a + 1] = B_spatial[a].size() ? B_spatial[a]
                                     : GridField(g, FieldKind::Real);
    s.B_dot[a + 1] = B_dot_spatial[a].size() ? B_dot_spatial[a]
                                             : GridField(g, FieldKind::Real);
  }
  GridField Phi = pointwise_mul(phi, phi);
  check_density(Phi, 1e-10);
  // Gauss constraint as elliptic problem: (lap - 2 e^2 Phi) B0 = div B_dot
  GridField divBd = div_lower(s.B_dot);
  GridField coeff = Phi * (2.0 * c.e * c.e);
  s.B[0] = helmholtz_solve(divBd, coeff);
  // current conservation fixes B0_dot; product form matches the arrangement
  // coupled_step conserves, so the residual starts at roundoff
  GridField Phid = pointwise_mul(phi, phi_dot) * 2.0;
  GridField num = div_of_product(s.B, Phi) - pointwise_mul(s.B[0], Phid);
  s.B_dot[0] = pointwise_div(num, Phi);
  s.time = 0.0;
  return s;
}

double gauss_residual(const ScalarState& s, const Couplings& c) {
  GridField Phi = pointwise_mul(s.phi, s.phi);
  GridField G = wide_laplacian(s.B[0]) * (-1.0) + div_lower(s.B_dot) +
                pointwise_mul(s.B[0], Phi) * (2.0 * c.e * c.e);
  return sup_norm(G);
}

double gauss_residual(const EliminatedState& s, const Couplings& c,
                      const ScalarThresholds& th) {
  GridField Phi = reconstruct_density(s, c, th);
  GridField G = laplacian(s.B[0]) * (-1.0) + div_lower(s.B_dot) +
                pointwise_mul(s.B[0], Phi) * (2.0 * c.e * c.e);
  return sup_norm(G);
}

EliminatedState eliminate(const ScalarState& s) {
  EliminatedState r;
  r.B = s.B;
  r.B_dot = s.B_dot;
  r.time = s.time;
  return r;
}

}  // namespace edlab
