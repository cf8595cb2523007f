#include "edlab/spinor_ed.hpp"

#include <cmath>
#include <string>

#include "edlab/elliptic.hpp"
#include "edlab/stencil.hpp"

namespace edlab {

namespace {

using namespace std::complex_literals;

template <typename T>
T d1(const TimeStack<T>& s, std::size_t c) {
  if (c < 1 || c + 1 >= s.size())
    throw MissingSlices("time stencil needs a neighbor slice on each side");
  return (s.at(c + 1) - s.at(c - 1)) * (1.0 / (2.0 * s.dt()));
}

template <typename T>
T d2(const TimeStack<T>& s, std::size_t c) {
  if (c < 1 || c + 1 >= s.size())
    throw MissingSlices("time stencil needs a neighbor slice on each side");
  return (s.at(c + 1) - s.at(c) * 2.0 + s.at(c - 1)) *
         (1.0 / (s.dt() * s.dt()));
}

void check_floor(const GridField& f, double eps_rel, const char* what) {
  const double floor = eps_rel * std::max(sup_norm(f), 1e-100);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) < floor)
      throw DegenerateField(std::string(what) + " degenerate at site " +
                            std::to_string(i));
}

GridField mul(const GridField& a, const GridField& b) {
  return pointwise_mul(a, b);
}
GridField div_pw(const GridField& a, const GridField& b) {
  return pointwise_div(a, b);
}
GridField conj(const GridField& a) { return a.conjugate(); }

// div over the spatial raised components of a four-field
template <typename Four>
GridField div_spatial(const Four& v) {
  GridField out = deriv(v[1], 0);
  out += deriv(v[2], 1);
  out += deriv(v[3], 2);
  return out;
}

// chiral F^i of a (possibly complex) potential and its time derivative:
// F^i = -d_i X^0 - Xd^i + i (curl X)^i
std::array<GridField, 3> chiral_from(const std::array<GridField, 4>& X,
                                     const std::array<GridField, 4>& Xd) {
  std::array<GridField, 3> F;
  GridField H1 = deriv(X[3], 1) - deriv(X[2], 2);
  GridField H2 = deriv(X[1], 2) - deriv(X[3], 0);
  GridField H3 = deriv(X[2], 0) - deriv(X[1], 1);
  F[0] = deriv(X[0], 0) * (-1.0) - Xd[1] + H1 * 1.0i;
  F[1] = deriv(X[0], 1) * (-1.0) - Xd[2] + H2 * 1.0i;
  F[2] = deriv(X[0], 2) * (-1.0) - Xd[3] + H3 * 1.0i;
  return F;
}

// everything the elimination chain needs at one slice, from (B, Bd, Bdd)
struct BLocal {
  std::array<GridField, 4> B, Bd, Bdd;
  GridField F1, F2, F3, F1d, F2d, F3d;
  GridField P, Pd;       // P = iF1 + F2
  GridField G, Gd;       // G = i B^mu_{,mu} - B^mu B_mu + 1
  GridField S, Sd;       // S = G + iF3
  GridField phi2, phi2_dot;

  explicit BLocal(const BStack& stack, std::size_t center,
                  const DiracThresholds& th) {
    B = stack.at(center).B;
    Bd = d1(stack, center).B;
    Bdd = d2(stack, center).B;
    auto F = chiral_from(B, Bd);
    F1 = F[0];
    F2 = F[1];
    F3 = F[2];
    auto Fd = chiral_from(Bd, Bdd);
    F1d = Fd[0];
    F2d = Fd[1];
    F3d = Fd[2];
    P = F1 * 1.0i + F2;
    Pd = F1d * 1.0i + F2d;
    check_floor(P, th.eps_F_rel, "iF1+F2");

    const GridSpec& spec = B[0].spec();
    GridField one = GridField::constant(spec, 1.0);
    G = (Bd[0] + div_spatial(B)) * 1.0i + one;
    GridField bb = mul(B[0], B[0]);
    for (int k = 1; k <= 3; ++k) bb -= mul(B[k], B[k]);
    G -= bb;
    Gd = (Bdd[0] + div_spatial(Bd)) * 1.0i;
    GridField bbd = mul(B[0], Bd[0]);
    for (int k = 1; k <= 3; ++k) bbd -= mul(B[k], Bd[k]);
    Gd -= bbd * 2.0;
    S = G + F3 * 1.0i;
    Sd = Gd + F3d * 1.0i;

    phi2 = div_pw(S, P) * (-1.0);
    // d/dt(-S/P) = (S Pd - Sd P) / P^2
    phi2_dot = div_pw(mul(S, Pd) - mul(Sd, P), mul(P, P));
  }

  // phi2_ddot from the dynamical second-component equation (Eq. of motion
  // form): needs only (B, Bd, Bdd) and spatial derivatives.
  GridField phi2_ddot_dyn() const {
    GridField bracket = laplacian(phi2) * (-1.0);
    GridField adv = mul(B[1], deriv(phi2, 0));
    adv += mul(B[2], deriv(phi2, 1));
    adv += mul(B[3], deriv(phi2, 2));
    bracket += adv * 2.0i;
    bracket += mul(G - F3 * 1.0i, phi2);
    return mul(B[0], phi2_dot) * (-2.0i) - bracket -
           (F1 * 1.0i - F2);
  }
};

struct PhiSet {
  GridField phi2, phi2_dot, phi2_ddot;
  GridField phi3, phi3_dot, phi4, phi4_dot;

  PhiSet(const BLocal& L) {
    phi2 = L.phi2;
    phi2_dot = L.phi2_dot;
    phi2_ddot = L.phi2_ddot_dyn();
    const auto& B = L.B;
    const auto& Bd = L.Bd;
    phi3 = B[0] - B[3] - mul(B[1] - B[2] * 1.0i, phi2) - deriv(phi2, 1) -
           deriv(phi2, 0) * 1.0i;
    phi3_dot = Bd[0] - Bd[3] - mul(Bd[1] - Bd[2] * 1.0i, phi2) -
               mul(B[1] - B[2] * 1.0i, phi2_dot) - deriv(phi2_dot, 1) -
               deriv(phi2_dot, 0) * 1.0i;
    phi4 = (B[1] + B[2] * 1.0i) * (-1.0) + mul(B[0] + B[3], phi2) +
           deriv(phi2, 2) * 1.0i - phi2_dot * 1.0i;
    // time derivative of the phi4 expression; the last term is -i phi2_ddot
    // (re-derived; the printed equation's -i phi2_dot does not follow from
    // differentiating the phi4 formula)
    phi4_dot = (Bd[1] + Bd[2] * 1.0i) * (-1.0) + mul(Bd[0] + Bd[3], phi2) +
               mul(B[0] + B[3], phi2_dot) + deriv(phi2_dot, 2) * 1.0i -
               phi2_ddot * 1.0i;
  }

  GridField D() const {
    return (mul(conj(phi2), phi2) + mul(conj(phi3), phi3) +
            mul(conj(phi4), phi4))
        .real_part();
  }
  GridField D_dot() const {
    GridField s = mul(conj(phi2), phi2_dot) + mul(conj(phi3), phi3_dot) +
                  mul(conj(phi4), phi4_dot);
    return s.real_part() * 2.0;
  }
  // rows 2..4 of the current expansion with phi1 = 1
  std::array<GridField, 3> u() const {
    std::array<GridField, 3> v;
    v[0] = conj(phi2) + phi2 - mul(conj(phi4), phi3) - mul(conj(phi3), phi4);
    v[1] = (conj(phi2) - phi2 - mul(conj(phi4), phi3) +
            mul(conj(phi3), phi4)) *
           1.0i;
    const GridSpec& spec = phi2.spec();
    v[2] = GridField::constant(spec, 1.0) - mul(conj(phi2), phi2) -
           mul(conj(phi3), phi3) + mul(conj(phi4), phi4);
    return v;
  }
  std::array<GridField, 3> u_dot() const {
    std::array<GridField, 3> v;
    GridField m43 = mul(conj(phi4), phi3);
    GridField m34 = mul(conj(phi3), phi4);
    GridField m43d = mul(conj(phi4_dot), phi3) + mul(conj(phi4), phi3_dot);
    GridField m34d = mul(conj(phi3_dot), phi4) + mul(conj(phi3), phi4_dot);
    v[0] = conj(phi2_dot) + phi2_dot - m43d - m34d;
    v[1] = (conj(phi2_dot) - phi2_dot - m43d + m34d) * 1.0i;
    v[2] = (mul(conj(phi2), phi2_dot).real_part() * (-2.0)) +
           (mul(conj(phi3), phi3_dot).real_part() * (-2.0)) +
           (mul(conj(phi4), phi4_dot).real_part() * 2.0);
    return v;
  }
};

// K = -lap B^0 - d_i Bd^i (the constraint-type Maxwell component)
GridField k_of(const std::array<GridField, 4>& B,
               const std::array<GridField, 4>& Bd) {
  return laplacian(B[0]) * (-1.0) - div_spatial(Bd);
}

}  // namespace

ComplexPotential ComplexPotential::operator+(const ComplexPotential& o) const {
  ComplexPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.B[mu] += o.B[mu];
  return r;
}
ComplexPotential ComplexPotential::operator-(const ComplexPotential& o) const {
  ComplexPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.B[mu] -= o.B[mu];
  return r;
}
ComplexPotential ComplexPotential::operator*(double s) const {
  ComplexPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.B[mu] *= s;
  return r;
}
bool ComplexPotential::is_finite() const {
  for (int mu = 0; mu < 4; ++mu)
    if (!B[mu].is_finite()) return false;
  return true;
}

DMState DMState::operator+(const DMState& o) const {
  DMState r = *this;
  r.psi = r.psi + o.psi;
  r.A = r.A + o.A;
  r.A_dot = r.A_dot + o.A_dot;
  r.time += o.time;
  return r;
}
DMState DMState::operator*(double s) const {
  DMState r = *this;
  r.psi = r.psi * s;
  r.A = r.A * s;
  r.A_dot = r.A_dot * s;
  r.time *= s;
  return r;
}
bool DMState::is_finite() const {
  return psi.is_finite() && A.is_finite() && A_dot.is_finite();
}

DMState dm_coupled_step(const DMState& s, double dt, const DMParams& p) {
  auto rhs = [&p](const DMState& y) {
    DMState d;
    d.psi = dirac_rhs(y.psi, y.A);
    d.A = y.A_dot;
    auto j = current(y.psi);
    d.A_dot = RealPotential(y.A.spec());
    d.A_dot.A[0] =
        laplacian(y.A.A[0]) +
        (j[0] - GridField::constant(j[0].spec(), p.qbar)) * p.e2;
    for (int k = 0; k < 3; ++k)
      d.A_dot.A[k + 1] = laplacian(y.A.A[k + 1]) + j[k + 1] * p.e2;
    d.time = 1.0;
    return d;
  };
  DMState k1 = rhs(s);
  DMState k2 = rhs(s + k1 * (dt / 2.0));
  DMState k3 = rhs(s + k2 * (dt / 2.0));
  DMState k4 = rhs(s + k3 * dt);
  DMState out = s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
  if (!out.is_finite()) throw NonFiniteValue("dm_coupled_step: non-finite");
  return out;
}

double lorenz_residual(const DMState& s) {
  GridField r = s.A_dot.A[0];
  for (int k = 0; k < 3; ++k) r += deriv(s.A.A[k + 1], k);
  return sup_norm(r);
}

DMState make_dm_initial_data(const SpinorField& psi,
                             const std::array<GridField, 3>& A_spatial,
                             const std::array<GridField, 3>& A_dot_spatial,
                             DMParams& p) {
  const GridSpec& g = psi.spec();
  DMState s;
  s.psi = psi;
  s.A = RealPotential(g);
  s.A_dot = RealPotential(g);
  for (int k = 0; k < 3; ++k) {
    if (A_spatial[k].size()) s.A.A[k + 1] = A_spatial[k];
    if (A_dot_spatial[k].size()) s.A_dot.A[k + 1] = A_dot_spatial[k];
  }
  auto j = current(psi);
  p.qbar = mean(j[0]).real();

  // A^0 = 0; A^0_dot from the Lorenz condition (spectral derivatives keep
  // band-limited data exactly consistent in the continuum sense)
  GridField divA(g, FieldKind::Real);
  for (int k = 0; k < 3; ++k) divA += spectral_deriv(s.A.A[k + 1], k);
  s.A_dot.A[0] = divA * (-1.0);

  // propagate the gauge condition: div A_dot must equal -e^2 (j0 - qbar)
  GridField divAd(g, FieldKind::Real);
  for (int k = 0; k < 3; ++k) divAd += spectral_deriv(s.A_dot.A[k + 1], k);
  GridField target =
      (j[0] - GridField::constant(g, p.qbar)) * (-p.e2) - divAd;
  GridField chi = poisson_solve(target);
  for (int k = 0; k < 3; ++k) s.A_dot.A[k + 1] += spectral_deriv(chi, k);
  s.time = 0.0;
  return s;
}

GaugeResult generalized_gauge(const SpinorField& psi, const RealPotential& A,
                              const DiracThresholds& th) {
  const GridField& psi1 = psi.c[0];
  check_floor(psi1, th.eps_psi_rel, "psi1");
  const GridSpec& g = psi.spec();

  GaugeResult out;
  out.gauge.beta = unwrap_phase(psi1);
  GridField delta(g, FieldKind::Real);
  for (std::size_t i = 0; i < psi1.size(); ++i)
    delta[i] = -std::log(std::abs(psi1[i]));
  out.gauge.delta = delta;

  out.phi = SpinorField(g);
  out.phi.c[0] = GridField::constant(g, 1.0);
  for (int k = 1; k < 4; ++k) out.phi.c[k] = div_pw(psi.c[k], psi1);

  // B^0 = A^0 - i psi1_t / psi1 with psi1_t from the Dirac right-hand side;
  // B^k = A^k + i d_k psi1 / psi1
  GridField psi1_t = dirac_rhs(psi, A).c[0];
  out.B = ComplexPotential(g);
  out.B.B[0] = A.A[0] - div_pw(psi1_t, psi1) * 1.0i;
  for (int k = 0; k < 3; ++k)
    out.B.B[k + 1] = A.A[k + 1] + div_pw(deriv(psi1, k), psi1) * 1.0i;
  return out;
}

ChiralTriple chiral_f_B(const BStack& Bs, std::size_t center) {
  auto F = chiral_from(Bs.at(center).B, d1(Bs, center).B);
  return ChiralTriple{std::move(F[0]), std::move(F[1]), std::move(F[2])};
}

GridField phi2_from_B(const BStack& Bs, std::size_t center,
                      const DiracThresholds& th) {
  return BLocal(Bs, center, th).phi2;
}

GridField phi2_dot_from_B(const BStack& Bs, std::size_t center,
                          const DiracThresholds& th) {
  return BLocal(Bs, center, th).phi2_dot;
}

GridField phi2_ddot_from_B(const BStack& Bs, std::size_t center,
                           const DiracThresholds& th) {
  return BLocal(Bs, center, th).phi2_ddot_dyn();
}

std::pair<GridField, GridField> phi34_from_B(const BStack& Bs,
                                             const GridField& phi2,
                                             const GridField& phi2_dot,
                                             std::size_t center) {
  const auto& B = Bs.at(center).B;
  GridField phi3 = B[0] - B[3] - mul(B[1] - B[2] * 1.0i, phi2) -
                   deriv(phi2, 1) - deriv(phi2, 0) * 1.0i;
  GridField phi4 = (B[1] + B[2] * 1.0i) * (-1.0) +
                   mul(B[0] + B[3], phi2) + deriv(phi2, 2) * 1.0i -
                   phi2_dot * 1.0i;
  return {std::move(phi3), std::move(phi4)};
}

GridField exp_neg2delta(const BStack& Bs, const GridField& phi2,
                        const GridField& phi3, const GridField& phi4,
                        std::size_t center, double background) {
  const auto& B = Bs.at(center).B;
  auto Bd = d1(Bs, center).B;
  GridField K = k_of(B, Bd);
  GridField denom = GridField::constant(K.spec(), 1.0) +
                    (mul(conj(phi2), phi2) + mul(conj(phi3), phi3) +
                     mul(conj(phi4), phi4))
                        .real_part();
  return div_pw(K + GridField::constant(K.spec(), background), denom);
}

std::array<GridField, 3> b_ddot_from_constraint(const BStack& Bs,
                                                std::size_t center,
                                                double background,
                                                const DiracThresholds& th) {
  BLocal L(Bs, center, th);
  PhiSet phis(L);
  GridField K = k_of(L.B, L.Bd);
  GridField rho = div_pw(K + GridField::constant(K.spec(), background),
                         GridField::constant(K.spec(), 1.0) + phis.D());
  auto u = phis.u();
  GridField gsrc = L.Bd[0] + div_spatial(L.B);
  std::array<GridField, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = laplacian(L.B[i + 1]) - deriv(gsrc, i) - mul(rho, u[i]);
  return out;
}

std::array<GridField, 4> b_dddot(const BStack& Bs, std::size_t center,
                                 double background,
                                 const DiracThresholds& th) {
  BLocal L(Bs, center, th);
  PhiSet phis(L);
  const GridSpec& g = L.B[0].spec();
  GridField one = GridField::constant(g, 1.0);

  // spatial components: differentiate the Maxwell equations in time
  GridField K = k_of(L.B, L.Bd);
  GridField Kd = k_of(L.Bd, L.Bdd);
  GridField D = phis.D();
  GridField Dd = phis.D_dot();
  GridField Kb = K + GridField::constant(g, background);
  GridField denom = one + D;
  GridField rho = div_pw(Kb, denom);
  GridField rho_dot =
      div_pw(mul(Kd, denom) - mul(Kb, Dd), mul(denom, denom));
  auto u = phis.u();
  auto ud = phis.u_dot();
  GridField gsrc_d = L.Bdd[0] + div_spatial(L.Bd);

  std::array<GridField, 4> out;
  for (int i = 0; i < 3; ++i)
    out[i + 1] = laplacian(L.Bd[i + 1]) - deriv(gsrc_d, i) -
                 mul(rho_dot, u[i]) - mul(rho, ud[i]);

  // temporal component from the fourth-order identity: the kinematic
  // expansion of phi2_ddot carries i Bddd^0 / P; everything else is known.
  // Fdd^i need Bddd^{1..3}, just computed.
  GridField F1dd = deriv(L.Bdd[0], 0) * (-1.0) - out[1] +
                   (deriv(L.Bdd[3], 1) - deriv(L.Bdd[2], 2)) * 1.0i;
  GridField F2dd = deriv(L.Bdd[0], 1) * (-1.0) - out[2] +
                   (deriv(L.Bdd[1], 2) - deriv(L.Bdd[3], 0)) * 1.0i;
  GridField F3dd = deriv(L.Bdd[0], 2) * (-1.0) - out[3] +
                   (deriv(L.Bdd[2], 0) - deriv(L.Bdd[1], 1)) * 1.0i;
  GridField Pdd = F1dd * 1.0i + F2dd;
  // Gdd without the i Bddd^0 term
  GridField Gdd_rest = div_spatial(L.Bdd) * 1.0i;
  GridField bb2 = mul(L.Bd[0], L.Bd[0]) + mul(L.B[0], L.Bdd[0]);
  for (int k = 1; k <= 3; ++k)
    bb2 -= mul(L.Bd[k], L.Bd[k]) + mul(L.B[k], L.Bdd[k]);
  Gdd_rest -= bb2 * 2.0;
  GridField Sdd_rest = Gdd_rest + F3dd * 1.0i;

  // k_known = phi2_ddot(kinematic) with the i Bddd^0 / P term removed:
  //   -Sdd/P + 2 Sd Pd / P^2 + S Pdd / P^2 - 2 S Pd^2 / P^3
  GridField P2 = mul(L.P, L.P);
  GridField P3 = mul(P2, L.P);
  GridField k_known = div_pw(Sdd_rest, L.P) * (-1.0);
  k_known += div_pw(mul(L.Sd, L.Pd), P2) * 2.0;
  k_known += div_pw(mul(L.S, Pdd), P2);
  k_known -= div_pw(mul(L.S, mul(L.Pd, L.Pd)), P3) * 2.0;

  GridField phi2dd_dyn = L.phi2_ddot_dyn();
  out[0] = mul(L.P, phi2dd_dyn - k_known) * 1.0i;
  return out;
}

}  // namespace edlab
