#include "edlab/spinor.hpp"

#include "edlab/rk4.hpp"
#include "edlab/stencil.hpp"

namespace edlab {

SpinorField SpinorField::operator+(const SpinorField& o) const {
  SpinorField r = *this;
  for (int k = 0; k < 4; ++k) r.c[k] += o.c[k];
  return r;
}

SpinorField SpinorField::operator-(const SpinorField& o) const {
  SpinorField r = *this;
  for (int k = 0; k < 4; ++k) r.c[k] -= o.c[k];
  return r;
}

SpinorField SpinorField::operator*(double s) const {
  SpinorField r = *this;
  for (int k = 0; k < 4; ++k) r.c[k] *= s;
  return r;
}

SpinorField SpinorField::operator*(cd s) const {
  SpinorField r = *this;
  for (int k = 0; k < 4; ++k) r.c[k] *= s;
  return r;
}

bool SpinorField::is_finite() const {
  for (int k = 0; k < 4; ++k)
    if (!c[k].is_finite()) return false;
  return true;
}

RealPotential RealPotential::operator+(const RealPotential& o) const {
  RealPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.A[mu] += o.A[mu];
  return r;
}

RealPotential RealPotential::operator-(const RealPotential& o) const {
  RealPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.A[mu] -= o.A[mu];
  return r;
}

RealPotential RealPotential::operator*(double s) const {
  RealPotential r = *this;
  for (int mu = 0; mu < 4; ++mu) r.A[mu] *= s;
  return r;
}

bool RealPotential::is_finite() const {
  for (int mu = 0; mu < 4; ++mu)
    if (!A[mu].is_finite()) return false;
  return true;
}

SpinorField apply_matrix(const Mat4& m, const SpinorField& psi) {
  SpinorField out(psi.spec());
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) {
      const cd mij = m(r, col);
      if (mij == cd(0.0, 0.0)) continue;
      for (std::size_t i = 0; i < psi.c[col].size(); ++i)
        out.c[r][i] += mij * psi.c[col][i];
    }
  return out;
}

SpinorField dirac_rhs(const SpinorField& psi, const RealPotential& A) {
  static const GammaSet G = gammas();
  const GridSpec& spec = psi.spec();

  // mass + potential term: -i gamma^0 (1 + Aslash) psi, assembled pointwise
  // because Aslash varies over the lattice
  SpinorField out(spec);
  // precompute products gamma^0 and gamma^0 gamma^mu
  static const Mat4 g0 = G[0];
  static const std::array<Mat4, 4> g0g = {G[0] * G[0], G[0] * G[1],
                                          G[0] * G[2], G[0] * G[3]};
  const cd mi(0.0, -1.0);
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) {
      const cd m_mass = mi * g0(r, col);
      const cd m_a0 = mi * g0g[0](r, col);
      const cd m_ak[3] = {mi * g0g[1](r, col), mi * g0g[2](r, col),
                          mi * g0g[3](r, col)};
      const bool any = m_mass != cd(0) || m_a0 != cd(0) ||
                       m_ak[0] != cd(0) || m_ak[1] != cd(0) ||
                       m_ak[2] != cd(0);
      if (!any) continue;
      for (std::size_t i = 0; i < out.c[r].size(); ++i) {
        cd acc = m_mass * psi.c[col][i];
        acc += m_a0 * A.A[0][i].real() * psi.c[col][i];
        // Aslash = A^0 gamma^0 - sum_k A^k gamma^k
        for (int k = 0; k < 3; ++k)
          acc -= m_ak[k] * A.A[k + 1][i].real() * psi.c[col][i];
        out.c[r][i] += acc;
      }
    }
  }
  // transport term: - gamma^0 gamma^k dk psi
  for (int k = 0; k < 3; ++k) {
    SpinorField dpsi(spec);
    for (int comp = 0; comp < 4; ++comp)
      dpsi.c[comp] = deriv(psi.c[comp], k);
    SpinorField term = apply_matrix(g0g[k + 1], dpsi);
    for (int comp = 0; comp < 4; ++comp) out.c[comp] -= term.c[comp];
  }
  return out;
}

SpinorField dirac_step(const SpinorField& psi,
                       const std::function<RealPotential(double)>& A_of_t,
                       double t, double dt) {
  // RK4 with the time-dependent potential evaluated at substep times
  SpinorField k1 = dirac_rhs(psi, A_of_t(t));
  RealPotential Amid = A_of_t(t + dt / 2.0);
  SpinorField k2 = dirac_rhs(psi + k1 * (dt / 2.0), Amid);
  SpinorField k3 = dirac_rhs(psi + k2 * (dt / 2.0), Amid);
  SpinorField k4 = dirac_rhs(psi + k3 * dt, A_of_t(t + dt));
  SpinorField out = psi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
  if (!out.is_finite()) throw NonFiniteValue("dirac_step: non-finite spinor");
  return out;
}

GridField bilinear(const SpinorField& psi, const Mat4& m,
                   const SpinorField& chi) {
  static const GammaSet G = gammas();
  const Mat4 s = G[0] * m;  // psibar m chi = psi^dagger (gamma^0 m) chi
  GridField out(psi.spec(), FieldKind::Complex);
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) {
      const cd sij = s(r, col);
      if (sij == cd(0.0, 0.0)) continue;
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += std::conj(psi.c[r][i]) * sij * chi.c[col][i];
    }
  return out;
}

std::array<GridField, 4> current(const SpinorField& psi) {
  static const GammaSet G = gammas();
  std::array<GridField, 4> j;
  for (int mu = 0; mu < 4; ++mu) {
    GridField v = bilinear(psi, G[mu], psi);
    // gamma^0 gamma^mu is Hermitian, so the form is real
    j[mu] = v.real_part();
  }
  return j;
}

}  // namespace edlab
