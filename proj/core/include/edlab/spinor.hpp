#pragma once

#include <array>
#include <functional>

#include "edlab/gamma.hpp"
#include "edlab/grid.hpp"

namespace edlab {

// Four-component spinor sampled on the lattice.
struct SpinorField {
  std::array<GridField, 4> c;

  SpinorField() = default;
  explicit SpinorField(const GridSpec& spec) {
    for (auto& f : c) f = GridField(spec, FieldKind::Complex);
  }

  const GridSpec& spec() const { return c[0].spec(); }

  SpinorField operator+(const SpinorField& o) const;
  SpinorField operator-(const SpinorField& o) const;
  SpinorField operator*(double s) const;
  SpinorField operator*(cd s) const;
  bool is_finite() const;
};

// Real four-potential with RAISED indices: A[0] = A^0, A[i] = A^i.
// The charge e is absorbed into A.
struct RealPotential {
  std::array<GridField, 4> A;

  RealPotential() = default;
  explicit RealPotential(const GridSpec& spec) {
    for (auto& f : A) f = GridField(spec, FieldKind::Real);
  }

  const GridSpec& spec() const { return A[0].spec(); }

  RealPotential operator+(const RealPotential& o) const;
  RealPotential operator-(const RealPotential& o) const;
  RealPotential operator*(double s) const;
  bool is_finite() const;
};

// Pointwise 4x4 matrix action on a spinor field.
SpinorField apply_matrix(const Mat4& m, const SpinorField& psi);

// d(psi)/dt from the Dirac equation (i dslash - Aslash) psi = psi,
// rearranged with (gamma^0)^{-1} = gamma^0:
//   d0 psi = -i gamma^0 (1 + Aslash) psi - gamma^0 gamma^k dk psi
// (the Aslash contribution uses Aslash = A^0 gamma^0 - sum_k A^k gamma^k).
SpinorField dirac_rhs(const SpinorField& psi, const RealPotential& A);

// RK4 step; A supplied at substep times.
SpinorField dirac_step(const SpinorField& psi,
                       const std::function<RealPotential(double)>& A_of_t,
                       double t, double dt);

// j^mu = psibar gamma^mu psi (real-kind for any psi).
std::array<GridField, 4> current(const SpinorField& psi);

// psibar chi = psi^dagger gamma^0 chi contracted with a matrix sandwich:
// returns psi^dagger gamma^0 m chi pointwise.
GridField bilinear(const SpinorField& psi, const Mat4& m,
                   const SpinorField& chi);

}  // namespace edlab
