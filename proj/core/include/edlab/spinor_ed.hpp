#pragma once

#include "edlab/dirac_elim.hpp"
#include "edlab/spinor.hpp"
#include "edlab/time_stack.hpp"

namespace edlab {

// Complex four-potential after the generalized gauge transform, RAISED
// storage: B[0] = B^0, B[i] = B^i. The imaginary part is a gradient of one
// scalar (-delta), so it cancels in the field strengths.
struct ComplexPotential {
  std::array<GridField, 4> B;

  ComplexPotential() = default;
  explicit ComplexPotential(const GridSpec& spec) {
    for (auto& f : B) f = GridField(spec, FieldKind::Complex);
  }
  const GridSpec& spec() const { return B[0].spec(); }

  ComplexPotential operator+(const ComplexPotential& o) const;
  ComplexPotential operator-(const ComplexPotential& o) const;
  ComplexPotential operator*(double s) const;
  bool is_finite() const;
};

struct GaugeData {
  GridField beta;   // Re(alpha)
  GridField delta;  // Im(alpha) = -log|psi1|
};

using BStack = TimeStack<ComplexPotential>;

// Coupled Dirac-Maxwell state in Lorenz gauge. The periodic box cannot carry
// net charge, so the Maxwell source for mu = 0 is j^0 minus the uniform
// background charge `qbar` (= spatial mean of j^0, conserved along the flow).
struct DMState {
  SpinorField psi;
  RealPotential A, A_dot;
  double time = 0.0;

  DMState operator+(const DMState& o) const;
  DMState operator*(double s) const;
  bool is_finite() const;
};

struct DMParams {
  double e2 = 0.1;    // e^2 (charge absorbed into A in the Dirac sector)
  double qbar = 0.0;  // background charge density, set by make_dm_initial_data
};

DMState dm_coupled_step(const DMState& s, double dt, const DMParams& p);

// Lorenz-gauge residual sup-norm: |dt A^0 + div A^i|.
double lorenz_residual(const DMState& s);

// Completes free data (psi, A^i, A^i_dot waves) into a Lorenz-consistent
// state: A^0 = 0, A^0_dot = -div A, and A^i_dot is corrected by a gradient so
// that the gauge condition propagates. Sets p.qbar = <j^0>.
DMState make_dm_initial_data(const SpinorField& psi,
                             const std::array<GridField, 3>& A_spatial,
                             const std::array<GridField, 3>& A_dot_spatial,
                             DMParams& p);

struct GaugeResult {
  SpinorField phi;     // phi1 = 1 exactly
  ComplexPotential B;  // B_mu = A_mu + alpha_{,mu} (raised storage)
  GaugeData gauge;
};

// alpha = -i log(psi1): beta = arg(psi1) unwrapped, delta = -log|psi1|.
// alpha_t is taken from the Dirac evolution right-hand side, so psi must be
// a solution snapshot with its potential.
GaugeResult generalized_gauge(const SpinorField& psi, const RealPotential& A,
                              const DiracThresholds& th = {});

// Chiral F^i built from the complex potential (Eqs. of the B sector).
ChiralTriple chiral_f_B(const BStack& B, std::size_t center);

// phi2 = -(iF1+F2)^{-1}(i B^mu_{,mu} - B^mu B_mu + 1 + iF3).
GridField phi2_from_B(const BStack& B, std::size_t center,
                      const DiracThresholds& th = {});
// Exact time derivative of the phi2 formula (chain rule, needs B_ddot).
GridField phi2_dot_from_B(const BStack& B, std::size_t center,
                          const DiracThresholds& th = {});
// phi2_ddot from the dynamical identity (second-component equation), which
// needs only (B, B_dot, B_ddot) and spatial derivatives.
GridField phi2_ddot_from_B(const BStack& B, std::size_t center,
                           const DiracThresholds& th = {});

std::pair<GridField, GridField> phi34_from_B(const BStack& B,
                                             const GridField& phi2,
                                             const GridField& phi2_dot,
                                             std::size_t center);

// e^2 exp(-2 delta) = (K + e^2 qbar) / (1 + |phi2|^2 + |phi3|^2 + |phi4|^2),
// K = -lap B^0 - d_i B^i_dot. `background` is e^2 qbar.
GridField exp_neg2delta(const BStack& B, const GridField& phi2,
                        const GridField& phi3, const GridField& phi4,
                        std::size_t center, double background = 0.0);

// Third time derivatives of B^mu from (B, B_dot, B_ddot) and spatial
// derivatives only: spatial components from the differentiated Maxwell
// equations, the temporal component extracted from the fourth-order identity.
std::array<GridField, 4> b_dddot(const BStack& B, std::size_t center,
                                 double background = 0.0,
                                 const DiracThresholds& th = {});

// Consistency form of the spatial Maxwell equations in the B sector:
// B^i_ddot = lap B^i - d_i(B^0_dot + div B) - rho u_i, used both inside
// b_dddot (differentiated) and as a standalone check.
std::array<GridField, 3> b_ddot_from_constraint(const BStack& B,
                                                std::size_t center,
                                                double background = 0.0,
                                                const DiracThresholds& th = {});

}  // namespace edlab
