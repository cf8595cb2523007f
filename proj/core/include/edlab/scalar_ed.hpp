#pragma once

#include <array>

#include "edlab/grid.hpp"

namespace edlab {

// Klein-Gordon-Maxwell in unitary gauge (real scalar phi). Four-potential is
// stored with LOWER indices: B[0] = B_0, B[i] = B_i, so the raised components
// are B^0 = B[0], B^i = -B[i] under the (+,-,-,-) signature.
struct Couplings {
  double e = 1.0;  // electric charge; matter elimination divides by e^2
  double m = 1.0;  // mass

  void validate() const {
    if (e == 0.0) throw Error("Couplings: e must be nonzero");
    if (m < 0.0) throw Error("Couplings: m must be nonnegative");
  }
};

using FourField = std::array<GridField, 4>;

// Coupled system state: dynamical scalar plus potential.
struct ScalarState {
  GridField phi, phi_dot;
  FourField B, B_dot;
  double time = 0.0;

  ScalarState operator+(const ScalarState& o) const;
  ScalarState operator*(double s) const;
  bool is_finite() const;
};

// Matter eliminated: only the potential evolves.
struct EliminatedState {
  FourField B, B_dot;
  double time = 0.0;

  EliminatedState operator+(const EliminatedState& o) const;
  EliminatedState operator*(double s) const;
  bool is_finite() const;
};

struct ScalarThresholds {
  double eps_B0_rel = 1e-6;  // |B0| >= eps_B0_rel * max|B0|
  double eps_Phi = 1e-10;    // density floor where equations divide by Phi
};

// Phi = (lap B0 - div B_dot) / (2 e^2 B0), the Gauss constraint read as a
// definition of the matter density.
GridField reconstruct_density(const EliminatedState& s, const Couplings& c,
                              const ScalarThresholds& th = {});

// Phi_dot from current conservation d_mu(B^mu Phi) = 0.
GridField density_dot(const EliminatedState& s, const GridField& Phi,
                      const Couplings& c, const ScalarThresholds& th = {});

// Phi_ddot from the second-order density equation (divides by Phi).
GridField density_ddot(const EliminatedState& s, const GridField& Phi,
                       const GridField& Phi_dot, const Couplings& c,
                       const ScalarThresholds& th = {});

// B_i acceleration. Two algebraically identical code paths:
// via_density substitutes the reconstructed Phi into the Maxwell source;
// otherwise the source is written directly in terms of B0 derivatives.
std::array<GridField, 3> accel_spatial(const EliminatedState& s,
                                       const Couplings& c,
                                       const ScalarThresholds& th = {},
                                       bool via_density = true);

GridField accel_temporal(const EliminatedState& s, const Couplings& c,
                         const ScalarThresholds& th = {});

EliminatedState eliminated_step(const EliminatedState& s, double dt,
                                const Couplings& c,
                                const ScalarThresholds& th = {});

ScalarState coupled_step(const ScalarState& s, double dt, const Couplings& c);

// Free data (phi, phi_dot, B_i, B_dot_i); the Gauss constraint and current
// conservation fix (B0, B0_dot).
ScalarState make_initial_data(const GridField& phi, const GridField& phi_dot,
                              const std::array<GridField, 3>& B_spatial,
                              const std::array<GridField, 3>& B_dot_spatial,
                              const Couplings& c);

// sup-norm of the Gauss constraint with Phi = phi^2
double gauss_residual(const ScalarState& s, const Couplings& c);
// same residual with Phi reconstructed from the potential (0 by construction)
double gauss_residual(const EliminatedState& s, const Couplings& c,
                      const ScalarThresholds& th = {});

EliminatedState eliminate(const ScalarState& s);

}  // namespace edlab
