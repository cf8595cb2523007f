#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "edlab/errors.hpp"

namespace edlab {

namespace fock {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Truncated bosonic Fock space over k modes with a TOTAL occupation cutoff:
// basis states are tuples (n_1..n_k) with sum n_i <= N_max,
// dimension C(N_max + k, k).
class FockBasis {
 public:
  FockBasis(int modes, int n_max);

  int modes() const { return k_; }
  int n_max() const { return nmax_; }
  int dim() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& tuple(int idx) const { return tuples_[idx]; }
  // -1 when the tuple falls outside the truncation
  int index(const std::vector<int>& tuple) const;

 private:
  int k_, nmax_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, int> index_;
};

struct LadderOps {
  std::vector<Mat> a;        // annihilation, one per mode
  std::vector<Mat> a_dag;    // creation, truncated at the cutoff shell
};

LadderOps ladder_ops(const FockBasis& basis);

// Polynomial vector field F: C^k -> C^k, F_i = sum of monomials
// coef * prod_j xi_j^{p_j}.
struct Monomial {
  cd coef;
  std::vector<int> powers;  // size k
};

struct PolyVectorField {
  int k = 1;
  int max_degree = 3;
  std::vector<std::vector<Monomial>> F;  // F[i] = monomials of component i

  void validate() const;
  Vec eval(const Vec& xi) const;

  // xi' = -i omega xi per mode
  static PolyVectorField linear_rotor(int k, double omega);
  // xi' = -i xi - i lambda xi^2 (single mode)
  static PolyVectorField nonlinear_mode(double lambda);
  // xi' = -xi
  static PolyVectorField decay(int k);
  // three modes coupled by a discrete Laplacian plus a cubic on-site term:
  // xi_j' = -i xi_j - i kappa (xi_{j+1} - 2 xi_j + xi_{j-1}) - i lam xi_j^3
  static PolyVectorField coupled_chain(double kappa, double lam);
};

// exp(-|xi|^2/2) prod xi_i^{n_i}/sqrt(n_i!) over the truncated basis
Vec coherent(const Vec& xi, const FockBasis& basis, double amp_bound = 0.5);

// M = sum_i a_i^dagger F_i(a)
Mat hamiltonian(const PolyVectorField& F, const FockBasis& basis);

// RK4 integration of dv/dt = M v; returns the final vector
Vec fock_evolve(const Vec& v0, const Mat& M, double T, double dt);

struct CoherentParams {
  Vec xi;
  double norm_log = 0.0;  // (|xi(t)|^2 - |xi_0|^2) / 2
};

CoherentParams classical_evolve(const Vec& xi0, const PolyVectorField& F,
                                double T, double dt, double amp_bound = 0.5);

// || v - e^{norm_log} coherent(xi) ||_2
double embedding_gap(const Vec& v, const CoherentParams& cp,
                     const FockBasis& basis, double amp_bound = 0.5);

struct SuperpositionPoint {
  double scale;
  double deviation;
};

// Deviation of the evolved embedding of a*xi + b*eta from the same-coefficient
// combination of separately evolved embeddings (vacuum-referenced), for each
// amplitude scale s.
std::vector<SuperpositionPoint> weak_superposition(
    cd a, cd b, const Vec& xi, const Vec& eta, const PolyVectorField& F,
    double T, double dt, const FockBasis& basis,
    const std::vector<double>& scales, double amp_bound = 0.5);

}  // namespace fock

}  // namespace edlab
