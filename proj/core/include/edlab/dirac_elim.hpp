#pragma once

#include "edlab/spinor.hpp"
#include "edlab/time_stack.hpp"

namespace edlab {

using ScalarStack = TimeStack<GridField>;
using SpinorStack = TimeStack<SpinorField>;
using PotStack = TimeStack<RealPotential>;

// F^i = E^i + i H^i with E^i = -d_i A^0 - dt A^i and H = curl A.
struct ChiralTriple {
  GridField F1, F2, F3;
};

struct DiracThresholds {
  double eps_F_rel = 1e-8;    // |iF1+F2| >= eps_F_rel * max|iF1+F2|
  double eps_psi_rel = 1e-8;  // |psi1| (or |psi4|) floor, relative to max
};

ChiralTriple chiral_f(const PotStack& A, std::size_t center);

// Modified d'Alembertian applied to a stack of scalar slices at `center`:
// box' f = f_tt - lap f + 2i (A^0 f_t + A^k d_k f)
//          + i (A^0_t + d_k A^k) f - (A^0 A^0 - A^k A^k) f + f
GridField boxprime(const ScalarStack& f, const PotStack& A,
                   std::size_t center);

// Componentwise residual of the Dirac equation (LHS minus RHS of the four
// component equations).
SpinorField dirac_residual(const SpinorStack& psi, const PotStack& A,
                           std::size_t center);

// psi3, psi4 expressed via psi1, psi2 and the potential.
std::pair<GridField, GridField> lower_components(const ScalarStack& psi1,
                                                 const ScalarStack& psi2,
                                                 const PotStack& A,
                                                 std::size_t center);

// psi2 = -(iF1+F2)^{-1} (box' + iF3) psi1.
GridField psi2_from_psi1(const ScalarStack& psi1, const PotStack& A,
                         std::size_t center,
                         const DiracThresholds& th = {});

// ((box' - iF3)(iF1+F2)^{-1}(box' + iF3) - iF1 + F2) psi1, the middle inverse
// applied as pointwise division between the two operator applications.
// Needs psi1 slices center-3..center+3.
GridField fourth_order_residual(const ScalarStack& psi1, const PotStack& A,
                                std::size_t center,
                                const DiracThresholds& th = {});

// d_mu j^mu by stencils (time derivative of j^0 across neighbor slices).
GridField current_divergence(const SpinorStack& psi, std::size_t center);

// d_mu j^mu - 2 Im(psibar (i dslash - Aslash - 1) psi); an identity for
// arbitrary smooth psi, vanishing at stencil order under refinement.
GridField conservation_identity_gap(const SpinorStack& psi, const PotStack& A,
                                    std::size_t center);

struct SplitCheck {
  GridField im_gap;     // 2 Im(-psi4* delta) - d_mu j^mu
  GridField re_gap;     // 2 Re(psi4* delta)
  GridField mask;       // 1 where |psi4| above threshold, 0 where excluded
  double coverage;      // fraction of unmasked sites
};

// Builds psi2, psi3, psi4 from psi1 slices, evaluates delta (the eliminated
// second-component equation) and the split form of current conservation.
SplitCheck conservation_split_check(const ScalarStack& psi1, const PotStack& A,
                                    std::size_t center,
                                    const DiracThresholds& th = {});

struct RealGauge {
  SpinorField psi;
  RealPotential A;
  GridField alpha;  // real gauge function, psi' = e^{i alpha} psi
};

// Gauge transform making psi1 real and nonnegative. alpha = -arg(psi1) with
// spatial phase unwrapping; A'^0 = A^0 - alpha_t, A'^k = A^k + d_k alpha.
RealGauge make_real_gauge(const SpinorStack& psi, const PotStack& A,
                          std::size_t center,
                          const DiracThresholds& th = {});

// Continuous branch of arg(f) on the periodic lattice; throws
// WindingObstruction when the phase winds around an axis.
GridField unwrap_phase(const GridField& f);

}  // namespace edlab
