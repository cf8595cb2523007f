#include "edlab/dirac_elim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edlab/stencil.hpp"

namespace edlab {

namespace {

using namespace std::complex_literals;

// neighbor-slice central differences; the ops in this module only need
// depth-3 stacks so the stricter TimeStack::derivative_at contract is not
// imposed here
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

GridField re(const GridField& f) { return f.real_part(); }

// pointwise multiply by a (real) potential component
GridField pm(const GridField& a, const GridField& b) {
  return pointwise_mul(a, b);
}

void check_floor(const GridField& f, double eps_rel, const char* what) {
  // the max(.., tiny) keeps identically-zero fields degenerate too
  const double floor = eps_rel * std::max(sup_norm(f), 1e-100);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) < floor)
      throw DegenerateField(std::string(what) + " degenerate at site " +
                            std::to_string(i));
}

SpinorField slash_apply(const RealPotential& A, const SpinorField& psi) {
  static const GammaSet G = gammas();
  // Aslash = A^0 gamma^0 - sum_k A^k gamma^k
  SpinorField g0psi = apply_matrix(G[0], psi);
  SpinorField out(psi.spec());
  for (int comp = 0; comp < 4; ++comp)
    out.c[comp] = pointwise_mul(A.A[0], g0psi.c[comp]);
  for (int k = 0; k < 3; ++k) {
    SpinorField gk = apply_matrix(G[k + 1], psi);
    for (int comp = 0; comp < 4; ++comp)
      out.c[comp] -= pointwise_mul(A.A[k + 1], gk.c[comp]);
  }
  return out;
}

}  // namespace

ChiralTriple chiral_f(const PotStack& As, std::size_t center) {
  const RealPotential& A = As.at(center);
  RealPotential Ad = d1(As, center);
  GridField E[3], H[3];
  for (int i = 0; i < 3; ++i)
    E[i] = re(deriv(A.A[0], i) * (-1.0) - Ad.A[i + 1]);
  H[0] = re(deriv(A.A[3], 1) - deriv(A.A[2], 2));
  H[1] = re(deriv(A.A[1], 2) - deriv(A.A[3], 0));
  H[2] = re(deriv(A.A[2], 0) - deriv(A.A[1], 1));
  ChiralTriple F;
  GridField* out[3] = {&F.F1, &F.F2, &F.F3};
  for (int i = 0; i < 3; ++i) {
    GridField f(E[i].spec(), FieldKind::Complex);
    for (std::size_t s = 0; s < f.size(); ++s)
      f[s] = cd(E[i][s].real(), H[i][s].real());
    *out[i] = std::move(f);
  }
  return F;
}

GridField boxprime(const ScalarStack& fs, const PotStack& As,
                   std::size_t center) {
  const GridField& f = fs.at(center);
  GridField fdd = d2(fs, center);
  GridField fd = d1(fs, center);
  const RealPotential& A = As.at(center);
  GridField A0d = d1(As, center).A[0];

  GridField out = fdd - laplacian(f);
  // 2i A^mu d_mu f = 2i (A^0 f_t + A^k d_k f)
  GridField adv = pm(A.A[0], fd);
  for (int k = 0; k < 3; ++k) adv += pm(A.A[k + 1], deriv(f, k));
  out += adv * cd(0.0, 2.0);
  // i A^mu_{,mu} f
  GridField divA = A0d;
  for (int k = 0; k < 3; ++k) divA += deriv(A.A[k + 1], k);
  out += pm(divA, f) * 1.0i;
  // - A^mu A_mu f = -((A^0)^2 - sum (A^k)^2) f
  GridField aa = pm(A.A[0], A.A[0]);
  for (int k = 0; k < 3; ++k) aa -= pm(A.A[k + 1], A.A[k + 1]);
  out -= pm(aa, f);
  out += f;
  return out;
}

SpinorField dirac_residual(const SpinorStack& psis, const PotStack& As,
                           std::size_t center) {
  const SpinorField& p = psis.at(center);
  SpinorField pd = d1(psis, center);
  const RealPotential& A = As.at(center);
  const GridField& A0 = A.A[0];
  const GridField& A1 = A.A[1];
  const GridField& A2 = A.A[2];
  const GridField& A3 = A.A[3];
  auto dx = [&](const GridField& f, int a) { return deriv(f, a); };
  const GridField &p1 = p.c[0], &p2 = p.c[1], &p3 = p.c[2], &p4 = p.c[3];

  SpinorField r(p.spec());
  // (A0+A3) p3 + (A1-iA2) p4 + i(p3,3 - i p4,2 + p4,1 - p3,0) - p1
  r.c[0] = pm(A0 + A3, p3) + pm(A1, p4) - pm(A2, p4) * 1.0i +
           (dx(p3, 2) - dx(p4, 1) * 1.0i + dx(p4, 0) - pd.c[2]) * 1.0i - p1;
  // (A1+iA2) p3 + (A0-A3) p4 - i(p4,3 - i p3,2 - p3,1 + p4,0) - p2
  r.c[1] = pm(A1, p3) + pm(A2, p3) * 1.0i + pm(A0 - A3, p4) -
           (dx(p4, 2) - dx(p3, 1) * 1.0i - dx(p3, 0) + pd.c[3]) * 1.0i - p2;
  // (A0-A3) p1 - (A1-iA2) p2 - i(p1,3 - i p2,2 + p2,1 + p1,0) - p3
  r.c[2] = pm(A0 - A3, p1) - pm(A1, p2) + pm(A2, p2) * 1.0i -
           (dx(p1, 2) - dx(p2, 1) * 1.0i + dx(p2, 0) + pd.c[0]) * 1.0i - p3;
  // -(A1+iA2) p1 + (A0+A3) p2 + i p2,3 + p1,2 - i(p1,1 + p2,0) - p4
  r.c[3] = pm(A1, p1) * (-1.0) - pm(A2, p1) * 1.0i + pm(A0 + A3, p2) +
           dx(p2, 2) * 1.0i + dx(p1, 1) -
           (dx(p1, 0) + pd.c[1]) * 1.0i - p4;
  return r;
}

std::pair<GridField, GridField> lower_components(const ScalarStack& psi1,
                                                 const ScalarStack& psi2,
                                                 const PotStack& As,
                                                 std::size_t center) {
  const GridField& p1 = psi1.at(center);
  const GridField& p2 = psi2.at(center);
  GridField p1d = d1(psi1, center);
  GridField p2d = d1(psi2, center);
  const RealPotential& A = As.at(center);
  const GridField& A0 = A.A[0];
  const GridField& A1 = A.A[1];
  const GridField& A2 = A.A[2];
  const GridField& A3 = A.A[3];
  GridField p3 = pm(A0 - A3, p1) - pm(A1, p2) + pm(A2, p2) * 1.0i -
                 (deriv(p1, 2) - deriv(p2, 1) * 1.0i + deriv(p2, 0) + p1d) *
                     1.0i;
  GridField p4 = pm(A1, p1) * (-1.0) - pm(A2, p1) * 1.0i + pm(A0 + A3, p2) +
                 deriv(p2, 2) * 1.0i + deriv(p1, 1) -
                 (deriv(p1, 0) + p2d) * 1.0i;
  return {std::move(p3), std::move(p4)};
}

GridField psi2_from_psi1(const ScalarStack& psi1, const PotStack& As,
                         std::size_t center, const DiracThresholds& th) {
  ChiralTriple F = chiral_f(As, center);
  GridField P = F.F1 * 1.0i + F.F2;
  check_floor(P, th.eps_F_rel, "iF1+F2");
  GridField w = boxprime(psi1, As, center) +
                pointwise_mul(F.F3, psi1.at(center)) * 1.0i;
  return pointwise_div(w, P) * (-1.0);
}

GridField fourth_order_residual(const ScalarStack& psi1, const PotStack& As,
                                std::size_t center,
                                const DiracThresholds& th) {
  if (center < 3 || center + 3 >= psi1.size())
    throw MissingSlices("fourth_order_residual: needs 3 slices each side");
  // inner field w = (iF1+F2)^{-1} (box' + iF3) psi1 on five aligned slices
  ScalarStack w(psi1.dt(), 5);
  PotStack Atrim(As.dt(), 5);
  for (std::size_t j = center - 2; j <= center + 2; ++j) {
    ChiralTriple F = chiral_f(As, j);
    GridField P = F.F1 * 1.0i + F.F2;
    check_floor(P, th.eps_F_rel, "iF1+F2");
    GridField num = boxprime(psi1, As, j) +
                    pointwise_mul(F.F3, psi1.at(j)) * 1.0i;
    w.push(pointwise_div(num, P));
    Atrim.push(As.at(j));
  }
  ChiralTriple Fc = chiral_f(As, center);
  GridField out = boxprime(w, Atrim, 2) -
                  pointwise_mul(Fc.F3, w.at(2)) * 1.0i;
  out += pointwise_mul(Fc.F2 - Fc.F1 * 1.0i, psi1.at(center));
  return out;
}

GridField current_divergence(const SpinorStack& psis, std::size_t center) {
  if (center < 1 || center + 1 >= psis.size())
    throw MissingSlices("current_divergence: needs neighbor slices");
  auto jp = current(psis.at(center + 1));
  auto jm = current(psis.at(center - 1));
  auto jc = current(psis.at(center));
  GridField out = (jp[0] - jm[0]) * (1.0 / (2.0 * psis.dt()));
  for (int k = 0; k < 3; ++k) out += deriv(jc[k + 1], k);
  return out;
}

GridField conservation_identity_gap(const SpinorStack& psis,
                                    const PotStack& As, std::size_t center) {
  static const GammaSet G = gammas();
  const SpinorField& psi = psis.at(center);
  SpinorField psid = d1(psis, center);
  const RealPotential& A = As.at(center);

  // (i dslash - Aslash - 1) psi
  SpinorField D = apply_matrix(G[0] * cd(0.0, 1.0), psid);
  for (int k = 0; k < 3; ++k) {
    SpinorField dpsi(psi.spec());
    for (int comp = 0; comp < 4; ++comp) dpsi.c[comp] = deriv(psi.c[comp], k);
    SpinorField t = apply_matrix(G[k + 1] * cd(0.0, 1.0), dpsi);
    for (int comp = 0; comp < 4; ++comp) D.c[comp] += t.c[comp];
  }
  SpinorField Apsi = slash_apply(A, psi);
  for (int comp = 0; comp < 4; ++comp)
    D.c[comp] -= Apsi.c[comp] + psi.c[comp];

  GridField form = bilinear(psi, Mat4::Identity(), D);
  return current_divergence(psis, center) - form.imag_part() * 2.0;
}

SplitCheck conservation_split_check(const ScalarStack& psi1,
                                    const PotStack& As, std::size_t center,
                                    const DiracThresholds& th) {
  if (center < 3 || center + 3 >= psi1.size())
    throw MissingSlices("conservation_split_check: needs 3 slices each side");
  // aligned 5-slice windows around center
  ScalarStack p1(psi1.dt(), 5), p2(psi1.dt(), 5);
  PotStack At(As.dt(), 5);
  for (std::size_t j = center - 2; j <= center + 2; ++j) {
    p1.push(psi1.at(j));
    p2.push(psi2_from_psi1(psi1, As, j, th));
    At.push(As.at(j));
  }
  // delta = -(box' - iF3) psi2 - (iF1 - F2) psi1 at the window center
  ChiralTriple F = chiral_f(At, 2);
  GridField delta = (boxprime(p2, At, 2) -
                     pointwise_mul(F.F3, p2.at(2)) * 1.0i) *
                    (-1.0);
  delta -= pointwise_mul(F.F1 * 1.0i - F.F2, p1.at(2));

  // full spinor on the three middle slices for the current divergence
  SpinorStack full(psi1.dt(), 3);
  GridField psi4_center;
  for (std::size_t j = 1; j <= 3; ++j) {
    auto [p3, p4] = lower_components(p1, p2, At, j);
    SpinorField s(p1.at(j).spec());
    s.c[0] = p1.at(j);
    s.c[1] = p2.at(j);
    s.c[2] = std::move(p3);
    if (j == 2) psi4_center = p4;
    s.c[3] = std::move(p4);
    full.push(std::move(s));
  }
  GridField divj = current_divergence(full, 1);

  const double floor = th.eps_psi_rel * sup_norm(psi4_center);
  SplitCheck out;
  const GridSpec& spec = divj.spec();
  out.im_gap = GridField(spec, FieldKind::Real);
  out.re_gap = GridField(spec, FieldKind::Real);
  out.mask = GridField(spec, FieldKind::Real);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (std::abs(psi4_center[i]) < floor) continue;
    const cd q = std::conj(psi4_center[i]) * delta[i];
    out.im_gap[i] = -2.0 * q.imag() - divj[i].real();
    out.re_gap[i] = 2.0 * q.real();
    out.mask[i] = 1.0;
    ++kept;
  }
  out.coverage = static_cast<double>(kept) / spec.size();
  return out;
}

GridField unwrap_phase(const GridField& f) {
  const GridSpec& s = f.spec();
  GridField theta(s, FieldKind::Real);
  auto principal = [&](std::size_t i) { return std::arg(f[i]); };
  auto wrap = [](double d) {
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
  };
  // anchor, then unwrap along z (x=y=0), y (x=0 planes), x (all lines)
  theta[s.flat(0, 0, 0)] = principal(s.flat(0, 0, 0));
  for (int z = 1; z < s.n[2]; ++z) {
    const std::size_t i = s.flat(0, 0, z), p = s.flat(0, 0, z - 1);
    theta[i] = theta[p].real() + wrap(principal(i) - principal(p));
  }
  for (int z = 0; z < s.n[2]; ++z)
    for (int y = 1; y < s.n[1]; ++y) {
      const std::size_t i = s.flat(0, y, z), p = s.flat(0, y - 1, z);
      theta[i] = theta[p].real() + wrap(principal(i) - principal(p));
    }
  for (int z = 0; z < s.n[2]; ++z)
    for (int y = 0; y < s.n[1]; ++y)
      for (int x = 1; x < s.n[0]; ++x) {
        const std::size_t i = s.flat(x, y, z), p = s.flat(x - 1, y, z);
        theta[i] = theta[p].real() + wrap(principal(i) - principal(p));
      }
  // winding check: wrapped increments around each periodic loop must cancel
  auto check_loop = [&](int axis) {
    double total = 0.0;
    int idx[3] = {0, 0, 0};
    for (int j = 0; j < s.n[axis]; ++j) {
      idx[axis] = j;
      int nxt[3] = {idx[0], idx[1], idx[2]};
      nxt[axis] = (j + 1) % s.n[axis];
      total += wrap(principal(s.flat(nxt[0], nxt[1], nxt[2])) -
                    principal(s.flat(idx[0], idx[1], idx[2])));
    }
    if (std::abs(total) > std::numbers::pi)
      throw WindingObstruction("phase winds around axis " +
                               std::to_string(axis));
  };
  for (int a = 0; a < s.dim; ++a) check_loop(a);
  return theta;
}

RealGauge make_real_gauge(const SpinorStack& psis, const PotStack& As,
                          std::size_t center, const DiracThresholds& th) {
  const SpinorField& psi = psis.at(center);
  const GridField& psi1 = psi.c[0];
  check_floor(psi1, th.eps_psi_rel, "psi1");
  GridField alpha = unwrap_phase(psi1) * (-1.0);

  SpinorField psid = d1(psis, center);
  // alpha_t = -Im(psi1_t / psi1)
  GridField alpha_t = pointwise_div(psid.c[0], psi1).imag_part() * (-1.0);

  RealGauge out;
  out.alpha = alpha;
  out.psi = SpinorField(psi.spec());
  for (int comp = 0; comp < 4; ++comp)
    for (std::size_t i = 0; i < psi1.size(); ++i)
      out.psi.c[comp][i] =
          std::exp(cd(0.0, alpha[i].real())) * psi.c[comp][i];
  out.A = As.at(center);
  out.A.A[0] -= alpha_t;
  for (int k = 0; k < 3; ++k) out.A.A[k + 1] += deriv(alpha, k);
  return out;
}

}  // namespace edlab
