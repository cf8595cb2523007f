#include "edlab/carleman.hpp"

#include <cmath>
#include <map>

namespace edlab {
namespace fock {

namespace {

void enumerate(int k, int budget, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int n = 0; n <= budget; ++n) {
    cur.push_back(n);
    enumerate(k, budget - n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FockBasis::FockBasis(int modes, int n_max) : k_(modes), nmax_(n_max) {
  if (modes < 1 || n_max < 0)
    throw Error("FockBasis: need modes >= 1 and n_max >= 0");
  std::vector<int> cur;
  enumerate(k_, nmax_, cur, tuples_);
  for (int i = 0; i < dim(); ++i) index_[tuples_[i]] = i;
}

int FockBasis::index(const std::vector<int>& tuple) const {
  auto it = index_.find(tuple);
  return it == index_.end() ? -1 : it->second;
}

LadderOps ladder_ops(const FockBasis& basis) {
  const int d = basis.dim();
  LadderOps ops;
  for (int m = 0; m < basis.modes(); ++m) {
    Mat a = Mat::Zero(d, d);
    for (int col = 0; col < d; ++col) {
      std::vector<int> t = basis.tuple(col);
      if (t[m] == 0) continue;
      const double amp = std::sqrt(static_cast<double>(t[m]));
      t[m] -= 1;
      const int row = basis.index(t);
      a(row, col) = amp;
    }
    ops.a.push_back(a);
    ops.a_dag.push_back(a.adjoint());
  }
  return ops;
}

void PolyVectorField::validate() const {
  if (static_cast<int>(F.size()) != k)
    throw Error("PolyVectorField: component count mismatch");
  for (const auto& comp : F)
    for (const auto& mono : comp) {
      if (static_cast<int>(mono.powers.size()) != k)
        throw Error("PolyVectorField: power tuple size mismatch");
      int deg = 0;
      for (int p : mono.powers) {
        if (p < 0) throw Error("PolyVectorField: negative power");
        deg += p;
      }
      if (deg > max_degree)
        throw Error("PolyVectorField: monomial degree exceeds bound");
      if (!std::isfinite(mono.coef.real()) || !std::isfinite(mono.coef.imag()))
        throw Error("PolyVectorField: non-finite coefficient");
    }
}

Vec PolyVectorField::eval(const Vec& xi) const {
  Vec out = Vec::Zero(k);
  for (int i = 0; i < k; ++i)
    for (const auto& mono : F[i]) {
      cd v = mono.coef;
      for (int j = 0; j < k; ++j)
        for (int p = 0; p < mono.powers[j]; ++p) v *= xi(j);
      out(i) += v;
    }
  return out;
}

PolyVectorField PolyVectorField::linear_rotor(int k, double omega) {
  PolyVectorField f;
  f.k = k;
  f.F.resize(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> p(k, 0);
    p[i] = 1;
    f.F[i].push_back({cd(0.0, -omega), p});
  }
  return f;
}

PolyVectorField PolyVectorField::nonlinear_mode(double lambda) {
  PolyVectorField f;
  f.k = 1;
  f.F.resize(1);
  f.F[0].push_back({cd(0.0, -1.0), {1}});
  f.F[0].push_back({cd(0.0, -lambda), {2}});
  return f;
}

PolyVectorField PolyVectorField::decay(int k) {
  PolyVectorField f;
  f.k = k;
  f.F.resize(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> p(k, 0);
    p[i] = 1;
    f.F[i].push_back({cd(-1.0, 0.0), p});
  }
  return f;
}

PolyVectorField PolyVectorField::coupled_chain(double kappa, double lam) {
  PolyVectorField f;
  f.k = 3;
  f.F.resize(3);
  for (int i = 0; i < 3; ++i) {
    auto unit = [&](int j) {
      std::vector<int> p(3, 0);
      p[j] = 1;
      return p;
    };
    f.F[i].push_back({cd(0.0, -1.0), unit(i)});
    // periodic discrete Laplacian coupling
    f.F[i].push_back({cd(0.0, -kappa), unit((i + 1) % 3)});
    f.F[i].push_back({cd(0.0, 2.0 * kappa), unit(i)});
    f.F[i].push_back({cd(0.0, -kappa), unit((i + 2) % 3)});
    std::vector<int> cubic(3, 0);
    cubic[i] = 3;
    f.F[i].push_back({cd(0.0, -lam), cubic});
  }
  return f;
}

Vec coherent(const Vec& xi, const FockBasis& basis, double amp_bound) {
  if (xi.size() != basis.modes())
    throw Error("coherent: mode count mismatch");
  if (xi.norm() > amp_bound)
    throw AmplitudeTooLarge("coherent: |xi| exceeds the truncation-safe ball");
  const double pref = std::exp(-0.5 * xi.squaredNorm());
  Vec v = Vec::Zero(basis.dim());
  for (int idx = 0; idx < basis.dim(); ++idx) {
    const auto& t = basis.tuple(idx);
    cd amp = pref;
    for (int m = 0; m < basis.modes(); ++m) {
      for (int p = 0; p < t[m]; ++p)
        amp *= xi(m) / std::sqrt(static_cast<double>(p + 1));
    }
    v(idx) = amp;
  }
  return v;
}

Mat hamiltonian(const PolyVectorField& F, const FockBasis& basis) {
  F.validate();
  if (F.k != basis.modes()) throw Error("hamiltonian: mode count mismatch");
  LadderOps ops = ladder_ops(basis);
  const int d = basis.dim();
  Mat M = Mat::Zero(d, d);
  for (int i = 0; i < F.k; ++i) {
    Mat Fi = Mat::Zero(d, d);
    for (const auto& mono : F.F[i]) {
      Mat term = Mat::Identity(d, d) * mono.coef;
      for (int j = 0; j < F.k; ++j)
        for (int p = 0; p < mono.powers[j]; ++p) term = term * ops.a[j];
      Fi += term;
    }
    M += ops.a_dag[i] * Fi;
  }
  return M;
}

Vec fock_evolve(const Vec& v0, const Mat& M, double T, double dt) {
  Vec v = v0;
  double t = 0.0;
  while (t < T - 1e-12) {
    const double step = std::min(dt, T - t);
    Vec k1 = M * v;
    Vec k2 = M * (v + 0.5 * step * k1);
    Vec k3 = M * (v + 0.5 * step * k2);
    Vec k4 = M * (v + step * k3);
    v += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!v.allFinite()) throw NonFiniteValue("fock_evolve: non-finite state");
    t += step;
  }
  return v;
}

CoherentParams classical_evolve(const Vec& xi0, const PolyVectorField& F,
                                double T, double dt, double amp_bound) {
  F.validate();
  Vec xi = xi0;
  double t = 0.0;
  auto check = [&](const Vec& x) {
    if (x.norm() > amp_bound)
      throw AmplitudeTooLarge("classical_evolve: flow left the safe ball");
  };
  check(xi);
  while (t < T - 1e-12) {
    const double step = std::min(dt, T - t);
    Vec k1 = F.eval(xi);
    Vec k2 = F.eval(xi + 0.5 * step * k1);
    Vec k3 = F.eval(xi + 0.5 * step * k2);
    Vec k4 = F.eval(xi + step * k3);
    xi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!xi.allFinite())
      throw NonFiniteValue("classical_evolve: non-finite state");
    check(xi);
    t += step;
  }
  CoherentParams cp;
  cp.xi = xi;
  cp.norm_log = 0.5 * (xi.squaredNorm() - xi0.squaredNorm());
  return cp;
}

double embedding_gap(const Vec& v, const CoherentParams& cp,
                     const FockBasis& basis, double amp_bound) {
  Vec ref = std::exp(cp.norm_log) * coherent(cp.xi, basis, amp_bound);
  return (v - ref).norm();
}

std::vector<SuperpositionPoint> weak_superposition(
    cd a, cd b, const Vec& xi, const Vec& eta, const PolyVectorField& F,
    double T, double dt, const FockBasis& basis,
    const std::vector<double>& scales, double amp_bound) {
  Mat M = hamiltonian(F, basis);
  Vec vac = Vec::Zero(basis.dim());
  vac(basis.index(std::vector<int>(basis.modes(), 0))) = 1.0;
  Vec vac_t = fock_evolve(vac, M, T, dt);

  std::vector<SuperpositionPoint> out;
  for (double s : scales) {
    Vec xs = s * xi;
    Vec es = s * eta;
    Vec mix = a * xs + b * es;
    if (mix.norm() > amp_bound || xs.norm() > amp_bound ||
        es.norm() > amp_bound)
      throw AmplitudeTooLarge("weak_superposition: amplitude out of range");
    Vec v_mix = fock_evolve(coherent(mix, basis, amp_bound), M, T, dt);
    Vec v_xi = fock_evolve(coherent(xs, basis, amp_bound), M, T, dt);
    Vec v_eta = fock_evolve(coherent(es, basis, amp_bound), M, T, dt);
    Vec dev = v_mix - a * v_xi - b * v_eta + (a + b - 1.0) * vac_t;
    out.push_back({s, dev.norm()});
  }
  return out;
}

}  // namespace fock
}  // namespace edlab
