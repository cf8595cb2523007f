#include "edlab/elliptic.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

namespace edlab {

namespace {

GridField fft_exec(const GridField& f, int sign) {
  const GridSpec& s = f.spec();
  GridField out(s, FieldKind::Complex);
  std::vector<cd> buf = f.values();
  fftw_plan plan = fftw_plan_dft_3d(
      s.n[2], s.n[1], s.n[0], reinterpret_cast<fftw_complex*>(buf.data()),
      reinterpret_cast<fftw_complex*>(out.values().data()), sign,
      FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  if (sign == FFTW_BACKWARD) out *= 1.0 / static_cast<double>(s.size());
  return out;
}

// angular wavenumber for DFT index j on an axis
double wavenumber(const GridSpec& s, int axis, int j) {
  const int n = s.n[axis];
  const int k = j <= n / 2 ? j : j - n;
  return 2.0 * std::numbers::pi * k / s.length[axis];
}

}  // namespace

GridField fft_forward(const GridField& f) { return fft_exec(f, FFTW_FORWARD); }
GridField fft_inverse(const GridField& f) { return fft_exec(f, FFTW_BACKWARD); }

GridField spectral_deriv(const GridField& f, int axis) {
  const GridSpec& s = f.spec();
  GridField hat = fft_forward(f);
  for (int z = 0; z < s.n[2]; ++z)
    for (int y = 0; y < s.n[1]; ++y)
      for (int x = 0; x < s.n[0]; ++x) {
        const int j = axis == 0 ? x : axis == 1 ? y : z;
        double k = wavenumber(s, axis, j);
        // Nyquist mode of an odd operator is projected out
        if (s.n[axis] % 2 == 0 && j == s.n[axis] / 2) k = 0.0;
        hat[s.flat(x, y, z)] *= cd(0.0, k);
      }
  GridField out = fft_inverse(hat);
  if (f.kind() == FieldKind::Real) {
    out = out.real_part();
  }
  return out;
}

GridField spectral_laplacian(const GridField& f) {
  const GridSpec& s = f.spec();
  GridField hat = fft_forward(f);
  for (int z = 0; z < s.n[2]; ++z)
    for (int y = 0; y < s.n[1]; ++y)
      for (int x = 0; x < s.n[0]; ++x) {
        double k2 = 0.0;
        const int idx[3] = {x, y, z};
        for (int a = 0; a < s.dim; ++a) {
          const double k = wavenumber(s, a, idx[a]);
          k2 += k * k;
        }
        hat[s.flat(x, y, z)] *= -k2;
      }
  GridField out = fft_inverse(hat);
  if (f.kind() == FieldKind::Real) out = out.real_part();
  return out;
}

GridField helmholtz_solve(const GridField& rhs, const GridField& coeff,
                          const HelmholtzOptions& opts) {
  const GridSpec& s = rhs.spec();
  const cd cbar = mean(coeff);
  const double scale =
      std::max({sup_norm(rhs), sup_norm(coeff), 1.0});
  const bool pin_zero_mode = std::abs(cbar) < opts.symbol_floor * scale;

  // precompute the symbol -|k|^2 - cbar (operator is laplacian - coeff)
  std::vector<cd> symbol(s.size());
  for (int z = 0; z < s.n[2]; ++z)
    for (int y = 0; y < s.n[1]; ++y)
      for (int x = 0; x < s.n[0]; ++x) {
        double k2 = 0.0;
        const int idx[3] = {x, y, z};
        for (int a = 0; a < s.dim; ++a) {
          const double k = wavenumber(s, a, idx[a]);
          k2 += k * k;
        }
        const cd sym = -k2 - cbar;
        if (!(x == 0 && y == 0 && z == 0) &&
            std::abs(sym) < opts.symbol_floor * std::max(k2, 1.0))
          throw Degenerate("helmholtz_solve: near-zero symbol at k != 0");
        symbol[s.flat(x, y, z)] = sym;
      }

  GridField fluct = coeff;  // coeff - cbar
  for (auto& v : fluct.values()) v -= cbar;

  GridField u(s, rhs.kind());
  double prev_delta = 0.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    // effective rhs: rhs + fluct * u (moved to the constant-coefficient side)
    GridField eff = rhs;
    for (std::size_t i = 0; i < eff.size(); ++i) eff[i] += fluct[i] * u[i];
    GridField hat = fft_forward(eff);
    if (pin_zero_mode) {
      if (std::abs(hat[0]) >
          1e-8 * scale * static_cast<double>(s.size()))
        throw Degenerate(
            "helmholtz_solve: zero-mean operator with nonzero-mean rhs");
      hat[0] = 0.0;
    } else {
      hat[0] /= symbol[0];
    }
    for (std::size_t i = 1; i < hat.size(); ++i) hat[i] /= symbol[i];
    GridField next = fft_inverse(hat);
    if (rhs.kind() == FieldKind::Real && coeff.kind() == FieldKind::Real)
      next = next.real_part();
    double delta = sup_norm(next - u);
    double unorm = std::max(sup_norm(next), 1e-300);
    u = std::move(next);
    if (delta <= opts.tol * unorm) return u;
    if (it > 4 && prev_delta > 0.0 && delta > prev_delta * 1.5)
      throw NoConvergence("helmholtz_solve: fixed point diverging");
    prev_delta = delta;
  }
  throw NoConvergence("helmholtz_solve: iteration budget exhausted");
}

GridField poisson_solve(const GridField& rhs) {
  GridField zero(rhs.spec(), FieldKind::Real);
  return helmholtz_solve(rhs, zero);
}

}  // namespace edlab
