#include "edlab/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace edlab {

struct ModeMaker {
  static std::vector<RandomField::Mode> run(const GridSpec& spec,
                                            std::mt19937_64& rng,
                                            const RandomFieldOptions& opts) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<RandomField::Mode> modes;
    const int mm = opts.max_mode;
    auto two_pi_over = [&](int a) {
      return 2.0 * std::numbers::pi / spec.length[a];
    };
    for (int kz = spec.dim == 3 ? -mm : 0; kz <= (spec.dim == 3 ? mm : 0); ++kz)
      for (int ky = spec.dim == 3 ? -mm : 0; ky <= (spec.dim == 3 ? mm : 0); ++ky)
        for (int kx = -mm; kx <= mm; ++kx) {
          RandomField::Mode m;
          m.kx = kx * two_pi_over(0);
          m.ky = spec.dim == 3 ? ky * two_pi_over(1) : 0.0;
          m.kz = spec.dim == 3 ? kz * two_pi_over(2) : 0.0;
          m.omega = opts.max_freq * unit(rng);
          m.amp = cd(unit(rng), unit(rng)) * opts.amplitude;
          m.phase = angle(rng);
          if (opts.max_total_sq > 0 &&
              kx * kx + ky * ky + kz * kz > opts.max_total_sq)
            continue;
          modes.push_back(m);
        }
    return modes;
  }
};

RandomField::RandomField(const GridSpec& spec, FieldKind kind,
                         std::uint64_t seed, const RandomFieldOptions& opts)
    : spec_(spec), kind_(kind) {
  std::mt19937_64 rng(seed);
  modes_re_ = ModeMaker::run(spec, rng, opts);
  if (kind == FieldKind::Complex) modes_im_ = ModeMaker::run(spec, rng, opts);
}

GridField RandomField::eval(const std::vector<Mode>& modes, double t,
                            int d) const {
  GridField out(spec_, FieldKind::Real);
  for (int z = 0; z < spec_.n[2]; ++z)
    for (int y = 0; y < spec_.n[1]; ++y)
      for (int x = 0; x < spec_.n[0]; ++x) {
        const double px = spec_.coord(0, x);
        const double py = spec_.coord(1, y);
        const double pz = spec_.coord(2, z);
        double v = 0.0;
        for (const auto& m : modes) {
          const double sp = m.kx * px + m.ky * py + m.kz * pz;
          // Re[amp e^{i sp}] cos(omega t + phase), differentiated d times in t
          const double spatial =
              m.amp.real() * std::cos(sp) - m.amp.imag() * std::sin(sp);
          const double arg =
              m.omega * t + m.phase + d * std::numbers::pi / 2.0;
          v += spatial * std::pow(m.omega, d) * std::cos(arg);
        }
        out[spec_.flat(x, y, z)] = v;
      }
  return out;
}

GridField RandomField::at(double t, int time_deriv) const {
  GridField re = eval(modes_re_, t, time_deriv);
  if (kind_ == FieldKind::Real) return re;
  GridField im = eval(modes_im_, t, time_deriv);
  GridField out(spec_, FieldKind::Complex);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = cd(re[i].real(), im[i].real());
  return out;
}

}  // namespace edlab
