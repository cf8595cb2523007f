#include "edlab/grid.hpp"

#include <cmath>

namespace edlab {

GridSpec GridSpec::line(int points, double box_length) {
  GridSpec s;
  s.dim = 1;
  s.n = {points, 1, 1};
  s.length = {box_length, 1.0, 1.0};
  s.validate();
  return s;
}

GridSpec GridSpec::cube(int points, double box_length) {
  GridSpec s;
  s.dim = 3;
  s.n = {points, points, points};
  s.length = {box_length, box_length, box_length};
  s.validate();
  return s;
}

void GridSpec::validate() const {
  if (dim != 1 && dim != 3) throw Error("GridSpec: spatial_dim must be 1 or 3");
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 8) throw Error("GridSpec: points_per_axis must be >= 8");
    if (length[a] <= 0) throw Error("GridSpec: box_length must be positive");
  }
  for (int a = dim; a < 3; ++a) {
    if (n[a] != 1) throw Error("GridSpec: inactive axes must have 1 point");
  }
}

GridField GridField::sample_real(
    const GridSpec& spec, const std::function<double(double, double, double)>& f) {
  GridField out(spec, FieldKind::Real);
  for (int z = 0; z < spec.n[2]; ++z)
    for (int y = 0; y < spec.n[1]; ++y)
      for (int x = 0; x < spec.n[0]; ++x)
        out[spec.flat(x, y, z)] =
            f(spec.coord(0, x), spec.coord(1, y), spec.coord(2, z));
  return out;
}

GridField GridField::sample_complex(
    const GridSpec& spec, const std::function<cd(double, double, double)>& f) {
  GridField out(spec, FieldKind::Complex);
  for (int z = 0; z < spec.n[2]; ++z)
    for (int y = 0; y < spec.n[1]; ++y)
      for (int x = 0; x < spec.n[0]; ++x)
        out[spec.flat(x, y, z)] =
            f(spec.coord(0, x), spec.coord(1, y), spec.coord(2, z));
  return out;
}

GridField GridField::constant(const GridSpec& spec, cd value) {
  GridField out(spec, value.imag() == 0.0 ? FieldKind::Real : FieldKind::Complex);
  for (auto& v : out.v_) v = value;
  return out;
}

GridField& GridField::operator+=(const GridField& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  if (o.kind_ == FieldKind::Complex) kind_ = FieldKind::Complex;
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  if (o.kind_ == FieldKind::Complex) kind_ = FieldKind::Complex;
  return *this;
}

GridField& GridField::operator*=(double s) {
  for (auto& v : v_) v *= s;
  return *this;
}

GridField& GridField::operator*=(cd s) {
  for (auto& v : v_) v *= s;
  if (s.imag() != 0.0) kind_ = FieldKind::Complex;
  return *this;
}

bool GridField::is_finite() const {
  for (const auto& v : v_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double GridField::max_imag() const {
  double m = 0.0;
  for (const auto& v : v_) m = std::max(m, std::abs(v.imag()));
  return m;
}

GridField GridField::real_part() const {
  GridField out(spec_, FieldKind::Real);
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i].real();
  return out;
}

GridField GridField::imag_part() const {
  GridField out(spec_, FieldKind::Real);
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i].imag();
  return out;
}

GridField GridField::conjugate() const {
  GridField out(spec_, kind_);
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = std::conj(v_[i]);
  return out;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(GridField a, double s) { return a *= s; }
GridField operator*(GridField a, cd s) { return a *= s; }

GridField pointwise_mul(const GridField& a, const GridField& b) {
  GridField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  if (b.kind() == FieldKind::Complex) out.set_kind(FieldKind::Complex);
  return out;
}

GridField pointwise_div(const GridField& a, const GridField& b) {
  GridField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= b[i];
  if (b.kind() == FieldKind::Complex) out.set_kind(FieldKind::Complex);
  return out;
}

double sup_norm(const GridField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const GridField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  double cell = 1.0;
  for (int a = 0; a < f.spec().dim; ++a) cell *= f.spec().h(a);
  return std::sqrt(s * cell);
}

cd mean(const GridField& f) {
  cd s = 0.0;
  for (const auto& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

}  // namespace edlab
