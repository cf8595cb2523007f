#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "edlab/errors.hpp"

namespace edlab {

using cd = std::complex<double>;

enum class FieldKind { Real, Complex };

// Periodic lattice, 1 or 3 spatial dimensions. Sites are cell-centered:
// x_a(j) = (j + 1/2) h_a, so a mirror-symmetric function never has its
// symmetry point land exactly on a site for even point counts. Natural
// units (hbar = c = 1) throughout.
struct GridSpec {
  int dim = 1;                                  // 1 or 3
  std::array<int, 3> n{1, 1, 1};                // points per axis; unused axes = 1
  std::array<double, 3> length{1.0, 1.0, 1.0};  // box length per axis

  static GridSpec line(int points, double box_length);
  static GridSpec cube(int points, double box_length);

  double h(int axis) const { return length[axis] / n[axis]; }  // axis 0..2
  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }
  double coord(int axis, int idx) const { return (idx + 0.5) * h(axis); }

  // flat index = (z*ny + y)*nx + x
  std::size_t flat(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * n[1] + y) * n[0] + x;
  }
  void unflat(std::size_t idx, int& x, int& y, int& z) const {
    x = static_cast<int>(idx % n[0]);
    y = static_cast<int>((idx / n[0]) % n[1]);
    z = static_cast<int>(idx / (static_cast<std::size_t>(n[0]) * n[1]));
  }

  bool operator==(const GridSpec&) const = default;
  void validate() const;  // points >= 8 per active axis, dim in {1,3}
};

// Complex- or real-kind function sampled on the lattice. Carrier of every
// field in the project (psi, phi, Phi, A_mu, B_mu, j_mu, E, H, F).
class GridField {
 public:
  GridField() = default;
  GridField(const GridSpec& spec, FieldKind kind)
      : spec_(spec), kind_(kind), v_(spec.size(), cd(0.0, 0.0)) {}

  static GridField sample_real(const GridSpec& spec,
                               const std::function<double(double, double, double)>& f);
  static GridField sample_complex(const GridSpec& spec,
                                  const std::function<cd(double, double, double)>& f);
  static GridField constant(const GridSpec& spec, cd value);

  const GridSpec& spec() const { return spec_; }
  FieldKind kind() const { return kind_; }
  std::size_t size() const { return v_.size(); }

  cd& operator[](std::size_t i) { return v_[i]; }
  const cd& operator[](std::size_t i) const { return v_[i]; }
  std::vector<cd>& values() { return v_; }
  const std::vector<cd>& values() const { return v_; }

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double s);
  GridField& operator*=(cd s);

  bool is_finite() const;
  // max over sites of |Im|; a real-kind field should report ~0
  double max_imag() const;
  void set_kind(FieldKind k) { kind_ = k; }
  // drop imaginary parts (used after operations known to preserve reality)
  GridField real_part() const;
  GridField imag_part() const;
  GridField conjugate() const;

 private:
  GridSpec spec_;
  FieldKind kind_ = FieldKind::Real;
  std::vector<cd> v_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(GridField a, double s);
GridField operator*(GridField a, cd s);

GridField pointwise_mul(const GridField& a, const GridField& b);
GridField pointwise_div(const GridField& a, const GridField& b);

double sup_norm(const GridField& f);
double l2_norm(const GridField& f);  // sqrt(sum h^d |f|^2)
cd mean(const GridField& f);

}  // namespace edlab
