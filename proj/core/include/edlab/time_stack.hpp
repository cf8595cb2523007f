#pragma once

#include <deque>
#include <string>

#include "edlab/errors.hpp"

namespace edlab {

// Ring of time slices with central finite-difference temporal derivatives.
// Slices are pushed in increasing-time order at uniform spacing dt.
// Stencil widths: orders 1,2 use 3 slices; orders 3,4 use 5. A stack must
// hold at least order+3 slices before a derivative is taken, so there is
// always at least one valid center away from the ends.
template <typename T>
class TimeStack {
 public:
  TimeStack(double dt, std::size_t capacity) : dt_(dt), cap_(capacity) {}

  void push(T slice) {
    slices_.push_back(std::move(slice));
    if (slices_.size() > cap_) slices_.pop_front();
  }

  double dt() const { return dt_; }
  std::size_t size() const { return slices_.size(); }
  const T& at(std::size_t i) const { return slices_.at(i); }
  const T& back() const { return slices_.back(); }

  static int half_width(int order) { return order <= 2 ? 1 : 2; }

  // d^order/dt^order at slice index `center`.
  T derivative_at(std::size_t center, int order) const {
    if (order < 1 || order > 4)
      throw MissingSlices("TimeStack: derivative order must be in [1,4]");
    if (slices_.size() < static_cast<std::size_t>(order) + 3)
      throw MissingSlices("TimeStack: need at least order+3 slices, have " +
                          std::to_string(slices_.size()));
    const int hw = half_width(order);
    if (static_cast<int>(center) < hw ||
        center + hw >= slices_.size())
      throw MissingSlices("TimeStack: stencil for order " +
                          std::to_string(order) +
                          " does not fit around the requested slice");
    const T& m2 = slices_[center - (hw == 2 ? 2 : 1)];
    const T& m1 = slices_[center - 1];
    const T& c0 = slices_[center];
    const T& p1 = slices_[center + 1];
    const T& p2 = slices_[center + (hw == 2 ? 2 : 1)];
    switch (order) {
      case 1:
        return (p1 - m1) * (1.0 / (2.0 * dt_));
      case 2:
        return (p1 - c0 * 2.0 + m1) * (1.0 / (dt_ * dt_));
      case 3:
        return (p2 - p1 * 2.0 + m1 * 2.0 - m2) *
               (1.0 / (2.0 * dt_ * dt_ * dt_));
      default:  // 4
        return (p2 - p1 * 4.0 + c0 * 6.0 - m1 * 4.0 + m2) *
               (1.0 / (dt_ * dt_ * dt_ * dt_));
    }
  }

  // Derivative at the midpoint slice (size/2), the usual probe location.
  T derivative_mid(int order) const {
    return derivative_at(slices_.size() / 2, order);
  }

 private:
  double dt_;
  std::size_t cap_;
  std::deque<T> slices_;
};

}  // namespace edlab
