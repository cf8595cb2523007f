#include "edlab/stencil.hpp"

namespace edlab {

namespace {

template <typename Op>
GridField axis_stencil(const GridField& f, int axis, Op op) {
  const GridSpec& s = f.spec();
  GridField out(s, f.kind());
  const int nx = s.n[0], ny = s.n[1], nz = s.n[2];
  const int na = s.n[axis];
  // stride between neighbors along the axis in the flat layout
  const std::size_t stride =
      axis == 0 ? 1
      : axis == 1 ? static_cast<std::size_t>(nx)
                  : static_cast<std::size_t>(nx) * ny;
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const int j = axis == 0 ? x : axis == 1 ? y : z;
        const std::size_t i = s.flat(x, y, z);
        const std::size_t ip = j + 1 < na ? i + stride : i - (na - 1) * stride;
        const std::size_t im = j > 0 ? i - stride : i + (na - 1) * stride;
        out[i] = op(f[im], f[i], f[ip]);
      }
  return out;
}

}  // namespace

GridField deriv(const GridField& f, int axis) {
  const double inv2h = 1.0 / (2.0 * f.spec().h(axis));
  return axis_stencil(f, axis,
                      [inv2h](cd m, cd, cd p) { return (p - m) * inv2h; });
}

GridField deriv2(const GridField& f, int axis) {
  const double invh2 = 1.0 / (f.spec().h(axis) * f.spec().h(axis));
  return axis_stencil(
      f, axis, [invh2](cd m, cd c, cd p) { return (p - 2.0 * c + m) * invh2; });
}

GridField laplacian(const GridField& f) {
  GridField out = deriv2(f, 0);
  for (int a = 1; a < f.spec().dim; ++a) out += deriv2(f, a);
  return out;
}

GridField divergence(const GridField& vx, const GridField& vy, const GridField& vz) {
  GridField out = deriv(vx, 0);
  if (vx.spec().dim == 3) {
    out += deriv(vy, 1);
    out += deriv(vz, 2);
  }
  return out;
}

}  // namespace edlab
