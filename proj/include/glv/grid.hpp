#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace glv {

using Complex = std::complex<double>;

// Uniform tensor grid on an axis-aligned square or cube.
// Natural grids include both boundary planes: spacing = side/(n-1), trapezoid
// quadrature. Periodic grids store one fundamental cell of n sites per axis:
// spacing = side/n, uniform quadrature.
struct UniformGrid {
  int dim = 2;  // 2 or 3
  int n = 0;    // sites per axis
  double side = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};  // minimal corner
  bool periodic = false;

  double spacing() const { return periodic ? side / n : side / (n - 1); }

  std::size_t num_sites() const {
    std::size_t m = (std::size_t)n * n;
    return dim == 3 ? m * n : m;
  }

  // Row-major flattening: axis 0 slowest, last axis fastest.
  std::size_t site_index(int i0, int i1, int i2 = 0) const {
    std::size_t idx = (std::size_t)i0 * n + i1;
    return dim == 3 ? idx * n + i2 : idx;
  }

  std::array<int, 3> site_coords(std::size_t idx) const {
    std::array<int, 3> c{0, 0, 0};
    if (dim == 3) {
      c[2] = (int)(idx % n);
      idx /= n;
    }
    c[1] = (int)(idx % n);
    c[0] = (int)(idx / n);
    return c;
  }

  double axis_pos(int axis, int i) const { return origin[axis] + spacing() * i; }

  std::array<double, 3> site_pos(int i0, int i1, int i2 = 0) const {
    return {axis_pos(0, i0), axis_pos(1, i1), dim == 3 ? axis_pos(2, i2) : 0.0};
  }

  // 1D quadrature weight of site index i along any axis.
  double axis_weight(int i) const {
    const double h = spacing();
    if (periodic) return h;
    return (i == 0 || i == n - 1) ? 0.5 * h : h;
  }

  double site_weight(int i0, int i1, int i2 = 0) const {
    double w = axis_weight(i0) * axis_weight(i1);
    return dim == 3 ? w * axis_weight(i2) : w;
  }

  // Number of distinct edges along one axis line.
  int edges_per_axis_1d() const { return periodic ? n : n - 1; }

  bool operator==(const UniformGrid&) const = default;
};

// Centered grids: origin = -side/2 per axis.
UniformGrid make_grid_2d(int n, double side, bool periodic);
UniformGrid make_grid_3d(int n, double side, bool periodic);

enum class FieldBC { Natural, MagneticPeriodic };

// Order-parameter samples on a grid. A MagneticPeriodic field stores one cell
// of a field obeying the magnetic translation relations with flux `flux` per
// cell in the (0,1) plane; the relations enter the energy only through the
// wrap-edge link phases, so any stored values are admissible.
struct ComplexField {
  UniformGrid grid;
  FieldBC bc = FieldBC::Natural;
  double flux = 0.0;  // coupling * side^2 when MagneticPeriodic
  std::vector<Complex> values;
};

ComplexField make_field(const UniformGrid& g, FieldBC bc, double flux = 0.0,
                        Complex fill = Complex(1.0, 0.0));

} // namespace glv
