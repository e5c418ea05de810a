#include "glv/grid.hpp"

#include <stdexcept>

namespace glv {

static UniformGrid make_grid(int dim, int n, double side, bool periodic) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 sites per axis");
  if (!(side > 0.0)) throw std::invalid_argument("grid side must be positive");
  UniformGrid g;
  g.dim = dim;
  g.n = n;
  g.side = side;
  g.periodic = periodic;
  for (int d = 0; d < dim; ++d) g.origin[d] = -0.5 * side;
  return g;
}

UniformGrid make_grid_2d(int n, double side, bool periodic) {
  return make_grid(2, n, side, periodic);
}

UniformGrid make_grid_3d(int n, double side, bool periodic) {
  return make_grid(3, n, side, periodic);
}

ComplexField make_field(const UniformGrid& g, FieldBC bc, double flux, Complex fill) {
  if ((bc == FieldBC::MagneticPeriodic) != g.periodic)
    throw std::invalid_argument("field bc does not match grid periodicity");
  ComplexField f;
  f.grid = g;
  f.bc = bc;
  f.flux = bc == FieldBC::MagneticPeriodic ? flux : 0.0;
  f.values.assign(g.num_sites(), fill);
  return f;
}

} // namespace glv
