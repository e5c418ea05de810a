#pragma once

// Internal kernel helpers shared by the energy/gradient translation units.

#include "glv/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace glv::detail {

inline constexpr int kMaxLine = 4096;

inline void require_pair(const ComplexField& u, const LinkPhases& l) {
  if (!(u.grid == l.grid)) throw std::invalid_argument("field and links use different grids");
  if (u.values.size() != u.grid.num_sites())
    throw std::invalid_argument("field value count does not match grid");
  if ((u.bc == FieldBC::MagneticPeriodic) != u.grid.periodic)
    throw std::invalid_argument("field bc does not match grid periodicity");
  if (u.grid.n > kMaxLine) throw std::invalid_argument("grid too large for kernels");
  for (int d = 0; d < u.grid.dim; ++d)
    if (l.theta[d].size() != u.grid.num_sites() || l.phase[d].size() != u.grid.num_sites())
      throw std::invalid_argument("links not initialized for this grid");
  if (u.grid.periodic) {
    const double want = l.coupling * u.grid.side * u.grid.side;
    if (std::abs(u.flux - want) > 1e-9 * std::max(1.0, std::abs(want)))
      throw std::invalid_argument("field flux does not match links coupling");
  }
}

inline std::vector<double> axis_weights(const UniformGrid& g) {
  std::vector<double> wt(g.n);
  for (int i = 0; i < g.n; ++i) wt[i] = g.axis_weight(i);
  return wt;
}

inline const double* raw(const std::vector<Complex>& v) {
  return reinterpret_cast<const double*>(v.data());
}
inline double* raw(std::vector<Complex>& v) { return reinterpret_cast<double*>(v.data()); }

} // namespace glv::detail
