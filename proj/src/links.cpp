#include "glv/links.hpp"

#include <cmath>
#include <stdexcept>

namespace glv {

void LinkPhases::refresh_phase() {
  for (int d = 0; d < grid.dim; ++d) {
    phase[d].resize(theta[d].size());
    for (std::size_t i = 0; i < theta[d].size(); ++i)
      phase[d][i] = Complex(std::cos(theta[d][i]), -std::sin(theta[d][i]));
  }
}

std::array<double, 3> potential_a0(const std::array<double, 3>& x) {
  return {-0.5 * x[1], 0.5 * x[0], 0.0};
}

LinkPhases links_from_potential(const UniformGrid& g, const VectorPotential& A, double coupling) {
  LinkPhases l;
  l.grid = g;
  l.coupling = coupling;
  const double h = g.spacing();
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int d = 0; d < g.dim; ++d) {
    l.theta[d].assign(g.num_sites(), 0.0);
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < zmax; ++i2) {
          std::array<int, 3> c{i0, i1, i2};
          if (!g.periodic && c[d] == g.n - 1) continue;
          std::array<double, 3> mid = g.site_pos(i0, i1, i2);
          mid[d] += 0.5 * h;
          l.theta[d][g.site_index(i0, i1, i2)] = coupling * h * A(mid)[d];
        }
  }
  l.refresh_phase();
  return l;
}

void apply_magnetic_wrap(LinkPhases& links) {
  const UniformGrid& g = links.grid;
  if (!g.periodic) throw std::invalid_argument("magnetic wrap needs a periodic grid");
  for (int d = 0; d < g.dim; ++d)
    if (std::abs(g.origin[d] + 0.5 * g.side) > 1e-12 * g.side)
      throw std::invalid_argument("magnetic wrap needs a centered grid");
  const double c = links.coupling;
  const int n = g.n;
  const int zmax = g.dim == 3 ? n : 1;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < zmax; ++i2)
      links.theta[0][g.site_index(n - 1, i1, i2)] -= 0.5 * c * g.side * g.axis_pos(1, i1);
  for (int i0 = 0; i0 < n; ++i0)
    for (int i2 = 0; i2 < zmax; ++i2)
      links.theta[1][g.site_index(i0, n - 1, i2)] += 0.5 * c * g.side * g.axis_pos(0, i0);
  links.refresh_phase();
}

LinkPhases field_links(const UniformGrid& g, double coupling) {
  LinkPhases l = links_from_potential(
      g, [](const std::array<double, 3>& x) { return potential_a0(x); }, coupling);
  if (g.periodic) apply_magnetic_wrap(l);
  return l;
}

double plaquette_flux(const LinkPhases& l, int a, int b, int i0, int i1, int i2) {
  const UniformGrid& g = l.grid;
  std::array<int, 3> s{i0, i1, i2};
  if (!g.periodic && (s[a] >= g.n - 1 || s[b] >= g.n - 1))
    throw std::invalid_argument("plaquette outside natural grid");
  auto shifted = [&](int axis) {
    std::array<int, 3> t = s;
    t[axis] = (t[axis] + 1) % g.n;
    return g.site_index(t[0], t[1], t[2]);
  };
  const std::size_t idx = g.site_index(i0, i1, i2);
  return l.theta[a][idx] + l.theta[b][shifted(a)] - l.theta[a][shifted(b)] - l.theta[b][idx];
}

} // namespace glv
