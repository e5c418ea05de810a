#include "glv/periodic.hpp"

#include <cmath>
#include <stdexcept>

namespace glv {

PeriodicCellSpec quantize_flux(double h_ex_requested) {
  if (!(h_ex_requested >= 0.0)) throw std::invalid_argument("flux must be nonnegative");
  PeriodicCellSpec s;
  s.h_ex_requested = h_ex_requested;
  s.flux_quanta = (long long)std::llround(h_ex_requested / (2.0 * M_PI));
  s.h_ex = 2.0 * M_PI * (double)s.flux_quanta;
  return s;
}

double consistency_defect(double h_ex) { return 2.0 * std::abs(std::sin(0.5 * h_ex)); }

void covariant_wrap(ComplexField& u, int p, int q) {
  if (u.bc != FieldBC::MagneticPeriodic)
    throw std::invalid_argument("covariant_wrap needs a magnetic-periodic field");
  const UniformGrid& g = u.grid;
  const double defect = consistency_defect(u.flux);
  if (defect > 1e-9)
    throw std::invalid_argument("covariant_wrap needs quantized flux");
  const double c = u.flux / (g.side * g.side);
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < zmax; ++i2) {
        const auto x = g.site_pos(i0, i1, i2);
        // Crossing p cells along axis 0 multiplies by exp(i·c·L·p·(x2+qL)/2),
        // crossing q cells along axis 1 by exp(−i·c·L·q·x1/2).  Translating the
        // window also shifts the vector potential by a constant, and putting the
        // translate back in the stored cell's gauge removes the position-dependent
        // part, leaving the commutator phase c·L²·p·q/2 of the two relations.
        const double rel = 0.5 * c * g.side * (p * (x[1] + q * g.side) - q * x[0]);
        const double regauge = 0.5 * c * g.side * (p * x[1] - q * x[0]);
        const double chi = rel - regauge;
        u.values[g.site_index(i0, i1, i2)] *= Complex(std::cos(chi), std::sin(chi));
      }
}

ComplexField extend_to_natural(const ComplexField& u) {
  if (u.bc != FieldBC::MagneticPeriodic)
    throw std::invalid_argument("extend_to_natural needs a magnetic-periodic field");
  const UniformGrid& g = u.grid;
  const int n = g.n;
  const double L = g.side, h = L / n;
  const double c = u.flux / (L * L);
  UniformGrid gn = g;
  gn.n = n + 1;
  gn.periodic = false;
  ComplexField out = make_field(gn, FieldBC::Natural);
  const int zmax = g.dim == 3 ? n : 0;
  for (int i0 = 0; i0 <= n; ++i0)
    for (int i1 = 0; i1 <= n; ++i1)
      for (int i2 = 0; i2 <= zmax; ++i2) {
        int a = i0, b = i1, z = i2 == n ? 0 : i2;
        Complex ph(1.0, 0.0);
        const double xb = -0.5 * L + b * h;
        if (a == n) {
          ph *= std::polar(1.0, 0.5 * c * L * xb);
          a = 0;
        }
        const double xa = -0.5 * L + a * h;
        if (b == n) {
          ph *= std::polar(1.0, -0.5 * c * L * xa);
          b = 0;
        }
        out.values[gn.site_index(i0, i1, i2)] = ph * u.values[g.site_index(a, b, z)];
      }
  return out;
}

ComplexField prolong_cell_2d(const ComplexField& u, int fine_n) {
  if (u.bc != FieldBC::MagneticPeriodic || u.grid.dim != 2)
    throw std::invalid_argument("prolong_cell_2d needs a 2D magnetic-periodic field");
  if (fine_n < u.grid.n)
    throw std::invalid_argument("prolong_cell_2d cannot coarsen");
  if (fine_n == u.grid.n) return u;

  const ComplexField ext = extend_to_natural(u);
  const int m = ext.grid.n;  // coarse n + 1
  const UniformGrid gf = make_grid_2d(fine_n, u.grid.side, true);
  ComplexField out = make_field(gf, FieldBC::MagneticPeriodic, u.flux);
  const double ratio = gf.spacing() / u.grid.spacing();
  for (int i = 0; i < fine_n; ++i)
    for (int j = 0; j < fine_n; ++j) {
      const double tx = i * ratio, ty = j * ratio;
      int a = (int)tx, b = (int)ty;
      if (a > m - 2) a = m - 2;
      if (b > m - 2) b = m - 2;
      const double fx = tx - a, fy = ty - b;
      const Complex v = (1.0 - fx) * (1.0 - fy) * ext.values[(std::size_t)a * m + b] +
                        fx * (1.0 - fy) * ext.values[(std::size_t)(a + 1) * m + b] +
                        (1.0 - fx) * fy * ext.values[(std::size_t)a * m + b + 1] +
                        fx * fy * ext.values[(std::size_t)(a + 1) * m + b + 1];
      out.values[(std::size_t)i * fine_n + j] = v;
    }
  return out;
}

} // namespace glv
