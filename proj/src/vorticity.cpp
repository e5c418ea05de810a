#include "glv/vorticity.hpp"

#include "kernels.hpp"

#include <cmath>

namespace glv {

namespace {

constexpr double kZeroTol = 1e-12;

double wrap_pi(double x) {
  double r = std::remainder(x, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

// Winding over the (a,b)-plane at fixed remaining coordinate.
Vorticity2D plane_winding(const ComplexField& u, const LinkPhases& l, int a, int b,
                          const std::array<int, 3>& base) {
  const UniformGrid& g = u.grid;
  const int n = g.n;
  const int np = g.periodic ? n : n - 1;
  Vorticity2D out;
  out.np = np;
  out.winding.assign((std::size_t)np * np, 0.0);
  out.indeterminate.assign((std::size_t)np * np, 0);

  auto site = [&](int ia, int ib) {
    std::array<int, 3> c = base;
    c[a] = ia % n;
    c[b] = ib % n;
    return g.site_index(c[0], c[1], c[2]);
  };

  for (int ia = 0; ia < np; ++ia)
    for (int ib = 0; ib < np; ++ib) {
      const std::size_t s00 = site(ia, ib), s10 = site(ia + 1, ib);
      const std::size_t s01 = site(ia, ib + 1), s11 = site(ia + 1, ib + 1);
      const std::size_t p = (std::size_t)ia * np + ib;
      if (std::abs(u.values[s00]) < kZeroTol || std::abs(u.values[s10]) < kZeroTol ||
          std::abs(u.values[s01]) < kZeroTol || std::abs(u.values[s11]) < kZeroTol) {
        out.indeterminate[p] = 1;
        ++out.n_indeterminate;
        continue;
      }
      const double step1 = wrap_pi(std::arg(u.values[s10] * std::conj(u.values[s00])) -
                                   l.theta[a][s00]);
      const double step2 = wrap_pi(std::arg(u.values[s11] * std::conj(u.values[s10])) -
                                   l.theta[b][s10]);
      const double step3 = wrap_pi(std::arg(u.values[s11] * std::conj(u.values[s01])) -
                                   l.theta[a][s01]);
      const double step4 = wrap_pi(std::arg(u.values[s01] * std::conj(u.values[s00])) -
                                   l.theta[b][s00]);
      std::array<int, 3> c = base;
      c[a] = ia;
      c[b] = ib;
      double flux = plaquette_flux(l, a, b, c[0], c[1], c[2]);
      // Stored-link circulations on the torus sum to zero, so the cell flux
      // coupling*side^2 is missing from the raw circulation of the last
      // transverse plaquette; windings need the physical flux there.
      if (g.periodic && ia == n - 1 && ib == n - 1 && a + b == 1)
        flux += (a == 0 ? 1.0 : -1.0) * l.coupling * g.side * g.side;
      const double w = (step1 + step2 - step3 - step4 + flux) / (2.0 * M_PI);
      out.winding[p] = w;
      out.total += w;
    }
  return out;
}

} // namespace

Vorticity2D vorticity_2d(const ComplexField& u, const LinkPhases& l) {
  detail::require_pair(u, l);
  if (u.grid.dim != 2) throw std::invalid_argument("vorticity_2d needs a 2D field");
  return plane_winding(u, l, 0, 1, {0, 0, 0});
}

Vorticity2D slice_winding(const ComplexField& u, const LinkPhases& l, int a, int b, int k) {
  detail::require_pair(u, l);
  if (u.grid.dim != 3) throw std::invalid_argument("slice_winding needs a 3D field");
  if (a == b || a < 0 || b < 0 || a > 2 || b > 2) throw std::invalid_argument("bad plane axes");
  const int c = 3 - a - b;
  if (k < 0 || k >= u.grid.n) throw std::invalid_argument("slice out of range");
  std::array<int, 3> base{0, 0, 0};
  base[c] = k;
  return plane_winding(u, l, a, b, base);
}

Vorticity3D vorticity_3d(const ComplexField& u, const LinkPhases& l) {
  detail::require_pair(u, l);
  const UniformGrid& g = u.grid;
  if (g.dim != 3) throw std::invalid_argument("vorticity_3d needs a 3D field");
  const int n = g.n;
  const double h = g.spacing();
  const int me = g.edges_per_axis_1d();

  // lattice current on every edge
  std::array<std::vector<double>, 3> J;
  for (int d = 0; d < 3; ++d) {
    J[d].assign(g.num_sites(), 0.0);
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
          std::array<int, 3> c{i0, i1, i2};
          if (!g.periodic && c[d] == n - 1) continue;
          auto cn = c;
          cn[d] = (cn[d] + 1) % n;
          const std::size_t s = g.site_index(c[0], c[1], c[2]);
          const std::size_t t = g.site_index(cn[0], cn[1], cn[2]);
          J[d][s] = std::imag(std::conj(u.values[s]) * u.values[t]) / h;
        }
  }

  Vorticity3D out;
  for (int c = 0; c < 3; ++c) {
    out.mu[c].assign(g.num_sites(), 0.0);
    out.current_part[c].assign(g.num_sites(), 0.0);
    out.flux_part[c].assign(g.num_sites(), 0.0);
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
          std::array<int, 3> cc{i0, i1, i2};
          if (!g.periodic && (cc[a] >= me || cc[b] >= me)) continue;
          auto ca = cc, cb = cc;
          ca[a] = (ca[a] + 1) % n;
          cb[b] = (cb[b] + 1) % n;
          const std::size_t s = g.site_index(cc[0], cc[1], cc[2]);
          const std::size_t sa = g.site_index(ca[0], ca[1], ca[2]);
          const std::size_t sb = g.site_index(cb[0], cb[1], cb[2]);
          const double curl = (J[a][s] + J[b][sa] - J[a][sb] - J[b][s]) / h;
          double flux = plaquette_flux(l, a, b, i0, i1, i2);
          // physical flux at the torus corner plaquette, as in plane_winding
          if (g.periodic && c == 2 && i0 == n - 1 && i1 == n - 1)
            flux += l.coupling * g.side * g.side;
          flux /= (l.coupling * h * h);
          out.current_part[c][s] = curl / l.coupling;
          out.flux_part[c][s] = flux;
          out.mu[c][s] = out.current_part[c][s] + flux;
        }
  }
  return out;
}

} // namespace glv
