#include "glv/scaling.hpp"

#include "glv/periodic.hpp"

#include <cmath>
#include <stdexcept>

namespace glv {

namespace {

// Natural-grid view of a unit-cell field: periodic cells grow the
// phase-carrying boundary row, natural cells pass through.
ComplexField natural_cell_view(const ComplexField& u2d) {
  if (u2d.grid.dim != 2) throw std::invalid_argument("lift needs a 2D source field");
  if (u2d.grid.periodic) return extend_to_natural(u2d);
  return u2d;
}

int lift_stride(const ComplexField& src, int n3) {
  const int intervals = src.grid.n - 1;
  if (n3 < 2 || intervals % (n3 - 1) != 0)
    throw std::invalid_argument(
        "resolution mismatch: transverse cube sites must land on cell sites");
  return intervals / (n3 - 1);
}

} // namespace

ParamSchedule schedule_from_kappaH(double kappa, double H) {
  if (!(kappa > 1.0)) throw std::invalid_argument("schedule needs kappa > 1");
  if (!(H > 0.0)) throw std::invalid_argument("schedule needs H > 0");
  if (!(H < kappa)) throw std::invalid_argument("schedule needs H < kappa");
  ParamSchedule s;
  s.kappa = kappa;
  s.H = H;
  s.b = H / kappa;
  const double kh = kappa * H;
  s.ell = std::pow(kh / std::log(kappa), 0.25) / std::sqrt(kh);
  s.lambda = std::sqrt(std::log(std::sqrt(kappa / H))) / std::sqrt(kh);
  s.delta = std::sqrt(s.ell);
  s.R = s.ell * std::sqrt(kh);
  s.h_ex = 1.0 / (s.ell * s.ell);
  s.eps = std::sqrt(s.b) * s.ell;
  s.regime_hk = H * kappa / std::log(kappa);
  s.regime_kh = kappa / H;
  return s;
}

GL2DParams params_2d_from_3d(double b, double R) {
  if (!(b > 0.0) || !(R > 0.0)) throw std::invalid_argument("b and R must be positive");
  return {R * R, std::sqrt(b) / R};
}

ComplexField lift_2d_to_3d(const ComplexField& u2d, double R, int n3) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const ComplexField src = natural_cell_view(u2d);
  const int stride = lift_stride(src, n3);
  const UniformGrid g3 = make_grid_3d(n3, R, false);
  ComplexField out = make_field(g3, FieldBC::Natural);
  for (int i = 0; i < n3; ++i)
    for (int j = 0; j < n3; ++j) {
      const Complex v = src.values[src.grid.site_index(i * stride, j * stride)];
      for (int k = 0; k < n3; ++k) out.values[g3.site_index(i, j, k)] = v;
    }
  return out;
}

ScalingCheck check_scaling_identity(const ComplexField& u2d, double b, double R, int n3) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  const ComplexField src = natural_cell_view(u2d);
  const int stride = lift_stride(src, n3);

  const ComplexField u3 = lift_2d_to_3d(u2d, R, n3);
  const LinkPhases l3 = field_links(u3.grid, 1.0);
  ScalingCheck c;
  c.lhs = energy_3d(u3, l3, GL3DParams::gform(b)).total;

  const UniformGrid g2 = make_grid_2d(n3, 1.0, false);
  ComplexField sub = make_field(g2, FieldBC::Natural);
  for (int i = 0; i < n3; ++i)
    for (int j = 0; j < n3; ++j)
      sub.values[g2.site_index(i, j)] = src.values[src.grid.site_index(i * stride, j * stride)];
  const GL2DParams p2 = params_2d_from_3d(b, R);
  const LinkPhases l2 = field_links(g2, p2.h_ex);
  c.rhs = b * R * energy_2d(sub, l2, p2).total;
  c.rel_err = std::abs(c.lhs - c.rhs) / std::max(std::abs(c.rhs), 1e-300);
  return c;
}

DomainSpec DomainSpec::box(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw std::invalid_argument("box sides must be positive");
  DomainSpec d;
  d.shape = Shape::Box;
  d.sides = {a, b, c};
  return d;
}

DomainSpec DomainSpec::ball(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  DomainSpec d;
  d.shape = Shape::Ball;
  d.radius = r;
  return d;
}

double DomainSpec::volume() const {
  if (shape == Shape::Box) return sides[0] * sides[1] * sides[2];
  return 4.0 / 3.0 * M_PI * radius * radius * radius;
}

CubeTiling cube_tiling(const DomainSpec& d, double cube_side) {
  if (!(cube_side > 0.0)) throw std::invalid_argument("cube side must be positive");
  const double s = cube_side, tol = 1e-12 * s;

  std::array<double, 3> lo, hi;
  for (int a = 0; a < 3; ++a) {
    const double half = d.shape == DomainSpec::Shape::Box ? 0.5 * d.sides[a] : d.radius;
    lo[a] = -half;
    hi[a] = half;
  }
  std::array<long long, 3> klo, khi;
  for (int a = 0; a < 3; ++a) {
    klo[a] = (long long)std::floor(lo[a] / s) - 1;
    khi[a] = (long long)std::ceil(hi[a] / s) + 1;
  }

  CubeTiling t;
  t.cube_side = s;
  const double r2_in = d.radius * d.radius * (1.0 + 1e-12);
  for (long long k0 = klo[0]; k0 <= khi[0]; ++k0)
    for (long long k1 = klo[1]; k1 <= khi[1]; ++k1)
      for (long long k2 = klo[2]; k2 <= khi[2]; ++k2) {
        const std::array<long long, 3> k{k0, k1, k2};
        bool interior = true, meets = true;
        if (d.shape == DomainSpec::Shape::Box) {
          for (int a = 0; a < 3; ++a) {
            const double c0 = (double)k[a] * s, c1 = (double)(k[a] + 1) * s;
            interior = interior && c0 >= lo[a] - tol && c1 <= hi[a] + tol;
            meets = meets && c0 <= hi[a] + tol && c1 >= lo[a] - tol;
          }
        } else {
          double far2 = 0.0, near2 = 0.0;
          for (int a = 0; a < 3; ++a) {
            const double c0 = (double)k[a] * s, c1 = (double)(k[a] + 1) * s;
            const double m = std::max(std::abs(c0), std::abs(c1));
            far2 += m * m;
            const double nearest = c0 > 0.0 ? c0 : (c1 < 0.0 ? c1 : 0.0);
            near2 += nearest * nearest;
          }
          interior = far2 <= r2_in;
          meets = near2 <= r2_in;
        }
        if (interior) {
          ++t.n_interior;
          t.centers.push_back({((double)k0 + 0.5) * s, ((double)k1 + 0.5) * s,
                               ((double)k2 + 0.5) * s});
        } else if (meets) {
          ++t.n_meeting_boundary;
        }
      }
  t.n_covering = t.n_interior + t.n_meeting_boundary;
  return t;
}

std::array<double, 3> link_vector_at(const LinkPhases& l, const std::array<double, 3>& x) {
  const UniformGrid& g = l.grid;
  if (g.periodic) throw std::invalid_argument("link_vector_at expects a natural grid");
  const double h = g.spacing();
  std::array<int, 3> i{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    if (x[a] < g.origin[a] - 1e-12 * g.side || x[a] > g.origin[a] + g.side + 1e-12 * g.side)
      throw std::invalid_argument("anchor point outside the grid");
    i[a] = (int)std::llround((x[a] - g.origin[a]) / h);
    i[a] = std::max(0, std::min(g.n - 1, i[a]));
  }
  std::array<double, 3> A{0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    double sum = 0.0;
    int cnt = 0;
    std::array<int, 3> j = i;
    if (i[a] < g.n - 1) {
      sum += l.theta[a][g.site_index(j[0], j[1], j[2])];
      ++cnt;
    }
    if (i[a] > 0) {
      j[a] = i[a] - 1;
      sum += l.theta[a][g.site_index(j[0], j[1], j[2])];
      ++cnt;
    }
    if (cnt > 0) A[a] = sum / cnt / (l.coupling * h);
  }
  return A;
}

GaugeShiftResult gauge_shift(const ComplexField& psi, const LinkPhases& a_links,
                             const LinkPhases& f_links, const std::array<double, 3>& x_j) {
  if (!(psi.grid == a_links.grid) || !(psi.grid == f_links.grid))
    throw std::invalid_argument("gauge_shift needs one common grid");
  if (std::abs(a_links.coupling - f_links.coupling) >
      1e-12 * std::max(1.0, std::abs(f_links.coupling)))
    throw std::invalid_argument("link sets have different couplings");

  GaugeShiftResult r;
  r.anchor_a = link_vector_at(a_links, x_j);
  r.anchor_f = link_vector_at(f_links, x_j);
  const std::array<double, 3> dA{r.anchor_a[0] - r.anchor_f[0], r.anchor_a[1] - r.anchor_f[1],
                                 r.anchor_a[2] - r.anchor_f[2]};
  const UniformGrid& g = psi.grid;
  std::vector<double> chi(g.num_sites(), 0.0);
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < zmax; ++i2) {
        const auto x = g.site_pos(i0, i1, i2);
        chi[g.site_index(i0, i1, i2)] =
            -a_links.coupling * (dA[0] * x[0] + dA[1] * x[1] + dA[2] * x[2]);
      }
  r.u = psi;
  r.links = a_links;
  gauge_transform(r.u, r.links, chi);
  return r;
}

double link_field_deviation(const LinkPhases& a, const LinkPhases& f,
                            const std::array<double, 3>& center, double cube_side) {
  if (!(a.grid == f.grid)) throw std::invalid_argument("link sets live on different grids");
  const UniformGrid& g = a.grid;
  const double h = g.spacing(), half = 0.5 * cube_side + 1e-12 * cube_side;
  auto inside = [&](const std::array<double, 3>& x) {
    for (int d = 0; d < g.dim; ++d)
      if (std::abs(x[d] - center[d]) > half) return false;
    return true;
  };
  double dev = 0.0;
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int d = 0; d < g.dim; ++d) {
    const int dmax = g.periodic ? g.n : g.n - 1;
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < zmax; ++i2) {
          const std::array<int, 3> i{i0, i1, i2};
          if (i[d] >= dmax) continue;
          auto xs = g.site_pos(i0, i1, i2);
          auto xt = xs;
          xt[d] += h;
          if (!inside(xs) || !inside(xt)) continue;
          const long long e = g.site_index(i0, i1, i2);
          dev = std::max(dev, std::abs(a.theta[d][e] - f.theta[d][e]) / (a.coupling * h));
        }
  }
  return dev;
}

double upper_bound_combine(const ParamSchedule& s, double count, double mp_value) {
  return count * mp_value / (s.ell * std::sqrt(s.kappa * s.H));
}

UpperBoundReport upper_bound_prediction(const ParamSchedule& s, const DomainSpec& d,
                                        double mp_value) {
  if (!(mp_value >= 0.0)) throw std::invalid_argument("mp_value must be nonnegative");
  UpperBoundReport r;
  r.cube_side = 1.0 / (s.ell * std::sqrt(s.kappa * s.H));
  const CubeTiling t = cube_tiling(d, r.cube_side);
  r.n_interior = t.n_interior;
  r.n_covering = t.n_covering;
  r.bound = upper_bound_combine(s, (double)t.n_covering, mp_value);
  r.bound_interior = upper_bound_combine(s, (double)t.n_interior, mp_value);
  r.leading_term = d.volume() * s.kappa * s.H * std::log(std::sqrt(s.kappa / s.H));
  return r;
}

} // namespace glv
