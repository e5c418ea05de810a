#include "glv/energy.hpp"

#include "kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glv {

using detail::raw;

GL3DParams GL3DParams::gform(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("Gform needs b > 0");
  GL3DParams p;
  p.form = Form::Gform;
  p.b = b;
  return p;
}

GL3DParams GL3DParams::e0form(double kappa, double H) {
  if (!(kappa > 0.0) || !(H > 0.0)) throw std::invalid_argument("E0form needs kappa, H > 0");
  GL3DParams p;
  p.form = Form::E0form;
  p.kappa = kappa;
  p.H = H;
  return p;
}

double GL3DParams::coupling() const { return form == Form::Gform ? 1.0 : kappa * H; }
double GL3DParams::kin_factor() const { return form == Form::Gform ? b : 1.0; }
double GL3DParams::pot_factor() const { return form == Form::Gform ? 0.5 : 0.5 * kappa * kappa; }

namespace {

[[gnu::noinline]] double kin_line(const double* v, const double* ph, const double* wt,
                                  std::size_t base, std::size_t sstep, long long nboff, int m) {
  double buf[detail::kMaxLine];
  for (int j = 0; j < m; ++j) {
    const std::size_t s = base + (std::size_t)j * sstep;
    const std::size_t t = (std::size_t)((long long)s + nboff);
    const double ar = v[2 * t], ai = v[2 * t + 1];
    const double pr = ph[2 * s], pi = ph[2 * s + 1];
    const double dr = ar * pr - ai * pi - v[2 * s];
    const double di = ar * pi + ai * pr - v[2 * s + 1];
    buf[j] = wt[j] * (dr * dr + di * di);
  }
  return detail::chunk_buffer_sum(buf, (std::size_t)m);
}

[[gnu::noinline]] double pot_line(const double* v, const double* wt, std::size_t base,
                                  std::size_t sstep, int m) {
  double buf[detail::kMaxLine];
  for (int j = 0; j < m; ++j) {
    const std::size_t s = base + (std::size_t)j * sstep;
    const double q = 1.0 - (v[2 * s] * v[2 * s] + v[2 * s + 1] * v[2 * s + 1]);
    buf[j] = wt[j] * q * q;
  }
  return detail::chunk_buffer_sum(buf, (std::size_t)m);
}

// Sum of w_e |u_head e^{-i theta} - u_tail|^2 / h^2 over the edges along axis d.
double kinetic_axis(const ComplexField& u, const LinkPhases& l, int d,
                    const std::vector<double>& wt, Exec exec) {
  const UniformGrid& g = u.grid;
  const int n = g.n;
  const double h = g.spacing();
  const int medge = g.edges_per_axis_1d();
  const std::size_t str[3] = {g.dim == 3 ? (std::size_t)n * n : (std::size_t)n,
                              g.dim == 3 ? (std::size_t)n : 1, 1};
  const int in_ax = (d == g.dim - 1) ? g.dim - 2 : g.dim - 1;
  const double* v = raw(u.values);
  const double* ph = raw(l.phase[d]);
  const bool par = exec == Exec::Parallel;

  if (g.dim == 2) {
    std::vector<double> partial(medge);
#pragma omp parallel for schedule(static) if (par)
    for (int e = 0; e < medge; ++e) {
      const std::size_t base = d == 0 ? g.site_index(e, 0) : g.site_index(0, e);
      const long long nboff =
          (g.periodic && e == n - 1) ? (long long)str[d] * (1 - n) : (long long)str[d];
      partial[e] = kin_line(v, ph, wt.data(), base, str[in_ax], nboff, n) / h;
    }
    return detail::combine_partials(partial);
  }

  const int t3 = 3 - d - in_ax;  // remaining outer axis
  std::vector<double> partial((std::size_t)medge * n);
#pragma omp parallel for schedule(static) collapse(2) if (par)
  for (int e = 0; e < medge; ++e)
    for (int k = 0; k < n; ++k) {
      std::array<int, 3> c{0, 0, 0};
      c[d] = e;
      c[t3] = k;
      const std::size_t base = g.site_index(c[0], c[1], c[2]);
      const long long nboff =
          (g.periodic && e == n - 1) ? (long long)str[d] * (1 - n) : (long long)str[d];
      partial[(std::size_t)e * n + k] =
          kin_line(v, ph, wt.data(), base, str[in_ax], nboff, n) * (wt[k] / h);
    }
  return detail::combine_partials(partial);
}

double potential_sum(const ComplexField& u, const std::vector<double>& wt, Exec exec) {
  const UniformGrid& g = u.grid;
  const int n = g.n;
  const double* v = raw(u.values);
  const bool par = exec == Exec::Parallel;
  if (g.dim == 2) {
    std::vector<double> partial(n);
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i)
      partial[i] = pot_line(v, wt.data(), g.site_index(i, 0), 1, n) * wt[i];
    return detail::combine_partials(partial);
  }
  std::vector<double> partial((std::size_t)n * n);
#pragma omp parallel for schedule(static) collapse(2) if (par)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      partial[(std::size_t)i * n + j] =
          pot_line(v, wt.data(), g.site_index(i, j, 0), 1, n) * (wt[i] * wt[j]);
  return detail::combine_partials(partial);
}

EnergyBreakdown energy_core(const ComplexField& u, const LinkPhases& l, double kin_factor,
                            double pot_factor, Exec exec) {
  detail::require_pair(u, l);
  const std::vector<double> wt = detail::axis_weights(u.grid);
  double ksum = 0.0;
  for (int d = 0; d < u.grid.dim; ++d) ksum += kinetic_axis(u, l, d, wt, exec);
  EnergyBreakdown e;
  e.kinetic = kin_factor * ksum;
  e.potential = pot_factor * potential_sum(u, wt, exec);
  e.total = e.kinetic + e.potential;
  return e;
}

} // namespace

EnergyBreakdown energy_2d(const ComplexField& u, const LinkPhases& l, const GL2DParams& p,
                          Exec exec) {
  if (u.grid.dim != 2) throw std::invalid_argument("energy_2d needs a 2D field");
  if (!(p.eps > 0.0) || p.h_ex < 0.0) throw std::invalid_argument("bad 2D parameters");
  if (std::abs(l.coupling - p.h_ex) > 1e-9 * std::max(1.0, p.h_ex))
    throw std::invalid_argument("links coupling does not match h_ex");
  return energy_core(u, l, 1.0, 0.5 / (p.eps * p.eps), exec);
}

EnergyBreakdown energy_3d(const ComplexField& u, const LinkPhases& l, const GL3DParams& p,
                          Exec exec) {
  if (u.grid.dim != 3) throw std::invalid_argument("energy_3d needs a 3D field");
  if (std::abs(l.coupling - p.coupling()) > 1e-9 * std::max(1.0, p.coupling()))
    throw std::invalid_argument("links coupling does not match the 3D form");
  return energy_core(u, l, p.kin_factor(), p.pot_factor(), exec);
}

EnergyBreakdown energy_masked(const ComplexField& u, const LinkPhases& l, double kin_factor,
                              double pot_factor, const std::vector<std::uint8_t>& mask) {
  detail::require_pair(u, l);
  const UniformGrid& g = u.grid;
  if (mask.size() != g.num_sites()) throw std::invalid_argument("mask size mismatch");
  const double h = g.spacing();
  const std::size_t ns = g.num_sites();

  double pot = det_sum_terms(ns, [&](std::size_t s) {
    if (!mask[s]) return 0.0;
    auto c = g.site_coords(s);
    const double q = 1.0 - std::norm(u.values[s]);
    return g.site_weight(c[0], c[1], c[2]) * q * q;
  });

  double kin = 0.0;
  for (int d = 0; d < g.dim; ++d) {
    kin += det_sum_terms(ns, [&](std::size_t s) {
      if (!mask[s]) return 0.0;
      auto c = g.site_coords(s);
      if (!g.periodic && c[d] == g.n - 1) return 0.0;
      auto cn = c;
      cn[d] = (cn[d] + 1) % g.n;
      const std::size_t t = g.site_index(cn[0], cn[1], cn[2]);
      if (!mask[t]) return 0.0;
      double we = h;
      for (int a = 0; a < g.dim; ++a)
        if (a != d) we *= g.axis_weight(c[a]);
      const Complex diff = u.values[t] * l.phase[d][s] - u.values[s];
      return we * std::norm(diff) / (h * h);
    });
  }

  EnergyBreakdown e;
  e.kinetic = kin_factor * kin;
  e.potential = pot_factor * pot;
  e.total = e.kinetic + e.potential;
  return e;
}

void gauge_transform(ComplexField& u, LinkPhases& l, const std::vector<double>& chi) {
  detail::require_pair(u, l);
  const UniformGrid& g = u.grid;
  if (chi.size() != g.num_sites()) throw std::invalid_argument("chi size mismatch");
  const int zmax = g.dim == 3 ? g.n : 1;
  for (std::size_t s = 0; s < g.num_sites(); ++s)
    u.values[s] *= Complex(std::cos(chi[s]), std::sin(chi[s]));
  for (int d = 0; d < g.dim; ++d)
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < zmax; ++i2) {
          std::array<int, 3> c{i0, i1, i2};
          if (!g.periodic && c[d] == g.n - 1) continue;
          auto cn = c;
          cn[d] = (cn[d] + 1) % g.n;
          const std::size_t s = g.site_index(c[0], c[1], c[2]);
          const std::size_t t = g.site_index(cn[0], cn[1], cn[2]);
          l.theta[d][s] += chi[t] - chi[s];
        }
  l.refresh_phase();
}

std::vector<double> energy_density_field(const ComplexField& psi, const LinkPhases& l,
                                         double kappa, double H) {
  detail::require_pair(psi, l);
  if (!(kappa > 0.0) || !(H > 0.0) || !(kappa > H))
    throw std::invalid_argument("density normalizer needs kappa > H > 0");
  const UniformGrid& g = psi.grid;
  const double norm = kappa * H * std::log(std::sqrt(kappa / H));
  const double h = g.spacing();
  const double pot_factor = 0.5 * kappa * kappa;
  std::vector<double> dens(g.num_sites());
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < zmax; ++i2) {
        std::array<int, 3> c{i0, i1, i2};
        const std::size_t s = g.site_index(i0, i1, i2);
        const double ws = g.site_weight(i0, i1, i2);
        const double q = 1.0 - std::norm(psi.values[s]);
        double acc = pot_factor * q * q;
        for (int d = 0; d < g.dim; ++d) {
          // half of each incident edge term, in units of the site weight
          if (g.periodic || c[d] < g.n - 1) {
            auto cn = c;
            cn[d] = (cn[d] + 1) % g.n;
            const std::size_t t = g.site_index(cn[0], cn[1], cn[2]);
            double we = h;
            for (int a = 0; a < g.dim; ++a)
              if (a != d) we *= g.axis_weight(c[a]);
            acc += 0.5 * (we / ws) * std::norm(psi.values[t] * l.phase[d][s] - psi.values[s]) /
                   (h * h);
          }
          if (g.periodic || c[d] > 0) {
            auto cp = c;
            cp[d] = (cp[d] + g.n - 1) % g.n;
            const std::size_t t = g.site_index(cp[0], cp[1], cp[2]);
            double we = h;
            for (int a = 0; a < g.dim; ++a)
              if (a != d) we *= g.axis_weight(c[a]);
            acc += 0.5 * (we / ws) * std::norm(psi.values[s] * l.phase[d][t] - psi.values[t]) /
                   (h * h);
          }
        }
        dens[s] = acc / norm;
      }
  return dens;
}

SplitCheck split_inequality_check(const ComplexField& u, const LinkPhases& a_links,
                                  const LinkPhases& f_links, double delta) {
  detail::require_pair(u, f_links);
  if (!(a_links.grid == f_links.grid))
    throw std::invalid_argument("connections use different grids");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  if (std::abs(a_links.coupling - f_links.coupling) >
      1e-9 * std::max(1.0, std::abs(f_links.coupling)))
    throw std::invalid_argument("connections use different couplings");
  const UniformGrid& g = u.grid;
  const double h = g.spacing();
  const double c = f_links.coupling;
  const double cpaper = 2.0 / delta;
  const double csharp = 1.0 / delta - 1.0;

  SplitCheck out;
  out.min_margin_paper = out.min_margin_sharp = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int d = 0; d < g.dim; ++d)
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < zmax; ++i2) {
          std::array<int, 3> cc{i0, i1, i2};
          if (!g.periodic && cc[d] == g.n - 1) continue;
          auto cn = cc;
          cn[d] = (cn[d] + 1) % g.n;
          const std::size_t s = g.site_index(cc[0], cc[1], cc[2]);
          const std::size_t t = g.site_index(cn[0], cn[1], cn[2]);
          const double lhs = std::norm(u.values[t] * a_links.phase[d][s] - u.values[s]) / (h * h);
          const double df = std::norm(u.values[t] * f_links.phase[d][s] - u.values[s]) / (h * h);
          const double dev = std::abs(a_links.theta[d][s] - f_links.theta[d][s]) / (c * h);
          out.max_field_dev = std::max(out.max_field_dev, dev);
          const double pen = c * c * dev * dev * std::norm(u.values[t]);
          out.min_margin_paper =
              std::min(out.min_margin_paper, lhs - ((1.0 - delta) * df - cpaper * pen));
          out.min_margin_sharp =
              std::min(out.min_margin_sharp, lhs - ((1.0 - delta) * df - csharp * pen));
          scale = std::max(scale, std::abs(lhs) + std::abs(df) + pen);
        }
  const double tol = 1e-10 * std::max(1.0, scale);
  out.holds_paper = out.min_margin_paper >= -tol;
  out.holds_sharp = out.min_margin_sharp >= -tol;
  return out;
}

} // namespace glv
