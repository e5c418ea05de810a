#include "glv/asymptotics.hpp"

#include "glv/periodic.hpp"
#include "glv/vorticity.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace glv {

double predicted_C0(double kappa, double H, double volume) {
  if (!(H > 0.0) || !(kappa > H))
    throw std::invalid_argument("leading coefficient needs kappa > H > 0");
  return volume * kappa * H * 0.5 * std::log(kappa / H);
}

double predicted_m0(double h_ex, double eps) {
  if (!(h_ex > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("h_ex and eps must be positive");
  const double core = eps * std::sqrt(h_ex);
  if (!(core < 1.0))
    throw std::invalid_argument("law needs eps sqrt(h_ex) < 1");
  return h_ex * std::log(1.0 / core);
}

double predicted_M0(double b, double R) {
  if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b must lie in (0,1)");
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  return R * R * R * b * std::log(1.0 / std::sqrt(b));
}

double f_asymptotic(double b) {
  if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b must lie in (0,1)");
  return 0.5 * b * std::log(1.0 / std::sqrt(b));
}

Bracket f_bracket(double b) {
  if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b must lie in (0,1)");
  return {b - 0.5 * b * b, f_asymptotic(b)};
}

double bracket_crossover() {
  // g(b) = upper - lower is decreasing here: positive at 1e-4, negative at 0.5
  auto g = [](double b) { return f_asymptotic(b) - (b - 0.5 * b * b); };
  double lo = 1e-4, hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AsymptoticReport f_estimate(double b, double R, int grid_n, const MinimizeOptions& opts,
                            Exec exec) {
  if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("b must lie in (0,1)");
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const PeriodicCellSpec spec = quantize_flux(R * R);
  if (spec.flux_quanta < 1)
    throw std::invalid_argument("R too small: the cell flux snaps to zero quanta");

  AsymptoticReport rep;
  rep.b = b;
  rep.r_requested = R;
  rep.r_used = std::sqrt(spec.h_ex);
  rep.h_ex = spec.h_ex;
  rep.eps = std::sqrt(b) / rep.r_used;
  rep.grid_n = grid_n;
  rep.seed = opts.seed;

  const MinimizeResult mr =
      minimize_2d({rep.h_ex, rep.eps}, FieldBC::MagneticPeriodic, grid_n, opts, exec);
  rep.measured = b * mr.energy.total / (2.0 * rep.r_used * rep.r_used);
  rep.predicted = f_asymptotic(b);
  rep.ratio = rep.measured / rep.predicted;
  rep.error_scale = 1.0 / rep.r_used;
  rep.converged = mr.converged;
  return rep;
}

double kendall_tau(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("series lengths differ");
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  long long acc = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xs[j] - xs[i], dy = ys[j] - ys[i];
      if (dx != 0.0 && dy != 0.0) acc += (dx > 0.0) == (dy > 0.0) ? 1 : -1;
    }
  return (double)acc / (0.5 * (double)n * (double)(n - 1));
}

std::string law_name(Law law) {
  switch (law) {
    case Law::m0: return "m0";
    case Law::mp: return "mp";
    case Law::M0: return "M0";
    case Law::C0: return "C0";
    case Law::f: return "f";
  }
  return "?";
}

StudyTable convergence_study(Law law, const std::vector<std::array<double, 2>>& points,
                             const std::vector<int>& grids, const MinimizeOptions& opts,
                             Exec exec) {
  StudyTable table;
  if (points.empty()) return table;
  if (grids.size() != 1 && grids.size() != points.size())
    throw std::invalid_argument("grids must hold one shared size or one per point");

  for (std::size_t k = 0; k < points.size(); ++k) {
    StudyRow row;
    row.law = law;
    row.p1 = points[k][0];
    row.p2 = points[k][1];
    row.grid_n = grids.size() == 1 ? grids[0] : grids[k];
    row.seed = opts.seed;
    try {
      switch (law) {
        case Law::m0: {
          const MinimizeResult mr =
              minimize_2d({row.p1, row.p2}, FieldBC::Natural, row.grid_n, opts, exec);
          row.measured = mr.energy.total;
          row.predicted = predicted_m0(row.p1, row.p2);
          row.converged = mr.converged;
          row.scale = 1.0 / row.p2;
          break;
        }
        case Law::mp: {
          const MinimizeResult mr =
              minimize_2d({row.p1, row.p2}, FieldBC::MagneticPeriodic, row.grid_n, opts, exec);
          row.measured = mr.energy.total;
          row.predicted = predicted_m0(mr.h_ex_used, row.p2);
          row.converged = mr.converged;
          row.scale = 1.0 / row.p2;
          break;
        }
        case Law::M0: {
          const MinimizeResult mr = minimize_3d(row.p1, row.p2, row.grid_n, opts, exec);
          row.measured = mr.energy.total;
          row.predicted = predicted_M0(row.p1, row.p2);
          row.converged = mr.converged;
          row.scale = row.p2;
          break;
        }
        case Law::C0: {
          const C0Estimate ce = c0_estimate(row.p1, row.p2, row.grid_n, opts, exec);
          row.measured = ce.measured;
          row.predicted = ce.predicted;
          row.converged = ce.converged;
          row.scale = row.p1;
          break;
        }
        case Law::f: {
          const AsymptoticReport ar = f_estimate(row.p1, row.p2, row.grid_n, opts, exec);
          row.measured = ar.measured;
          row.predicted = ar.predicted;
          row.converged = ar.converged;
          row.scale = 1.0 / row.p1;
          break;
        }
      }
      row.ratio = row.measured / row.predicted;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    table.rows.push_back(row);
  }

  std::vector<double> scales, gaps;
  for (const StudyRow& r : table.rows) {
    if (r.failed) continue;
    scales.push_back(r.scale);
    gaps.push_back(std::abs(r.ratio - 1.0));
    table.final_ratio = r.ratio;
  }
  table.usable = (int)scales.size();
  if (table.usable >= 2) table.tau_gap = kendall_tau(scales, gaps);
  table.trend_ok = table.usable >= 4 && table.tau_gap <= -0.8;
  return table;
}

C0Estimate c0_estimate(double kappa, double H, int grid_n, const MinimizeOptions& opts,
                       Exec exec) {
  C0Estimate ce;
  ce.schedule = schedule_from_kappaH(kappa, H);
  const PeriodicCellSpec spec = quantize_flux(ce.schedule.h_ex);
  if (spec.flux_quanta < 1)
    throw std::invalid_argument("regime too shallow: the cell flux snaps to zero quanta");
  ce.h_ex_used = spec.h_ex;
  ce.r_used = std::sqrt(spec.h_ex);
  ce.eps_used = std::sqrt(ce.schedule.b) / ce.r_used;
  ce.grid_n = grid_n;

  if (grid_n < 3) throw std::invalid_argument("grid too coarse");
  const double h3 = ce.r_used / (grid_n - 1);
  if (h3 > 0.5 * std::sqrt(ce.schedule.b) || h3 > 0.25 * std::sqrt(2.0 * M_PI))
    throw std::invalid_argument("grid too coarse for the core and cell scales");

  // transverse-periodic cell minimum, stored on grid_n - 1 sites so its
  // one-cell natural extension lands exactly on the cube sites
  const MinimizeResult flat = minimize_2d({ce.h_ex_used, ce.eps_used},
                                          FieldBC::MagneticPeriodic, grid_n - 1, opts, exec);

  const ComplexField u3 = lift_2d_to_3d(flat.field, ce.r_used, grid_n);
  const LinkPhases l3 = field_links(u3.grid, 1.0);
  ce.cell_energy = energy_3d(u3, l3, GL3DParams::gform(ce.schedule.b), exec).total;
  ce.converged = flat.converged;
  const double root_kh = std::sqrt(kappa * H);
  ce.physical_side = ce.r_used / root_kh;
  // physical cell energy, times cells per unit volume
  const double cell_physical = ce.cell_energy / (ce.schedule.b * root_kh);
  ce.measured = cell_physical / (ce.physical_side * ce.physical_side * ce.physical_side);
  ce.predicted = predicted_C0(kappa, H, 1.0);
  ce.ratio = ce.measured / ce.predicted;
  return ce;
}

CorollaryReport corollary_diagnostics(const ComplexField& psi, const LinkPhases& l,
                                      double kappa, double H, double cube_side) {
  if (psi.grid.dim != 3 || psi.grid.periodic)
    throw std::invalid_argument("diagnostics need a natural 3D field");
  const UniformGrid& g = psi.grid;

  CorollaryReport rep;
  const std::vector<double> density = energy_density_field(psi, l, kappa, H);
  const CubeTiling tiles = cube_tiling(DomainSpec::box(g.side, g.side, g.side), cube_side);
  if (tiles.n_interior < 1)
    throw std::invalid_argument("cube side leaves no interior cubes");
  const double half = 0.5 * cube_side + 1e-12 * cube_side;
  double dev_sum = 0.0;
  for (const auto& c : tiles.centers) {
    double wsum = 0.0, dsum = 0.0;
    for (int i0 = 0; i0 < g.n; ++i0) {
      if (std::abs(g.axis_pos(0, i0) - c[0]) > half) continue;
      for (int i1 = 0; i1 < g.n; ++i1) {
        if (std::abs(g.axis_pos(1, i1) - c[1]) > half) continue;
        for (int i2 = 0; i2 < g.n; ++i2) {
          if (std::abs(g.axis_pos(2, i2) - c[2]) > half) continue;
          const double w = g.site_weight(i0, i1, i2);
          wsum += w;
          dsum += w * density[g.site_index(i0, i1, i2)];
        }
      }
    }
    if (wsum > 0.0) dev_sum += std::abs(dsum / wsum - 1.0);
  }
  rep.n_cubes = tiles.n_interior;
  rep.density_dev_l1 = dev_sum / tiles.n_interior;

  double wind_sum = 0.0;
  for (int k = 0; k < g.n; ++k) wind_sum += slice_winding(psi, l, 0, 1, k).total;
  rep.n_slices = g.n;
  const double cell_flux = l.coupling * g.side * g.side;
  rep.winding_per_flux = 2.0 * M_PI * (wind_sum / g.n) / cell_flux;

  const Vorticity3D v = vorticity_3d(psi, l);
  // arrays are site-indexed with zero padding where no plaquette starts
  const double n_plaq = g.periodic ? (double)g.num_sites()
                                   : (double)(g.n - 1) * (g.n - 1) * g.n;
  auto mean = [&](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / n_plaq;
  };
  rep.mu3_mean = mean(v.mu[2]);
  rep.current3_mean = mean(v.current_part[2]);
  rep.flux3_mean = mean(v.flux_part[2]);
  return rep;
}

CorollaryReport corollary_diagnostics(const MinimizeResult& r, const ParamSchedule& s,
                                      double cube_side) {
  const UniformGrid& gr = r.field.grid;
  if (gr.dim != 3 || gr.periodic)
    throw std::invalid_argument("diagnostics need a natural 3D minimizer");
  const double root_kh = std::sqrt(s.kappa * s.H);
  const UniformGrid gp = make_grid_3d(gr.n, gr.side / root_kh, false);
  ComplexField psi = make_field(gp, FieldBC::Natural);
  psi.values = r.field.values;
  const LinkPhases lp = field_links(gp, s.kappa * s.H);
  return corollary_diagnostics(psi, lp, s.kappa, s.H, cube_side);
}

} // namespace glv
