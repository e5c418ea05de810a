#include "glv/minimize.hpp"

#include "glv/periodic.hpp"
#include "glv/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

namespace glv {

namespace {

double unit_double(std::mt19937_64& rng) { return (double)(rng() >> 11) * 0x1.0p-53; }

double grad_max(const std::vector<Complex>& g) {
  double m = 0.0;
  for (const Complex& z : g) m = std::max(m, std::abs(z));
  return m;
}

ComplexField random_phase_field(const UniformGrid& g, FieldBC bc, double flux,
                                unsigned long long seed) {
  ComplexField u = make_field(g, bc, flux);
  std::mt19937_64 rng(seed);
  for (Complex& z : u.values) {
    const double th = 2.0 * M_PI * unit_double(rng);
    z = Complex(std::cos(th), std::sin(th));
  }
  return u;
}

struct Problem {
  std::function<EnergyBreakdown(const ComplexField&)> energy;
  std::function<std::vector<Complex>(const ComplexField&)> grad;
  double alpha0 = 0.0;      // stable step from the local curvature bound
  double guess_core = 0.0;  // core scale for the vortex-lattice start
};

struct RunOutcome {
  ComplexField u;
  EnergyBreakdown energy;
  long long iterations = 0;
  bool converged = false;
  double gmax = 0.0;
};

RunOutcome descend(ComplexField u, const Problem& pr, const MinimizeOptions& o, Exec exec) {
  const long long ns = (long long)u.values.size();
  const bool par = exec == Exec::Parallel;

  EnergyBreakdown eb = pr.energy(u);
  std::vector<Complex> g = pr.grad(u);
  double gmax = grad_max(g);

  ComplexField ut = u;
  std::vector<Complex> s(ns), y(ns);
  double ring[10] = {0};
  double alpha_prev = pr.alpha0;

  RunOutcome out;
  long long it = 0;
  bool conv = false;
  for (; it < o.max_iter; ++it) {
    if (gmax <= o.tol_grad) {
      conv = true;
      break;
    }
    if (it >= 10 &&
        std::abs(ring[it % 10] - eb.total) <= o.tol_energy * std::max(1.0, std::abs(eb.total)))
      break;
    ring[it % 10] = eb.total;

    double a = o.step_rule == StepRule::Fixed
                   ? (o.fixed_step > 0.0 ? o.fixed_step : pr.alpha0)
                   : alpha_prev;
    EnergyBreakdown ebt;
    int halvings = 0;
    for (;;) {
#pragma omp parallel for schedule(static) if (par)
      for (long long i = 0; i < ns; ++i) ut.values[i] = u.values[i] - a * g[i];
      ebt = pr.energy(ut);
      if (ebt.total <= eb.total || halvings >= 60) break;
      a *= 0.5;
      ++halvings;
    }
    if (!(ebt.total <= eb.total)) {
      // no descent along -g at any representable step: let the energy-window
      // stop close the run out
      alpha_prev = a;
      continue;
    }

#pragma omp parallel for schedule(static) if (par)
    for (long long i = 0; i < ns; ++i) s[i] = ut.values[i] - u.values[i];
    u.values.swap(ut.values);
    eb = ebt;
    std::vector<Complex> gn = pr.grad(u);
#pragma omp parallel for schedule(static) if (par)
    for (long long i = 0; i < ns; ++i) y[i] = gn[i] - g[i];
    g.swap(gn);
    gmax = grad_max(g);

    if (o.step_rule == StepRule::Adaptive) {
      const double sy = det_sum_terms(
          ns,
          [&](long long i) { return s[i].real() * y[i].real() + s[i].imag() * y[i].imag(); },
          exec);
      const double yy = det_sum_terms(
          ns,
          [&](long long i) { return y[i].real() * y[i].real() + y[i].imag() * y[i].imag(); },
          exec);
      const double bb = sy / yy;
      alpha_prev = std::isfinite(bb) && bb > 0.0 ? bb : a;
    }
  }

  out.u = std::move(u);
  out.energy = eb;
  out.iterations = it;
  out.converged = conv;
  out.gmax = gmax;
  return out;
}

MinimizeResult run_restarts(const UniformGrid& g, FieldBC bc, double flux, const Problem& pr,
                            const MinimizeOptions& o, Exec exec) {
  if (o.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (o.max_iter < 0) throw std::invalid_argument("max_iter must be nonnegative");

  MinimizeResult best;
  bool have = false;
  for (int r = 0; r < o.restarts; ++r) {
    ComplexField u0 = make_field(g, bc, flux);
    if (r == 0 && o.init_field != nullptr) {
      if (o.init_field->grid != g || o.init_field->bc != bc)
        throw std::invalid_argument("init_field does not match the requested grid");
      u0 = *o.init_field;
    } else if (r == 0 && o.init == InitKind::RandomPhase) {
      u0 = random_phase_field(g, bc, flux, o.seed);
    } else if (r == 0 && o.init == InitKind::VortexLattice) {
      u0 = vortex_lattice_guess(g, flux, pr.guess_core);
    } else if (r > 0) {
      u0 = random_phase_field(g, bc, flux, o.seed + (unsigned long long)r);
    }
    RunOutcome run = descend(std::move(u0), pr, o, exec);
    if (!have || run.energy.total < best.energy.total) {
      have = true;
      best.field = std::move(run.u);
      best.energy = run.energy;
      best.iterations = run.iterations;
      best.converged = run.converged;
      best.grad_norm = run.gmax;
      best.best_of = r;
    }
  }
  return best;
}

} // namespace

ComplexField vortex_lattice_guess(const UniformGrid& g, double flux, double eps_core) {
  ComplexField u = make_field(g, g.periodic ? FieldBC::MagneticPeriodic : FieldBC::Natural, flux);
  const int N = (int)std::llround(std::sqrt(std::max(0.0, flux) / (2.0 * M_PI)));
  if (N < 1) return u;
  const double L = g.side, cs = L / N;
  const double core = eps_core > 0.0 ? eps_core : 0.5 * cs / 4.0;
  std::vector<double> centers(N);
  for (int k = 0; k < N; ++k) centers[k] = -0.5 * L + (k + 0.5) * cs;
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1) {
      const double x = g.axis_pos(0, i0), yv = g.axis_pos(1, i1);
      // distance to the nearest lattice point via per-axis folding
      auto fold = [&](double t) {
        const double w = (t + 0.5 * L) / cs;
        return (w - std::floor(w) - 0.5) * cs;
      };
      const double rho = std::min(1.0, std::hypot(fold(x), fold(yv)) / core);
      double phase = 0.0;
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) phase += std::atan2(yv - centers[k], x - centers[j]);
      const Complex val = rho * Complex(std::cos(phase), std::sin(phase));
      for (int i2 = 0; i2 < zmax; ++i2) u.values[g.site_index(i0, i1, i2)] = val;
    }
  return u;
}

MinimizeResult minimize_2d(const GL2DParams& p, FieldBC bc, int grid_n,
                           const MinimizeOptions& opts, Exec exec) {
  if (!(p.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(p.h_ex >= 0.0)) throw std::invalid_argument("h_ex must be nonnegative");
  const bool periodic = bc == FieldBC::MagneticPeriodic;
  double h_ex_used = p.h_ex;
  if (periodic) h_ex_used = quantize_flux(p.h_ex).h_ex;

  const UniformGrid g = make_grid_2d(grid_n, 1.0, periodic);
  const double h = g.spacing();
  if (h > 0.5 * p.eps)
    throw std::invalid_argument("grid too coarse for the core scale: need spacing <= eps/2");
  if (h_ex_used > 0.0 && h > 0.25 * std::sqrt(2.0 * M_PI / h_ex_used))
    throw std::invalid_argument(
        "grid too coarse for the vortex spacing: need spacing <= sqrt(2 pi / h_ex)/4");

  const LinkPhases l = field_links(g, h_ex_used);
  const GL2DParams pe{h_ex_used, p.eps};
  Problem pr;
  pr.energy = [&](const ComplexField& u) { return energy_2d(u, l, pe, exec); };
  pr.grad = [&](const ComplexField& u) { return energy_gradient_2d(u, l, pe, exec); };
  pr.alpha0 = 1.0 / (8.0 + 4.0 * h * h / (p.eps * p.eps));
  pr.guess_core = p.eps;

  ComplexField warm;  // owns the prolonged start for the duration of the run
  MinimizeOptions o = opts;
  if (periodic && opts.coarse_start > 0 && opts.coarse_start < grid_n &&
      opts.init_field == nullptr) {
    MinimizeOptions oc = opts;
    oc.coarse_start = 0;
    const MinimizeResult coarse = minimize_2d(p, bc, opts.coarse_start, oc, exec);
    warm = prolong_cell_2d(coarse.field, grid_n);
    o.init_field = &warm;
  }
  MinimizeResult res = run_restarts(g, bc, h_ex_used, pr, o, exec);
  res.h_ex_requested = p.h_ex;
  res.h_ex_used = h_ex_used;
  return res;
}

MinimizeResult minimize_3d(double b, double R, int grid_n, const MinimizeOptions& opts,
                           Exec exec) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");

  const UniformGrid g = make_grid_3d(grid_n, R, false);
  const double h = g.spacing();
  if (h > 0.5 * std::sqrt(b))
    throw std::invalid_argument("grid too coarse for the core scale: need spacing <= sqrt(b)/2");
  if (h > 0.25 * std::sqrt(2.0 * M_PI))
    throw std::invalid_argument(
        "grid too coarse for the vortex spacing: need spacing <= sqrt(2 pi)/4");

  const LinkPhases l = field_links(g, 1.0);
  const GL3DParams pe = GL3DParams::gform(b);
  Problem pr;
  pr.energy = [&](const ComplexField& u) { return energy_3d(u, l, pe, exec); };
  pr.grad = [&](const ComplexField& u) { return energy_gradient_3d(u, l, pe, exec); };
  pr.alpha0 = 1.0 / (12.0 * pe.kin_factor() * h + 8.0 * pe.pot_factor() * h * h * h);
  pr.guess_core = std::sqrt(b);

  return run_restarts(g, FieldBC::Natural, R * R, pr, opts, exec);
}

MinimizeResult minimize_from_2d(const ComplexField& u0, const LinkPhases& l,
                                const GL2DParams& p, const MinimizeOptions& opts, Exec exec) {
  Problem pr;
  pr.energy = [&](const ComplexField& u) { return energy_2d(u, l, p, exec); };
  pr.grad = [&](const ComplexField& u) { return energy_gradient_2d(u, l, p, exec); };
  const double h = u0.grid.spacing();
  pr.alpha0 = 1.0 / (8.0 + 4.0 * h * h / (p.eps * p.eps));
  RunOutcome run = descend(u0, pr, opts, exec);
  MinimizeResult res;
  res.field = std::move(run.u);
  res.energy = run.energy;
  res.iterations = run.iterations;
  res.converged = run.converged;
  res.grad_norm = run.gmax;
  res.h_ex_requested = p.h_ex;
  res.h_ex_used = p.h_ex;
  return res;
}

MinimizeResult minimize_from_3d(const ComplexField& u0, const LinkPhases& l,
                                const GL3DParams& p, const MinimizeOptions& opts, Exec exec) {
  Problem pr;
  pr.energy = [&](const ComplexField& u) { return energy_3d(u, l, p, exec); };
  pr.grad = [&](const ComplexField& u) { return energy_gradient_3d(u, l, p, exec); };
  const double h = u0.grid.spacing();
  pr.alpha0 = 1.0 / (12.0 * p.kin_factor() * h + 8.0 * p.pot_factor() * h * h * h);
  RunOutcome run = descend(u0, pr, opts, exec);
  MinimizeResult res;
  res.field = std::move(run.u);
  res.energy = run.energy;
  res.iterations = run.iterations;
  res.converged = run.converged;
  res.grad_norm = run.gmax;
  return res;
}

RefineReport refine_estimate(Estimator est, double p1, double p2,
                             const std::vector<int>& grid_schedule,
                             const MinimizeOptions& opts, Exec exec) {
  if (grid_schedule.size() < 2)
    throw std::invalid_argument("grid schedule needs at least two entries");
  RefineReport rep;
  for (int n : grid_schedule) {
    MinimizeResult r;
    switch (est) {
      case Estimator::m0: r = minimize_2d({p1, p2}, FieldBC::Natural, n, opts, exec); break;
      case Estimator::mp:
        r = minimize_2d({p1, p2}, FieldBC::MagneticPeriodic, n, opts, exec);
        break;
      case Estimator::M0: r = minimize_3d(p1, p2, n, opts, exec); break;
    }
    rep.steps.push_back({n, r.energy.total});
  }
  rep.final_total = rep.steps.back().total;
  const double prev = rep.steps[rep.steps.size() - 2].total;
  rep.error_proxy = std::abs(rep.final_total - prev);
  for (size_t k = 2; k < rep.steps.size(); ++k) {
    const double d0 = std::abs(rep.steps[k - 1].total - rep.steps[k - 2].total);
    const double d1 = std::abs(rep.steps[k].total - rep.steps[k - 1].total);
    if (d1 > d0) rep.proxies_decreasing = false;
  }
  return rep;
}

} // namespace glv
