#include "glv/vortex_lattice.hpp"

#include "glv/cell_poisson.hpp"
#include "glv/reduce.hpp"

#include <cmath>
#include <stdexcept>

namespace glv {

namespace {

// Tiled lookup of the mirror-symmetric cell potential on the full grid:
// representative index in [0, m) per axis (h(m) = h(0) by symmetry).
struct TiledCell {
  const CellSolution* sol;
  int m;      // intervals per cell
  int nn;     // full-grid sites per axis
  double at(int I, int J) const {
    I %= nn;
    if (I < 0) I += nn;
    J %= nn;
    if (J < 0) J += nn;
    return sol->h[(std::size_t)(I % m) * sol->n + (J % m)];
  }
  // averaged-endpoint edge integrals of the rotated gradient (-d2h, ... )
  double dx(int I, int J) const {
    return 0.25 * ((at(I, J + 1) - at(I, J - 1)) + (at(I + 1, J + 1) - at(I + 1, J - 1)));
  }
  double dy(int I, int J) const {
    return -0.25 * ((at(I + 1, J) - at(I - 1, J)) + (at(I + 1, J + 1) - at(I - 1, J + 1)));
  }
};

} // namespace

int choose_N(double h_ex) {
  if (!(h_ex >= 2.0 * M_PI))
    throw std::invalid_argument("flux below one quantum: no positive lattice count");
  // absolute nudge so exact boundaries like 8*pi land on the integer
  const int N = (int)std::floor(std::sqrt(h_ex / (2.0 * M_PI)) + 1e-12);
  return N < 1 ? 1 : N;
}

VortexLatticeConfig make_lattice_config(double h_ex, double eps, int cell_grid_n) {
  VortexLatticeConfig cfg;
  cfg.h_ex = h_ex;
  cfg.eps = eps;
  cfg.N = choose_N(h_ex);
  cfg.cell_side = 1.0 / cfg.N;
  cfg.cell_grid_n = cell_grid_n;
  if (!(eps > 0.0)) throw std::invalid_argument("core radius must be positive");
  if (!(eps < 0.5 * cfg.cell_side))
    throw std::invalid_argument("core radius must fit inside its cell");
  if (cell_grid_n < 16 || cell_grid_n % 2 != 0)
    throw std::invalid_argument("cell grid must be an even interval count >= 16");
  return cfg;
}

std::array<double, 2> lattice_center(const VortexLatticeConfig& cfg, int j0, int j1) {
  if (j0 < 0 || j1 < 0 || j0 >= cfg.N || j1 >= cfg.N)
    throw std::invalid_argument("cell index out of range");
  return {(j0 + 0.5) * cfg.cell_side - 0.5, (j1 + 0.5) * cfg.cell_side - 0.5};
}

CellSolution solve_cell_potential(const VortexLatticeConfig& cfg, int cell_grid_n) {
  if (cell_grid_n < 16 || cell_grid_n % 2 != 0)
    throw std::invalid_argument("cell grid must be an even interval count >= 16");
  const int m = cell_grid_n;
  const int n = m + 1;
  const double hc = cfg.cell_side / m;

  CellSolution sol;
  sol.n = n;
  sol.cell_side = cfg.cell_side;
  sol.source_flux = 2.0 * M_PI;
  sol.compat_field = 2.0 * M_PI * cfg.N * cfg.N;

  // single-site load at the center; its trapezoid integral is exactly 2*pi,
  // matching the integral of the constant over the cell
  std::vector<double> f((std::size_t)n * n, -sol.compat_field);
  f[(std::size_t)(m / 2) * n + (m / 2)] += sol.source_flux / (hc * hc);

  sol.h = neumann_poisson_solve(n, cfg.cell_side, f);
  sol.residual = neumann_residual(n, cfg.cell_side, sol.h, f);

  double wsum = 0.0, mean = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double wi = (i == 0 || i == m) ? 0.5 : 1.0;
      const double wj = (j == 0 || j == m) ? 0.5 : 1.0;
      wsum += wi * wj;
      mean += wi * wj * sol.h[(std::size_t)i * n + j];
    }
  mean /= wsum;
  for (double& v : sol.h) v -= mean;
  return sol;
}

double cell_gradient_energy_outside(const CellSolution& sol, double eps) {
  const int n = sol.n;
  const int m = n - 1;
  const double hc = sol.cell_side / m;
  auto at = [&](int i, int j) {
    if (i < 0) i = -i;
    if (i > m) i = 2 * m - i;
    if (j < 0) j = -j;
    if (j > m) j = 2 * m - j;
    return sol.h[(std::size_t)i * n + j];
  };
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -0.5 * sol.cell_side + i * hc;
      const double y = -0.5 * sol.cell_side + j * hc;
      if (std::hypot(x, y) < eps) continue;
      const double gx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hc);
      const double gy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * hc);
      const double wi = (i == 0 || i == m) ? 0.5 : 1.0;
      const double wj = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += wi * wj * hc * hc * (gx * gx + gy * gy);
    }
  return acc;
}

LinkPhases phase_link_field(const CellSolution& sol, const VortexLatticeConfig& cfg) {
  const int m = sol.n - 1;
  const int nn = cfg.N * m;
  UniformGrid gf = make_grid_2d(nn, 1.0, true);
  LinkPhases l = field_links(gf, cfg.h_ex);
  TiledCell tc{&sol, m, nn};
  for (int I = 0; I < nn; ++I)
    for (int J = 0; J < nn; ++J) {
      const std::size_t s = gf.site_index(I, J);
      l.theta[0][s] += tc.dx(I, J);
      l.theta[1][s] += tc.dy(I, J);
    }
  l.refresh_phase();
  return l;
}

std::vector<double> profile_rho(const UniformGrid& g, const VortexLatticeConfig& cfg) {
  if (g.dim != 2) throw std::invalid_argument("profile_rho needs a 2D grid");
  std::vector<double> rho(g.num_sites());
  auto fold = [&](double x) {
    double u = x + 0.5;
    int k = (int)std::floor(u * cfg.N);
    if (k < 0) k = 0;
    if (k >= cfg.N) k = cfg.N - 1;
    return u - (k + 0.5) * cfg.cell_side;
  };
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double dx = fold(g.axis_pos(0, i));
      const double dy = fold(g.axis_pos(1, j));
      const double r = std::hypot(dx, dy);
      rho[g.site_index(i, j)] = std::min(1.0, r / cfg.eps);
    }
  return rho;
}

LatticeAssembly assemble_and_energy(const VortexLatticeConfig& cfg, int cell_grid_n,
                                    Exec exec) {
  LatticeAssembly a;
  a.config = cfg;
  a.config.cell_grid_n = cell_grid_n;
  a.cell = solve_cell_potential(cfg, cell_grid_n);
  const int m = cell_grid_n;
  const int nn = cfg.N * m;
  a.grid = make_grid_2d(nn, 1.0, true);
  a.rho = profile_rho(a.grid, cfg);
  a.mismatch = cfg.h_ex - a.cell.compat_field;

  TiledCell tc{&a.cell, m, nn};
  a.rel_theta[0].assign(a.grid.num_sites(), 0.0);
  a.rel_theta[1].assign(a.grid.num_sites(), 0.0);
  for (int I = 0; I < nn; ++I)
    for (int J = 0; J < nn; ++J) {
      const std::size_t s = a.grid.site_index(I, J);
      a.rel_theta[0][s] = tc.dx(I, J);
      a.rel_theta[1][s] = tc.dy(I, J);
    }

  a.phases = field_links(a.grid, cfg.h_ex);
  for (int d = 0; d < 2; ++d)
    for (std::size_t s = 0; s < a.phases.theta[d].size(); ++s)
      a.phases.theta[d][s] += a.rel_theta[d][s];
  a.phases.refresh_phase();

  // uniform weights make every edge term plain |rho+ e^{i theta} - rho-|^2 and
  // every site term h^2 (1-rho^2)^2 / (2 eps^2)
  const int n = nn;
  const double h2 = a.grid.spacing() * a.grid.spacing();
  auto kin_axis = [&](const std::vector<double>& th, int d) {
    return det_sum_terms(
        (std::size_t)n * n,
        [&](std::size_t s) {
          const int I = (int)(s / n), J = (int)(s % n);
          const int In = d == 0 ? (I + 1) % n : I;
          const int Jn = d == 1 ? (J + 1) % n : J;
          const std::size_t t = (std::size_t)In * n + Jn;
          const double c = std::cos(th[s]), si = std::sin(th[s]);
          const double dr = a.rho[t] * c - a.rho[s];
          const double di = a.rho[t] * si;
          return dr * dr + di * di;
        },
        exec);
  };
  const double pot = det_sum_terms(
      (std::size_t)n * n,
      [&](std::size_t s) {
        const double q = 1.0 - a.rho[s] * a.rho[s];
        return h2 * q * q / (2.0 * cfg.eps * cfg.eps);
      },
      exec);

  a.energy.kinetic = kin_axis(a.rel_theta[0], 0) + kin_axis(a.rel_theta[1], 1);
  a.energy.potential = pot;
  a.energy.total = a.energy.kinetic + a.energy.potential;
  a.per_cell_total = a.energy.total / (cfg.N * cfg.N);

  if (std::abs(a.mismatch) > 1e-12) {
    LinkPhases mis = field_links(a.grid, a.mismatch);
    std::array<std::vector<double>, 2> th_unit = a.rel_theta;
    for (int d = 0; d < 2; ++d)
      for (std::size_t s = 0; s < th_unit[d].size(); ++s) th_unit[d][s] -= mis.theta[d][s];
    a.unit_winding_total = kin_axis(th_unit[0], 0) + kin_axis(th_unit[1], 1) + pot;
  } else {
    a.unit_winding_total = a.energy.total;
  }
  return a;
}

} // namespace glv
