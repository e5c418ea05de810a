#pragma once

#include "glv/energy.hpp"
#include "glv/grid.hpp"
#include "glv/links.hpp"

#include <vector>

namespace glv {

enum class StepRule { Fixed, Adaptive };
enum class InitKind { Uniform1, RandomPhase, VortexLattice };

struct MinimizeOptions {
  int max_iter = 20000;
  double tol_grad = 1e-6;     // on max_s |g_s|
  double tol_energy = 1e-12;  // relative energy change over a 10-iteration window
  StepRule step_rule = StepRule::Adaptive;
  InitKind init = InitKind::Uniform1;
  unsigned long long seed = 1;
  int restarts = 3;           // restart r >= 1 starts from RandomPhase(seed + r)
  double fixed_step = 0.0;    // StepRule::Fixed; 0 picks a curvature-bound default
  const ComplexField* init_field = nullptr;  // overrides init for restart 0
  // 2D magnetic-periodic runs only: pre-solve on this many sites per axis and
  // prolong the winner into the restart-0 start (cuts the long-wavelength
  // relaxation that dominates fine grids).  0 disables; ignored when
  // init_field is set or the value is not below grid_n.
  int coarse_start = 0;
};

struct MinimizeResult {
  ComplexField field;
  EnergyBreakdown energy;
  long long iterations = 0;  // accepted steps of the winning restart
  bool converged = false;    // gradient criterion met: grad_norm <= tol_grad
  double grad_norm = 0.0;    // max_s |g_s| at the returned field
  int best_of = 0;           // index of the winning restart
  double h_ex_requested = 0.0;
  double h_ex_used = 0.0;    // 2D periodic: snapped to a whole number of quanta
};

// Projected gradient descent with a monotone halving line search.  Adaptive
// steps use the two-point secant ratio <s,y>/<y,y>.  Iteration stops when
// max_s|g_s| <= tol_grad (sets converged) or when the relative energy change
// over 10 iterations falls below tol_energy.  Runs opts.restarts independent
// starts and keeps the lowest final energy, ties toward the lower index.
MinimizeResult minimize_2d(const GL2DParams& p, FieldBC bc, int grid_n,
                           const MinimizeOptions& opts, Exec exec = Exec::Parallel);

// Cube functional on side-R box: int b|(grad - iF)u|^2 + (1/2)(1-|u|^2)^2.
MinimizeResult minimize_3d(double b, double R, int grid_n, const MinimizeOptions& opts,
                           Exec exec = Exec::Parallel);

// Single descent from an explicit start on caller-provided links; no restarts
// and no resolution guards.  Descending a gauge-transformed start on the
// matching transformed links reproduces the energy trajectory.
MinimizeResult minimize_from_2d(const ComplexField& u0, const LinkPhases& l,
                                const GL2DParams& p, const MinimizeOptions& opts,
                                Exec exec = Exec::Parallel);
MinimizeResult minimize_from_3d(const ComplexField& u0, const LinkPhases& l,
                                const GL3DParams& p, const MinimizeOptions& opts,
                                Exec exec = Exec::Parallel);

enum class Estimator { m0, mp, M0 };

struct RefineStep {
  int grid_n = 0;
  double total = 0.0;
};

struct RefineReport {
  std::vector<RefineStep> steps;
  double final_total = 0.0;
  double error_proxy = 0.0;        // |last - previous|
  bool proxies_decreasing = true;  // successive |t_{k+1} - t_k| non-increasing
};

// Re-minimize across a growing grid schedule (>= 2 entries) and report the
// trajectory with |last - previous| as the discretization error proxy.
// m0: 2D natural cell; mp: 2D magnetic-periodic cell; M0: 3D cube.
// (p1, p2) read (h_ex, eps) for the 2D estimators and (b, R) for M0.
RefineReport refine_estimate(Estimator est, double p1, double p2,
                             const std::vector<int>& grid_schedule,
                             const MinimizeOptions& opts, Exec exec = Exec::Parallel);

// Starting guess with round(flux/2pi) ~ N^2 unit vortices on an N x N lattice:
// modulus ramps linearly to 1 over eps_core around each center, phase is the
// sum of single-vortex angles.  3D grids get the x3-invariant version.
ComplexField vortex_lattice_guess(const UniformGrid& g, double flux, double eps_core);

} // namespace glv
