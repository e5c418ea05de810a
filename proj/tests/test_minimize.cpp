#include "doctest.h"

#include "glv/energy.hpp"
#include "glv/minimize.hpp"
#include "glv/periodic.hpp"
#include "glv/vortex_lattice.hpp"
#include "util.hpp"

#include <omp.h>

#include <cmath>

using namespace glv;

namespace {

double max_modulus(const ComplexField& u) {
  double m = 0.0;
  for (const Complex& z : u.values) m = std::max(m, std::abs(z));
  return m;
}

} // namespace

// ---------------------------------------------------------------------------
// trivial minimum and input validation
// ---------------------------------------------------------------------------

TEST_CASE("zero-field minimum is the uniform state, found immediately") {
  MinimizeOptions o;
  o.restarts = 1;
  MinimizeResult r = minimize_2d({0.0, 0.1}, FieldBC::Natural, 48, o);
  CHECK(r.energy.total == 0.0);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.grad_norm == 0.0);
  for (const Complex& z : r.field.values) CHECK(std::abs(z) == doctest::Approx(1.0));
}

TEST_CASE("resolution guards and bad options are hard errors") {
  MinimizeOptions o;
  // core scale: natural 96-site grid has spacing 1/95 > 0.02/2
  CHECK_THROWS_AS(minimize_2d({8.0 * M_PI, 0.02}, FieldBC::Natural, 96, o),
                  std::invalid_argument);
  // vortex scale: 900 quanta need spacing <= sqrt(2 pi / h_ex)/4 ~ 1/120
  CHECK_THROWS_AS(minimize_2d({2.0 * M_PI * 900.0, 0.2}, FieldBC::MagneticPeriodic, 32, o),
                  std::invalid_argument);
  CHECK_THROWS_AS(minimize_3d(0.01, 4.0, 12, o), std::invalid_argument);
  MinimizeOptions bad = o;
  bad.restarts = 0;
  CHECK_THROWS_AS(minimize_2d({0.0, 0.1}, FieldBC::Natural, 24, bad), std::invalid_argument);
  CHECK_THROWS_AS(refine_estimate(Estimator::m0, 0.0, 0.1, {64}, o), std::invalid_argument);
}

TEST_CASE("periodic runs snap the applied field to whole quanta and report both") {
  MinimizeOptions o;
  o.restarts = 1;
  o.max_iter = 0;
  MinimizeResult r = minimize_2d({6.4, 0.2}, FieldBC::MagneticPeriodic, 24, o);
  CHECK(r.h_ex_requested == 6.4);
  CHECK(r.h_ex_used == 2.0 * M_PI);
  CHECK(r.field.flux == 2.0 * M_PI);
}

// ---------------------------------------------------------------------------
// descent properties
// ---------------------------------------------------------------------------

TEST_CASE("longer runs never end higher: prefix totals are non-increasing") {
  MinimizeOptions o;
  o.init = InitKind::VortexLattice;
  o.restarts = 1;
  o.tol_grad = 1e-14;
  o.tol_energy = 0.0;
  double prev = 0.0;
  bool first = true;
  for (int k : {0, 5, 20, 80, 320}) {
    o.max_iter = k;
    MinimizeResult r = minimize_2d({8.0 * M_PI, 0.05}, FieldBC::MagneticPeriodic, 48, o);
    if (!first) CHECK(r.energy.total <= prev);
    prev = r.energy.total;
    first = false;
  }
}

TEST_CASE("identical options give bit-identical results at any thread count") {
  MinimizeOptions o;
  o.init = InitKind::RandomPhase;
  o.seed = 33;
  o.restarts = 1;
  o.max_iter = 150;
  o.tol_grad = 1e-14;
  MinimizeResult a = minimize_2d({8.0 * M_PI, 0.05}, FieldBC::MagneticPeriodic, 48, o,
                                 Exec::Serial);
  omp_set_num_threads(4);
  MinimizeResult b = minimize_2d({8.0 * M_PI, 0.05}, FieldBC::MagneticPeriodic, 48, o,
                                 Exec::Parallel);
  omp_set_num_threads(1);
  CHECK(a.energy.total == b.energy.total);
  CHECK(a.iterations == b.iterations);
  CHECK(a.grad_norm == b.grad_norm);
  REQUIRE(a.field.values.size() == b.field.values.size());
  for (size_t i = 0; i < a.field.values.size(); ++i) {
    CHECK(a.field.values[i].real() == b.field.values[i].real());
    CHECK(a.field.values[i].imag() == b.field.values[i].imag());
  }

  MinimizeOptions o3 = o;
  o3.max_iter = 60;
  MinimizeResult c = minimize_3d(0.25, 2.0, 10, o3, Exec::Serial);
  omp_set_num_threads(4);
  MinimizeResult d = minimize_3d(0.25, 2.0, 10, o3, Exec::Parallel);
  omp_set_num_threads(1);
  CHECK(c.energy.total == d.energy.total);
}

TEST_CASE("gauge-conjugate starts descend to totals equal at 1e-10 relative") {
  UniformGrid g = make_grid_2d(24, 1.0, true);
  const double h_ex = 2.0 * M_PI;
  ComplexField u0 = testutil::random_field(g, h_ex, 57);
  LinkPhases l = field_links(g, h_ex);
  ComplexField u1 = u0;
  LinkPhases l1 = l;
  gauge_transform(u1, l1, testutil::random_phases(g.num_sites(), 58));

  MinimizeOptions o;
  o.tol_grad = 1e-8;
  o.max_iter = 4000;
  const GL2DParams p{h_ex, 0.15};
  MinimizeResult a = minimize_from_2d(u0, l, p, o);
  MinimizeResult b = minimize_from_2d(u1, l1, p, o);
  CHECK(b.energy.total == doctest::Approx(a.energy.total).epsilon(1e-10));
}

// ---------------------------------------------------------------------------
// estimator ordering and certificates
// ---------------------------------------------------------------------------

TEST_CASE("estimator ordering on matched grids with convergence certificates") {
  const double h_ex = 8.0 * M_PI, eps = 0.05;
  LatticeAssembly lat = assemble_and_energy(make_lattice_config(h_ex, eps, 24), 24);

  MinimizeOptions o;
  o.init = InitKind::VortexLattice;
  o.restarts = 2;
  MinimizeResult mp = minimize_2d({h_ex, eps}, FieldBC::MagneticPeriodic, 48, o);
  CHECK(mp.converged);
  CHECK(mp.energy.total < lat.energy.total);

  // modulus bound and residual certificate at the converged point
  CHECK(max_modulus(mp.field) <= 1.0 + 1e-8);
  const UniformGrid& g = mp.field.grid;
  LinkPhases l = field_links(g, mp.h_ex_used);
  std::vector<Complex> grad = energy_gradient_2d(mp.field, l, {mp.h_ex_used, eps});
  const double h = g.spacing();
  CHECK(gl_residual(grad, g) <= o.tol_grad / (h * h));

  // the one-cell extension hands the periodic minimizer to the natural
  // problem at exactly the same energy, so the natural estimate can only
  // move down from there
  ComplexField ext = extend_to_natural(mp.field);
  MinimizeOptions oe;
  oe.restarts = 1;
  oe.init_field = &ext;
  oe.max_iter = 0;
  MinimizeResult bridge = minimize_2d({h_ex, eps}, FieldBC::Natural, 49, oe);
  CHECK(bridge.energy.total == doctest::Approx(mp.energy.total).epsilon(1e-12));
  oe.max_iter = 20000;
  MinimizeResult m0 = minimize_2d({h_ex, eps}, FieldBC::Natural, 49, oe);
  CHECK(m0.energy.total <= mp.energy.total * (1.0 + 1e-12));
  CHECK(m0.energy.total < lat.energy.total);
}

TEST_CASE("three-dimensional descent stays within the modulus bound") {
  MinimizeOptions o;
  o.restarts = 1;
  o.init = InitKind::VortexLattice;
  o.max_iter = 4000;
  MinimizeResult r = minimize_3d(0.25, 2.0, 12, o);
  CHECK(r.energy.total >= 0.0);
  CHECK(r.energy.total < 20.0);
  CHECK(max_modulus(r.field) <= 1.0 + 1e-8);
}

// ---------------------------------------------------------------------------
// refinement reports
// ---------------------------------------------------------------------------

TEST_CASE("refinement on the zero-field problem reports zeros") {
  MinimizeOptions o;
  o.restarts = 1;
  RefineReport rep = refine_estimate(Estimator::m0, 0.0, 0.1, {64, 128}, o);
  REQUIRE(rep.steps.size() == 2);
  CHECK(rep.steps[0].total <= 1e-10);
  CHECK(rep.steps[1].total <= 1e-10);
  CHECK(rep.final_total <= 1e-10);
  CHECK(rep.error_proxy <= 1e-10);
  CHECK(rep.proxies_decreasing);
}

TEST_CASE("periodic refinement proxies shrink along the schedule") {
  MinimizeOptions o;
  o.init = InitKind::VortexLattice;
  o.restarts = 1;
  RefineReport rep =
      refine_estimate(Estimator::mp, 8.0 * M_PI, 0.05, {48, 64, 96, 128}, o);
  REQUIRE(rep.steps.size() == 4);
  for (const RefineStep& s : rep.steps) CHECK(s.total > 0.0);
  CHECK(rep.proxies_decreasing);
  CHECK(rep.error_proxy < 0.05);
  CHECK(rep.final_total == rep.steps.back().total);
}

TEST_CASE("whole-space refinement agrees with the frozen high-resolution value") {
  // same protocol at 512 sites gives 58.1312424
  const double ref512 = 58.1312424;
  MinimizeOptions o;
  o.init = InitKind::VortexLattice;
  o.restarts = 1;
  o.max_iter = 40000;
  RefineReport rep = refine_estimate(Estimator::m0, 8.0 * M_PI, 0.02, {112, 128}, o);
  CHECK(std::abs(rep.final_total - ref512) / ref512 < 0.05);
  CHECK(std::abs(rep.steps[0].total - ref512) / ref512 < 0.05);
}

TEST_CASE("coarse-start descent reaches the direct minimizer") {
  MinimizeOptions direct;
  direct.init = InitKind::VortexLattice;
  direct.restarts = 1;
  MinimizeOptions cascade = direct;
  cascade.coarse_start = 40;
  const GL2DParams p{8.0 * M_PI, 0.05};
  MinimizeResult a = minimize_2d(p, FieldBC::MagneticPeriodic, 64, direct);
  MinimizeResult b = minimize_2d(p, FieldBC::MagneticPeriodic, 64, cascade);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(b.energy.total == doctest::Approx(a.energy.total).epsilon(1e-8));
  // natural runs ignore the option entirely
  MinimizeResult c = minimize_2d(p, FieldBC::Natural, 65, cascade);
  MinimizeResult d = minimize_2d(p, FieldBC::Natural, 65, direct);
  CHECK(c.energy.total == d.energy.total);
}
