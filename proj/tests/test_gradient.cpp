#include "doctest.h"

#include "glv/energy.hpp"
#include "util.hpp"

#include <omp.h>

using namespace glv;

namespace {

// g = 2 dE/d(conj u): Re g = dE/d(Re u), Im g = dE/d(Im u).
template <class EnergyFn>
void check_against_central_differences(ComplexField& u, const EnergyFn& energy,
                                       const std::vector<Complex>& grad, double scale) {
  const double step = 1e-6;
  std::mt19937_64 rng(999);
  for (int probe = 0; probe < 12; ++probe) {
    const std::size_t s = rng() % u.values.size();
    const Complex keep = u.values[s];
    u.values[s] = keep + step;
    const double ep_re = energy(u);
    u.values[s] = keep - step;
    const double em_re = energy(u);
    u.values[s] = keep + Complex(0.0, step);
    const double ep_im = energy(u);
    u.values[s] = keep - Complex(0.0, step);
    const double em_im = energy(u);
    u.values[s] = keep;
    const double fd_re = (ep_re - em_re) / (2.0 * step);
    const double fd_im = (ep_im - em_im) / (2.0 * step);
    CHECK(grad[s].real() == doctest::Approx(fd_re).epsilon(1e-5).scale(scale));
    CHECK(grad[s].imag() == doctest::Approx(fd_im).epsilon(1e-5).scale(scale));
  }
}

} // namespace

TEST_CASE("2D gradient matches central differences") {
  for (bool periodic : {false, true}) {
    const double h_ex = periodic ? 2.0 * M_PI * 2 : 5.0;
    UniformGrid g = make_grid_2d(9, 1.0, periodic);
    ComplexField u = testutil::random_field(g, periodic ? h_ex : 0.0, 300 + periodic);
    LinkPhases l = field_links(g, h_ex);
    const GL2DParams p{h_ex, 0.15};
    auto grad = energy_gradient_2d(u, l, p);
    auto efn = [&](const ComplexField& v) { return energy_2d(v, l, p).total; };
    check_against_central_differences(u, efn, grad, 1e-2);
  }
}

TEST_CASE("3D gradient matches central differences for both forms") {
  UniformGrid g = make_grid_3d(6, 1.5, false);
  ComplexField u = testutil::random_field(g, 0.0, 777);

  LinkPhases lg = field_links(g, 1.0);
  GL3DParams pg = GL3DParams::gform(0.25);
  auto gradg = energy_gradient_3d(u, lg, pg);
  auto efng = [&](const ComplexField& v) { return energy_3d(v, lg, pg).total; };
  check_against_central_differences(u, efng, gradg, 1e-2);

  LinkPhases le = field_links(g, 12.0);
  GL3DParams pe = GL3DParams::e0form(4.0, 3.0);
  auto grade = energy_gradient_3d(u, le, pe);
  auto efne = [&](const ComplexField& v) { return energy_3d(v, le, pe).total; };
  check_against_central_differences(u, efne, grade, 1e-1);

  // this form has unit coupling, so the periodic cell flux is side^2
  UniformGrid gp = make_grid_3d(6, 1.0, true);
  ComplexField up = testutil::random_field(gp, 1.0, 778);
  LinkPhases lp = field_links(gp, 1.0);
  GL3DParams pp = GL3DParams::gform(0.4);
  auto gradp = energy_gradient_3d(up, lp, pp);
  auto efnp = [&](const ComplexField& v) { return energy_3d(v, lp, pp).total; };
  check_against_central_differences(up, efnp, gradp, 1e-2);
}

TEST_CASE("gradient is identical for serial and parallel execution") {
  UniformGrid g = make_grid_2d(23, 1.0, true);
  const double h_ex = 2.0 * M_PI * 3;
  ComplexField u = testutil::random_field(g, h_ex, 55);
  LinkPhases l = field_links(g, h_ex);
  const GL2DParams p{h_ex, 0.1};
  auto gs = energy_gradient_2d(u, l, p, Exec::Serial);
  omp_set_num_threads(4);
  auto gp = energy_gradient_2d(u, l, p, Exec::Parallel);
  omp_set_num_threads(omp_get_num_procs());
  REQUIRE(gs.size() == gp.size());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    CHECK(gs[i].real() == gp[i].real());
    CHECK(gs[i].imag() == gp[i].imag());
  }
}

TEST_CASE("residual of the uniform minimizer at zero field is zero") {
  UniformGrid g = make_grid_2d(17, 1.0, false);
  ComplexField u = make_field(g, FieldBC::Natural);
  LinkPhases l = field_links(g, 0.0);
  auto grad = energy_gradient_2d(u, l, {0.0, 0.1});
  CHECK(gl_residual(grad, g) == 0.0);
}
