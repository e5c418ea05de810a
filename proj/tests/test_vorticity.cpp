#include "doctest.h"

#include "glv/vorticity.hpp"
#include "util.hpp"

using namespace glv;

TEST_CASE("a single phase vortex carries unit winding") {
  // even n keeps the branch point inside the central plaquette
  UniformGrid g = make_grid_2d(12, 2.0, false);
  ComplexField u = make_field(g, FieldBC::Natural);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      auto x = g.site_pos(i, j);
      const double r = std::hypot(x[0], x[1]);
      u.values[g.site_index(i, j)] = Complex(x[0] / r, x[1] / r);
    }
  LinkPhases l = field_links(g, 0.0);
  Vorticity2D v = vorticity_2d(u, l);
  CHECK(v.n_indeterminate == 0);
  CHECK(v.total == doctest::Approx(1.0).epsilon(1e-12));
  double maxw = 0.0;
  int nonzero = 0;
  for (double w : v.winding) {
    maxw = std::max(maxw, std::abs(w));
    if (std::abs(w) > 0.5) ++nonzero;
  }
  CHECK(maxw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nonzero == 1);
}

TEST_CASE("total winding on the quantized periodic cell equals the flux quanta") {
  const double h_ex = 2.0 * M_PI * 4;
  UniformGrid g = make_grid_2d(8, 1.0, true);
  ComplexField u = make_field(g, FieldBC::MagneticPeriodic, h_ex);
  LinkPhases l = field_links(g, h_ex);
  Vorticity2D v = vorticity_2d(u, l);
  CHECK(v.n_indeterminate == 0);
  CHECK(v.total == doctest::Approx(4.0).epsilon(1e-12));

  ComplexField r = testutil::random_field(g, h_ex, 4242, 0.5, 1.0);
  Vorticity2D vr = vorticity_2d(r, l);
  CHECK(vr.n_indeterminate == 0);
  CHECK(vr.total == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("unit order parameter in the unit-field gauge has pure flux vorticity") {
  const double beta = 4.0 * M_PI;  // quantized on the unit cell
  UniformGrid g = make_grid_3d(6, 1.0, true);
  ComplexField psi = make_field(g, FieldBC::MagneticPeriodic, beta);
  LinkPhases l = field_links(g, beta);
  Vorticity3D v = vorticity_3d(psi, l);
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    CHECK(v.current_part[0][s] == 0.0);
    CHECK(v.current_part[1][s] == 0.0);
    CHECK(v.current_part[2][s] == 0.0);
    CHECK(v.mu[2][s] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.mu[0][s]) <= 1e-12);
    CHECK(std::abs(v.mu[1][s]) <= 1e-12);
  }
  for (int k = 0; k < g.n; ++k) {
    Vorticity2D sw = slice_winding(psi, l, 0, 1, k);
    CHECK(sw.total == doctest::Approx(2.0).epsilon(1e-12));
  }
}
