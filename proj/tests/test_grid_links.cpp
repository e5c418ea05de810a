#include "doctest.h"

#include "glv/links.hpp"
#include "util.hpp"

using namespace glv;

TEST_CASE("grid bookkeeping") {
  UniformGrid gn = make_grid_2d(129, 1.0, false);
  CHECK(gn.spacing() == doctest::Approx(1.0 / 128).epsilon(1e-15));
  double s = 0.0;
  for (int i = 0; i < gn.n; ++i) s += gn.axis_weight(i);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));

  UniformGrid gp = make_grid_2d(64, 1.0, true);
  CHECK(gp.spacing() == doctest::Approx(1.0 / 64).epsilon(1e-15));
  s = 0.0;
  for (int i = 0; i < gp.n; ++i) s += gp.axis_weight(i);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));

  UniformGrid g3 = make_grid_3d(5, 2.0, false);
  CHECK(g3.num_sites() == 125);
  CHECK(g3.site_index(1, 2, 3) == 1 * 25 + 2 * 5 + 3);
  auto c = g3.site_coords(g3.site_index(1, 2, 3));
  CHECK(c[0] == 1);
  CHECK(c[1] == 2);
  CHECK(c[2] == 3);

  CHECK_THROWS(make_grid_2d(1, 1.0, false));
  CHECK_THROWS(make_field(make_grid_2d(4, 1.0, true), FieldBC::Natural));
}

TEST_CASE("unit-coupling link phase on the coarsest natural grid") {
  // edge from (-1/2,-1/2) to (1/2,-1/2): midpoint (0,-1/2), A0.x = 1/4
  UniformGrid g = make_grid_2d(2, 1.0, false);
  LinkPhases l = field_links(g, 1.0);
  CHECK(l.theta[0][g.site_index(0, 0)] == 0.25);
  // y-edge from (-1/2,-1/2): midpoint (-1/2, 0), A0.y = -1/4
  CHECK(l.theta[1][g.site_index(0, 0)] == -0.25);
  // no edges leave the far boundary
  CHECK(l.theta[0][g.site_index(1, 0)] == 0.0);
  CHECK(l.theta[1][g.site_index(0, 1)] == 0.0);
}

TEST_CASE("periodic links: uniform plaquette flux, cell total on the corner") {
  const double h_ex = 8.0 * M_PI;
  for (int n : {4, 9, 16}) {
    UniformGrid g = make_grid_2d(n, 1.0, true);
    LinkPhases l = field_links(g, h_ex);
    const double h = g.spacing();
    const double want = h_ex * h * h;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double f = plaquette_flux(l, 0, 1, i, j);
        total += f;
        if (i == n - 1 && j == n - 1)
          // circulations over the torus cancel exactly, so the corner
          // plaquette absorbs minus the whole cell flux
          CHECK(f == doctest::Approx(want - h_ex).epsilon(1e-10));
        else
          CHECK(f == doctest::Approx(want).epsilon(1e-10));
      }
    CHECK(std::abs(total) < 1e-10);
  }
}

TEST_CASE("3D unit-field links match the transverse 2D ones and have zero z-phase") {
  UniformGrid g2 = make_grid_2d(8, 2.0, true);
  UniformGrid g3 = make_grid_3d(8, 2.0, true);
  LinkPhases l2 = field_links(g2, 3.0);
  LinkPhases l3 = field_links(g3, 3.0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        CHECK(l3.theta[0][g3.site_index(i, j, k)] ==
              doctest::Approx(l2.theta[0][g2.site_index(i, j)]).epsilon(1e-15));
        CHECK(l3.theta[1][g3.site_index(i, j, k)] ==
              doctest::Approx(l2.theta[1][g2.site_index(i, j)]).epsilon(1e-15));
        CHECK(l3.theta[2][g3.site_index(i, j, k)] == 0.0);
      }
}
