#include "doctest.h"

#include "glv/energy.hpp"
#include "glv/grid.hpp"
#include "glv/links.hpp"
#include "glv/scaling.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using namespace glv;

namespace {

ComplexField random_field(const UniformGrid& g, FieldBC bc, double flux, unsigned seed) {
  ComplexField u = make_field(g, bc, flux);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto& v : u.values) v = {U(rng), U(rng)};
  return u;
}

} // namespace

// ---------------------------------------------------------------------------
// parameter schedule
// ---------------------------------------------------------------------------

TEST_CASE("parameter schedule reproduces the reference regime and its identities") {
  const ParamSchedule s = schedule_from_kappaH(100.0, 10.0);

  CHECK(s.b == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(s.ell == doctest::Approx(0.1213915841).epsilon(1e-9));
  CHECK(s.lambda == doctest::Approx(0.03393070212).epsilon(1e-9));
  CHECK(s.delta == doctest::Approx(0.3484129506).epsilon(1e-9));
  CHECK(s.R == doctest::Approx(3.838738946).epsilon(1e-9));
  CHECK(s.h_ex == doctest::Approx(67.86140424).epsilon(1e-9));
  CHECK(s.eps == doctest::Approx(0.03838738946).epsilon(1e-9));

  // exact structural identities of the schedule
  CHECK(s.eps * std::sqrt(s.h_ex) == doctest::Approx(std::sqrt(s.b)).epsilon(1e-12));
  CHECK(s.R * s.R * s.h_ex == doctest::Approx(s.kappa * s.H).epsilon(1e-12));
  CHECK(s.delta == doctest::Approx(std::sqrt(s.ell)).epsilon(1e-12));
  CHECK(s.R == doctest::Approx(s.ell * std::sqrt(s.kappa * s.H)).epsilon(1e-12));
  CHECK(s.lambda ==
        doctest::Approx(std::sqrt(std::log(std::sqrt(s.kappa / s.H)) / (s.kappa * s.H)))
            .epsilon(1e-12));

  CHECK(s.regime_hk == doctest::Approx(1000.0 / std::log(100.0)).epsilon(1e-12));
  CHECK(s.regime_kh == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s.delta > 0.0);
  CHECK(s.delta < 1.0);
}

TEST_CASE("parameter schedule closed form at kappa = e") {
  // log kappa = 1 makes the cell size collapse to e^{-1/4} when H = 1
  const ParamSchedule s = schedule_from_kappaH(std::exp(1.0), 1.0);
  CHECK(s.ell == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  CHECK(std::isfinite(s.lambda));
}

TEST_CASE("parameter schedule rejects out-of-regime inputs") {
  CHECK_THROWS_AS((void)schedule_from_kappaH(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)schedule_from_kappaH(0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)schedule_from_kappaH(100.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)schedule_from_kappaH(10.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS((void)schedule_from_kappaH(10.0, 20.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// 2D reduction of cube parameters
// ---------------------------------------------------------------------------

TEST_CASE("flat reduction maps cube parameters to the square-cell pair") {
  const GL2DParams p = params_2d_from_3d(0.04, 10.0);
  CHECK(p.h_ex == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(p.eps == doctest::Approx(0.02).epsilon(1e-15));

  const GL2DParams q = params_2d_from_3d(1.0, 1.0);
  CHECK(q.h_ex == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.eps == doctest::Approx(1.0).epsilon(1e-15));

  // round trip: R = sqrt(h_ex), b = (eps sqrt(h_ex))^2
  const double b = 0.14, R = 6.139964;
  const GL2DParams r = params_2d_from_3d(b, R);
  CHECK(std::sqrt(r.h_ex) == doctest::Approx(R).epsilon(1e-14));
  CHECK(r.eps * r.eps * r.h_ex == doctest::Approx(b).epsilon(1e-14));

  CHECK_THROWS_AS((void)params_2d_from_3d(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)params_2d_from_3d(0.1, -1.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// lifting 2D profiles into the cube
// ---------------------------------------------------------------------------

TEST_CASE("lifting the unit profile fills the cube with ones") {
  const UniformGrid g2 = make_grid_2d(19, 10.0, false);
  const ComplexField u2 = make_field(g2, FieldBC::Natural);
  const ComplexField u3 = lift_2d_to_3d(u2, 10.0, 10);
  REQUIRE(u3.grid.dim == 3);
  REQUIRE(u3.grid.n == 10);
  CHECK(u3.grid.side == doctest::Approx(10.0));
  for (const auto& v : u3.values) {
    REQUIRE(v.real() == 1.0);
    REQUIRE(v.imag() == 0.0);
  }
}

TEST_CASE("cube energy of a lifted profile equals b R times the flat energy") {
  // natural cell, subsampled by stride 2
  {
    const UniformGrid g2 = make_grid_2d(19, 10.0, false);
    const ComplexField u2 = random_field(g2, FieldBC::Natural, 0.0, 101);
    const ScalingCheck ck = check_scaling_identity(u2, 0.04, 10.0, 10);
    CHECK(ck.rel_err <= 1e-12);
    CHECK(ck.lhs > 0.0);
    CHECK(ck.rhs > 0.0);
  }
  // stored periodic cell: the extension with translation phases feeds the lift
  {
    const UniformGrid g2 = make_grid_2d(12, 10.0, true);
    const double flux = 100.0 * 10.0 * 10.0; // coupling h_ex = R^2 over the cell
    const ComplexField u2 = random_field(g2, FieldBC::MagneticPeriodic, flux, 202);
    const ScalingCheck ck = check_scaling_identity(u2, 0.04, 10.0, 7);
    CHECK(ck.rel_err <= 1e-12);
  }
}

TEST_CASE("lift rejects transverse grids that miss the cell sites") {
  const UniformGrid g2 = make_grid_2d(19, 10.0, false);
  const ComplexField u2 = make_field(g2, FieldBC::Natural);
  CHECK_THROWS_AS((void)lift_2d_to_3d(u2, 10.0, 12), std::invalid_argument);
}

TEST_CASE("lifted unit profile converges to the continuum cube value") {
  // b |F|^2 integrated over the side-10 cube: 0.04 * 10^5 / 24
  const double g_cont = 0.04 * 1.0e5 / 24.0;
  double dev96 = 0.0, dev192 = 0.0;
  {
    const UniformGrid g2 = make_grid_2d(96, 10.0, false);
    const ComplexField u2 = make_field(g2, FieldBC::Natural);
    const ScalingCheck ck = check_scaling_identity(u2, 0.04, 10.0, 96);
    CHECK(ck.rel_err <= 1e-12); // the exact identity holds on every grid
    dev96 = std::abs(ck.lhs - g_cont) / g_cont;
  }
  {
    const UniformGrid g2 = make_grid_2d(192, 10.0, false);
    const ComplexField u2 = make_field(g2, FieldBC::Natural);
    const ScalingCheck ck = check_scaling_identity(u2, 0.04, 10.0, 192);
    CHECK(ck.rel_err <= 1e-12);
    dev192 = std::abs(ck.lhs - g_cont) / g_cont;
  }
  // the discrete kinetic phase carries an O(h^2) correction at this field
  // strength: about 3.2e-3 on the 96 grid, first under 1e-3 near 192
  CHECK(dev96 > 2.5e-3);
  CHECK(dev96 < 4.0e-3);
  CHECK(dev192 <= 1.0e-3);
  CHECK(dev192 > 5.0e-4);
  CHECK(dev192 < dev96);
}

// ---------------------------------------------------------------------------
// cube tilings
// ---------------------------------------------------------------------------

TEST_CASE("tiling the unit box counts interiors, boundary meets, and covers") {
  const DomainSpec d = DomainSpec::box(1.0, 1.0, 1.0);
  CHECK(d.volume() == doctest::Approx(1.0).epsilon(1e-15));

  const CubeTiling t = cube_tiling(d, 0.25);
  CHECK(t.n_interior == 64);
  CHECK(t.n_meeting_boundary == 152);
  CHECK(t.n_covering == 216);
  CHECK(t.n_covering == t.n_interior + t.n_meeting_boundary);
  REQUIRE(t.centers.size() == 64);
  CHECK(t.centers.front()[0] == doctest::Approx(-0.375).epsilon(1e-12));
  CHECK(t.centers.front()[1] == doctest::Approx(-0.375).epsilon(1e-12));
  CHECK(t.centers.front()[2] == doctest::Approx(-0.375).epsilon(1e-12));
  CHECK(t.centers.back()[0] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(t.centers.back()[1] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(t.centers.back()[2] == doctest::Approx(0.375).epsilon(1e-12));
  // lexicographic scan order
  for (std::size_t i = 1; i < t.centers.size(); ++i) {
    const auto& a = t.centers[i - 1];
    const auto& b = t.centers[i];
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }

  const CubeTiling big = cube_tiling(d, 2.5);
  CHECK(big.n_interior == 0);
  CHECK(big.n_covering >= 1);
}

TEST_CASE("ball tilings fill the volume as the cube size shrinks") {
  const DomainSpec d = DomainSpec::ball(1.0);
  const double vol = 4.0 * std::acos(-1.0) / 3.0;
  CHECK(d.volume() == doctest::Approx(vol).epsilon(1e-14));

  const double sides[4] = {0.4, 0.2, 0.1, 0.05};
  const int expected[4] = {32, 304, 3280, 29752};
  double prev_est = 0.0;
  for (int k = 0; k < 4; ++k) {
    const CubeTiling t = cube_tiling(d, sides[k]);
    CHECK(t.n_interior == expected[k]);
    CHECK(t.n_covering == t.n_interior + t.n_meeting_boundary);
    const double est = t.n_interior * sides[k] * sides[k] * sides[k];
    CHECK(est > prev_est);
    CHECK(est < vol);
    // volume deficit controlled linearly by the cube size
    CHECK(vol - est <= 12.0 * sides[k]);
    prev_est = est;
  }
}

// ---------------------------------------------------------------------------
// anchored gauge re-expression
// ---------------------------------------------------------------------------

TEST_CASE("anchored gauge shift flattens the connection near the anchor") {
  const int n = 28;
  const double c = 50.0;
  const UniformGrid g = make_grid_3d(n, 1.0, false);
  const LinkPhases fl = field_links(g, c);

  auto eta = [](const std::array<double, 3>& x, int d) {
    if (d == 0) return 0.20 * std::sin(3.0 * x[1]) + 0.05 * x[2] * x[2];
    if (d == 1) return 0.15 * std::cos(2.0 * x[0]) + 0.10 * x[0] * x[1];
    return 0.08 * std::sin(x[0] + 2.0 * x[1]);
  };
  const VectorPotential apot = [&](const std::array<double, 3>& x) -> std::array<double, 3> {
    return {-0.5 * x[1] + eta(x, 0), 0.5 * x[0] + eta(x, 1), eta(x, 2)};
  };
  const LinkPhases al = links_from_potential(g, apot, c);
  const ComplexField psi = random_field(g, FieldBC::Natural, 0.0, 7);
  const std::array<double, 3> xj{0.10, -0.18, 0.05};

  SUBCASE("shifting against the reference itself changes nothing") {
    const GaugeShiftResult r = gauge_shift(psi, fl, fl, xj);
    for (std::size_t s = 0; s < psi.values.size(); ++s)
      REQUIRE(r.u.values[s] == psi.values[s]);
    for (int d = 0; d < 3; ++d)
      for (std::size_t s = 0; s < fl.theta[d].size(); ++s)
        REQUIRE(r.links.theta[d][s] == fl.theta[d][s]);
    CHECK(r.anchor_a[0] == doctest::Approx(r.anchor_f[0]).epsilon(1e-15));
    CHECK(r.anchor_f[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(r.anchor_f[1] == doctest::Approx(5.0 / 108.0).epsilon(1e-12));
    CHECK(r.anchor_f[2] == doctest::Approx(0.0));
  }

  SUBCASE("the shift is a gauge move: masked and full energies are invariant") {
    const GaugeShiftResult r = gauge_shift(psi, al, fl, xj);

    std::vector<std::uint8_t> mask(g.num_sites(), 0);
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i0 = 0; i0 < n; ++i0) {
          const auto x = g.site_pos(i0, i1, i2);
          if (std::abs(x[0] - xj[0]) <= 0.15 && std::abs(x[1] - xj[1]) <= 0.15 &&
              std::abs(x[2] - xj[2]) <= 0.15)
            mask[g.site_index(i0, i1, i2)] = 1;
        }
    const double ea = energy_masked(psi, al, 1.0, 1250.0, mask).total;
    const double eb = energy_masked(r.u, r.links, 1.0, 1250.0, mask).total;
    CHECK(std::abs(ea - eb) <= 1e-12 * std::abs(ea));

    const GL3DParams form = GL3DParams::e0form(10.0, 5.0);
    const double fa = energy_3d(psi, al, form).total;
    const double fb = energy_3d(r.u, r.links, form).total;
    CHECK(std::abs(fa - fb) <= 1e-12 * std::abs(fa));
  }

  SUBCASE("link deviation from the reference shrinks linearly near the anchor") {
    const GaugeShiftResult r = gauge_shift(psi, al, fl, xj);
    const double d06 = link_field_deviation(r.links, fl, xj, 0.6);
    const double d03 = link_field_deviation(r.links, fl, xj, 0.3);
    const double d015 = link_field_deviation(r.links, fl, xj, 0.15);
    CHECK(d06 == doctest::Approx(0.1555301).epsilon(1e-5));
    CHECK(d03 == doctest::Approx(0.06628635).epsilon(1e-5));
    CHECK(d015 == doctest::Approx(0.03646281).epsilon(1e-5));
    CHECK(d03 < 0.65 * d06);
    CHECK(d015 < 0.65 * d03);
    // without the shift the raw deviation stays at the scale of the bulk field
    const double raw015 = link_field_deviation(al, fl, xj, 0.15);
    CHECK(d015 < 0.30 * raw015);
  }

  SUBCASE("input validation") {
    const UniformGrid gs = make_grid_3d(14, 1.0, false);
    const LinkPhases fls = field_links(gs, c);
    CHECK_THROWS_AS((void)gauge_shift(psi, al, fls, xj), std::invalid_argument);
    const LinkPhases fl49 = field_links(g, 49.0);
    CHECK_THROWS_AS((void)gauge_shift(psi, al, fl49, xj), std::invalid_argument);
    const std::array<double, 3> outside{0.9, 0.0, 0.0};
    CHECK_THROWS_AS((void)gauge_shift(psi, al, fl, outside), std::invalid_argument);
    const UniformGrid gp = make_grid_3d(8, 1.0, true);
    const LinkPhases flp = field_links(gp, c);
    CHECK_THROWS_AS((void)link_vector_at(flp, xj), std::invalid_argument);
  }
}

// ---------------------------------------------------------------------------
// covering upper bounds
// ---------------------------------------------------------------------------

TEST_CASE("covering bound collapses to the leading term under the schedule") {
  const ParamSchedule s = schedule_from_kappaH(100.0, 10.0);
  const double mp_asym = s.h_ex * std::log(1.0 / (s.eps * std::sqrt(s.h_ex)));
  const double scale = s.ell * std::sqrt(s.kappa * s.H);
  const double count = scale * scale * scale; // unit volume
  const double collapsed = upper_bound_combine(s, count, mp_asym);
  const double leading = s.kappa * s.H * std::log(std::sqrt(s.kappa / s.H));
  CHECK(collapsed == doctest::Approx(leading).epsilon(1e-12));
}

TEST_CASE("covering bound report for the unit box") {
  const ParamSchedule s = schedule_from_kappaH(100.0, 10.0);
  const DomainSpec d = DomainSpec::box(1.0, 1.0, 1.0);
  const double mp_asym = s.h_ex * std::log(1.0 / (s.eps * std::sqrt(s.h_ex)));

  const UpperBoundReport rep = upper_bound_prediction(s, d, mp_asym);
  CHECK(rep.cube_side == doctest::Approx(1.0 / s.R).epsilon(1e-12));
  CHECK(rep.cube_side == doctest::Approx(0.260502).epsilon(1e-5));
  CHECK(rep.n_interior == 8);
  CHECK(rep.n_covering == 64);
  CHECK(rep.bound == doctest::Approx(upper_bound_combine(s, 64.0, mp_asym)).epsilon(1e-12));
  CHECK(rep.bound == doctest::Approx(1302.57).epsilon(1e-4));
  CHECK(rep.bound_interior == doctest::Approx(162.821).epsilon(1e-4));
  CHECK(rep.leading_term ==
        doctest::Approx(d.volume() * s.kappa * s.H * std::log(std::sqrt(s.kappa / s.H)))
            .epsilon(1e-12));
  CHECK(rep.leading_term == doctest::Approx(1151.29).epsilon(1e-4));

  const UpperBoundReport zero = upper_bound_prediction(s, d, 0.0);
  CHECK(zero.bound == 0.0);
  CHECK(zero.leading_term == doctest::Approx(rep.leading_term));
}
