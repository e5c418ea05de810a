#pragma once

// Shared helpers for the unit tests: deterministic random fields and a
// high-precision reference sum.

#include "glv/grid.hpp"
#include "glv/links.hpp"

#include <cmath>
#include <random>

namespace testutil {

inline double unit_double(std::mt19937_64& rng) {
  return (double)(rng() >> 11) * 0x1p-53;  // [0,1)
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

inline glv::ComplexField random_field(const glv::UniformGrid& g, double flux, std::uint64_t seed,
                                      double mod_lo = 0.2, double mod_hi = 1.2) {
  glv::ComplexField u = glv::make_field(
      g, g.periodic ? glv::FieldBC::MagneticPeriodic : glv::FieldBC::Natural, flux);
  std::mt19937_64 rng(seed);
  for (auto& z : u.values) {
    const double r = uniform(rng, mod_lo, mod_hi);
    const double a = uniform(rng, 0.0, 2.0 * M_PI);
    z = glv::Complex(r * std::cos(a), r * std::sin(a));
  }
  return u;
}

inline std::vector<double> random_phases(std::size_t n, std::uint64_t seed,
                                         double amp = 2.0 * M_PI) {
  std::vector<double> chi(n);
  std::mt19937_64 rng(seed);
  for (auto& c : chi) c = uniform(rng, -amp, amp);
  return chi;
}

inline double kahan_sum(const std::vector<double>& v) {
  long double s = 0.0L, c = 0.0L;
  for (double x : v) {
    const long double y = (long double)x - c;
    const long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return (double)s;
}

} // namespace testutil
