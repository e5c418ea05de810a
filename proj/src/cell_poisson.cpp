#include "glv/cell_poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace glv {

namespace {

// FFTW plan creation/destruction is not thread-safe (execution is).
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

double axis_w(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

} // namespace

std::vector<double> neumann_poisson_solve(int n, double side, const std::vector<double>& f) {
  if (n < 2) throw std::invalid_argument("need at least 2 sites per axis");
  if (!(side > 0.0)) throw std::invalid_argument("side must be positive");
  if (f.size() != (std::size_t)n * n) throw std::invalid_argument("source size mismatch");
  const int m = n - 1;
  const double h = side / m;

  std::vector<double> buf = f;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_r2r_2d(n, n, buf.data(), buf.data(), FFTW_REDFT00, FFTW_REDFT00,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");

  fftw_execute(plan);

  // per-axis eigenvalues of -lap with mirror boundaries
  std::vector<double> lam(n);
  for (int k = 0; k < n; ++k) lam[k] = (2.0 - 2.0 * std::cos(M_PI * k / m)) / (h * h);
  const double norm = 4.0 * (double)m * m; // REDFT00 round-trip factor
  for (int k0 = 0; k0 < n; ++k0)
    for (int k1 = 0; k1 < n; ++k1) {
      double& v = buf[(std::size_t)k0 * n + k1];
      if (k0 == 0 && k1 == 0)
        v = 0.0; // solvability: constant mode dropped
      else
        v /= (lam[k0] + lam[k1]) * norm;
    }

  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return buf;
}

std::vector<double> mirror_laplacian(int n, double side, const std::vector<double>& h) {
  if (h.size() != (std::size_t)n * n) throw std::invalid_argument("field size mismatch");
  const double hs = side / (n - 1);
  std::vector<double> out((std::size_t)n * n);
  auto at = [&](int i, int j) {
    if (i < 0) i = -i;
    if (i > n - 1) i = 2 * (n - 1) - i;
    if (j < 0) j = -j;
    if (j > n - 1) j = 2 * (n - 1) - j;
    return h[(std::size_t)i * n + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[(std::size_t)i * n + j] =
          (at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1) - 4.0 * at(i, j)) /
          (hs * hs);
  return out;
}

double neumann_residual(int n, double side, const std::vector<double>& h,
                        const std::vector<double>& f) {
  if (f.size() != (std::size_t)n * n) throw std::invalid_argument("source size mismatch");
  std::vector<double> lap = mirror_laplacian(n, side, h);
  double wsum = 0.0, fmean = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = axis_w(i, n) * axis_w(j, n);
      wsum += w;
      fmean += w * f[(std::size_t)i * n + j];
    }
  fmean /= wsum;
  double r = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s)
    r = std::max(r, std::abs(-lap[s] - (f[s] - fmean)));
  return r;
}

} // namespace glv
