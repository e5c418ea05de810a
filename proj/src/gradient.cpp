#include "glv/energy.hpp"

#include "kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace glv {

using detail::raw;

namespace {

struct OAx {
  const double* ph = nullptr;  // phase array of the axis
  long long offp = 0, offm = 0;
  int has_p = 0, has_m = 0;
  double wother = 1.0;  // transverse weights along this edge, minus the wt[j] factor
};

// One output line along the fastest axis. Writes g for every site of the line;
// shared by the 2D and 3D paths (n_oax outer axes).
[[gnu::noinline]] void grad_line(const double* v, double* go, const double* wt, int n,
                                 std::size_t base, const double* phf, int f_periodic, double cf,
                                 const OAx* oax, int n_oax, double kin2_over_h, double pot4,
                                 double wout) {
  for (int j = 0; j < n; ++j) {
    const std::size_t s = base + (std::size_t)j;
    const double ur = v[2 * s], ui = v[2 * s + 1];
    double gr = 0.0, gi = 0.0;
    if (j < n - 1 || f_periodic) {
      const std::size_t t = j < n - 1 ? s + 1 : s + 1 - (std::size_t)n;
      const double pr = phf[2 * s], pi = phf[2 * s + 1];
      gr += cf * (ur - (v[2 * t] * pr - v[2 * t + 1] * pi));
      gi += cf * (ui - (v[2 * t] * pi + v[2 * t + 1] * pr));
    }
    if (j > 0 || f_periodic) {
      const std::size_t t = j > 0 ? s - 1 : s - 1 + (std::size_t)n;
      const double pr = phf[2 * t], pi = phf[2 * t + 1];
      gr += cf * (ur - (v[2 * t] * pr + v[2 * t + 1] * pi));
      gi += cf * (ui - (v[2 * t + 1] * pr - v[2 * t] * pi));
    }
    for (int a = 0; a < n_oax; ++a) {
      const OAx& o = oax[a];
      const double c = kin2_over_h * o.wother * wt[j];
      if (o.has_p) {
        const std::size_t t = (std::size_t)((long long)s + o.offp);
        const double pr = o.ph[2 * s], pi = o.ph[2 * s + 1];
        gr += c * (ur - (v[2 * t] * pr - v[2 * t + 1] * pi));
        gi += c * (ui - (v[2 * t] * pi + v[2 * t + 1] * pr));
      }
      if (o.has_m) {
        const std::size_t t = (std::size_t)((long long)s + o.offm);
        const double pr = o.ph[2 * t], pi = o.ph[2 * t + 1];
        gr += c * (ur - (v[2 * t] * pr + v[2 * t + 1] * pi));
        gi += c * (ui - (v[2 * t + 1] * pr - v[2 * t] * pi));
      }
    }
    const double q = 1.0 - (ur * ur + ui * ui);
    const double cp = pot4 * wout * wt[j];
    gr -= cp * q * ur;
    gi -= cp * q * ui;
    go[2 * s] = gr;
    go[2 * s + 1] = gi;
  }
}

std::vector<Complex> gradient_core(const ComplexField& u, const LinkPhases& l, double kin_factor,
                                   double pot_factor, Exec exec) {
  detail::require_pair(u, l);
  const UniformGrid& g = u.grid;
  const int n = g.n;
  const double h = g.spacing();
  const std::vector<double> wt = detail::axis_weights(g);
  const double kin2_over_h = 2.0 * kin_factor / h;
  const double pot4 = 4.0 * pot_factor;
  const bool per = g.periodic;
  const bool par = exec == Exec::Parallel;
  const double* v = raw(u.values);

  std::vector<Complex> grad(g.num_sites());
  double* go = raw(grad);

  if (g.dim == 2) {
    const long long str0 = n;
#pragma omp parallel for schedule(static) if (par)
    for (int i0 = 0; i0 < n; ++i0) {
      OAx o;
      o.ph = raw(l.phase[0]);
      o.has_p = per || i0 < n - 1;
      o.has_m = per || i0 > 0;
      o.offp = (per && i0 == n - 1) ? str0 * (1 - n) : str0;
      o.offm = (per && i0 == 0) ? str0 * (n - 1) : -str0;
      o.wother = 1.0;
      grad_line(v, go, wt.data(), n, g.site_index(i0, 0), raw(l.phase[1]), per ? 1 : 0,
                kin2_over_h * wt[i0], &o, 1, kin2_over_h, pot4, wt[i0]);
    }
    return grad;
  }

  const long long str0 = (long long)n * n, str1 = n;
#pragma omp parallel for schedule(static) collapse(2) if (par)
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1) {
      OAx o[2];
      o[0].ph = raw(l.phase[0]);
      o[0].has_p = per || i0 < n - 1;
      o[0].has_m = per || i0 > 0;
      o[0].offp = (per && i0 == n - 1) ? str0 * (1 - n) : str0;
      o[0].offm = (per && i0 == 0) ? str0 * (n - 1) : -str0;
      o[0].wother = wt[i1];
      o[1].ph = raw(l.phase[1]);
      o[1].has_p = per || i1 < n - 1;
      o[1].has_m = per || i1 > 0;
      o[1].offp = (per && i1 == n - 1) ? str1 * (1 - n) : str1;
      o[1].offm = (per && i1 == 0) ? str1 * (n - 1) : -str1;
      o[1].wother = wt[i0];
      grad_line(v, go, wt.data(), n, g.site_index(i0, i1, 0), raw(l.phase[2]), per ? 1 : 0,
                kin2_over_h * wt[i0] * wt[i1], o, 2, kin2_over_h, pot4, wt[i0] * wt[i1]);
    }
  return grad;
}

} // namespace

std::vector<Complex> energy_gradient_2d(const ComplexField& u, const LinkPhases& l,
                                        const GL2DParams& p, Exec exec) {
  if (u.grid.dim != 2) throw std::invalid_argument("energy_gradient_2d needs a 2D field");
  if (!(p.eps > 0.0)) throw std::invalid_argument("bad 2D parameters");
  if (std::abs(l.coupling - p.h_ex) > 1e-9 * std::max(1.0, p.h_ex))
    throw std::invalid_argument("links coupling does not match h_ex");
  return gradient_core(u, l, 1.0, 0.5 / (p.eps * p.eps), exec);
}

std::vector<Complex> energy_gradient_3d(const ComplexField& u, const LinkPhases& l,
                                        const GL3DParams& p, Exec exec) {
  if (u.grid.dim != 3) throw std::invalid_argument("energy_gradient_3d needs a 3D field");
  if (std::abs(l.coupling - p.coupling()) > 1e-9 * std::max(1.0, p.coupling()))
    throw std::invalid_argument("links coupling does not match the 3D form");
  return gradient_core(u, l, p.kin_factor(), p.pot_factor(), exec);
}

double gl_residual(const std::vector<Complex>& grad, const UniformGrid& g) {
  if (grad.size() != g.num_sites()) throw std::invalid_argument("gradient size mismatch");
  double r = 0.0;
  const int zmax = g.dim == 3 ? g.n : 1;
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < zmax; ++i2) {
        const double w = g.site_weight(i0, i1, i2);
        const double m = std::abs(grad[g.site_index(i0, i1, i2)]);
        r = std::max(r, m / (2.0 * w));
      }
  return r;
}

} // namespace glv
