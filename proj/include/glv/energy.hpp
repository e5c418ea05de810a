#pragma once

#include "glv/grid.hpp"
#include "glv/links.hpp"
#include "glv/reduce.hpp"

#include <cstdint>
#include <vector>

namespace glv {

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

// K-cell functional: int |(grad - i h_ex A0)u|^2 + (1/2 eps^2)(1-|u|^2)^2.
struct GL2DParams {
  double h_ex = 0.0;
  double eps = 0.0;
};

// Rescaled cube functional (Gform, coupling 1):
//   int b|(grad - i F)u|^2 + (1/2)(1-|u|^2)^2,
// and the physical one (E0form, coupling kappa*H):
//   int |(grad - i kappa H A)psi|^2 + (kappa^2/2)(1-|psi|^2)^2.
struct GL3DParams {
  enum class Form { Gform, E0form };
  Form form = Form::Gform;
  double b = 0.0;      // Gform
  double kappa = 0.0;  // E0form
  double H = 0.0;      // E0form

  static GL3DParams gform(double b);
  static GL3DParams e0form(double kappa, double H);
  double coupling() const;
  double kin_factor() const;
  double pot_factor() const;
};

EnergyBreakdown energy_2d(const ComplexField& u, const LinkPhases& l, const GL2DParams& p,
                          Exec exec = Exec::Parallel);
EnergyBreakdown energy_3d(const ComplexField& u, const LinkPhases& l, const GL3DParams& p,
                          Exec exec = Exec::Parallel);

// Same functional restricted to a site subset: site terms where mask is set,
// edge terms where both endpoints are set.
EnergyBreakdown energy_masked(const ComplexField& u, const LinkPhases& l, double kin_factor,
                              double pot_factor, const std::vector<std::uint8_t>& mask);

// g_s = 2 dE/d(conj u_s), quadrature weights included.
std::vector<Complex> energy_gradient_2d(const ComplexField& u, const LinkPhases& l,
                                        const GL2DParams& p, Exec exec = Exec::Parallel);
std::vector<Complex> energy_gradient_3d(const ComplexField& u, const LinkPhases& l,
                                        const GL3DParams& p, Exec exec = Exec::Parallel);

// max_s |g_s| / (2 W_s): the discrete Euler-Lagrange residual in field units.
double gl_residual(const std::vector<Complex>& grad, const UniformGrid& g);

// Sitewise phase change u -> u e^{i chi} with links shifted by the phase
// differences of chi; leaves both energy forms invariant.
void gauge_transform(ComplexField& u, LinkPhases& l, const std::vector<double>& chi);

// Pointwise E0form energy density divided by kappa*H*ln(sqrt(kappa/H)); its
// quadrature sum equals energy_3d(E0form).total / that normalizer.
std::vector<double> energy_density_field(const ComplexField& psi, const LinkPhases& l,
                                         double kappa, double H);

struct SplitCheck {
  bool holds_paper = false;      // constants (1-delta, 2/delta)
  bool holds_sharp = false;      // constants (1-delta, 1/delta - 1)
  double min_margin_paper = 0.0; // min over edges of LHS - RHS
  double min_margin_sharp = 0.0;
  double max_field_dev = 0.0;    // max_e |theta_a - theta_f| / (coupling * h)
};

// Edgewise lower bound for the covariant Dirichlet term against a perturbed
// connection: |D_a u|^2 >= (1-delta)|D_f u|^2 - C(delta) c^2 dev^2 |u|^2.
SplitCheck split_inequality_check(const ComplexField& u, const LinkPhases& a_links,
                                  const LinkPhases& f_links, double delta);

} // namespace glv
