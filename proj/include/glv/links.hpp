#pragma once

#include "glv/grid.hpp"

#include <functional>

namespace glv {

// Per-edge connection phases, theta_e = coupling * (edge length) * A(midpoint).e,
// the midpoint rule for coupling*int_edge A.dl (exact when A is affine).
// theta[d][site] belongs to the edge leaving `site` in the +d direction; on
// natural grids the slab i_d = n-1 carries no edge and stays zero. phase[d]
// caches e^{-i theta} for the kernels.
struct LinkPhases {
  UniformGrid grid;
  double coupling = 0.0;
  std::array<std::vector<double>, 3> theta;
  std::array<std::vector<Complex>, 3> phase;

  void refresh_phase();
};

using VectorPotential = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

// (-x2/2, x1/2, 0): unit-field potential in the transverse plane.
std::array<double, 3> potential_a0(const std::array<double, 3>& x);

LinkPhases links_from_potential(const UniformGrid& g, const VectorPotential& A, double coupling);

// Magnetic-translation corrections on the wrap edges of a centered periodic
// grid: axis-0 wraps get -coupling*side*x1/2, axis-1 wraps +coupling*side*x0/2,
// axis 2 wraps plainly. With these, the stored-cell energy equals the per-cell
// energy of the extended field, and every transverse plaquette carries flux
// coupling*spacing^2 except the corner plaquette (n-1, n-1): circulations of
// stored phases sum to zero over the torus, so that one plaquette carries
// coupling*(spacing^2 - side^2), the same value mod 2*pi at quantized flux.
// Winding computations put the missing cell flux back there.
void apply_magnetic_wrap(LinkPhases& links);

// A0-potential links at the given coupling, wrap-corrected if g is periodic.
LinkPhases field_links(const UniformGrid& g, double coupling);

// Flux (circulation of theta) through the plaquette in the (a,b) plane whose
// lower corner is the given site; indices wrap on periodic grids.
double plaquette_flux(const LinkPhases& l, int a, int b, int i0, int i1, int i2 = 0);

} // namespace glv
