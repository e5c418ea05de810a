#pragma once

#include "glv/energy.hpp"

namespace glv {

// Plaquette winding of a 2D (or sliced) field: [sum of wrapped covariant phase
// steps around the plaquette + plaquette flux]/2pi, an integer up to rounding.
// Plaquettes with a corner modulus below 1e-12 are flagged indeterminate and
// left out of the total.
struct Vorticity2D {
  int np = 0;  // plaquettes per axis
  std::vector<double> winding;
  std::vector<std::uint8_t> indeterminate;
  int n_indeterminate = 0;
  double total = 0.0;
};

Vorticity2D vorticity_2d(const ComplexField& u, const LinkPhases& l);

// Same, on the (a,b)-plane slice of a 3D field at height k along the third axis.
Vorticity2D slice_winding(const ComplexField& u, const LinkPhases& l, int a, int b, int k);

// Per-plaquette vorticity components of a 3D field:
//   mu_c = curl_c(J)/coupling + flux/( coupling h^2 ),
// with the lattice current J_e = Im(conj(u_tail) u_head)/h, so that u = 1 with
// unit-field links gives current part 0 and flux part 1.
struct Vorticity3D {
  std::array<std::vector<double>, 3> mu;
  std::array<std::vector<double>, 3> current_part;
  std::array<std::vector<double>, 3> flux_part;
};

Vorticity3D vorticity_3d(const ComplexField& u, const LinkPhases& l);

} // namespace glv
