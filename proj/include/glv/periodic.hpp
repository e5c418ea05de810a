#pragma once

#include "glv/grid.hpp"

namespace glv {

// Magnetic-periodic flux bookkeeping: the two translation phase relations
// commute only when the cell flux is a multiple of 2*pi, so computations snap
// the requested flux and report both values.
struct PeriodicCellSpec {
  double h_ex_requested = 0.0;
  double h_ex = 0.0;  // 2*pi*round(requested / 2*pi)
  long long flux_quanta = 0;
};

PeriodicCellSpec quantize_flux(double h_ex_requested);

// |e^{i h_ex} - 1| = 2|sin(h_ex/2)|: the translation commutator defect on the
// unit cell; zero exactly at quantized flux.
double consistency_defect(double h_ex);

// Magnetic translation of the stored cell by whole cells (p,q) in the
// transverse plane, expressed in the stored cell's gauge: the boundary-relation
// phases combined with the constant gauge shift of the vector potential. At
// quantized flux this leaves only the relations' commutator phase flux*p*q/2
// per site, so stored-cell energy is invariant, offsets compose additively,
// and (p,q) followed by (-p,-q) is the identity.
void covariant_wrap(ComplexField& u, int p, int q);

// One-cell extension to the natural grid with n+1 sites per axis: boundary
// copies carry the translation phase factors (plain copies along axis 2).
// Its natural-grid energy equals the stored-cell energy exactly, which is
// also the bridge from periodic minima to whole-space minima on a matching
// grid: the extension is admissible there with the same energy.
ComplexField extend_to_natural(const ComplexField& u);

// Bilinear refinement of a 2D magnetic-periodic cell onto fine_n stored sites
// per axis (same side and flux), interpolating through the phase-carrying
// natural extension so wrap neighbors enter with the correct factors.  Sites
// that coincide with coarse sites are exact copies; fine_n == n is the
// identity.  Needs fine_n >= n.
ComplexField prolong_cell_2d(const ComplexField& u, int fine_n);

} // namespace glv
