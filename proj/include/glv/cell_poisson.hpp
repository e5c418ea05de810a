#pragma once

#include <vector>

namespace glv {

// Direct solve of  -lap(h) = f  on an n x n site grid (spacing side/(n-1))
// with zero normal derivative expressed as mirror boundaries, using the
// even-even cosine transform: cosine modes are exact eigenvectors of the
// mirrored 5-point stencil. The constant mode of f is dropped (solvability)
// and h comes back with zero cosine-DC component.
std::vector<double> neumann_poisson_solve(int n, double side, const std::vector<double>& f);

// max-norm of  -lap_mirror(h) - (f - weighted_mean(f))  for the solve above;
// the trapezoid-weighted mean is the component the solver discards.
double neumann_residual(int n, double side, const std::vector<double>& h,
                        const std::vector<double>& f);

// Mirrored 5-point Laplacian of h divided by spacing^2, as used by the solver
// and by the circulation identities of the lattice construction.
std::vector<double> mirror_laplacian(int n, double side, const std::vector<double>& h);

} // namespace glv
