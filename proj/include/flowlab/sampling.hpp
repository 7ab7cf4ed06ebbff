#pragma once

#include "flowlab/spectral.hpp"

namespace flowlab {

// Trigonometric (band-limited) point evaluation by direct mode summation.
// Exact for the stored spectrum; cost O(N^dim) per point.
Real spectral_eval(const Spectrum& s, const VecXr& x);
VecXr spectral_eval(const VectorSpectrum& s, const VecXr& x);

// Periodic Catmull-Rom interpolation (cubic in each direction). Reproduces
// nodal values exactly; accuracy O(h^4) for smooth data.
Real sample_cubic(const ScalarField& f, const VecXr& x);
VecXr sample_cubic(const VectorField& f, const VecXr& x);

}  // namespace flowlab
