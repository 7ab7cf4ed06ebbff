#pragma once

#include <array>
#include <functional>

#include "flowlab/field.hpp"

namespace flowlab {

// Unnormalized multidimensional DFT of nodal data, same flat layout as the
// grid. True Fourier coefficients (u(x) = sum_k c_k e^{i 2pi k.x/L}) are
// data/N^dim; multiplier operations are normalization-agnostic.
struct Spectrum {
    TorusGrid grid;
    ArrayXc data;
    Real time = 0;

    Spectrum() = default;
    explicit Spectrum(const TorusGrid& g, Real t = 0)
        : grid(g), data(ArrayXc::Zero(g.node_count())), time(t) {}

    Complex coeff(Index flat) const {
        return data[flat] / Real(grid.node_count());
    }
};

struct VectorSpectrum {
    TorusGrid grid;
    std::array<ArrayXc, 3> comp;
    Real time = 0;

    VectorSpectrum() = default;
    explicit VectorSpectrum(const TorusGrid& g, Real t = 0)
        : grid(g), time(t) {
        for (int d = 0; d < g.dim; ++d)
            comp[d] = ArrayXc::Zero(g.node_count());
    }
};

Spectrum analyze(const ScalarField& f);
VectorSpectrum analyze(const VectorField& f);

// Inverse transform; imaginary round-off of Hermitian spectra is discarded.
ScalarField synthesize(const Spectrum& s);
VectorField synthesize(const VectorSpectrum& s);

// Calls fn(flat, kvec) for every mode, kvec in integer wavenumbers.
void for_each_mode(const TorusGrid& g,
                   const std::function<void(Index, const std::array<int, 3>&)>& fn);

// Physical wavevector of a mode: kappa_d = (2pi/L) k_d.
inline Real mode_kappa(const TorusGrid& g, int k) { return kTwoPi * k / g.period; }

// In-place multiplication by a scalar transfer function of the wavevector.
void apply_multiplier(Spectrum& s,
                      const std::function<Complex(const std::array<int, 3>&)>& m);
void apply_multiplier(VectorSpectrum& s,
                      const std::function<Complex(const std::array<int, 3>&)>& m);

// Zeroes every mode with any |k_d| > limit (2/3-rule dealiasing and band
// enforcement). limit < 0 means N/3.
void truncate_band(Spectrum& s, int limit = -1);
void truncate_band(VectorSpectrum& s, int limit = -1);

// Spectral interpolation onto a grid refined by an integer factor
// (zero padding). Used for sup estimation between nodes.
ScalarField upsample(const ScalarField& f, int factor);

}  // namespace flowlab
