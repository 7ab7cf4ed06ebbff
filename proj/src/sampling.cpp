#include "flowlab/sampling.hpp"

#include <cmath>

namespace flowlab {

Real spectral_eval(const Spectrum& s, const VecXr& x) {
    const TorusGrid& g = s.grid;
    if (x.size() != g.dim)
        throw ShapeError("spectral_eval: point dimension mismatch");
    // Factorized phases: e^{i k.x} = prod_d e^{i k_d x_d 2pi/L}.
    std::array<std::vector<Complex>, 3> phase;
    for (int d = 0; d < g.dim; ++d) {
        phase[d].resize(g.n);
        for (Index i = 0; i < g.n; ++i) {
            const Real kap = mode_kappa(g, g.wavenumber(i));
            phase[d][i] = std::polar(1.0, kap * x[d]);
        }
    }
    Complex acc(0, 0);
    const Index total = g.node_count();
    for (Index f = 0; f < total; ++f) {
        auto idx = g.unflat(f);
        Complex ph = phase[0][idx[0]];
        if (g.dim > 1) ph *= phase[1][idx[1]];
        if (g.dim > 2) ph *= phase[2][idx[2]];
        acc += s.data[f] * ph;
    }
    return (acc / Real(total)).real();
}

VecXr spectral_eval(const VectorSpectrum& s, const VecXr& x) {
    VecXr out(s.grid.dim);
    for (int d = 0; d < s.grid.dim; ++d) {
        Spectrum c{s.grid, s.time};
        c.data = s.comp[d];
        out[d] = spectral_eval(c, x);
    }
    return out;
}

namespace {

// Catmull-Rom weights for fractional offset xi in [0, 1).
std::array<Real, 4> cr_weights(Real xi) {
    const Real xi2 = xi * xi, xi3 = xi2 * xi;
    return {-0.5 * xi3 + xi2 - 0.5 * xi, 1.5 * xi3 - 2.5 * xi2 + 1.0,
            -1.5 * xi3 + 2.0 * xi2 + 0.5 * xi, 0.5 * xi3 - 0.5 * xi2};
}

Index wrap(Index i, Index n) { return ((i % n) + n) % n; }

}  // namespace

Real sample_cubic(const ScalarField& f, const VecXr& x) {
    const TorusGrid& g = f.grid;
    if (x.size() != g.dim)
        throw ShapeError("sample_cubic: point dimension mismatch");
    std::array<std::array<Index, 4>, 3> sten{};
    std::array<std::array<Real, 4>, 3> wts{};
    for (int d = 0; d < g.dim; ++d) {
        const Real s = x[d] / g.h();
        const Real base = std::floor(s);
        const Real xi = s - base;
        auto w = cr_weights(xi);
        for (int m = 0; m < 4; ++m) {
            sten[d][m] = wrap(Index(base) + m - 1, g.n);
            wts[d][m] = w[m];
        }
    }
    Real acc = 0;
    if (g.dim == 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                acc += wts[0][a] * wts[1][b] *
                       f.data[g.flat(sten[0][a], sten[1][b])];
    } else {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    acc += wts[0][a] * wts[1][b] * wts[2][c] *
                           f.data[g.flat(sten[0][a], sten[1][b], sten[2][c])];
    }
    return acc;
}

VecXr sample_cubic(const VectorField& f, const VecXr& x) {
    VecXr out(f.grid.dim);
    for (int d = 0; d < f.grid.dim; ++d) {
        ScalarField c{f.grid, f.time};
        c.data = f.comp[d];
        out[d] = sample_cubic(c, x);
    }
    return out;
}

}  // namespace flowlab
