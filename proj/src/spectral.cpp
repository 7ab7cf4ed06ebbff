#include "flowlab/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace flowlab {
namespace {

// One cached transform engine per thread; plans are reused across lengths.
Eigen::FFT<Real>& engine() {
    thread_local Eigen::FFT<Real> fft;
    return fft;
}

enum class Direction { Forward, Inverse };

// Transforms every 1D line of the flattened array along one axis.
void transform_axis(ArrayXc& a, const TorusGrid& g, int axis, Direction dir) {
    const Index n = g.n;
    Index stride = 1;
    for (int d = 0; d < axis; ++d) stride *= n;
    const Index lines = g.node_count() / n;

    std::vector<Complex> in(n), out(n);
    for (Index line = 0; line < lines; ++line) {
        // Decompose the line id into coordinates excluding `axis`.
        Index lo = line % stride;
        Index hi = line / stride;
        Index base = lo + hi * stride * n;
        for (Index j = 0; j < n; ++j) in[j] = a[base + j * stride];
        if (dir == Direction::Forward)
            engine().fwd(out, in);
        else
            engine().inv(out, in);
        for (Index j = 0; j < n; ++j) a[base + j * stride] = out[j];
    }
}

ArrayXc full_transform(ArrayXc a, const TorusGrid& g, Direction dir) {
    for (int axis = 0; axis < g.dim; ++axis) transform_axis(a, g, axis, dir);
    return a;
}

}  // namespace

Spectrum analyze(const ScalarField& f) {
    Spectrum s(f.grid, f.time);
    s.data = full_transform(f.data.cast<Complex>(), f.grid, Direction::Forward);
    return s;
}

VectorSpectrum analyze(const VectorField& f) {
    VectorSpectrum s(f.grid, f.time);
    for (int d = 0; d < f.grid.dim; ++d)
        s.comp[d] =
            full_transform(f.comp[d].cast<Complex>(), f.grid, Direction::Forward);
    return s;
}

ScalarField synthesize(const Spectrum& s) {
    ScalarField f(s.grid, s.time);
    f.data = full_transform(s.data, s.grid, Direction::Inverse).real();
    return f;
}

VectorField synthesize(const VectorSpectrum& s) {
    VectorField f(s.grid, s.time);
    for (int d = 0; d < s.grid.dim; ++d)
        f.comp[d] = full_transform(s.comp[d], s.grid, Direction::Inverse).real();
    return f;
}

void for_each_mode(const TorusGrid& g,
                   const std::function<void(Index, const std::array<int, 3>&)>& fn) {
    const Index total = g.node_count();
    std::array<int, 3> k{0, 0, 0};
    for (Index f = 0; f < total; ++f) {
        auto idx = g.unflat(f);
        for (int d = 0; d < g.dim; ++d) k[d] = g.wavenumber(idx[d]);
        fn(f, k);
    }
}

void apply_multiplier(Spectrum& s,
                      const std::function<Complex(const std::array<int, 3>&)>& m) {
    for_each_mode(s.grid, [&](Index f, const std::array<int, 3>& k) {
        s.data[f] *= m(k);
    });
}

void apply_multiplier(VectorSpectrum& s,
                      const std::function<Complex(const std::array<int, 3>&)>& m) {
    for_each_mode(s.grid, [&](Index f, const std::array<int, 3>& k) {
        const Complex w = m(k);
        for (int d = 0; d < s.grid.dim; ++d) s.comp[d][f] *= w;
    });
}

namespace {
bool outside_band(const std::array<int, 3>& k, int dim, int limit) {
    for (int d = 0; d < dim; ++d)
        if (std::abs(k[d]) > limit) return true;
    return false;
}
}  // namespace

void truncate_band(Spectrum& s, int limit) {
    if (limit < 0) limit = s.grid.n / 3;
    for_each_mode(s.grid, [&](Index f, const std::array<int, 3>& k) {
        if (outside_band(k, s.grid.dim, limit)) s.data[f] = Complex(0, 0);
    });
}

void truncate_band(VectorSpectrum& s, int limit) {
    if (limit < 0) limit = s.grid.n / 3;
    for_each_mode(s.grid, [&](Index f, const std::array<int, 3>& k) {
        if (outside_band(k, s.grid.dim, limit))
            for (int d = 0; d < s.grid.dim; ++d) s.comp[d][f] = Complex(0, 0);
    });
}

ScalarField upsample(const ScalarField& f, int factor) {
    if (factor < 1) throw ParameterError("upsample: factor must be >= 1");
    if (factor == 1) return f;
    const TorusGrid& g = f.grid;
    TorusGrid fine(g.dim, g.n * factor, g.period);
    Spectrum coarse = analyze(f);
    Spectrum dense(fine, f.time);
    const Real scale = Real(fine.node_count()) / Real(g.node_count());
    for_each_mode(g, [&](Index flat, const std::array<int, 3>& k) {
        // Nyquist modes have no symmetric partner on the coarse grid; split
        // them evenly would complicate indexing, so they are dropped. All
        // solver data is band-limited below Nyquist.
        for (int d = 0; d < g.dim; ++d)
            if (k[d] == g.n / 2) return;
        std::array<Index, 3> idx{0, 0, 0};
        for (int d = 0; d < g.dim; ++d)
            idx[d] = k[d] >= 0 ? Index(k[d]) : Index(fine.n + k[d]);
        dense.data[fine.flat(idx[0], idx[1], idx[2])] = coarse.data[flat] * scale;
    });
    return synthesize(dense);
}

}  // namespace flowlab
