#pragma once

#include <array>

#include "flowlab/errors.hpp"
#include "flowlab/types.hpp"

namespace flowlab {

// Uniform periodic grid on [0, L)^dim with N nodes per direction.
// Scalar data is stored flattened with the first coordinate fastest:
// flat = i0 + N*(i1 + N*i2).
struct TorusGrid {
    int dim = 2;
    int n = 0;
    Real period = kTwoPi;

    TorusGrid() = default;
    TorusGrid(int dim_, int n_, Real period_ = kTwoPi)
        : dim(dim_), n(n_), period(period_) {
        if (dim != 2 && dim != 3)
            throw DimensionError("TorusGrid: dim must be 2 or 3");
        if (n < 4 || n % 2 != 0)
            throw ParameterError("TorusGrid: N must be >= 4 and even");
        if (!(period > 0))
            throw ParameterError("TorusGrid: period must be positive");
    }

    Real h() const { return period / n; }
    Index node_count() const {
        Index c = 1;
        for (int d = 0; d < dim; ++d) c *= n;
        return c;
    }
    Real coord(Index i) const { return period * Real(i) / Real(n); }

    Index flat(Index i0, Index i1, Index i2 = 0) const {
        return i0 + Index(n) * (i1 + Index(n) * i2);
    }
    std::array<Index, 3> unflat(Index f) const {
        std::array<Index, 3> idx{};
        idx[0] = f % n;
        idx[1] = (f / n) % n;
        idx[2] = dim == 3 ? f / (Index(n) * n) : 0;
        return idx;
    }
    // Integer wavenumber of mode index i (standard FFT ordering).
    int wavenumber(Index i) const {
        return int(i <= n / 2 ? i : i - n);
    }

    bool operator==(const TorusGrid& o) const {
        return dim == o.dim && n == o.n && period == o.period;
    }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

// Meridional half-plane grid for axisymmetric fields: nodes at
// r_i = i*dr (the axis r=0 is the first radial line) and z_j = z_min + j*dz.
struct AxisymGrid {
    int nr = 0;
    int nz = 0;
    Real r_max = 0;
    Real z_min = 0;
    Real z_max = 0;

    AxisymGrid() = default;
    AxisymGrid(int nr_, int nz_, Real r_max_, Real z_min_, Real z_max_)
        : nr(nr_), nz(nz_), r_max(r_max_), z_min(z_min_), z_max(z_max_) {
        if (nr < 8 || nz < 8)
            throw ParameterError("AxisymGrid: nr and nz must be >= 8");
        if (!(r_max > 0))
            throw ParameterError("AxisymGrid: r_max must be positive");
        if (!(z_max > z_min))
            throw ParameterError("AxisymGrid: z_max must exceed z_min");
    }

    Real dr() const { return r_max / (nr - 1); }
    Real dz() const { return (z_max - z_min) / (nz - 1); }
    Real r(Index i) const { return r_max * Real(i) / Real(nr - 1); }
    Real z(Index j) const {
        return z_min + (z_max - z_min) * Real(j) / Real(nz - 1);
    }

    bool operator==(const AxisymGrid& o) const {
        return nr == o.nr && nz == o.nz && r_max == o.r_max &&
               z_min == o.z_min && z_max == o.z_max;
    }
    bool operator!=(const AxisymGrid& o) const { return !(*this == o); }
};

}  // namespace flowlab
