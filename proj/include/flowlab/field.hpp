#pragma once

#include <array>
#include <functional>

#include "flowlab/grid.hpp"

namespace flowlab {

// Nodal scalar samples on a TorusGrid, flattened per TorusGrid::flat.
struct ScalarField {
    TorusGrid grid;
    ArrayXr data;
    Real time = 0;

    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g, Real t = 0)
        : grid(g), data(ArrayXr::Zero(g.node_count())), time(t) {}

    Real& operator()(Index i0, Index i1, Index i2 = 0) {
        return data[grid.flat(i0, i1, i2)];
    }
    Real operator()(Index i0, Index i1, Index i2 = 0) const {
        return data[grid.flat(i0, i1, i2)];
    }
};

// Nodal velocity samples on a TorusGrid; comp[d] holds component d.
struct VectorField {
    TorusGrid grid;
    std::array<ArrayXr, 3> comp;
    Real time = 0;

    VectorField() = default;
    explicit VectorField(const TorusGrid& g, Real t = 0) : grid(g), time(t) {
        for (int d = 0; d < g.dim; ++d) comp[d] = ArrayXr::Zero(g.node_count());
    }

    ArrayXr& operator[](int d) { return comp[d]; }
    const ArrayXr& operator[](int d) const { return comp[d]; }
};

// Reflection symmetry of an axisymmetric scalar across the axis r = 0.
enum class Parity { Even, Odd };

// Scalar samples on the meridional half-plane, data(i, j) at (r_i, z_j).
struct AxisymScalarField {
    AxisymGrid grid;
    ArrayXXr data;
    Parity parity = Parity::Even;
    Real time = 0;

    AxisymScalarField() = default;
    explicit AxisymScalarField(const AxisymGrid& g, Parity p = Parity::Even,
                               Real t = 0)
        : grid(g), data(ArrayXXr::Zero(g.nr, g.nz)), parity(p), time(t) {}
};

// Cylindrical velocity components on the meridional half-plane.
// u_r and u_theta vanish on the axis; u_z is even across it.
struct AxisymField {
    AxisymGrid grid;
    ArrayXXr u_r, u_theta, u_z;
    Real time = 0;

    AxisymField() = default;
    explicit AxisymField(const AxisymGrid& g, Real t = 0)
        : grid(g),
          u_r(ArrayXXr::Zero(g.nr, g.nz)),
          u_theta(ArrayXXr::Zero(g.nr, g.nz)),
          u_z(ArrayXXr::Zero(g.nr, g.nz)),
          time(t) {}
};

// Fills a scalar field from a callable of the node coordinates.
ScalarField make_scalar(const TorusGrid& g,
                        const std::function<Real(const VecXr&)>& f, Real t = 0);

// Fills a vector field from a callable of the node coordinates.
VectorField make_vector(
    const TorusGrid& g,
    const std::function<VecXr(const VecXr&)>& f, Real t = 0);

}  // namespace flowlab
