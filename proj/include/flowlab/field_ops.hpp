#pragma once

#include "flowlab/spectral.hpp"

namespace flowlab {

VecXr node_coords(const TorusGrid& g, Index flat);

// Elementwise arithmetic with grid/shape validation.
VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scaled(const VectorField& a, Real s);

// Spectral first derivative along axis d (exact for band-limited data;
// Nyquist modes are dropped as directionless).
ScalarField partial(const ScalarField& f, int d);
VectorField gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& f);

ScalarField divergence(const VectorField& v);

// Scalar vorticity u2,1 - u1,2 of a planar field; 3D input is rejected.
ScalarField curl2d(const VectorField& v);

// Leray-Helmholtz projection onto divergence-free fields; the spatial mean
// mode is preserved unchanged.
VectorField helmholtz_project(const VectorField& v);
VectorSpectrum helmholtz_project(const VectorSpectrum& v);

// Heat flow e^{t Laplacian} as a spectral multiplier; t < 0 is rejected.
ScalarField heat_semigroup(const ScalarField& f, Real t);
VectorField heat_semigroup(const VectorField& f, Real t);

// Pointwise Euclidean magnitude |u|.
ScalarField magnitude(const VectorField& v);

// Arithmetic mean over nodes, one entry per component (the k = 0 mode).
VecXr mean(const VectorField& v);

// Norms use deterministic sequential reductions so reruns are bit-identical.
Real sup_norm(const ScalarField& f);
Real sup_norm(const VectorField& v);
Real lp_norm(const ScalarField& f, Real p);
Real lp_norm(const VectorField& v, Real p);

// Cylindrical frame about the vertical axis; xp is the horizontal offset
// from the axis. On the axis the radial/azimuthal parts are set to zero and
// flagged.
struct CylindricalVec {
    Real u_r = 0, u_theta = 0, u_z = 0;
    bool on_axis = false;
};
CylindricalVec to_cylindrical(const Vec3r& u, const Vec2r& xp);
Vec3r from_cylindrical(const CylindricalVec& c, const Vec2r& xp);

// Circulation identity on a disc: integral of curl over B(center, R) versus
// the boundary circulation, both by high-order quadrature.
struct GreenIdentityResult {
    Real area_integral = 0;
    Real boundary_integral = 0;
    Real mismatch() const { return std::abs(area_integral - boundary_integral); }
};
GreenIdentityResult green_identity_check(const VectorField& v,
                                         const Vec2r& center, Real radius,
                                         int radial_order = 64,
                                         int angular_nodes = 256);

}  // namespace flowlab
