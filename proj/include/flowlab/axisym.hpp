#pragma once

#include <vector>

#include "flowlab/field.hpp"

namespace flowlab {
namespace axisym {

// Swirling axisymmetric state in the pressure-free scalar formulation:
// f = r u_theta (even, f(0,z) = 0), eta = omega_theta / r (even, finite on
// the axis), psi the Stokes stream function (psi = 0 on axis and outer
// boundaries). Velocity is derived: u_r = -psi_z / r, u_z = psi_r / r.
struct SwirlState {
    AxisymGrid grid;
    AxisymScalarField f;
    AxisymScalarField eta;
    AxisymScalarField psi;
    Real time = 0;
};

// Meridional velocity plus the stream function it came from.
struct MeridionalFlow {
    AxisymField u;         // u_theta left zero
    AxisymScalarField psi;
};

// Five-dimensional radial Laplacian s_rr + 3 s_r / r + s_zz. On the axis
// the parity limit 4 s_rr + s_zz applies; one-sided second-order stencils
// cover the outer rows, so quadratics are reproduced exactly everywhere.
AxisymScalarField laplacian5(const AxisymScalarField& s);

// One transport-diffusion step of f_t + u_r f_r + u_z f_z = Lap f - (2/r) f_r
// with first-order upwind advection and implicit diffusion in the flux form
// r (f_r / r)_r + f_zz, which both preserves the discrete maximum principle
// and annihilates rigid rotation f = r^2 exactly. Outer data is zero, the
// axis is pinned at f = 0.
AxisymScalarField swirl_evolve(const SwirlState& state,
                               const AxisymField& meridional, Real dt);

// One step of eta_t + u_r eta_r + u_z eta_z = Lap5 eta (+ dz(f^2)/r^4 when
// with_swirl_source). The diffusion uses the finite-volume form of
// (r^3 eta_r)_r / r^3 with cell masses int r^3 dr, whose axis row reduces
// to the parity limit 8 (eta_1 - eta_0) / h^2. The source is evaluated as
// dz((f/r^2)^2), regular on the axis.
AxisymScalarField eta_evolve(const SwirlState& state,
                             const AxisymField& meridional, Real dt,
                             bool with_swirl_source);

// Solves psi_rr - psi_r / r + psi_zz = -r^2 eta with psi = 0 on the axis
// and the outer boundaries (conjugate gradients on the 1/r-weighted
// symmetric form, relative residual 1e-10), then differentiates to get the
// meridional velocity. The discrete continuity identity
// ((r u_r)_r / r + u_z_z) vanishes to rounding at interior nodes.
MeridionalFlow meridional_from_eta(const AxisymScalarField& eta);

// Discrete inverse companion of the stream solve: the eta whose stream
// function is exactly the given psi under this grid's operator. Axis row
// by even extrapolation, boundary rows zero.
AxisymScalarField eta_from_psi(const AxisymScalarField& psi);

// Builds a consistent state from f and eta (solves for psi).
SwirlState make_state(const AxisymScalarField& f, const AxisymScalarField& eta,
                      Real time = 0);

// Advances f and eta by one step with the current meridional velocity,
// then refreshes psi from the new eta. The advective CFL condition
// dt (sup|u_r|/h_r + sup|u_z|/h_z) <= 1 is checked first.
SwirlState axisym_step(const SwirlState& state, Real dt);

// Nodal max of dt (|u_r|/h_r + |u_z|/h_z) for the state's own velocity.
Real advective_cfl(const SwirlState& state, Real dt);

struct MonitorRow {
    Real t = 0;
    Real sup_f = 0;
    Real inf_f = 0;
    Real sup_eta = 0;
    Real sup_rho_u = 0;  // sup of r |u| (the scale-invariant decay gauge)
    Real cfl = 0;
};

struct MonitorReport {
    std::vector<MonitorRow> rows;
    bool sup_f_monotone = true;    // non-increasing within 1e-10
    bool sup_eta_monotone = true;
    int boundary_margin = 2;       // node rings excluded near the outer walls
};

// Time series of the maximum-principle scalars and the decay gauge r|u|.
// The two outermost node rings are excluded: the confined-cylinder proxy
// for whole space has a boundary layer there.
MonitorReport liouville_monitors(const std::vector<SwirlState>& traj);

// Azimuthal momentum residual of a state sequence: reconstructs u_theta =
// f / r and measures d_t u_theta + u_r du_theta/dr + u_z du_theta/dz +
// u_r u_theta / r - (Lap u_theta - u_theta / r^2) with centered
// differences, skipping `margin` rings at the outer walls. This ties the
// evolved scalars back to the primitive momentum form; it should shrink at
// the scheme's first order under refinement.
Real theta_momentum_residual(const std::vector<SwirlState>& traj,
                             int margin = 2);

// Max of |(r u_r)_r / r + u_z_z| over strictly interior nodes.
Real continuity_residual(const MeridionalFlow& flow);

}  // namespace axisym
}  // namespace flowlab
