#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowlab/field_ops.hpp"

namespace flowlab {
namespace mild {

// Uniformly spaced snapshots of a velocity field on one grid.
struct Trajectory {
    std::vector<VectorField> snaps;
    Real dt = 0;
    std::string scheme;

    const TorusGrid& grid() const { return snaps.front().grid; }
    int count() const { return int(snaps.size()); }
    Real t0() const { return snaps.front().time; }
    Real t_end() const { return snaps.back().time; }
    Real time(int j) const { return snaps[j].time; }
};

// Validates snapshot count, grid consistency, and uniform time spacing.
void validate(const Trajectory& traj, int min_snaps = 2);

// Point evaluation, cubic in space and linear in time.
VecXr sample(const Trajectory& traj, const VecXr& x, Real t);

// Caloric extension e^{t Lap} u0 sampled every dt up to T.
Trajectory heat_extend(const VectorField& u0, Real T, Real dt);

// Duhamel bilinear term B(u, v) = -int_0^t e^{(t-s) Lap} P div(u (x) v) ds
// on the snapshot grid. Quadrature is trapezoidal in the forcing with the
// heat factor integrated exactly per mode, so the (t - s) -> 0 endpoint
// needs no special casing. Nonlinear products are 2/3-rule dealiased.
Trajectory bilinear_B(const Trajectory& u, const Trajectory& v);

struct PicardResult {
    Trajectory traj;
    bool converged = false;
    int iterations = 0;
    std::vector<Real> increments;  // sup |u^{m+1} - u^m| per iteration
    std::vector<Real> ratios;      // successive increment ratios
    Real defect = 0;               // sup |u - (U + B(u,u))| at exit
    Real datum_projection_change = 0;
    Real divergence_sup = 0;       // max divergence over all snapshots
};

// Picard iteration for u = e^{t Lap} u0 + B(u, u). A non-solenoidal datum
// is projected first and the change recorded. Non-convergence is reported,
// not thrown: inspect `converged` and the measured ratios.
PicardResult picard_solve(const VectorField& u0, Real T, Real dt = -1,
                          Real tol = 1e-10, int max_iter = 50);

// sup over snapshots of t^{k/2+l} |grad^k d_t^l u|_sup / |u(0)|_sup.
// k in {0,1,2}, l in {0,1}; time derivatives by second-order central
// differences on interior snapshots.
Real smoothing_diagnostic(const Trajectory& traj, int k, int l);

struct Decomposition {
    Trajectory v;                  // forced part, zero datum
    Trajectory w;                  // caloric part
    std::vector<VecXr> b;          // mean-mode drift, b(0) = 0
    std::vector<VecXr> b_prime;    // second-order finite differences of b
    Real heat_residual = 0;        // sup_j |w_{j+1} - e^{dt Lap} w_j|
};

// Splits u = v + w + b(t): v is the Duhamel part (forcing -u (x) u when
// f_from_u, else zero), b the spatial mean drift beyond its initial value,
// w the remainder, which must be caloric up to `tol` or the input was not
// a weak solution at grid resolution.
Decomposition decompose(const Trajectory& u, bool f_from_u, Real tol = 1e-8);

// sup over interior snapshots of the advection-diffusion residual of the
// vorticity (scalar for planar fields, vector curl form in 3D); fourth-order
// time differences, spectral space derivatives. Needs >= 5 snapshots.
Real vorticity_residual(const Trajectory& traj);

// sup of the projected momentum residual P[d_t u + div(u (x) u) - Lap u].
Real nse_residual(const Trajectory& traj);

// Reference data.
VectorField taylor_green(const TorusGrid& g);

// Divergence-free random field with spectrum confined to the closed shell
// kmin <= |k| <= kmax, normalized to sup |u| = 1. Deterministic in seed.
VectorField random_shell(const TorusGrid& g, Real kmin, Real kmax,
                         unsigned long long seed);

// Solenoidal square-wave profile u = (0, q(x_1)) with the jumps halfway
// between nodes; every node carries +-1.
VectorField square_wave(const TorusGrid& g);

}  // namespace mild
}  // namespace flowlab
