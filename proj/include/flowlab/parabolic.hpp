#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flowlab/field.hpp"

namespace flowlab {
namespace parabolic {

using SpaceFun = std::function<Real(const VecXr&)>;
using SpaceTimeFun = std::function<Real(const VecXr&, Real)>;
using DriftFun = std::function<VecXr(const VecXr&, Real)>;

// Closed box grid, n nodes per direction including both boundary nodes.
struct BoxGrid {
    int dim = 1;
    int n = 0;
    VecXr lo, hi;

    BoxGrid() = default;
    BoxGrid(int dim_, int n_, const VecXr& lo_, const VecXr& hi_);

    Real h(int d) const { return (hi[d] - lo[d]) / (n - 1); }
    Index node_count() const {
        Index c = 1;
        for (int d = 0; d < dim; ++d) c *= n;
        return c;
    }
    Index flat(Index i, Index j = 0) const { return i + Index(n) * j; }
    VecXr coord(Index i, Index j = 0) const;
    bool boundary(Index i, Index j = 0) const {
        bool b = i == 0 || i == n - 1;
        if (dim == 2) b = b || j == 0 || j == n - 1;
        return b;
    }
};

// Drift-diffusion problem d_t u + a(x,t).grad u - Lap u = 0 on a box with
// Dirichlet data. The drift bound is declared up front; sampled values are
// checked against it.
struct ParabolicProblem {
    int dim = 1;
    VecXr lo, hi;
    Real T = 1;
    DriftFun drift;       // empty means a = 0
    Real drift_bound = 0; // declared sup_d |a_d|
    SpaceFun u0;
    SpaceTimeFun bc;
};

struct ScalarTrajectory {
    BoxGrid grid;
    std::vector<ArrayXr> snaps;
    Real dt = 0;
    Real t0 = 0;

    int count() const { return int(snaps.size()); }
    Real time(int j) const { return t0 + dt * j; }
};

// Implicit Euler diffusion with explicit first-order upwind drift. Both
// substeps are monotone, so the discrete maximum principle holds exactly
// (up to the linear solve, which is a direct factorization). The drift CFL
// condition dt * sup|a| * sum_d 1/h_d <= 1 is checked before stepping.
ScalarTrajectory parabolic_solve(const ParabolicProblem& p, int nx, Real dt);

struct MaxPrincipleReport {
    std::vector<Real> sup, inf;      // over the closed box, per snapshot
    Real upper_bound = 0;            // sup of initial and boundary data seen
    Real lower_bound = 0;
    std::vector<int> violating_steps;
    Real worst_excess = 0;
    bool clean() const { return violating_steps.empty(); }
};

// Flags any step whose interior extremum escapes the running bound set by
// the initial snapshot and the boundary trace.
MaxPrincipleReport max_principle_report(const ScalarTrajectory& traj,
                                        Real tol = 1e-12);

// Probe geometry and measurement family for the interior stability sweep.
// Family members are solutions of the problem's equation with modified
// data: optionally the problem's own data, plus one member per window
// length theta with zero initial data and the boundary values switched on
// only during (T - theta, T]. Each member is normalized by its global sup.
struct HarnackProbe {
    std::vector<VecXr> K;      // finite sample of the compact probe set
    VecXr omega_lo, omega_hi;  // interior subdomain, strictly inside the box
    Real tau = 0;              // observation starts here
    std::vector<Real> deltas;
    std::vector<Real> windows; // window lengths theta, in (0, T]
    bool include_own = true;
};

struct HarnackMember {
    std::string label;
    Real peak_at_T = 0;      // sup_K u(., T) / sup u
    Real interior_min = 0;   // min over Omega' x [tau, T] / sup u
    Real global_sup = 0;     // normalizer, in original units
};

struct HarnackRow {
    Real delta = 0;
    Real eps = 0;       // worst 1 - interior_min over qualifying members
    int qualifying = 0; // members with peak_at_T >= 1 - delta
};

struct HarnackTable {
    std::vector<HarnackRow> rows;
    std::vector<HarnackMember> members;
};

// Runs the family, one solve per member (in parallel), and assembles the
// eps(delta) table. Qualifying sets are nested, so eps is non-decreasing
// in delta by construction.
HarnackTable harnack_stability_probe(const ParabolicProblem& p,
                                     const HarnackProbe& probe, int nx,
                                     Real dt);

// Default window ladder used by the command-line sweep.
std::vector<Real> default_windows(Real T);

}  // namespace parabolic
}  // namespace flowlab
