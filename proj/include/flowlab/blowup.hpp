#pragma once

#include <optional>
#include <vector>

#include "flowlab/mild.hpp"

namespace flowlab {
namespace blowup {

// Sup-norm history h(t) = sup_x |u(x,t)| with its running max H.
struct BlowupTrace {
    std::vector<Real> times;
    std::vector<Real> h;
    std::vector<Real> H;
    std::optional<Real> T_candidate;
};

// Nodal sup-norm series of a trajectory.
BlowupTrace trace_from(const mild::Trajectory& traj);

// Wraps an externally supplied (t, h) series; times must increase.
BlowupTrace trace_from_series(const std::vector<Real>& times,
                              const std::vector<Real>& h);

// inf over recorded times of h(t) sqrt(T - t). Values bounded away from
// zero are consistent with a singularity at T of at least the self-similar
// rate; values near zero refute T as a candidate.
Real leray_rate(const BlowupTrace& trace, Real T);

enum class BlowupType { NoBlowup, TypeI, TypeII };
const char* type_name(BlowupType t);

struct Classification {
    BlowupType type = BlowupType::NoBlowup;
    Real slope = 0;      // d log h / d(-log(T - t)) on the fit window
    Real c_fit = 0;      // sup over the window of h sqrt(T - t)
    Real leray_inf = 0;  // over the whole trace
    int window_used = 0;
    Real fit_residual = 0;
};

// Least-squares slope of log h against -log(T - t) over the trailing
// window. slope <= 0.25 reads as a bounded trace (NoBlowup; the cutoff
// separates flat traces from the self-similar 0.5 with margin for noise),
// slope within 0.5 + 0.05 as the critical rate (TypeI), anything steeper
// as TypeII. Invariant under time translation and parabolic rescaling of
// the trace.
Classification classify(const BlowupTrace& trace, Real T, int window = 16);

// One zoom step: where, when, and how strongly to magnify.
struct RescaleStep {
    VecXr x;                    // concentration point
    Real t = 0;                 // concentration time
    Real M = 1;                 // magnification, |v(0,0)| = 1 when
                                // M = |u(x,t)|
    Real gamma = 1;             // slack: sup|v| <= gamma over past times
    std::optional<Real> lambda; // radial scale 1/M, recorded for
                                // reporting only
};

// Builds the step at the trace argmax: argmax snapshot, argmax node, one
// quadratic refinement pass per axis on |u|^2, slack gamma = 1 + 2^{-k}.
RescaleStep make_step(const mild::Trajectory& traj, int k);

// v(y, s) = (1/M) u(x_k + y / M, t_k + s / M^2) as a trajectory on the
// torus of period M L; every source snapshot maps to one output snapshot
// (cubic interpolation in space; the mapped nodes are source nodes shifted
// by x_k, so an on-node x_k is a pure relabeling). If required_lookback is
// positive, the output must cover s in [-required_lookback, 0]; otherwise
// a geometry error reports the admissible magnification range.
mild::Trajectory rescale(const mild::Trajectory& traj, const RescaleStep& step,
                         Real required_lookback = 0);

// Second zoom around the unit offset e1 inside an already rescaled field:
// w(x, tau) = (1/M) v(e1 + x / M, s_k + tau / M^2).
mild::Trajectory second_rescale(const mild::Trajectory& v, Real M, Real s_k,
                                Real required_lookback = 0);

struct ScaleMonitorRow {
    Real t = 0;
    Real sup_rho_u = 0;    // sup of |x'| |u|, axis through the box center
    Real sup_weighted = 0; // sqrt(T - t) sup|u| when T is set
};

struct ScaleMonitorReport {
    bool applicable = false;  // needs a cylindrical radius, i.e. dim 3
    std::vector<ScaleMonitorRow> rows;
    Real sup_rho_u = 0;
    Real lpq_55 = 0;  // space-time L^5 norm, the critical n/p + 2/q = 1 pair
};

// Time series of the scale-invariant gauges. rho is the distance from the
// vertical axis through the box center; for planar fields the report is
// marked not applicable.
ScaleMonitorReport scale_invariant_monitors(const mild::Trajectory& traj,
                                            std::optional<Real> T = {});

// I(M): the tail of the pointwise-bound integral over the parabolic unit
// window, outside nothing but with the x3 line integral in closed form
// (4 pi / M^3) and the disc and time integrals done by nested adaptive
// quadrature. Decays like 1/M; the constant is pinned by tests against an
// independent quadrature.
Real tail_integral_I(Real M);

}  // namespace blowup
}  // namespace flowlab
