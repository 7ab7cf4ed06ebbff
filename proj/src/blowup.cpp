#include "flowlab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "flowlab/quadrature.hpp"
#include "flowlab/sampling.hpp"

namespace flowlab {
namespace blowup {

namespace {

std::string fmt(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

BlowupTrace trace_from(const mild::Trajectory& traj) {
    mild::validate(traj);
    BlowupTrace tr;
    Real running = 0;
    for (const VectorField& s : traj.snaps) {
        tr.times.push_back(s.time);
        const Real hv = sup_norm(s);
        running = std::max(running, hv);
        tr.h.push_back(hv);
        tr.H.push_back(running);
    }
    return tr;
}

BlowupTrace trace_from_series(const std::vector<Real>& times,
                              const std::vector<Real>& h) {
    if (times.size() != h.size() || times.empty())
        throw DataError("trace: times and h must be nonempty and aligned");
    BlowupTrace tr;
    Real running = -std::numeric_limits<Real>::infinity();
    for (size_t j = 0; j < times.size(); ++j) {
        if (j > 0 && !(times[j] > times[j - 1]))
            throw DataError("trace: times must strictly increase");
        running = std::max(running, h[j]);
        tr.times.push_back(times[j]);
        tr.h.push_back(h[j]);
        tr.H.push_back(running);
    }
    return tr;
}

Real leray_rate(const BlowupTrace& trace, Real T) {
    if (trace.times.empty()) throw DataError("leray_rate: empty trace");
    Real inf = std::numeric_limits<Real>::infinity();
    for (size_t j = 0; j < trace.times.size(); ++j) {
        if (!(trace.times[j] < T))
            throw DomainError("leray_rate: trace times must precede T");
        inf = std::min(inf, trace.h[j] * std::sqrt(T - trace.times[j]));
    }
    return inf;
}

const char* type_name(BlowupType t) {
    switch (t) {
        case BlowupType::NoBlowup: return "NoBlowup";
        case BlowupType::TypeI: return "TypeI";
        case BlowupType::TypeII: return "TypeII";
    }
    return "unknown";
}

Classification classify(const BlowupTrace& trace, Real T, int window) {
    const int n = int(trace.times.size());
    if (window > n) window = n;
    if (window < 8)
        throw DataError("classify: fit window needs at least 8 samples");

    Classification cls;
    cls.window_used = window;
    cls.leray_inf = leray_rate(trace, T);

    const int lo = n - window;
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = lo; j < n; ++j) {
        if (!(trace.h[j] > 0))
            throw DataError("classify: nonpositive h inside the fit window");
        const Real x = -std::log(T - trace.times[j]);
        const Real y = std::log(trace.h[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const Real denom = window * sxx - sx * sx;
    if (!(denom > 0))
        throw DataError("classify: degenerate time spacing in the window");
    cls.slope = (window * sxy - sx * sy) / denom;
    const Real intercept = (sy - cls.slope * sx) / window;

    Real rss = 0, cmax = 0;
    for (int j = lo; j < n; ++j) {
        const Real x = -std::log(T - trace.times[j]);
        const Real resid = std::log(trace.h[j]) - (intercept + cls.slope * x);
        rss += resid * resid;
        cmax = std::max(cmax, trace.h[j] * std::sqrt(T - trace.times[j]));
    }
    cls.fit_residual = std::sqrt(rss / window);
    cls.c_fit = cmax;

    if (cls.slope <= 0.25)
        cls.type = BlowupType::NoBlowup;
    else if (cls.slope <= 0.5 + 0.05)
        cls.type = BlowupType::TypeI;
    else
        cls.type = BlowupType::TypeII;
    return cls;
}

RescaleStep make_step(const mild::Trajectory& traj, int k) {
    mild::validate(traj);
    if (k < 0) throw ParameterError("make_step: schedule index must be >= 0");
    const TorusGrid& g = traj.grid();

    int best_j = 0;
    Index best_f = 0;
    Real best = -1;
    for (int j = 0; j < traj.count(); ++j) {
        ScalarField mag = magnitude(traj.snaps[j]);
        Index f;
        const Real v = mag.data.maxCoeff(&f);
        if (v > best) {
            best = v;
            best_j = j;
            best_f = f;
        }
    }
    if (!(best > 0)) throw DataError("make_step: trajectory is identically zero");

    // One quadratic refinement pass per axis on |u|^2.
    ScalarField mag = magnitude(traj.snaps[best_j]);
    const auto idx = g.unflat(best_f);
    VecXr x(g.dim);
    const Real h = g.h();
    for (int d = 0; d < g.dim; ++d) {
        auto at = [&](Index shift) {
            std::array<Index, 3> p = idx;
            p[d] = (p[d] + shift + g.n) % g.n;
            const Real m = mag.data[g.flat(p[0], p[1], p[2])];
            return m * m;
        };
        const Real m0 = at(0), mm = at(-1), mp = at(1);
        const Real denom = mm - 2 * m0 + mp;
        Real delta = 0;
        if (denom < 0) delta = 0.5 * (mm - mp) / denom * h;
        if (std::abs(delta) > h / 2) delta = 0;
        x[d] = g.coord(idx[d]) + delta;
    }

    RescaleStep step;
    step.x = x;
    step.t = traj.time(best_j);
    const VecXr uval = mild::sample(traj, x, step.t);
    step.M = uval.norm();
    if (!(step.M > 0)) throw DataError("make_step: vanishing magnitude at peak");
    step.gamma = 1 + std::pow(2.0, -k);
    step.lambda = 1 / step.M;
    return step;
}

mild::Trajectory rescale(const mild::Trajectory& traj, const RescaleStep& step,
                         Real required_lookback) {
    mild::validate(traj);
    const TorusGrid& g = traj.grid();
    if (step.x.size() != g.dim)
        throw ShapeError("rescale: concentration point has wrong dimension");
    if (!(step.M > 0)) throw ParameterError("rescale: M must be positive");
    if (!(step.gamma >= 1)) throw ParameterError("rescale: gamma must be >= 1");
    const Real t0 = traj.t0(), t1 = traj.t_end();
    if (step.t < t0 - 1e-12 || step.t > t1 + 1e-12)
        throw GeometryError("rescale: concentration time outside trajectory");
    if (required_lookback > 0) {
        const Real avail = step.t - t0;
        if (step.M * step.M * avail < required_lookback * (1 - 1e-12)) {
            if (!(avail > 0))
                throw GeometryError(
                    "rescale: no history before t_k; no magnification covers "
                    "the requested lookback");
            throw GeometryError(
                "rescale: lookback window escapes the trajectory; admissible "
                "M >= " +
                fmt(std::sqrt(required_lookback / avail)) + " (got " +
                fmt(step.M) + ")");
        }
    }

    TorusGrid out_grid(g.dim, g.n, step.M * g.period);
    mild::Trajectory out;
    out.dt = step.M * step.M * traj.dt;
    out.scheme = "rescaled:" + traj.scheme;
    out.snaps.reserve(traj.snaps.size());
    const Real cell = g.period / g.n;
    for (int j = 0; j < traj.count(); ++j) {
        VectorField v(out_grid, step.M * step.M * (traj.time(j) - step.t));
        VecXr x(g.dim);
        const Index total = out_grid.node_count();
        for (Index f = 0; f < total; ++f) {
            const auto idx = out_grid.unflat(f);
            for (int d = 0; d < g.dim; ++d)
                x[d] = step.x[d] + cell * Real(idx[d]);
            const VecXr val = sample_cubic(traj.snaps[j], x);
            for (int d = 0; d < g.dim; ++d) v.comp[d][f] = val[d] / step.M;
        }
        out.snaps.push_back(std::move(v));
    }
    return out;
}

mild::Trajectory second_rescale(const mild::Trajectory& v, Real M, Real s_k,
                                Real required_lookback) {
    RescaleStep step;
    step.x = VecXr::Zero(v.grid().dim);
    step.x[0] = 1;
    step.t = s_k;
    step.M = M;
    return rescale(v, step, required_lookback);
}

ScaleMonitorReport scale_invariant_monitors(const mild::Trajectory& traj,
                                            std::optional<Real> T) {
    mild::validate(traj);
    const TorusGrid& g = traj.grid();
    ScaleMonitorReport rep;
    rep.applicable = g.dim == 3;
    if (!rep.applicable) return rep;

    const Real c = g.period / 2;
    ArrayXr rho(g.node_count());
    for (Index f = 0; f < g.node_count(); ++f) {
        const auto idx = g.unflat(f);
        const Real dx = g.coord(idx[0]) - c;
        const Real dy = g.coord(idx[1]) - c;
        rho[f] = std::sqrt(dx * dx + dy * dy);
    }

    Real l5_acc = 0;
    for (int j = 0; j < traj.count(); ++j) {
        ScaleMonitorRow row;
        row.t = traj.time(j);
        ScalarField mag = magnitude(traj.snaps[j]);
        row.sup_rho_u = (rho * mag.data).maxCoeff();
        if (T) {
            if (!(row.t < *T))
                throw DomainError("scale monitors: snapshot at or past T");
            row.sup_weighted = std::sqrt(*T - row.t) * mag.data.maxCoeff();
        }
        rep.sup_rho_u = std::max(rep.sup_rho_u, row.sup_rho_u);
        const Real l5 = lp_norm(traj.snaps[j], 5);
        const Real w =
            (j == 0 || j == traj.count() - 1) ? traj.dt / 2 : traj.dt;
        l5_acc += w * std::pow(l5, 5);
        rep.rows.push_back(row);
    }
    rep.lpq_55 = std::pow(l5_acc, 0.2);
    return rep;
}

Real tail_integral_I(Real M) {
    if (!(M >= 1)) throw ParameterError("tail_integral_I: need M >= 1");
    const Real line = 4 * kPi / (M * M * M);  // int dx3 (M^2/4 + x3^2)^{-2}
    auto disc = [&](Real sigma) {
        const Real b = std::sqrt(sigma);
        auto f = [&](Real rho) {
            const Real d = b + rho / M;
            return rho / (d * d);
        };
        return 2 * kPi * adaptive_quadrature(f, 0, M / 2, 1e-9, 1e-30);
    };
    // The integrand has an integrable log singularity at sigma = 0; the
    // clipped sliver [0, 1e-10] contributes below 1e-8 of the total.
    auto outer = [&](Real sigma) { return line * disc(sigma); };
    return adaptive_quadrature(outer, 1e-10, 1.0, 3e-7, 1e-30);
}

}  // namespace blowup
}  // namespace flowlab
