#include "flowlab/parabolic.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>

#include "flowlab/parallel.hpp"

namespace flowlab {
namespace parabolic {

namespace {

using SparseMat = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;

constexpr Real kBoundTol = 1e-9;

void validate_problem(const ParabolicProblem& p) {
    if (p.dim != 1 && p.dim != 2)
        throw DimensionError("parabolic: dim must be 1 or 2");
    if (p.lo.size() != p.dim || p.hi.size() != p.dim)
        throw ShapeError("parabolic: box corners must have dim entries");
    for (int d = 0; d < p.dim; ++d)
        if (!(p.hi[d] > p.lo[d]))
            throw GeometryError("parabolic: box must have positive extent");
    if (!(p.T > 0)) throw ParameterError("parabolic: horizon must be positive");
    if (p.drift_bound < 0)
        throw ParameterError("parabolic: drift bound must be nonnegative");
    if (!p.u0) throw ParameterError("parabolic: initial data missing");
    if (!p.bc) throw ParameterError("parabolic: boundary data missing");
}

}  // namespace

BoxGrid::BoxGrid(int dim_, int n_, const VecXr& lo_, const VecXr& hi_)
    : dim(dim_), n(n_), lo(lo_), hi(hi_) {
    if (dim != 1 && dim != 2)
        throw DimensionError("BoxGrid: dim must be 1 or 2");
    if (n < 3) throw ParameterError("BoxGrid: need at least 3 nodes per side");
    if (lo.size() != dim || hi.size() != dim)
        throw ShapeError("BoxGrid: corner size mismatch");
    for (int d = 0; d < dim; ++d)
        if (!(hi[d] > lo[d]))
            throw GeometryError("BoxGrid: box must have positive extent");
}

VecXr BoxGrid::coord(Index i, Index j) const {
    VecXr x(dim);
    x[0] = lo[0] + h(0) * Real(i);
    if (dim == 2) x[1] = lo[1] + h(1) * Real(j);
    return x;
}

ScalarTrajectory parabolic_solve(const ParabolicProblem& p, int nx, Real dt) {
    validate_problem(p);
    if (!(dt > 0)) throw ParameterError("parabolic_solve: dt must be positive");
    BoxGrid g(p.dim, nx, p.lo, p.hi);

    const long long steps = std::max(1LL, std::llround(p.T / dt));
    dt = p.T / Real(steps);

    Real inv_h_sum = 0;
    for (int d = 0; d < g.dim; ++d) inv_h_sum += 1 / g.h(d);
    if (dt * p.drift_bound * inv_h_sum > 1 + 1e-12)
        throw ParameterError(
            "parabolic_solve: drift CFL violated; need dt * bound * sum(1/h) "
            "<= 1");

    const Index ny = g.dim == 2 ? g.n : 1;
    const Index total = g.node_count();

    // Interior numbering for the implicit diffusion solve.
    std::vector<Index> interior_id(total, -1);
    std::vector<Index> interior_nodes;
    for (Index j = 0; j < ny; ++j)
        for (Index i = 0; i < g.n; ++i)
            if (!g.boundary(i, j)) {
                interior_id[g.flat(i, j)] = Index(interior_nodes.size());
                interior_nodes.push_back(g.flat(i, j));
            }
    const Index m = Index(interior_nodes.size());

    const Real cx = dt / (g.h(0) * g.h(0));
    const Real cy = g.dim == 2 ? dt / (g.h(1) * g.h(1)) : 0;
    std::vector<Triplet> trip;
    trip.reserve(size_t(m) * 5);
    Real diag = 1 + 2 * cx + (g.dim == 2 ? 2 * cy : 0.0);
    for (Index r = 0; r < m; ++r) {
        const Index f = interior_nodes[r];
        const Index i = f % g.n, j = f / g.n;
        trip.emplace_back(r, r, diag);
        auto couple = [&](Index fi, Index fj, Real c) {
            const Index id = interior_id[g.flat(fi, fj)];
            if (id >= 0) trip.emplace_back(r, id, -c);
        };
        couple(i - 1, j, cx);
        couple(i + 1, j, cx);
        if (g.dim == 2) {
            couple(i, j - 1, cy);
            couple(i, j + 1, cy);
        }
    }
    SparseMat A(m, m);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLLT<SparseMat> solver(A);
    if (solver.info() != Eigen::Success)
        throw SolverError("parabolic_solve: diffusion factorization failed");

    ScalarTrajectory traj;
    traj.grid = g;
    traj.dt = dt;

    ArrayXr u(total);
    for (Index j = 0; j < ny; ++j)
        for (Index i = 0; i < g.n; ++i)
            u[g.flat(i, j)] = p.u0(g.coord(i, j));
    traj.snaps.push_back(u);

    ArrayXr adv(total);
    for (long long s = 0; s < steps; ++s) {
        const Real t_now = dt * Real(s);
        const Real t_next = dt * Real(s + 1);

        // Explicit upwind drift, a convex combination under the CFL bound.
        adv = u;
        if (p.drift) {
            for (Index r = 0; r < m; ++r) {
                const Index f = interior_nodes[r];
                const Index i = f % g.n, j = f / g.n;
                const VecXr a = p.drift(g.coord(i, j), t_now);
                if (a.size() != g.dim)
                    throw ShapeError("parabolic_solve: drift has wrong size");
                Real upd = 0;
                for (int d = 0; d < g.dim; ++d) {
                    if (std::abs(a[d]) > p.drift_bound + kBoundTol)
                        throw DataError(
                            "parabolic_solve: sampled drift exceeds the "
                            "declared bound");
                    const Real hd = g.h(d);
                    const Index fm = d == 0 ? g.flat(i - 1, j) : g.flat(i, j - 1);
                    const Index fp = d == 0 ? g.flat(i + 1, j) : g.flat(i, j + 1);
                    const Real ap = std::max(a[d], 0.0);
                    const Real am = std::min(a[d], 0.0);
                    upd += ap * (u[f] - u[fm]) / hd + am * (u[fp] - u[f]) / hd;
                }
                adv[f] = u[f] - dt * upd;
            }
        }

        // Implicit diffusion with the boundary trace at the new time.
        VecXr rhs(m);
        for (Index r = 0; r < m; ++r) rhs[r] = adv[interior_nodes[r]];
        auto add_bc = [&](Index i, Index j, Real c, Index r) {
            if (g.boundary(i, j)) rhs[r] += c * p.bc(g.coord(i, j), t_next);
        };
        for (Index r = 0; r < m; ++r) {
            const Index f = interior_nodes[r];
            const Index i = f % g.n, j = f / g.n;
            add_bc(i - 1, j, cx, r);
            add_bc(i + 1, j, cx, r);
            if (g.dim == 2) {
                add_bc(i, j - 1, cy, r);
                add_bc(i, j + 1, cy, r);
            }
        }
        VecXr sol = solver.solve(rhs);
        if (solver.info() != Eigen::Success)
            throw SolverError("parabolic_solve: diffusion solve failed");

        for (Index j = 0; j < ny; ++j)
            for (Index i = 0; i < g.n; ++i)
                if (g.boundary(i, j))
                    u[g.flat(i, j)] = p.bc(g.coord(i, j), t_next);
        for (Index r = 0; r < m; ++r) u[interior_nodes[r]] = sol[r];
        traj.snaps.push_back(u);
    }
    return traj;
}

MaxPrincipleReport max_principle_report(const ScalarTrajectory& traj,
                                        Real tol) {
    if (traj.snaps.empty())
        throw DataError("max_principle_report: empty trajectory");
    const BoxGrid& g = traj.grid;
    const Index ny = g.dim == 2 ? g.n : 1;
    MaxPrincipleReport rep;

    Real hi = traj.snaps[0].maxCoeff();
    Real lo = traj.snaps[0].minCoeff();
    rep.sup.push_back(hi);
    rep.inf.push_back(lo);

    for (int s = 1; s < traj.count(); ++s) {
        const ArrayXr& u = traj.snaps[s];
        Real bsup = -std::numeric_limits<Real>::infinity();
        Real binf = std::numeric_limits<Real>::infinity();
        Real isup = bsup, iinf = binf;
        for (Index j = 0; j < ny; ++j)
            for (Index i = 0; i < g.n; ++i) {
                const Real v = u[g.flat(i, j)];
                if (g.boundary(i, j)) {
                    bsup = std::max(bsup, v);
                    binf = std::min(binf, v);
                } else {
                    isup = std::max(isup, v);
                    iinf = std::min(iinf, v);
                }
            }
        hi = std::max(hi, bsup);
        lo = std::min(lo, binf);
        const Real excess = std::max(isup - hi, lo - iinf);
        if (excess > tol) {
            rep.violating_steps.push_back(s);
            rep.worst_excess = std::max(rep.worst_excess, excess);
        }
        rep.sup.push_back(u.maxCoeff());
        rep.inf.push_back(u.minCoeff());
    }
    rep.upper_bound = hi;
    rep.lower_bound = lo;
    return rep;
}

std::vector<Real> default_windows(Real T) {
    return {T, T / 2, T / 4, T / 8, T / 16};
}

namespace {

bool inside_box(const VecXr& x, const VecXr& lo, const VecXr& hi) {
    for (Index d = 0; d < lo.size(); ++d)
        if (x[d] < lo[d] || x[d] > hi[d]) return false;
    return true;
}

// Multilinear point evaluation of a nodal box field.
Real eval_linear(const BoxGrid& g, const ArrayXr& u, const VecXr& x) {
    std::array<Index, 2> i0{0, 0};
    std::array<Real, 2> w{0, 0};
    for (int d = 0; d < g.dim; ++d) {
        Real s = (x[d] - g.lo[d]) / g.h(d);
        s = std::min(std::max(s, 0.0), Real(g.n - 1));
        Index base = std::min(Index(std::floor(s)), Index(g.n - 2));
        i0[d] = base;
        w[d] = s - Real(base);
    }
    if (g.dim == 1)
        return (1 - w[0]) * u[g.flat(i0[0])] + w[0] * u[g.flat(i0[0] + 1)];
    const Real v00 = u[g.flat(i0[0], i0[1])];
    const Real v10 = u[g.flat(i0[0] + 1, i0[1])];
    const Real v01 = u[g.flat(i0[0], i0[1] + 1)];
    const Real v11 = u[g.flat(i0[0] + 1, i0[1] + 1)];
    return (1 - w[1]) * ((1 - w[0]) * v00 + w[0] * v10) +
           w[1] * ((1 - w[0]) * v01 + w[0] * v11);
}

HarnackMember measure_member(const ParabolicProblem& p,
                             const HarnackProbe& probe, int nx, Real dt,
                             const std::string& label) {
    ScalarTrajectory traj = parabolic_solve(p, nx, dt);
    HarnackMember mem;
    mem.label = label;

    Real sup = 0, min_data = 0;
    for (const ArrayXr& s : traj.snaps) {
        sup = std::max(sup, s.maxCoeff());
        min_data = std::min(min_data, s.minCoeff());
    }
    if (min_data < -1e-12)
        throw DataError("harnack probe: family member went negative; the "
                        "stability statement assumes nonnegative solutions");
    mem.global_sup = sup;
    if (sup <= 0) return mem;  // degenerate, never qualifies

    const ArrayXr& last = traj.snaps.back();
    Real peak = -std::numeric_limits<Real>::infinity();
    for (const VecXr& x : probe.K)
        peak = std::max(peak, eval_linear(traj.grid, last, x));
    mem.peak_at_T = peak / sup;

    Real lo = std::numeric_limits<Real>::infinity();
    const BoxGrid& g = traj.grid;
    const Index ny = g.dim == 2 ? g.n : 1;
    for (int s = 0; s < traj.count(); ++s) {
        if (traj.time(s) < probe.tau - 1e-12) continue;
        const ArrayXr& u = traj.snaps[s];
        for (Index j = 0; j < ny; ++j)
            for (Index i = 0; i < g.n; ++i)
                if (inside_box(g.coord(i, j), probe.omega_lo, probe.omega_hi))
                    lo = std::min(lo, u[g.flat(i, j)]);
    }
    mem.interior_min = lo / sup;
    return mem;
}

}  // namespace

HarnackTable harnack_stability_probe(const ParabolicProblem& p,
                                     const HarnackProbe& probe, int nx,
                                     Real dt) {
    validate_problem(p);
    if (probe.omega_lo.size() != p.dim || probe.omega_hi.size() != p.dim)
        throw ShapeError("harnack probe: subdomain corners must have dim entries");
    for (int d = 0; d < p.dim; ++d)
        if (!(p.lo[d] < probe.omega_lo[d] && probe.omega_hi[d] < p.hi[d] &&
              probe.omega_lo[d] < probe.omega_hi[d]))
            throw GeometryError(
                "harnack probe: need Omega' strictly inside the box");
    if (probe.K.empty())
        throw GeometryError("harnack probe: probe set K is empty");
    for (const VecXr& x : probe.K)
        if (x.size() != p.dim || !inside_box(x, probe.omega_lo, probe.omega_hi))
            throw GeometryError("harnack probe: K must lie inside Omega'");
    if (!(probe.tau > 0 && probe.tau < p.T))
        throw GeometryError("harnack probe: need 0 < tau < T");
    if (probe.deltas.empty())
        throw ParameterError("harnack probe: delta list is empty");
    for (Real th : probe.windows)
        if (!(th > 0 && th <= p.T + 1e-12))
            throw ParameterError("harnack probe: windows must lie in (0, T]");

    struct Job {
        ParabolicProblem prob;
        std::string label;
    };
    std::vector<Job> jobs;
    if (probe.include_own) jobs.push_back({p, "own-data"});
    for (Real theta : probe.windows) {
        ParabolicProblem q = p;
        const Real cut = p.T - theta;
        SpaceTimeFun base = p.bc;
        q.u0 = [](const VecXr&) { return 0.0; };
        q.bc = [base, cut](const VecXr& x, Real t) {
            return t > cut + 1e-15 ? base(x, t) : 0.0;
        };
        jobs.push_back({std::move(q), "window-" + std::to_string(theta)});
    }
    if (jobs.empty())
        throw ParameterError("harnack probe: family is empty");

    HarnackTable table;
    table.members.resize(jobs.size());
    const int workers = std::min<int>(max_workers(), int(jobs.size()));
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> pool;
    for (int w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, [&]() {
            for (size_t j = next.fetch_add(1); j < jobs.size();
                 j = next.fetch_add(1))
                table.members[j] =
                    measure_member(jobs[j].prob, probe, nx, dt, jobs[j].label);
        }));
    for (auto& f : pool) f.get();

    for (Real delta : probe.deltas) {
        HarnackRow row;
        row.delta = delta;
        for (const HarnackMember& mem : table.members) {
            if (mem.global_sup <= 0) continue;
            if (mem.peak_at_T >= 1 - delta - 1e-12) {
                ++row.qualifying;
                row.eps = std::max(row.eps, 1 - mem.interior_min);
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace parabolic
}  // namespace flowlab
