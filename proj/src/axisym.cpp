#include "flowlab/axisym.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace flowlab {
namespace axisym {

namespace {

using SparseMat = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;
using Factor = Eigen::SimplicialLLT<SparseMat>;

constexpr Real kContinuityTol = 1e-6;
constexpr Real kStreamTol = 1e-10;

void require_even(const AxisymScalarField& s, const char* what) {
    if (s.parity != Parity::Even)
        throw ParityError(std::string(what) +
                          ": input must be even across the axis");
}

void require_axis_zero(const AxisymScalarField& f, const char* what) {
    for (Index j = 0; j < f.grid.nz; ++j)
        if (std::abs(f.data(0, j)) > 1e-12)
            throw DataError(std::string(what) + ": f must vanish on the axis");
}

// Interior unknown numbering for fields pinned on the axis (f, psi):
// i in [1, nr-2], j in [1, nz-2].
struct PinnedIndex {
    int nr, nz;
    Index operator()(Index i, Index j) const {
        return (i - 1) + Index(nr - 2) * (j - 1);
    }
    Index size() const { return Index(nr - 2) * (nz - 2); }
};

// Unknown numbering for eta, which evolves on the axis: i in [0, nr-2].
struct AxisIndex {
    int nr, nz;
    Index operator()(Index i, Index j) const {
        return i + Index(nr - 1) * (j - 1);
    }
    Index size() const { return Index(nr - 1) * (nz - 2); }
};

// Stiffness of -[d_r((1/r) s_r) + (1/r) s_zz] in finite-volume form with
// cell measure dr/r. Symmetric positive definite; shared by the f step
// (as I*mass + dt*K) and the stream solve (as K alone).
SparseMat pinned_stiffness(const AxisymGrid& g, VecXr* mass) {
    const Real hr = g.dr(), hz = g.dz();
    PinnedIndex id{g.nr, g.nz};
    std::vector<Triplet> trip;
    trip.reserve(size_t(id.size()) * 5);
    if (mass) mass->resize(id.size());
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) {
            const Index row = id(i, j);
            const Real r = g.r(i);
            const Real m = hr / r;
            if (mass) (*mass)[row] = m;
            const Real cp = 1 / ((r + hr / 2) * hr);
            const Real cm = 1 / ((r - hr / 2) * hr);
            const Real cz = m / (hz * hz);
            trip.emplace_back(row, row, cp + cm + 2 * cz);
            if (i + 1 <= g.nr - 2) trip.emplace_back(row, id(i + 1, j), -cp);
            if (i - 1 >= 1) trip.emplace_back(row, id(i - 1, j), -cm);
            if (j + 1 <= g.nz - 2) trip.emplace_back(row, id(i, j + 1), -cz);
            if (j - 1 >= 1) trip.emplace_back(row, id(i, j - 1), -cz);
        }
    SparseMat A(id.size(), id.size());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

// Stiffness of -(1/r^3)[(r^3 s_r)_r + r^3 s_zz] with exact cell masses
// int r^3 dr. The axis cell [0, h/2] reproduces the parity limit
// 8 (s_1 - s_0) / h^2 of the five-dimensional Laplacian.
SparseMat axis_stiffness(const AxisymGrid& g, VecXr* mass) {
    const Real hr = g.dr(), hz = g.dz();
    AxisIndex id{g.nr, g.nz};
    std::vector<Triplet> trip;
    trip.reserve(size_t(id.size()) * 5);
    if (mass) mass->resize(id.size());
    auto quart = [](Real r) { return r * r * r * r / 4; };
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 0; i <= g.nr - 2; ++i) {
            const Index row = id(i, j);
            const Real r = g.r(i);
            const Real lo = std::max(r - hr / 2, 0.0);
            const Real m = quart(r + hr / 2) - quart(lo);
            if (mass) (*mass)[row] = m;
            const Real rp = r + hr / 2;
            const Real cp = rp * rp * rp / hr;
            Real cm = 0;
            if (i >= 1) {
                const Real rm = r - hr / 2;
                cm = rm * rm * rm / hr;
            }
            const Real cz = m / (hz * hz);
            trip.emplace_back(row, row, cp + cm + 2 * cz);
            if (i + 1 <= g.nr - 2) trip.emplace_back(row, id(i + 1, j), -cp);
            if (i - 1 >= 0) trip.emplace_back(row, id(i - 1, j), -cm);
            if (j + 1 <= g.nz - 2) trip.emplace_back(row, id(i, j + 1), -cz);
            if (j - 1 >= 1) trip.emplace_back(row, id(i, j - 1), -cz);
        }
    SparseMat A(id.size(), id.size());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

// Cached Cholesky factors of mass + dt * stiffness, keyed by grid and dt.
enum class OpKind { Swirl, Eta };

struct CachedOp {
    std::shared_ptr<Factor> factor;
    VecXr mass;
};

CachedOp implicit_operator(OpKind kind, const AxisymGrid& g, Real dt) {
    using Key = std::tuple<int, int, int, Real, Real, Real, Real>;
    static std::map<Key, CachedOp> cache;
    static std::mutex lock;
    const Key key{int(kind), g.nr, g.nz, g.r_max, g.z_min, g.z_max, dt};
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    VecXr mass;
    SparseMat K = kind == OpKind::Swirl ? pinned_stiffness(g, &mass)
                                        : axis_stiffness(g, &mass);
    SparseMat A = SparseMat(mass.asDiagonal()) + dt * K;
    CachedOp op;
    op.mass = mass;
    op.factor = std::make_shared<Factor>(A);
    if (op.factor->info() != Eigen::Success)
        throw SolverError("axisym: implicit diffusion factorization failed");
    cache[key] = op;
    return op;
}

void check_grid(const AxisymGrid& a, const AxisymGrid& b, const char* what) {
    if (!(a == b)) throw ShapeError(std::string(what) + ": grid mismatch");
}

// First-order upwind advection term u . grad s at an interior node.
Real upwind(const ArrayXXr& s, const ArrayXXr& ur, const ArrayXXr& uz,
            const AxisymGrid& g, Index i, Index j) {
    const Real hr = g.dr(), hz = g.dz();
    Real adv = 0;
    const Real ar = ur(i, j);
    if (i > 0) {
        adv += std::max(ar, 0.0) * (s(i, j) - s(i - 1, j)) / hr;
        adv += std::min(ar, 0.0) * (s(i + 1, j) - s(i, j)) / hr;
    }
    // On the axis u_r = 0 by regularity; nothing to add.
    const Real az = uz(i, j);
    adv += std::max(az, 0.0) * (s(i, j) - s(i, j - 1)) / hz;
    adv += std::min(az, 0.0) * (s(i, j + 1) - s(i, j)) / hz;
    return adv;
}

void check_cfl(const AxisymField& u, const AxisymGrid& g, Real dt,
               const char* what) {
    const Real c =
        dt * (u.u_r.abs().maxCoeff() / g.dr() + u.u_z.abs().maxCoeff() / g.dz());
    if (c > 1 + 1e-12)
        throw ParameterError(std::string(what) +
                             ": advective CFL violated (dt too large)");
}

void check_meridional(const AxisymField& u, const AxisymGrid& g,
                      const char* what) {
    check_grid(u.grid, g, what);
    for (Index j = 0; j < g.nz; ++j)
        if (std::abs(u.u_r(0, j)) > 1e-10)
            throw DataError(std::string(what) +
                            ": meridional u_r must vanish on the axis");
    const Real hr = g.dr(), hz = g.dz();
    Real worst = 0;
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) {
            const Real div =
                (g.r(i + 1) * u.u_r(i + 1, j) - g.r(i - 1) * u.u_r(i - 1, j)) /
                    (2 * hr * g.r(i)) +
                (u.u_z(i, j + 1) - u.u_z(i, j - 1)) / (2 * hz);
            worst = std::max(worst, std::abs(div));
        }
    if (worst > kContinuityTol)
        throw DataError(std::string(what) +
                        ": meridional field is not divergence-consistent");
}

AxisymField velocity_from_psi(const AxisymScalarField& psi) {
    const AxisymGrid& g = psi.grid;
    const Real hr = g.dr(), hz = g.dz();
    AxisymField u(g, psi.time);
    for (Index j = 0; j < g.nz; ++j)
        for (Index i = 0; i < g.nr; ++i) {
            if (j >= 1 && j <= g.nz - 2 && i >= 1)
                u.u_r(i, j) =
                    -(psi.data(i, j + 1) - psi.data(i, j - 1)) / (2 * hz) /
                    g.r(i);
            if (i == 0) {
                u.u_z(0, j) = 2 * psi.data(1, j) / (hr * hr);
            } else if (i == g.nr - 1) {
                u.u_z(i, j) = (3 * psi.data(i, j) - 4 * psi.data(i - 1, j) +
                               psi.data(i - 2, j)) /
                              (2 * hr) / g.r(i);
            } else {
                u.u_z(i, j) =
                    (psi.data(i + 1, j) - psi.data(i - 1, j)) / (2 * hr) /
                    g.r(i);
            }
        }
    return u;
}

AxisymScalarField solve_stream(const AxisymScalarField& eta) {
    const AxisymGrid& g = eta.grid;
    const Real hr = g.dr();
    PinnedIndex id{g.nr, g.nz};
    SparseMat A = pinned_stiffness(g, nullptr);
    // Row scaling is hr/r times -L*, and -L* psi = r^2 eta, so the load
    // carries hr * r * eta.
    VecXr b(id.size());
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i)
            b[id(i, j)] = hr * g.r(i) * eta.data(i, j);

    Eigen::ConjugateGradient<SparseMat, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(kStreamTol);
    cg.setMaxIterations(10 * id.size());
    cg.compute(A);
    VecXr x = cg.solve(b);
    if (cg.info() != Eigen::Success)
        throw SolverError("stream solve: conjugate gradients stalled at "
                          "relative residual " +
                          std::to_string(cg.error()));

    AxisymScalarField psi(g, Parity::Even, eta.time);
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) psi.data(i, j) = x[id(i, j)];
    return psi;
}

}  // namespace

AxisymScalarField laplacian5(const AxisymScalarField& s) {
    require_even(s, "laplacian5");
    const AxisymGrid& g = s.grid;
    const Real hr = g.dr(), hz = g.dz();
    const auto& d = s.data;

    AxisymScalarField out(g, Parity::Even, s.time);
    auto szz = [&](Index i, Index j) {
        if (j == 0)
            return (2 * d(i, 0) - 5 * d(i, 1) + 4 * d(i, 2) - d(i, 3)) /
                   (hz * hz);
        if (j == g.nz - 1)
            return (2 * d(i, j) - 5 * d(i, j - 1) + 4 * d(i, j - 2) -
                    d(i, j - 3)) /
                   (hz * hz);
        return (d(i, j + 1) - 2 * d(i, j) + d(i, j - 1)) / (hz * hz);
    };
    for (Index j = 0; j < g.nz; ++j)
        for (Index i = 0; i < g.nr; ++i) {
            Real radial;
            if (i == 0) {
                // Even parity: s_r(0) = 0, so Lap5 -> 4 s_rr + s_zz.
                radial = 8 * (d(1, j) - d(0, j)) / (hr * hr);
            } else if (i == g.nr - 1) {
                const Real srr = (2 * d(i, j) - 5 * d(i - 1, j) +
                                  4 * d(i - 2, j) - d(i - 3, j)) /
                                 (hr * hr);
                const Real sr =
                    (3 * d(i, j) - 4 * d(i - 1, j) + d(i - 2, j)) / (2 * hr);
                radial = srr + 3 * sr / g.r(i);
            } else {
                const Real srr =
                    (d(i + 1, j) - 2 * d(i, j) + d(i - 1, j)) / (hr * hr);
                const Real sr = (d(i + 1, j) - d(i - 1, j)) / (2 * hr);
                radial = srr + 3 * sr / g.r(i);
            }
            out.data(i, j) = radial + szz(i, j);
        }
    return out;
}

AxisymScalarField swirl_evolve(const SwirlState& state,
                               const AxisymField& meridional, Real dt) {
    if (!(dt > 0)) throw ParameterError("swirl_evolve: dt must be positive");
    const AxisymGrid& g = state.grid;
    require_even(state.f, "swirl_evolve");
    require_axis_zero(state.f, "swirl_evolve");
    check_grid(state.f.grid, g, "swirl_evolve");
    check_meridional(meridional, g, "swirl_evolve");
    check_cfl(meridional, g, dt, "swirl_evolve");

    const auto& f = state.f.data;
    ArrayXXr adv = f;
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i)
            adv(i, j) =
                f(i, j) -
                dt * upwind(f, meridional.u_r, meridional.u_z, g, i, j);

    CachedOp op = implicit_operator(OpKind::Swirl, g, dt);
    PinnedIndex id{g.nr, g.nz};
    VecXr rhs(id.size());
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i)
            rhs[id(i, j)] = op.mass[id(i, j)] * adv(i, j);
    VecXr sol = op.factor->solve(rhs);

    AxisymScalarField out(g, Parity::Even, state.time + dt);
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) out.data(i, j) = sol[id(i, j)];
    return out;  // axis and outer boundaries stay zero
}

AxisymScalarField eta_evolve(const SwirlState& state,
                             const AxisymField& meridional, Real dt,
                             bool with_swirl_source) {
    if (!(dt > 0)) throw ParameterError("eta_evolve: dt must be positive");
    const AxisymGrid& g = state.grid;
    require_even(state.eta, "eta_evolve");
    check_grid(state.eta.grid, g, "eta_evolve");
    check_meridional(meridional, g, "eta_evolve");
    check_cfl(meridional, g, dt, "eta_evolve");

    const auto& eta = state.eta.data;
    const Real hr = g.dr(), hz = g.dz();

    // Swirl coupling dz(f^2)/r^4 = dz((f/r^2)^2); f/r^2 is regular on the
    // axis and approximated there by its first off-axis value.
    ArrayXXr source = ArrayXXr::Zero(g.nr, g.nz);
    if (with_swirl_source) {
        require_even(state.f, "eta_evolve");
        require_axis_zero(state.f, "eta_evolve");
        ArrayXXr usq(g.nr, g.nz);
        for (Index j = 0; j < g.nz; ++j) {
            for (Index i = 1; i < g.nr; ++i) {
                const Real ut = state.f.data(i, j) / (g.r(i) * g.r(i));
                usq(i, j) = ut * ut;
            }
            const Real ut0 = state.f.data(1, j) / (g.r(1) * g.r(1));
            usq(0, j) = ut0 * ut0;
        }
        for (Index j = 1; j <= g.nz - 2; ++j)
            for (Index i = 0; i <= g.nr - 2; ++i)
                source(i, j) = (usq(i, j + 1) - usq(i, j - 1)) / (2 * hz);
    }

    ArrayXXr adv = eta;
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 0; i <= g.nr - 2; ++i)
            adv(i, j) = eta(i, j) -
                        dt * upwind(eta, meridional.u_r, meridional.u_z, g, i,
                                    j) +
                        dt * source(i, j);

    CachedOp op = implicit_operator(OpKind::Eta, g, dt);
    AxisIndex id{g.nr, g.nz};
    VecXr rhs(id.size());
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 0; i <= g.nr - 2; ++i)
            rhs[id(i, j)] = op.mass[id(i, j)] * adv(i, j);
    VecXr sol = op.factor->solve(rhs);

    AxisymScalarField out(g, Parity::Even, state.time + dt);
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 0; i <= g.nr - 2; ++i) out.data(i, j) = sol[id(i, j)];
    return out;  // outer boundaries stay zero; the axis row evolved
}

MeridionalFlow meridional_from_eta(const AxisymScalarField& eta) {
    require_even(eta, "meridional_from_eta");
    MeridionalFlow flow;
    flow.psi = solve_stream(eta);
    flow.u = velocity_from_psi(flow.psi);
    return flow;
}

AxisymScalarField eta_from_psi(const AxisymScalarField& psi) {
    require_even(psi, "eta_from_psi");
    const AxisymGrid& g = psi.grid;
    const Real hr = g.dr();
    PinnedIndex id{g.nr, g.nz};
    SparseMat A = pinned_stiffness(g, nullptr);
    VecXr x(id.size());
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) x[id(i, j)] = psi.data(i, j);
    VecXr b = A * x;
    AxisymScalarField eta(g, Parity::Even, psi.time);
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i)
            eta.data(i, j) = b[id(i, j)] / (hr * g.r(i));
    for (Index j = 1; j <= g.nz - 2; ++j)
        eta.data(0, j) = (4 * eta.data(1, j) - eta.data(2, j)) / 3;
    return eta;
}

SwirlState make_state(const AxisymScalarField& f, const AxisymScalarField& eta,
                      Real time) {
    check_grid(f.grid, eta.grid, "make_state");
    require_even(f, "make_state");
    require_even(eta, "make_state");
    require_axis_zero(f, "make_state");
    SwirlState s;
    s.grid = f.grid;
    s.f = f;
    s.eta = eta;
    s.psi = solve_stream(eta);
    s.time = time;
    s.f.time = s.eta.time = s.psi.time = time;
    return s;
}

Real advective_cfl(const SwirlState& state, Real dt) {
    AxisymField u = velocity_from_psi(state.psi);
    return dt * (u.u_r.abs().maxCoeff() / state.grid.dr() +
                 u.u_z.abs().maxCoeff() / state.grid.dz());
}

SwirlState axisym_step(const SwirlState& state, Real dt) {
    AxisymField u = velocity_from_psi(state.psi);
    SwirlState next;
    next.grid = state.grid;
    next.f = swirl_evolve(state, u, dt);
    next.eta = eta_evolve(state, u, dt, true);
    next.psi = solve_stream(next.eta);
    next.time = state.time + dt;
    next.f.time = next.eta.time = next.psi.time = next.time;
    return next;
}

MonitorReport liouville_monitors(const std::vector<SwirlState>& traj) {
    if (traj.empty()) throw DataError("liouville_monitors: empty trajectory");
    MonitorReport rep;
    const AxisymGrid& g = traj.front().grid;
    const int mar = rep.boundary_margin;
    if (g.nr <= mar + 1 || g.nz <= 2 * mar + 2)
        throw GeometryError("liouville_monitors: grid too small for margin");

    for (size_t k = 0; k < traj.size(); ++k) {
        const SwirlState& s = traj[k];
        check_grid(s.grid, g, "liouville_monitors");
        AxisymField u = velocity_from_psi(s.psi);
        MonitorRow row;
        row.t = s.time;
        Real sup_f = 0, inf_f = std::numeric_limits<Real>::infinity();
        Real sup_eta = 0, sup_rho_u = 0;
        for (Index j = mar; j <= g.nz - 1 - mar; ++j)
            for (Index i = 0; i <= g.nr - 1 - mar; ++i) {
                const Real fv = s.f.data(i, j);
                sup_f = std::max(sup_f, std::abs(fv));
                inf_f = std::min(inf_f, fv);
                sup_eta = std::max(sup_eta, std::abs(s.eta.data(i, j)));
                const Real ru_r = g.r(i) * u.u_r(i, j);
                const Real ru_z = g.r(i) * u.u_z(i, j);
                sup_rho_u = std::max(
                    sup_rho_u,
                    std::sqrt(ru_r * ru_r + fv * fv + ru_z * ru_z));
            }
        row.sup_f = sup_f;
        row.inf_f = inf_f;
        row.sup_eta = sup_eta;
        row.sup_rho_u = sup_rho_u;
        const Real vmax =
            u.u_r.abs().maxCoeff() / g.dr() + u.u_z.abs().maxCoeff() / g.dz();
        if (k + 1 < traj.size())
            row.cfl = (traj[k + 1].time - s.time) * vmax;
        else if (traj.size() >= 2)
            row.cfl = (s.time - traj[k - 1].time) * vmax;
        rep.rows.push_back(row);
    }
    for (size_t k = 1; k < rep.rows.size(); ++k) {
        if (rep.rows[k].sup_f > rep.rows[k - 1].sup_f + 1e-10)
            rep.sup_f_monotone = false;
        if (rep.rows[k].sup_eta > rep.rows[k - 1].sup_eta + 1e-10)
            rep.sup_eta_monotone = false;
    }
    return rep;
}

Real theta_momentum_residual(const std::vector<SwirlState>& traj, int margin) {
    if (traj.size() < 3)
        throw DataError("theta_momentum_residual: need at least 3 states");
    const AxisymGrid& g = traj.front().grid;
    const Real hr = g.dr(), hz = g.dz();
    Real worst = 0;
    for (size_t n = 1; n + 1 < traj.size(); ++n) {
        const Real dt_c = traj[n + 1].time - traj[n - 1].time;
        AxisymField u = velocity_from_psi(traj[n].psi);
        auto utheta = [&](const SwirlState& s, Index i, Index j) {
            return i == 0 ? 0.0 : s.f.data(i, j) / g.r(i);
        };
        for (Index j = std::max(Index(1), Index(margin));
             j <= g.nz - 2 - margin; ++j)
            for (Index i = 1; i <= g.nr - 2 - margin; ++i) {
                const Real ddt =
                    (utheta(traj[n + 1], i, j) - utheta(traj[n - 1], i, j)) /
                    dt_c;
                const Real ut = utheta(traj[n], i, j);
                const Real ut_r = (utheta(traj[n], i + 1, j) -
                                   utheta(traj[n], i - 1, j)) /
                                  (2 * hr);
                const Real ut_z = (utheta(traj[n], i, j + 1) -
                                   utheta(traj[n], i, j - 1)) /
                                  (2 * hz);
                const Real ut_rr = (utheta(traj[n], i + 1, j) - 2 * ut +
                                    utheta(traj[n], i - 1, j)) /
                                   (hr * hr);
                const Real ut_zz = (utheta(traj[n], i, j + 1) - 2 * ut +
                                    utheta(traj[n], i, j - 1)) /
                                   (hz * hz);
                const Real r = g.r(i);
                const Real resid = ddt + u.u_r(i, j) * ut_r +
                                   u.u_z(i, j) * ut_z +
                                   u.u_r(i, j) * ut / r -
                                   (ut_rr + ut_r / r + ut_zz - ut / (r * r));
                worst = std::max(worst, std::abs(resid));
            }
    }
    return worst;
}

Real continuity_residual(const MeridionalFlow& flow) {
    const AxisymGrid& g = flow.psi.grid;
    const Real hr = g.dr(), hz = g.dz();
    Real worst = 0;
    for (Index j = 1; j <= g.nz - 2; ++j)
        for (Index i = 1; i <= g.nr - 2; ++i) {
            const Real div =
                (g.r(i + 1) * flow.u.u_r(i + 1, j) -
                 g.r(i - 1) * flow.u.u_r(i - 1, j)) /
                    (2 * hr * g.r(i)) +
                (flow.u.u_z(i, j + 1) - flow.u.u_z(i, j - 1)) / (2 * hz);
            worst = std::max(worst, std::abs(div));
        }
    return worst;
}

}  // namespace axisym
}  // namespace flowlab
