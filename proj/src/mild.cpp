#include "flowlab/mild.hpp"

#include <cmath>

#include "flowlab/rng.hpp"
#include "flowlab/sampling.hpp"

namespace flowlab {
namespace mild {

namespace {

constexpr Real kTimeTol = 1e-9;

// Per-mode squared wavevector, flattened.
ArrayXr kappa_sq_table(const TorusGrid& g) {
    ArrayXr k2(g.node_count());
    for_each_mode(g, [&](Index f, const std::array<int, 3>& k) {
        Real s = 0;
        for (int d = 0; d < g.dim; ++d) {
            const Real kd = mode_kappa(g, k[d]);
            s += kd * kd;
        }
        k2[f] = s;
    });
    return k2;
}

// Per-mode wavevector component along one axis, Nyquist zeroed.
ArrayXr kappa_table(const TorusGrid& g, int axis) {
    ArrayXr kap(g.node_count());
    for_each_mode(g, [&](Index f, const std::array<int, 3>& k) {
        bool nyq = false;
        for (int d = 0; d < g.dim; ++d) nyq = nyq || k[d] == g.n / 2;
        kap[f] = nyq ? 0.0 : mode_kappa(g, k[axis]);
    });
    return kap;
}

// Spectrum of -P div(u (x) v), 2/3-dealiased.
VectorSpectrum forcing_spectrum(const VectorField& u, const VectorField& v,
                                const std::vector<ArrayXr>& kap) {
    const TorusGrid& g = u.grid;
    VectorSpectrum F(g, u.time);
    for (int d = 0; d < g.dim; ++d) {
        for (int k = 0; k < g.dim; ++k) {
            ScalarField prod{g, u.time};
            prod.data = u.comp[k] * v.comp[d];
            Spectrum ps = analyze(prod);
            // (div(u (x) v))_d = d_k (u_k v_d); forcing carries the minus.
            F.comp[d] += Complex(0, -1) * (kap[k].cast<Complex>() * ps.data);
        }
    }
    VectorSpectrum proj = helmholtz_project(F);
    truncate_band(proj);
    return proj;
}

VectorField synthesize_at(const VectorSpectrum& s, Real time) {
    VectorSpectrum copy = s;
    copy.time = time;
    VectorField f = synthesize(copy);
    f.time = time;
    return f;
}

}  // namespace

void validate(const Trajectory& traj, int min_snaps) {
    if (int(traj.snaps.size()) < min_snaps)
        throw DataError("trajectory: too few snapshots");
    if (!(traj.dt > 0)) throw ParameterError("trajectory: dt must be positive");
    const TorusGrid& g = traj.snaps.front().grid;
    for (size_t j = 0; j < traj.snaps.size(); ++j) {
        if (traj.snaps[j].grid != g)
            throw ShapeError("trajectory: snapshots on different grids");
        const Real expect = traj.snaps.front().time + Real(j) * traj.dt;
        if (std::abs(traj.snaps[j].time - expect) > kTimeTol * (1 + std::abs(expect)))
            throw DataError("trajectory: snapshot times not uniform");
    }
}

VecXr sample(const Trajectory& traj, const VecXr& x, Real t) {
    validate(traj);
    const Real lo = traj.t0(), hi = traj.t_end();
    if (t < lo - kTimeTol || t > hi + kTimeTol)
        throw DomainError("trajectory sample: time outside stored window");
    Real pos = (t - lo) / traj.dt;
    int j = std::min(int(traj.snaps.size()) - 2, std::max(0, int(std::floor(pos))));
    const Real theta = std::min(1.0, std::max(0.0, pos - j));
    VecXr a = sample_cubic(traj.snaps[j], x);
    if (theta == 0) return a;
    VecXr b = sample_cubic(traj.snaps[j + 1], x);
    return (1 - theta) * a + theta * b;
}

Trajectory heat_extend(const VectorField& u0, Real T, Real dt) {
    if (!(T > 0) || !(dt > 0))
        throw ParameterError("heat_extend: T and dt must be positive");
    const long long steps = std::max(1LL, std::llround(T / dt));
    const Real step = T / Real(steps);
    Trajectory traj;
    traj.dt = step;
    traj.scheme = "heat-semigroup-spectral";
    VectorSpectrum s0 = analyze(u0);
    const ArrayXr k2 = kappa_sq_table(u0.grid);
    for (long long j = 0; j <= steps; ++j) {
        const Real t = step * Real(j);
        VectorSpectrum sj = s0;
        const ArrayXc damp = (-k2 * t).exp().cast<Complex>();
        for (int d = 0; d < u0.grid.dim; ++d) sj.comp[d] *= damp;
        traj.snaps.push_back(synthesize_at(sj, u0.time + t));
    }
    return traj;
}

Trajectory bilinear_B(const Trajectory& u, const Trajectory& v) {
    validate(u);
    validate(v);
    if (u.grid() != v.grid())
        throw ShapeError("bilinear_B: operand grids differ");
    if (u.snaps.size() != v.snaps.size() ||
        std::abs(u.dt - v.dt) > kTimeTol ||
        std::abs(u.t0() - v.t0()) > kTimeTol)
        throw ShapeError("bilinear_B: operand time grids differ");

    const TorusGrid& g = u.grid();
    const int m = u.count();
    const Real h = u.dt;

    std::vector<ArrayXr> kap(g.dim);
    for (int d = 0; d < g.dim; ++d) kap[d] = kappa_table(g, d);
    const ArrayXr k2 = kappa_sq_table(g);

    // Exact per-mode integration of the heat factor against forcing that is
    // linear in time on each subinterval:
    //   B_{j+1} = E B_j + h (phi1 - phi2) F_j + h phi2 F_{j+1},
    //   E = e^{-beta}, beta = |kappa|^2 h,
    //   phi1 = (1 - E)/beta, phi2 = (beta - 1 + E)/beta^2.
    const Index total = g.node_count();
    ArrayXc E(total), w0(total), w1(total);
    for (Index f = 0; f < total; ++f) {
        const Real beta = k2[f] * h;
        const Real e = std::exp(-beta);
        Real phi1, phi2;
        if (beta < 1e-4) {
            phi1 = 1 - beta / 2 + beta * beta / 6 - beta * beta * beta / 24;
            phi2 = 0.5 - beta / 6 + beta * beta / 24 - beta * beta * beta / 120;
        } else {
            phi1 = -std::expm1(-beta) / beta;
            phi2 = (beta - 1 + e) / (beta * beta);
        }
        E[f] = e;
        w0[f] = h * (phi1 - phi2);
        w1[f] = h * phi2;
    }

    Trajectory out;
    out.dt = h;
    out.scheme = "duhamel-exact-heat-trapezoid";
    VectorField zero(g, u.t0());
    out.snaps.push_back(zero);

    VectorSpectrum B(g);
    VectorSpectrum Fprev = forcing_spectrum(u.snaps[0], v.snaps[0], kap);
    for (int j = 0; j + 1 < m; ++j) {
        VectorSpectrum Fnext =
            forcing_spectrum(u.snaps[j + 1], v.snaps[j + 1], kap);
        for (int d = 0; d < g.dim; ++d)
            B.comp[d] = E * B.comp[d] + w0 * Fprev.comp[d] + w1 * Fnext.comp[d];
        out.snaps.push_back(synthesize_at(B, u.time(j + 1)));
        Fprev = std::move(Fnext);
    }
    return out;
}

namespace {

Trajectory traj_add(const Trajectory& a, const Trajectory& b) {
    Trajectory c = a;
    for (size_t j = 0; j < a.snaps.size(); ++j)
        c.snaps[j] = add(a.snaps[j], b.snaps[j]);
    for (size_t j = 0; j < a.snaps.size(); ++j) c.snaps[j].time = a.snaps[j].time;
    return c;
}

Real traj_distance(const Trajectory& a, const Trajectory& b) {
    Real m = 0;
    for (size_t j = 0; j < a.snaps.size(); ++j)
        m = std::max(m, sup_norm(sub(a.snaps[j], b.snaps[j])));
    return m;
}

}  // namespace

PicardResult picard_solve(const VectorField& u0, Real T, Real dt, Real tol,
                          int max_iter) {
    if (!(T > 0)) throw ParameterError("picard_solve: T must be positive");
    if (!(tol > 0)) throw ParameterError("picard_solve: tol must be positive");
    if (max_iter < 1) throw ParameterError("picard_solve: max_iter must be >= 1");
    if (dt <= 0) dt = T / 128;

    PicardResult res;
    VectorField datum = helmholtz_project(u0);
    {
        VectorSpectrum s = analyze(datum);
        truncate_band(s);
        datum = synthesize(s);
        datum.time = u0.time;
    }
    res.datum_projection_change = sup_norm(sub(datum, u0));

    Trajectory U = heat_extend(datum, T, dt);
    Trajectory cur = U;
    const Real scale = sup_norm(datum);

    for (int m = 1; m <= max_iter; ++m) {
        Trajectory Bm = bilinear_B(cur, cur);
        Trajectory next = traj_add(U, Bm);
        const Real delta = traj_distance(next, cur);
        res.increments.push_back(delta);
        if (res.increments.size() >= 2) {
            const Real prev = res.increments[res.increments.size() - 2];
            if (prev > 0) res.ratios.push_back(delta / prev);
        }
        cur = std::move(next);
        res.iterations = m;
        if (delta <= tol) {
            res.converged = true;
            break;
        }
        // Sustained ratios >= 1 with growing amplitude: report divergence.
        if (res.ratios.size() >= 3 && delta > 100 * std::max(scale, Real(1))) {
            const size_t r = res.ratios.size();
            if (res.ratios[r - 1] >= 1 && res.ratios[r - 2] >= 1 &&
                res.ratios[r - 3] >= 1)
                break;
        }
    }

    Trajectory Bf = bilinear_B(cur, cur);
    res.defect = traj_distance(traj_add(U, Bf), cur);
    for (const VectorField& snap : cur.snaps)
        res.divergence_sup =
            std::max(res.divergence_sup, sup_norm(divergence(snap)));
    res.traj = std::move(cur);
    res.traj.scheme = "picard-mild";
    return res;
}

namespace {

// Pointwise Frobenius magnitude of the k-th spatial derivative tensor.
ScalarField derivative_magnitude(const VectorField& u, int k) {
    const TorusGrid& g = u.grid;
    ScalarField acc(g, u.time);
    for (int i = 0; i < g.dim; ++i) {
        ScalarField ci{g, u.time};
        ci.data = u.comp[i];
        if (k == 0) {
            acc.data += ci.data.square();
        } else if (k == 1) {
            for (int d = 0; d < g.dim; ++d)
                acc.data += partial(ci, d).data.square();
        } else {
            for (int d = 0; d < g.dim; ++d) {
                ScalarField first = partial(ci, d);
                for (int e = 0; e < g.dim; ++e)
                    acc.data += partial(first, e).data.square();
            }
        }
    }
    acc.data = acc.data.sqrt();
    return acc;
}

VectorField central_dt(const Trajectory& traj, int j) {
    VectorField d = sub(traj.snaps[j + 1], traj.snaps[j - 1]);
    for (int c = 0; c < d.grid.dim; ++c) d.comp[c] /= (2 * traj.dt);
    d.time = traj.time(j);
    return d;
}

}  // namespace

Real smoothing_diagnostic(const Trajectory& traj, int k, int l) {
    validate(traj, 3);
    if (k < 0 || k > 2 || l < 0 || l > 1)
        throw ParameterError("smoothing_diagnostic: k in {0,1,2}, l in {0,1}");
    const Real norm0 = sup_norm(traj.snaps.front());
    if (norm0 == 0)
        throw DataError("smoothing_diagnostic: zero initial datum");
    const Real expo = 0.5 * k + l;
    Real best = 0;
    const int m = traj.count();
    const int lo = l == 1 ? 1 : 0;
    const int hi = l == 1 ? m - 2 : m - 1;
    for (int j = lo; j <= hi; ++j) {
        const Real trel = traj.time(j) - traj.t0();
        if (trel < 0) continue;
        const Real weight = expo == 0 ? 1.0 : std::pow(trel, expo);
        if (weight == 0) continue;
        VectorField field = l == 1 ? central_dt(traj, j) : traj.snaps[j];
        const Real mag = sup_norm(derivative_magnitude(field, k));
        best = std::max(best, weight * mag / norm0);
    }
    if (k == 0 && l == 0) best = std::max(best, 1.0);  // j = 0 contributes 1
    return best;
}

Decomposition decompose(const Trajectory& u, bool f_from_u, Real tol) {
    validate(u, 3);
    Decomposition dec;
    const TorusGrid& g = u.grid();

    if (f_from_u) {
        dec.v = bilinear_B(u, u);
    } else {
        dec.v = u;
        for (VectorField& s : dec.v.snaps) {
            VectorField z(g, s.time);
            s = z;
        }
        dec.v.scheme = "zero-forcing";
    }

    const int m = u.count();
    std::vector<VectorField> r(m);
    for (int j = 0; j < m; ++j) r[j] = sub(u.snaps[j], dec.v.snaps[j]);

    VecXr m0 = mean(r[0]);
    dec.b.resize(m);
    dec.w = u;
    for (int j = 0; j < m; ++j) {
        dec.b[j] = mean(r[j]) - m0;
        dec.w.snaps[j] = r[j];
        for (int d = 0; d < g.dim; ++d) dec.w.snaps[j].comp[d] -= dec.b[j][d];
    }
    dec.w.scheme = "caloric-remainder";

    dec.b_prime.resize(m);
    const Real h = u.dt;
    for (int j = 0; j < m; ++j) {
        if (j == 0)
            dec.b_prime[j] = (-3 * dec.b[0] + 4 * dec.b[1] - dec.b[2]) / (2 * h);
        else if (j == m - 1)
            dec.b_prime[j] =
                (3 * dec.b[j] - 4 * dec.b[j - 1] + dec.b[j - 2]) / (2 * h);
        else
            dec.b_prime[j] = (dec.b[j + 1] - dec.b[j - 1]) / (2 * h);
    }

    for (int j = 0; j + 1 < m; ++j) {
        VectorField evolved = heat_semigroup(dec.w.snaps[j], h);
        dec.heat_residual =
            std::max(dec.heat_residual, sup_norm(sub(dec.w.snaps[j + 1], evolved)));
    }
    if (dec.heat_residual > tol)
        throw DataError(
            "decompose: remainder fails the caloric check (residual " +
            std::to_string(dec.heat_residual) +
            "); input is not a weak solution at grid resolution");
    return dec;
}

namespace {

// Fourth-order centered time derivative at snapshot j (needs j-2 .. j+2).
VectorField time_deriv4(const Trajectory& traj, int j) {
    const Real h = traj.dt;
    VectorField d(traj.grid(), traj.time(j));
    for (int c = 0; c < traj.grid().dim; ++c)
        d.comp[c] = (-traj.snaps[j + 2].comp[c] + 8 * traj.snaps[j + 1].comp[c] -
                     8 * traj.snaps[j - 1].comp[c] + traj.snaps[j - 2].comp[c]) /
                    (12 * h);
    return d;
}

ScalarField to_scalar(const ArrayXr& a, const TorusGrid& g, Real t) {
    ScalarField s{g, t};
    s.data = a;
    return s;
}

}  // namespace

Real vorticity_residual(const Trajectory& traj) {
    validate(traj, 5);
    const TorusGrid& g = traj.grid();
    const int m = traj.count();
    Real worst = 0;

    if (g.dim == 2) {
        std::vector<ScalarField> omega(m);
        for (int j = 0; j < m; ++j) omega[j] = curl2d(traj.snaps[j]);
        for (int j = 2; j + 2 < m; ++j) {
            ArrayXr dwdt =
                (-omega[j + 2].data + 8 * omega[j + 1].data -
                 8 * omega[j - 1].data + omega[j - 2].data) /
                (12 * traj.dt);
            ArrayXr advect = ArrayXr::Zero(g.node_count());
            for (int d = 0; d < 2; ++d)
                advect += traj.snaps[j].comp[d] * partial(omega[j], d).data;
            ArrayXr resid = dwdt + advect - laplacian(omega[j]).data;
            worst = std::max(worst, resid.abs().maxCoeff());
        }
        return worst;
    }

    // n = 3: d_t w_i - Lap w_i - d_j(w_j u_i - w_i u_j) = 0.
    auto curl3 = [&](const VectorField& u) {
        VectorField w(g, u.time);
        auto comp_field = [&](int c) { return to_scalar(u.comp[c], g, u.time); };
        w.comp[0] = partial(comp_field(2), 1).data - partial(comp_field(1), 2).data;
        w.comp[1] = partial(comp_field(0), 2).data - partial(comp_field(2), 0).data;
        w.comp[2] = partial(comp_field(1), 0).data - partial(comp_field(0), 1).data;
        return w;
    };
    std::vector<VectorField> omega(m);
    for (int j = 0; j < m; ++j) omega[j] = curl3(traj.snaps[j]);
    for (int j = 2; j + 2 < m; ++j) {
        const VectorField& u = traj.snaps[j];
        const VectorField& w = omega[j];
        VectorField lap = laplacian(w);
        for (int i = 0; i < 3; ++i) {
            ArrayXr dwdt =
                (-omega[j + 2].comp[i] + 8 * omega[j + 1].comp[i] -
                 8 * omega[j - 1].comp[i] + omega[j - 2].comp[i]) /
                (12 * traj.dt);
            ArrayXr stretch = ArrayXr::Zero(g.node_count());
            for (int jj = 0; jj < 3; ++jj) {
                ScalarField prod{g, u.time};
                prod.data = w.comp[jj] * u.comp[i] - w.comp[i] * u.comp[jj];
                stretch += partial(prod, jj).data;
            }
            ArrayXr resid = dwdt - lap.comp[i] - stretch;
            worst = std::max(worst, resid.abs().maxCoeff());
        }
    }
    return worst;
}

Real nse_residual(const Trajectory& traj) {
    validate(traj, 5);
    const TorusGrid& g = traj.grid();
    std::vector<ArrayXr> kap(g.dim);
    for (int d = 0; d < g.dim; ++d) kap[d] = kappa_table(g, d);
    Real worst = 0;
    for (int j = 2; j + 2 < traj.count(); ++j) {
        VectorField dudt = time_deriv4(traj, j);
        VectorSpectrum nl =
            forcing_spectrum(traj.snaps[j], traj.snaps[j], kap);  // -P div(u u)
        VectorField nonlinear = synthesize_at(nl, traj.time(j));
        VectorField lap = laplacian(traj.snaps[j]);
        VectorField resid(g, traj.time(j));
        for (int d = 0; d < g.dim; ++d)
            resid.comp[d] = dudt.comp[d] - nonlinear.comp[d] - lap.comp[d];
        resid = helmholtz_project(resid);
        worst = std::max(worst, sup_norm(resid));
    }
    return worst;
}

VectorField taylor_green(const TorusGrid& g) {
    if (g.dim != 2)
        throw DimensionError("taylor_green: planar datum");
    return make_vector(g, [](const VecXr& x) {
        VecXr u(2);
        u[0] = -std::cos(x[0]) * std::sin(x[1]);
        u[1] = std::sin(x[0]) * std::cos(x[1]);
        return u;
    });
}

VectorField random_shell(const TorusGrid& g, Real kmin, Real kmax,
                         unsigned long long seed) {
    if (!(kmin >= 0) || !(kmax >= kmin))
        throw ParameterError("random_shell: need 0 <= kmin <= kmax");
    if (kmax >= g.n / 2)
        throw ParameterError("random_shell: kmax must stay below Nyquist");
    Rng rng(seed);
    VectorSpectrum s(g);
    int filled = 0;
    for_each_mode(g, [&](Index f, const std::array<int, 3>& k) {
        // Fill each conjugate pair once, keyed on the lexicographically
        // positive member, so the spectrum stays Hermitian.
        bool canonical = false;
        for (int d = g.dim - 1; d >= 0; --d) {
            if (k[d] > 0) { canonical = true; break; }
            if (k[d] < 0) { canonical = false; break; }
        }
        if (!canonical) return;
        Real kk = 0;
        for (int d = 0; d < g.dim; ++d) kk += Real(k[d]) * k[d];
        kk = std::sqrt(kk);
        if (kk < kmin - 1e-12 || kk > kmax + 1e-12) return;
        ++filled;
        std::array<Index, 3> conj_idx{0, 0, 0};
        auto idx = g.unflat(f);
        for (int d = 0; d < g.dim; ++d)
            conj_idx[d] = idx[d] == 0 ? 0 : Index(g.n) - idx[d];
        const Index fc = g.flat(conj_idx[0], conj_idx[1], conj_idx[2]);
        for (int d = 0; d < g.dim; ++d) {
            const Complex amp(rng.normal(), rng.normal());
            s.comp[d][f] = amp;
            s.comp[d][fc] = std::conj(amp);
        }
    });
    if (filled == 0)
        throw ParameterError("random_shell: shell contains no modes");
    VectorField u = synthesize(helmholtz_project(s));
    const Real norm = sup_norm(u);
    if (norm == 0) throw DataError("random_shell: projection annihilated datum");
    for (int d = 0; d < g.dim; ++d) u.comp[d] /= norm;
    return u;
}

VectorField square_wave(const TorusGrid& g) {
    if (g.dim != 2)
        throw DimensionError("square_wave: planar datum");
    const Real half = g.h() / 2;
    return make_vector(g, [&](const VecXr& x) {
        VecXr u(2);
        u[0] = 0;
        u[1] = std::sin(x[0] - half) >= 0 ? 1.0 : -1.0;
        return u;
    });
}

}  // namespace mild
}  // namespace flowlab
