#include <doctest.h>

#include <cmath>

#include "flowlab/field_ops.hpp"
#include "flowlab/mild.hpp"

using namespace flowlab;

namespace {

// Divergence-free single-mode field a (cos(k.x), with coefficients chosen
// orthogonal to k) used to build closed-form Duhamel oracles.
VectorField plane_mode(const TorusGrid& g, int k0, int k1, Real amp) {
  VectorField v(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    const Real c = amp * std::cos(k0 * x[0] + k1 * x[1]);
    v.comp[0][i] = -Real(k1) * c;
    v.comp[1][i] = Real(k0) * c;
  }
  return v;
}

}  // namespace

TEST_CASE("heat extension damps taylor-green at rate 2") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.5, 0.05);
  CHECK(traj.count() == 11);
  VectorField tg = mild::taylor_green(g);
  for (const auto& snap : traj.snaps) {
    VectorField exact = scaled(tg, std::exp(-2 * snap.time));
    CHECK(sup_norm(sub(snap, exact)) <= 1e-12);
  }
}

TEST_CASE("trajectory validation rejects ragged input") {
  TorusGrid g(2, 8);
  mild::Trajectory t;
  t.dt = 0.1;
  t.snaps.emplace_back(g, 0.0);
  CHECK_THROWS_AS(mild::validate(t), DataError);  // too few snapshots
  t.snaps.emplace_back(TorusGrid(2, 16), 0.1);    // mismatched grid
  CHECK_THROWS_AS(mild::validate(t), ShapeError);
  t.snaps.back() = VectorField(g, 0.2);           // wrong spacing
  CHECK_THROWS_AS(mild::validate(t), DataError);
}

TEST_CASE("bilinear term matches the closed-form single-mode Duhamel integral") {
  // With u, v caloric single modes, the forced mode decays at rate a and
  // the Duhamel heat factor at rate b, giving the classic
  // (e^{-a t} - e^{-b t}) / (b - a) profile mode by mode. The scheme
  // integrates the heat factor exactly and the forcing by trapezoid, so
  // the error is O(dt^2).
  TorusGrid g(2, 32);
  VectorField u0 = plane_mode(g, 1, 0, 0.8);   // u = (0, 0.8 cos x)
  VectorField v0 = plane_mode(g, 0, 1, 0.6);   // v = (-0.6 cos y, 0)
  const Real T = 0.5;

  // Oracle, assembled analytically. The tensor divergence contracts the
  // first slot, (div(u (x) v))_d = d_k (u_k v_d), so with div u = 0 this
  // is (u . grad) v = (0.8 cos x) d_y v = (0.48 cos x sin y, 0).
  // The forcing lives on modes k = (1, +-1) with |kappa|^2 = 2, and the
  // caloric inputs decay at 1 + 1 = 2 as well: the confluent case, with
  // exact mode amplitude B_hat(t) = t e^{-2t} F_hat, F = -P (u.grad) v.
  const Real dt1 = T / 32, dt2 = T / 64;
  auto err_at = [&](Real dt) {
    auto u = mild::heat_extend(u0, T, dt);
    auto v = mild::heat_extend(v0, T, dt);
    auto B = mild::bilinear_B(u, v);
    const VectorField& last = B.snaps.back();
    Real err = 0;
    for (Index i = 0; i < g.node_count(); ++i) {
      VecXr x = node_coords(g, i);
      // Decompose cos x sin y = sp - sm with sp = sin(x+y)/2,
      // sm = sin(x-y)/2. P applied to (1, 0) e^{i k.x} subtracts
      // k (k.e1)/|k|^2:
      //   k = (1, 1):  (1,0) - (1,1)/2  = (1/2, -1/2),
      //   k = (1,-1):  (1,0) - (1,-1)/2 = (1/2,  1/2).
      const Real f = -0.48 * T * std::exp(-2 * T);
      const Real sp = 0.5 * std::sin(x[0] + x[1]);
      const Real sm = 0.5 * std::sin(x[0] - x[1]);
      const Real want0 = f * (0.5 * sp - 0.5 * sm);
      const Real want1 = f * (-0.5 * sp - 0.5 * sm);
      err = std::max(err, std::abs(last.comp[0][i] - want0));
      err = std::max(err, std::abs(last.comp[1][i] - want1));
    }
    return err;
  };
  const Real e1 = err_at(dt1), e2 = err_at(dt2);
  CHECK(e1 <= 1e-4);
  CHECK(e2 <= e1 / 3.0);  // second order in dt
}

TEST_CASE("bilinear output is solenoidal and bilinear") {
  TorusGrid g(2, 16);
  auto u = mild::heat_extend(mild::random_shell(g, 1, 3, 2), 0.2, 0.02);
  auto v = mild::heat_extend(mild::random_shell(g, 1, 3, 3), 0.2, 0.02);
  auto B = mild::bilinear_B(u, v);
  Real div_sup = 0;
  for (const auto& s : B.snaps)
    div_sup = std::max(div_sup, sup_norm(divergence(s)));
  CHECK(div_sup <= 1e-10);

  // Scaling both inputs scales B quadratically in total.
  auto u2 = u;
  for (auto& s : u2.snaps) s = scaled(s, 2.0);
  auto B2 = mild::bilinear_B(u2, v);
  Real err = 0;
  for (int j = 0; j < B.count(); ++j)
    err = std::max(err, sup_norm(sub(B2.snaps[j], scaled(B.snaps[j], 2.0))));
  CHECK(err <= 1e-12);
}

TEST_CASE("measured bilinear bound scales like sqrt(T)") {
  TorusGrid g(2, 32);
  VectorField u0 = mild::random_shell(g, 2, 3, 5);
  auto measure = [&](Real T) {
    auto u = mild::heat_extend(u0, T, T / 64);
    auto B = mild::bilinear_B(u, u);
    Real m = 0;
    for (const auto& s : B.snaps) m = std::max(m, sup_norm(s));
    return m / std::sqrt(T);  // ~ C ||u||^2
  };
  const Real c1 = measure(0.05), c2 = measure(0.2);
  CHECK(c2 <= 2.0 * c1);  // same order of magnitude: the sqrt T law
  CHECK(c1 <= 2.0 * c2);
}

TEST_CASE("picard reproduces the decaying taylor-green flow") {
  TorusGrid g(2, 32);
  auto res = mild::picard_solve(mild::taylor_green(g), 0.5);
  CHECK(res.converged);
  CHECK(res.iterations <= 5);
  CHECK(res.defect <= 1e-10);
  CHECK(res.divergence_sup <= 1e-10);
  CHECK(res.datum_projection_change <= 1e-12);
  VectorField tg = mild::taylor_green(g);
  Real err = 0;
  for (const auto& snap : res.traj.snaps)
    err = std::max(err,
                   sup_norm(sub(snap, scaled(tg, std::exp(-2 * snap.time)))));
  CHECK(err <= 1e-10);
}

TEST_CASE("picard projects a non-solenoidal datum and records the change") {
  TorusGrid g(2, 16);
  VectorField bad = mild::taylor_green(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    bad.comp[0][i] += 0.1 * std::sin(x[0]);  // pure gradient direction
  }
  auto res = mild::picard_solve(bad, 0.1);
  CHECK(res.datum_projection_change > 1e-3);
  CHECK(res.divergence_sup <= 1e-10);
}

TEST_CASE("picard reports divergence rather than throwing") {
  TorusGrid g(2, 16);
  VectorField big = scaled(mild::random_shell(g, 1, 2, 4), 400.0);
  auto res = mild::picard_solve(big, 2.0, 2.0 / 64, 1e-10, 12);
  CHECK(!res.converged);
  CHECK(res.ratios.size() >= 1);
}

TEST_CASE("smoothing diagnostic matches the taylor-green closed form") {
  // sqrt(t) |grad u|_sup / |u0|_sup = sqrt(2 t) e^{-2t}, maximized on the
  // snapshot grid at t = 1/4 for T = 1 with dt = 1/128.
  TorusGrid g(2, 32);
  auto res = mild::picard_solve(mild::taylor_green(g), 1.0);
  const Real got = mild::smoothing_diagnostic(res.traj, 1, 0);
  const Real want = std::sqrt(2.0 * 0.25) * std::exp(-0.5);
  CHECK(got == doctest::Approx(want).epsilon(1e-10));
  // k = l = 0 is plain sup-ratio, 1 at t = 0 for a decaying flow.
  CHECK(mild::smoothing_diagnostic(res.traj, 0, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mild::smoothing_diagnostic(res.traj, 3, 0), ParameterError);
}

TEST_CASE("decomposition isolates a parasitic mean drift") {
  TorusGrid g(2, 8);
  const Real dt = 1.0 / 128;
  mild::Trajectory u;
  u.dt = dt;
  u.scheme = "synthetic";
  for (int j = 0; j <= 128; ++j) {
    VectorField s(g, j * dt);
    s.comp[0].setConstant(std::sin(s.time));
    u.snaps.push_back(std::move(s));
  }
  auto dec = mild::decompose(u, true);
  Real v_sup = 0;
  for (const auto& s : dec.v.snaps) v_sup = std::max(v_sup, sup_norm(s));
  CHECK(v_sup <= 1e-12);
  CHECK(dec.heat_residual <= 1e-10);
  CHECK(dec.b[0].cwiseAbs().maxCoeff() <= 1e-15);  // normalized b(0) = 0
  Real bp_err = 0;
  for (size_t j = 0; j < dec.b_prime.size(); ++j)
    bp_err = std::max(
        bp_err, std::abs(dec.b_prime[j][0] - std::cos(u.time(int(j)))));
  CHECK(bp_err <= 1e-3);
}

TEST_CASE("decomposition flags non-solutions") {
  TorusGrid g(2, 8);
  mild::Trajectory junk;
  junk.dt = 0.1;
  junk.scheme = "junk";
  for (int j = 0; j <= 6; ++j) {
    VectorField s(g, 0.1 * j);
    for (Index i = 0; i < g.node_count(); ++i) {
      VecXr x = node_coords(g, i);
      s.comp[0][i] = std::sin(x[0] + j);  // no caloric structure
      s.comp[1][i] = std::cos(x[1] - j);
    }
    junk.snaps.push_back(std::move(s));
  }
  CHECK_THROWS_AS(mild::decompose(junk, true), DataError);
}

TEST_CASE("nse and vorticity residuals are small on a mild solution") {
  TorusGrid g(2, 32);
  auto res = mild::picard_solve(mild::random_shell(g, 1, 3, 6), 0.25, -1);
  REQUIRE(res.converged);
  CHECK(mild::nse_residual(res.traj) <= 5e-3);
  CHECK(mild::vorticity_residual(res.traj) <= 5e-2);
}

TEST_CASE("random shell data is reproducible, band-limited, solenoidal") {
  TorusGrid g(2, 32);
  VectorField a = mild::random_shell(g, 2, 4, 123);
  VectorField b = mild::random_shell(g, 2, 4, 123);
  CHECK(sup_norm(sub(a, b)) == 0.0);  // bit-identical
  CHECK(sup_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sup_norm(divergence(a)) <= 1e-10);
  VectorSpectrum s = analyze(a);
  Real outside = 0;
  for_each_mode(g, [&](Index f, const std::array<int, 3>& k) {
    const Real k2 = Real(k[0]) * k[0] + Real(k[1]) * k[1] + Real(k[2]) * k[2];
    if (k2 > 0 && (k2 < 4.0 - 1e-9 || k2 > 16.0 + 1e-9))
      for (int d = 0; d < 2; ++d)
        outside = std::max(outside, std::abs(s.comp[d][f]));
  });
  CHECK(outside <= 1e-10);
  CHECK_THROWS_AS(mild::random_shell(g, 20, 30, 1), ParameterError);
}

TEST_CASE("trajectory sampling is linear in time between snapshots") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.02);
  VecXr x(2);
  x << 1.0, 2.0;
  const Real t = 0.03;  // halfway between snapshots 1 and 2
  VecXr mid = mild::sample(traj, x, t);
  VecXr lo = mild::sample(traj, x, 0.02);
  VecXr hi = mild::sample(traj, x, 0.04);
  CHECK((mid - 0.5 * (lo + hi)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(mild::sample(traj, x, 0.5), DomainError);
}

TEST_CASE("square wave carries unit nodal values and zero divergence") {
  TorusGrid g(2, 64);
  VectorField q = mild::square_wave(g);
  for (Index i = 0; i < g.node_count(); ++i)
    CHECK(std::abs(q.comp[1][i]) == 1.0);
  CHECK(sup_norm(divergence(q)) <= 1e-10);
}
