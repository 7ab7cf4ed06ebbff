#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "flowlab/blowup.hpp"
#include "flowlab/field_ops.hpp"
#include "flowlab/sampling.hpp"

using namespace flowlab;
using namespace flowlab::blowup;

namespace {

// Sampling times crowding into T, matching the command-line analyzer.
std::vector<Real> crowding_times(Real T, int n) {
  std::vector<Real> t;
  for (int j = 0; j < n; ++j)
    t.push_back(T * (1.0 - std::pow(2.0, -(j + 4) / 3.0)));
  return t;
}

BlowupTrace power_trace(Real T, Real p, int n = 36) {
  auto times = crowding_times(T, n);
  std::vector<Real> h;
  for (Real t : times) h.push_back(std::pow(T - t, -p));
  return trace_from_series(times, h);
}

}  // namespace

TEST_CASE("trace construction validates its inputs") {
  CHECK_THROWS_AS(trace_from_series({}, {}), DataError);
  CHECK_THROWS_AS(trace_from_series({0.0, 1.0}, {1.0}), DataError);
  CHECK_THROWS_AS(trace_from_series({0.0, 0.0}, {1.0, 1.0}), DataError);
  CHECK_THROWS_AS(trace_from_series({0.0, -1.0}, {1.0, 1.0}), DataError);

  auto tr = trace_from_series({0.0, 1.0, 2.0}, {3.0, 1.0, 2.0});
  CHECK(tr.H == std::vector<Real>{3.0, 3.0, 3.0});  // running max keeps the dip
}

TEST_CASE("trace of a decaying flow records the nodal sup history") {
  TorusGrid g(2, 8);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  BlowupTrace tr = trace_from(traj);
  REQUIRE(tr.times.size() == 5);
  for (size_t j = 0; j < tr.times.size(); ++j) {
    CHECK(tr.h[j] ==
          doctest::Approx(std::exp(-2 * tr.times[j])).epsilon(1e-12));
    CHECK(tr.H[j] == tr.h[0]);
  }
}

TEST_CASE("leray rate is exactly one for the self-similar profile") {
  BlowupTrace tr = power_trace(1.0, 0.5);
  CHECK(leray_rate(tr, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(leray_rate(tr, tr.times.back()), DomainError);
  CHECK_THROWS_AS(leray_rate(BlowupTrace{}, 1.0), DataError);
}

TEST_CASE("classifier separates the three rate regimes") {
  auto type_i = classify(power_trace(1.0, 0.5), 1.0);
  CHECK(type_i.type == BlowupType::TypeI);
  CHECK(type_i.slope == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(type_i.c_fit == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(type_i.fit_residual <= 1e-9);

  auto type_ii = classify(power_trace(1.0, 0.75), 1.0);
  CHECK(type_ii.type == BlowupType::TypeII);
  CHECK(type_ii.slope == doctest::Approx(0.75).epsilon(1e-9));

  auto times = crowding_times(1.0, 36);
  std::vector<Real> h;
  for (Real t : times) h.push_back(2.0 + 0.1 * std::sin(3 * t));
  auto bounded = classify(trace_from_series(times, h), 1.0);
  CHECK(bounded.type == BlowupType::NoBlowup);
  CHECK(std::abs(bounded.slope) <= 0.1);

  CHECK(std::string(type_name(type_i.type)) == "TypeI");
  CHECK(std::string(type_name(type_ii.type)) == "TypeII");
  CHECK(std::string(type_name(bounded.type)) == "NoBlowup");
}

TEST_CASE("classification is invariant under translation and rescaling") {
  const Real T = 1.0;
  BlowupTrace base = power_trace(T, 0.5);
  auto ref = classify(base, T);

  std::vector<Real> shifted_t;
  for (Real t : base.times) shifted_t.push_back(t + 5.0);
  auto shifted = classify(trace_from_series(shifted_t, base.h), T + 5.0);
  CHECK(shifted.type == ref.type);
  CHECK(shifted.slope == doctest::Approx(ref.slope).epsilon(1e-9));
  CHECK(shifted.c_fit == doctest::Approx(ref.c_fit).epsilon(1e-9));

  // u -> lambda u(lambda x, lambda^2 t) maps the trace to
  // (t / lambda^2, lambda h) with horizon T / lambda^2.
  const Real lam = 2.0;
  std::vector<Real> st, sh;
  for (size_t j = 0; j < base.times.size(); ++j) {
    st.push_back(base.times[j] / (lam * lam));
    sh.push_back(lam * base.h[j]);
  }
  auto scaled = classify(trace_from_series(st, sh), T / (lam * lam));
  CHECK(scaled.type == ref.type);
  CHECK(scaled.slope == doctest::Approx(ref.slope).epsilon(1e-9));
  CHECK(scaled.c_fit == doctest::Approx(ref.c_fit).epsilon(1e-9));
}

TEST_CASE("classifier input guards") {
  auto short_trace = power_trace(1.0, 0.5, 5);
  CHECK_THROWS_AS(classify(short_trace, 1.0), DataError);

  auto bad = power_trace(1.0, 0.5);
  bad.h[30] = 0.0;
  CHECK_THROWS_AS(classify(bad, 1.0), DataError);
}

TEST_CASE("zoom step locks onto the decaying maximum") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  RescaleStep step = make_step(traj, 2);
  CHECK(step.t == 0.0);  // strictly decaying flow peaks at the start
  CHECK(step.M == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(step.gamma == doctest::Approx(1.25).epsilon(1e-15));
  REQUIRE(step.lambda.has_value());
  CHECK(*step.lambda == doctest::Approx(1.0 / step.M).epsilon(1e-15));
  const VecXr at_peak = mild::sample(traj, step.x, step.t);
  CHECK(at_peak.norm() == doctest::Approx(step.M).epsilon(1e-14));

  CHECK_THROWS_AS(make_step(traj, -1), ParameterError);

  mild::Trajectory dead;
  dead.dt = 0.1;
  for (int j = 0; j < 3; ++j) dead.snaps.emplace_back(g, 0.1 * j);
  CHECK_THROWS_AS(make_step(dead, 0), DataError);
}

TEST_CASE("unit-magnification zoom at the origin is the identity") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  RescaleStep step;
  step.x = VecXr::Zero(2);
  step.t = traj.time(2);
  step.M = 1;
  step.gamma = 1;
  auto v = rescale(traj, step);
  REQUIRE(v.count() == traj.count());
  CHECK(v.grid().period == doctest::Approx(g.period).epsilon(1e-15));
  CHECK(v.dt == doctest::Approx(traj.dt).epsilon(1e-15));
  CHECK(v.time(2) == doctest::Approx(0.0).epsilon(1e-15));
  Real err = 0;
  for (int j = 0; j < v.count(); ++j)
    err = std::max(err, sup_norm(sub(v.snaps[j], traj.snaps[j])));
  CHECK(err <= 1e-12);
}

TEST_CASE("normalized zoom pins unit magnitude at its base point") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  RescaleStep step = make_step(traj, 0);
  auto v = rescale(traj, step);
  // The concentration time here is t0, so snapshot 0 holds s = 0.
  ScalarField mag = magnitude(v.snaps[0]);
  CHECK(mag.data[0] == doctest::Approx(1.0).epsilon(1e-12));
  Real sup = 0;
  for (const auto& s : v.snaps) sup = std::max(sup, sup_norm(s));
  CHECK(sup <= step.gamma + 1e-12);
}

TEST_CASE("zoom parameter validation") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  RescaleStep step;
  step.x = VecXr::Zero(2);
  step.t = 0.1;
  step.M = 1;

  SUBCASE("bad magnification") {
    step.M = 0;
    CHECK_THROWS_AS(rescale(traj, step), ParameterError);
  }
  SUBCASE("bad slack") {
    step.gamma = 0.5;
    CHECK_THROWS_AS(rescale(traj, step), ParameterError);
  }
  SUBCASE("wrong point dimension") {
    step.x = VecXr::Zero(3);
    CHECK_THROWS_AS(rescale(traj, step), ShapeError);
  }
  SUBCASE("concentration time outside the trajectory") {
    step.t = 0.5;
    CHECK_THROWS_AS(rescale(traj, step), GeometryError);
  }
}

TEST_CASE("lookback requirements gate the zoom") {
  TorusGrid g(2, 16);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  RescaleStep step;
  step.x = VecXr::Zero(2);
  step.t = 0.1;
  step.M = 1;

  auto ok = rescale(traj, step, 0.05);
  CHECK(ok.t0() <= -0.05 + 1e-12);

  try {
    rescale(traj, step, 1.0);
    FAIL("expected a geometry error");
  } catch (const GeometryError& e) {
    // The message names the smallest magnification that would fit.
    CHECK(std::string(e.what()).find("admissible") != std::string::npos);
  }

  step.t = 0.0;
  CHECK_THROWS_AS(rescale(traj, step, 1.0), GeometryError);
}

TEST_CASE("second zoom recenters on the unit offset") {
  TorusGrid g(2, 16);
  auto v = mild::heat_extend(mild::taylor_green(g), 0.2, 0.05);
  const Real M = 2.0, s_k = v.time(1);
  auto w = second_rescale(v, M, s_k);
  CHECK(w.dt == doctest::Approx(M * M * v.dt).epsilon(1e-15));
  CHECK(w.grid().period == doctest::Approx(M * g.period).epsilon(1e-15));
  VecXr e1 = VecXr::Zero(2);
  e1[0] = 1;
  const VecXr expect = sample_cubic(v.snaps[1], e1) / M;
  for (int d = 0; d < 2; ++d)
    CHECK(w.snaps[1].comp[d][0] == doctest::Approx(expect[d]).epsilon(1e-12));
}

TEST_CASE("scale monitors need a cylindrical radius") {
  TorusGrid g(2, 8);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.1, 0.05);
  auto rep = scale_invariant_monitors(traj);
  CHECK(!rep.applicable);
  CHECK(rep.rows.empty());
}

TEST_CASE("scale monitors on a constant unit field have closed forms") {
  TorusGrid g(3, 8);
  mild::Trajectory traj;
  traj.dt = 0.1;
  traj.scheme = "synthetic";
  for (int j = 0; j < 3; ++j) {
    VectorField s(g, 0.1 * j);
    s.comp[2].setConstant(1.0);
    traj.snaps.push_back(std::move(s));
  }
  auto rep = scale_invariant_monitors(traj, 0.3);
  REQUIRE(rep.applicable);
  REQUIRE(rep.rows.size() == 3);
  // The farthest node from the center axis sits at offset (-pi, -pi).
  CHECK(rep.sup_rho_u == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.rows[0].sup_weighted ==
        doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
  // Constant speed 1: the space-time L^5 norm is |Q|^{1/5} with
  // |Q| = duration * (2 pi)^3.
  const Real expect = std::pow(0.2 * std::pow(kTwoPi, 3.0), 0.2);
  CHECK(rep.lpq_55 == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(scale_invariant_monitors(traj, 0.2), DomainError);
}

TEST_CASE("tail integral carries the closed-form constant over 1/M") {
  // With rho = M u and sigma = w^2 the product M I(M) collapses to
  // 8 pi^2 (ln(3/2) + ln(3)/4 - 1/2) independently of M.
  const Real c =
      8 * kPi * kPi * (std::log(1.5) + 0.25 * std::log(3.0) - 0.5);
  for (Real M : {1.0, 10.0, 100.0}) {
    CHECK(M * tail_integral_I(M) == doctest::Approx(c).epsilon(1e-5));
  }
  CHECK_THROWS_AS(tail_integral_I(0.5), ParameterError);
}
