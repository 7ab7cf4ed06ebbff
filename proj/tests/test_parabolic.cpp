#include <doctest.h>

#include <cmath>
#include <string>

#include "flowlab/parabolic.hpp"

using namespace flowlab;
using namespace flowlab::parabolic;

namespace {

// 1D heat kernel, the oracle for the diffusion substep.
Real gauss1(Real x, Real t) {
  return std::exp(-x * x / (4 * t)) / std::sqrt(4 * kPi * t);
}

VecXr vec1(Real a) {
  VecXr v(1);
  v << a;
  return v;
}

VecXr vec2(Real a, Real b) {
  VecXr v(2);
  v << a, b;
  return v;
}

Real sup_err_last(const ScalarTrajectory& traj, const SpaceTimeFun& exact) {
  const BoxGrid& g = traj.grid;
  const Index ny = g.dim == 2 ? g.n : 1;
  const Real t = traj.time(traj.count() - 1);
  Real err = 0;
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < g.n; ++i)
      err = std::max(err,
                     std::abs(traj.snaps.back()[g.flat(i, j)] -
                              exact(g.coord(i, j), t)));
  return err;
}

ParabolicProblem heat_problem_1d() {
  ParabolicProblem p;
  p.dim = 1;
  p.lo = vec1(-6);
  p.hi = vec1(6);
  p.T = 0.5;
  p.u0 = [](const VecXr& x) { return gauss1(x[0], 1.0); };
  p.bc = [](const VecXr& x, Real t) { return gauss1(x[0], 1.0 + t); };
  return p;
}

}  // namespace

TEST_CASE("implicit diffusion tracks the spreading gaussian") {
  ParabolicProblem p = heat_problem_1d();
  auto traj = parabolic_solve(p, 301, 2.5e-4);
  CHECK(traj.count() == 2001);
  const Real err = sup_err_last(
      traj, [](const VecXr& x, Real t) { return gauss1(x[0], 1.0 + t); });
  CHECK(err <= 5e-4);
  CHECK(max_principle_report(traj).clean());
}

TEST_CASE("upwind drift translates the gaussian at first order") {
  const Real c = 0.5;
  ParabolicProblem p = heat_problem_1d();
  p.T = 0.4;
  p.drift = [&](const VecXr&, Real) { return vec1(c); };
  p.drift_bound = c;
  p.bc = [&](const VecXr& x, Real t) { return gauss1(x[0] - c * t, 1.0 + t); };
  auto exact = [&](const VecXr& x, Real t) {
    return gauss1(x[0] - c * t, 1.0 + t);
  };
  auto err_at = [&](int nx) {
    return sup_err_last(parabolic_solve(p, nx, 2.5e-4), exact);
  };
  const Real e_coarse = err_at(151), e_fine = err_at(301);
  CHECK(e_fine <= 3e-3);
  CHECK(e_coarse / e_fine >= 1.5);  // first order in h
  CHECK(e_coarse / e_fine <= 2.8);
}

TEST_CASE("two-dimensional diffusion matches the product gaussian") {
  ParabolicProblem p;
  p.dim = 2;
  p.lo = vec2(-3, -3);
  p.hi = vec2(3, 3);
  p.T = 0.1;
  auto exact = [](const VecXr& x, Real t) {
    return gauss1(x[0], 1.0 + t) * gauss1(x[1], 1.0 + t);
  };
  p.u0 = [&](const VecXr& x) { return exact(x, 0.0); };
  p.bc = exact;
  auto traj = parabolic_solve(p, 61, 1e-3);
  CHECK(sup_err_last(traj, exact) <= 5e-4);
  CHECK(max_principle_report(traj).clean());
}

TEST_CASE("drift preconditions are enforced") {
  ParabolicProblem p = heat_problem_1d();
  p.drift = [](const VecXr&, Real) { return vec1(0.5); };

  SUBCASE("cfl violation") {
    p.drift_bound = 0.5;
    // dt * bound * (1/h) = 0.2 * 0.5 * 25 = 2.5 > 1.
    CHECK_THROWS_AS(parabolic_solve(p, 301, 0.2), ParameterError);
  }
  SUBCASE("sampled drift above the declared bound") {
    p.drift_bound = 0.1;
    CHECK_THROWS_AS(parabolic_solve(p, 301, 0.05), DataError);
  }
  SUBCASE("drift vector of the wrong size") {
    p.drift = [](const VecXr&, Real) { return vec2(0.1, 0.1); };
    p.drift_bound = 0.1;
    CHECK_THROWS_AS(parabolic_solve(p, 301, 0.05), ShapeError);
  }
  SUBCASE("negative declared bound") {
    p.drift_bound = -1;
    CHECK_THROWS_AS(parabolic_solve(p, 301, 0.05), ParameterError);
  }
}

TEST_CASE("problem and grid validation") {
  CHECK_THROWS_AS(BoxGrid(1, 2, vec1(0), vec1(1)), ParameterError);
  CHECK_THROWS_AS(BoxGrid(3, 10, vec1(0), vec1(1)), DimensionError);
  CHECK_THROWS_AS(BoxGrid(1, 10, vec1(1), vec1(0)), GeometryError);
  CHECK_THROWS_AS(BoxGrid(2, 10, vec1(0), vec1(1)), ShapeError);

  ParabolicProblem p = heat_problem_1d();
  p.T = 0;
  CHECK_THROWS_AS(parabolic_solve(p, 31, 0.01), ParameterError);
  p = heat_problem_1d();
  p.u0 = nullptr;
  CHECK_THROWS_AS(parabolic_solve(p, 31, 0.01), ParameterError);
  p = heat_problem_1d();
  CHECK_THROWS_AS(parabolic_solve(p, 31, -0.01), ParameterError);
}

TEST_CASE("max principle report flags doctored interior values") {
  ParabolicProblem p = heat_problem_1d();
  auto traj = parabolic_solve(p, 61, 0.01);
  REQUIRE(max_principle_report(traj).clean());
  // Push one interior node past every bound seen so far.
  traj.snaps[25][30] = 10.0;
  auto rep = max_principle_report(traj);
  CHECK(!rep.clean());
  CHECK(rep.violating_steps.size() == 1);
  CHECK(rep.violating_steps[0] == 25);
  CHECK(rep.worst_excess > 9.0);
  CHECK_THROWS_AS(max_principle_report(ScalarTrajectory{}), DataError);
}

namespace {

// Shared probe geometry: unit slab, boundary data 1 everywhere.
ParabolicProblem hot_wall_problem() {
  ParabolicProblem p;
  p.dim = 1;
  p.lo = vec1(-1);
  p.hi = vec1(1);
  p.T = 2.0;
  p.u0 = [](const VecXr&) { return 0.0; };
  p.bc = [](const VecXr&, Real) { return 1.0; };
  return p;
}

HarnackProbe basic_probe() {
  HarnackProbe probe;
  probe.K = {vec1(0)};
  probe.omega_lo = vec1(-0.5);
  probe.omega_hi = vec1(0.5);
  probe.tau = 1.0;
  probe.deltas = {0.01, 0.05, 0.2};
  probe.windows = {};
  probe.include_own = true;
  return probe;
}

}  // namespace

TEST_CASE("harnack probe geometry validation") {
  ParabolicProblem p = hot_wall_problem();
  HarnackProbe probe = basic_probe();

  SUBCASE("subdomain must sit strictly inside the box") {
    probe.omega_hi = vec1(1.0);
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), GeometryError);
  }
  SUBCASE("probe points must sit inside the subdomain") {
    probe.K = {vec1(0.9)};
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), GeometryError);
  }
  SUBCASE("empty probe set") {
    probe.K.clear();
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), GeometryError);
  }
  SUBCASE("observation start must precede the horizon") {
    probe.tau = 2.5;
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), GeometryError);
  }
  SUBCASE("window longer than the horizon") {
    probe.windows = {3.0};
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), ParameterError);
  }
  SUBCASE("empty delta list") {
    probe.deltas.clear();
    CHECK_THROWS_AS(harnack_stability_probe(p, probe, 41, 0.01), ParameterError);
  }
}

TEST_CASE("constant solution yields a zero-loss table") {
  ParabolicProblem p = hot_wall_problem();
  p.u0 = [](const VecXr&) { return 1.0; };
  auto table = harnack_stability_probe(p, basic_probe(), 41, 0.01);
  REQUIRE(table.members.size() == 1);
  CHECK(table.members[0].global_sup == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& row : table.rows) {
    CHECK(row.qualifying == 1);
    CHECK(std::abs(row.eps) <= 1e-12);
  }
}

TEST_CASE("negative family members are rejected") {
  ParabolicProblem p = hot_wall_problem();
  p.u0 = [](const VecXr&) { return -1.0; };
  p.bc = [](const VecXr&, Real) { return 0.0; };
  CHECK_THROWS_AS(harnack_stability_probe(p, basic_probe(), 41, 0.01),
                  DataError);
}

TEST_CASE("loss table is monotone in delta across the window family") {
  ParabolicProblem p = hot_wall_problem();
  p.T = 1.0;
  HarnackProbe probe = basic_probe();
  probe.tau = 0.5;
  probe.deltas = {0.02, 0.05, 0.1, 0.3, 0.6};
  probe.windows = default_windows(p.T);
  auto table = harnack_stability_probe(p, probe, 81, 0.0025);
  CHECK(table.members.size() == 1 + probe.windows.size());
  for (const auto& mem : table.members) {
    CHECK(mem.global_sup > 0);
    CHECK(mem.interior_min >= -1e-12);
    CHECK(!mem.label.empty());
  }
  for (size_t k = 1; k < table.rows.size(); ++k) {
    CHECK(table.rows[k].eps >= table.rows[k - 1].eps - 1e-15);
    CHECK(table.rows[k].qualifying >= table.rows[k - 1].qualifying);
  }
  // Short windows leave the early observation interval dark, so once they
  // qualify the loss saturates at 1.
  CHECK(table.rows.back().eps == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("default window ladder halves down from the horizon") {
  auto w = default_windows(2.0);
  REQUIRE(w.size() == 5);
  CHECK(w[0] == 2.0);
  for (size_t k = 1; k < w.size(); ++k) {
    CHECK(w[k] == doctest::Approx(w[k - 1] / 2).epsilon(1e-15));
    CHECK(w[k] > 0);
  }
}
