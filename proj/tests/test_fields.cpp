#include <doctest.h>

#include <cmath>
#include <complex>

#include "flowlab/field_ops.hpp"
#include "flowlab/mild.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/sampling.hpp"

using namespace flowlab;

namespace {

ScalarField random_scalar(const TorusGrid& g, unsigned long long seed) {
  ScalarField f(g);
  Rng rng(seed);
  for (Index i = 0; i < f.data.size(); ++i) f.data[i] = rng.normal();
  return f;
}

VectorField random_vector(const TorusGrid& g, unsigned long long seed) {
  VectorField v(g);
  Rng rng(seed);
  for (int d = 0; d < g.dim; ++d)
    for (Index i = 0; i < v.comp[d].size(); ++i) v.comp[d][i] = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("grid flattening round-trips and wavenumbers fold") {
  TorusGrid g(3, 6);
  for (Index f = 0; f < g.node_count(); ++f) {
    auto idx = g.unflat(f);
    CHECK(g.flat(idx[0], idx[1], idx[2]) == f);
  }
  CHECK(g.wavenumber(0) == 0);
  CHECK(g.wavenumber(1) == 1);
  CHECK(g.wavenumber(3) == 3);   // Nyquist index keeps its positive alias
  CHECK(g.wavenumber(4) == -2);
  CHECK(g.wavenumber(5) == -1);
  CHECK_THROWS_AS(TorusGrid(4, 8), DimensionError);
  CHECK_THROWS_AS(TorusGrid(2, 7), ParameterError);
}

TEST_CASE("analyze matches a brute-force DFT") {
  // Oracle: direct O(N^4) mode sums on a small grid.
  TorusGrid g(2, 4);
  ScalarField f = random_scalar(g, 42);
  Spectrum s = analyze(f);
  for (Index kf = 0; kf < g.node_count(); ++kf) {
    auto kidx = g.unflat(kf);
    Complex direct = 0;
    for (Index xf = 0; xf < g.node_count(); ++xf) {
      auto xidx = g.unflat(xf);
      Real phase = 0;
      for (int d = 0; d < 2; ++d)
        phase -= kTwoPi * Real(kidx[d]) * Real(xidx[d]) / g.n;
      direct += f.data[xf] * std::polar(1.0, phase);
    }
    CHECK(std::abs(s.data[kf] - direct) <= 1e-12 * (1 + std::abs(direct)));
  }
}

TEST_CASE("synthesize inverts analyze") {
  TorusGrid g(2, 16);
  ScalarField f = random_scalar(g, 7);
  ScalarField back = synthesize(analyze(f));
  CHECK((back.data - f.data).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("spectral derivatives are exact on band-limited data") {
  TorusGrid g(2, 16);
  ScalarField f(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    f.data[i] = std::sin(3 * x[0]) * std::cos(2 * x[1]);
  }
  ScalarField fx = partial(f, 0);
  ScalarField lap = laplacian(f);
  Real err_x = 0, err_lap = 0;
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    err_x = std::max(err_x, std::abs(fx.data[i] - 3 * std::cos(3 * x[0]) *
                                                      std::cos(2 * x[1])));
    err_lap = std::max(err_lap, std::abs(lap.data[i] + 13 * f.data[i]));
  }
  CHECK(err_x <= 1e-11);
  CHECK(err_lap <= 1e-10);
}

TEST_CASE("derivative of the pure Nyquist mode is dropped") {
  TorusGrid g(2, 8);
  ScalarField f(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    f.data[i] = std::cos(4 * x[0]);  // k = N/2, directionless on the grid
  }
  CHECK(sup_norm(partial(f, 0)) <= 1e-12);
}

TEST_CASE("derivatives respect a non-2pi period") {
  TorusGrid g(2, 16, 4.0);
  ScalarField f(g);
  const Real k = kTwoPi * 3 / 4.0;
  for (Index i = 0; i < g.node_count(); ++i)
    f.data[i] = std::sin(k * node_coords(g, i)[0]);
  ScalarField fx = partial(f, 0);
  Real err = 0;
  for (Index i = 0; i < g.node_count(); ++i)
    err = std::max(err, std::abs(fx.data[i] -
                                 k * std::cos(k * node_coords(g, i)[0])));
  CHECK(err <= 1e-11);
}

TEST_CASE("helmholtz projection kills divergence and is idempotent") {
  TorusGrid g(2, 16);
  VectorField v = random_vector(g, 3);
  VectorField pv = helmholtz_project(v);
  CHECK(sup_norm(divergence(pv)) <= 1e-10);
  VectorField ppv = helmholtz_project(pv);
  CHECK(sup_norm(sub(ppv, pv)) <= 1e-12);
  // The mean mode survives untouched.
  VecXr m0 = mean(v), m1 = mean(pv);
  CHECK((m1 - m0).cwiseAbs().maxCoeff() <= 1e-13);
  // A solenoidal field is a fixed point.
  VectorField tg = mild::taylor_green(g);
  CHECK(sup_norm(sub(helmholtz_project(tg), tg)) <= 1e-12);
}

TEST_CASE("heat semigroup damps each mode by exp(-kappa^2 t)") {
  TorusGrid g(2, 16, 4.0);
  ScalarField f(g);
  const Real k = kTwoPi * 2 / 4.0;
  for (Index i = 0; i < g.node_count(); ++i)
    f.data[i] = std::cos(k * node_coords(g, i)[1]);
  const Real t = 0.37;
  ScalarField ft = heat_semigroup(f, t);
  const Real factor = std::exp(-k * k * t);
  Real err = 0;
  for (Index i = 0; i < g.node_count(); ++i)
    err = std::max(err, std::abs(ft.data[i] - factor * f.data[i]));
  CHECK(err <= 1e-13);
  CHECK_THROWS_AS(heat_semigroup(f, -0.1), DomainError);
}

TEST_CASE("upsampling preserves shared nodes and the sup of smooth data") {
  TorusGrid g(2, 8);
  ScalarField f(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    f.data[i] = std::sin(x[0]) + 0.5 * std::cos(2 * x[1]);
  }
  ScalarField up = upsample(f, 4);
  CHECK(up.grid.n == 32);
  for (Index i1 = 0; i1 < g.n; ++i1)
    for (Index i0 = 0; i0 < g.n; ++i0)
      CHECK(std::abs(up(4 * i0, 4 * i1) - f(i0, i1)) <= 1e-12);
}

TEST_CASE("norms carry the cell volume") {
  TorusGrid g(2, 8);
  ScalarField f(g);
  f.data.setConstant(2.0);
  CHECK(sup_norm(f) == doctest::Approx(2.0));
  // L2 of a constant over the full torus: c * (2 pi).
  CHECK(lp_norm(f, 2) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-12));
}

TEST_CASE("green identity matches the Bessel closed form") {
  // For vorticity 2 cos x cos y, the disc integral over B((a,b), R) is
  // 2 cos a cos b sqrt(2) pi R J1(sqrt(2) R).
  VectorField tg = mild::taylor_green(TorusGrid(2, 32));
  Vec2r center;
  center << 1.0, 1.5;
  for (Real R : {0.5, 1.0}) {
    auto res = green_identity_check(tg, center, R);
    const Real oracle = 2 * std::cos(center[0]) * std::cos(center[1]) *
                        std::sqrt(2.0) * kPi * R *
                        std::cyl_bessel_j(1, std::sqrt(2.0) * R);
    CHECK(std::abs(res.area_integral - oracle) <= 1e-8);
    CHECK(res.mismatch() <= 1e-8);
  }
}

TEST_CASE("curl2d of taylor-green is 2 cos x cos y") {
  TorusGrid g(2, 16);
  ScalarField w = curl2d(mild::taylor_green(g));
  Real err = 0;
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    err = std::max(err,
                   std::abs(w.data[i] - 2 * std::cos(x[0]) * std::cos(x[1])));
  }
  CHECK(err <= 1e-12);
  VectorField v3(TorusGrid(3, 8));
  CHECK_THROWS_AS(curl2d(v3), DimensionError);
}

TEST_CASE("cylindrical frame round-trips off the axis") {
  Vec3r u;
  u << 0.3, -1.2, 0.7;
  Vec2r xp;
  xp << 0.8, -0.6;
  auto c = to_cylindrical(u, xp);
  CHECK(!c.on_axis);
  Vec3r back = from_cylindrical(c, xp);
  CHECK((back - u).cwiseAbs().maxCoeff() <= 1e-14);
  Vec2r axis = Vec2r::Zero();
  CHECK(to_cylindrical(u, axis).on_axis);
}

TEST_CASE("cubic sampling is nodal-exact and fourth-order accurate") {
  auto worst = [](int n) {
    TorusGrid g(2, n);
    ScalarField f(g);
    for (Index i = 0; i < g.node_count(); ++i) {
      VecXr x = node_coords(g, i);
      f.data[i] = std::sin(x[0]) * std::cos(x[1]);
    }
    Real err = 0;
    Rng rng(5);
    for (int s = 0; s < 200; ++s) {
      VecXr x(2);
      x << rng.uniform() * kTwoPi, rng.uniform() * kTwoPi;
      err = std::max(err, std::abs(sample_cubic(f, x) -
                                   std::sin(x[0]) * std::cos(x[1])));
    }
    return err;
  };
  TorusGrid g(2, 16);
  ScalarField f = random_scalar(g, 9);
  for (Index i = 0; i < g.node_count(); ++i) {
    auto idx = g.unflat(i);
    VecXr x(2);
    x << g.coord(idx[0]), g.coord(idx[1]);
    CHECK(std::abs(sample_cubic(f, x) - f.data[i]) <= 1e-13);
  }
  const Real e16 = worst(16), e32 = worst(32);
  CHECK(e32 <= e16 / 7.0);  // order >= ~3
}

TEST_CASE("spectral point evaluation is exact for band-limited fields") {
  TorusGrid g(2, 16);
  ScalarField f(g);
  for (Index i = 0; i < g.node_count(); ++i) {
    VecXr x = node_coords(g, i);
    f.data[i] = std::sin(2 * x[0]) * std::cos(x[1]) + 0.25;
  }
  Spectrum s = analyze(f);
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    VecXr x(2);
    x << rng.uniform() * kTwoPi, rng.uniform() * kTwoPi;
    const Real truth = std::sin(2 * x[0]) * std::cos(x[1]) + 0.25;
    CHECK(std::abs(spectral_eval(s, x) - truth) <= 1e-11);
  }
}

TEST_CASE("shape mismatches are rejected") {
  VectorField a((TorusGrid(2, 8)));
  VectorField b((TorusGrid(2, 16)));
  CHECK_THROWS_AS(add(a, b), ShapeError);
}
