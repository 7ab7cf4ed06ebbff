#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "flowlab/kernels.hpp"
#include "flowlab/quadrature.hpp"

using namespace flowlab;
using namespace flowlab::kernels;

namespace {

VecXr vec3(Real x, Real y, Real z) {
  VecXr v(3);
  v << x, y, z;
  return v;
}

VecXr vec2(Real x, Real y) {
  VecXr v(2);
  v << x, y;
  return v;
}

// Quadrature oracle for the generating function: convolve the heat kernel
// with the Newtonian potential using the sphere-average identity
//   avg_{|z|=s} G(x - z) = G(max(r, s))
// which holds in both dimensions, leaving a single radial integral.
Real phi_oracle(Real r, Real t, int n) {
  auto shell = [&](Real s) {
    const Real m = std::max(r, s);
    const Real g = n == 3 ? 1.0 / (4 * kPi * m) : -std::log(m) / kTwoPi;
    const Real area = n == 3 ? 4 * kPi * s * s : kTwoPi * s;
    return area * std::pow(4 * kPi * t, -n / 2.0) *
           std::exp(-s * s / (4 * t)) * g;
  };
  // Piecewise panels: the Gaussian shell is narrow compared to the full
  // range, and a single adaptive pass can step right over it.
  const Real w = std::sqrt(t);
  std::vector<Real> cuts{0, w, 4 * w, 10 * w, r, std::max(r, 1.0) + 40 * w};
  std::sort(cuts.begin(), cuts.end());
  Real total = 0;
  for (size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i] > cuts[i - 1])
      total += adaptive_quadrature(shell, cuts[i - 1], cuts[i], 1e-12, 1e-15);
  return total;
}

}  // namespace

TEST_CASE("heat kernel has unit mass and solves the heat equation") {
  for (int n : {2, 3}) {
    const Real t = 0.7;
    auto shell = [&](Real s) {
      const Real area = n == 3 ? 4 * kPi * s * s : kTwoPi * s;
      return area * heat_kernel(VecXr::Constant(n, 0) +
                                    s * VecXr::Unit(n, 0),
                                t, n);
    };
    const Real mass = adaptive_quadrature(shell, 0, 40 * std::sqrt(t), 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }
  // d_t Gamma = Lap Gamma by central differences.
  const VecXr x = vec3(0.4, -0.2, 0.6);
  const Real t = 0.5, dh = 1e-4;
  const Real dt_term =
      (heat_kernel(x, t + dh, 3) - heat_kernel(x, t - dh, 3)) / (2 * dh);
  Real lap = 0;
  for (int d = 0; d < 3; ++d) {
    VecXr e = VecXr::Zero(3);
    e[d] = dh;
    lap += (heat_kernel(x + e, t, 3) - 2 * heat_kernel(x, t, 3) +
            heat_kernel(x - e, t, 3)) /
           (dh * dh);
  }
  CHECK(std::abs(dt_term - lap) <= 1e-5);
  CHECK_THROWS_AS(heat_kernel(x, 0.0, 3), DomainError);
}

TEST_CASE("laplace green function is harmonic away from the pole") {
  const Real dh = 1e-4;
  for (int n : {2, 3}) {
    VecXr x = n == 3 ? vec3(0.5, -0.3, 0.8) : vec2(0.5, -0.3);
    Real lap = 0;
    for (int d = 0; d < n; ++d) {
      VecXr e = VecXr::Zero(n);
      e[d] = dh;
      lap += (laplace_green(x + e, n) - 2 * laplace_green(x, n) +
              laplace_green(x - e, n)) /
             (dh * dh);
    }
    CHECK(std::abs(lap) <= 1e-5);
  }
  CHECK_THROWS_AS(laplace_green(vec3(0, 0, 0), 3), SingularityError);
}

TEST_CASE("generating function matches its quadrature oracle") {
  for (int n : {2, 3}) {
    for (Real r : {0.3, 1.0, 2.5}) {
      for (Real t : {0.05, 0.5, 2.0}) {
        VecXr x = VecXr::Zero(n);
        x[0] = r;
        const Real got = generating_phi(x, t, n);
        const Real want = phi_oracle(r, t, n);
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("generating function at t = 0 is the potential itself") {
  for (int n : {2, 3}) {
    VecXr x = VecXr::Zero(n);
    x[0] = 1.3;
    CHECK(generating_phi(x, 0.0, n) ==
          doctest::Approx(laplace_green(x, n)).epsilon(1e-13));
  }
}

TEST_CASE("oseen kernel matches finite differences of the generator") {
  // Oracle: K_ij = (-delta_ij Lap + d_i d_j) Phi via central differences.
  const Real dh = 1e-3;
  for (int n : {2, 3}) {
    VecXr x = n == 3 ? vec3(0.9, 0.4, -0.7) : vec2(0.9, 0.4);
    const Real t = 0.6;
    auto phi = [&](const VecXr& y) { return generating_phi(y, t, n); };
    Eigen::MatrixXd hess(n, n);
    Real lap = 0;
    for (int i = 0; i < n; ++i) {
      VecXr ei = VecXr::Zero(n);
      ei[i] = dh;
      const Real dii =
          (phi(x + ei) - 2 * phi(x) + phi(x - ei)) / (dh * dh);
      hess(i, i) = dii;
      lap += dii;
      for (int j = 0; j < i; ++j) {
        VecXr ej = VecXr::Zero(n);
        ej[j] = dh;
        hess(i, j) = hess(j, i) =
            (phi(x + ei + ej) - phi(x + ei - ej) - phi(x - ei + ej) +
             phi(x - ei - ej)) /
            (4 * dh * dh);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Real want = (i == j ? -lap : 0.0) + hess(i, j);
        CHECK(std::abs(oseen_kij(i, j, x, t, n) - want) <= 2e-5);
      }
  }
}

TEST_CASE("oseen gradient matches finite differences of the kernel") {
  const Real dh = 1e-4;
  const VecXr x = vec3(0.8, -0.5, 0.3);
  const Real t = 0.4;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        VecXr e = VecXr::Zero(3);
        e[k] = dh;
        const Real want =
            (oseen_kij(i, j, x + e, t, 3) - oseen_kij(i, j, x - e, t, 3)) /
            (2 * dh);
        CHECK(std::abs(oseen_kijk(i, j, k, x, t, 3) - want) <= 1e-6);
      }
}

TEST_CASE("axis values stay finite and match the radial limit") {
  const VecXr zero3 = VecXr::Zero(3);
  const Real t = 0.3;
  const Real diag = oseen_kij(0, 0, zero3, t, 3);
  CHECK(std::isfinite(diag));
  CHECK(oseen_kij(1, 1, zero3, t, 3) == doctest::Approx(diag));
  CHECK(std::abs(oseen_kij(0, 1, zero3, t, 3)) <= 1e-14);
  // Continuity: approaching the origin reproduces the closed-form limit.
  VecXr x = vec3(1e-5, 0, 0);
  CHECK(oseen_kij(0, 0, x, t, 3) == doctest::Approx(diag).epsilon(1e-6));
}

TEST_CASE("decay table slopes land on the scaling exponents") {
  auto scales = log_scales(1, 100, 24);
  CHECK(scales.size() == 24);
  struct Row {
    KernelKind kind;
    int n;
    Real expect;
  };
  for (const Row& row : {Row{KernelKind::Kij, 3, -3.0},
                         Row{KernelKind::Kijk, 3, -4.0},
                         Row{KernelKind::Kij, 2, -2.0}}) {
    auto fit = verify_decay(row.kind, row.n, scales);
    CHECK(std::abs(fit.slope - row.expect) <= 0.05 * std::abs(row.expect));
    CHECK(fit.rows.size() == scales.size());
    for (const auto& r : fit.rows) CHECK(r.max_abs > 0);
  }
  CHECK_THROWS_AS(verify_decay(KernelKind::Kij, 3, {1.0, 2.0}),
                  ParameterError);
}

TEST_CASE("kernel kind names round-trip") {
  for (auto kind : {KernelKind::Gamma, KernelKind::GreenG, KernelKind::Phi,
                    KernelKind::Kij, KernelKind::Kijk})
    CHECK(kernel_kind_from_name(kernel_kind_name(kind)) == kind);
  CHECK_THROWS_AS(kernel_kind_from_name("bogus"), ParameterError);
}
