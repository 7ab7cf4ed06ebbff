#include "flowlab/quadrature.hpp"

#include <cmath>

#include "flowlab/errors.hpp"

namespace flowlab {

std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n, Real a,
                                                               Real b) {
    if (n < 1) throw ParameterError("gauss_legendre: order must be >= 1");
    std::vector<Real> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        Real z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        Real pp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                Real p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            pp = n * (z * p0 - p1) / (z * z - 1);
            Real dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const Real xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        x[i] = xm - xl * z;
        x[n - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

namespace {

struct SimpsonPanel {
    Real a, b, fa, fm, fb, whole;
};

Real simpson(Real fa, Real fm, Real fb, Real h) {
    return h / 6.0 * (fa + 4 * fm + fb);
}

Real adapt(const std::function<Real(Real)>& f, SimpsonPanel p, Real rel_tol,
           Real abs_tol, int depth, int max_depth) {
    const Real m = 0.5 * (p.a + p.b);
    const Real lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
    const Real flm = f(lm), frm = f(rm);
    const Real left = simpson(p.fa, flm, p.fm, m - p.a);
    const Real right = simpson(p.fm, frm, p.fb, p.b - m);
    const Real err = (left + right - p.whole) / 15.0;
    const Real tol = std::max(abs_tol, rel_tol * std::abs(left + right));
    if (std::abs(err) <= tol) return left + right + err;
    if (depth >= max_depth)
        throw AccuracyError("adaptive_quadrature: depth limit reached");
    return adapt(f, {p.a, m, p.fa, flm, p.fm, left}, rel_tol, abs_tol / 2,
                 depth + 1, max_depth) +
           adapt(f, {m, p.b, p.fm, frm, p.fb, right}, rel_tol, abs_tol / 2,
                 depth + 1, max_depth);
}

}  // namespace

Real adaptive_quadrature(const std::function<Real(Real)>& f, Real a, Real b,
                         Real rel_tol, Real abs_tol, int max_depth) {
    if (!(b > a)) throw ParameterError("adaptive_quadrature: requires b > a");
    const Real fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const Real whole = simpson(fa, fm, fb, b - a);
    return adapt(f, {a, b, fa, fm, fb, whole}, rel_tol, abs_tol, 0, max_depth);
}

}  // namespace flowlab
