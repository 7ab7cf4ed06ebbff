#include "flowlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace flowlab {
namespace kernels {

namespace {

constexpr Real kGammaEuler = 0.57721566490153286061;
const Real kSqrtPi = std::sqrt(kPi);

void check_dim(const VecXr& x, int n, const char* who) {
    if (n != 2 && n != 3)
        throw DimensionError(std::string(who) + ": n must be 2 or 3");
    if (x.size() != n)
        throw ShapeError(std::string(who) + ": point has wrong dimension");
}

Real exp_integral_e1(Real z) {
    // E1(z) = -Ei(-z); underflows cleanly to 0 for large z.
    return -std::expint(-z);
}

// Radial derivatives of the generating function Phi(rho, t). The ratios
// p1r = Phi'/rho and br = (Phi'' - Phi'/rho)/rho get dedicated series
// because forming them from p1, p2 cancels catastrophically near the axis.
struct Radial {
    Real phi = 0;   // Phi
    Real p1 = 0;    // Phi'
    Real p2 = 0;    // Phi''
    Real p3 = 0;    // Phi'''
    Real p1r = 0;   // Phi'/rho
    Real br = 0;    // (Phi'' - Phi'/rho)/rho
};

// ---------- n = 3: Phi = erf(a rho) / (4 pi rho), a = 1/(2 sqrt t) ------
//
// Dimensionless profiles g with Phi^{(m)} = a^{m+1} g_m(s), s = a rho.

struct Profiles3 {
    Real g0, g1, g2, g3, g1s, bs;  // g1s = g1/s, bs = (g2 - g1s)/s
};

Profiles3 profiles3_series(Real s) {
    // Term-wise sums derived from erf and Gaussian Taylor series; entire
    // functions, 30 terms are exact to double precision for s < 0.7.
    const Real pref = (2.0 / kSqrtPi) / (4.0 * kPi);
    const Real s2 = s * s;
    Profiles3 g{0, 0, 0, 0, 0, 0};
    Real fact = 1;   // j!
    Real spow = 1;   // s^{2j}
    Real sgn = 1;    // (-1)^j
    for (int j = 0; j <= 30; ++j) {
        const Real fj1 = fact * (j + 1);  // (j+1)!
        const Real fj2 = fj1 * (j + 2);   // (j+2)!
        g.g0 += sgn * spow / (fact * (2 * j + 1));
        g.g1 += sgn * (2.0 * (j + 1)) / (fj1 * (2 * j + 3)) * (-1) * spow * s;
        g.g1s += sgn * (2.0 * (j + 1)) / (fj1 * (2 * j + 3)) * (-1) * spow;
        g.g2 += sgn * 2.0 * ((2.0 * j + 2) / (fj1 * (2 * j + 3)) - 1.0 / fact) *
                spow;
        g.g3 += sgn *
                (4.0 * (1.0 / fact - 1.0 / fj1) +
                 12.0 * (j + 2) / (fj2 * (2 * j + 5))) *
                spow * s;
        fact = fj1;
        spow *= s2;
        sgn = -sgn;
    }
    // bs = (g2 - g1s)/s: the s^0 coefficient of g2 - g1s vanishes
    // identically (B(0) = 0), so the sum starts at j = 1.
    {
        Real f2 = 1, sp = s, sg = -1;  // start at j = 1
        for (int j = 1; j <= 30; ++j) {
            f2 *= j;                       // j!
            const Real fj1 = f2 * (j + 1);  // (j+1)!
            g.bs += sg * (3.0 * (2.0 * j + 2) / (fj1 * (2 * j + 3)) - 2.0 / f2) *
                    sp;
            sp *= s2;
            sg = -sg;
        }
    }
    g.g0 *= pref;
    g.g1 *= pref;
    g.g1s *= pref;
    g.g2 *= pref;
    g.g3 *= pref;
    g.bs *= pref;
    return g;
}

Profiles3 profiles3_closed(Real s) {
    const Real D = (2.0 / kSqrtPi) * std::exp(-s * s);
    const Real E = std::erf(s);
    const Real s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    Profiles3 g;
    g.g0 = E / (4 * kPi * s);
    g.g1 = (s * D - E) / (4 * kPi * s2);
    g.g1s = g.g1 / s;
    g.g2 = (E / s3 - D / s2 - D) / (2 * kPi);
    g.g3 = ((4 * s2 + 4) * D / s + 6 * D / s3 - 6 * E / s4) / (4 * kPi);
    g.bs = (g.g2 - g.g1s) / s;
    return g;
}

Radial radial_n3(Real rho, Real t) {
    Radial r;
    if (t == 0) {
        const Real c = 1.0 / (4 * kPi);
        const Real rho2 = rho * rho, rho3 = rho2 * rho, rho4 = rho3 * rho;
        r.phi = c / rho;
        r.p1 = -c / rho2;
        r.p2 = 2 * c / rho3;
        r.p3 = -6 * c / rho4;
        r.p1r = -c / rho3;
        r.br = 3 * c / rho4;
        return r;
    }
    const Real a = 0.5 / std::sqrt(t);
    const Real s = a * rho;
    const Profiles3 g = s < 0.7 ? profiles3_series(s) : profiles3_closed(s);
    const Real a2 = a * a, a3 = a2 * a, a4 = a3 * a;
    r.phi = a * g.g0;
    r.p1 = a2 * g.g1;
    r.p2 = a3 * g.g2;
    r.p3 = a4 * g.g3;
    r.p1r = a3 * g.g1s;
    r.br = a4 * g.bs;
    return r;
}

// ---------- n = 2: Phi = -(1/4pi) (2 ln rho + E1(z)), z = rho^2/(4t) ----

// (4z^2 + 2z + 2) e^{-z} - 2; coefficient of z^m is (-1)^m 2(2m-1)(m-1)/m!.
Real n2_third(Real z) {
    if (z >= 0.25) return (4 * z * z + 2 * z + 2) * std::exp(-z) - 2.0;
    Real acc = 0, fact = 2, zp = z * z, sgn = 1;
    for (int m = 2; m <= 24; ++m) {
        acc += sgn * 2.0 * (2 * m - 1) * (m - 1) / fact * zp;
        fact *= (m + 1);
        zp *= z;
        sgn = -sgn;
    }
    return acc;
}

// 2 (1 - e^{-z} - z e^{-z}); coefficient of z^m is (-1)^m 2(m-1)/m!.
Real n2_bdiff(Real z) {
    if (z >= 0.25) {
        const Real ez = std::exp(-z);
        return 2.0 * (-std::expm1(-z) - z * ez);
    }
    Real acc = 0, fact = 2, zp = z * z, sgn = 1;
    for (int m = 2; m <= 24; ++m) {
        acc += sgn * 2.0 * (m - 1) / fact * zp;
        fact *= (m + 1);
        zp *= z;
        sgn = -sgn;
    }
    return acc;
}

Radial radial_n2(Real rho, Real t) {
    Radial r;
    const Real c = 1.0 / (2 * kPi);
    if (t == 0) {
        const Real rho2 = rho * rho, rho3 = rho2 * rho;
        r.phi = -c * std::log(rho);
        r.p1 = -c / rho;
        r.p2 = c / rho2;
        r.p1r = -c / rho2;
        r.p3 = -2 * c / rho3;
        r.br = 2 * c / rho3;
        return r;
    }
    const Real z = rho * rho / (4 * t);
    if (z < 1) {
        // 2 ln rho + E1(z) = -gamma + ln(4t) + sum_{m>=1} (-1)^{m+1} z^m/(m m!)
        Real ser = 0, zp = z, fact = 1, sgn = 1;
        for (int m = 1; m <= 24; ++m) {
            fact *= m;
            ser += sgn * zp / (m * fact);
            zp *= z;
            sgn = -sgn;
        }
        r.phi = -(-kGammaEuler + std::log(4 * t) + ser) / (4 * kPi);
    } else {
        r.phi = -c * std::log(rho) - exp_integral_e1(z) / (4 * kPi);
    }
    const Real rho2 = rho * rho, rho3 = rho2 * rho;
    const Real em = std::expm1(-z);
    const Real ez = std::exp(-z);
    r.p1 = c * em / rho;
    r.p1r = c * em / rho2;
    r.p2 = c * (-em - 2 * z * ez) / rho2;
    r.p3 = c * n2_third(z) / rho3;
    r.br = c * n2_bdiff(z) / rho3;
    return r;
}

Radial radial(Real rho, Real t, int n) {
    return n == 3 ? radial_n3(rho, t) : radial_n2(rho, t);
}

// Phi''(0, t): the on-axis curvature, used for K_ij at x = 0.
Real p2_axis(Real t, int n) {
    if (n == 3) {
        const Real a = 0.5 / std::sqrt(t);
        return -a * a * a / (3.0 * kPi * kSqrtPi);
    }
    return -1.0 / (8 * kPi * t);
}

}  // namespace

Real heat_kernel(const VecXr& x, Real t, int n) {
    check_dim(x, n, "heat_kernel");
    if (!(t > 0)) throw DomainError("heat_kernel: t must be positive");
    return std::pow(4 * kPi * t, -0.5 * n) * std::exp(-x.squaredNorm() / (4 * t));
}

Real laplace_green(const VecXr& x, int n) {
    check_dim(x, n, "laplace_green");
    const Real rho = x.norm();
    if (rho == 0) throw SingularityError("laplace_green: singular at x = 0");
    return n == 3 ? 1.0 / (4 * kPi * rho) : -std::log(rho) / (2 * kPi);
}

Real generating_phi(const VecXr& x, Real t, int n) {
    check_dim(x, n, "generating_phi");
    if (t < 0) throw DomainError("generating_phi: t must be >= 0");
    const Real rho = x.norm();
    if (t == 0) {
        if (rho == 0)
            throw SingularityError("generating_phi: singular at (0, 0)");
        return laplace_green(x, n);
    }
    if (rho == 0) {
        if (n == 3) return (0.5 / std::sqrt(t)) / (2.0 * kPi * kSqrtPi);
        return (kGammaEuler - std::log(4 * t)) / (4 * kPi);
    }
    return radial(rho, t, n).phi;
}

namespace {
void check_index(int idx, int n, const char* who) {
    if (idx < 0 || idx >= n)
        throw ParameterError(std::string(who) + ": component index out of range");
}
}  // namespace

Real oseen_kij(int i, int j, const VecXr& x, Real t, int n) {
    check_dim(x, n, "oseen_kij");
    check_index(i, n, "oseen_kij");
    check_index(j, n, "oseen_kij");
    if (t < 0) throw DomainError("oseen_kij: t must be >= 0");
    const Real rho = x.norm();
    if (rho == 0 && t == 0)
        throw SingularityError("oseen_kij: singular at (0, 0)");
    if (rho == 0) return i == j ? -(n - 1) * p2_axis(t, n) : 0.0;
    const Radial r = radial(rho, t, n);
    const Real A = -r.p2 - (n - 2) * r.p1r;
    const Real B = r.p2 - r.p1r;
    const Real xi = x[i] / rho, xj = x[j] / rho;
    return (i == j ? A : 0.0) + xi * xj * B;
}

Real oseen_kijk(int i, int j, int k, const VecXr& x, Real t, int n) {
    check_dim(x, n, "oseen_kijk");
    check_index(i, n, "oseen_kijk");
    check_index(j, n, "oseen_kijk");
    check_index(k, n, "oseen_kijk");
    if (t < 0) throw DomainError("oseen_kijk: t must be >= 0");
    const Real rho = x.norm();
    if (rho == 0 && t == 0)
        throw SingularityError("oseen_kijk: singular at (0, 0)");
    if (rho == 0) return 0;  // odd in x
    const Radial r = radial(rho, t, n);
    const Real Aprime = -r.p3 - (n - 2) * r.br;
    const Real tail = r.p3 - 3 * r.br;  // B' - 2 B/rho
    const Real xi = x[i] / rho, xj = x[j] / rho, xk = x[k] / rho;
    Real val = xi * xj * xk * tail;
    if (i == j) val += Aprime * xk;
    if (i == k) val += xj * r.br;
    if (j == k) val += xi * r.br;
    return val;
}

bool near_singular(const VecXr& x, Real t) {
    return x.squaredNorm() + t < 1e-8;
}

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "Gamma") return KernelKind::Gamma;
    if (name == "G") return KernelKind::GreenG;
    if (name == "Phi") return KernelKind::Phi;
    if (name == "Kij") return KernelKind::Kij;
    if (name == "Kijk") return KernelKind::Kijk;
    throw ParameterError("unknown kernel kind: " + name);
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Gamma: return "Gamma";
        case KernelKind::GreenG: return "G";
        case KernelKind::Phi: return "Phi";
        case KernelKind::Kij: return "Kij";
        case KernelKind::Kijk: return "Kijk";
    }
    return "?";
}

int decay_exponent(KernelKind kind, int n) {
    switch (kind) {
        case KernelKind::Gamma: return n;
        case KernelKind::GreenG: return n == 3 ? 1 : 0;
        case KernelKind::Phi: return n == 3 ? 1 : 0;
        case KernelKind::Kij: return n;
        case KernelKind::Kijk: return n + 1;
    }
    return 0;
}

namespace {

std::vector<VecXr> probe_directions(int n) {
    std::vector<VecXr> dirs;
    auto push = [&](std::initializer_list<Real> v) {
        VecXr d(n);
        int idx = 0;
        for (Real comp : v) d[idx++] = comp;
        dirs.push_back(d.normalized());
    };
    if (n == 2) {
        push({1, 0});
        push({0, 1});
        push({1, 1});
        push({1, -1});
        push({1, 2});
    } else {
        push({1, 0, 0});
        push({0, 1, 0});
        push({0, 0, 1});
        push({1, 1, 0});
        push({1, 0, 1});
        push({0, 1, 1});
        push({1, 1, 1});
        push({1, 2, 3});
    }
    return dirs;
}

Real probe_max(KernelKind kind, int n, Real scale) {
    const auto dirs = probe_directions(n);
    std::vector<Real> splits;
    switch (kind) {
        case KernelKind::Gamma: splits = {0.2, 0.5, 0.8, 1.0}; break;
        case KernelKind::GreenG: splits = {0.0}; break;
        default: splits = {0.0, 0.2, 0.5, 0.8, 1.0}; break;
    }
    Real best = 0;
    for (Real alpha : splits) {
        const Real t = scale * scale * alpha;
        const Real rho = scale * std::sqrt(std::max(0.0, 1 - alpha));
        for (const VecXr& d : dirs) {
            VecXr x = rho * d;
            switch (kind) {
                case KernelKind::Gamma:
                    best = std::max(best, std::abs(heat_kernel(x, t, n)));
                    break;
                case KernelKind::GreenG:
                    best = std::max(best, std::abs(laplace_green(x, n)));
                    break;
                case KernelKind::Phi:
                    best = std::max(best, std::abs(generating_phi(x, t, n)));
                    break;
                case KernelKind::Kij:
                    for (int i = 0; i < n; ++i)
                        for (int j = i; j < n; ++j)
                            best = std::max(best,
                                            std::abs(oseen_kij(i, j, x, t, n)));
                    break;
                case KernelKind::Kijk:
                    for (int i = 0; i < n; ++i)
                        for (int j = i; j < n; ++j)
                            for (int k = 0; k < n; ++k)
                                best = std::max(
                                    best,
                                    std::abs(oseen_kijk(i, j, k, x, t, n)));
                    break;
            }
            if (alpha == 1.0) break;  // x = 0 for every direction
        }
    }
    return best;
}

}  // namespace

DecayFit verify_decay(KernelKind kind, int n, const std::vector<Real>& scales) {
    if (scales.size() < 20)
        throw ParameterError("verify_decay: need at least 20 scale points");
    DecayFit fit;
    std::vector<Real> lx, ly;
    const int expo = decay_exponent(kind, n);
    for (Real s : scales) {
        if (!(s > 0)) throw ParameterError("verify_decay: scales must be > 0");
        DecayRow row;
        row.scale = s;
        row.max_abs = probe_max(kind, n, s);
        row.bound_ratio = row.max_abs * std::pow(s, expo);
        VecXr probe = VecXr::Zero(n);
        probe[0] = s;
        row.near_singular = near_singular(probe, 0);
        fit.rows.push_back(row);
        if (row.max_abs > 0) {
            lx.push_back(std::log(s));
            ly.push_back(std::log(row.max_abs));
        }
    }
    const Real m = Real(lx.size());
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t q = 0; q < lx.size(); ++q) {
        sx += lx[q];
        sy += ly[q];
        sxx += lx[q] * lx[q];
        sxy += lx[q] * ly[q];
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const Real intercept = (sy - fit.slope * sx) / m;
    Real ss = 0;
    for (size_t q = 0; q < lx.size(); ++q) {
        const Real r = ly[q] - (intercept + fit.slope * lx[q]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / m);
    return fit;
}

std::vector<Real> log_scales(Real lo, Real hi, int count) {
    if (!(lo > 0) || !(hi > lo) || count < 2)
        throw ParameterError("log_scales: need 0 < lo < hi and count >= 2");
    std::vector<Real> s(count);
    for (int i = 0; i < count; ++i)
        s[i] = lo * std::pow(hi / lo, Real(i) / (count - 1));
    return s;
}

}  // namespace kernels
}  // namespace flowlab
