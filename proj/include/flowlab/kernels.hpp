#pragma once

#include <vector>

#include "flowlab/errors.hpp"
#include "flowlab/types.hpp"

namespace flowlab {
namespace kernels {

// Gaussian heat kernel in n dimensions; t must be positive.
Real heat_kernel(const VecXr& x, Real t, int n);

// Newtonian potential with the sign convention -Laplacian G = delta:
// n = 2: -(1/2pi) ln|x|,  n = 3: 1/(4pi |x|).
Real laplace_green(const VecXr& x, int n);

// Heat flow of the Newtonian potential. t = 0 returns the potential itself;
// the origin at t = 0 is a genuine singularity.
Real generating_phi(const VecXr& x, Real t, int n);

// Velocity kernel (-delta_ij Lap + d_i d_j) Phi and its spatial gradient.
// Zero-based component indices.
Real oseen_kij(int i, int j, const VecXr& x, Real t, int n);
Real oseen_kijk(int i, int j, int k, const VecXr& x, Real t, int n);

// True when (|x|^2 + t) is small enough that cancellation erodes the last
// digits; table emitters surface this as metadata.
bool near_singular(const VecXr& x, Real t);

enum class KernelKind { Gamma, GreenG, Phi, Kij, Kijk };

KernelKind kernel_kind_from_name(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

// Scale exponent p such that |kernel| <= C / s^p on |x|^2 + t = s^2.
int decay_exponent(KernelKind kind, int n);

struct DecayRow {
    Real scale = 0;
    Real max_abs = 0;
    Real bound_ratio = 0;  // max_abs * scale^decay_exponent
    bool near_singular = false;
};

struct DecayFit {
    Real slope = 0;     // d log(max_abs) / d log(scale)
    Real residual = 0;  // rms residual of the log-log fit
    std::vector<DecayRow> rows;
};

// Max-over-probe-set evaluation at |x|^2 + t = s^2 followed by a log-log
// least-squares fit. Requires at least 20 scales.
DecayFit verify_decay(KernelKind kind, int n, const std::vector<Real>& scales);

// Log-spaced scale grid, e.g. log_scales(1, 100, 20).
std::vector<Real> log_scales(Real lo, Real hi, int count);

}  // namespace kernels
}  // namespace flowlab
