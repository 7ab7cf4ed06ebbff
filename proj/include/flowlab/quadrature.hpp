#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "flowlab/types.hpp"

namespace flowlab {

// Gauss-Legendre nodes and weights on [a, b]; nodes via Newton iteration.
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n, Real a,
                                                               Real b);

// Adaptive Simpson integration. Stops when the local Richardson estimate is
// below max(rel_tol * |integral|, abs_tol); throws AccuracyError when the
// recursion depth limit is hit before that.
Real adaptive_quadrature(const std::function<Real(Real)>& f, Real a, Real b,
                         Real rel_tol = 1e-10, Real abs_tol = 1e-14,
                         int max_depth = 48);

}  // namespace flowlab
