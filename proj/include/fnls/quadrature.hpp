#pragma once

#include <functional>

namespace fnls {

/// Composite Simpson on a fixed grid (n intervals, n even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Tanh-sinh (double-exponential) quadrature on (a, b); robust to integrable
/// endpoint singularities.  Relative tolerance on the level-to-level change.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, int max_level = 12);

} // namespace fnls
