#pragma once

#include <functional>

namespace modstar {

using RealFn = std::function<double(double)>;

// Adaptive Simpson on [a, b] to absolute tolerance abs_tol. Recursion is
// depth-first left-to-right, so the result is deterministic.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol = 1e-10,
                        int max_depth = 50);

// Composite Simpson with n_intervals (rounded up to even) equal panels.
double composite_simpson(const RealFn& f, double a, double b, long n_intervals);

struct RichardsonResult {
  double value;
  double error_estimate;  // |S(h) - S(2h)| / 15
};

// Composite Simpson at step h and 2h; reports the Richardson error estimate.
RichardsonResult simpson_with_richardson(const RealFn& f, double a, double b, double step);

}  // namespace modstar
