#include "modstar/quadrature.hpp"

#include <cmath>

#include "modstar/error.hpp"
#include "modstar/summation.hpp"

namespace modstar {

namespace {

double simpson_rec(const RealFn& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw Error("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  // Start from a few fixed panels so narrow features are not skipped.
  constexpr int kPanels = 8;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == kPanels) ? b : lo + h;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_rec(f, lo, hi, flo, fmid, fhi, whole, abs_tol / kPanels, max_depth);
  }
  return total;
}

double composite_simpson(const RealFn& f, double a, double b, long n_intervals) {
  if (n_intervals < 2) n_intervals = 2;
  if (n_intervals % 2) ++n_intervals;
  const double h = (b - a) / static_cast<double>(n_intervals);
  const auto n = static_cast<std::size_t>(n_intervals);
  const double inner = pairwise_sum<double>(1, n, [&](std::size_t i) {
    const double w = (i % 2) ? 4.0 : 2.0;
    return w * f(a + static_cast<double>(i) * h);
  });
  return h / 3.0 * (f(a) + inner + f(b));
}

RichardsonResult simpson_with_richardson(const RealFn& f, double a, double b, double step) {
  if (!(step > 0.0)) throw Error("quadrature step must be positive");
  auto coarse_n = static_cast<long>(std::ceil((b - a) / (2.0 * step)));
  if (coarse_n % 2) ++coarse_n;
  const double fine = composite_simpson(f, a, b, 2 * coarse_n);
  const double coarse = composite_simpson(f, a, b, coarse_n);
  return {fine, std::abs(fine - coarse) / 15.0};
}

}  // namespace modstar
