#pragma once

#include <complex>
#include <cstdint>

#include <gmpxx.h>

namespace modstar {

// Exact rational, always in lowest terms with a positive denominator.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den);

// ((x)): 0 at integers, x - floor(x) - 1/2 otherwise.
Rational sawtooth(const Rational& x);

// s(d, c) = Σ_{h=1}^{c-1} ((hd/c))((h/c)) by direct summation.
// Requires 1 <= d < c and gcd(c, d) = 1.
Rational dedekind_sum_naive(std::int64_t d, std::int64_t c);

// Same value through the reciprocity law, O(log c) rational steps.
Rational dedekind_sum_fast(std::int64_t d, std::int64_t c);

// s(d mod c, c) for any d coprime to c >= 1; s(d, 1) = 0.
Rational dedekind_sum_reduced(std::int64_t d, std::int64_t c);

// Reusable scratch for the allocation-free reciprocity loop. One per thread.
class DedekindWorkspace {
 public:
  // s(d, c) for 0 <= d < c, gcd = 1, no range checks.
  const Rational& eval(std::int64_t d, std::int64_t c);

 private:
  Rational acc_;
  Rational term_;
};

struct UpperHalfPoint {
  double x;
  double y;  // > 0
};

// η(z) = e^{iπz/12} Π (1 - e^{2iπnz}). Reduces x into [-1/2, 1/2] and
// inverts z ↦ -1/z until y >= 1/2, then sums the pentagonal series.
std::complex<double> dedekind_eta(UpperHalfPoint z);

// The pentagonal series at z itself, without any modular reduction.
std::complex<double> dedekind_eta_series(UpperHalfPoint z);

// log |η(z)|, computed without underflow for large y.
double dedekind_eta_log_abs(UpperHalfPoint z);

// Barnes G for real z > 0, via the Weierstrass product for log G(1 + w).
double log_barnes_g(double z);
double barnes_g(double z);

// (2 - 2cos 4πγ)^{t²/4π²} G(1 - t/2π) G(1 + t/2π), for |t| < π.
double wieand_limit(double t, double gamma_arc);

}  // namespace modstar
