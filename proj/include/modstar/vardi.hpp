#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace modstar {

struct FareyPair {
  std::int64_t c;
  std::int64_t d;
};

// F_N = {(c, d) : 1 <= d < c < N, gcd(c, d) = 1}, c ascending then d ascending.
struct FareySet {
  std::int64_t n = 0;
  std::vector<FareyPair> pairs;
};

FareySet enumerate_farey(std::int64_t n);

// (1/2π) log(N/4).
double vardi_gamma(double n);

// Dedekind sums s(d, c) for every pair of F_{n_max}, grouped by c. Bucket c
// lists d ascending, so it is mirror-symmetric under d ↦ c - d. Each value is
// the correctly rounded double of the exact rational.
class DedekindBuckets {
 public:
  static DedekindBuckets build(std::int64_t n_max);

  std::int64_t n_max() const { return n_max_; }
  std::span<const double> bucket(std::int64_t c) const;
  // |F_n| for n <= n_max.
  std::int64_t count_below(std::int64_t n) const;

  DedekindBuckets(std::int64_t n_max, std::vector<std::size_t> offsets, std::vector<double> values);

 private:
  std::int64_t n_max_;
  std::vector<std::size_t> offsets_;  // bucket c is values_[offsets_[c], offsets_[c+1])
  std::vector<double> values_;
};

// Windows of the Dedekind-sum theorem: a limit is claimed for |t| < 4π/3,
// the uniform error bound holds for |t| < 2π.
enum class WindowRegime { Convergent, UniformBoundOnly, Exploratory };
WindowRegime vardi_regime(double t);
std::string_view to_string(WindowRegime r);

struct FigureRow {
  std::int64_t n;
  double value;      // exp(γ_N |t|) Re E_N(e^{itD_N})
  double raw_real;   // Re E_N(e^{itD_N})
  double raw_imag;   // Im E_N(e^{itD_N})
};

struct FigureTrace {
  double t;
  WindowRegime regime;
  std::vector<FigureRow> rows;
};

// Rows for N = 3, 3 + stride, ... <= n_max (F_2 is empty). Per-c sums are
// accumulated into running totals as N grows.
FigureTrace figure_trace(const DedekindBuckets& buckets, double t, std::int64_t n_max,
                         std::int64_t stride);
FigureTrace figure_trace(double t, std::int64_t n_max, std::int64_t stride);

struct PhiEstimate {
  double value;
  double std_error;
};

// Monte-Carlo Φ(t) over the fundamental domain, exact sampler for
// (3/π) dx dy / y². One Philox stream per chunk.
PhiEstimate vardi_phi(double t, long samples, std::uint64_t seed, int chunks);

// Same integral by a midpoint tensor rule in the sampler coordinates.
double vardi_phi_quadrature(double t, int n_theta, int n_u);

// KS distance of s(d,c) / ((log c)/2π) over F_N to the standard Cauchy law.
double vardi_law_check(std::int64_t n);
double vardi_law_check(const DedekindBuckets& buckets, std::int64_t n);

struct PowerSums {
  double sum;
  double sum_sq;
  long count;
};

// Σ (y|η(z)|⁴)^exponent and its square over `samples` draws from the
// normalized hyperbolic measure, chunk by chunk in fixed order.
PowerSums eta_power_sums(double exponent, long samples, std::uint64_t seed, int chunks);

void write_figure_csv(std::ostream& out, std::span<const FigureTrace> traces);
void write_phi_csv(std::ostream& out, double t, const PhiEstimate& est, long samples,
                   std::uint64_t seed);
void write_law_csv(std::ostream& out, std::span<const std::int64_t> ns,
                   std::span<const double> distances);

namespace serial {
DedekindBuckets build_dedekind_buckets(std::int64_t n_max);
PowerSums eta_power_sums(double exponent, long samples, std::uint64_t seed, int chunks);
// Recomputes every Dedekind sum by direct summation and re-aggregates each
// reported N from nothing. Test oracle for the incremental trace.
FigureTrace figure_trace_from_scratch(double t, std::int64_t n_max, std::int64_t stride);
}  // namespace serial

}  // namespace modstar
