#pragma once

#include <complex>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace modstar {

using Complex = std::complex<double>;

struct Atom {
  double value;
  double weight;
};

// A probability law given by finitely many weighted atoms. Weights need not
// sum to one; every consumer divides by total_weight().
class WeightedEnsemble {
 public:
  explicit WeightedEnsemble(std::vector<Atom> atoms);

  // Equal weights on the given values.
  static WeightedEnsemble uniform(std::span<const double> values);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_weight() const { return total_weight_; }

  // The law of s*X.
  WeightedEnsemble scaled(double s) const;

 private:
  std::vector<Atom> atoms_;
  double total_weight_;
};

// Reference laws whose characteristic function is divided out.
struct GaussianRef {
  double mean = 0.0;
  double variance = 0.0;
};
struct PoissonRef {
  double gamma = 0.0;
};
struct CauchyRef {
  double gamma = 0.0;
};
struct DiracRef {};

using Renormalizer = std::variant<GaussianRef, PoissonRef, CauchyRef, DiracRef>;

void validate(const Renormalizer& r);

// exp(-i m λ + σ²λ²/2), exp(-γ(e^{iλ}-1)), exp(γ|λ|) or 1.
Complex renormalizer_multiplier(const Renormalizer& r, double lambda);

class LambdaGrid {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  // points must be strictly increasing with |point| < window_a.
  explicit LambdaGrid(std::vector<double> points, double window_a = kUnbounded);

  // n equally spaced points on [lo, hi].
  static LambdaGrid uniform(double lo, double hi, std::size_t n, double window_a = kUnbounded);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double window_a() const { return window_a_; }

 private:
  std::vector<double> points_;
  double window_a_;
};

struct CharTrace {
  LambdaGrid grid;
  std::vector<Complex> values;
  std::string label;
};

// Largest |φ(-λ) - conj φ(λ)| over grid pairs ±λ (0 if no pairs).
double hermitian_defect(const CharTrace& trace);

// (Σ w_j e^{iλ x_j}) / Σ w_j on every grid point; exactly 1 at λ = 0.
CharTrace empirical_cf(const WeightedEnsemble& ens, const LambdaGrid& grid);

// empirical_cf times the renormalizer multiplier, pointwise.
CharTrace mod_star_value(const WeightedEnsemble& ens, const Renormalizer& r,
                         const LambdaGrid& grid);

// Kolmogorov-Smirnov distance between the law of X/scale and the standard
// Cauchy law, using both one-sided limits at every atom.
double cauchy_law_distance(const WeightedEnsemble& ens, double scale);

// Inverse Fourier transform of λ ↦ exp(c (iλ)^{k+1}/(k+1)!) at each x.
// Requires k+1 even and a decaying integrand.
std::vector<double> inverse_fourier_limit(int k, double c, std::span<const double> xs);

// The two laws with equal Fourier transforms on [-1/2, 1/2]:
//   A = (1 - cos x)/(π x²) dx,  B = δ₀/2 + (1 - cos(x/2))/(π x²) dx.
enum class CounterexampleMeasure { A, B };

inline constexpr double kCounterexampleRadius = 2.0e4;

// Numeric transform by symmetric quadrature on |x| <= radius.
double counterexample_fourier(CounterexampleMeasure which, double lambda,
                              double radius = kCounterexampleRadius);

// Bound on the mass discarded beyond |x| = radius: 2/(π radius).
double counterexample_tail_bound(double radius);

// (1 - |λ|)_+ and 1/2 + (1/2 - |λ|)_+.
double counterexample_closed_form(CounterexampleMeasure which, double lambda);

// Header `lambda,re,im,label`, 17 significant digits.
void write_trace_csv(std::ostream& out, std::span<const CharTrace> traces);

namespace serial {
// Single-threaded reference for empirical_cf.
CharTrace empirical_cf(const WeightedEnsemble& ens, const LambdaGrid& grid);
}  // namespace serial

}  // namespace modstar
