#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modstar/charfn.hpp"

namespace modstar {

// mu[0] = 1 and mu[j] = E[X^j].
template <class T>
struct MomentVector {
  std::vector<T> mu;
};

// c[j] is the j-th cumulant; c[0] = 0 so indices line up with MomentVector.
template <class T>
struct CumulantVector {
  std::vector<T> c;
};

namespace detail {
template <class T>
std::vector<T> binomial_row(std::size_t n) {
  std::vector<T> row(n + 1, T(0));
  row[0] = T(1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j > 0; --j) row[j] += row[j - 1];
  return row;
}
}  // namespace detail

// c_n = μ_n - Σ_{j=1}^{n-1} C(n-1, j-1) c_j μ_{n-j}. Works for double and
// for exact rationals.
template <class T>
CumulantVector<T> moments_to_cumulants(const MomentVector<T>& m) {
  const std::size_t size = m.mu.size();
  CumulantVector<T> out{std::vector<T>(size, T(0))};
  for (std::size_t n = 1; n < size; ++n) {
    const auto binom = detail::binomial_row<T>(n - 1);
    T acc = m.mu[n];
    for (std::size_t j = 1; j < n; ++j) acc -= binom[j - 1] * out.c[j] * m.mu[n - j];
    out.c[n] = acc;
  }
  return out;
}

// μ_n = Σ_{j=1}^{n} C(n-1, j-1) c_j μ_{n-j}.
template <class T>
MomentVector<T> cumulants_to_moments(const CumulantVector<T>& cv) {
  const std::size_t size = cv.c.size();
  MomentVector<T> out{std::vector<T>(size, T(0))};
  if (size == 0) return out;
  out.mu[0] = T(1);
  for (std::size_t n = 1; n < size; ++n) {
    const auto binom = detail::binomial_row<T>(n - 1);
    T acc = T(0);
    for (std::size_t j = 1; j <= n; ++j) acc += binom[j - 1] * cv.c[j] * out.mu[n - j];
    out.mu[n] = acc;
  }
  return out;
}

// 0 for odd j, (j-1)!! for even j.
double gaussian_moment(int j);

// The law of X_1 in the i.i.d. mod-Gaussian pipeline.
class BaseLaw {
 public:
  static BaseLaw from_ensemble(WeightedEnsemble ens);
  // P[X = a] = P[X = -a] = 1/2, with φ(λ) = cos(aλ) in closed form.
  static BaseLaw plus_minus(double a = 1.0);

  double moment(int j) const;
  MomentVector<double> moments(int m) const;

  // φ(λ) - 1, evaluated without cancellation near λ = 0.
  std::complex<double> cf_minus_one(double lambda) const;
  std::complex<double> cf(double lambda) const { return 1.0 + cf_minus_one(lambda); }

  std::string describe() const;

 private:
  std::optional<WeightedEnsemble> atoms_;
  double scale_ = 1.0;
};

// Empty when the first k moments equal the Gaussian ones within tol;
// otherwise a diagnostic naming the first violated moment.
std::optional<std::string> moment_matching_violation(const BaseLaw& base, int k,
                                                     double tol = 1e-12);

// [φ(λ N^{-1/(k+1)})]^N exp(λ² N^{(k-1)/(k+1)} / 2), formed in the log domain.
std::complex<double> cum1_lhs(const BaseLaw& base, int k, double n, double lambda);

// exp(c (iλ)^{k+1} / (k+1)!).
std::complex<double> cum1_limit(int k, double c, double lambda);

// cum1_lhs over a grid. Branch continuity of the principal logarithm is
// tracked outward from λ = 0; a jump of the argument by more than π between
// neighbouring points is reported as an error.
CharTrace cum1_trace(const BaseLaw& base, int k, double n, const LambdaGrid& grid);

CharTrace cum1_limit_trace(int k, double c, const LambdaGrid& grid);

}  // namespace modstar
