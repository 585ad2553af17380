#pragma once

#include <complex>
#include <ostream>
#include <vector>

namespace modstar {

// Real polynomial with constant term exactly 1; coefficients from degree 0.
class RealPolynomial {
 public:
  explicit RealPolynomial(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  std::vector<double> coeffs_;
};

struct DensityReport {
  double sigma = 0.0;
  double min_value = 0.0;
  double integral = 0.0;
  double grid_radius = 0.0;
  long grid_points = 0;
  bool certified = false;  // grid minimum >= 0 and tail argument holds
};

inline constexpr double kDefaultRadiusFactor = 6.0;
inline constexpr long kDefaultGridPoints = 200001;

// k-th derivative of the centred normal density of standard deviation σ.
double gaussian_deriv(double sigma, int k, double x);

// g_{P,σ}(x) = σ/(σ+1) (P(D)f_σ(x) + e^{-x²/8σ²} / (2σ²√(2π))).
double g_density(const RealPolynomial& p, double sigma, double x);

// σ/(σ+1) (P(-iλ) e^{-σ²λ²/2} + e^{-2σ²λ²}/σ).
std::complex<double> g_fourier_closed(const RealPolynomial& p, double sigma, double lambda);

// ∫ g_{P,σ}(x) e^{iλx} dx by composite Simpson at step σ/200.
std::complex<double> g_fourier_numeric(const RealPolynomial& p, double sigma, double lambda);

// ∫ g_{P,σ}, composite Simpson at step σ/200 on |x| <= 40σ.
double g_mass(const RealPolynomial& p, double sigma);

// Evaluates g on `points` equally spaced samples of [-R, R], R = radius_factor·σ²,
// and checks analytically that the e^{-x²/8σ²} term dominates for |x| > R.
DensityReport certify_density(const RealPolynomial& p, double sigma,
                              double radius_factor = kDefaultRadiusFactor,
                              long points = kDefaultGridPoints);

// Doubling search from initial_sigma; returns the first certified report.
DensityReport find_sigma0(const RealPolynomial& p, double radius_factor = kDefaultRadiusFactor,
                          long points = kDefaultGridPoints, double initial_sigma = 1.0,
                          int max_doublings = 40);

// The S₀ element σ/(σ+1)(P(-iλ) + e^{-3σ²λ²/2}/σ), available only once
// g_{P,σ} has been certified nonnegative.
class S0Element {
 public:
  // Throws "not certified nonnegative" when certify_density fails.
  S0Element(RealPolynomial p, double sigma, double radius_factor = kDefaultRadiusFactor,
            long points = kDefaultGridPoints);

  std::complex<double> operator()(double lambda) const;
  double sigma() const { return sigma_; }
  const DensityReport& report() const { return report_; }

 private:
  RealPolynomial p_;
  double sigma_;
  DensityReport report_;
};

// Header `sigma,min_value,integral,grid_radius,grid_points`.
void write_density_csv(std::ostream& out, const std::vector<DensityReport>& reports);

namespace serial {
double density_grid_min(const RealPolynomial& p, double sigma, double radius, long points);
}  // namespace serial

double density_grid_min(const RealPolynomial& p, double sigma, double radius, long points);

}  // namespace modstar
