#include "modstar/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modstar/csv.hpp"
#include "modstar/error.hpp"
#include "modstar/quadrature.hpp"

namespace modstar {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

// Probabilists' Hermite values He_0(u)..He_n(u).
void hermite_values(double u, int n, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = u;
  for (int j = 1; j < n; ++j) out[j + 1] = u * out[j] - j * out[j - 1];
}

// Sum of absolute coefficients of He_j, j = 0..n.
std::vector<double> hermite_abs_coeff_sums(int n) {
  std::vector<std::vector<double>> he(static_cast<std::size_t>(n) + 1);
  he[0] = {1.0};
  if (n >= 1) he[1] = {0.0, 1.0};
  for (int j = 1; j < n; ++j) {
    std::vector<double> next(static_cast<std::size_t>(j) + 2, 0.0);
    for (std::size_t i = 0; i < he[j].size(); ++i) next[i + 1] += he[j][i];
    for (std::size_t i = 0; i < he[j - 1].size(); ++i) next[i] -= j * he[j - 1][i];
    he[j + 1] = std::move(next);
  }
  std::vector<double> sums;
  for (const auto& poly : he) {
    double s = 0.0;
    for (double c : poly) s += std::abs(c);
    sums.push_back(s);
  }
  return sums;
}

// True when |P(D)f_σ(x)| <= e^{-x²/8σ²}/(2σ²√(2π)) for every |x| >= radius.
bool tail_dominates(const RealPolynomial& p, double sigma, double radius) {
  const double u0 = radius / sigma;
  const int deg = p.degree();
  if (u0 < 1.0 || u0 * u0 < 4.0 * deg / 3.0) return false;
  const auto a = hermite_abs_coeff_sums(deg);
  // log of 2σ Σ |P_j| A_j σ^{-j} u0^j, by log-sum-exp
  std::vector<double> logs;
  for (int j = 0; j <= deg; ++j) {
    const double pj = std::abs(p.coefficients()[static_cast<std::size_t>(j)]);
    if (pj == 0.0) continue;
    logs.push_back(std::log(pj * a[static_cast<std::size_t>(j)]) + j * (std::log(u0) - std::log(sigma)));
  }
  const double mx = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - mx);
  const double lhs = std::log(2.0 * sigma) + mx + std::log(acc);
  return lhs <= 3.0 * u0 * u0 / 8.0;
}

double integration_radius(double sigma) { return 40.0 * sigma; }
double integration_step(double sigma) { return sigma / 200.0; }

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty() || coeffs_[0] != 1.0) throw Error("polynomial must satisfy P(0) = 1");
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

std::complex<double> RealPolynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double gaussian_deriv(double sigma, int k, double x) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  if (k < 0) throw Error("derivative order must be >= 0");
  const double u = x / sigma;
  std::vector<double> he(static_cast<std::size_t>(k) + 1);
  hermite_values(u, k, he.data());
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * he[static_cast<std::size_t>(k)] * kInvSqrt2Pi * std::exp(-0.5 * u * u) /
         std::pow(sigma, k + 1);
}

double g_density(const RealPolynomial& p, double sigma, double x) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  const int deg = p.degree();
  const double u = x / sigma;
  double he[64];
  if (deg >= 63) throw Error("polynomial degree too large");
  hermite_values(u, deg, he);
  const double phi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
  double pdf = 0.0;
  double scale = 1.0 / sigma;
  for (int j = 0; j <= deg; ++j) {
    const double sign = (j % 2) ? -1.0 : 1.0;
    pdf += p.coefficients()[static_cast<std::size_t>(j)] * sign * he[j] * scale;
    scale /= sigma;
  }
  pdf *= phi;
  const double bump = std::exp(-x * x / (8.0 * sigma * sigma)) / (2.0 * sigma * sigma) * kInvSqrt2Pi;
  return sigma / (sigma + 1.0) * (pdf + bump);
}

std::complex<double> g_fourier_closed(const RealPolynomial& p, double sigma, double lambda) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  const double s2l2 = sigma * sigma * lambda * lambda;
  const auto poly = p(std::complex<double>(0.0, -lambda));
  return sigma / (sigma + 1.0) * (poly * std::exp(-s2l2 / 2.0) + std::exp(-2.0 * s2l2) / sigma);
}

double g_mass(const RealPolynomial& p, double sigma) {
  const double r = integration_radius(sigma);
  return simpson_with_richardson([&](double x) { return g_density(p, sigma, x); }, -r, r,
                                 integration_step(sigma))
      .value;
}

std::complex<double> g_fourier_numeric(const RealPolynomial& p, double sigma, double lambda) {
  const double r = integration_radius(sigma);
  const double h = integration_step(sigma);
  const double re =
      simpson_with_richardson([&](double x) { return g_density(p, sigma, x) * std::cos(lambda * x); }, -r, r, h)
          .value;
  const double im =
      simpson_with_richardson([&](double x) { return g_density(p, sigma, x) * std::sin(lambda * x); }, -r, r, h)
          .value;
  return {re, im};
}

namespace serial {

double density_grid_min(const RealPolynomial& p, double sigma, double radius, long points) {
  if (points < 2) throw Error("certification grid needs at least 2 points");
  const double h = 2.0 * radius / static_cast<double>(points - 1);
  double mn = std::numeric_limits<double>::infinity();
  for (long i = 0; i < points; ++i) mn = std::min(mn, g_density(p, sigma, -radius + static_cast<double>(i) * h));
  return mn;
}

}  // namespace serial

double density_grid_min(const RealPolynomial& p, double sigma, double radius, long points) {
  if (points < 2) throw Error("certification grid needs at least 2 points");
  const double h = 2.0 * radius / static_cast<double>(points - 1);
  double mn = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : mn) schedule(static)
  for (long i = 0; i < points; ++i) mn = std::min(mn, g_density(p, sigma, -radius + static_cast<double>(i) * h));
  return mn;
}

DensityReport certify_density(const RealPolynomial& p, double sigma, double radius_factor, long points) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  if (!(radius_factor > 0.0)) throw Error("radius factor must be positive");
  DensityReport rep;
  rep.sigma = sigma;
  rep.grid_radius = radius_factor * sigma * sigma;
  rep.grid_points = points;
  rep.min_value = density_grid_min(p, sigma, rep.grid_radius, points);
  rep.integral = g_mass(p, sigma);
  rep.certified = rep.min_value >= 0.0 && tail_dominates(p, sigma, rep.grid_radius);
  return rep;
}

DensityReport find_sigma0(const RealPolynomial& p, double radius_factor, long points,
                          double initial_sigma, int max_doublings) {
  if (!(initial_sigma > 0.0)) throw Error("initial sigma must be positive");
  DensityReport best;
  best.min_value = -std::numeric_limits<double>::infinity();
  double sigma = initial_sigma;
  for (int j = 0; j <= max_doublings; ++j, sigma *= 2.0) {
    DensityReport rep = certify_density(p, sigma, radius_factor, points);
    if (rep.certified) return rep;
    if (rep.min_value > best.min_value) best = rep;
  }
  std::ostringstream os;
  os.precision(17);
  os << "sigma search cap exceeded; best report sigma=" << best.sigma << " min_value=" << best.min_value;
  throw Error(os.str());
}

S0Element::S0Element(RealPolynomial p, double sigma, double radius_factor, long points)
    : p_(std::move(p)), sigma_(sigma), report_(certify_density(p_, sigma, radius_factor, points)) {
  if (!report_.certified) throw Error("not certified nonnegative");
}

std::complex<double> S0Element::operator()(double lambda) const {
  const double s2l2 = sigma_ * sigma_ * lambda * lambda;
  return sigma_ / (sigma_ + 1.0) *
         (p_(std::complex<double>(0.0, -lambda)) + std::exp(-1.5 * s2l2) / sigma_);
}

void write_density_csv(std::ostream& out, const std::vector<DensityReport>& reports) {
  out << "sigma,min_value,integral,grid_radius,grid_points\n";
  for (const auto& r : reports)
    csv::write_row(out, {csv::format(r.sigma), csv::format(r.min_value), csv::format(r.integral),
                         csv::format(r.grid_radius), csv::format(static_cast<std::int64_t>(r.grid_points))});
}

}  // namespace modstar
