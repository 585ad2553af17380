#include "modstar/cumulants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modstar/error.hpp"
#include "modstar/summation.hpp"

namespace modstar {

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Principal log(1 + z) without cancellation for small z.
std::complex<double> log1p_principal(std::complex<double> z) {
  const double re = z.real();
  const double im = z.imag();
  if (1.0 + re == 0.0 && im == 0.0) throw Error("principal log undefined");
  const double modulus_log = 0.5 * std::log1p(2.0 * re + re * re + im * im);
  return {modulus_log, std::atan2(im, 1.0 + re)};
}

}  // namespace

double gaussian_moment(int j) {
  if (j < 0) throw Error("moment index must be >= 0");
  if (j % 2) return 0.0;
  double r = 1.0;
  for (int i = j - 1; i > 1; i -= 2) r *= i;
  return r;
}

BaseLaw BaseLaw::from_ensemble(WeightedEnsemble ens) {
  BaseLaw b;
  b.atoms_ = std::move(ens);
  return b;
}

BaseLaw BaseLaw::plus_minus(double a) {
  if (!(a > 0.0)) throw Error("two-point law needs a > 0");
  BaseLaw b;
  b.scale_ = a;
  return b;
}

double BaseLaw::moment(int j) const {
  if (j < 0) throw Error("moment index must be >= 0");
  if (!atoms_) return (j % 2) ? 0.0 : ipow(scale_, j);
  const auto atoms = atoms_->atoms();
  const double s = pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) {
    return atoms[i].weight * ipow(atoms[i].value, j);
  });
  return s / atoms_->total_weight();
}

MomentVector<double> BaseLaw::moments(int m) const {
  MomentVector<double> out{std::vector<double>(static_cast<std::size_t>(m) + 1)};
  for (int j = 0; j <= m; ++j) out.mu[static_cast<std::size_t>(j)] = j == 0 ? 1.0 : moment(j);
  return out;
}

std::complex<double> BaseLaw::cf_minus_one(double lambda) const {
  if (!atoms_) {
    const double h = std::sin(scale_ * lambda / 2.0);
    return {-2.0 * h * h, 0.0};
  }
  const auto atoms = atoms_->atoms();
  const double re = pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) {
    const double h = std::sin(lambda * atoms[i].value / 2.0);
    return -2.0 * atoms[i].weight * h * h;
  });
  const double im = pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) {
    return atoms[i].weight * std::sin(lambda * atoms[i].value);
  });
  return {re / atoms_->total_weight(), im / atoms_->total_weight()};
}

std::string BaseLaw::describe() const {
  std::ostringstream os;
  if (atoms_)
    os << "atoms(" << atoms_->size() << ")";
  else
    os << "pm" << scale_;
  return os.str();
}

std::optional<std::string> moment_matching_violation(const BaseLaw& base, int k, double tol) {
  for (int j = 1; j <= k; ++j) {
    const double got = base.moment(j);
    const double want = gaussian_moment(j);
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(17);
      os << "moment " << j << " is " << got << ", Gaussian moment is " << want;
      return os.str();
    }
  }
  return std::nullopt;
}

namespace {

void check_cum1_args(const BaseLaw& base, int k, double n) {
  if (k < 2) throw Error("cum1 needs k >= 2");
  if (!(n >= 1.0)) throw Error("cum1 needs N >= 1");
  if (auto v = moment_matching_violation(base, k)) throw Error("moment matching fails: " + *v);
}

// log of cum1_lhs; the argument part is the principal argument of φ times N.
std::complex<double> cum1_log(const BaseLaw& base, int k, double n, double lambda,
                              double* principal_arg) {
  const double power = static_cast<double>(k + 1);
  const double eps = lambda * std::pow(n, -1.0 / power);
  const auto lg = log1p_principal(base.cf_minus_one(eps));
  if (principal_arg) *principal_arg = lg.imag();
  const double gauss = lambda * lambda * std::pow(n, (k - 1) / power) / 2.0;
  return {n * lg.real() + gauss, n * lg.imag()};
}

}  // namespace

std::complex<double> cum1_lhs(const BaseLaw& base, int k, double n, double lambda) {
  check_cum1_args(base, k, n);
  if (lambda == 0.0) return {1.0, 0.0};
  return std::exp(cum1_log(base, k, n, lambda, nullptr));
}

std::complex<double> cum1_limit(int k, double c, double lambda) {
  if (k < 1) throw Error("cum1_limit needs k >= 1");
  const int p = k + 1;
  const double mag = c * ipow(lambda, p) / std::tgamma(p + 1.0);
  switch (p % 4) {
    case 0: return std::exp(std::complex<double>(mag, 0.0));
    case 1: return std::exp(std::complex<double>(0.0, mag));
    case 2: return std::exp(std::complex<double>(-mag, 0.0));
    default: return std::exp(std::complex<double>(0.0, -mag));
  }
}

CharTrace cum1_trace(const BaseLaw& base, int k, double n, const LambdaGrid& grid) {
  check_cum1_args(base, k, n);
  const auto pts = grid.points();
  const auto size = static_cast<long>(pts.size());
  std::vector<std::complex<double>> logs(pts.size());
  std::vector<double> args(pts.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < size; ++i) {
    if (pts[i] == 0.0) continue;
    logs[i] = cum1_log(base, k, n, pts[i], &args[i]);
  }

  // Walk outward from the point closest to 0 and reject argument jumps.
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (std::abs(pts[i]) < std::abs(pts[anchor])) anchor = i;
  auto check = [&](std::size_t from, std::size_t to) {
    if (std::abs(args[to] - args[from]) > std::numbers::pi / 2.0) {
      std::ostringstream os;
      os.precision(17);
      os << "branch jump of the principal log between lambda=" << pts[from] << " and "
         << pts[to];
      throw Error(os.str());
    }
  };
  for (std::size_t i = anchor + 1; i < pts.size(); ++i) check(i - 1, i);
  for (std::size_t i = anchor; i > 0; --i) check(i, i - 1);

  CharTrace out{grid, std::vector<std::complex<double>>(pts.size()), "cum1_lhs"};
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.values[i] = pts[i] == 0.0 ? std::complex<double>(1.0, 0.0) : std::exp(logs[i]);
  return out;
}

CharTrace cum1_limit_trace(int k, double c, const LambdaGrid& grid) {
  CharTrace out{grid, {}, "cum1_limit"};
  for (double lam : grid.points()) out.values.push_back(cum1_limit(k, c, lam));
  return out;
}

}  // namespace modstar
