#include "modstar/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modstar/csv.hpp"
#include "modstar/error.hpp"
#include "modstar/quadrature.hpp"
#include "modstar/summation.hpp"

namespace modstar {

namespace {

constexpr double kPi = std::numbers::pi;

double sum_weights(std::span<const Atom> atoms) {
  return pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) { return atoms[i].weight; });
}

Complex cf_at(std::span<const Atom> atoms, double total, double lambda) {
  if (lambda == 0.0) return {1.0, 0.0};
  const double re = pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) {
    return atoms[i].weight * std::cos(lambda * atoms[i].value);
  });
  const double im = pairwise_sum<double>(0, atoms.size(), [&](std::size_t i) {
    return atoms[i].weight * std::sin(lambda * atoms[i].value);
  });
  return {re / total, im / total};
}

// sin(u)/u with the removable singularity filled in.
double sinc(double u) { return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u; }

}  // namespace

WeightedEnsemble::WeightedEnsemble(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error("empty ensemble");
  bool any_positive = false;
  for (const auto& a : atoms_) {
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw Error("ensemble weights must be finite and >= 0");
    if (!std::isfinite(a.value)) throw Error("ensemble values must be finite");
    any_positive = any_positive || a.weight > 0.0;
  }
  if (!any_positive) throw Error("ensemble has no positive weight");
  total_weight_ = sum_weights(atoms_);
}

WeightedEnsemble WeightedEnsemble::uniform(std::span<const double> values) {
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (double v : values) atoms.push_back({v, 1.0});
  return WeightedEnsemble(std::move(atoms));
}

WeightedEnsemble WeightedEnsemble::scaled(double s) const {
  std::vector<Atom> out(atoms_);
  for (auto& a : out) a.value *= s;
  return WeightedEnsemble(std::move(out));
}

void validate(const Renormalizer& r) {
  std::visit(
      [](const auto& ref) {
        using T = std::decay_t<decltype(ref)>;
        if constexpr (std::is_same_v<T, GaussianRef>) {
          if (!(ref.variance >= 0.0)) throw Error("Gaussian renormalizer needs variance >= 0");
        } else if constexpr (std::is_same_v<T, PoissonRef> || std::is_same_v<T, CauchyRef>) {
          if (!(ref.gamma >= 0.0)) throw Error("renormalizer parameter gamma must be >= 0");
        }
      },
      r);
}

Complex renormalizer_multiplier(const Renormalizer& r, double lambda) {
  if (lambda == 0.0) return {1.0, 0.0};
  return std::visit(
      [lambda](const auto& ref) -> Complex {
        using T = std::decay_t<decltype(ref)>;
        if constexpr (std::is_same_v<T, GaussianRef>) {
          return std::exp(Complex(ref.variance * lambda * lambda / 2.0, -ref.mean * lambda));
        } else if constexpr (std::is_same_v<T, PoissonRef>) {
          // -γ(e^{iλ} - 1) = γ(1 - cos λ) - iγ sin λ
          const double half = std::sin(lambda / 2.0);
          return std::exp(Complex(2.0 * ref.gamma * half * half, -ref.gamma * std::sin(lambda)));
        } else if constexpr (std::is_same_v<T, CauchyRef>) {
          return {std::exp(ref.gamma * std::abs(lambda)), 0.0};
        } else {
          return {1.0, 0.0};
        }
      },
      r);
}

LambdaGrid::LambdaGrid(std::vector<double> points, double window_a)
    : points_(std::move(points)), window_a_(window_a) {
  if (!(window_a_ > 0.0)) throw Error("window half-width must be positive");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw Error("grid points must be finite");
    if (!(std::abs(points_[i]) < window_a_)) throw Error("grid point outside restricted window");
    if (i > 0 && !(points_[i] > points_[i - 1])) throw Error("grid points must be strictly increasing");
  }
}

LambdaGrid LambdaGrid::uniform(double lo, double hi, std::size_t n, double window_a) {
  if (n == 0) throw Error("grid needs at least one point");
  std::vector<double> pts(n);
  if (n == 1) {
    pts[0] = lo;
  } else {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lo + static_cast<double>(i) * h;
    pts[n - 1] = hi;
    // Snap the symmetric midpoint so ±λ pairs line up on symmetric grids.
    if (lo == -hi && n % 2 == 1) pts[n / 2] = 0.0;
    if (lo == -hi)
      for (std::size_t i = 0; i < n / 2; ++i) pts[n - 1 - i] = -pts[i];
  }
  return LambdaGrid(std::move(pts), window_a);
}

double hermitian_defect(const CharTrace& trace) {
  const auto pts = trace.grid.points();
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < 0.0) continue;
    auto it = std::lower_bound(pts.begin(), pts.end(), -pts[i]);
    if (it == pts.end() || *it != -pts[i]) continue;
    const auto j = static_cast<std::size_t>(it - pts.begin());
    worst = std::max(worst, std::abs(trace.values[j] - std::conj(trace.values[i])));
  }
  return worst;
}

namespace serial {

CharTrace empirical_cf(const WeightedEnsemble& ens, const LambdaGrid& grid) {
  CharTrace out{grid, std::vector<Complex>(grid.size()), "empirical_cf"};
  const auto pts = grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.values[i] = cf_at(ens.atoms(), ens.total_weight(), pts[i]);
  return out;
}

}  // namespace serial

CharTrace empirical_cf(const WeightedEnsemble& ens, const LambdaGrid& grid) {
  CharTrace out{grid, std::vector<Complex>(grid.size()), "empirical_cf"};
  const auto pts = grid.points();
  const auto atoms = ens.atoms();
  const double total = ens.total_weight();
  const auto n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out.values[i] = cf_at(atoms, total, pts[i]);
  return out;
}

CharTrace mod_star_value(const WeightedEnsemble& ens, const Renormalizer& r,
                         const LambdaGrid& grid) {
  validate(r);
  CharTrace out = empirical_cf(ens, grid);
  if (std::holds_alternative<DiracRef>(r)) return out;
  const auto pts = grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) out.values[i] *= renormalizer_multiplier(r, pts[i]);
  out.label = "mod_star_value";
  return out;
}

double cauchy_law_distance(const WeightedEnsemble& ens, double scale) {
  if (!(scale > 0.0)) throw Error("Cauchy scale must be positive");
  std::vector<Atom> pts(ens.atoms().begin(), ens.atoms().end());
  for (auto& a : pts) a.value /= scale;
  std::sort(pts.begin(), pts.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
  const double total = ens.total_weight();
  double below = 0.0;
  double worst = 0.0;
  std::size_t i = 0;
  while (i < pts.size()) {
    const double v = pts[i].value;
    double jump = 0.0;
    while (i < pts.size() && pts[i].value == v) jump += pts[i++].weight;
    const double cdf = 0.5 + std::atan(v) / kPi;
    const double left = below / total;
    below += jump;
    const double right = (i == pts.size()) ? 1.0 : below / total;
    worst = std::max({worst, std::abs(cdf - left), std::abs(right - cdf)});
  }
  return worst;
}

std::vector<double> inverse_fourier_limit(int k, double c, std::span<const double> xs) {
  // k = 1 is admitted: it is the Gaussian sanity case.
  if (k < 1) throw Error("inverse_fourier_limit needs k >= 1");
  const int power = k + 1;
  const double sign = ((power / 2) % 2 == 0) ? 1.0 : -1.0;  // i^{k+1} for even k+1
  if (power % 2 != 0 || !(c * sign < 0.0)) throw Error("divergent inverse transform");
  const double rate = std::abs(c) / std::tgamma(power + 1.0);
  // exp(-rate λ^{k+1}) < 1e-16 beyond this cutoff.
  const double cutoff = std::pow(std::log(1e16) / rate, 1.0 / power);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    auto integrand = [&](double lam) { return std::cos(lam * x) * std::exp(-rate * std::pow(lam, power)); };
    out.push_back(adaptive_simpson(integrand, 0.0, cutoff, 1e-13) / kPi);
  }
  return out;
}

double counterexample_fourier(CounterexampleMeasure which, double lambda, double radius) {
  if (!(radius > 0.0)) throw Error("quadrature radius must be positive");
  // Both densities are even, so the transform is 2∫_0^X f(x) cos(λx) dx.
  const double step = std::min(0.1, 0.3 / (1.0 + std::abs(lambda)));
  const auto n = static_cast<long>(std::ceil(radius / step));
  if (which == CounterexampleMeasure::A) {
    auto f = [lambda](double x) {
      const double s = sinc(x / 2.0);
      return 0.5 * s * s / kPi * std::cos(lambda * x);
    };
    return 2.0 * composite_simpson(f, 0.0, radius, n);
  }
  auto f = [lambda](double x) {
    const double s = sinc(x / 4.0);
    return 0.125 * s * s / kPi * std::cos(lambda * x);
  };
  return 0.5 + 2.0 * composite_simpson(f, 0.0, radius, n);
}

double counterexample_tail_bound(double radius) { return 2.0 / (kPi * radius); }

double counterexample_closed_form(CounterexampleMeasure which, double lambda) {
  const double a = std::abs(lambda);
  if (which == CounterexampleMeasure::A) return std::max(0.0, 1.0 - a);
  return 0.5 + std::max(0.0, 0.5 - a);
}

void write_trace_csv(std::ostream& out, std::span<const CharTrace> traces) {
  out << "lambda,re,im,label\n";
  for (const auto& tr : traces) {
    const auto pts = tr.grid.points();
    const std::string label = csv::escape(tr.label);
    for (std::size_t i = 0; i < pts.size(); ++i)
      csv::write_row(out, {csv::format(pts[i]), csv::format(tr.values[i].real()),
                           csv::format(tr.values[i].imag()), label});
  }
}

}  // namespace modstar
