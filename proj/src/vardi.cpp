#include "modstar/vardi.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "modstar/charfn.hpp"
#include "modstar/csv.hpp"
#include "modstar/error.hpp"
#include "modstar/philox.hpp"
#include "modstar/specialfn.hpp"
#include "modstar/summation.hpp"

namespace modstar {

namespace {

constexpr double kPi = std::numbers::pi;

// Correctly rounded double of s(d, c), using that 6c·s(d, c) is an integer.
double exact_to_double(const Rational& s, std::int64_t c) {
  const std::int64_t six_c = 6 * c;
  mpz_class scale(static_cast<long>(six_c));
  mpz_divexact(scale.get_mpz_t(), scale.get_mpz_t(), s.get_den_mpz_t());
  mpz_class num = s.get_num() * scale;
  if (!num.fits_slong_p()) throw Error("Dedekind numerator does not fit in 64 bits");
  return static_cast<double>(num.get_si()) / static_cast<double>(six_c);
}

template <class SumFn>
std::vector<double> bucket_values(std::int64_t c, SumFn&& sum_fn) {
  std::vector<double> out;
  for (std::int64_t d = 1; d < c; ++d)
    if (std::gcd(c, d) == 1) out.push_back(exact_to_double(sum_fn(d, c), c));
  return out;
}

DedekindBuckets flatten(std::int64_t n_max, std::vector<std::vector<double>>& per_c) {
  std::vector<std::size_t> offsets(static_cast<std::size_t>(n_max) + 1, 0);
  std::size_t total = 0;
  for (std::int64_t c = 0; c < n_max; ++c) {
    offsets[static_cast<std::size_t>(c)] = total;
    total += per_c[static_cast<std::size_t>(c)].size();
  }
  offsets[static_cast<std::size_t>(n_max)] = total;
  std::vector<double> values;
  values.reserve(total);
  for (auto& b : per_c) {
    values.insert(values.end(), b.begin(), b.end());
    std::vector<double>().swap(b);
  }
  return DedekindBuckets(n_max, std::move(offsets), std::move(values));
}

void check_n_max(std::int64_t n_max) {
  if (n_max < 2) throw Error("ensemble needs N >= 2");
}

struct BucketSums {
  double re;
  double im;
};

BucketSums bucket_cf_sums(std::span<const double> b, double t) {
  const double re = pairwise_sum<double>(0, b.size(), [&](std::size_t i) { return std::cos(t * b[i]); });
  const double im = pairwise_sum<double>(0, b.size(), [&](std::size_t i) { return std::sin(t * b[i]); });
  return {re, im};
}

void check_stride(std::int64_t n_max, std::int64_t stride) {
  if (n_max < 3) throw Error("figure trace needs N_max >= 3");
  if (stride < 1) throw Error("stride must be >= 1");
}

FigureRow make_row(std::int64_t n, double t, double re_sum, double im_sum, std::int64_t count) {
  const double re = re_sum / static_cast<double>(count);
  const double im = im_sum / static_cast<double>(count);
  return {n, std::exp(vardi_gamma(static_cast<double>(n)) * std::abs(t)) * re, re, im};
}

// One draw of (y|η(z)|⁴)^exponent from the normalized measure on the
// fundamental domain: θ uniform on (-π/6, π/6), x = sin θ, y = cos θ / u.
double eta_power_sample(const Philox4x32& gen, double exponent, std::uint64_t i, std::uint32_t chunk) {
  const auto u = gen.uniform_pair({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32), chunk, 0});
  const double theta = (2.0 * u[0] - 1.0) * kPi / 6.0;
  const double x = std::sin(theta);
  const double y = std::cos(theta) / u[1];
  return std::exp(exponent * (std::log(y) + 4.0 * dedekind_eta_log_abs({x, y})));
}

PowerSums chunk_power_sums(double exponent, long samples, std::uint64_t seed, int chunks, int j) {
  const auto gen = Philox4x32::from_seed(seed);
  const long lo = static_cast<long>(static_cast<__int128>(samples) * j / chunks);
  const long hi = static_cast<long>(static_cast<__int128>(samples) * (j + 1) / chunks);
  CompensatedSum s, s2;
  for (long i = 0; i < hi - lo; ++i) {
    const double f = eta_power_sample(gen, exponent, static_cast<std::uint64_t>(i), static_cast<std::uint32_t>(j));
    s.add(f);
    s2.add(f * f);
  }
  return {s.value(), s2.value(), hi - lo};
}

PowerSums merge_chunks(const std::vector<PowerSums>& parts) {
  CompensatedSum s, s2;
  long count = 0;
  for (const auto& p : parts) {
    s.add(p.sum);
    s2.add(p.sum_sq);
    count += p.count;
  }
  return {s.value(), s2.value(), count};
}

void check_mc_args(long samples, int chunks) {
  if (samples < 2) throw Error("Monte-Carlo needs at least 2 samples");
  if (chunks < 1) throw Error("chunks must be >= 1");
  if (chunks > samples) throw Error("more chunks than samples");
}

double pole_factor(double t) {
  if (!(std::abs(t) < 4.0 * kPi)) throw Error("at or beyond pole: vardi_phi needs |t| < 4 pi");
  return 1.0 / (1.0 - std::abs(t) / (4.0 * kPi));
}

}  // namespace

FareySet enumerate_farey(std::int64_t n) {
  check_n_max(n);
  FareySet out{n, {}};
  for (std::int64_t c = 2; c < n; ++c)
    for (std::int64_t d = 1; d < c; ++d)
      if (std::gcd(c, d) == 1) out.pairs.push_back({c, d});
  return out;
}

double vardi_gamma(double n) { return std::log(n / 4.0) / (2.0 * kPi); }

DedekindBuckets::DedekindBuckets(std::int64_t n_max, std::vector<std::size_t> offsets,
                                 std::vector<double> values)
    : n_max_(n_max), offsets_(std::move(offsets)), values_(std::move(values)) {}

std::span<const double> DedekindBuckets::bucket(std::int64_t c) const {
  if (c < 0 || c >= n_max_) throw Error("bucket index outside the ensemble");
  const auto lo = offsets_[static_cast<std::size_t>(c)];
  const auto hi = offsets_[static_cast<std::size_t>(c) + 1];
  return std::span<const double>(values_).subspan(lo, hi - lo);
}

std::int64_t DedekindBuckets::count_below(std::int64_t n) const {
  if (n < 0 || n > n_max_) throw Error("count_below outside the ensemble");
  return static_cast<std::int64_t>(offsets_[static_cast<std::size_t>(n)]);
}

namespace serial {

DedekindBuckets build_dedekind_buckets(std::int64_t n_max) {
  check_n_max(n_max);
  std::vector<std::vector<double>> per_c(static_cast<std::size_t>(n_max));
  DedekindWorkspace ws;
  for (std::int64_t c = 2; c < n_max; ++c)
    per_c[static_cast<std::size_t>(c)] = bucket_values(c, [&](auto d, auto cc) -> const Rational& { return ws.eval(d, cc); });
  return flatten(n_max, per_c);
}

PowerSums eta_power_sums(double exponent, long samples, std::uint64_t seed, int chunks) {
  check_mc_args(samples, chunks);
  std::vector<PowerSums> parts(static_cast<std::size_t>(chunks));
  for (int j = 0; j < chunks; ++j) parts[static_cast<std::size_t>(j)] = chunk_power_sums(exponent, samples, seed, chunks, j);
  return merge_chunks(parts);
}

FigureTrace figure_trace_from_scratch(double t, std::int64_t n_max, std::int64_t stride) {
  check_stride(n_max, stride);
  std::vector<std::vector<double>> naive(static_cast<std::size_t>(n_max));
  for (std::int64_t c = 2; c < n_max; ++c)
    naive[static_cast<std::size_t>(c)] = bucket_values(c, [](auto d, auto cc) { return dedekind_sum_naive(d, cc); });
  FigureTrace out{t, vardi_regime(t), {}};
  for (std::int64_t n = 3; n <= n_max; n += stride) {
    double re = 0.0, im = 0.0;
    std::int64_t count = 0;
    for (std::int64_t c = 2; c < n; ++c) {
      const auto& b = naive[static_cast<std::size_t>(c)];
      const auto sums = bucket_cf_sums(b, t);
      re += sums.re;
      im += sums.im;
      count += static_cast<std::int64_t>(b.size());
    }
    out.rows.push_back(make_row(n, t, re, im, count));
  }
  return out;
}

}  // namespace serial

DedekindBuckets DedekindBuckets::build(std::int64_t n_max) {
  check_n_max(n_max);
  std::vector<std::vector<double>> per_c(static_cast<std::size_t>(n_max));
#pragma omp parallel
  {
    DedekindWorkspace ws;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t c = 2; c < n_max; ++c)
      per_c[static_cast<std::size_t>(c)] = bucket_values(c, [&](auto d, auto cc) -> const Rational& { return ws.eval(d, cc); });
  }
  return flatten(n_max, per_c);
}

WindowRegime vardi_regime(double t) {
  const double a = std::abs(t);
  if (a < 4.0 * kPi / 3.0) return WindowRegime::Convergent;
  if (a < 2.0 * kPi) return WindowRegime::UniformBoundOnly;
  return WindowRegime::Exploratory;
}

std::string_view to_string(WindowRegime r) {
  switch (r) {
    case WindowRegime::Convergent: return "convergent";
    case WindowRegime::UniformBoundOnly: return "uniform-bound-only";
    default: return "exploratory";
  }
}

FigureTrace figure_trace(const DedekindBuckets& buckets, double t, std::int64_t n_max, std::int64_t stride) {
  check_stride(n_max, stride);
  if (n_max > buckets.n_max()) throw Error("figure trace beyond the computed ensemble");
  // Per-c sums in parallel, then running totals in ascending c.
  std::vector<BucketSums> sums(static_cast<std::size_t>(n_max), BucketSums{0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t c = 2; c < n_max; ++c) sums[static_cast<std::size_t>(c)] = bucket_cf_sums(buckets.bucket(c), t);

  FigureTrace out{t, vardi_regime(t), {}};
  double re = 0.0, im = 0.0;
  std::int64_t c_done = 2;
  for (std::int64_t n = 3; n <= n_max; n += stride) {
    for (; c_done < n; ++c_done) {
      re += sums[static_cast<std::size_t>(c_done)].re;
      im += sums[static_cast<std::size_t>(c_done)].im;
    }
    out.rows.push_back(make_row(n, t, re, im, buckets.count_below(n)));
  }
  return out;
}

FigureTrace figure_trace(double t, std::int64_t n_max, std::int64_t stride) {
  check_stride(n_max, stride);
  return figure_trace(DedekindBuckets::build(n_max), t, n_max, stride);
}

PowerSums eta_power_sums(double exponent, long samples, std::uint64_t seed, int chunks) {
  check_mc_args(samples, chunks);
  std::vector<PowerSums> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < chunks; ++j) parts[static_cast<std::size_t>(j)] = chunk_power_sums(exponent, samples, seed, chunks, j);
  return merge_chunks(parts);
}

PhiEstimate vardi_phi(double t, long samples, std::uint64_t seed, int chunks) {
  const double pole = pole_factor(t);
  check_mc_args(samples, chunks);
  if (t == 0.0) return {1.0, 0.0};
  const auto sums = eta_power_sums(std::abs(t) / (2.0 * kPi), samples, seed, chunks);
  const double n = static_cast<double>(sums.count);
  const double mean = sums.sum / n;
  const double var = std::max(0.0, (sums.sum_sq / n - mean * mean) * n / (n - 1.0));
  const double se_mean = std::sqrt(var / n);
  const double value = pole / mean;
  return {value, value * se_mean / mean};
}

double vardi_phi_quadrature(double t, int n_theta, int n_u) {
  const double pole = pole_factor(t);
  if (n_theta < 1 || n_u < 1) throw Error("quadrature needs positive node counts");
  if (t == 0.0) return 1.0;
  const double exponent = std::abs(t) / (2.0 * kPi);
  std::vector<double> rows(static_cast<std::size_t>(n_theta));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (-0.5 + (i + 0.5) / n_theta) * kPi / 3.0;
    const double x = std::sin(theta);
    rows[static_cast<std::size_t>(i)] = pairwise_sum<double>(0, static_cast<std::size_t>(n_u), [&](std::size_t j) {
      const double y = std::cos(theta) / ((static_cast<double>(j) + 0.5) / n_u);
      return std::exp(exponent * (std::log(y) + 4.0 * dedekind_eta_log_abs({x, y})));
    });
  }
  const double mean = pairwise_sum(rows) / (static_cast<double>(n_theta) * n_u);
  return pole / mean;
}

double vardi_law_check(const DedekindBuckets& buckets, std::int64_t n) {
  if (n < 3) throw Error("law check needs N >= 3");
  if (n > buckets.n_max()) throw Error("law check beyond the computed ensemble");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(buckets.count_below(n)));
  for (std::int64_t c = 2; c < n; ++c) {
    const double scale = std::log(static_cast<double>(c)) / (2.0 * kPi);
    for (double s : buckets.bucket(c)) atoms.push_back({s / scale, 1.0});
  }
  return cauchy_law_distance(WeightedEnsemble(std::move(atoms)), 1.0);
}

double vardi_law_check(std::int64_t n) {
  if (n < 3) throw Error("law check needs N >= 3");
  return vardi_law_check(DedekindBuckets::build(n), n);
}

void write_figure_csv(std::ostream& out, std::span<const FigureTrace> traces) {
  out << "t,N,value\n";
  for (const auto& tr : traces)
    for (const auto& r : tr.rows) csv::write_row(out, {csv::format(tr.t), csv::format(r.n), csv::format(r.value)});
}

void write_phi_csv(std::ostream& out, double t, const PhiEstimate& est, long samples, std::uint64_t seed) {
  out << "t,value,std_error,samples,seed\n";
  csv::write_row(out, {csv::format(t), csv::format(est.value), csv::format(est.std_error),
                       csv::format(static_cast<std::int64_t>(samples)), std::to_string(seed)});
}

void write_law_csv(std::ostream& out, std::span<const std::int64_t> ns, std::span<const double> distances) {
  out << "N,ks_distance\n";
  for (std::size_t i = 0; i < ns.size(); ++i) csv::write_row(out, {csv::format(ns[i]), csv::format(distances[i])});
}

}  // namespace modstar
