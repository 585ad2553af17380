#include "modstar/geodesic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "modstar/csv.hpp"
#include "modstar/error.hpp"
#include "modstar/specialfn.hpp"
#include "modstar/summation.hpp"

namespace modstar {

namespace {

constexpr double kPi = std::numbers::pi;

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

GeodesicClass make_class(const std::vector<int>& rl, const Mat2& m) {
  const long double n = norm_of_trace_ext(m.trace());
  return {rl, m, m.trace(), static_cast<double>(n), static_cast<double>(std::log(n)), psi_word(rl)};
}

// Appends every word R^{a1}L^{b1}... extending `rl` whose trace stays <= tmax,
// with every later a_i >= a_min. Trace is monotone in each exponent, so a
// loop stops at the first exponent that overshoots.
void extend(std::vector<int>& rl, const Mat2& prefix, int a_min, std::int64_t tmax,
            std::vector<GeodesicClass>& out) {
  Mat2 pa = prefix;
  for (int i = 0; i < a_min; ++i) pa = pa * kMatR;
  for (int a = a_min;; ++a, pa = pa * kMatR) {
    Mat2 m = pa;
    bool any = false;
    for (int b = 1;; ++b) {
      m = m * kMatL;
      if (m.trace() > tmax) break;
      any = true;
      rl.push_back(a);
      rl.push_back(b);
      if (is_canonical_primitive(rl)) out.push_back(make_class(rl, m));
      extend(rl, m, a_min, tmax, out);
      rl.pop_back();
      rl.pop_back();
    }
    if (!any) break;
  }
}

// All classes whose least rotation starts with R^{a1}.
std::vector<GeodesicClass> partition(int a1, std::int64_t tmax) {
  std::vector<GeodesicClass> out;
  std::vector<int> rl;
  Mat2 pa{1, 0, 0, 1};
  for (int i = 0; i < a1; ++i) pa = pa * kMatR;
  Mat2 m = pa;
  for (int b = 1;; ++b) {
    m = m * kMatL;
    if (m.trace() > tmax) break;
    rl = {a1, b};
    if (is_canonical_primitive(rl)) out.push_back(make_class(rl, m));
    extend(rl, m, a1, tmax, out);
  }
  return out;
}

GeodesicEnsembleX assemble(double x, std::vector<std::vector<GeodesicClass>>& parts) {
  GeodesicEnsembleX ens;
  ens.x = x;
  for (auto& p : parts)
    for (auto& g : p) ens.classes.push_back(std::move(g));
  std::sort(ens.classes.begin(), ens.classes.end(), [](const GeodesicClass& l, const GeodesicClass& r) {
    if (l.trace != r.trace) return l.trace < r.trace;
    return l.runlengths < r.runlengths;
  });
  const auto& cl = ens.classes;
  ens.total_length = pairwise_sum<double>(0, cl.size(), [&](std::size_t i) { return cl[i].length; });
  return ens;
}

std::string format_ext(long double v) {
  char buf[96];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

long double norm_of_trace_ext(std::int64_t t) {
  if (t < 3) throw Error("not hyperbolic: trace must be >= 3");
  const long double tl = static_cast<long double>(t);
  const long double root = (tl + std::sqrt(tl * tl - 4.0L)) / 2.0L;
  return root * root;
}

double norm_of_trace(std::int64_t t) { return static_cast<double>(norm_of_trace_ext(t)); }

Mat2 word_matrix(std::span<const int> runlengths) {
  if (runlengths.empty() || runlengths.size() % 2) throw Error("run-length word needs (a, b) pairs");
  Mat2 m{1, 0, 0, 1};
  for (std::size_t i = 0; i < runlengths.size(); ++i) {
    if (runlengths[i] < 1) throw Error("run lengths must be positive");
    const Mat2& step = (i % 2 == 0) ? kMatR : kMatL;
    for (int j = 0; j < runlengths[i]; ++j) m = m * step;
  }
  return m;
}

std::string word_string(std::span<const int> runlengths) {
  std::string out;
  for (std::size_t i = 0; i < runlengths.size(); ++i) out.append(static_cast<std::size_t>(runlengths[i]), i % 2 == 0 ? 'R' : 'L');
  return out;
}

bool is_canonical_primitive(std::span<const int> runlengths) {
  const std::size_t n = runlengths.size();
  for (std::size_t shift = 2; shift < n; shift += 2) {
    // Compare the rotation starting at `shift` with the original.
    int cmp = 0;
    for (std::size_t i = 0; i < n && cmp == 0; ++i) {
      const int rot = runlengths[(i + shift) % n];
      cmp = (rot > runlengths[i]) - (rot < runlengths[i]);
    }
    if (cmp <= 0) return false;  // a smaller rotation, or a period
  }
  return true;
}

std::int64_t psi_word(std::span<const int> runlengths) {
  std::int64_t psi = 0;
  for (std::size_t i = 0; i < runlengths.size(); ++i) psi += (i % 2 == 0) ? runlengths[i] : -runlengths[i];
  return psi;
}

std::int64_t psi_matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (static_cast<__int128>(a) * d - static_cast<__int128>(b) * c != 1) throw Error("psi_matrix needs det = 1");
  if (c == 0) throw Error("parabolic/upper-triangular not needed: psi_matrix needs c != 0");
  const std::int64_t tr = a + d;
  if (std::abs(tr) <= 2) throw Error("not hyperbolic: psi_matrix needs |a + d| > 2");
  const std::int64_t abs_c = std::abs(c);
  Rational value = make_rational(tr, c) - 12 * sign(c) * dedekind_sum_reduced(d, abs_c) - 3 * sign(c) * sign(tr);
  if (value.get_den() != 1) throw Error("Rademacher value is not an integer");
  return value.get_num().get_si();
}

std::int64_t max_trace_for_norm(double x) {
  const long double xl = x;
  if (!(xl >= norm_of_trace_ext(3))) return 2;
  const long double r = std::sqrt(xl);
  auto t = static_cast<std::int64_t>(std::floor(r + 1.0L / r));
  t = std::max<std::int64_t>(t, 3);
  while (norm_of_trace_ext(t + 1) <= xl) ++t;
  while (t >= 3 && norm_of_trace_ext(t) > xl) --t;
  return t;
}

namespace serial {

GeodesicEnsembleX enumerate_classes(double x) {
  const std::int64_t tmax = max_trace_for_norm(x);
  std::vector<std::vector<GeodesicClass>> parts;
  for (std::int64_t a1 = 1; a1 + 2 <= tmax; ++a1) parts.push_back(partition(static_cast<int>(a1), tmax));
  return assemble(x, parts);
}

}  // namespace serial

GeodesicEnsembleX enumerate_classes(double x) {
  const std::int64_t tmax = max_trace_for_norm(x);
  const std::int64_t n_parts = std::max<std::int64_t>(0, tmax - 2);
  std::vector<std::vector<GeodesicClass>> parts(static_cast<std::size_t>(n_parts));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a1 = 1; a1 <= n_parts; ++a1) parts[static_cast<std::size_t>(a1 - 1)] = partition(static_cast<int>(a1), tmax);
  return assemble(x, parts);
}

double sarnak_gamma(double x) {
  if (!(x >= 1.0)) throw Error("sarnak_gamma needs x >= 1");
  return 3.0 / kPi * std::log(x);
}

double phi1(double t) {
  if (!(std::abs(t) <= kPi / 12.0)) throw Error("outside Sarnak window: phi1 needs |t| <= pi/12");
  return 1.0 / (1.0 - 3.0 * std::abs(t) / kPi);
}

SarnakValue sarnak_trace(const GeodesicEnsembleX& ens, double t, bool exploratory) {
  const bool inside = std::abs(t) <= kPi / 12.0;
  if (!inside && !exploratory) throw Error("outside Sarnak window: |t| must be <= pi/12");
  if (ens.classes.empty()) throw Error("empty ensemble");
  const auto& cl = ens.classes;
  const double re = pairwise_sum<double>(0, cl.size(), [&](std::size_t i) {
    return cl[i].length * std::cos(t * static_cast<double>(cl[i].psi));
  });
  const double im = pairwise_sum<double>(0, cl.size(), [&](std::size_t i) {
    return cl[i].length * std::sin(t * static_cast<double>(cl[i].psi));
  });
  const double scale = std::exp(sarnak_gamma(ens.x) * std::abs(t));
  return {scale * re / ens.total_length, im / ens.total_length,
          inside ? phi1(t) : std::numeric_limits<double>::quiet_NaN()};
}

SarnakValue sarnak_trace(double t, double x, bool exploratory) {
  if (!(std::abs(t) <= kPi / 12.0) && !exploratory) throw Error("outside Sarnak window: |t| must be <= pi/12");
  return sarnak_trace(enumerate_classes(x), t, exploratory);
}

double selberg_check(const GeodesicEnsembleX& ens) { return ens.total_length / ens.x; }

double selberg_check(double x) {
  if (!(x >= 7.0)) throw Error("selberg_check needs x >= 7");
  return selberg_check(enumerate_classes(x));
}

void write_classes_csv(std::ostream& out, const GeodesicEnsembleX& ens) {
  out << "trace,norm,length,psi,word\n";
  for (const auto& g : ens.classes) {
    const long double n = norm_of_trace_ext(g.trace);
    csv::write_row(out, {csv::format(g.trace), format_ext(n), csv::format(g.length), csv::format(g.psi),
                         word_string(g.runlengths)});
  }
}

}  // namespace modstar
