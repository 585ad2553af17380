#include "modstar/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "modstar/error.hpp"

namespace modstar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

void check_dedekind_domain(std::int64_t d, std::int64_t c) {
  if (!(1 <= d && d < c)) throw Error("Dedekind sum needs 1 <= d < c");
  if (std::gcd(c, d) != 1) throw Error("Dedekind sum needs gcd(c, d) = 1");
}

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(to_mpz(num), to_mpz(den));
  r.canonicalize();
  return r;
}

Rational sawtooth(const Rational& x) {
  if (x.get_den() == 1) return Rational(0);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl) - Rational(1, 2);
}

Rational dedekind_sum_naive(std::int64_t d, std::int64_t c) {
  check_dedekind_domain(d, c);
  Rational acc(0);
  for (std::int64_t h = 1; h < c; ++h) acc += sawtooth(make_rational(h * d, c)) * sawtooth(make_rational(h, c));
  return acc;
}

const Rational& DedekindWorkspace::eval(std::int64_t d, std::int64_t c) {
  // s(a,b) = -s(b mod a, a) + (a² + b² + 1 - 3ab) / (12ab) for 0 < a < b.
  mpq_set_ui(acc_.get_mpq_t(), 0, 1);
  long sign = 1;
  std::int64_t a = d;
  std::int64_t b = c;
  const bool small = c < (std::int64_t{1} << 28);
  while (a != 0) {
    if (small) {
      const long num = static_cast<long>(a * a + b * b + 1 - 3 * a * b);
      mpq_set_si(term_.get_mpq_t(), sign * num, static_cast<unsigned long>(12 * a * b));
    } else {
      const mpz_class za = to_mpz(a), zb = to_mpz(b);
      mpz_class num = za * za + zb * zb + 1 - 3 * za * zb;
      if (sign < 0) num = -num;
      mpz_class den = 12 * za * zb;
      mpq_set_num(term_.get_mpq_t(), num.get_mpz_t());
      mpq_set_den(term_.get_mpq_t(), den.get_mpz_t());
    }
    mpq_canonicalize(term_.get_mpq_t());
    mpq_add(acc_.get_mpq_t(), acc_.get_mpq_t(), term_.get_mpq_t());
    sign = -sign;
    const std::int64_t r = b % a;
    b = a;
    a = r;
  }
  return acc_;
}

Rational dedekind_sum_fast(std::int64_t d, std::int64_t c) {
  check_dedekind_domain(d, c);
  DedekindWorkspace ws;
  return ws.eval(d, c);
}

Rational dedekind_sum_reduced(std::int64_t d, std::int64_t c) {
  if (c < 1) throw Error("Dedekind sum needs c >= 1");
  std::int64_t r = d % c;
  if (r < 0) r += c;
  if (c == 1) return Rational(0);
  if (std::gcd(r, c) != 1) throw Error("Dedekind sum needs gcd(c, d) = 1");
  DedekindWorkspace ws;
  return ws.eval(r, c);
}

namespace {

// Σ_k (-1)^k q^{k(3k-1)/2} over all integers k, q = e^{2πiz}.
std::complex<double> pentagonal_sum(std::complex<double> z) {
  const double y = z.imag();
  const double x = z.real();
  auto q_pow = [&](double n) {
    return std::polar(std::exp(-2.0 * kPi * n * y), 2.0 * kPi * std::fmod(n * x, 1.0));
  };
  std::complex<double> sum(1.0, 0.0);
  for (int k = 1;; ++k) {
    const double e1 = k * (3.0 * k - 1.0) / 2.0;
    const double e2 = k * (3.0 * k + 1.0) / 2.0;
    const double mag = std::exp(-2.0 * kPi * e1 * y);
    const std::complex<double> term = q_pow(e1) + q_pow(e2);
    sum += (k % 2) ? -term : term;
    if (mag < 1e-18 || k > 100000) break;
  }
  return sum;
}

std::complex<double> eta_prefactor(std::complex<double> z) {
  return std::polar(std::exp(-kPi * z.imag() / 12.0), kPi * z.real() / 12.0);
}

}  // namespace

std::complex<double> dedekind_eta_series(UpperHalfPoint z) {
  if (!(z.y > 0.0)) throw Error("eta needs Im z > 0");
  const std::complex<double> w(z.x, z.y);
  return eta_prefactor(w) * pentagonal_sum(w);
}

std::complex<double> dedekind_eta(UpperHalfPoint z) {
  if (!(z.y > 0.0)) throw Error("eta needs Im z > 0");
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> mult(1.0, 0.0);
  std::complex<double> w(z.x, z.y);
  for (int iter = 0; iter < 200; ++iter) {
    const double n = std::round(w.real());
    if (n != 0.0) {
      // η(w) = e^{iπn/12} η(w - n)
      mult *= std::polar(1.0, kPi * std::fmod(n, 24.0) / 12.0);
      w -= n;
    }
    if (w.imag() >= 0.5) break;
    // η(w) = η(-1/w) / sqrt(w/i)
    mult /= std::sqrt(w / i);
    w = -1.0 / w;
  }
  return mult * eta_prefactor(w) * pentagonal_sum(w);
}

double dedekind_eta_log_abs(UpperHalfPoint z) {
  if (!(z.y > 0.0)) throw Error("eta needs Im z > 0");
  if (z.y >= 0.5) {
    const std::complex<double> w(z.x - std::round(z.x), z.y);
    return -kPi * z.y / 12.0 + std::log(std::abs(pentagonal_sum(w)));
  }
  return std::log(std::abs(dedekind_eta(z)));
}

namespace {

// Hurwitz zeta Σ_{n>=0} (a+n)^{-s} by Euler-Maclaurin; intended for a >= 32.
double hurwitz_zeta(int s, double a) {
  static constexpr double kBernoulli[] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                                          -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0,
                                          7.0 / 6.0};
  double out = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;        // s(s+1)...(s+2k-2)
  double fact = 2.0;        // (2k)!
  double apow = std::pow(a, -s - 1.0);
  for (int k = 1; k <= 7; ++k) {
    out += kBernoulli[k - 1] / fact * rising * apow;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    apow /= a * a;
  }
  return out;
}

}  // namespace

double log_barnes_g(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw Error("Barnes G needs a positive argument");
  const double w = z - 1.0;
  if (w == 0.0) return 0.0;
  const int m = std::max(64, static_cast<int>(std::ceil(8.0 * std::abs(w))));
  double head = 0.0;
  for (int n = m; n >= 1; --n) head += w * w / (2.0 * n) - w + n * std::log1p(w / n);
  // Σ_{n>m} [w²/2n - w + n log(1+w/n)] = Σ_{j>=3} (-1)^{j+1} w^j/j ζ(j-1, m+1)
  double tail = 0.0;
  double wpow = w * w * w;
  for (int j = 3; j < 80; ++j) {
    const double term = wpow / j * hurwitz_zeta(j - 1, m + 1.0);
    tail += (j % 2) ? term : -term;
    if (std::abs(term) < 1e-18) break;
    wpow *= w;
  }
  return 0.5 * w * std::log(2.0 * kPi) - 0.5 * w * (w + 1.0) - 0.5 * kEulerGamma * w * w + head +
         tail;
}

double barnes_g(double z) { return std::exp(log_barnes_g(z)); }

double wieand_limit(double t, double gamma_arc) {
  if (!(std::abs(t) < kPi)) throw Error("outside restricted window: wieand_limit needs |t| < pi");
  if (!(gamma_arc > 0.0 && gamma_arc < 0.5)) throw Error("arc parameter gamma must lie in (0, 1/2)");
  const double base = 2.0 - 2.0 * std::cos(4.0 * kPi * gamma_arc);
  const double u = t / (2.0 * kPi);
  return std::exp(t * t / (4.0 * kPi * kPi) * std::log(base) + log_barnes_g(1.0 - u) +
                  log_barnes_g(1.0 + u));
}

}  // namespace modstar
