#include <doctest.h>

#include <cmath>
#include <numeric>
#include <complex>
#include <numbers>
#include <random>

#include "modstar/error.hpp"
#include "modstar/specialfn.hpp"

using namespace modstar;
using std::numbers::pi;
using Cx = std::complex<double>;

namespace {

// Definition straight from the sawtooth, independent of the library.
Rational oracle_dedekind(long d, long c) {
  auto saw = [](const Rational& x) -> Rational {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (x.get_den() == 1) return Rational(0);
    return x - Rational(fl) - Rational(1, 2);
  };
  Rational acc(0);
  for (long h = 1; h < c; ++h) {
    Rational a(h * d, c), b(h, c);
    a.canonicalize();
    b.canonicalize();
    acc += saw(a) * saw(b);
  }
  return acc;
}

// Truncated product e^{iπz/12} Π(1 - q^n).
Cx oracle_eta(Cx z) {
  const Cx q = std::exp(Cx(0, 2 * pi) * z);
  Cx prod = 1.0, qn = q;
  for (int n = 1; n < 4000 && std::abs(qn) > 1e-300; ++n) {
    prod *= 1.0 - qn;
    qn *= q;
  }
  return std::exp(Cx(0, pi / 12) * z) * prod;
}

Cx eta_at(Cx z) { return dedekind_eta({z.real(), z.imag()}); }

}  // namespace

TEST_CASE("sawtooth") {
  CHECK(sawtooth(make_rational(1, 3)) == make_rational(-1, 6));
  CHECK(sawtooth(make_rational(7, 1)) == 0);
  CHECK(sawtooth(make_rational(3, 4)) == make_rational(1, 4));
  CHECK(sawtooth(make_rational(-1, 3)) == make_rational(1, 6));
}

TEST_CASE("dedekind sum examples") {
  CHECK(dedekind_sum_naive(1, 3) == make_rational(1, 18));
  CHECK(dedekind_sum_naive(1, 2) == 0);
  CHECK(dedekind_sum_naive(3, 5) == -dedekind_sum_naive(2, 5));
  CHECK(dedekind_sum_fast(1, 3) == make_rational(1, 18));
  CHECK(dedekind_sum_fast(5, 7) == dedekind_sum_naive(5, 7));
  CHECK(dedekind_sum_fast(5, 7) == oracle_dedekind(5, 7));
  // s(1, c) = (c - 1)(c - 2)/(12c).
  const long big = 1000003;
  Rational s1(mpz_class(big - 1) * (big - 2), mpz_class(12) * big);
  s1.canonicalize();
  CHECK(dedekind_sum_fast(1, big) == s1);
  CHECK_THROWS_AS(dedekind_sum_fast(2, 4), Error);
  CHECK_THROWS_AS(dedekind_sum_fast(0, 5), Error);
  CHECK_THROWS_AS(dedekind_sum_fast(5, 5), Error);
  CHECK_THROWS_AS(dedekind_sum_naive(2, 4), Error);
}

TEST_CASE("dedekind fast equals naive, exhaustive") {
  for (long c = 2; c <= 200; ++c)
    for (long d = 1; d < c; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const Rational s = dedekind_sum_fast(d, c);
      REQUIRE(s == dedekind_sum_naive(d, c));
      REQUIRE(dedekind_sum_fast(c - d, c) == -s);
    }
  for (long c = 2; c <= 60; ++c)
    for (long d = 1; d < c; ++d)
      if (std::gcd(c, d) == 1) REQUIRE(dedekind_sum_naive(d, c) == oracle_dedekind(d, c));
  for (long c = 2000; c > 1990; --c)
    for (long d = 1; d < c; d += 37)
      if (std::gcd(c, d) == 1) REQUIRE(dedekind_sum_fast(d, c) == dedekind_sum_naive(d, c));
}

TEST_CASE("6c s(d,c) is an integer") {
  for (long c = 2; c <= 300; ++c)
    for (long d = 1; d < c; ++d)
      if (std::gcd(c, d) == 1) REQUIRE(Rational(6 * c * dedekind_sum_fast(d, c)).get_den() == 1);
}

TEST_CASE("workspace reuse is stateless") {
  DedekindWorkspace ws;
  const Rational a = ws.eval(17, 101);
  ws.eval(3, 7);
  CHECK(ws.eval(17, 101) == a);
  CHECK(a == dedekind_sum_naive(17, 101));
}

TEST_CASE("eta at i") {
  const double closed = std::tgamma(0.25) / (2 * std::pow(pi, 0.75));
  CHECK(std::abs(eta_at({0, 1}) - closed) < 1e-14);
  CHECK(std::abs(oracle_eta({0, 1}) - closed) < 1e-14);
  CHECK(dedekind_eta_log_abs({0, 1}) == doctest::Approx(std::log(closed)).epsilon(1e-14));
}

TEST_CASE("eta transformation identities") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.6, 5.0);
  for (int i = 0; i < 50; ++i) {
    const Cx z(ux(rng), uy(rng));
    const Cx inv = -1.0 / z;
    const Cx lhs = dedekind_eta_series({inv.real(), inv.imag()});
    const Cx rhs = std::sqrt(z / Cx(0, 1)) * dedekind_eta_series({z.real(), z.imag()});
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    const Cx shifted = dedekind_eta_series({z.real() + 1, z.imag()});
    CHECK(std::abs(shifted - std::exp(Cx(0, pi / 12)) * dedekind_eta_series({z.real(), z.imag()})) < 1e-12);
    CHECK(std::abs(eta_at(z) - oracle_eta(z)) < 1e-12);
  }
  // Reduction path: small y.
  for (Cx z : {Cx(0.1, 0.05), Cx(-0.37, 0.02), Cx(0.49, 0.3)}) {
    const Cx e = eta_at(z);
    const Cx o = oracle_eta(z);
    CHECK(std::abs(e - o) <= 1e-9 * std::abs(o) + 1e-300);
    CHECK(dedekind_eta_log_abs({z.real(), z.imag()}) == doctest::Approx(std::log(std::abs(o))).epsilon(1e-9));
  }
  CHECK_THROWS_AS(dedekind_eta({0.0, 0.0}), Error);
}

TEST_CASE("barnes G") {
  CHECK(barnes_g(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(barnes_g(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(barnes_g(3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(barnes_g(4.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(barnes_g(0.5) == doctest::Approx(0.6032442812094462).epsilon(1e-13));
  CHECK(barnes_g(0.75) == doctest::Approx(0.8487175797238992).epsilon(1e-13));
  CHECK(barnes_g(1.25) == doctest::Approx(1.0650445385309557).epsilon(1e-13));
  CHECK(barnes_g(0.1) == doctest::Approx(0.1088064556170908).epsilon(1e-12));
  CHECK(barnes_g(2.5) == doctest::Approx(0.9475739010838258).epsilon(1e-13));
  for (double z : {0.6, 0.75, 1.0, 1.25, 1.4})
    CHECK(std::abs(barnes_g(z + 1) - std::tgamma(z) * barnes_g(z)) < 1e-10);
  CHECK_THROWS_AS(barnes_g(0.0), Error);
  CHECK_THROWS_AS(barnes_g(-1.5), Error);
}

TEST_CASE("wieand limit") {
  CHECK(wieand_limit(0.0, 0.1) == 1.0);
  CHECK(wieand_limit(0.0, 0.4) == 1.0);
  CHECK(wieand_limit(pi / 2, 0.125) == doctest::Approx(0.9439420700195772).epsilon(1e-12));
  CHECK(wieand_limit(-1.1, 0.3) == wieand_limit(1.1, 0.3));
  CHECK_THROWS_WITH_AS(wieand_limit(pi, 0.25), doctest::Contains("outside restricted window"), Error);
  CHECK_THROWS_AS(wieand_limit(-3.5, 0.25), Error);
  CHECK_THROWS_AS(wieand_limit(1.0, 0.5), Error);
  CHECK_THROWS_AS(wieand_limit(1.0, 0.0), Error);
}
