#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <numeric>
#include <numbers>
#include <sstream>

#include "modstar/error.hpp"
#include "modstar/specialfn.hpp"
#include "modstar/vardi.hpp"

using namespace modstar;
using std::numbers::pi;

namespace {
// Small numerators and denominators: one division rounds correctly.
double rounded(const Rational& r) {
  return static_cast<double>(r.get_num().get_si()) / static_cast<double>(r.get_den().get_si());
}
}  // namespace

TEST_CASE("farey enumeration") {
  CHECK(enumerate_farey(2).pairs.empty());
  const auto f3 = enumerate_farey(3);
  REQUIRE(f3.pairs.size() == 1);
  CHECK((f3.pairs[0].c == 2 && f3.pairs[0].d == 1));
  const auto f5 = enumerate_farey(5);
  const std::vector<std::pair<long, long>> want{{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 3}};
  REQUIRE(f5.pairs.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK((f5.pairs[i].c == want[i].first && f5.pairs[i].d == want[i].second));
  CHECK_THROWS_AS(enumerate_farey(1), Error);
}

TEST_CASE("gamma_N") {
  CHECK(vardi_gamma(4) == 0.0);
  CHECK(vardi_gamma(4 * std::exp(2.0)) == doctest::Approx(1 / pi).epsilon(1e-15));
  CHECK(std::abs(std::exp(-pi * vardi_gamma(5000)) - std::pow(5000.0 / 4, -0.5)) < 1e-14);
}

TEST_CASE("buckets") {
  const auto b = DedekindBuckets::build(400);
  const auto s = serial::build_dedekind_buckets(400);
  CHECK(b.count_below(400) == s.count_below(400));
  for (long c = 2; c < 400; ++c) {
    const auto x = b.bucket(c), y = s.bucket(c);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(x[i] == y[i]);
  }
  for (long c = 2; c <= 60; ++c) {
    std::size_t i = 0;
    for (long d = 1; d < c; ++d)
      if (std::gcd(c, d) == 1) REQUIRE(b.bucket(c)[i++] == rounded(dedekind_sum_naive(d, c)));
    CHECK(i == b.bucket(c).size());
  }
  CHECK(b.bucket(7).size() == 6);
  CHECK(b.bucket(7)[0] == 15.0 / 42.0);  // s(1,7) = 5/14
}

TEST_CASE("figure trace") {
  SUBCASE("N = 3 is a single pair with s = 0") {
    const auto tr = figure_trace(2.0, 3, 1);
    REQUIRE(tr.rows.size() == 1);
    CHECK(tr.rows[0].value == doctest::Approx(std::exp(2.0 * vardi_gamma(3))).epsilon(1e-15));
  }
  SUBCASE("incremental equals from scratch") {
    for (double t : {pi / 2, -4 * pi}) {
      const auto a = figure_trace(t, 300, 1);
      const auto b = serial::figure_trace_from_scratch(t, 300, 1);
      REQUIRE(a.rows.size() == b.rows.size());
      for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].n == b.rows[i].n);
        CHECK(a.rows[i].value == b.rows[i].value);
        CHECK(std::abs(a.rows[i].raw_imag) <= 1e-12);
      }
    }
  }
  SUBCASE("stride and regimes") {
    const auto tr = figure_trace(1.0, 100, 10);
    REQUIRE(tr.rows.size() == 10);
    CHECK(tr.rows.back().n == 93);
    CHECK(vardi_regime(pi / 2) == WindowRegime::Convergent);
    CHECK(vardi_regime(-pi) == WindowRegime::Convergent);
    CHECK(vardi_regime(4.2) == WindowRegime::UniformBoundOnly);
    CHECK(vardi_regime(2 * pi) == WindowRegime::Exploratory);
    CHECK(vardi_regime(4 * pi) == WindowRegime::Exploratory);
  }
}

TEST_CASE("phi") {
  const auto zero = vardi_phi(0.0, 1000, 3, 2);
  CHECK(zero.value == 1.0);
  CHECK(zero.std_error == 0.0);
  CHECK(vardi_phi_quadrature(0.0, 50, 50) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(vardi_phi(4 * pi, 10, 0, 1), doctest::Contains("at or beyond pole"), Error);
  CHECK_THROWS_AS(vardi_phi(-13.0, 10, 0, 1), Error);

  const auto a = vardi_phi(1.0, 200000, 1, 4);
  const auto b = vardi_phi(-1.0, 200000, 1, 4);
  CHECK(a.value == b.value);  // even
  const auto c = vardi_phi(1.0, 200000, 2, 4);
  CHECK(std::abs(a.value - c.value) <= 3 * std::hypot(a.std_error, c.std_error));
  const double q = vardi_phi_quadrature(1.0, 400, 400);
  CHECK(std::abs(a.value - q) <= 4 * a.std_error);
}

TEST_CASE("monte carlo independent of thread count") {
  const int before = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = eta_power_sums(0.25, 50000, 9, 8);
  omp_set_num_threads(4);
  const auto four = eta_power_sums(0.25, 50000, 9, 8);
  omp_set_num_threads(before);
  const auto ser = serial::eta_power_sums(0.25, 50000, 9, 8);
  CHECK(one.sum == four.sum);
  CHECK(one.sum_sq == four.sum_sq);
  CHECK(one.sum == ser.sum);
  CHECK(one.count == 50000);
}

TEST_CASE("law check") {
  CHECK(vardi_law_check(3) == doctest::Approx(0.5).epsilon(1e-15));
  const auto b = DedekindBuckets::build(600);
  CHECK(vardi_law_check(b, 600) == vardi_law_check(600));
  CHECK_THROWS_AS(vardi_law_check(b, 601), Error);
}

TEST_CASE("vardi csv") {
  std::ostringstream os;
  const auto tr = figure_trace(0.5, 4, 1);
  write_figure_csv(os, std::span<const FigureTrace>(&tr, 1));
  CHECK(os.str().rfind("t,N,value\n0.5,3,", 0) == 0);
  std::ostringstream law;
  const std::int64_t ns[] = {3};
  const double ds[] = {0.5};
  write_law_csv(law, ns, ds);
  CHECK(law.str() == "N,ks_distance\n3,0.5\n");
}
