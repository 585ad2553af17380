#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "modstar/error.hpp"
#include "modstar/geodesic.hpp"
#include "geodesic_oracle.hpp"

using namespace modstar;
using std::numbers::pi;

using namespace modstar::oracle;

TEST_CASE("norms") {
  CHECK(norm_of_trace(3) == doctest::Approx(std::pow((3 + std::sqrt(5.0)) / 2, 2)).epsilon(1e-15));
  CHECK(norm_of_trace(3) == doctest::Approx(6.854102).epsilon(1e-7));
  CHECK(norm_of_trace(4) == doctest::Approx(7 + 4 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(norm_of_trace(2), doctest::Contains("not hyperbolic"), Error);
  CHECK(max_trace_for_norm(6.0) == 2);
  CHECK(max_trace_for_norm(6.854101966249685) == 3);
  CHECK(max_trace_for_norm(std::nextafter(6.854101966249685, 0.0)) == 2);
  CHECK(max_trace_for_norm(200.0) == 14);
}

TEST_CASE("small ensembles") {
  CHECK(enumerate_classes(6.0).classes.empty());
  const auto e7 = enumerate_classes(7.0);
  REQUIRE(e7.classes.size() == 1);
  const auto& g = e7.classes[0];
  CHECK(word_string(g.runlengths) == "RL");
  CHECK(g.matrix == Mat2{2, 1, 1, 1});
  CHECK(g.trace == 3);
  CHECK(g.norm == doctest::Approx((7 + 3 * std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(selberg_check(e7) == doctest::Approx(0.2749).epsilon(1e-3));
  CHECK(selberg_check(e7) == std::log(g.norm) / 7.0);
  const auto s = sarnak_trace(e7, 0.2);
  CHECK(s.value == doctest::Approx(std::exp(sarnak_gamma(7.0) * 0.2)).epsilon(1e-15));
  const auto e14 = enumerate_classes(14.0);
  REQUIRE(e14.classes.size() == 3);
  CHECK(word_string(e14.classes[1].runlengths) == "RLL");
  CHECK(word_string(e14.classes[2].runlengths) == "RRL");
}

TEST_CASE("psi examples") {
  const std::vector<int> rl{1, 1}, r2l{2, 1};
  CHECK(psi_word(rl) == 0);
  CHECK(psi_word(r2l) == 1);
  for (int a = 1; a <= 10; ++a) {
    const std::vector<int> w{a, a};
    const Mat2 m = word_matrix(w);
    CHECK(psi_word(w) == 0);
    CHECK(psi_matrix(m.a, m.b, m.c, m.d) == 0);
  }
  CHECK(psi_matrix(2, 1, 1, 1) == 0);
  CHECK(psi_matrix(3, 2, 1, 1) == 1);
  CHECK_THROWS_WITH_AS(psi_matrix(1, 5, 0, 1), doctest::Contains("parabolic/upper-triangular not needed"), Error);
  CHECK_THROWS_AS(psi_matrix(2, 1, 1, 2), Error);
}

TEST_CASE("psi word equals psi matrix up to norm 1e4") {
  const auto ens = enumerate_classes(1e4);
  CHECK(ens.classes.size() > 1000);
  for (const auto& g : ens.classes) {
    REQUIRE(psi_matrix(g.matrix.a, g.matrix.b, g.matrix.c, g.matrix.d) == g.psi);
    REQUIRE(word_matrix(g.runlengths) == g.matrix);
    REQUIRE(g.norm <= 1e4);
  }
}

TEST_CASE("rotation and reversal") {
  const auto ens = enumerate_classes(1e4);
  std::map<std::vector<int>, const GeodesicClass*> by_word;
  for (const auto& g : ens.classes) by_word[g.runlengths] = &g;
  for (const auto& g : ens.classes) {
    const auto& w = g.runlengths;
    const std::size_t n = w.size();
    // Rotations by a full (R^a L^b) block keep the class, hence ψ and trace.
    for (std::size_t s = 2; s < n; s += 2) {
      std::vector<int> rot(n);
      for (std::size_t i = 0; i < n; ++i) rot[i] = w[(i + s) % n];
      const Mat2 m = word_matrix(rot);
      CHECK(psi_word(rot) == g.psi);
      CHECK(psi_matrix(m.a, m.b, m.c, m.d) == g.psi);
    }
    // Swap R and L: (b1, a2, b2, ..., ak, a1), then its least rotation.
    std::vector<int> sw(n);
    for (std::size_t i = 0; i + 1 < n; ++i) sw[i] = w[i + 1];
    sw[n - 1] = w[0];
    std::vector<int> best = sw;
    for (std::size_t s = 2; s < n; s += 2) {
      std::vector<int> rot(n);
      for (std::size_t i = 0; i < n; ++i) rot[i] = sw[(i + s) % n];
      best = std::min(best, rot);
    }
    auto it = by_word.find(best);
    REQUIRE(it != by_word.end());
    CHECK(it->second->trace == g.trace);
    CHECK(it->second->norm == g.norm);
    CHECK(it->second->psi == -g.psi);
  }
  CHECK(std::abs(sarnak_trace(ens, pi / 12).imag) < 1e-12);
}

TEST_CASE("enumeration completeness against brute force") {
  const auto ens = enumerate_classes(200.0);
  std::set<std::pair<long, Form>> found;
  for (const auto& g : ens.classes) {
    CHECK(g.norm <= 200.0);
    CHECK_FALSE(is_proper_power(g.matrix));
    found.insert({g.trace, conjugacy_key(g.matrix)});
  }
  CHECK(found.size() == ens.classes.size());  // no two enumerated classes conjugate
  CHECK(found == brute_force_classes(max_trace_for_norm(200.0), 14));
}

TEST_CASE("proper power oracle") {
  const Mat2 a = word_matrix(std::vector<int>{1, 1});
  CHECK(is_proper_power(a * a));
  CHECK(is_proper_power(a * a * a));
  CHECK_FALSE(is_proper_power(a));
  CHECK_FALSE(is_proper_power(word_matrix(std::vector<int>{2, 1})));
}

TEST_CASE("serial vs parallel enumeration") {
  const auto a = enumerate_classes(3e4);
  const auto b = serial::enumerate_classes(3e4);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].runlengths == b.classes[i].runlengths);
  CHECK(a.total_length == b.total_length);
}

TEST_CASE("sarnak and selberg helpers") {
  CHECK(sarnak_gamma(std::exp(pi)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(sarnak_gamma(1e5) == doctest::Approx(10.994034).epsilon(1e-7));
  CHECK(sarnak_gamma(1.0) == 0.0);
  CHECK_THROWS_AS(sarnak_gamma(0.5), Error);
  CHECK(phi1(0.0) == 1.0);
  CHECK(phi1(pi / 12) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(phi1(0.3), doctest::Contains("outside Sarnak window"), Error);
  CHECK_THROWS_WITH_AS(sarnak_trace(0.3, 100.0), doctest::Contains("outside Sarnak window"), Error);
  const auto ex = sarnak_trace(0.3, 100.0, true);
  CHECK(std::isnan(ex.phi1));
  CHECK(sarnak_trace(0.0, 1e3).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(selberg_check(6.5), Error);
  const double r3 = selberg_check(1e3), r5 = selberg_check(1e5);
  CHECK(std::abs(r5 - 1) < std::abs(r3 - 1));
}

TEST_CASE("classes csv") {
  std::ostringstream os;
  write_classes_csv(os, enumerate_classes(7.0));
  CHECK(os.str() == "trace,norm,length,psi,word\n3,6.8541019662496845,1.9248473002384139,0,RL\n");
}
