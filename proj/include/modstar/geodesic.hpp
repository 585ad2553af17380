#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace modstar {

// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  std::int64_t a, b, c, d;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::int64_t trace() const { return a + d; }
  std::int64_t det() const { return a * d - b * c; }
};

inline constexpr Mat2 kMatR{1, 1, 0, 1};
inline constexpr Mat2 kMatL{1, 0, 1, 1};

// A primitive hyperbolic conjugacy class of PSL(2, Z), represented by the
// cyclic word R^{a1} L^{b1} ... R^{ak} L^{bk} in its least rotation.
struct GeodesicClass {
  std::vector<int> runlengths;  // a1, b1, ..., ak, bk
  Mat2 matrix;
  std::int64_t trace;
  double norm;
  double length;
  std::int64_t psi;
};

struct GeodesicEnsembleX {
  double x = 0.0;
  std::vector<GeodesicClass> classes;  // sorted by (trace, runlengths)
  double total_length = 0.0;
};

// ((t + sqrt(t² - 4))/2)²; throws "not hyperbolic" for t < 3.
double norm_of_trace(std::int64_t t);
long double norm_of_trace_ext(std::int64_t t);

Mat2 word_matrix(std::span<const int> runlengths);
// "RRL" for (2, 1).
std::string word_string(std::span<const int> runlengths);

// True when the pair sequence is strictly smaller than each of its
// non-trivial rotations: the least rotation of an aperiodic cycle.
bool is_canonical_primitive(std::span<const int> runlengths);

// Σ a_i - Σ b_i.
std::int64_t psi_word(std::span<const int> runlengths);

// Rademacher: (a+d)/c - 12 sign(c) s(d, |c|) - 3 sign(c(a+d)), for det 1,
// c != 0 and |a + d| > 2.
std::int64_t psi_matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

// Every class with N(g) <= x.
GeodesicEnsembleX enumerate_classes(double x);

// Largest trace T with N(T) <= x, or 2 when there is none.
std::int64_t max_trace_for_norm(double x);

double sarnak_gamma(double x);

// 1 / (1 - 3|t|/π) for |t| <= π/12.
double phi1(double t);

struct SarnakValue {
  double value;  // exp(γ_x |t|) Re E_x(e^{itψ})
  double imag;   // Im E_x(e^{itψ})
  double phi1;   // NaN outside the theorem's window
};

// Throws "outside Sarnak window" for |t| > π/12 unless exploratory is set.
SarnakValue sarnak_trace(const GeodesicEnsembleX& ens, double t, bool exploratory = false);
SarnakValue sarnak_trace(double t, double x, bool exploratory = false);

// Σ ℓ(g) / x.
double selberg_check(const GeodesicEnsembleX& ens);
double selberg_check(double x);

void write_classes_csv(std::ostream& out, const GeodesicEnsembleX& ens);

namespace serial {
GeodesicEnsembleX enumerate_classes(double x);
}  // namespace serial

}  // namespace modstar
