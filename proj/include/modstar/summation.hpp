#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace modstar {

// Pairwise summation of term(i) over [begin, end). The split points depend
// only on the range, so the result is bit-reproducible for a given range.
template <class T, class Term>
T pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kLeaf = 16;
  if (end - begin <= kLeaf) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

inline double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum<double>(0, xs.size(), [&](std::size_t i) { return xs[i]; });
}

// Neumaier compensated accumulator for long sequential streams.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace modstar
