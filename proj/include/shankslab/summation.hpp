#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "shankslab/parallel.hpp"

namespace shankslab {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void merge(const CompensatedComplexSum& other) noexcept {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Items per reduction chunk. Part of the reduction topology: changing it
// changes low-order bits of every ordered sum.
inline constexpr std::size_t kReductionChunk = 1024;

// Combines partial sums along a balanced binary tree whose shape depends only
// on the number of leaves.
template <class T>
T pairwise_combine(std::span<const T> leaves) {
  if (leaves.empty()) return T{};
  std::vector<T> level(leaves.begin(), leaves.end());
  while (level.size() > 1) {
    std::vector<T> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
    if (level.size() % 2 == 1) next.back() = level.back();
    level.swap(next);
  }
  return level.front();
}

// Sums term(i) for i in [0, count). Chunks of kReductionChunk consecutive
// items are summed in index order with compensation, chunk totals are
// combined pairwise. The result is bit-identical for any thread count.
template <class T, class Term>
T ordered_sum(std::size_t count, unsigned threads, Term&& term) {
  using Acc = std::conditional_t<std::is_same_v<T, double>, CompensatedSum, CompensatedComplexSum>;
  const std::size_t chunks = (count + kReductionChunk - 1) / kReductionChunk;
  std::vector<T> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Acc acc;
    const std::size_t end = std::min(count, (c + 1) * kReductionChunk);
    for (std::size_t i = c * kReductionChunk; i < end; ++i) acc.add(term(i));
    partial[c] = acc.value();
  });
  return pairwise_combine<T>(partial);
}

}  // namespace shankslab
