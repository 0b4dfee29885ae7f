#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace trigconv {

/// Neumaier-compensated running sum. Terms are consumed in call order, so a
/// fixed call order gives bitwise-reproducible totals.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Componentwise compensated sum for complex terms.
class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
    add(z);
    return *this;
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline double compensated_total(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// Range sums over nonnegative terms without prefix-sum subtraction.
///
/// A prefix-difference S(b) - S(a) loses all relative accuracy when the
/// range sum is tiny next to the running total (fast-decaying sequences).
/// This bottom-up segment tree only ever adds nonnegative node sums, so
/// each query is accurate to O(log n) ulps relative to its own value.
class RangeSumTree {
 public:
  RangeSumTree() = default;
  explicit RangeSumTree(std::span<const double> terms) : size_(terms.size()) {
    cap_ = 1;
    while (cap_ < size_) cap_ <<= 1;
    nodes_.assign(2 * cap_, 0.0);
    std::copy(terms.begin(), terms.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(cap_));
    for (std::size_t i = cap_ - 1; i >= 1; --i) {
      nodes_[i] = nodes_[2 * i] + nodes_[2 * i + 1];
    }
  }

  std::size_t size() const noexcept { return size_; }

  /// Sum of terms[first..last], both inclusive (0-based).
  double sum(std::size_t first, std::size_t last) const {
    if (first > last) return 0.0;
    if (last >= size_) throw std::out_of_range("RangeSumTree: range beyond data");
    CompensatedSum acc;
    std::size_t lo = first + cap_;
    std::size_t hi = last + cap_ + 1;
    // Right-side nodes are collected and added in reverse so the sum runs
    // left to right.
    std::array<double, 64> right{};
    std::size_t n_right = 0;
    while (lo < hi) {
      if (lo & 1U) acc.add(nodes_[lo++]);
      if (hi & 1U) right[n_right++] = nodes_[--hi];
      lo >>= 1;
      hi >>= 1;
    }
    while (n_right > 0) acc.add(right[--n_right]);
    return acc.value();
  }

 private:
  std::size_t size_ = 0;
  std::size_t cap_ = 1;
  std::vector<double> nodes_;
};

}  // namespace trigconv
