#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace mxc {

/// Exponent triple of a monomial x1^a1 x2^a2 x3^a3.
struct MultiIndex {
  std::array<int, 3> a{0, 0, 0};

  MultiIndex() = default;
  MultiIndex(int a1, int a2, int a3) : a{a1, a2, a3} {}

  int order() const { return a[0] + a[1] + a[2]; }
  /// Exponent of axis j, 1-based to match the x^(j) notation.
  int operator[](int j) const { return a[j - 1]; }
  int& operator[](int j) { return a[j - 1]; }

  /// Unit index e_j, 1-based.
  static MultiIndex e(int j) {
    MultiIndex m;
    m[j] = 1;
    return m;
  }

  MultiIndex plus(int j, int count = 1) const {
    MultiIndex m = *this;
    m[j] += count;
    return m;
  }
  MultiIndex minus(int j, int count = 1) const { return plus(j, -count); }

  auto operator<=>(const MultiIndex&) const = default;

  std::string to_string() const {
    return std::to_string(a[0]) + " " + std::to_string(a[1]) + " " + std::to_string(a[2]);
  }
};

}  // namespace mxc
