#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace mxc {

/// Coefficients of a field pair over the two wavefunction ladders: entry
/// (l, m) holds a (first-ladder) and b (second-ladder) amplitudes.
class FieldExpansion {
 public:
  struct Coeff {
    std::complex<double> a{0.0};
    std::complex<double> b{0.0};
  };
  using Map = std::map<std::pair<int, int>, Coeff>;

  void set(int l, int m, std::complex<double> a, std::complex<double> b);
  void add(int l, int m, std::complex<double> a, std::complex<double> b);
  Coeff coeff(int l, int m) const;
  const Map& entries() const { return entries_; }
  bool empty() const;

  /// Smallest l carrying a nonzero coefficient. Throws on an all-zero
  /// expansion.
  int l_min() const;
  int l_max() const;

  std::string to_json() const;
  static FieldExpansion from_json(const std::string& text);

 private:
  Map entries_;
};

}  // namespace mxc
