#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace mxc {

/// Arbitrary-precision rational, always kept in canonical form by GMP.
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Rational pow_rational(const Rational& base, int exp);

/// Element of Q(i): exact complex number with rational real and imaginary
/// parts. Arithmetic is exact; (a + b) - b == a holds bit for bit.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(long r) : re(r) {}
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Text form "re" / "re + im i" / "re - im i" with exact fractions.
std::string to_string(const GaussianRational& z);
GaussianRational gaussian_from_string(const std::string& s);

/// Deterministic generator of small rationals for randomized exact tests.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : state_(seed ? seed : 1) {}
  /// Numerator in [-max_num, max_num], denominator in [1, max_den].
  Rational next(int max_num = 9, int max_den = 4);
  GaussianRational next_gaussian(int max_num = 9, int max_den = 4);
  std::uint64_t next_raw();

 private:
  std::uint64_t state_;
};

}  // namespace mxc
