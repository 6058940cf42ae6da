#pragma once

#include <string>

#include "mxc/homopoly.hpp"
#include "mxc/rational.hpp"

namespace mxc {

/// Positive constant sqrt(r * pi^k) with exact rational r, so normalization
/// factors like sqrt((2l+1)/(4 pi)) can be carried without rounding.
struct NormTag {
  Rational r{1};
  int pi_power = 0;

  double value() const;
  /// Multiplies the represented constant by sqrt(q), q > 0 rational.
  NormTag times_sqrt(const Rational& q) const;
  /// Multiplies the represented constant by the rational q > 0.
  NormTag times(const Rational& q) const;

  friend bool operator==(const NormTag& a, const NormTag& b) {
    return a.r == b.r && a.pi_power == b.pi_power;
  }
};

std::string to_string(const NormTag& n);

/// Scalar homogeneous polynomial with a separately carried normalization.
/// The represented function is norm.value() * body.
struct NormalizedPoly {
  HomoPoly body;
  NormTag norm;

  int degree() const { return body.degree(); }
  std::complex<double> evaluate(const std::array<std::complex<double>, 3>& x) const {
    return norm.value() * body.evaluate(x);
  }
};

struct NormalizedVecPoly {
  VecHomoPoly body;
  NormTag norm;

  int degree() const { return body.degree(); }
  std::array<std::complex<double>, 3> evaluate(const std::array<std::complex<double>, 3>& x) const;
};

std::string to_text(const NormalizedVecPoly& p);

/// Solid harmonic Y_l^m(x^) |x|^l as an exact polynomial, |m| <= l.
/// Negative m is the complex conjugate of the positive case.
NormalizedPoly solid_harmonic_Y(int l, int m);

/// Degree-l solid form of the radial-tangential family I_l^m, |m| <= l+1,
/// built as grad(solid Y_{l+1}^m) / sqrt((l+1)(2l+3)). Curl-free,
/// divergence-free and harmonic.
NormalizedVecPoly vsh_I(int l, int m);

/// Degree-l solid form of the tangential family T_l^m, l >= 1, |m| <= l,
/// built as sqrt((2l+1)/(l+1)) * (I_{l-1}^m solid) ^ x.
NormalizedVecPoly vsh_T(int l, int m);

/// Degree-l solid form of the family N_l^m, l >= 1, |m| <= l-1, assembled
/// from the solid Y_{l-1}^m and its gradient:
///   N_l^m |x|^l = [ (2l-1) x Y - |x|^2 grad Y ] / sqrt(l(2l-1)),
/// with Y the solid Y_{l-1}^m. This is the normalization that makes
/// {T, I, N} orthonormal on the unit sphere.
NormalizedVecPoly vsh_N(int l, int m);

}  // namespace mxc
