#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "mxc/multi_index.hpp"
#include "mxc/rational.hpp"

namespace mxc {

/// Homogeneous polynomial in x1, x2, x3 over Q(i), stored sparsely in
/// canonical form: every stored coefficient is nonzero and every stored
/// multi-index has total order equal to degree(). The zero polynomial is
/// represented by an empty coefficient map; its degree tag is carried from
/// context and compatible with any order.
class HomoPoly {
 public:
  using CoeffMap = std::map<MultiIndex, GaussianRational>;

  explicit HomoPoly(int degree = 0);

  static HomoPoly zero(int degree) { return HomoPoly(degree); }
  static HomoPoly constant(GaussianRational c);
  static HomoPoly monomial(const MultiIndex& alpha, GaussianRational c);

  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const CoeffMap& coeffs() const { return coeffs_; }
  std::size_t term_count() const { return coeffs_.size(); }

  GaussianRational coeff(const MultiIndex& alpha) const;
  /// Adds c * x^alpha, keeping canonical form. alpha must match degree()
  /// unless the polynomial is zero, in which case it adopts alpha's order.
  void add_term(const MultiIndex& alpha, const GaussianRational& c);

  HomoPoly& operator+=(const HomoPoly& o);
  HomoPoly& operator-=(const HomoPoly& o);
  friend HomoPoly operator+(HomoPoly a, const HomoPoly& b) { return a += b; }
  friend HomoPoly operator-(HomoPoly a, const HomoPoly& b) { return a -= b; }
  friend HomoPoly operator*(const HomoPoly& a, const HomoPoly& b);
  friend bool operator==(const HomoPoly& a, const HomoPoly& b);

  HomoPoly scaled(const GaussianRational& c) const;
  HomoPoly conjugated() const;

  std::complex<double> evaluate(const std::array<std::complex<double>, 3>& x) const;

  /// Largest coefficient magnitude (double), 0 for the zero polynomial.
  double max_abs_coeff() const;

 private:
  int degree_;
  CoeffMap coeffs_;
};

HomoPoly differentiate(const HomoPoly& p, int axis);
HomoPoly laplacian(const HomoPoly& p);

/// x1^2 + x2^2 + x3^2.
HomoPoly r_squared();

/// Vector-valued homogeneous polynomial; nonzero components share one order.
class VecHomoPoly {
 public:
  explicit VecHomoPoly(int degree = 0);
  VecHomoPoly(HomoPoly c1, HomoPoly c2, HomoPoly c3);

  int degree() const { return degree_; }
  bool is_zero() const;
  /// Component j, 1-based.
  const HomoPoly& operator[](int j) const { return comps_[j - 1]; }
  HomoPoly& operator[](int j) { return comps_[j - 1]; }

  VecHomoPoly& operator+=(const VecHomoPoly& o);
  VecHomoPoly& operator-=(const VecHomoPoly& o);
  friend VecHomoPoly operator+(VecHomoPoly a, const VecHomoPoly& b) { return a += b; }
  friend VecHomoPoly operator-(VecHomoPoly a, const VecHomoPoly& b) { return a -= b; }
  friend bool operator==(const VecHomoPoly& a, const VecHomoPoly& b);

  VecHomoPoly scaled(const GaussianRational& c) const;
  VecHomoPoly conjugated() const;
  /// Componentwise product with a scalar polynomial (e.g. |x|^2 powers).
  VecHomoPoly times(const HomoPoly& s) const;
  /// Cross product with the position vector x.
  VecHomoPoly cross_x() const;

  std::array<std::complex<double>, 3> evaluate(const std::array<std::complex<double>, 3>& x) const;
  double max_abs_coeff() const;

 private:
  int degree_;
  std::array<HomoPoly, 3> comps_;
};

HomoPoly divergence(const VecHomoPoly& p);
VecHomoPoly curl(const VecHomoPoly& p);
VecHomoPoly gradient(const HomoPoly& p);
bool is_harmonic(const VecHomoPoly& p);

// Coefficient-identity routes for the same predicates. These walk the index
// relations directly (no polynomial differentiation) so that the two paths
// can be cross-checked against each other.
bool divergence_free_by_coeffs(const VecHomoPoly& p);
bool curl_free_by_coeffs(const VecHomoPoly& p);
bool harmonic_by_coeffs(const VecHomoPoly& p);
/// First index beta with sum_j (beta_j + 1) p^(j)_{beta+e_j} != 0, if any.
std::optional<MultiIndex> divergence_violation(const VecHomoPoly& p);

// Text format: one term per line, "a1 a2 a3 : coeff"; vector polynomials as
// three blocks headed "component j". Round-trips exactly on canonical input.
std::string to_text(const HomoPoly& p);
std::string to_text(const VecHomoPoly& p);
HomoPoly homopoly_from_text(const std::string& text);
VecHomoPoly vecpoly_from_text(const std::string& text);

}  // namespace mxc
