#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "mxc/homopoly.hpp"
#include "mxc/multi_index.hpp"

namespace mxc {

using cplx = std::complex<double>;
using cvec3 = std::array<cplx, 3>;

/// Truncated Taylor expansion of a C^3-valued field about the origin.
/// Coefficient of x^alpha in component j is coeffs.at(alpha)[j-1].
class TaylorField {
 public:
  using CoeffMap = std::map<MultiIndex, cvec3>;

  explicit TaylorField(int max_degree = 0);

  int max_degree() const { return max_degree_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  cvec3 coeff(const MultiIndex& alpha) const;
  void add(const MultiIndex& alpha, const cvec3& c);
  void add(const MultiIndex& alpha, int component, cplx c);
  /// Drops coefficients with |c| <= eps * max|c|.
  void prune(double eps = 0.0);

  TaylorField& operator+=(const TaylorField& o);
  TaylorField& axpy(cplx a, const TaylorField& o);
  TaylorField scaled(cplx a) const;

  /// Adds a * body as the degree-body.degree() slab.
  void add_vecpoly(const VecHomoPoly& body, cplx a);
  void add_scalar_poly(const HomoPoly& body, int component, cplx a);

  /// Homogeneous part of total order d (empty map if none).
  std::map<MultiIndex, cvec3> part(int d) const;
  double max_abs_coeff() const;
  double max_abs_coeff_at_degree(int d) const;

  cvec3 evaluate(const std::array<cplx, 3>& x) const;

  std::string to_json() const;
  static TaylorField from_json(const std::string& json_text);

 private:
  int max_degree_;
  CoeffMap coeffs_;
};

TaylorField differentiate(const TaylorField& f, int axis);
/// Componentwise scalar divergence of the vector field.
std::map<MultiIndex, cplx> divergence(const TaylorField& f);
TaylorField curl_field(const TaylorField& f);

/// Lowest-order homogeneous part with the per-component zeroing convention:
/// N_j is the lowest surviving order of component j, N = min_j N_j, and
/// components with N_j > N are zeroed in the returned part.
struct LowestOrderPart {
  int N = 0;
  std::array<int, 3> component_order{-1, -1, -1};  // -1: component below noise
  std::array<std::map<MultiIndex, cplx>, 3> part;
  /// Per-component ratio of the leading coefficient scale to the zero
  /// threshold; large values mean a confident order call.
  std::array<double, 3> confidence{0.0, 0.0, 0.0};
  /// Set when some discarded lower degree sits within a decade of the
  /// threshold, i.e. the order call is tolerance-sensitive.
  bool ambiguous = false;
};

/// tol = 0 treats only exact zeros as zero; tol > 0 zeroes coefficients with
/// |c| <= tol * (field scale), where the field scale is the largest
/// coefficient magnitude over all stored degrees. Throws on an all-zero
/// input ("zero field has no lowest-order part").
LowestOrderPart lowest_order_part(const TaylorField& f, double tol);

}  // namespace mxc
