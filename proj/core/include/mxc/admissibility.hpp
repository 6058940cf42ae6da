#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mxc/field_expansion.hpp"
#include "mxc/homopoly.hpp"
#include "mxc/taylor_field.hpp"

namespace mxc {

/// True iff every component P^(j) is divisible by x^(j), i.e. no surviving
/// coefficient sits at a multi-index with alpha^(j) = 0. Requires odd
/// degree >= 1.
bool pattern_odd(const VecHomoPoly& p);

/// True iff every component P^(j) is divisible by the product of the other
/// two coordinates. Requires even degree >= 2.
bool pattern_even(const VecHomoPoly& p);

/// Numeric versions operating on a degree slab; a coefficient counts as
/// zero when |c| <= tol * (largest coefficient in the slab). On failure,
/// *witness names the violating monomial when non-null.
bool pattern_odd(const std::array<std::map<MultiIndex, cplx>, 3>& part, int degree, double tol,
                 std::string* witness = nullptr);
bool pattern_even(const std::array<std::map<MultiIndex, cplx>, 3>& part, int degree, double tol,
                  std::string* witness = nullptr);

enum class Admissibility { Admissible, Inadmissible, Undetermined };

std::string to_string(Admissibility a);

struct Verdict {
  Admissibility status = Admissibility::Undetermined;
  int N = -1;
  /// Fields attaining the minimal order: "E", "H" or "EH".
  std::string attained;
  /// Matched pattern or the violating monomial.
  std::string witness;
  /// Materialized index set / bookkeeping for audit.
  std::string notes;

  std::string to_json() const;
};

/// Classification through the Taylor view: lowest-order parts of both
/// fields, then the parity pattern on every order-attaining field.
Verdict classify_taylor(const TaylorField& e_field, const TaylorField& h_field, double tol);

/// Single-field variant (the pair (V, V)).
Verdict classify_single(const TaylorField& v, double tol);

/// Classification through the expansion view: the lowest-l block must be
/// supported exactly on the even-m conjugate-paired combinations, with the
/// pairing sign +1 for odd l and -1 for even l (the sign that keeps the
/// m = 0 member nonzero in the odd case), and l_min >= 1.
Verdict classify_expansion(const FieldExpansion& f, double tol = 1e-12);

/// The conjugate-pair combination index set for a given block order l0:
/// m ranges over (l0+1) mod 2 .. (l0+1)/2, the stored pair is (2m, -2m).
std::vector<int> inadmissible_m_range(int l0);
/// Pairing sign between the +2m and -2m amplitudes for block order l0.
int inadmissible_pair_sign(int l0);

}  // namespace mxc
