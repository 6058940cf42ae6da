#pragma once

#include <vector>

#include "mxc/rational.hpp"

namespace mxc {

/// Exact coefficients of the Legendre polynomial P_l, indexed so that
/// entry k is the coefficient of t^(l-k). Odd k entries vanish.
std::vector<Rational> legendre_coeffs(int l);

/// Coefficient of t^(l-k) in P_l (zero outside 0 <= k <= l).
Rational legendre_coeff(int l, int k);

/// Exact coefficients of d^m P_l / dt^m, entry j = coefficient of t^j.
std::vector<Rational> legendre_derivative_coeffs(int l, int m);

}  // namespace mxc
