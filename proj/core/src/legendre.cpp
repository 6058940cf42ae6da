#include "mxc/legendre.hpp"

#include <stdexcept>

namespace mxc {

std::vector<Rational> legendre_coeffs(int l) {
  if (l < 0) throw std::invalid_argument("legendre_coeffs: negative order");
  // P_l(t) = 2^{-l} sum_k (-1)^k C(l,k) C(2l-2k,l) t^{l-2k}, k <= l/2.
  std::vector<Rational> p(static_cast<std::size_t>(l) + 1, Rational(0));
  Rational scale = Rational(1) / pow_rational(Rational(2), l);
  for (int k = 0; 2 * k <= l; ++k) {
    Rational c = binomial(l, k) * binomial(2 * l - 2 * k, l) * scale;
    if (k % 2 == 1) c = -c;
    p[static_cast<std::size_t>(2 * k)] = c;  // coefficient of t^{l-2k}
  }
  return p;
}

Rational legendre_coeff(int l, int k) {
  if (k < 0 || k > l) return Rational(0);
  return legendre_coeffs(l)[static_cast<std::size_t>(k)];
}

std::vector<Rational> legendre_derivative_coeffs(int l, int m) {
  if (m < 0) throw std::invalid_argument("legendre_derivative_coeffs: negative derivative order");
  std::vector<Rational> p = legendre_coeffs(l);
  if (m > l) return {};
  // d^m/dt^m of sum_k p[k] t^{l-k}: term k survives when l-k >= m.
  std::vector<Rational> out(static_cast<std::size_t>(l - m) + 1, Rational(0));
  for (int k = 0; k <= l - m; ++k) {
    int n = l - k;  // power of t before differentiation
    Rational fall = factorial(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(n - m));
    out[static_cast<std::size_t>(n - m)] = p[static_cast<std::size_t>(k)] * fall;
  }
  return out;
}

}  // namespace mxc
