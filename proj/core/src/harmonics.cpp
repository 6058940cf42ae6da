#include "mxc/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mxc/legendre.hpp"

namespace mxc {

double NormTag::value() const {
  return std::sqrt(r.get_d() * std::pow(std::numbers::pi, pi_power));
}

NormTag NormTag::times_sqrt(const Rational& q) const {
  if (q <= 0) throw std::domain_error("NormTag: nonpositive factor");
  return {r * q, pi_power};
}

NormTag NormTag::times(const Rational& q) const {
  if (q <= 0) throw std::domain_error("NormTag: nonpositive factor");
  return {r * q * q, pi_power};
}

std::string to_string(const NormTag& n) {
  return "norm: " + n.r.get_str() + " ; pi^" + std::to_string(n.pi_power);
}

std::array<std::complex<double>, 3> NormalizedVecPoly::evaluate(
    const std::array<std::complex<double>, 3>& x) const {
  auto v = body.evaluate(x);
  double s = norm.value();
  return {s * v[0], s * v[1], s * v[2]};
}

std::string to_text(const NormalizedVecPoly& p) {
  return to_text(p.body) + to_string(p.norm) + "\n";
}

namespace {

// (x1 + i x2)^m expanded exactly; m >= 0.
HomoPoly x1_plus_ix2_pow(int m) {
  HomoPoly acc = HomoPoly::constant(GaussianRational(1));
  if (m == 0) return acc;
  HomoPoly base(1);
  base.add_term(MultiIndex(1, 0, 0), GaussianRational(1));
  base.add_term(MultiIndex(0, 1, 0), GaussianRational::i());
  for (int k = 0; k < m; ++k) acc = acc * base;
  return acc;
}

HomoPoly r2_pow(int s) {
  HomoPoly acc = HomoPoly::constant(GaussianRational(1));
  HomoPoly r2 = r_squared();
  for (int k = 0; k < s; ++k) acc = acc * r2;
  return acc;
}

}  // namespace

NormalizedPoly solid_harmonic_Y(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw std::domain_error("solid_harmonic_Y: |m| must be <= l");
  const int ma = std::abs(m);

  // (sin th)^ma e^{i ma phi} r^ma = (x1 + i x2)^ma and each surviving power
  // of cos th pairs with an even power of r, so the body is polynomial.
  std::vector<Rational> d = legendre_derivative_coeffs(l, ma);
  HomoPoly radial(l - ma);
  bool any = false;
  for (int j = 0; j < static_cast<int>(d.size()); ++j) {
    if (d[static_cast<std::size_t>(j)] == 0) continue;
    int rest = l - ma - j;
    if (rest % 2 != 0) throw std::logic_error("solid_harmonic_Y: parity violation");
    HomoPoly term = r2_pow(rest / 2);
    HomoPoly x3j = HomoPoly::monomial(MultiIndex(0, 0, j), GaussianRational(d[static_cast<std::size_t>(j)]));
    radial += x3j * term;
    any = true;
  }
  if (!any) radial = HomoPoly::zero(l - ma);

  HomoPoly body = x1_plus_ix2_pow(ma) * radial;
  if (m < 0) body = body.conjugated();

  NormTag norm;
  norm.r = Rational(2 * l + 1) * factorial(static_cast<unsigned>(l - ma)) /
           (Rational(4) * factorial(static_cast<unsigned>(l + ma)));
  norm.pi_power = -1;
  return {std::move(body), norm};
}

NormalizedVecPoly vsh_I(int l, int m) {
  if (l < 0 || std::abs(m) > l + 1) throw std::domain_error("vsh_I: |m| must be <= l+1");
  NormalizedPoly y = solid_harmonic_Y(l + 1, m);
  VecHomoPoly body = gradient(y.body);
  NormTag norm = y.norm.times_sqrt(Rational(1, static_cast<long>(l + 1) * (2 * l + 3)));
  return {std::move(body), norm};
}

NormalizedVecPoly vsh_T(int l, int m) {
  if (l < 1) throw std::domain_error("vsh_T: undefined for l = 0");
  if (std::abs(m) > l) throw std::domain_error("vsh_T: |m| must be <= l");
  NormalizedVecPoly i = vsh_I(l - 1, m);
  VecHomoPoly body = i.body.cross_x();
  NormTag norm = i.norm.times_sqrt(Rational(2 * l + 1, l + 1));
  return {std::move(body), norm};
}

NormalizedVecPoly vsh_N(int l, int m) {
  if (l < 1 || std::abs(m) > l - 1) throw std::domain_error("vsh_N: need l >= 1, |m| <= l-1");
  NormalizedPoly y = solid_harmonic_Y(l - 1, m);

  auto xmono = [](int j) { return HomoPoly::monomial(MultiIndex::e(j), GaussianRational(1)); };
  VecHomoPoly x_times_y(xmono(1) * y.body, xmono(2) * y.body, xmono(3) * y.body);
  VecHomoPoly body = x_times_y.scaled(GaussianRational(2 * l - 1)) - gradient(y.body).times(r_squared());

  NormTag norm = y.norm.times_sqrt(Rational(1, static_cast<long>(l) * (2 * l - 1)));
  return {std::move(body), norm};
}

}  // namespace mxc
