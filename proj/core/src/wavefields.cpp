#include "mxc/wavefields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mxc/harmonics.hpp"

namespace mxc {

double WaveParams::k() const { return omega * std::sqrt(mu0 * eps0); }
double WaveParams::admittance() const { return std::sqrt(eps0 / mu0); }

Rational bessel_series_coeff(int l, int n) {
  if (l < 0 || n < 0) throw std::invalid_argument("bessel_series_coeff: negative index");
  return factorial(static_cast<unsigned>(l + n)) * pow_rational(Rational(2), l) /
         (factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(2 * l + 2 * n + 1)));
}

namespace {

// Adds norm_value * sum_n (-1)^n c_n(l_bessel) k^{l_bessel+2n} |x|^{2n} body
// to the field, truncated at trunc. body has degree l_body = l_bessel.
void add_bessel_ladder(TaylorField& f, const VecHomoPoly& body, double norm_value, cplx prefactor,
                       int l_bessel, int trunc, double k) {
  HomoPoly r2n = HomoPoly::constant(GaussianRational(1));
  const HomoPoly r2 = r_squared();
  for (int n = 0; l_bessel + 2 * n <= trunc; ++n) {
    if (n > 0) r2n = r2n * r2;
    Rational c = bessel_series_coeff(l_bessel, n);
    if (n % 2 == 1) c = -c;
    VecHomoPoly slab = body.times(r2n).scaled(GaussianRational(c));
    f.add_vecpoly(slab, prefactor * norm_value * std::pow(k, l_bessel + 2 * n));
  }
}

}  // namespace

TaylorField wavefunction_E(int l, int m, int trunc, const WaveParams& params) {
  if (l < 0 || std::abs(m) > l + 1) throw std::invalid_argument("wavefunction_E: |m| must be <= l+1");
  if (trunc < l + 1) throw std::invalid_argument("wavefunction_E: truncation below lowest order");
  NormalizedVecPoly t = vsh_T(l + 1, m);
  TaylorField f(trunc);
  add_bessel_ladder(f, t.body, t.norm.value(), 1.0, l + 1, trunc, params.k());
  return f;
}

TaylorField wavefunction_H(int l, int m, int trunc, const WaveParams& params) {
  if (l < 0 || std::abs(m) > l + 1) throw std::invalid_argument("wavefunction_H: |m| must be <= l+1");
  if (trunc < l) throw std::invalid_argument("wavefunction_H: truncation below lowest order");
  TaylorField f(trunc);
  const cplx pre = cplx(0.0, -1.0) * params.admittance();

  NormalizedVecPoly i_fam = vsh_I(l, m);
  NormTag i_norm = i_fam.norm.times_sqrt(Rational(l + 2, 2 * l + 3));
  add_bessel_ladder(f, i_fam.body, i_norm.value(), pre, l, trunc, params.k());

  NormalizedVecPoly n_fam = vsh_N(l + 2, m);
  NormTag n_norm = n_fam.norm.times_sqrt(Rational(l + 1, 2 * l + 3));
  add_bessel_ladder(f, n_fam.body, n_norm.value(), pre, l + 2, trunc, params.k());
  return f;
}

std::pair<TaylorField, TaylorField> plane_wave_taylor(const std::array<double, 3>& d,
                                                      const std::array<double, 3>& dperp, int trunc,
                                                      const WaveParams& params) {
  auto nrm = [](const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  double dot = d[0] * dperp[0] + d[1] * dperp[1] + d[2] * dperp[2];
  if (std::abs(nrm(d) - 1.0) > 1e-12 || std::abs(nrm(dperp) - 1.0) > 1e-12 ||
      std::abs(dot) > 1e-12)
    throw std::invalid_argument("plane_wave_taylor: d, dperp must be orthonormal");

  const double k = params.k();
  std::array<double, 3> h_dir{d[1] * dperp[2] - d[2] * dperp[1],
                              d[2] * dperp[0] - d[0] * dperp[2],
                              d[0] * dperp[1] - d[1] * dperp[0]};
  double adm = params.admittance();

  TaylorField e(trunc), h(trunc);
  for (int a1 = 0; a1 <= trunc; ++a1)
    for (int a2 = 0; a1 + a2 <= trunc; ++a2)
      for (int a3 = 0; a1 + a2 + a3 <= trunc; ++a3) {
        MultiIndex alpha(a1, a2, a3);
        cplx ik_pow = std::pow(cplx(0.0, k), alpha.order());
        double dal = std::pow(d[0], a1) * std::pow(d[1], a2) * std::pow(d[2], a3);
        double fact = to_double(factorial(static_cast<unsigned>(a1)) *
                                factorial(static_cast<unsigned>(a2)) *
                                factorial(static_cast<unsigned>(a3)));
        cplx c = ik_pow * dal / fact;
        if (c == 0.0) continue;
        e.add(alpha, {c * dperp[0], c * dperp[1], c * dperp[2]});
        h.add(alpha, {adm * c * h_dir[0], adm * c * h_dir[1], adm * c * h_dir[2]});
      }
  return {std::move(e), std::move(h)};
}

cplx spherical_hankel1(int l, double t) {
  if (t == 0.0) throw std::domain_error("spherical_hankel1: t = 0");
  cplx eit = std::exp(cplx(0.0, t));
  cplx h0 = eit / cplx(0.0, t);
  if (l == 0) return h0;
  cplx h1 = -eit * (1.0 / t + cplx(0.0, 1.0) / (t * t));
  if (l == 1) return h1;
  cplx hm = h0, hc = h1;
  for (int n = 1; n < l; ++n) {
    cplx hn = double(2 * n + 1) / t * hc - hm;
    hm = hc;
    hc = hn;
  }
  return hc;
}

std::map<MultiIndex, cplx> point_kernel_taylor(const std::array<double, 3>& y, int max_degree,
                                               const WaveParams& params) {
  const double k = params.k();
  const double ry = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  std::array<cplx, 3> yhat{y[0] / ry, y[1] / ry, y[2] / ry};

  std::map<MultiIndex, cplx> phi;
  const HomoPoly r2 = r_squared();
  for (int l = 0; l <= max_degree; ++l) {
    cplx hl = spherical_hankel1(l, k * ry);
    for (int m = -l; m <= l; ++m) {
      NormalizedPoly ylm = solid_harmonic_Y(l, m);
      cplx w = cplx(0.0, k) * hl * std::conj(ylm.evaluate(yhat));
      if (w == 0.0) continue;
      // j_l(k|x|) Y_l^m(x^) = sum_n (-1)^n c_n k^{l+2n} |x|^{2n} (solid Y_l^m)
      HomoPoly r2n = HomoPoly::constant(GaussianRational(1));
      for (int n = 0; l + 2 * n <= max_degree; ++n) {
        if (n > 0) r2n = r2n * r2;
        Rational c = bessel_series_coeff(l, n);
        if (n % 2 == 1) c = -c;
        HomoPoly slab = (ylm.body * r2n).scaled(GaussianRational(c));
        double scale = ylm.norm.value() * std::pow(k, l + 2 * n);
        for (const auto& [alpha, cc] : slab.coeffs()) phi[alpha] += w * scale * cc.to_complex();
      }
    }
  }
  return phi;
}

std::pair<TaylorField, TaylorField> point_wave_taylor(const cvec3& amplitude,
                                                      const std::array<double, 3>& y, int trunc,
                                                      const WaveParams& params,
                                                      double min_source_distance) {
  const double ry = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  if (ry < min_source_distance)
    throw std::invalid_argument("point_wave_taylor: source inside expansion neighborhood");

  auto phi = point_kernel_taylor(y, trunc + 2, params);

  // grad Phi as a three-component Taylor field.
  TaylorField grad_phi(trunc + 1);
  for (const auto& [alpha, c] : phi)
    for (int j = 1; j <= 3; ++j) {
      if (alpha[j] == 0) continue;
      if (alpha.order() - 1 > trunc + 1) continue;
      grad_phi.add(alpha.minus(j), j, double(alpha[j]) * c);
    }

  // E = curl(a Phi) = grad Phi ^ a.
  TaylorField e(trunc + 1);
  for (const auto& [alpha, g] : grad_phi.coeffs()) {
    cvec3 v{g[1] * amplitude[2] - g[2] * amplitude[1], g[2] * amplitude[0] - g[0] * amplitude[2],
            g[0] * amplitude[1] - g[1] * amplitude[0]};
    e.add(alpha, v);
  }

  TaylorField h = curl_field(e).scaled(1.0 / (cplx(0.0, 1.0) * params.omega * params.mu0));

  // Trim both to the requested order.
  TaylorField e_out(trunc), h_out(trunc);
  for (const auto& [alpha, c] : e.coeffs())
    if (alpha.order() <= trunc) e_out.add(alpha, c);
  for (const auto& [alpha, c] : h.coeffs())
    if (alpha.order() <= trunc) h_out.add(alpha, c);
  return {std::move(e_out), std::move(h_out)};
}

std::pair<TaylorField, TaylorField> synthesize_expansion(const FieldExpansion& f, int trunc,
                                                         const WaveParams& params) {
  TaylorField e(trunc), h(trunc);
  const double ratio = params.mu0 / params.eps0;
  for (const auto& [lm, c] : f.entries()) {
    auto [l, m] = lm;
    if (c.a != 0.0 || c.b != 0.0) {
      TaylorField el = wavefunction_E(l, m, std::max(trunc, l + 1), params);
      TaylorField hl = wavefunction_H(l, m, std::max(trunc, l), params);
      if (c.a != 0.0) {
        e.axpy(c.a, el);
        h.axpy(c.a, hl);
      }
      if (c.b != 0.0) {
        e.axpy(-ratio * c.b, hl);
        h.axpy(c.b, el);
      }
    }
  }
  // Drop any terms beyond trunc introduced by the max() above.
  TaylorField e_out(trunc), h_out(trunc);
  for (const auto& [alpha, c] : e.coeffs())
    if (alpha.order() <= trunc) e_out.add(alpha, c);
  for (const auto& [alpha, c] : h.coeffs())
    if (alpha.order() <= trunc) h_out.add(alpha, c);
  return {std::move(e_out), std::move(h_out)};
}

TaylorField laplacian_field(const TaylorField& f) {
  TaylorField out(f.max_degree() >= 2 ? f.max_degree() - 2 : 0);
  for (int j = 1; j <= 3; ++j) out += differentiate(differentiate(f, j), j);
  return out;
}

}  // namespace mxc
