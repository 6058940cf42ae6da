#include <doctest.h>

#include <cmath>

#include "mxc/harmonics.hpp"
#include "mxc/taylor_field.hpp"
#include "mxc/wavefields.hpp"

using namespace mxc;
using C = std::complex<double>;

namespace {

const WaveParams kParams{1.3, 1.0, 1.0};

// max |coeff| of the divergence map
double div_scale(const std::map<MultiIndex, cplx>& m) {
  double s = 0.0;
  for (const auto& [a, c] : m) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

TEST_CASE("wavefunction lowest orders") {
  for (int l = 0; l <= 3; ++l)
    for (int m = -(l + 1); m <= l + 1; ++m) {
      TaylorField e = wavefunction_E(l, m, l + 4, kParams);
      TaylorField h = wavefunction_H(l, m, l + 4, kParams);
      auto lop_e = lowest_order_part(e, 1e-13);
      auto lop_h = lowest_order_part(h, 1e-13);
      CHECK(lop_e.N == l + 1);
      CHECK(lop_h.N == l);
    }
  CHECK_THROWS_WITH_AS(wavefunction_E(2, 0, 2, kParams), "wavefunction_E: truncation below lowest order",
                       std::invalid_argument);
}

TEST_CASE("defining relation: H = -(i/omega mu0) curl E") {
  for (int l = 0; l <= 2; ++l)
    for (int m : {0, 1, l + 1}) {
      int trunc = l + 6;
      TaylorField e = wavefunction_E(l, m, trunc, kParams);
      TaylorField h = wavefunction_H(l, m, trunc, kParams);
      TaylorField curl_e = curl_field(e).scaled(C(0.0, -1.0) / (kParams.omega * kParams.mu0));
      // compare through degree trunc - 1
      double scale = h.max_abs_coeff();
      for (int d = 0; d <= trunc - 1; ++d) {
        auto ha = h.part(d);
        auto ca = curl_e.part(d);
        for (const auto& [alpha, v] : ha)
          for (int j = 0; j < 3; ++j) {
            C other = ca.count(alpha) ? ca.at(alpha)[static_cast<std::size_t>(j)] : C(0.0);
            CHECK(std::abs(v[static_cast<std::size_t>(j)] - other) <= 1e-12 * scale);
          }
      }
    }
}

TEST_CASE("divergence-free degree by degree") {
  TaylorField e = wavefunction_E(1, 1, 7, kParams);
  TaylorField h = wavefunction_H(1, 1, 7, kParams);
  for (const TaylorField* f : {&e, &h}) {
    auto dv = divergence(*f);
    CHECK(div_scale(dv) <= 1e-12 * f->max_abs_coeff());
  }
}

TEST_CASE("Helmholtz consistency across the Taylor ladder") {
  const double k = kParams.k();
  for (int l = 0; l <= 2; ++l) {
    TaylorField e = wavefunction_E(l, 1, l + 7, kParams);
    TaylorField lap = laplacian_field(e);
    // lap(part_n) + k^2 part_{n-2} = 0 for n <= trunc
    double scale = e.max_abs_coeff() * k * k;
    for (int n = 2; n <= l + 7 - 2; ++n) {
      auto lp = lap.part(n - 2);
      auto pp = e.part(n - 2);
      for (const auto& [alpha, v] : lp)
        for (int j = 0; j < 3; ++j) {
          C expect = pp.count(alpha) ? -k * k * pp.at(alpha)[static_cast<std::size_t>(j)] : C(0.0);
          CHECK(std::abs(v[static_cast<std::size_t>(j)] - expect) <= 1e-11 * scale);
        }
    }
  }
}

TEST_CASE("lowest part of H matches the I-family constant") {
  for (int l = 0; l <= 4; ++l)
    for (int m = -(l + 1); m <= l + 1; ++m) {
      TaylorField h = wavefunction_H(l, m, l + 2, kParams);
      auto lop = lowest_order_part(h, 1e-13);
      REQUIRE(lop.N == l);

      NormalizedVecPoly fam = vsh_I(l, m);
      // predicted constant: -i sqrt(eps0/mu0) sqrt((l+2)/(2l+3)) 2^l l!/(2l+1)! k^l
      C constant = C(0.0, -1.0) * kParams.admittance() *
                   std::sqrt(double(l + 2) / double(2 * l + 3)) *
                   to_double(bessel_series_coeff(l, 0)) * std::pow(kParams.k(), l);
      double scale = 0.0;
      for (int j = 1; j <= 3; ++j)
        for (const auto& [alpha, c] : fam.body[j].coeffs())
          scale = std::max(scale, std::abs(constant * fam.norm.value() * c.to_complex()));
      for (int j = 1; j <= 3; ++j) {
        for (const auto& [alpha, c] : fam.body[j].coeffs()) {
          C expect = constant * fam.norm.value() * c.to_complex();
          C got = lop.part[static_cast<std::size_t>(j - 1)].count(alpha)
                      ? lop.part[static_cast<std::size_t>(j - 1)].at(alpha)
                      : C(0.0);
          CHECK(std::abs(got - expect) <= 1e-12 * scale);
        }
        // and nothing outside the family support
        for (const auto& [alpha, c] : lop.part[static_cast<std::size_t>(j - 1)])
          CHECK_FALSE(fam.body[j].coeff(alpha).is_zero());
      }
    }
}

TEST_CASE("plane wave expansion") {
  std::array<double, 3> d{0.0, 0.0, 1.0};
  std::array<double, 3> dp{1.0, 0.0, 0.0};
  auto [e, h] = plane_wave_taylor(d, dp, 6, kParams);

  // degree-0 part is dperp: lowest order 0
  auto lop = lowest_order_part(e, 1e-13);
  CHECK(lop.N == 0);
  CHECK(std::abs(e.coeff(MultiIndex())[0] - 1.0) < 1e-15);

  // coefficient formula (ik)^|alpha| d^alpha / alpha!
  const double k = kParams.k();
  MultiIndex alpha(0, 0, 3);
  C expect = std::pow(C(0.0, k), 3) / 6.0;
  CHECK(std::abs(e.coeff(alpha)[0] - expect) < 1e-15 * std::abs(expect));

  // H direction is d ^ dperp = e2 scaled by the admittance
  CHECK(std::abs(h.coeff(MultiIndex())[1] - kParams.admittance()) < 1e-15);

  // Maxwell residual of the truncation decays with trunc at fixed small x
  std::array<C, 3> x{0.05, 0.02, -0.04};
  double prev = 1e9;
  for (int trunc : {3, 5, 7}) {
    auto [et, ht] = plane_wave_taylor(d, dp, trunc, kParams);
    TaylorField r = curl_field(et);
    r.axpy(C(0.0, -kParams.omega * kParams.mu0), ht);
    auto rv = r.evaluate(x);
    double mag = std::sqrt(std::norm(rv[0]) + std::norm(rv[1]) + std::norm(rv[2]));
    CHECK(mag < prev);
    prev = mag;
  }

  CHECK_THROWS_AS(plane_wave_taylor({0.0, 0.0, 2.0}, dp, 4, kParams), std::invalid_argument);
  CHECK_THROWS_AS(plane_wave_taylor(d, {0.0, 0.2, 1.0}, 4, kParams), std::invalid_argument);
}

TEST_CASE("k -> 0 kills every wavefunction coefficient") {
  WaveParams tiny{1e-8, 1.0, 1.0};
  TaylorField e = wavefunction_E(1, 1, 4, tiny);
  CHECK(e.max_abs_coeff() <= 1e-15);
}

TEST_CASE("point wave expansion") {
  std::array<double, 3> y{1.5, -0.7, 2.0};
  cvec3 a{C(1.0, 0.0), C(0.0, 0.5), C(-0.3, 0.0)};
  auto [e, h] = point_wave_taylor(a, y, 6, kParams);

  // E(0) generically nonzero
  auto e0 = e.coeff(MultiIndex());
  CHECK(std::sqrt(std::norm(e0[0]) + std::norm(e0[1]) + std::norm(e0[2])) > 1e-6);

  // linearity in a
  cvec3 a2{2.0 * a[0], 2.0 * a[1], 2.0 * a[2]};
  auto [e2, h2] = point_wave_taylor(a2, y, 6, kParams);
  for (const auto& [alpha, c] : e.coeffs())
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(e2.coeff(alpha)[static_cast<std::size_t>(j)] - 2.0 * c[static_cast<std::size_t>(j)]) <=
            1e-12 * e.max_abs_coeff());

  CHECK_THROWS_WITH_AS(point_wave_taylor(a, {0.1, 0.0, 0.0}, 4, kParams),
                       "point_wave_taylor: source inside expansion neighborhood",
                       std::invalid_argument);
}

TEST_CASE("point kernel satisfies the Helmholtz equation and matches closed form") {
  std::array<double, 3> y{1.2, 0.9, -1.1};
  const double k = kParams.k();
  auto phi = point_kernel_taylor(y, 10, kParams);

  // closed form at a few sample points
  for (auto x : {std::array<double, 3>{0.1, -0.05, 0.08}, std::array<double, 3>{0.2, 0.1, -0.1}}) {
    C series = 0.0;
    for (const auto& [alpha, c] : phi) {
      C monoval = 1.0;
      for (int j = 0; j < 3; ++j)
        for (int p = 0; p < alpha.a[static_cast<std::size_t>(j)]; ++p) monoval *= x[static_cast<std::size_t>(j)];
      series += c * monoval;
    }
    double dist = std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) +
                            (x[2] - y[2]) * (x[2] - y[2]));
    C closed = std::exp(C(0.0, k * dist)) / (4.0 * std::numbers::pi * dist);
    CHECK(std::abs(series - closed) <= 1e-8 * std::abs(closed));
  }

  // (Lap + k^2) Phi = 0 through the truncation: check residual at points
  TaylorField phi_field(10);
  for (const auto& [alpha, c] : phi) phi_field.add(alpha, 1, c);
  TaylorField resid = laplacian_field(phi_field);
  resid.axpy(k * k, phi_field);
  for (auto x : {std::array<C, 3>{0.05, 0.02, 0.01}, std::array<C, 3>{-0.08, 0.03, 0.06}}) {
    // drop the top two degrees, which the truncated Laplacian cannot cancel
    C acc = 0.0;
    for (const auto& [alpha, c] : resid.coeffs()) {
      if (alpha.order() > 6) continue;
      C monoval = 1.0;
      for (int j = 0; j < 3; ++j)
        for (int p = 0; p < alpha.a[static_cast<std::size_t>(j)]; ++p) monoval *= x[static_cast<std::size_t>(j)];
      acc += c[0] * monoval;
    }
    CHECK(std::abs(acc) < 1e-8);
  }
}

TEST_CASE("synthesized expansions combine the two ladders") {
  FieldExpansion f;
  f.set(1, 0, C(1.0, 0.0), C(0.0, 0.0));
  f.set(2, 1, C(0.0, 0.0), C(0.5, -0.25));
  auto [e, h] = synthesize_expansion(f, 5, kParams);
  // a-entry at l=1 puts H's lowest at 1; b-entry at l=2 puts E's lowest at 2
  auto lop_h = lowest_order_part(h, 1e-13);
  CHECK(lop_h.N == 1);
  auto lop_e = lowest_order_part(e, 1e-13);
  CHECK(lop_e.N == 2);
}
