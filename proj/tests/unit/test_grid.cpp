#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mxc/cgo.hpp"
#include "mxc/grid.hpp"

using namespace mxc;
using C = std::complex<double>;

TEST_CASE("fft round trip and derivative of a single mode") {
  SpectralBox box(16, 2.0 * std::numbers::pi);
  Field f = box.zeros();
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        auto x = box.point(i, j, k);
        f[idx] = std::exp(C(0.0, 3.0 * x[0] - 2.0 * x[2]));
      }
  Field back = box.ifft(box.fft(f));
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(back[i] - f[i]));
  CHECK(worst < 1e-13);

  Field d1 = box.derivative(f, 1);
  Field d3 = box.derivative(f, 3);
  worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(d1[i] - C(0.0, 3.0) * f[i]));
    worst = std::max(worst, std::abs(d3[i] - C(0.0, -2.0) * f[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("shifted ops differentiate the twisted interpolant") {
  SpectralBox box(16, 2.0 * std::numbers::pi);
  std::array<double, 3> delta{0.5, 0.0, 0.0};
  auto shift = box.make_shift(delta);
  // f = e^{i (2 + 0.5) x1}: a single mode of the shifted lattice
  Field f = box.zeros();
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) f[idx] = std::exp(C(0.0, 2.5 * box.coord(i)));
  Field d = box.derivative(f, 1, shift);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(d[i] - C(0.0, 2.5) * f[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("P(grad)^2 equals the componentwise Laplacian") {
  SpectralBox box(24, 2.0 * std::numbers::pi);
  EightField f;
  f.h = box.random_smooth_field(11, 3.0);
  f.e = box.random_smooth_field(12, 3.0);
  for (int d = 0; d < 3; ++d) {
    f.H[static_cast<std::size_t>(d)] = box.random_smooth_field(13 + static_cast<std::uint64_t>(d), 3.0);
    f.E[static_cast<std::size_t>(d)] = box.random_smooth_field(16 + static_cast<std::uint64_t>(d), 3.0);
  }
  EightField pp = apply_P_grad(box, apply_P_grad(box, f, {}), {});
  double worst = 0.0, scale = 0.0;
  auto cmp = [&](const Field& a, const Field& b) {
    Field lap = box.laplacian(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      worst = std::max(worst, std::abs(a[i] - lap[i]));
      scale = std::max(scale, std::abs(lap[i]));
    }
  };
  cmp(pp.h, f.h);
  cmp(pp.e, f.e);
  for (int d = 0; d < 3; ++d) {
    cmp(pp.H[static_cast<std::size_t>(d)], f.H[static_cast<std::size_t>(d)]);
    cmp(pp.E[static_cast<std::size_t>(d)], f.E[static_cast<std::size_t>(d)]);
  }
  CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("paired symbol identity on random constant vectors") {
  std::uint64_t state = 9;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto rnd = [&next]() { return static_cast<double>(next() % 2000) / 1000.0 - 1.0; };

  for (int t = 0; t < 50; ++t) {
    cvec3 xi{C(rnd(), rnd()), C(rnd(), rnd()), C(rnd(), rnd())};
    cvec3 eta{C(rnd(), rnd()), C(rnd(), rnd()), C(rnd(), rnd())};
    EightVec v;
    v.h = C(rnd(), rnd());
    v.e = C(rnd(), rnd());
    for (int d = 0; d < 3; ++d) {
      v.H[static_cast<std::size_t>(d)] = C(rnd(), rnd());
      v.E[static_cast<std::size_t>(d)] = C(rnd(), rnd());
    }
    // Same-symbol pairing with swapped arguments diagonalizes:
    //   P_pm(xi, eta) P_pm(eta, xi) = diag((xi.xi) I4, (eta.eta) I4),
    // and likewise for P_mp. (The mixed-symbol pairing does not: its blocks
    // square a single corner operator.)
    C xx = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    C ee = eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2];
    for (bool pm : {true, false}) {
      EightVec inner = pm ? apply_P_pm_pair(eta, xi, v) : apply_P_mp_pair(eta, xi, v);
      EightVec outer = pm ? apply_P_pm_pair(xi, eta, inner) : apply_P_mp_pair(xi, eta, inner);
      CHECK(std::abs(outer.h - xx * v.h) < 1e-12);
      CHECK(std::abs(outer.e - ee * v.e) < 1e-12);
      for (int d = 0; d < 3; ++d) {
        CHECK(std::abs(outer.H[static_cast<std::size_t>(d)] - xx * v.H[static_cast<std::size_t>(d)]) < 1e-12);
        CHECK(std::abs(outer.E[static_cast<std::size_t>(d)] - ee * v.E[static_cast<std::size_t>(d)]) < 1e-12);
      }
    }
  }
}

TEST_CASE("tensor evaluation reproduces grid values and off-grid modes") {
  SpectralBox box(16, 2.0 * std::numbers::pi);
  Field f = box.zeros();
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        auto x = box.point(i, j, k);
        f[idx] = std::exp(C(0.0, 2.0 * x[0] - x[1])) + 0.5 * std::exp(C(0.0, 3.0 * x[2]));
      }
  std::vector<double> xs{0.123, 1.7}, ys{2.31}, zs{0.05, 4.4, 5.9};
  auto vals = box.evaluate_tensor(f, {}, xs, ys, zs);
  std::size_t q = 0;
  for (double x : xs)
    for (double y : ys)
      for (double z : zs) {
        C expect = std::exp(C(0.0, 2.0 * x - y)) + 0.5 * std::exp(C(0.0, 3.0 * z));
        CHECK(std::abs(vals[q++] - expect) < 1e-12);
      }
}

TEST_CASE("masked norms") {
  SpectralBox box(12, 1.0);
  Field f(box.size(), C(2.0, 0.0));
  auto mask = make_ball_mask(box, 10.0);  // everything
  double full = box.norm_lp_masked(f, 2.0, mask);
  CHECK(full == doctest::Approx(2.0).epsilon(1e-12));
}
