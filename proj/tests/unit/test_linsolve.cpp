#include <doctest.h>

#include "mxc/linsolve.hpp"
#include "support/generators.hpp"

using namespace mxc;

TEST_CASE("solve_exact on consistent and inconsistent systems") {
  GaussianRational one(1), two(2);
  // x + y = 3, x - y = 1 -> x = 2, y = 1
  GRMatrix a{{one, one}, {one, GaussianRational(-1)}};
  GRVector b{GaussianRational(3), one};
  auto x = solve_exact(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == two);
  CHECK((*x)[1] == one);

  // overdetermined inconsistent
  GRMatrix a2{{one}, {one}};
  GRVector b2{one, two};
  CHECK_FALSE(solve_exact(a2, b2).has_value());

  // overdetermined consistent
  GRMatrix a3{{one}, {two}};
  GRVector b3{GaussianRational(3), GaussianRational(6)};
  auto x3 = solve_exact(a3, b3);
  REQUIRE(x3.has_value());
  CHECK((*x3)[0] == GaussianRational(3));
}

TEST_CASE("nullspace dimensions and membership") {
  // single row x + y + z = 0 has a 2-dimensional nullspace
  QMatrix a{{Rational(1), Rational(1), Rational(1)}};
  auto ns = nullspace(a);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + v[1] + v[2] == 0);
}

TEST_CASE("divergence-free harmonic space has dimension 4N + 4") {
  for (int n = 1; n <= 6; ++n) {
    testing::DivFreeHarmonicBasis basis(n);
    CHECK(basis.dimension() == static_cast<std::size_t>(4 * n + 4));
    RationalSampler sampler(1000 + static_cast<std::uint64_t>(n));
    for (int t = 0; t < 3; ++t) {
      VecHomoPoly p = basis.random_element(sampler);
      if (p.is_zero()) continue;
      CHECK(divergence(p).is_zero());
      CHECK(is_harmonic(p));
    }
  }
}
