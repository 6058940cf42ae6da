#include <doctest.h>

#include "mxc/legendre.hpp"
#include "support/generators.hpp"

using namespace mxc;

TEST_CASE("closed form matches the recurrence oracle through l = 12") {
  for (int l = 0; l <= 12; ++l) {
    auto closed = legendre_coeffs(l);
    auto oracle = testing::legendre_by_recurrence(l);
    REQUIRE(closed.size() == oracle.size());
    for (std::size_t k = 0; k < closed.size(); ++k) CHECK(closed[k] == oracle[k]);
  }
}

TEST_CASE("low-order values") {
  CHECK(legendre_coeffs(0) == std::vector<Rational>{Rational(1)});
  auto p2 = legendre_coeffs(2);
  CHECK(p2[0] == Rational(3, 2));
  CHECK(p2[1] == Rational(0));
  CHECK(p2[2] == Rational(-1, 2));
}

TEST_CASE("odd-index coefficients vanish") {
  for (int l = 0; l <= 9; ++l) {
    auto p = legendre_coeffs(l);
    for (int k = 1; k <= l; k += 2) CHECK(p[static_cast<std::size_t>(k)] == 0);
  }
}

TEST_CASE("derivative coefficients") {
  // d P_2/dt = 3 t
  auto d = legendre_derivative_coeffs(2, 1);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 0);
  CHECK(d[1] == Rational(3));
  // d^3 P_3 / dt^3 = 15
  auto d3 = legendre_derivative_coeffs(3, 3);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0] == Rational(15));
  CHECK(legendre_derivative_coeffs(2, 3).empty());
}
