#include <doctest.h>

#include "mxc/admissibility.hpp"
#include "mxc/harmonics.hpp"
#include "mxc/wavefields.hpp"

using namespace mxc;
using C = std::complex<double>;

namespace {

const WaveParams kParams{1.0, 1.0, 1.0};

HomoPoly mono(int a1, int a2, int a3, long num = 1) {
  return HomoPoly::monomial(MultiIndex(a1, a2, a3), GaussianRational(Rational(num)));
}

// the conjugate-paired family member |x|^l (I_l^{2m} + s I_l^{-2m})
VecHomoPoly family_member(int l, int m) {
  int s = inadmissible_pair_sign(l);
  if (m == 0) return vsh_I(l, 0).body;
  VecHomoPoly p = vsh_I(l, 2 * m).body;
  VecHomoPoly q = vsh_I(l, -2 * m).body.scaled(GaussianRational(s));
  return p + q;
}

}  // namespace

TEST_CASE("odd pattern examples") {
  VecHomoPoly a(mono(1, 0, 0), mono(0, 1, 0, -1), HomoPoly::zero(1));
  CHECK(pattern_odd(a));
  VecHomoPoly b(mono(0, 1, 0), HomoPoly::zero(1), HomoPoly::zero(1));
  CHECK_FALSE(pattern_odd(b));
  VecHomoPoly c(mono(0, 1, 0), mono(1, 0, 0, -1), HomoPoly::zero(1));
  CHECK_FALSE(pattern_odd(c));
  CHECK_THROWS_AS(pattern_odd(VecHomoPoly(mono(1, 1, 0), HomoPoly::zero(2), HomoPoly::zero(2))),
                  std::invalid_argument);
}

TEST_CASE("even pattern examples") {
  VecHomoPoly a(mono(0, 1, 1), mono(1, 0, 1), mono(1, 1, 0));
  CHECK(pattern_even(a));
  VecHomoPoly b(mono(2, 0, 0) - mono(0, 2, 0), HomoPoly::zero(2), HomoPoly::zero(2));
  CHECK_FALSE(pattern_even(b));
  // degree-4 instance built to match: components x1 * x1x2x3 etc.
  VecHomoPoly c(mono(2, 1, 1), mono(1, 2, 1), mono(1, 1, 2));
  CHECK(pattern_even(c));
  CHECK_THROWS_AS(pattern_even(VecHomoPoly(mono(1, 0, 0), HomoPoly::zero(1), HomoPoly::zero(1))),
                  std::invalid_argument);
}

TEST_CASE("plane wave pair is admissible with N = 0") {
  auto [e, h] = plane_wave_taylor({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, 4, kParams);
  Verdict v = classify_taylor(e, h, 1e-12);
  CHECK(v.status == Admissibility::Admissible);
  CHECK(v.N == 0);
}

TEST_CASE("point wave pair is admissible with N = 0") {
  auto [e, h] = point_wave_taylor({C(1.0, 0.0), C(0.0, 0.4), C(-0.2, 0.0)}, {1.4, -0.8, 1.9}, 4,
                                  kParams);
  Verdict v = classify_taylor(e, h, 1e-10);
  CHECK(v.status == Admissibility::Admissible);
  CHECK(v.N == 0);
}

TEST_CASE("pattern-matching lowest part drives inadmissibility") {
  // E-side lowest (x1, -x2, 0), H of higher order
  TaylorField e(3);
  e.add(MultiIndex(1, 0, 0), 1, 1.0);
  e.add(MultiIndex(0, 1, 0), 2, -1.0);
  TaylorField h(3);
  h.add(MultiIndex(1, 1, 1), 1, 0.7);
  Verdict v = classify_taylor(e, h, 1e-12);
  CHECK(v.status == Admissibility::Inadmissible);
  CHECK(v.N == 1);
  CHECK(v.attained == "E");
}

TEST_CASE("classify_single uses the duplicated pair") {
  TaylorField e(2);
  e.add(MultiIndex(1, 0, 0), 1, 1.0);
  e.add(MultiIndex(0, 1, 0), 2, -1.0);
  Verdict v = classify_single(e, 1e-12);
  CHECK(v.status == Admissibility::Inadmissible);
  CHECK(v.attained == "EH");
}

TEST_CASE("both-zero input is an error") {
  TaylorField z1(2), z2(2);
  CHECK_THROWS_AS(classify_taylor(z1, z2, 1e-12), std::domain_error);
  CHECK_THROWS_AS(classify_expansion(FieldExpansion{}), std::domain_error);
}

TEST_CASE("expansion view: block order zero is admissible") {
  FieldExpansion f;
  f.set(0, 1, C(1.0, 0.0), C(0.0));
  Verdict v = classify_expansion(f);
  CHECK(v.status == Admissibility::Admissible);
  CHECK(v.N == 0);
}

TEST_CASE("expansion view: exact combinations are inadmissible") {
  for (int l0 = 1; l0 <= 3; ++l0) {
    int s = inadmissible_pair_sign(l0);
    for (int m : inadmissible_m_range(l0)) {
      FieldExpansion f;
      C amp(0.3, -0.8);
      if (m == 0) {
        f.set(l0, 0, amp, C(0.0));
      } else {
        f.set(l0, 2 * m, amp, C(0.0));
        f.set(l0, -2 * m, double(s) * amp, C(0.0));
      }
      // higher tail should not matter
      f.add(l0 + 2, 1, C(0.1, 0.2), C(-0.4, 0.0));
      Verdict v = classify_expansion(f);
      CHECK(v.status == Admissibility::Inadmissible);
      CHECK(v.N == l0);
      CHECK(v.attained == "H");

      // b-side analogue
      FieldExpansion g;
      if (m == 0) {
        g.set(l0, 0, C(0.0), amp);
      } else {
        g.set(l0, 2 * m, C(0.0), amp);
        g.set(l0, -2 * m, C(0.0), double(s) * amp);
      }
      Verdict vg = classify_expansion(g);
      CHECK(vg.status == Admissibility::Inadmissible);
      CHECK(vg.attained == "E");
    }
  }
}

TEST_CASE("expansion view: violations are admissible") {
  // odd m
  FieldExpansion f1;
  f1.set(1, 1, C(1.0, 0.0), C(0.0));
  CHECK(classify_expansion(f1).status == Admissibility::Admissible);

  // wrong pairing sign
  FieldExpansion f2;
  f2.set(1, 2, C(1.0, 0.0), C(0.0));
  f2.set(1, -2, C(-1.0, 0.0), C(0.0));  // odd block wants +1
  CHECK(classify_expansion(f2).status == Admissibility::Admissible);

  // missing partner
  FieldExpansion f3;
  f3.set(2, 2, C(1.0, 0.0), C(0.0));
  CHECK(classify_expansion(f3).status == Admissibility::Admissible);

  // m = 0 with even block order
  FieldExpansion f4;
  f4.set(2, 0, C(1.0, 0.0), C(0.0));
  CHECK(classify_expansion(f4).status == Admissibility::Admissible);

  // the upper bound of the m range never binds: the storable |m| <= l+1
  // evens are exactly the allowed ones (0 excluded for even blocks).
}

TEST_CASE("parity family: members pass, non-members fail") {
  for (int l = 1; l <= 4; ++l) {
    for (int m : inadmissible_m_range(l)) {
      VecHomoPoly fam = family_member(l, m);
      REQUIRE_FALSE(fam.is_zero());
      bool pass = l % 2 == 1 ? pattern_odd(fam) : pattern_even(fam);
      CHECK(pass);
    }
    // every other single (l, m) lowest-order polynomial fails
    for (int m = -(l + 1); m <= l + 1; ++m) {
      bool in_family = (m == 0 && l % 2 == 1);
      if (in_family) continue;
      VecHomoPoly single = vsh_I(l, m).body;
      bool pass = l % 2 == 1 ? pattern_odd(single) : pattern_even(single);
      CHECK_FALSE(pass);
    }
    // wrong-sign conjugate combinations fail
    for (int m : inadmissible_m_range(l)) {
      if (m == 0) continue;
      VecHomoPoly wrong =
          vsh_I(l, 2 * m).body + vsh_I(l, -2 * m).body.scaled(GaussianRational(-inadmissible_pair_sign(l)));
      bool pass = l % 2 == 1 ? pattern_odd(wrong) : pattern_even(wrong);
      CHECK_FALSE(pass);
    }
  }
}

TEST_CASE("view agreement on combinations and random mixtures") {
  std::uint64_t state = 12345;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto uni = [&next]() { return static_cast<double>(next() >> 11) / 9007199254740992.0; };

  auto agree = [&](const FieldExpansion& f) {
    Verdict ve = classify_expansion(f);
    int trunc = f.l_min() + 3;
    auto [e, h] = synthesize_expansion(f, trunc, kParams);
    Verdict vt = classify_taylor(e, h, 1e-9);
    CHECK(to_string(ve.status) == to_string(vt.status));
    if (ve.status != vt.status) {
      MESSAGE("expansion: ", ve.to_json(), " taylor: ", vt.to_json());
    }
  };

  // all combination types with l0 <= 3
  for (int l0 = 1; l0 <= 3; ++l0) {
    int s = inadmissible_pair_sign(l0);
    for (int m : inadmissible_m_range(l0)) {
      FieldExpansion f;
      C amp(uni() - 0.5, uni() - 0.5);
      if (m == 0)
        f.set(l0, 0, amp, C(0.0));
      else {
        f.set(l0, 2 * m, amp, C(0.0));
        f.set(l0, -2 * m, double(s) * amp, C(0.0));
      }
      agree(f);
    }
  }

  // random mixtures (40 here; the acceptance suite runs the full 100)
  for (int t = 0; t < 40; ++t) {
    FieldExpansion f;
    int l0 = 1 + static_cast<int>(next() % 3);
    int n_terms = 1 + static_cast<int>(next() % 3);
    for (int q = 0; q < n_terms; ++q) {
      int m = static_cast<int>(next() % static_cast<std::uint64_t>(2 * l0 + 3)) - (l0 + 1);
      C a(uni() - 0.5, uni() - 0.5);
      C b = (next() % 2) ? C(uni() - 0.5, uni() - 0.5) : C(0.0);
      f.add(l0, m, a, b);
    }
    if (f.empty()) continue;
    agree(f);
  }
}

TEST_CASE("verdict is scale invariant") {
  FieldExpansion f;
  f.set(2, 2, C(0.4, 0.1), C(0.0));
  f.set(2, -2, C(-0.4, -0.1), C(0.0));
  Verdict base = classify_expansion(f);
  for (C scale : {C(3.0, 0.0), C(0.0, -2.0), C(1e-6, 1e-6)}) {
    FieldExpansion g;
    for (const auto& [lm, c] : f.entries()) g.set(lm.first, lm.second, scale * c.a, scale * c.b);
    CHECK(to_string(classify_expansion(g).status) == to_string(base.status));
  }
}

TEST_CASE("undetermined status on tolerance-ambiguous data") {
  TaylorField e(2);
  e.add(MultiIndex(1, 0, 0), 1, 0.5e-8);
  e.add(MultiIndex(0, 2, 0), 1, 1.0);
  TaylorField h = e;
  Verdict v = classify_taylor(e, h, 1e-8);
  CHECK(v.status == Admissibility::Undetermined);
}
