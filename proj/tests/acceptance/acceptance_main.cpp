// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <vector>

#include "mxc/admissibility.hpp"
#include "mxc/cgo.hpp"
#include "mxc/evidence.hpp"
#include "mxc/harmonics.hpp"
#include "mxc/legendre.hpp"
#include "mxc/medium.hpp"
#include "mxc/orthant_laplace.hpp"
#include "mxc/quadrature.hpp"
#include "mxc/wavefields.hpp"
#include "support/generators.hpp"

using namespace mxc;
using C = std::complex<double>;

namespace {

int g_failures = 0;

void criterion(int number, const char* label, const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %2d: %-38s (%6.1f s)%s%s\n", ok ? "PASS" : "FAIL", number, label,
              secs, detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

cvec3 cone_zeta(double mag) {
  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  double t = mag / s2;
  return {C(t / s3, t / s2), C(t / s3, -t / s2), C(t / s3, 0.0)};
}

HomoPoly mono(int a1, int a2, int a3, long num = 1) {
  return HomoPoly::monomial(MultiIndex(a1, a2, a3), GaussianRational(Rational(num)));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const WaveParams kParams{1.0, 1.0, 1.0};
const double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------- 1
bool exact_algebra(std::string& detail) {
  RationalSampler sampler(20240811);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int deg = 1 + static_cast<int>(sampler.next_raw() % 6);
    VecHomoPoly p = testing::random_vecpoly(deg, sampler);
    if (divergence(p).is_zero() != divergence_free_by_coeffs(p)) return false;
    if (curl(p).is_zero() != curl_free_by_coeffs(p)) return false;
    if (is_harmonic(p) != harmonic_by_coeffs(p)) return false;
    // exercise the true branches through structured fields
    HomoPoly s = testing::random_homopoly(deg + 1, sampler);
    VecHomoPoly g = gradient(s);
    if (!curl_free_by_coeffs(g)) return false;
    VecHomoPoly t = g.cross_x();
    if (divergence(t).is_zero() != divergence_free_by_coeffs(t)) return false;
    ++checked;
  }
  detail = std::to_string(checked) + " random fields, all three predicates bit-exact";
  return true;
}

// ---------------------------------------------------------------- 2
bool divisibility_equivalence(std::string& detail) {
  // canonical fixtures first
  VecHomoPoly odd_in(mono(1, 0, 0), mono(0, 1, 0, -1), HomoPoly::zero(1));
  if (!laplace_poly(odd_in).is_zero()) return false;
  if (!divides_sigma(laplace_poly(odd_in)).divisible) return false;
  VecHomoPoly even(mono(0, 1, 1), mono(1, 0, 1), mono(1, 1, 0));
  auto even_div = divides_sigma(laplace_poly(even));
  if (!(laplace_poly(even) == sigma_rho())) return false;
  if (!even_div.divisible || !(*even_div.quotient == HomoPoly::constant(GaussianRational(1))))
    return false;
  VecHomoPoly odd_out(mono(0, 1, 0), mono(1, 0, 0, -1), HomoPoly::zero(1));
  if (divides_sigma(laplace_poly(odd_out)).divisible) return false;

  int agreements = 0;
  RationalSampler sampler(777);
  for (int n = 1; n <= 8; ++n) {
    testing::DivFreeHarmonicBasis basis(n);
    int per_degree = n <= 7 ? 63 : 62;  // 7*63 + 62 = 503 >= 500
    for (int t = 0; t < per_degree; ++t) {
      VecHomoPoly p = basis.random_element(sampler);
      if (p.is_zero()) continue;
      bool by_pattern = divisibility_by_pattern(p);
      bool by_sigma = divides_sigma(laplace_poly(p)).divisible;
      if (by_pattern != by_sigma) {
        detail = "disagreement at degree " + std::to_string(n);
        return false;
      }
      ++agreements;
    }
  }
  detail = std::to_string(agreements) + " random divergence-free harmonic fields, zero disagreements";
  return agreements >= 500;
}

// ---------------------------------------------------------------- 3
bool harmonics_suite(std::string& detail) {
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m)
      if (!laplacian(solid_harmonic_Y(l, m).body).is_zero()) return false;

  for (int l = 0; l <= 4; ++l)
    for (int m = -(l + 1); m <= l + 1; ++m) {
      auto fam = vsh_I(l, m);
      if (!curl(fam.body).is_zero() || !divergence(fam.body).is_zero() || !is_harmonic(fam.body))
        return false;
    }

  // orthonormality through quadrature that is exact for these degrees
  SphereRule rule = sphere_product_rule(18, 36);
  struct Entry {
    NormalizedVecPoly f;
  };
  std::vector<NormalizedVecPoly> fams;
  for (int l = 1; l <= 5; ++l)
    for (int m = -l; m <= l; ++m) fams.push_back(vsh_T(l, m));
  for (int l = 0; l <= 4; ++l)
    for (int m = -(l + 1); m <= l + 1; ++m) fams.push_back(vsh_I(l, m));
  for (int l = 1; l <= 5; ++l)
    for (int m = -(l - 1); m <= l - 1; ++m) fams.push_back(vsh_N(l, m));

  // evaluate everything once per sphere point
  std::vector<std::vector<std::array<C, 3>>> values(fams.size());
  for (std::size_t a = 0; a < fams.size(); ++a) {
    values[a].resize(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      std::array<C, 3> x{rule.points[i][0], rule.points[i][1], rule.points[i][2]};
      values[a][i] = fams[a].evaluate(x);
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < fams.size(); ++a)
    for (std::size_t b = a; b < fams.size(); ++b) {
      C acc = 0.0;
      for (std::size_t i = 0; i < rule.points.size(); ++i)
        acc += rule.weights[i] * (values[a][i][0] * std::conj(values[b][i][0]) +
                                  values[a][i][1] * std::conj(values[b][i][1]) +
                                  values[a][i][2] * std::conj(values[b][i][2]));
      double expect = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(acc - expect));
    }
  // scalar family too
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m)
      for (int lp = l; lp <= 6; ++lp)
        for (int mp = -lp; mp <= lp; ++mp) {
          if (lp == l && mp < m) continue;
          C acc = 0.0;
          auto f = solid_harmonic_Y(l, m);
          auto g = solid_harmonic_Y(lp, mp);
          for (std::size_t i = 0; i < rule.points.size(); ++i) {
            std::array<C, 3> x{rule.points[i][0], rule.points[i][1], rule.points[i][2]};
            acc += rule.weights[i] * f.evaluate(x) * std::conj(g.evaluate(x));
          }
          double expect = (l == lp && m == mp) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(acc - expect));
        }
  detail = "worst orthonormality defect " + fmt(worst);
  return worst < 1e-10;
}

// ---------------------------------------------------------------- 4
bool lowest_order_reproduction(std::string& detail) {
  double worst = 0.0;
  for (int l = 0; l <= 4; ++l)
    for (int m = -(l + 1); m <= l + 1; ++m) {
      TaylorField h = wavefunction_H(l, m, l + 2, kParams);
      auto lop = lowest_order_part(h, 1e-13);
      if (lop.N != l) return false;
      NormalizedVecPoly fam = vsh_I(l, m);
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
          auto it = lop.part[static_cast<std::size_t>(j - 1)].find(alpha);
          C got = it == lop.part[static_cast<std::size_t>(j - 1)].end() ? C(0.0) : it->second;
          worst = std::max(worst, std::abs(got - expect) / scale);
        }
        for (const auto& [alpha, c] : lop.part[static_cast<std::size_t>(j - 1)])
          if (fam.body[j].coeff(alpha).is_zero()) return false;
      }
    }
  detail = "worst normalized coefficient gap " + fmt(worst);
  return worst < 1e-12;
}

// ---------------------------------------------------------------- 5
bool admissibility_agreement(std::string& detail) {
  std::uint64_t state = 424242;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto uni = [&next]() { return static_cast<double>(next() >> 11) / 9007199254740992.0; };

  int cases = 0;
  auto agree = [&](const FieldExpansion& f) {
    Verdict ve = classify_expansion(f);
    auto [e, h] = synthesize_expansion(f, f.l_min() + 3, kParams);
    Verdict vt = classify_taylor(e, h, 1e-9);
    ++cases;
    return ve.status == vt.status;
  };

  // every combination type with l0 <= 3, both ladders
  for (int l0 = 1; l0 <= 3; ++l0) {
    int s = inadmissible_pair_sign(l0);
    for (int m : inadmissible_m_range(l0))
      for (bool aside : {true, false}) {
        FieldExpansion f;
        C amp(uni() - 0.5, uni() - 0.5);
        C a = aside ? amp : C(0.0), b = aside ? C(0.0) : amp;
        if (m == 0) {
          f.set(l0, 0, a, b);
        } else {
          f.set(l0, 2 * m, a, b);
          f.set(l0, -2 * m, double(s) * a, double(s) * b);
        }
        f.add(l0 + 1, 0, C(uni(), uni()), C(0.0));  // higher tail
        if (!agree(f)) return false;
      }
  }
  // 100 random mixtures
  for (int t = 0; t < 100; ++t) {
    FieldExpansion f;
    int l0 = 1 + static_cast<int>(next() % 3);
    int n_terms = 1 + static_cast<int>(next() % 3);
    for (int q = 0; q < n_terms; ++q) {
      int m = static_cast<int>(next() % static_cast<std::uint64_t>(2 * l0 + 3)) - (l0 + 1);
      f.add(l0, m, C(uni() - 0.5, uni() - 0.5),
            (next() % 2) ? C(uni() - 0.5, uni() - 0.5) : C(0.0));
    }
    if (f.empty()) continue;
    if (!agree(f)) return false;
  }

  // plane-wave fixture
  auto [pe, ph] = plane_wave_taylor({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, 4, kParams);
  Verdict pw = classify_taylor(pe, ph, 1e-12);
  if (pw.status != Admissibility::Admissible || pw.N != 0) return false;

  detail = std::to_string(cases) + " corpus cases, 100% agreement; plane wave admissible, N = 0";
  return true;
}

// ---------------------------------------------------------------- 6
bool parity_family_converse(std::string& detail) {
  int passed_family = 0, rejected_outside = 0;
  for (int l = 1; l <= 4; ++l) {
    int s = inadmissible_pair_sign(l);
    for (int m : inadmissible_m_range(l)) {
      VecHomoPoly fam =
          m == 0 ? vsh_I(l, 0).body
                 : vsh_I(l, 2 * m).body + vsh_I(l, -2 * m).body.scaled(GaussianRational(s));
      bool pass = l % 2 == 1 ? pattern_odd(fam) : pattern_even(fam);
      if (!pass) return false;
      ++passed_family;
      if (m != 0) {
        VecHomoPoly wrong =
            vsh_I(l, 2 * m).body + vsh_I(l, -2 * m).body.scaled(GaussianRational(-s));
        if (l % 2 == 1 ? pattern_odd(wrong) : pattern_even(wrong)) return false;
        ++rejected_outside;
      }
    }
    for (int m = -(l + 1); m <= l + 1; ++m) {
      if (m == 0 && l % 2 == 1) continue;  // the family member itself
      VecHomoPoly single = vsh_I(l, m).body;
      if (l % 2 == 1 ? pattern_odd(single) : pattern_even(single)) return false;
      ++rejected_outside;
    }
  }
  detail = std::to_string(passed_family) + " family members pass, " +
           std::to_string(rejected_outside) + " outside fields fail";
  return true;
}

// ---------------------------------------------------------------- 7
bool cgo_factorization(std::string& detail) {
  SpectralBox box(48, kTwoPi);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MediumProfile prof = MediumProfile::random_log_modes(kTwoPi, seed * 131, 2, 0.25);
    CgoMatrices m = CgoMatrices::build(box, prof, 1.0);
    auto plain = factorization_residual(box, m, 1, seed, false);
    auto primed = factorization_residual(box, m, 1, seed, true);
    worst = std::max({worst, plain.max_residual, primed.max_residual});
    if (worst >= 1e-8) {
      detail = "residual " + fmt(worst) + " at seed " + std::to_string(seed);
      return false;
    }
    if (seed == 1) {
      auto mutated = factorization_residual(box, m, 1, seed, false, true);
      if (mutated.max_residual < 1e-2) {
        detail = "mutation not detected";
        return false;
      }
    }
  }
  detail = "10 media, worst identity residual " + fmt(worst) + "; mutation detected";
  return true;
}

// ---------------------------------------------------------------- 8
bool cgo_decay(std::string& detail) {
  SpectralBox box(64, kTwoPi);
  MediumProfile prof = MediumProfile::random_smooth(kTwoPi, 909, 0.3);
  std::vector<double> log_z, log_re;
  for (double mag : {8.0, 16.0, 32.0, 64.0}) {
    CgoOptions opts;
    opts.zeta = cone_zeta(mag);
    opts.p_norm = 8.0;
    CgoSolution sol = neumann_cgo(box, prof, 1.0, opts);
    const auto& d = sol.diag;
    if (!d.converged) {
      detail = "no convergence at |zeta| = " + std::to_string(mag);
      return false;
    }
    if (d.side_h_rel >= 1e-8 || d.side_e_rel >= 1e-8) {
      detail = "side conditions " + fmt(std::max(d.side_h_rel, d.side_e_rel));
      return false;
    }
    if (d.maxwell_r1_rel >= 1e-6 || d.maxwell_r2_rel >= 1e-6) {
      detail = "conjugated residual " + fmt(std::max(d.maxwell_r1_rel, d.maxwell_r2_rel));
      return false;
    }
    log_z.push_back(std::log(mag));
    log_re.push_back(std::log(d.remainder_E_lp));
  }
  auto [slope, stderr_] = fit_slope(log_z, log_re);
  double delta = -slope - 3.0 / 8.0;
  detail = "fitted slope " + fmt(slope) + " +- " + fmt(stderr_) +
           ", measured delta " + fmt(delta);
  return slope <= -3.0 / 8.0;
}

// ---------------------------------------------------------------- 9
bool i0_homogeneity(std::string& detail) {
  struct Case {
    VecHomoPoly p;
    int n;
  };
  // Admissible fixtures only: an inadmissible P has sigma | I[P], so its
  // transform vanishes on the whole variety and carries no witness.
  std::vector<Case> cases;
  cases.push_back({VecHomoPoly(mono(0, 1, 0), mono(1, 0, 0, -1), HomoPoly::zero(1)), 1});
  cases.push_back({vsh_T(2, 1).body, 2});
  cases.push_back({vsh_T(3, 1).body, 3});

  double worst_exact = 0.0, worst_quad = 0.0, worst_slope = 0.0;
  for (const auto& c : cases) {
    cvec3 zs = cone_zeta(100.0);
    double zmag = 100.0;
    cvec3 e0{zs[0] / zmag, zs[1] / zmag, zs[2] / zmag};
    auto res = i0_scaling(c.p, e0, zs, {1.0, 2.0, 4.0}, 0.6, 96);
    if (!res.witness) {
      detail = "no dominance witness for the N = " + std::to_string(c.n) + " fixture";
      return false;
    }
    worst_exact = std::max(worst_exact, res.exact_identity_error);
    worst_quad = std::max(worst_quad, res.quad_vs_exact_rel);
    worst_slope = std::max(worst_slope, std::abs(res.fitted_slope + c.n + 3));
  }
  detail = "exact identity " + fmt(worst_exact) + ", quad gap " +
           fmt(worst_quad) + ", worst slope deviation " + fmt(worst_slope);
  return worst_exact < 1e-12 && worst_quad < 1e-6 && worst_slope < 0.05;
}

// ---------------------------------------------------------------- 10
bool orthogonality_identity(std::string& detail) {
  SpectralBox box(48, kTwoPi);
  MediumProfile prof = MediumProfile::random_smooth(kTwoPi, 909, 0.3);
  CgoOptions opts;
  opts.zeta = cone_zeta(8.0);
  CgoSolution sol = neumann_cgo(box, prof, 1.0, opts);
  PlaneWave pw;
  pw.params = kParams;
  double c = kTwoPi / 2.0;
  std::array<double, 3> lo{c - 0.55, c - 0.55, c - 0.55}, hi{c + 0.55, c + 0.55, c + 0.55};
  auto res = ortho_identity_check(box, prof, 1.0, pw, sol, lo, hi, 20);
  if (res.refused) {
    detail = res.reason;
    return false;
  }
  auto mutated = ortho_identity_check(box, prof, 1.0, pw, sol, lo, hi, 20, 0.35);
  detail = "identity discrepancy " + fmt(res.discrepancy_rel) + ", mutated " +
           fmt(mutated.discrepancy_rel);
  return res.discrepancy_rel < 1e-6 && mutated.discrepancy_rel > 1e-2;
}

// ---------------------------------------------------------------- 11
bool contradiction_shadow(std::string& detail) {
  ContradictionConfig cfg = shipped_corner_config(48);
  ContradictionReport rep = contradiction_report(cfg);
  if (rep.no_contrast || rep.inconclusive) {
    detail = "report inconclusive";
    return false;
  }
  double worst_reassembly = 0.0;
  for (const auto& r : rep.rows) worst_reassembly = std::max(worst_reassembly, r.reassembly_rel);
  std::string ratios;
  for (const auto& r : rep.rows) ratios += fmt(r.ratio) + " ";
  detail = "ratios " + ratios + "; reassembly " + fmt(worst_reassembly) +
           "; numerical shadow only: full reproduction of the corner theorem is out of scope";
  return rep.ratio_decreasing_tail && worst_reassembly < 1e-4;
}

}  // namespace

int main() {
  std::printf("mxcorner acceptance suite\n");
  criterion(1, "exact algebra predicate agreement", exact_algebra);
  criterion(2, "divisibility equivalence oracle", divisibility_equivalence);
  criterion(3, "harmonics suite", harmonics_suite);
  criterion(4, "wavefunction lowest-order reproduction", lowest_order_reproduction);
  criterion(5, "admissibility view agreement", admissibility_agreement);
  criterion(6, "parity family converse", parity_family_converse);
  criterion(7, "cgo factorization identities", cgo_factorization);
  criterion(8, "cgo decay and side conditions", cgo_decay);
  criterion(9, "corner-term homogeneity", i0_homogeneity);
  criterion(10, "orthogonality identity", orthogonality_identity);
  criterion(11, "contradiction dominance report", contradiction_shadow);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
