#include "mxc/orthant_laplace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mxc/admissibility.hpp"
#include "mxc/linsolve.hpp"
#include "mxc/quadrature.hpp"

namespace mxc {

namespace {

Rational multi_factorial(const MultiIndex& alpha) {
  Rational f(1);
  for (int j = 1; j <= 3; ++j) f *= factorial(static_cast<unsigned>(alpha[j]));
  return f;
}

MultiIndex rho_exponent(const MultiIndex& alpha, int face) {
  // alpha_fhat + 1_fhat: zero out the face axis, bump the other two.
  MultiIndex out = alpha;
  out[face] = 0;
  for (int l = 1; l <= 3; ++l)
    if (l != face) out[l] += 1;
  return out;
}

std::vector<MultiIndex> monomials_of_degree(int d) {
  std::vector<MultiIndex> out;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) out.emplace_back(a, b, d - a - b);
  return out;
}

}  // namespace

std::array<RhoPoly, 3> face_transform(const VecHomoPoly& p, int face) {
  if (face < 1 || face > 3) throw std::invalid_argument("face_transform: face must be 1..3");
  std::array<RhoPoly, 3> out{RhoPoly(p.degree() + 2), RhoPoly(p.degree() + 2),
                             RhoPoly(p.degree() + 2)};
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : p[j].coeffs()) {
      if (alpha[face] != 0) continue;  // restriction to x^(face) = 0 kills the term
      out[static_cast<std::size_t>(j - 1)].add_term(rho_exponent(alpha, face),
                                                    c * GaussianRational(multi_factorial(alpha)));
    }
  return out;
}

RhoPoly laplace_poly(const VecHomoPoly& p) {
  if (auto beta = divergence_violation(p)) {
    std::ostringstream os;
    os << "laplace_poly: input is not divergence-free; coefficient identity fails at beta = ("
       << beta->to_string() << ")";
    throw std::invalid_argument(os.str());
  }
  RhoPoly out(p.degree() + 2);
  for (int j = 1; j <= 3; ++j) {
    auto faces = face_transform(p, j);
    out += faces[static_cast<std::size_t>(j - 1)];
  }
  return out;
}

RhoPoly sigma_rho() {
  RhoPoly s(4);
  s.add_term(MultiIndex(0, 2, 2), GaussianRational(1));
  s.add_term(MultiIndex(2, 0, 2), GaussianRational(1));
  s.add_term(MultiIndex(2, 2, 0), GaussianRational(1));
  return s;
}

SigmaDivision divides_sigma(const RhoPoly& q) {
  SigmaDivision out;
  if (q.is_zero()) {
    out.divisible = true;
    out.quotient = RhoPoly::zero(q.degree() >= 4 ? q.degree() - 4 : 0);
    return out;
  }
  const int d = q.degree();
  if (d < 4) return out;

  const auto c_monos = monomials_of_degree(d - 4);
  const auto q_monos = monomials_of_degree(d);
  std::map<MultiIndex, std::size_t> row_of;
  for (std::size_t i = 0; i < q_monos.size(); ++i) row_of[q_monos[i]] = i;

  // sigma * C = q as a linear system in the coefficients of C.
  GRMatrix a(q_monos.size(), GRVector(c_monos.size(), GaussianRational(0)));
  const std::array<MultiIndex, 3> sigma_exps{MultiIndex(0, 2, 2), MultiIndex(2, 0, 2),
                                             MultiIndex(2, 2, 0)};
  for (std::size_t cidx = 0; cidx < c_monos.size(); ++cidx)
    for (const auto& se : sigma_exps) {
      MultiIndex target(c_monos[cidx].a[0] + se.a[0], c_monos[cidx].a[1] + se.a[1],
                        c_monos[cidx].a[2] + se.a[2]);
      a[row_of.at(target)][cidx] += GaussianRational(1);
    }
  GRVector b(q_monos.size(), GaussianRational(0));
  for (const auto& [alpha, c] : q.coeffs()) b[row_of.at(alpha)] = c;

  auto x = solve_exact(std::move(a), std::move(b));
  if (!x) return out;
  out.divisible = true;
  RhoPoly quotient(d - 4);
  for (std::size_t i = 0; i < c_monos.size(); ++i) quotient.add_term(c_monos[i], (*x)[i]);
  out.quotient = std::move(quotient);
  return out;
}

bool divisibility_by_pattern(const VecHomoPoly& p) {
  const int n = p.degree();
  if (n < 1 || p.is_zero())
    throw std::invalid_argument("divisibility_by_pattern: requires a nonzero input of degree >= 1");
  if (auto beta = divergence_violation(p)) {
    std::ostringstream os;
    os << "divisibility_by_pattern: input is not divergence-free (beta = " << beta->to_string()
       << ")";
    throw std::invalid_argument(os.str());
  }
  if (n % 2 == 0 && !harmonic_by_coeffs(p))
    throw std::invalid_argument(
        "divisibility_by_pattern: even degree requires a harmonic input");
  return n % 2 == 1 ? pattern_odd(p) : pattern_even(p);
}

std::complex<double> evaluate_rho(const RhoPoly& q, const std::array<std::complex<double>, 3>& rho) {
  return q.evaluate(rho);
}

std::complex<double> laplace_exact_zeta_dot(const VecHomoPoly& p,
                                            const std::array<std::complex<double>, 3>& zeta) {
  RhoPoly q = laplace_poly(p);
  return q.evaluate({1.0 / zeta[0], 1.0 / zeta[1], 1.0 / zeta[2]});
}

std::complex<double> laplace_exact_parallel(const VecHomoPoly& p, const cvec3& e0,
                                            const cvec3& zeta, double parallel_tol) {
  double zmag = std::sqrt(std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]));
  cplx lambda = 0.0;
  for (int j = 0; j < 3; ++j) lambda += e0[static_cast<std::size_t>(j)] * std::conj(zeta[static_cast<std::size_t>(j)]) / zmag;
  double dev = 0.0, mag = 0.0;
  for (int j = 0; j < 3; ++j) {
    dev = std::max(dev, std::abs(e0[static_cast<std::size_t>(j)] - lambda * zeta[static_cast<std::size_t>(j)] / zmag));
    mag = std::max(mag, std::abs(e0[static_cast<std::size_t>(j)]));
  }
  if (dev > parallel_tol * std::max(mag, 1e-300))
    throw std::invalid_argument("laplace_exact_parallel: E0 is not parallel to zeta");
  return lambda / zmag * laplace_exact_zeta_dot(p, zeta);
}

OrthantIntegral laplace_numeric(const VecHomoPoly& p, const cvec3& e0, const cvec3& zeta, double r,
                                double rel_tol, double variety_tol, double cone_c) {
  cplx zz = zeta[0] * zeta[0] + zeta[1] * zeta[1] + zeta[2] * zeta[2];
  double zmag2 = std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]);
  double zmag = std::sqrt(zmag2);
  if (std::abs(zz) > variety_tol * zmag2)
    throw std::invalid_argument("laplace_numeric: zeta is off the variety zeta.zeta = 0");
  for (int j = 0; j < 3; ++j)
    if (!(zeta[static_cast<std::size_t>(j)].real() / zmag > cone_c))
      throw std::invalid_argument("laplace_numeric: Re zeta_j / |zeta| must exceed the cone constant");

  // Magnitude scale: exact full-orthant integral of |coeff| |E0| x^alpha
  // e^{-Re zeta . x} summed over terms.
  double e0mag = std::max({std::abs(e0[0]), std::abs(e0[1]), std::abs(e0[2])});
  double scale = 0.0;
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : p[j].coeffs()) {
      double term = std::abs(c.to_complex()) * e0mag;
      for (int d = 1; d <= 3; ++d) {
        double re = zeta[static_cast<std::size_t>(d - 1)].real();
        term *= to_double(factorial(static_cast<unsigned>(alpha[d]))) /
                std::pow(re, alpha[d] + 1);
      }
      scale += term;
    }

  OrthantIntegral out;
  out.magnitude_scale = scale;

  // Flatten E0 . P into (a1, a2, a3, coeff) terms once.
  struct Term {
    int a1, a2, a3;
    cplx c;
  };
  std::vector<Term> terms;
  for (int j = 1; j <= 3; ++j) {
    if (e0[static_cast<std::size_t>(j - 1)] == 0.0) continue;
    for (const auto& [alpha, c] : p[j].coeffs())
      terms.push_back({alpha[1], alpha[2], alpha[3],
                       c.to_complex() * e0[static_cast<std::size_t>(j - 1)]});
  }
  const int deg = p.degree();

  cplx prev = 0.0;
  bool have_prev = false;
  for (int n : {24, 32, 48, 64, 96, 128}) {
    std::array<QuadratureRule, 3> rules;
    std::array<std::vector<cplx>, 3> phase;                // e^{-i Im zeta_d x}
    std::array<std::vector<std::vector<double>>, 3> pows;  // pows[d][e][node]
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      rules[sd] = gauss_laguerre(n, zeta[sd].real());
      phase[sd].resize(static_cast<std::size_t>(n));
      pows[sd].assign(static_cast<std::size_t>(deg) + 1,
                      std::vector<double>(static_cast<std::size_t>(n), 1.0));
      for (int i = 0; i < n; ++i) {
        double x = rules[sd].nodes[static_cast<std::size_t>(i)];
        phase[sd][static_cast<std::size_t>(i)] = std::exp(cplx(0.0, -zeta[sd].imag() * x));
        for (int e = 1; e <= deg; ++e)
          pows[sd][static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] =
              pows[sd][static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(i)] * x;
      }
    }
    cplx acc = 0.0;
    double dropped = 0.0;
    const double r2 = r * r;
    for (int i = 0; i < n; ++i) {
      double xi = rules[0].nodes[static_cast<std::size_t>(i)];
      double wi = rules[0].weights[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        double xj = rules[1].nodes[static_cast<std::size_t>(j)];
        double wij = wi * rules[1].weights[static_cast<std::size_t>(j)];
        double rij2 = xi * xi + xj * xj;
        cplx phij = phase[0][static_cast<std::size_t>(i)] * phase[1][static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) {
          double xk = rules[2].nodes[static_cast<std::size_t>(k)];
          double w = wij * rules[2].weights[static_cast<std::size_t>(k)];
          cplx integrand = 0.0;
          for (const auto& t : terms)
            integrand += t.c *
                         (pows[0][static_cast<std::size_t>(t.a1)][static_cast<std::size_t>(i)] *
                          pows[1][static_cast<std::size_t>(t.a2)][static_cast<std::size_t>(j)] *
                          pows[2][static_cast<std::size_t>(t.a3)][static_cast<std::size_t>(k)]);
          if (rij2 + xk * xk > r2) {
            dropped += w * std::abs(integrand);
            continue;
          }
          acc += w * phij * phase[2][static_cast<std::size_t>(k)] * integrand;
        }
      }
    }
    out.value = acc;
    out.nodes_per_axis = n;
    out.truncated_mass = dropped;
    if (have_prev && std::abs(acc - prev) <= rel_tol * std::max(std::abs(acc), 1e-3 * scale)) break;
    prev = acc;
    have_prev = true;
  }
  return out;
}

}  // namespace mxc
