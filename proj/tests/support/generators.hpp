#pragma once

// Test-only generators and oracles. These stay independent of the library
// paths they are used to check.

#include <vector>

#include "mxc/homopoly.hpp"
#include "mxc/linsolve.hpp"
#include "mxc/rational.hpp"

namespace mxc::testing {

inline std::vector<MultiIndex> monomials_of_degree(int d) {
  std::vector<MultiIndex> out;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) out.emplace_back(a, b, d - a - b);
  return out;
}

inline HomoPoly random_homopoly(int degree, RationalSampler& sampler, int max_num = 6,
                                int max_den = 3, int keep_every = 1) {
  HomoPoly p(degree);
  int count = 0;
  for (const auto& alpha : monomials_of_degree(degree)) {
    if (keep_every > 1 && (count++ % keep_every) != 0) continue;
    p.add_term(alpha, sampler.next_gaussian(max_num, max_den));
  }
  return p;
}

inline VecHomoPoly random_vecpoly(int degree, RationalSampler& sampler) {
  return VecHomoPoly(random_homopoly(degree, sampler), random_homopoly(degree, sampler),
                     random_homopoly(degree, sampler));
}

/// Exact basis of the divergence-free harmonic subspace of degree N,
/// computed as the rational nullspace of the stacked divergence and
/// Laplacian coefficient constraints. Components are stacked j-major.
class DivFreeHarmonicBasis {
 public:
  explicit DivFreeHarmonicBasis(int degree) : degree_(degree), monos_(monomials_of_degree(degree)) {
    const std::size_t nm = monos_.size();
    const std::size_t nvars = 3 * nm;
    std::map<MultiIndex, std::size_t> pos;
    for (std::size_t i = 0; i < nm; ++i) pos[monos_[i]] = i;

    QMatrix rows;
    // divergence rows: one per beta with |beta| = N-1
    for (const auto& beta : monomials_of_degree(degree - 1)) {
      QVector row(nvars, Rational(0));
      for (int j = 1; j <= 3; ++j) {
        MultiIndex alpha = beta.plus(j);
        row[static_cast<std::size_t>(j - 1) * nm + pos.at(alpha)] = Rational(beta[j] + 1);
      }
      rows.push_back(std::move(row));
    }
    // harmonicity rows: per component and beta with |beta| = N-2
    if (degree >= 2)
      for (int j = 1; j <= 3; ++j)
        for (const auto& beta : monomials_of_degree(degree - 2)) {
          QVector row(nvars, Rational(0));
          for (int l = 1; l <= 3; ++l) {
            MultiIndex alpha = beta.plus(l, 2);
            row[static_cast<std::size_t>(j - 1) * nm + pos.at(alpha)] +=
                Rational(static_cast<long>(beta[l] + 1) * (beta[l] + 2));
          }
          rows.push_back(std::move(row));
        }
    basis_ = nullspace(std::move(rows));
  }

  std::size_t dimension() const { return basis_.size(); }
  int degree() const { return degree_; }

  VecHomoPoly random_element(RationalSampler& sampler, int max_num = 4, int max_den = 3) const {
    const std::size_t nm = monos_.size();
    std::array<HomoPoly, 3> comps{HomoPoly(degree_), HomoPoly(degree_), HomoPoly(degree_)};
    for (const auto& vec : basis_) {
      GaussianRational c = sampler.next_gaussian(max_num, max_den);
      if (c.is_zero()) continue;
      for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < nm; ++i) {
          const Rational& entry = vec[static_cast<std::size_t>(j) * nm + i];
          if (entry == 0) continue;
          comps[static_cast<std::size_t>(j)].add_term(monos_[i], c * GaussianRational(entry));
        }
    }
    return VecHomoPoly(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
  }

 private:
  int degree_;
  std::vector<MultiIndex> monos_;
  QMatrix basis_;
};

/// Bonnet three-term recurrence, the oracle for the closed-form Legendre
/// coefficients: (l+1) P_{l+1} = (2l+1) t P_l - l P_{l-1}.
inline std::vector<Rational> legendre_by_recurrence(int l) {
  std::vector<std::vector<Rational>> p;  // p[l][n] = coeff of t^n
  p.push_back({Rational(1)});
  if (l >= 1) p.push_back({Rational(0), Rational(1)});
  for (int m = 1; m < l; ++m) {
    std::vector<Rational> next(static_cast<std::size_t>(m) + 2, Rational(0));
    for (std::size_t n = 0; n < p[static_cast<std::size_t>(m)].size(); ++n)
      next[n + 1] += Rational(2 * m + 1) * p[static_cast<std::size_t>(m)][n] / Rational(m + 1);
    for (std::size_t n = 0; n < p[static_cast<std::size_t>(m - 1)].size(); ++n)
      next[n] -= Rational(m) * p[static_cast<std::size_t>(m - 1)][n] / Rational(m + 1);
    p.push_back(std::move(next));
  }
  // reindex to entry k = coeff of t^{l-k}
  std::vector<Rational> out(static_cast<std::size_t>(l) + 1, Rational(0));
  for (std::size_t n = 0; n < p[static_cast<std::size_t>(l)].size(); ++n)
    out[static_cast<std::size_t>(l) - n] = p[static_cast<std::size_t>(l)][n];
  return out;
}

}  // namespace mxc::testing
