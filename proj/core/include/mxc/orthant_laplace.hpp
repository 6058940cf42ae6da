#pragma once

#include <array>
#include <complex>
#include <optional>

#include "mxc/homopoly.hpp"
#include "mxc/taylor_field.hpp"

namespace mxc {

/// Homogeneous polynomial in the reciprocal variables rho = 1/zeta.
using RhoPoly = HomoPoly;

/// Exact face transform over the quarter-plane {x^(l) = 0, other two > 0}:
/// for each component j, the terms with alpha^(l) = 0 map to coefficient
/// p_alpha^(j) * alpha! at rho-exponent alpha_lhat + 1_lhat (the factorial
/// is the product of the component factorials).
std::array<RhoPoly, 3> face_transform(const VecHomoPoly& p, int face);

/// The transform I[P](rho) = sum_j sum_{alpha^(j)=0} p^(j)_alpha alpha!
/// rho^{alpha_jhat + 1_jhat}; homogeneous of degree deg(P) + 2. Requires a
/// divergence-free input; the offending index is reported otherwise.
RhoPoly laplace_poly(const VecHomoPoly& p);

/// sigma(rho) = rho2^2 rho3^2 + rho1^2 rho3^2 + rho1^2 rho2^2.
RhoPoly sigma_rho();

struct SigmaDivision {
  bool divisible = false;
  std::optional<RhoPoly> quotient;  // q = sigma * quotient when divisible
};

/// Exact divisibility by sigma, decided through the linear system relating
/// the coefficients of sigma * C to those of q. The zero polynomial is
/// divisible with quotient zero; nonzero q of degree < 4 is not.
SigmaDivision divides_sigma(const RhoPoly& q);

/// Parity-pattern route to the same predicate: odd degree uses the
/// x^(j)-divisibility pattern, even degree the cross-product pattern.
/// Preconditions (degree >= 1, divergence-free, and harmonicity for even
/// degree) are enforced, not assumed.
bool divisibility_by_pattern(const VecHomoPoly& p);

std::complex<double> evaluate_rho(const RhoPoly& q, const std::array<std::complex<double>, 3>& rho);

/// I[P] evaluated at rho = 1/zeta, i.e. the full-orthant Laplace transform
/// of zeta . P at zeta.
std::complex<double> laplace_exact_zeta_dot(const VecHomoPoly& p,
                                            const std::array<std::complex<double>, 3>& zeta);

/// Full-orthant transform of E0 . P for E0 parallel to the unit zeta
/// direction; throws if E0 is not parallel to zeta.
std::complex<double> laplace_exact_parallel(const VecHomoPoly& p, const cvec3& e0,
                                            const cvec3& zeta, double parallel_tol = 1e-9);

struct OrthantIntegral {
  std::complex<double> value{0.0};
  int nodes_per_axis = 0;
  /// Quadrature mass dropped by the |x| <= R truncation.
  double truncated_mass = 0.0;
  /// Magnitude of the full-orthant integral of |E0 . P| e^{-Re zeta . x},
  /// the natural scale for relative comparisons.
  double magnitude_scale = 0.0;
};

/// Numeric quadrature of int_{K, |x| <= R} e^{-x.zeta} E0 . P dx by tensor
/// Gauss-Laguerre scaled componentwise by Re zeta. Requires zeta on the
/// variety (zeta.zeta = 0 within variety_tol * |zeta|^2) and
/// min_j Re zeta_j / |zeta| > cone_c.
OrthantIntegral laplace_numeric(const VecHomoPoly& p, const cvec3& e0, const cvec3& zeta, double r,
                                double rel_tol = 1e-8, double variety_tol = 1e-10,
                                double cone_c = 0.0);

}  // namespace mxc
