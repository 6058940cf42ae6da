#pragma once

#include <utility>

#include "mxc/field_expansion.hpp"
#include "mxc/taylor_field.hpp"

namespace mxc {

struct WaveParams {
  double omega = 1.0;
  double eps0 = 1.0;
  double mu0 = 1.0;

  double k() const;
  /// sqrt(eps0 / mu0), the admittance of the background.
  double admittance() const;
};

/// Exact rational coefficient of t^{l+2n} in the spherical Bessel function
/// j_l, without the (-1)^n sign: (l+n)! 2^l / (n! (2l+2n+1)!).
Rational bessel_series_coeff(int l, int n);

/// Taylor expansion through order trunc of the electric wavefunction with
/// indices (l, m), |m| <= l+1: j_{l+1}(k|x|) T_{l+1}^m(x^). The lowest
/// order is l+1; trunc below that is an error.
TaylorField wavefunction_E(int l, int m, int trunc, const WaveParams& params);

/// Magnetic partner -(i / (omega mu0)) curl E_{l,m}, assembled from its
/// I/N-family series; lowest order l.
TaylorField wavefunction_H(int l, int m, int trunc, const WaveParams& params);

/// Plane-wave pair e^{i k x.d} dperp and sqrt(eps0/mu0) e^{i k x.d} (d ^ dperp);
/// d, dperp must be unit and orthogonal to 1e-12.
std::pair<TaylorField, TaylorField> plane_wave_taylor(const std::array<double, 3>& d,
                                                      const std::array<double, 3>& dperp, int trunc,
                                                      const WaveParams& params);

/// Point-source pair curl(a Phi_y) and (1/(i omega mu0)) curl curl(a Phi_y),
/// with Phi_y(x) = e^{ik|x-y|}/(4 pi |x-y|). Coefficients come from the
/// spherical expansion of Phi_y about the origin (valid for |x| < |y|), so
/// they are series-exact rather than finite-difference approximations.
/// Requires |y| >= min_source_distance.
std::pair<TaylorField, TaylorField> point_wave_taylor(const cvec3& amplitude,
                                                      const std::array<double, 3>& y, int trunc,
                                                      const WaveParams& params,
                                                      double min_source_distance = 0.5);

/// Taylor expansion of the scalar kernel Phi_y about the origin.
std::map<MultiIndex, cplx> point_kernel_taylor(const std::array<double, 3>& y, int max_degree,
                                               const WaveParams& params);

/// Spherical Hankel function of the first kind, by upward recurrence.
cplx spherical_hankel1(int l, double t);

/// Taylor pair of the expansion sum_l,m [ a_{l,m} (E,H)_{l,m}
/// + b_{l,m} (-mu0/eps0 H, E)_{l,m} ] through order trunc.
std::pair<TaylorField, TaylorField> synthesize_expansion(const FieldExpansion& f, int trunc,
                                                         const WaveParams& params);

/// Componentwise Laplacian of a Taylor field.
TaylorField laplacian_field(const TaylorField& f);

}  // namespace mxc
