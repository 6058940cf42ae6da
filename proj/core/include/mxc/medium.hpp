#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mxc/grid.hpp"

namespace mxc {

/// Compactly supported radial bump A exp(-(r/width)^2) for r < radius,
/// identically zero beyond. With width ~ radius/5.5 both the truncation
/// jump and the spectral tail sit near machine precision, so the bump is
/// smooth and compact for all practical purposes.
struct BumpSpec {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 1.0;
  double width = 0.2;
  std::complex<double> amplitude{0.0, 0.0};
};

/// Globally periodic band-limited contribution to log(gamma) or log(mu):
/// amp * cos(2 pi k.x / L + phase). Exactly band-limited calculus; used for
/// the operator-identity checks, where compact support is not required.
struct LogModeSpec {
  std::array<int, 3> k{1, 0, 0};
  double amp = 0.1;
  double phase = 0.0;
};

/// Smoothed indicator of the positive orthant anchored at `corner`:
/// the product over axes of a C-infinity step rising from 0 to 1 across
/// [-width, width]. Multiplies the bump profiles when present.
struct CornerStepSpec {
  std::array<double, 3> corner{0.0, 0.0, 0.0};
  double width = 0.05;
};

/// First and second derivatives of the logs at a point, closed form.
struct MediumDerivs {
  std::complex<double> gamma, mu;
  std::array<std::complex<double>, 3> grad_alpha{}, grad_beta{};
  std::array<std::complex<double>, 6> hess_alpha{}, hess_beta{};  // 11,12,13,22,23,33
};

/// Analytic description of the medium on a periodic box: background values
/// plus either compact bumps (gamma = eps0 + sum of bumps) or band-limited
/// log-modes (gamma = eps0 exp(sum of modes)). gamma may be complex, mu is
/// kept real here.
struct MediumProfile {
  double length = 2.0 * 3.14159265358979323846;
  double eps0 = 1.0;
  double mu0 = 1.0;
  std::vector<BumpSpec> gamma_bumps;
  std::vector<BumpSpec> mu_bumps;
  std::vector<LogModeSpec> gamma_log_modes;
  std::vector<LogModeSpec> mu_log_modes;
  std::optional<CornerStepSpec> corner;

  std::complex<double> gamma_at(const std::array<double, 3>& x) const;
  std::complex<double> mu_at(const std::array<double, 3>& x) const;
  MediumDerivs derivs_at(const std::array<double, 3>& x) const;

  bool compactly_supported() const { return gamma_log_modes.empty() && mu_log_modes.empty(); }

  /// Largest |gamma - eps0| + |mu - mu0| on the boundary faces of the box;
  /// must vanish for the compactly supported flavor.
  double boundary_deviation(int samples = 48) const;

  std::string to_json() const;
  static MediumProfile from_json(const std::string& text);

  static MediumProfile homogeneous(double length, double eps0 = 1.0, double mu0 = 1.0);
  /// Compact Gaussian bumps with parameters drawn from the seed.
  static MediumProfile random_smooth(double length, std::uint64_t seed, double max_amplitude = 0.3,
                                     bool with_mu = true, bool complex_gamma = false);
  /// Band-limited random log-profiles (|k|_inf <= band).
  static MediumProfile random_log_modes(double length, std::uint64_t seed, int band = 2,
                                        double max_amplitude = 0.2, bool with_mu = true);
};

double smooth_step(double t, double w);  // 0 below -w, 1 above +w, C-inf

struct MediumGrids {
  Field gamma, mu;
};
MediumGrids sample_medium(const SpectralBox& box, const MediumProfile& profile);

}  // namespace mxc
