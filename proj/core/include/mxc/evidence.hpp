#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "mxc/cgo.hpp"
#include "mxc/homopoly.hpp"
#include "mxc/medium.hpp"
#include "mxc/taylor_field.hpp"
#include "mxc/wavefields.hpp"

namespace mxc {

/// Exact plane-wave pair sampler (entire background solution).
struct PlaneWave {
  std::array<double, 3> d{0.0, 0.0, 1.0};
  std::array<double, 3> dperp{1.0, 0.0, 0.0};
  WaveParams params;

  void validate() const;
  cvec3 E(const std::array<double, 3>& x) const;
  cvec3 H(const std::array<double, 3>& x) const;
};

/// Point values of a CGO solution (physical fields, exponential included,
/// optionally rescaled by e^{+zeta.x0} to keep magnitudes representable).
class CgoSampler {
 public:
  CgoSampler(const SpectralBox& box, const MediumProfile& profile, const CgoSolution& sol);

  /// Evaluates E and H on the tensor grid xs x ys x zs (box coordinates);
  /// results indexed (ix*ny + iy)*nz + iz and multiplied by
  /// e^{+zeta . rescale_origin}.
  void evaluate(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::vector<double>& zs, std::vector<cvec3>& e_out,
                std::vector<cvec3>& h_out, bool remainder_only = false) const;

  void set_rescale_origin(const std::array<double, 3>& x0) { origin_ = x0; }

 private:
  const SpectralBox& box_;
  const MediumProfile& profile_;
  const CgoSolution& sol_;
  SpectralBox::DualShift shift_;
  std::array<double, 3> origin_{0.0, 0.0, 0.0};
};

struct OrthoCheckResult {
  std::complex<double> lhs{0.0};  // i omega Int_D [(mu-mu0) H0.H - (gamma-eps0) E0.E]
  std::complex<double> rhs{0.0};  // Int_dD n . (H ^ E0 + E ^ H0)
  double discrepancy_rel = 0.0;
  double scale = 0.0;
  bool refused = false;
  std::string reason;
};

/// First equality of the orthogonality chain, checked by quadrature over an
/// axis-aligned box D = [lo, hi]. (E0, H0) is the plane-wave pair; (E, H)
/// the CGO pair. mutation != 0 rescales H by (1 + mutation) to verify the
/// check detects non-solutions.
OrthoCheckResult ortho_identity_check(const SpectralBox& box, const MediumProfile& profile,
                                      double omega, const PlaneWave& incident,
                                      const CgoSolution& cgo, const std::array<double, 3>& lo,
                                      const std::array<double, 3>& hi, int quad_n,
                                      double mutation = 0.0);

/// Full-orthant Laplace transform of an arbitrary scalar polynomial:
/// sum_alpha c_alpha prod_j alpha_j! / zeta_j^{alpha_j + 1}.
std::complex<double> laplace_full_scalar(const HomoPoly& q, const cvec3& zeta);

/// Quadrature of int_{[0,eps]^3} e^{-x.zeta} (e0 . P)(x) dx.
std::complex<double> cube_laplace_quadrature(const VecHomoPoly& p, const cvec3& e0,
                                             const cvec3& zeta, double eps, int quad_n);

struct I0ScalingResult {
  std::vector<double> radii;
  std::vector<std::complex<double>> quad_values;   // truncated-cube quadrature
  std::vector<std::complex<double>> exact_values;  // full-orthant exact
  double fitted_slope = 0.0;
  double exact_identity_error = 0.0;  // worst |I(r z)/ (r^{-(N+3)} I(z)) - 1|
  double quad_vs_exact_rel = 0.0;     // worst relative gap, tail included
  bool witness = true;                // exact value nonzero at zeta*
};

/// Homogeneity sweep of I0(r zeta*) over the given radii; the exact path is
/// the oracle for the fitted slope -(N+3).
I0ScalingResult i0_scaling(const VecHomoPoly& p, const cvec3& e0, const cvec3& zeta_star,
                           const std::vector<double>& radii, double eps_cube, int quad_n);

struct ContradictionConfig {
  MediumProfile medium;
  double omega = 1.0;
  int grid_n = 48;
  std::array<double, 3> corner{0.0, 0.0, 0.0};
  double eps_nbhd = 0.35;  // N_eps^+ = corner + [0, eps]^3
  double d_side = 1.1;     // D = corner + [0, d_side]^3
  std::vector<double> zeta_mags;
  std::array<double, 3> w{0.0, 0.0, 0.0}, wperp{0.0, 0.0, 0.0};
  int quad_n = 20;
  int incident_l = 1, incident_m = 1;  // second-ladder pair index
  int taylor_trunc = 16;
  double c1E = 1.0;
  std::uint64_t seed = 1;
};

struct ContradictionRow {
  double zeta_mag = 0.0;
  // reduced values: every integral is rescaled by e^{+zeta'.corner}
  std::complex<double> I0{0.0}, I1{0.0}, I2{0.0}, I3{0.0}, total_direct{0.0};
  double ratio = 0.0;          // (|I1|+|I2|+|I3|) / |I0|
  double reassembly_rel = 0.0; // |I0+I1+I2+I3 - total| / scale
  double log_abs_I0 = 0.0;     // log |I0| in corner coordinates
  double log_abs_I2 = 0.0;
  // |I0 - closed-form full-orthant value| and its rigorous allowance
  // (quadrature tolerance plus the dominated outside-cube mass)
  double i0_anchor_gap = 0.0;
  double i0_anchor_allow = 0.0;
  double cgo_maxwell_rel = 0.0;
  bool cgo_ok = true;
};

struct ContradictionReport {
  std::vector<ContradictionRow> rows;
  bool ratio_decreasing_tail = false;  // strictly decreasing over last 3 rows
  double i0_slope = 0.0;               // fitted on log|I0| vs log|zeta|
  double i2_slope = 0.0;
  int lowest_order_N = 0;
  std::complex<double> c0{0.0};
  bool no_contrast = false;
  bool inconclusive = false;
  std::string scope_note;
  std::string to_json() const;
  std::string to_csv() const;
};

ContradictionReport contradiction_report(const ContradictionConfig& cfg);

/// The corner configuration shipped with the CLI: smoothed-corner medium
/// with contrast in both gamma and mu, (HE)_{1,1} incident pair, geometric
/// zeta sweep inside the cone.
ContradictionConfig shipped_corner_config(int grid_n = 48);

/// Least-squares slope of y against x with standard error.
std::pair<double, double> fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mxc
