#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mxc/grid.hpp"
#include "mxc/medium.hpp"
#include "mxc/taylor_field.hpp"

namespace mxc {

/// 8-dimensional grid field partitioned (h, H, e, E) with scalar h, e and
/// 3-vector H, E blocks.
struct EightField {
  Field h, e;
  std::array<Field, 3> H{}, E{};

  static EightField zeros(const SpectralBox& box);
  void axpy(std::complex<double> a, const EightField& o);
  void scale(std::complex<double> a);
  double norm_l2(const SpectralBox& box) const;
  double diff_norm_l2(const SpectralBox& box, const EightField& o) const;
};

/// Constant 8-vector with the same partition.
struct EightVec {
  std::complex<double> h{0.0}, e{0.0};
  cvec3 H{{0.0, 0.0, 0.0}}, E{{0.0, 0.0, 0.0}};
  double max_abs() const;
};

/// Grid-sampled coefficient fields of the matrix operators: logs, kappa and
/// their spectral derivatives. gamma, mu must be nowhere vanishing with
/// positive real part (principal log branch).
struct CgoMatrices {
  double omega = 1.0;
  double eps0 = 1.0, mu0 = 1.0;
  double k0 = 1.0;  // background wavenumber
  Field gamma, mu, kappa, alpha, beta;
  std::array<Field, 3> grad_alpha, grad_beta, grad_kappa;
  Field lap_alpha, lap_beta;
  std::array<Field, 6> hess_alpha, hess_beta;  // 11,12,13,22,23,33
  Field ga2, gb2;                              // grad a . grad a (bilinear dot)

  static CgoMatrices build(const SpectralBox& box, const MediumProfile& profile, double omega);
};

// Pointwise matrix appliers. None of these differentiate their argument.
EightField apply_V(const CgoMatrices& m, const EightField& f);
EightField apply_W(const CgoMatrices& m, const EightField& f, bool primed);
/// mutate_sign flips the sign of the off-diagonal grad-kappa coupling; used
/// by the factorization mutation check.
EightField apply_Q(const CgoMatrices& m, const EightField& f, bool mutate_sign = false);
EightField apply_Qp(const CgoMatrices& m, const EightField& f);
EightField apply_W_const(const CgoMatrices& m, const EightVec& v, bool primed);
EightField apply_Q_const(const CgoMatrices& m, const EightVec& v);

/// The first-order block operator applied spectrally.
EightField apply_P_grad(const SpectralBox& box, const EightField& f,
                        const SpectralBox::DualShift& shift);
EightField apply_P_const(const cvec3& c, const EightField& f);
EightVec apply_P_const(const cvec3& c, const EightVec& v);

// Constant-vector symbol forms of the paired block operators.
EightVec apply_P_mp_pair(const cvec3& xi, const cvec3& eta, const EightVec& v);
EightVec apply_P_pm_pair(const cvec3& xi, const cvec3& eta, const EightVec& v);

struct FactorizationReport {
  double max_residual = 0.0;   // max over trials of max|LHS-RHS| / scale
  int trials = 0;
};

/// Applies both sides of the second-order factorization identity (plain or
/// primed) to random smooth 8-fields and reports the worst relative
/// pointwise mismatch.
FactorizationReport factorization_residual(const SpectralBox& box, const CgoMatrices& m,
                                           int trials, std::uint64_t seed, bool primed,
                                           bool mutate_sign = false);

/// Spectral inverse of (Lap + 2 zeta . grad) on the shifted dual lattice.
/// Fields are exchanged as point values of the shifted-lattice trig
/// interpolant.
class FaddeevSolver {
 public:
  FaddeevSolver(const SpectralBox& box, const cvec3& zeta, const std::array<double, 3>& delta,
                double h_min_floor = 1e-9);

  double h_min() const { return h_min_; }
  const SpectralBox::DualShift& shift() const { return shift_; }

  Field solve(const Field& f) const;
  Field apply(const Field& psi) const;
  /// Relative L2 residual of (Lap + 2 zeta.grad) psi - f.
  double residual(const Field& psi, const Field& f) const;
  void solve_eight(EightField& f) const;  // in place, componentwise

 private:
  const SpectralBox& box_;
  cvec3 zeta_;
  SpectralBox::DualShift shift_;
  std::vector<std::complex<double>> inv_symbol_;
  double h_min_ = 0.0;
};

struct CgoOptions {
  cvec3 zeta{};  // requested, on the variety zeta.zeta = 0
  double c1E = 1.0, c2E = 0.0, c1H = 0.0, c2H = 0.0;
  int max_iter = 64;
  double tol = 1e-12;
  double p_norm = 8.0;
  /// Radius of the diagnostic ball mask (centered in the box); <= 0 picks
  /// 0.9 * L/2.
  double mask_radius = 0.0;
};

struct CgoDiagnostics {
  cvec3 zeta_requested{}, zeta_solve{};
  double detune_rel = 0.0;     // |zeta_solve - zeta_requested| / |zeta|
  std::array<double, 3> delta{};
  double h_min = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_update_rel = 0.0;
  double contraction_estimate = 0.0;
  double side_h_rel = 0.0, side_e_rel = 0.0;
  double maxwell_r1_rel = 0.0, maxwell_r2_rel = 0.0;
  double remainder_E_lp = 0.0, remainder_H_lp = 0.0;
  double p_norm = 8.0;
  std::string to_json() const;
};

/// Conjugated CGO solution: the physical fields are
///   E(x) = e^{-zeta_solve . x} (gamma^{-1/2}(x) E0 + Et_per(x) + Et_tw(x)),
/// and likewise for H with mu^{-1/2} and H0. Remainder parts are stored as
/// point values; Et_per is periodic, Et_tw lives on the shifted dual
/// lattice (shift delta in diag).
struct CgoSolution {
  cvec3 zeta_solve{};
  cvec3 E0{}, H0{};
  std::array<Field, 3> Et_per{}, Et_tw{};
  std::array<Field, 3> Ht_per{}, Ht_tw{};
  CgoDiagnostics diag;
};

/// Fixed-point construction of the CGO solution. The solve vector is the
/// requested zeta detuned onto the Maxwell dispersion surface
/// (zeta'.zeta' = -k0^2), which makes the potential of the fixed point
/// compactly supported without any auxiliary cutoff; the leading 8-vector
/// is the kernel-shifted variant with vanishing scalar slots (see cgo.cpp).
CgoSolution neumann_cgo(const SpectralBox& box, const MediumProfile& profile, double omega,
                        const CgoOptions& opts);

/// Conjugated-field triple (constant + periodic + shifted-lattice parts).
struct SplitVec3 {
  cvec3 cst{{0.0, 0.0, 0.0}};
  std::array<Field, 3> per{};  // empty -> absent
  std::array<Field, 3> tw{};
};

std::vector<std::uint8_t> make_ball_mask(const SpectralBox& box, double radius);

/// Relative residuals of the conjugated Maxwell pair
///   (curl - zeta^) uE = i omega mu uH,   (curl - zeta^) uH = -i omega gamma uE
/// over the masked region.
std::pair<double, double> maxwell_residual(const SpectralBox& box, const Field& gamma,
                                           const Field& mu, double omega, const cvec3& zeta,
                                           const SplitVec3& uE, const SplitVec3& uH,
                                           const SpectralBox::DualShift& shift,
                                           const std::vector<std::uint8_t>& mask);

/// Conjugated-field views of a CgoSolution (leading parts folded into per).
SplitVec3 cgo_uE(const SpectralBox& box, const CgoMatrices& m, const CgoSolution& s);
SplitVec3 cgo_uH(const SpectralBox& box, const CgoMatrices& m, const CgoSolution& s);

}  // namespace mxc
