#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace mxc {

using Field = std::vector<std::complex<double>>;

/// Uniform periodic cube [0, L)^3 with n points per axis and FFT-based
/// spectral calculus. Fields are stored as values, index (i*n + j)*n + k.
///
/// A nonzero dual shift delta means a field is interpreted as a trig
/// polynomial over the shifted frequencies xi + delta; values are still
/// plain point values (the phase handling is internal to the operators).
class SpectralBox {
 public:
  SpectralBox(int n, double length);
  ~SpectralBox();
  SpectralBox(const SpectralBox&) = delete;
  SpectralBox& operator=(const SpectralBox&) = delete;

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double cell_volume() const;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  double coord(int i) const { return spacing() * i; }
  std::array<double, 3> point(int i, int j, int k) const {
    return {coord(i), coord(j), coord(k)};
  }
  /// Signed dual frequency 2 pi k_signed / L for grid index i.
  double freq(int i) const { return freqs_[static_cast<std::size_t>(i)]; }

  Field zeros() const { return Field(size(), 0.0); }

  Field fft(const Field& f) const;
  Field ifft(const Field& f) const;

  struct DualShift {
    DualShift() : delta{0.0, 0.0, 0.0} {}
    std::array<double, 3> delta;
    Field phase;  // e^{+i delta.x}; empty for the zero shift
    bool zero() const { return phase.empty(); }
  };
  DualShift make_shift(const std::array<double, 3>& delta) const;

  Field derivative(const Field& f, int axis, const DualShift& shift = {}) const;
  Field laplacian(const Field& f, const DualShift& shift = {}) const;
  std::array<Field, 3> gradient(const Field& f, const DualShift& shift = {}) const;
  Field divergence(const std::array<Field, 3>& f, const DualShift& shift = {}) const;
  std::array<Field, 3> curl(const std::array<Field, 3>& f, const DualShift& shift = {}) const;

  /// Applies a Fourier multiplier m(xi + delta); m is evaluated per lattice
  /// point through the callback.
  template <class M>
  Field multiplier(const Field& f, const DualShift& shift, M&& m) const;

  /// Bandlimited random field with Gaussian coefficients damped by
  /// exp(-(|k| / k_cut)^2); deterministic in the seed.
  Field random_smooth_field(std::uint64_t seed, double k_cut) const;

  double norm_l2(const Field& f) const;
  double norm_lp(const Field& f, double p) const;
  double norm_linf(const Field& f) const;
  /// L^p norm restricted to points where mask != 0 (integral norm, cell
  /// volume weighted).
  double norm_lp_masked(const Field& f, double p, const std::vector<std::uint8_t>& mask) const;

  /// Trig-series evaluation at arbitrary points arranged as a tensor grid
  /// xs x ys x zs; result indexed (ix*ny + iy)*nz + iz. Exact evaluation of
  /// the interpolating trig polynomial (with dual shift applied when given).
  std::vector<std::complex<double>> evaluate_tensor(const Field& f, const DualShift& shift,
                                                    const std::vector<double>& xs,
                                                    const std::vector<double>& ys,
                                                    const std::vector<double>& zs) const;

 private:
  int n_;
  double length_;
  std::vector<double> freqs_;
  struct FftwPlans;
  std::unique_ptr<FftwPlans> plans_;
};

template <class M>
Field SpectralBox::multiplier(const Field& f, const DualShift& shift, M&& m) const {
  Field g = f;
  if (!shift.zero())
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= std::conj(shift.phase[i]);
  g = fft(g);
  std::size_t idx = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k, ++idx) {
        std::array<double, 3> xi{freq(i) + shift.delta[0], freq(j) + shift.delta[1],
                                 freq(k) + shift.delta[2]};
        g[idx] *= m(xi);
      }
  g = ifft(g);
  if (!shift.zero())
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= shift.phase[i];
  return g;
}

}  // namespace mxc
