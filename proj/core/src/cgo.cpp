#include "mxc/cgo.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mxc {

using C = std::complex<double>;

namespace {

inline C dot3(const cvec3& a, const cvec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline cvec3 cross3(const cvec3& a, const cvec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double abs3(const cvec3& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

}  // namespace

EightField EightField::zeros(const SpectralBox& box) {
  EightField f;
  f.h = box.zeros();
  f.e = box.zeros();
  for (auto& c : f.H) c = box.zeros();
  for (auto& c : f.E) c = box.zeros();
  return f;
}

void EightField::axpy(C a, const EightField& o) {
  auto ax = [a](Field& x, const Field& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * y[i];
  };
  ax(h, o.h);
  ax(e, o.e);
  for (int d = 0; d < 3; ++d) {
    ax(H[static_cast<std::size_t>(d)], o.H[static_cast<std::size_t>(d)]);
    ax(E[static_cast<std::size_t>(d)], o.E[static_cast<std::size_t>(d)]);
  }
}

void EightField::scale(C a) {
  auto sc = [a](Field& x) {
    for (auto& v : x) v *= a;
  };
  sc(h);
  sc(e);
  for (auto& c : H) sc(c);
  for (auto& c : E) sc(c);
}

double EightField::norm_l2(const SpectralBox& box) const {
  double acc = 0.0;
  auto add = [&acc](const Field& x) {
    for (const auto& v : x) acc += std::norm(v);
  };
  add(h);
  add(e);
  for (const auto& c : H) add(c);
  for (const auto& c : E) add(c);
  return std::sqrt(acc * box.cell_volume());
}

double EightField::diff_norm_l2(const SpectralBox& box, const EightField& o) const {
  double acc = 0.0;
  auto add = [&acc](const Field& x, const Field& y) {
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i] - y[i]);
  };
  add(h, o.h);
  add(e, o.e);
  for (int d = 0; d < 3; ++d) {
    add(H[static_cast<std::size_t>(d)], o.H[static_cast<std::size_t>(d)]);
    add(E[static_cast<std::size_t>(d)], o.E[static_cast<std::size_t>(d)]);
  }
  return std::sqrt(acc * box.cell_volume());
}

double EightVec::max_abs() const {
  double m = std::max(std::abs(h), std::abs(e));
  for (int d = 0; d < 3; ++d)
    m = std::max({m, std::abs(H[static_cast<std::size_t>(d)]), std::abs(E[static_cast<std::size_t>(d)])});
  return m;
}

CgoMatrices CgoMatrices::build(const SpectralBox& box, const MediumProfile& profile, double omega) {
  CgoMatrices m;
  m.omega = omega;
  m.eps0 = profile.eps0;
  m.mu0 = profile.mu0;
  m.k0 = omega * std::sqrt(profile.eps0 * profile.mu0);

  if (profile.compactly_supported() && profile.boundary_deviation() > 1e-10)
    throw std::invalid_argument("CgoMatrices: medium must equal the background near the box boundary");

  const std::size_t total = box.size();
  m.gamma.resize(total);
  m.mu.resize(total);
  m.kappa.resize(total);
  m.alpha.resize(total);
  m.beta.resize(total);
  for (auto* f : {&m.lap_alpha, &m.lap_beta, &m.ga2, &m.gb2}) f->resize(total);
  for (auto* g : {&m.grad_alpha, &m.grad_beta, &m.grad_kappa})
    for (auto& c : *g) c.resize(total);
  for (auto* h : {&m.hess_alpha, &m.hess_beta})
    for (auto& c : *h) c.resize(total);

  // The profile is analytic, so all coefficient fields come from closed
  // forms; the spectral calculus is reserved for the unknowns. grad kappa
  // uses kappa (grad alpha + grad beta)/2, which is an identity of the logs.
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        MediumDerivs d = profile.derivs_at(box.point(i, j, k));
        if (!(d.gamma.real() > 0.0) || !(d.mu.real() > 0.0))
          throw std::domain_error("CgoMatrices: gamma or mu with nonpositive real part (log branch)");
        m.gamma[idx] = d.gamma;
        m.mu[idx] = d.mu;
        m.alpha[idx] = std::log(d.gamma);
        m.beta[idx] = std::log(d.mu);
        C kap = omega * std::sqrt(d.gamma * d.mu);
        m.kappa[idx] = kap;
        C ga2 = 0.0, gb2 = 0.0;
        for (int c = 0; c < 3; ++c) {
          auto sc = static_cast<std::size_t>(c);
          m.grad_alpha[sc][idx] = d.grad_alpha[sc];
          m.grad_beta[sc][idx] = d.grad_beta[sc];
          m.grad_kappa[sc][idx] = 0.5 * kap * (d.grad_alpha[sc] + d.grad_beta[sc]);
          ga2 += d.grad_alpha[sc] * d.grad_alpha[sc];
          gb2 += d.grad_beta[sc] * d.grad_beta[sc];
        }
        m.ga2[idx] = ga2;
        m.gb2[idx] = gb2;
        for (int c = 0; c < 6; ++c) {
          auto sc = static_cast<std::size_t>(c);
          m.hess_alpha[sc][idx] = d.hess_alpha[sc];
          m.hess_beta[sc][idx] = d.hess_beta[sc];
        }
        m.lap_alpha[idx] = d.hess_alpha[0] + d.hess_alpha[3] + d.hess_alpha[5];
        m.lap_beta[idx] = d.hess_beta[0] + d.hess_beta[3] + d.hess_beta[5];
      }
  return m;
}

namespace {

// Hessian-vector product with packed symmetric entries 11,12,13,22,23,33.
inline cvec3 hess_apply(const std::array<Field, 6>& hess, std::size_t i, const cvec3& v) {
  C h11 = hess[0][i], h12 = hess[1][i], h13 = hess[2][i];
  C h22 = hess[3][i], h23 = hess[4][i], h33 = hess[5][i];
  return {h11 * v[0] + h12 * v[1] + h13 * v[2], h12 * v[0] + h22 * v[1] + h23 * v[2],
          h13 * v[0] + h23 * v[1] + h33 * v[2]};
}

inline cvec3 at(const std::array<Field, 3>& f, std::size_t i) {
  return {f[0][i], f[1][i], f[2][i]};
}

inline void put(EightField& out, std::size_t i, C h, const cvec3& H, C e, const cvec3& E) {
  out.h[i] = h;
  out.e[i] = e;
  for (int d = 0; d < 3; ++d) {
    out.H[static_cast<std::size_t>(d)][i] = H[static_cast<std::size_t>(d)];
    out.E[static_cast<std::size_t>(d)][i] = E[static_cast<std::size_t>(d)];
  }
}

}  // namespace

EightField apply_V(const CgoMatrices& m, const EightField& f) {
  EightField out = f;  // shape only
  const C iw(0.0, m.omega);
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    cvec3 ga = at(m.grad_alpha, i), gb = at(m.grad_beta, i);
    cvec3 fH = at(f.H, i), fE = at(f.E, i);
    C h = iw * m.mu[i] * f.h[i] + dot3(ga, fE);
    cvec3 H{iw * m.mu[i] * fH[0] + f.e[i] * ga[0], iw * m.mu[i] * fH[1] + f.e[i] * ga[1],
            iw * m.mu[i] * fH[2] + f.e[i] * ga[2]};
    C e = dot3(gb, fH) + iw * m.gamma[i] * f.e[i];
    cvec3 E{f.h[i] * gb[0] + iw * m.gamma[i] * fE[0], f.h[i] * gb[1] + iw * m.gamma[i] * fE[1],
            f.h[i] * gb[2] + iw * m.gamma[i] * fE[2]};
    put(out, i, h, H, e, E);
  }
  return out;
}

EightField apply_W(const CgoMatrices& m, const EightField& f, bool primed) {
  EightField out = f;
  const C ii(0.0, 1.0);
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    // W uses (grad alpha, grad beta); the primed variant swaps them.
    cvec3 a = primed ? at(m.grad_beta, i) : at(m.grad_alpha, i);
    cvec3 b = primed ? at(m.grad_alpha, i) : at(m.grad_beta, i);
    C ik = ii * m.kappa[i];
    cvec3 fH = at(f.H, i), fE = at(f.E, i);
    cvec3 axE = cross3(a, fE), bxH = cross3(b, fH);
    C h = ik * f.h[i] + 0.5 * dot3(a, fE);
    cvec3 H{ik * fH[0] + 0.5 * (f.e[i] * a[0] + axE[0]), ik * fH[1] + 0.5 * (f.e[i] * a[1] + axE[1]),
            ik * fH[2] + 0.5 * (f.e[i] * a[2] + axE[2])};
    C e = ik * f.e[i] + 0.5 * dot3(b, fH);
    cvec3 E{ik * fE[0] + 0.5 * (f.h[i] * b[0] - bxH[0]), ik * fE[1] + 0.5 * (f.h[i] * b[1] - bxH[1]),
            ik * fE[2] + 0.5 * (f.h[i] * b[2] - bxH[2])};
    put(out, i, h, H, e, E);
  }
  return out;
}

EightField apply_Q(const CgoMatrices& m, const EightField& f, bool mutate_sign) {
  EightField out = f;
  const C two_i = mutate_sign ? C(0.0, -2.0) : C(0.0, 2.0);
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    C k2 = m.kappa[i] * m.kappa[i];
    cvec3 gk = at(m.grad_kappa, i);
    cvec3 fH = at(f.H, i), fE = at(f.E, i);
    cvec3 hessH = hess_apply(m.hess_alpha, i, fH);
    cvec3 hessE = hess_apply(m.hess_beta, i, fE);

    C h = (-k2 + 0.25 * m.ga2[i] + 0.5 * m.lap_alpha[i]) * f.h[i] + two_i * dot3(gk, fE);
    C e = (-k2 + 0.25 * m.gb2[i] + 0.5 * m.lap_beta[i]) * f.e[i] + two_i * dot3(gk, fH);
    cvec3 H, E;
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      H[sd] = (-k2 + 0.25 * m.ga2[i]) * fH[sd] + hessH[sd] - 0.5 * m.lap_alpha[i] * fH[sd] +
              two_i * f.e[i] * gk[sd];
      E[sd] = (-k2 + 0.25 * m.gb2[i]) * fE[sd] + hessE[sd] - 0.5 * m.lap_beta[i] * fE[sd] +
              two_i * f.h[i] * gk[sd];
    }
    put(out, i, h, H, e, E);
  }
  return out;
}

EightField apply_Qp(const CgoMatrices& m, const EightField& f) {
  EightField out = f;
  const C two_i(0.0, 2.0);
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    C k2 = m.kappa[i] * m.kappa[i];
    cvec3 gk = at(m.grad_kappa, i);
    cvec3 fH = at(f.H, i), fE = at(f.E, i);
    cvec3 hessH = hess_apply(m.hess_beta, i, fH);
    cvec3 hessE = hess_apply(m.hess_alpha, i, fE);
    cvec3 gkxE = cross3(gk, fE), gkxH = cross3(gk, fH);

    C h = (-k2 + 0.25 * m.gb2[i] - 0.5 * m.lap_beta[i]) * f.h[i];
    C e = (-k2 + 0.25 * m.ga2[i] - 0.5 * m.lap_alpha[i]) * f.e[i];
    cvec3 H, E;
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      H[sd] = (-k2 + 0.25 * m.gb2[i]) * fH[sd] - hessH[sd] + 0.5 * m.lap_beta[i] * fH[sd] +
              two_i * gkxE[sd];
      E[sd] = (-k2 + 0.25 * m.ga2[i]) * fE[sd] - hessE[sd] + 0.5 * m.lap_alpha[i] * fE[sd] -
              two_i * gkxH[sd];
    }
    put(out, i, h, H, e, E);
  }
  return out;
}

EightField apply_W_const(const CgoMatrices& m, const EightVec& v, bool primed) {
  // Pointwise, so broadcasting then applying is exact.
  EightField f;
  std::size_t total = m.gamma.size();
  f.h.assign(total, v.h);
  f.e.assign(total, v.e);
  for (int d = 0; d < 3; ++d) {
    f.H[static_cast<std::size_t>(d)].assign(total, v.H[static_cast<std::size_t>(d)]);
    f.E[static_cast<std::size_t>(d)].assign(total, v.E[static_cast<std::size_t>(d)]);
  }
  return apply_W(m, f, primed);
}

EightField apply_Q_const(const CgoMatrices& m, const EightVec& v) {
  EightField f;
  std::size_t total = m.gamma.size();
  f.h.assign(total, v.h);
  f.e.assign(total, v.e);
  for (int d = 0; d < 3; ++d) {
    f.H[static_cast<std::size_t>(d)].assign(total, v.H[static_cast<std::size_t>(d)]);
    f.E[static_cast<std::size_t>(d)].assign(total, v.E[static_cast<std::size_t>(d)]);
  }
  return apply_Q(m, f);
}

EightField apply_P_grad(const SpectralBox& box, const EightField& f,
                        const SpectralBox::DualShift& shift) {
  EightField out;
  out.h = box.divergence(f.E, shift);
  auto grad_e = box.gradient(f.e, shift);
  auto curl_E = box.curl(f.E, shift);
  out.e = box.divergence(f.H, shift);
  auto grad_h = box.gradient(f.h, shift);
  auto curl_H = box.curl(f.H, shift);
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    out.H[sd] = grad_e[sd];
    out.E[sd] = grad_h[sd];
    for (std::size_t i = 0; i < out.H[sd].size(); ++i) {
      out.H[sd][i] -= curl_E[sd][i];
      out.E[sd][i] += curl_H[sd][i];
    }
  }
  return out;
}

EightField apply_P_const(const cvec3& c, const EightField& f) {
  EightField out = f;
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    cvec3 fH = at(f.H, i), fE = at(f.E, i);
    cvec3 cxE = cross3(c, fE), cxH = cross3(c, fH);
    C h = dot3(c, fE);
    C e = dot3(c, fH);
    cvec3 H{f.e[i] * c[0] - cxE[0], f.e[i] * c[1] - cxE[1], f.e[i] * c[2] - cxE[2]};
    cvec3 E{f.h[i] * c[0] + cxH[0], f.h[i] * c[1] + cxH[1], f.h[i] * c[2] + cxH[2]};
    put(out, i, h, H, e, E);
  }
  return out;
}

EightVec apply_P_const(const cvec3& c, const EightVec& v) {
  EightVec out;
  out.h = dot3(c, v.E);
  out.e = dot3(c, v.H);
  cvec3 cxE = cross3(c, v.E), cxH = cross3(c, v.H);
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    out.H[sd] = v.e * c[sd] - cxE[sd];
    out.E[sd] = v.h * c[sd] + cxH[sd];
  }
  return out;
}

EightVec apply_P_mp_pair(const cvec3& xi, const cvec3& eta, const EightVec& v) {
  EightVec out;
  out.h = dot3(xi, v.E);
  cvec3 xixE = cross3(xi, v.E);
  cvec3 etaxH = cross3(eta, v.H);
  out.e = dot3(eta, v.H);
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    out.H[sd] = v.e * xi[sd] - xixE[sd];
    out.E[sd] = v.h * eta[sd] + etaxH[sd];
  }
  return out;
}

EightVec apply_P_pm_pair(const cvec3& xi, const cvec3& eta, const EightVec& v) {
  EightVec out;
  out.h = dot3(xi, v.E);
  cvec3 xixE = cross3(xi, v.E);
  cvec3 etaxH = cross3(eta, v.H);
  out.e = dot3(eta, v.H);
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    out.H[sd] = v.e * xi[sd] + xixE[sd];
    out.E[sd] = v.h * eta[sd] - etaxH[sd];
  }
  return out;
}

FactorizationReport factorization_residual(const SpectralBox& box, const CgoMatrices& m,
                                           int trials, std::uint64_t seed, bool primed,
                                           bool mutate_sign) {
  FactorizationReport report;
  report.trials = trials;
  // Band-limited probe fields (hard cut at 2.5 * k_cut) leave headroom for
  // the coefficient spectra in the second-order products.
  const double k_cut = box.n() / 12.0;
  for (int t = 0; t < trials; ++t) {
    EightField f;
    f.h = box.random_smooth_field(seed + 16 * static_cast<std::uint64_t>(t) + 1, k_cut);
    f.e = box.random_smooth_field(seed + 16 * static_cast<std::uint64_t>(t) + 2, k_cut);
    for (int d = 0; d < 3; ++d) {
      f.H[static_cast<std::size_t>(d)] =
          box.random_smooth_field(seed + 16 * static_cast<std::uint64_t>(t) + 3 + static_cast<std::uint64_t>(d), k_cut);
      f.E[static_cast<std::size_t>(d)] =
          box.random_smooth_field(seed + 16 * static_cast<std::uint64_t>(t) + 6 + static_cast<std::uint64_t>(d), k_cut);
    }

    EightField lhs;
    if (!primed) {
      // (P(grad) + W)(P(grad) - W') f  vs  Lap f - Q f
      EightField inner = apply_P_grad(box, f, {});
      inner.axpy(-1.0, apply_W(m, f, true));
      lhs = apply_P_grad(box, inner, {});
      lhs.axpy(1.0, apply_W(m, inner, false));
    } else {
      EightField inner = apply_P_grad(box, f, {});
      inner.axpy(1.0, apply_W(m, f, false));
      lhs = apply_P_grad(box, inner, {});
      lhs.axpy(-1.0, apply_W(m, inner, true));
    }
    EightField lap;
    lap.h = box.laplacian(f.h);
    lap.e = box.laplacian(f.e);
    for (int d = 0; d < 3; ++d) {
      lap.H[static_cast<std::size_t>(d)] = box.laplacian(f.H[static_cast<std::size_t>(d)]);
      lap.E[static_cast<std::size_t>(d)] = box.laplacian(f.E[static_cast<std::size_t>(d)]);
    }
    EightField q = primed ? apply_Qp(m, f) : apply_Q(m, f, mutate_sign);
    lap.axpy(-1.0, q);  // rhs = Lap f - Q f

    double scale = 0.0, worst = 0.0;
    auto compare = [&](const Field& a, const Field& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max({scale, std::abs(b[i])});
        worst = std::max(worst, std::abs(a[i] - b[i]));
      }
    };
    compare(lhs.h, lap.h);
    compare(lhs.e, lap.e);
    for (int d = 0; d < 3; ++d) {
      compare(lhs.H[static_cast<std::size_t>(d)], lap.H[static_cast<std::size_t>(d)]);
      compare(lhs.E[static_cast<std::size_t>(d)], lap.E[static_cast<std::size_t>(d)]);
    }
    report.max_residual = std::max(report.max_residual, worst / std::max(scale, 1e-300));
  }
  return report;
}

FaddeevSolver::FaddeevSolver(const SpectralBox& box, const cvec3& zeta,
                             const std::array<double, 3>& delta, double h_min_floor)
    : box_(box), zeta_(zeta) {
  shift_ = box.make_shift(delta);
  inv_symbol_.resize(box.size());
  h_min_ = std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        std::array<double, 3> xi{box.freq(i) + delta[0], box.freq(j) + delta[1],
                                 box.freq(k) + delta[2]};
        C s = -(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) +
              C(0.0, 2.0) * (zeta[0] * xi[0] + zeta[1] * xi[1] + zeta[2] * xi[2]);
        double mag = std::abs(s);
        h_min_ = std::min(h_min_, mag);
        inv_symbol_[idx] = mag > 0.0 ? 1.0 / s : C(0.0);
      }
  if (!(h_min_ > h_min_floor)) {
    std::ostringstream os;
    os << "FaddeevSolver: resonant lattice (|symbol| min " << h_min_
       << "); perturb zeta or grid";
    throw std::runtime_error(os.str());
  }
}

Field FaddeevSolver::solve(const Field& f) const {
  Field g = f;
  if (!shift_.zero())
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= std::conj(shift_.phase[i]);
  g = box_.fft(g);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= inv_symbol_[i];
  g = box_.ifft(g);
  if (!shift_.zero())
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= shift_.phase[i];
  return g;
}

Field FaddeevSolver::apply(const Field& psi) const {
  Field out = box_.laplacian(psi, shift_);
  auto grad = box_.gradient(psi, shift_);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += 2.0 * (zeta_[0] * grad[0][i] + zeta_[1] * grad[1][i] + zeta_[2] * grad[2][i]);
  return out;
}

double FaddeevSolver::residual(const Field& psi, const Field& f) const {
  Field r = apply(psi);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    num += std::norm(r[i] - f[i]);
    den += std::norm(f[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

void FaddeevSolver::solve_eight(EightField& f) const {
  f.h = solve(f.h);
  f.e = solve(f.e);
  for (int d = 0; d < 3; ++d) {
    f.H[static_cast<std::size_t>(d)] = solve(f.H[static_cast<std::size_t>(d)]);
    f.E[static_cast<std::size_t>(d)] = solve(f.E[static_cast<std::size_t>(d)]);
  }
}

std::string CgoDiagnostics::to_json() const {
  nlohmann::json j;
  auto put_vec = [&j](const char* key, const cvec3& v) {
    j[key] = {{v[0].real(), v[0].imag()}, {v[1].real(), v[1].imag()}, {v[2].real(), v[2].imag()}};
  };
  put_vec("zeta_requested", zeta_requested);
  put_vec("zeta_solve", zeta_solve);
  j["detune_rel"] = detune_rel;
  j["delta"] = {delta[0], delta[1], delta[2]};
  j["h_min"] = h_min;
  j["iterations"] = iterations;
  j["converged"] = converged;
  j["final_update_rel"] = final_update_rel;
  j["contraction_estimate"] = contraction_estimate;
  j["side_h_rel"] = side_h_rel;
  j["side_e_rel"] = side_e_rel;
  j["maxwell_r1_rel"] = maxwell_r1_rel;
  j["maxwell_r2_rel"] = maxwell_r2_rel;
  j["remainder_E_lp"] = remainder_E_lp;
  j["remainder_H_lp"] = remainder_H_lp;
  j["p_norm"] = p_norm;
  return j.dump(2);
}

std::vector<std::uint8_t> make_ball_mask(const SpectralBox& box, double radius) {
  std::vector<std::uint8_t> mask(box.size(), 0);
  double c = box.length() / 2.0;
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        auto x = box.point(i, j, k);
        double dx = x[0] - c, dy = x[1] - c, dz = x[2] - c;
        if (dx * dx + dy * dy + dz * dz <= radius * radius) mask[idx] = 1;
      }
  return mask;
}

namespace {

std::array<Field, 3> curl_split(const SpectralBox& box, const SplitVec3& u,
                                const SpectralBox::DualShift& shift, const cvec3& zeta) {
  // (curl - zeta^) u as point values; constants only feel the zeta term.
  std::array<Field, 3> out{box.zeros(), box.zeros(), box.zeros()};
  if (!u.per[0].empty()) {
    auto c = box.curl(u.per, {});
    for (int d = 0; d < 3; ++d)
      for (std::size_t i = 0; i < out[0].size(); ++i)
        out[static_cast<std::size_t>(d)][i] += c[static_cast<std::size_t>(d)][i];
  }
  if (!u.tw[0].empty()) {
    auto c = box.curl(u.tw, shift);
    for (int d = 0; d < 3; ++d)
      for (std::size_t i = 0; i < out[0].size(); ++i)
        out[static_cast<std::size_t>(d)][i] += c[static_cast<std::size_t>(d)][i];
  }
  // total values of u for the zeta cross term
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    cvec3 uv = u.cst;
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      if (!u.per[0].empty()) uv[sd] += u.per[sd][i];
      if (!u.tw[0].empty()) uv[sd] += u.tw[sd][i];
    }
    cvec3 zxu = cross3(zeta, uv);
    for (int d = 0; d < 3; ++d) out[static_cast<std::size_t>(d)][i] -= zxu[static_cast<std::size_t>(d)];
  }
  return out;
}

std::array<Field, 3> values_of(const SpectralBox& box, const SplitVec3& u) {
  std::array<Field, 3> out{box.zeros(), box.zeros(), box.zeros()};
  for (std::size_t i = 0; i < out[0].size(); ++i)
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      C v = u.cst[sd];
      if (!u.per[0].empty()) v += u.per[sd][i];
      if (!u.tw[0].empty()) v += u.tw[sd][i];
      out[sd][i] = v;
    }
  return out;
}

double masked_vec_norm(const SpectralBox& box, const std::array<Field, 3>& f,
                       const std::vector<std::uint8_t>& mask) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f[0].size(); ++i)
    if (mask[i]) acc += std::norm(f[0][i]) + std::norm(f[1][i]) + std::norm(f[2][i]);
  return std::sqrt(acc * box.cell_volume());
}

}  // namespace

std::pair<double, double> maxwell_residual(const SpectralBox& box, const Field& gamma,
                                           const Field& mu, double omega, const cvec3& zeta,
                                           const SplitVec3& uE, const SplitVec3& uH,
                                           const SpectralBox::DualShift& shift,
                                           const std::vector<std::uint8_t>& mask) {
  auto curl_e = curl_split(box, uE, shift, zeta);
  auto curl_h = curl_split(box, uH, shift, zeta);
  auto vals_e = values_of(box, uE);
  auto vals_h = values_of(box, uH);

  std::array<Field, 3> r1{box.zeros(), box.zeros(), box.zeros()};
  std::array<Field, 3> r2{box.zeros(), box.zeros(), box.zeros()};
  std::array<Field, 3> s1{box.zeros(), box.zeros(), box.zeros()};
  std::array<Field, 3> s2{box.zeros(), box.zeros(), box.zeros()};
  const C iw(0.0, omega);
  for (std::size_t i = 0; i < r1[0].size(); ++i)
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      C m1 = iw * mu[i] * vals_h[sd][i];
      C m2 = iw * gamma[i] * vals_e[sd][i];
      r1[sd][i] = curl_e[sd][i] - m1;
      r2[sd][i] = curl_h[sd][i] + m2;
      s1[sd][i] = m1;
      s2[sd][i] = m2;
    }
  double n1 = masked_vec_norm(box, r1, mask);
  double n2 = masked_vec_norm(box, r2, mask);
  double d1 = std::max({masked_vec_norm(box, s1, mask), masked_vec_norm(box, curl_e, mask), 1e-300});
  double d2 = std::max({masked_vec_norm(box, s2, mask), masked_vec_norm(box, curl_h, mask), 1e-300});
  return {n1 / d1, n2 / d2};
}

namespace {

struct SplitEight {
  EightVec cst;
  EightField per;
  EightField tw;
};

Field slot_values(const SpectralBox& box, C cst, const Field& per, const Field& tw) {
  Field out(box.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cst + per[i] + tw[i];
  return out;
}

}  // namespace

SplitVec3 cgo_uE(const SpectralBox& box, const CgoMatrices& m, const CgoSolution& s) {
  SplitVec3 u;
  u.per = {box.zeros(), box.zeros(), box.zeros()};
  u.tw = s.Et_tw;
  for (std::size_t i = 0; i < box.size(); ++i) {
    C gis = 1.0 / std::sqrt(m.gamma[i]);
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      u.per[sd][i] = gis * s.E0[sd] + s.Et_per[sd][i];
    }
  }
  return u;
}

SplitVec3 cgo_uH(const SpectralBox& box, const CgoMatrices& m, const CgoSolution& s) {
  SplitVec3 u;
  u.per = {box.zeros(), box.zeros(), box.zeros()};
  u.tw = s.Ht_tw;
  for (std::size_t i = 0; i < box.size(); ++i) {
    C mis = 1.0 / std::sqrt(m.mu[i]);
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      u.per[sd][i] = mis * s.H0[sd] + s.Ht_per[sd][i];
    }
  }
  return u;
}

CgoSolution neumann_cgo(const SpectralBox& box, const MediumProfile& profile, double omega,
                        const CgoOptions& opts) {
  CgoMatrices m = CgoMatrices::build(box, profile, omega);
  const double k0 = m.k0;

  const cvec3& zeta = opts.zeta;
  double zmag2 = std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]);
  C zz = zeta[0] * zeta[0] + zeta[1] * zeta[1] + zeta[2] * zeta[2];
  if (std::abs(zz) > 1e-10 * zmag2)
    throw std::invalid_argument("neumann_cgo: requested zeta is off the variety zeta.zeta = 0");

  std::array<double, 3> a{zeta[0].real(), zeta[1].real(), zeta[2].real()};
  std::array<double, 3> b{zeta[0].imag(), zeta[1].imag(), zeta[2].imag()};
  double amag = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  double bmag = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  if (amag <= 0 || bmag <= 0)
    throw std::invalid_argument("neumann_cgo: zeta must have nonzero real and imaginary parts");
  std::array<double, 3> w{a[0] / amag, a[1] / amag, a[2] / amag};
  std::array<double, 3> wp{b[0] / bmag, b[1] / bmag, b[2] / bmag};

  // Solve vector on the Maxwell dispersion surface: zeta'.zeta' = -k0^2.
  // This absorbs the constant background of the potential into the
  // exponential, leaving a compactly supported fixed-point kernel.
  const double bsolve = std::sqrt(amag * amag + k0 * k0);
  cvec3 zsolve{C(amag * w[0], bsolve * wp[0]), C(amag * w[1], bsolve * wp[1]),
               C(amag * w[2], bsolve * wp[2])};
  double zs_mag = std::sqrt(amag * amag + bsolve * bsolve);

  // nhat = w ^ wp spans the zeta'-orthogonal complex line together with
  // zeta' itself.
  std::array<double, 3> nh{w[1] * wp[2] - w[2] * wp[1], w[2] * wp[0] - w[0] * wp[2],
                           w[0] * wp[1] - w[1] * wp[0]};
  double nhmag = std::sqrt(nh[0] * nh[0] + nh[1] * nh[1] + nh[2] * nh[2]);
  if (nhmag < 1e-12)
    throw std::invalid_argument("neumann_cgo: Re zeta and Im zeta must be independent");
  for (auto& v : nh) v /= nhmag;

  // Amplitudes: on the variety both stated polarization directions are
  // parallel, so the four constants act through two complex combinations.
  const C cE = C(opts.c1E, 0.0) - C(0.0, 1.0) * opts.c2E;
  const C cH = C(opts.c1H, 0.0) - C(0.0, 1.0) * opts.c2H;

  // Leading 8-vector: the literal form with scalar slots (c1E, c1H) leaks a
  // constant -i kappa Z0 into the scalar side conditions. Shifting by a
  // kernel element of P(zeta') moves the amplitudes into the vector slots
  // without changing Y0 = -P(zeta') Z0; the scalar slots stay exactly zero.
  EightVec z0;
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    z0.H[sd] = C(0.0, 1.0) * cE * nh[sd] / zs_mag;
    z0.E[sd] = -C(0.0, 1.0) * cH * nh[sd] / zs_mag;
  }

  EightVec y0 = apply_P_const(zsolve, z0);
  y0.h = -y0.h;
  y0.e = -y0.e;
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    y0.H[sd] = -y0.H[sd];
    y0.E[sd] = -y0.E[sd];
  }
  if (std::abs(y0.h) + std::abs(y0.e) > 1e-12 * std::max(y0.max_abs(), 1.0))
    throw std::logic_error("neumann_cgo: leading scalar slots failed to vanish");

  CgoSolution sol;
  sol.zeta_solve = zsolve;
  sol.E0 = y0.E;
  sol.H0 = y0.H;

  CgoDiagnostics& diag = sol.diag;
  diag.zeta_requested = zeta;
  diag.zeta_solve = zsolve;
  diag.p_norm = opts.p_norm;
  {
    cvec3 dzeta{zsolve[0] - zeta[0], zsolve[1] - zeta[1], zsolve[2] - zeta[2]};
    diag.detune_rel = abs3(dzeta) / std::sqrt(zmag2);
  }

  // Conjugation by e^{-zeta'.x} turns -Lap + Q into -(Lap - 2 zeta'.grad)
  // + (Q + k0^2) on the remainder, so the fixed point inverts the Faddeev
  // operator at -zeta'.
  cvec3 zneg{-zsolve[0], -zsolve[1], -zsolve[2]};

  // Anti-resonance shift along Re zeta: half a dual step, with fallbacks.
  const double step = std::numbers::pi / box.length();
  std::unique_ptr<FaddeevSolver> solver;
  double best_h = 0.0;
  for (double nu : {1.0, 0.61, 1.41}) {
    std::array<double, 3> delta{nu * step * w[0], nu * step * w[1], nu * step * w[2]};
    try {
      auto cand = std::make_unique<FaddeevSolver>(box, zneg, delta, 1e-9);
      if (cand->h_min() > best_h) {
        best_h = cand->h_min();
        solver = std::move(cand);
        diag.delta = delta;
      }
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  if (!solver) throw std::runtime_error("neumann_cgo: resonant lattice; perturb zeta or grid");
  diag.h_min = solver->h_min();

  // Compact fixed-point potential: Qc = Q + k0^2 I8.
  auto apply_Qc = [&](const EightField& f) {
    EightField out = apply_Q(m, f);
    out.axpy(k0 * k0, f);
    return out;
  };
  EightField source = apply_Q_const(m, z0);
  {
    EightField zc = EightField::zeros(box);
    EightVec zv = z0;
    for (std::size_t i = 0; i < zc.h.size(); ++i) {
      zc.h[i] = zv.h;
      zc.e[i] = zv.e;
      for (int d = 0; d < 3; ++d) {
        zc.H[static_cast<std::size_t>(d)][i] = zv.H[static_cast<std::size_t>(d)];
        zc.E[static_cast<std::size_t>(d)][i] = zv.E[static_cast<std::size_t>(d)];
      }
    }
    source.axpy(k0 * k0, zc);
  }

  EightField zt = EightField::zeros(box);
  double prev_update = 0.0;
  int grow_count = 0;
  const double z0_scale = z0.max_abs() * std::sqrt(box.length() * box.length() * box.length());
  for (int it = 0; it < opts.max_iter; ++it) {
    EightField rhs = apply_Qc(zt);
    rhs.axpy(1.0, source);
    solver->solve_eight(rhs);  // rhs <- G rhs
    double update = rhs.diff_norm_l2(box, zt);
    double scale = std::max(rhs.norm_l2(box), z0_scale);
    diag.iterations = it + 1;
    if (prev_update > 0.0) {
      diag.contraction_estimate = update / prev_update;
      if (update > prev_update) {
        if (++grow_count >= 2)
          throw std::runtime_error(
              "neumann_cgo: Neumann iteration is not contracting (estimated ratio " +
              std::to_string(diag.contraction_estimate) + "); increase |zeta|");
      } else {
        grow_count = 0;
      }
    }
    zt = std::move(rhs);
    diag.final_update_rel = update / std::max(scale, 1e-300);
    prev_update = update;
    if (diag.final_update_rel <= opts.tol) {
      diag.converged = true;
      break;
    }
  }

  // Ytilde = P(grad) Zt - P(zeta') Zt - W'(Zt + Z0), split by lattice type.
  EightField yt_tw = apply_P_grad(box, zt, solver->shift());
  yt_tw.axpy(-1.0, apply_P_const(zsolve, zt));
  yt_tw.axpy(-1.0, apply_W(m, zt, true));

  EightField wz0 = apply_W_const(m, z0, true);
  // split W'Z0 into the constant background part i k0 Z0 and the compact rest
  EightVec yt_cst;
  yt_cst.h = -C(0.0, k0) * z0.h;
  yt_cst.e = -C(0.0, k0) * z0.e;
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    yt_cst.H[sd] = -C(0.0, k0) * z0.H[sd];
    yt_cst.E[sd] = -C(0.0, k0) * z0.E[sd];
  }
  EightField yt_per = EightField::zeros(box);
  yt_per.axpy(-1.0, wz0);
  {
    // remove the constant part we accounted separately
    for (std::size_t i = 0; i < yt_per.h.size(); ++i) {
      yt_per.h[i] -= yt_cst.h;
      yt_per.e[i] -= yt_cst.e;
      for (int d = 0; d < 3; ++d) {
        auto sd = static_cast<std::size_t>(d);
        yt_per.H[sd][i] -= yt_cst.H[sd];
        yt_per.E[sd][i] -= yt_cst.E[sd];
      }
    }
  }

  // Side conditions on the full Y = Y0 + Ytilde values.
  {
    Field yh = slot_values(box, y0.h + yt_cst.h, yt_per.h, yt_tw.h);
    Field ye = slot_values(box, y0.e + yt_cst.e, yt_per.e, yt_tw.e);
    double scale = 0.0;
    Field tmp;
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      tmp = slot_values(box, y0.H[sd] + yt_cst.H[sd], yt_per.H[sd], yt_tw.H[sd]);
      scale += box.norm_l2(tmp) * box.norm_l2(tmp);
      tmp = slot_values(box, y0.E[sd] + yt_cst.E[sd], yt_per.E[sd], yt_tw.E[sd]);
      scale += box.norm_l2(tmp) * box.norm_l2(tmp);
    }
    scale = std::sqrt(scale);
    diag.side_h_rel = box.norm_l2(yh) / std::max(scale, 1e-300);
    diag.side_e_rel = box.norm_l2(ye) / std::max(scale, 1e-300);
  }

  // Physical remainders: Et = gamma^{-1/2} (Ytilde E-slot), etc.
  sol.Et_per = {box.zeros(), box.zeros(), box.zeros()};
  sol.Et_tw = {box.zeros(), box.zeros(), box.zeros()};
  sol.Ht_per = {box.zeros(), box.zeros(), box.zeros()};
  sol.Ht_tw = {box.zeros(), box.zeros(), box.zeros()};
  for (std::size_t i = 0; i < box.size(); ++i) {
    C gis = 1.0 / std::sqrt(m.gamma[i]);
    C mis = 1.0 / std::sqrt(m.mu[i]);
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      sol.Et_per[sd][i] = gis * (yt_cst.E[sd] + yt_per.E[sd][i]);
      sol.Et_tw[sd][i] = gis * yt_tw.E[sd][i];
      sol.Ht_per[sd][i] = mis * (yt_cst.H[sd] + yt_per.H[sd][i]);
      sol.Ht_tw[sd][i] = mis * yt_tw.H[sd][i];
    }
  }

  double mask_radius = opts.mask_radius > 0.0 ? opts.mask_radius : 0.45 * box.length();
  auto mask = make_ball_mask(box, mask_radius);

  // Remainder L^p norms over the mask (pointwise euclidean magnitude).
  {
    Field emag(box.size()), hmag(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      double e2 = 0.0, h2 = 0.0;
      for (int d = 0; d < 3; ++d) {
        auto sd = static_cast<std::size_t>(d);
        e2 += std::norm(sol.Et_per[sd][i] + sol.Et_tw[sd][i]);
        h2 += std::norm(sol.Ht_per[sd][i] + sol.Ht_tw[sd][i]);
      }
      emag[i] = std::sqrt(e2);
      hmag[i] = std::sqrt(h2);
    }
    diag.remainder_E_lp = box.norm_lp_masked(emag, opts.p_norm, mask);
    diag.remainder_H_lp = box.norm_lp_masked(hmag, opts.p_norm, mask);
  }

  auto r = maxwell_residual(box, m.gamma, m.mu, omega, zsolve, cgo_uE(box, m, sol),
                            cgo_uH(box, m, sol), solver->shift(), mask);
  diag.maxwell_r1_rel = r.first;
  diag.maxwell_r2_rel = r.second;
  return sol;
}

}  // namespace mxc
