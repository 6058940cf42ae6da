#include "mxc/evidence.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mxc/harmonics.hpp"
#include "mxc/orthant_laplace.hpp"
#include "mxc/quadrature.hpp"

namespace mxc {

using C = std::complex<double>;

namespace {

inline C dot3(const cvec3& a, const cvec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline cvec3 cross3(const cvec3& a, const cvec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

void PlaneWave::validate() const {
  auto nrm = [](const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  double dot = d[0] * dperp[0] + d[1] * dperp[1] + d[2] * dperp[2];
  if (std::abs(nrm(d) - 1.0) > 1e-12 || std::abs(nrm(dperp) - 1.0) > 1e-12 || std::abs(dot) > 1e-12)
    throw std::invalid_argument("PlaneWave: d, dperp must be orthonormal");
}

cvec3 PlaneWave::E(const std::array<double, 3>& x) const {
  C phase = std::exp(C(0.0, params.k() * (d[0] * x[0] + d[1] * x[1] + d[2] * x[2])));
  return {phase * dperp[0], phase * dperp[1], phase * dperp[2]};
}

cvec3 PlaneWave::H(const std::array<double, 3>& x) const {
  C phase = std::exp(C(0.0, params.k() * (d[0] * x[0] + d[1] * x[1] + d[2] * x[2])));
  std::array<double, 3> hdir{d[1] * dperp[2] - d[2] * dperp[1], d[2] * dperp[0] - d[0] * dperp[2],
                             d[0] * dperp[1] - d[1] * dperp[0]};
  double adm = params.admittance();
  return {adm * phase * hdir[0], adm * phase * hdir[1], adm * phase * hdir[2]};
}

CgoSampler::CgoSampler(const SpectralBox& box, const MediumProfile& profile, const CgoSolution& sol)
    : box_(box), profile_(profile), sol_(sol) {
  shift_ = box.make_shift(sol.diag.delta);
}

void CgoSampler::evaluate(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::vector<double>& zs, std::vector<cvec3>& e_out,
                          std::vector<cvec3>& h_out, bool remainder_only) const {
  const std::size_t total = xs.size() * ys.size() * zs.size();
  e_out.assign(total, cvec3{0.0, 0.0, 0.0});
  h_out.assign(total, cvec3{0.0, 0.0, 0.0});

  SpectralBox::DualShift no_shift;
  std::array<std::vector<C>, 3> e_per, e_tw, h_per, h_tw;
  for (int d = 0; d < 3; ++d) {
    auto sd = static_cast<std::size_t>(d);
    e_per[sd] = box_.evaluate_tensor(sol_.Et_per[sd], no_shift, xs, ys, zs);
    e_tw[sd] = box_.evaluate_tensor(sol_.Et_tw[sd], shift_, xs, ys, zs);
    h_per[sd] = box_.evaluate_tensor(sol_.Ht_per[sd], no_shift, xs, ys, zs);
    h_tw[sd] = box_.evaluate_tensor(sol_.Ht_tw[sd], shift_, xs, ys, zs);
  }

  const cvec3& zeta = sol_.zeta_solve;
  C base = zeta[0] * origin_[0] + zeta[1] * origin_[1] + zeta[2] * origin_[2];
  std::size_t idx = 0;
  for (std::size_t ix = 0; ix < xs.size(); ++ix)
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
      for (std::size_t iz = 0; iz < zs.size(); ++iz, ++idx) {
        std::array<double, 3> x{xs[ix], ys[iy], zs[iz]};
        C expo = std::exp(base - (zeta[0] * x[0] + zeta[1] * x[1] + zeta[2] * x[2]));
        C gis = remainder_only ? C(0.0) : 1.0 / std::sqrt(profile_.gamma_at(x));
        C mis = remainder_only ? C(0.0) : 1.0 / std::sqrt(profile_.mu_at(x));
        for (int d = 0; d < 3; ++d) {
          auto sd = static_cast<std::size_t>(d);
          e_out[idx][sd] = expo * (gis * sol_.E0[sd] + e_per[sd][idx] + e_tw[sd][idx]);
          h_out[idx][sd] = expo * (mis * sol_.H0[sd] + h_per[sd][idx] + h_tw[sd][idx]);
        }
      }
}

namespace {

struct TensorRule {
  std::vector<double> xs, ys, zs;
  std::vector<double> wx, wy, wz;
};

TensorRule tensor_rule(const std::array<double, 3>& lo, const std::array<double, 3>& hi, int n) {
  TensorRule r;
  auto g0 = gauss_legendre(n, lo[0], hi[0]);
  auto g1 = gauss_legendre(n, lo[1], hi[1]);
  auto g2 = gauss_legendre(n, lo[2], hi[2]);
  r.xs = g0.nodes;
  r.wx = g0.weights;
  r.ys = g1.nodes;
  r.wy = g1.weights;
  r.zs = g2.nodes;
  r.wz = g2.weights;
  return r;
}

}  // namespace

OrthoCheckResult ortho_identity_check(const SpectralBox& box, const MediumProfile& profile,
                                      double omega, const PlaneWave& incident,
                                      const CgoSolution& cgo, const std::array<double, 3>& lo,
                                      const std::array<double, 3>& hi, int quad_n,
                                      double mutation) {
  OrthoCheckResult out;
  incident.validate();
  if (!cgo.diag.converged || cgo.diag.maxwell_r1_rel > 1e-3 || cgo.diag.maxwell_r2_rel > 1e-3) {
    out.refused = true;
    std::ostringstream os;
    os << "CGO sampler fails its residual check (r1 " << cgo.diag.maxwell_r1_rel << ", r2 "
       << cgo.diag.maxwell_r2_rel << ", converged " << cgo.diag.converged << ")";
    out.reason = os.str();
    return out;
  }

  CgoSampler sampler(box, profile, cgo);
  sampler.set_rescale_origin(lo);  // keep magnitudes near unity over D
  const C hmut = 1.0 + mutation;

  // Volume term: i omega Int_D [(mu - mu0) H0 . H - (gamma - eps0) E0 . E].
  TensorRule vol = tensor_rule(lo, hi, quad_n);
  std::vector<cvec3> e_cgo, h_cgo;
  sampler.evaluate(vol.xs, vol.ys, vol.zs, e_cgo, h_cgo);
  C volume = 0.0;
  double vol_mag = 0.0;
  std::size_t idx = 0;
  for (std::size_t ix = 0; ix < vol.xs.size(); ++ix)
    for (std::size_t iy = 0; iy < vol.ys.size(); ++iy)
      for (std::size_t iz = 0; iz < vol.zs.size(); ++iz, ++idx) {
        std::array<double, 3> x{vol.xs[ix], vol.ys[iy], vol.zs[iz]};
        double w = vol.wx[ix] * vol.wy[iy] * vol.wz[iz];
        C mu_t = profile.mu_at(x) - profile.mu0;
        C ga_t = profile.gamma_at(x) - profile.eps0;
        cvec3 h0 = incident.H(x), e0 = incident.E(x);
        C val = mu_t * dot3(h0, {hmut * h_cgo[idx][0], hmut * h_cgo[idx][1], hmut * h_cgo[idx][2]}) -
                ga_t * dot3(e0, e_cgo[idx]);
        volume += w * val;
        vol_mag += w * std::abs(val);
      }
  out.lhs = C(0.0, omega) * volume;

  // Boundary term: Int_dD n . (H ^ E0 - E ^ H0) over the six faces.
  C boundary = 0.0;
  double surf_mag = 0.0;
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      double plane = side == 0 ? lo[static_cast<std::size_t>(axis)] : hi[static_cast<std::size_t>(axis)];
      std::array<double, 3> n{0.0, 0.0, 0.0};
      n[static_cast<std::size_t>(axis)] = side == 0 ? -1.0 : 1.0;

      int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      auto g1 = gauss_legendre(quad_n, lo[static_cast<std::size_t>(a1)], hi[static_cast<std::size_t>(a1)]);
      auto g2 = gauss_legendre(quad_n, lo[static_cast<std::size_t>(a2)], hi[static_cast<std::size_t>(a2)]);
      // tensor grids with the plane coordinate in the right slot
      std::vector<double> tx, ty, tz;
      if (axis == 0) {
        tx = {plane};
        ty = g1.nodes;
        tz = g2.nodes;
      } else if (axis == 1) {
        tx = g2.nodes;
        ty = {plane};
        tz = g1.nodes;
      } else {
        tx = g1.nodes;
        ty = g2.nodes;
        tz = {plane};
      }
      std::vector<cvec3> e_f, h_f;
      sampler.evaluate(tx, ty, tz, e_f, h_f);
      std::size_t fidx = 0;
      for (std::size_t i1 = 0; i1 < tx.size(); ++i1)
        for (std::size_t i2 = 0; i2 < ty.size(); ++i2)
          for (std::size_t i3 = 0; i3 < tz.size(); ++i3, ++fidx) {
            std::array<double, 3> x{tx[i1], ty[i2], tz[i3]};
            // weight lookup
            double w1, w2;
            if (axis == 0) {
              w1 = g1.weights[i2];
              w2 = g2.weights[i3];
            } else if (axis == 1) {
              w1 = g2.weights[i1];
              w2 = g1.weights[i3];
            } else {
              w1 = g1.weights[i1];
              w2 = g2.weights[i2];
            }
            double w = w1 * w2;
            cvec3 e0 = incident.E(x), h0 = incident.H(x);
            cvec3 hmut_f{hmut * h_f[fidx][0], hmut * h_f[fidx][1], hmut * h_f[fidx][2]};
            // n . (H ^ E0 + E ^ H0): the sign that telescopes for two
            // solutions of one medium (checked by the homogeneous case).
            cvec3 term = cross3(hmut_f, e0);
            cvec3 term2 = cross3(e_f[fidx], h0);
            C val = 0.0;
            for (int dd = 0; dd < 3; ++dd)
              val += n[static_cast<std::size_t>(dd)] *
                     (term[static_cast<std::size_t>(dd)] + term2[static_cast<std::size_t>(dd)]);
            boundary += w * val;
            surf_mag += w * std::abs(val);
          }
    }
  out.rhs = boundary;
  out.scale = std::max({std::abs(out.lhs), std::abs(out.rhs), omega * vol_mag * 1e-3, surf_mag * 1e-3, 1e-300});
  out.discrepancy_rel = std::abs(out.lhs - out.rhs) / out.scale;
  return out;
}

C laplace_full_scalar(const HomoPoly& q, const cvec3& zeta) {
  C acc = 0.0;
  for (const auto& [alpha, c] : q.coeffs()) {
    C term = c.to_complex();
    for (int j = 1; j <= 3; ++j) {
      term *= to_double(factorial(static_cast<unsigned>(alpha[j])));
      term /= std::pow(zeta[static_cast<std::size_t>(j - 1)], alpha[j] + 1);
    }
    acc += term;
  }
  return acc;
}

C cube_laplace_quadrature(const VecHomoPoly& p, const cvec3& e0, const cvec3& zeta, double eps,
                          int quad_n) {
  auto rule = gauss_legendre(quad_n, 0.0, eps);
  // per-axis complex exponentials
  std::array<std::vector<C>, 3> expo;
  for (int d = 0; d < 3; ++d) {
    expo[static_cast<std::size_t>(d)].resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      expo[static_cast<std::size_t>(d)][i] =
          std::exp(-zeta[static_cast<std::size_t>(d)] * rule.nodes[i]);
  }
  C acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        std::array<C, 3> x{rule.nodes[i], rule.nodes[j], rule.nodes[k]};
        auto val = p.evaluate(x);
        C integrand = dot3(e0, val);
        acc += rule.weights[i] * rule.weights[j] * rule.weights[k] * expo[0][i] * expo[1][j] *
               expo[2][k] * integrand;
      }
  return acc;
}

std::pair<double, double> fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (slope * x[i] + intercept);
    ss += r * r;
  }
  double se = x.size() > 2 ? std::sqrt(ss / (n - 2) / (sxx - sx * sx / n)) : 0.0;
  return {slope, se};
}

I0ScalingResult i0_scaling(const VecHomoPoly& p, const cvec3& e0, const cvec3& zeta_star,
                           const std::vector<double>& radii, double eps_cube, int quad_n) {
  I0ScalingResult out;
  out.radii = radii;
  const int n_deg = p.degree();

  // Exact path: the full-orthant transform of e0 . P, assembled per
  // component so the float e0 never touches the exact bodies.
  auto exact_at = [&](const cvec3& zeta) {
    C acc = 0.0;
    for (int j = 1; j <= 3; ++j) {
      if (e0[static_cast<std::size_t>(j - 1)] == 0.0) continue;
      acc += e0[static_cast<std::size_t>(j - 1)] * laplace_full_scalar(p[j], zeta);
    }
    return acc;
  };

  C exact_star = exact_at(zeta_star);
  double e0mag = std::sqrt(std::norm(e0[0]) + std::norm(e0[1]) + std::norm(e0[2]));
  double witness_floor = 1e-12 * e0mag * p.max_abs_coeff();
  out.witness = std::abs(exact_star) > witness_floor;

  std::vector<double> logs_r, logs_q;
  for (double r : radii) {
    cvec3 zr{r * zeta_star[0], r * zeta_star[1], r * zeta_star[2]};
    C quad = cube_laplace_quadrature(p, e0, zr, eps_cube, quad_n);
    C exact = exact_at(zr);
    out.quad_values.push_back(quad);
    out.exact_values.push_back(exact);
    // scaling identity against the base value
    C predicted = exact_star * std::pow(r, -(n_deg + 3));
    if (out.witness) {
      out.exact_identity_error =
          std::max(out.exact_identity_error, std::abs(exact / predicted - 1.0));
      out.quad_vs_exact_rel = std::max(out.quad_vs_exact_rel, std::abs(quad - exact) / std::abs(exact));
      logs_r.push_back(std::log(r));
      logs_q.push_back(std::log(std::abs(quad)));
    }
  }
  if (out.witness && logs_r.size() >= 2) out.fitted_slope = fit_slope(logs_r, logs_q).first;
  return out;
}

namespace {

// Incident pair (E0, H0) = (-mu0/eps0 H_{l,m}, E_{l,m}) with its exact
// lowest-order polynomial of the E side.
struct IncidentPair {
  TaylorField e, h;
  VecHomoPoly lowest_body{0};
  C lowest_scale{0.0};
  int lowest_order = 0;
};

IncidentPair make_incident(int l, int m, int trunc, const WaveParams& params) {
  IncidentPair out{TaylorField(trunc), TaylorField(trunc)};
  TaylorField el = wavefunction_E(l, m, trunc, params);
  TaylorField hl = wavefunction_H(l, m, trunc, params);
  double ratio = params.mu0 / params.eps0;
  out.e = hl.scaled(-ratio);
  out.h = el;
  // lowest part of E0: -mu0/eps0 * (leading of H_{l,m})
  NormalizedVecPoly i_fam = vsh_I(l, m);
  C lead = C(0.0, -1.0) * params.admittance() *
           std::sqrt(double(l + 2) / double(2 * l + 3)) *
           to_double(bessel_series_coeff(l, 0)) * std::pow(params.k(), l);
  out.lowest_body = i_fam.body;
  out.lowest_scale = -ratio * lead * i_fam.norm.value();
  out.lowest_order = l;
  return out;
}

}  // namespace

std::string ContradictionReport::to_json() const {
  nlohmann::json j;
  j["scope_note"] = scope_note;
  j["lowest_order_N"] = lowest_order_N;
  j["c0"] = {c0.real(), c0.imag()};
  j["no_contrast"] = no_contrast;
  j["inconclusive"] = inconclusive;
  j["ratio_decreasing_tail"] = ratio_decreasing_tail;
  j["i0_slope"] = i0_slope;
  j["i2_slope"] = i2_slope;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e;
    e["zeta_mag"] = r.zeta_mag;
    e["I0"] = {r.I0.real(), r.I0.imag()};
    e["I1"] = {r.I1.real(), r.I1.imag()};
    e["I2"] = {r.I2.real(), r.I2.imag()};
    e["I3"] = {r.I3.real(), r.I3.imag()};
    e["total_direct"] = {r.total_direct.real(), r.total_direct.imag()};
    e["ratio"] = r.ratio;
    e["reassembly_rel"] = r.reassembly_rel;
    e["log_abs_I0"] = r.log_abs_I0;
    e["log_abs_I2"] = r.log_abs_I2;
    e["cgo_maxwell_rel"] = r.cgo_maxwell_rel;
    e["i0_anchor_gap"] = r.i0_anchor_gap;
    e["i0_anchor_allow"] = r.i0_anchor_allow;
    e["cgo_ok"] = r.cgo_ok;
    j["rows"].push_back(std::move(e));
  }
  return j.dump(2);
}

std::string ContradictionReport::to_csv() const {
  std::ostringstream os;
  os << "zeta_mag,abs_I0,abs_I1,abs_I2,abs_I3,ratio,reassembly_rel,log_abs_I0,log_abs_I2,i0_anchor_gap,i0_anchor_allow,cgo_ok\n";
  for (const auto& r : rows)
    os << r.zeta_mag << ',' << std::abs(r.I0) << ',' << std::abs(r.I1) << ',' << std::abs(r.I2)
       << ',' << std::abs(r.I3) << ',' << r.ratio << ',' << r.reassembly_rel << ','
       << r.log_abs_I0 << ',' << r.log_abs_I2 << ',' << r.i0_anchor_gap << ','
       << r.i0_anchor_allow << ',' << (r.cgo_ok ? 1 : 0) << '\n';
  return os.str();
}

ContradictionConfig shipped_corner_config(int grid_n) {
  ContradictionConfig cfg;
  const double length = 2.0 * std::numbers::pi;
  cfg.grid_n = grid_n;
  cfg.omega = 1.0;
  double c = length / 2.0 - 0.55;
  cfg.corner = {c, c, c};
  cfg.eps_nbhd = 0.35;
  cfg.d_side = 1.1;
  cfg.quad_n = 20;
  cfg.incident_l = 1;
  cfg.incident_m = 1;
  cfg.taylor_trunc = 16;
  cfg.zeta_mags = {8.0, 12.0, 18.0, 27.0, 40.0};
  double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  cfg.w = {1.0 / s3, 1.0 / s3, 1.0 / s3};
  cfg.wperp = {1.0 / s2, -1.0 / s2, 0.0};

  MediumProfile med = MediumProfile::homogeneous(length);
  BumpSpec bump;
  bump.center = {c + 0.3, c + 0.3, c + 0.3};
  bump.radius = 2.2;
  bump.width = 0.55;
  bump.amplitude = {0.4, 0.0};
  med.gamma_bumps.push_back(bump);
  bump.amplitude = {0.3, 0.0};
  med.mu_bumps.push_back(bump);
  CornerStepSpec step;
  step.corner = cfg.corner;
  step.width = 0.30;
  med.corner = step;
  cfg.medium = med;
  return cfg;
}

ContradictionReport contradiction_report(const ContradictionConfig& cfg) {
  ContradictionReport rep;
  rep.scope_note =
      "Desk-scale shadow of the corner-scattering contradiction: the report checks that the "
      "corner term I0 dominates I1+I2+I3 over the zeta sweep. It does not construct interior "
      "transmission eigenfunctions, and the corner medium is smoothed over a thin collar, so "
      "the full vanishing identity is out of scope by design.";

  SpectralBox box(cfg.grid_n, cfg.medium.length);
  WaveParams params{cfg.omega, cfg.medium.eps0, cfg.medium.mu0};
  IncidentPair incident =
      make_incident(cfg.incident_l, cfg.incident_m, cfg.taylor_trunc, params);
  rep.lowest_order_N = incident.lowest_order;

  // Corner contrast c0 = (gamma(0) - eps0) / sqrt(gamma(0)), from the
  // sampled medium at the corner.
  C gamma_corner = cfg.medium.gamma_at(cfg.corner);
  rep.c0 = (gamma_corner - cfg.medium.eps0) / std::sqrt(gamma_corner);
  rep.no_contrast = std::abs(rep.c0) < 1e-10;
  if (rep.no_contrast) {
    rep.inconclusive = true;
    return rep;
  }

  const auto& corner = cfg.corner;
  std::array<double, 3> nlo = corner;
  std::array<double, 3> nhi{corner[0] + cfg.eps_nbhd, corner[1] + cfg.eps_nbhd,
                            corner[2] + cfg.eps_nbhd};
  std::array<double, 3> dhi{corner[0] + cfg.d_side, corner[1] + cfg.d_side,
                            corner[2] + cfg.d_side};

  for (double zmag : cfg.zeta_mags) {
    ContradictionRow row;
    row.zeta_mag = zmag;
    double t = zmag / std::sqrt(2.0);
    cvec3 zeta{C(t * cfg.w[0], t * cfg.wperp[0]), C(t * cfg.w[1], t * cfg.wperp[1]),
               C(t * cfg.w[2], t * cfg.wperp[2])};
    CgoOptions opts;
    opts.zeta = zeta;
    opts.c1E = cfg.c1E;

    CgoSolution sol;
    try {
      sol = neumann_cgo(box, cfg.medium, cfg.omega, opts);
    } catch (const std::exception& e) {
      row.cgo_ok = false;
      rep.inconclusive = true;
      rep.rows.push_back(row);
      continue;
    }
    row.cgo_maxwell_rel = std::max(sol.diag.maxwell_r1_rel, sol.diag.maxwell_r2_rel);
    // Gate on convergence, the scale-honest magnetic-side residual and the
    // side conditions; r1 compares the small electric-side terms against
    // their own tiny scale and is reported, not gated.
    row.cgo_ok = sol.diag.converged && sol.diag.maxwell_r2_rel < 1e-3 &&
                 sol.diag.side_e_rel < 1e-2 && sol.diag.side_h_rel < 1e-2;
    if (!row.cgo_ok) rep.inconclusive = true;

    const cvec3& zs = sol.zeta_solve;
    CgoSampler sampler(box, cfg.medium, sol);
    sampler.set_rescale_origin(corner);  // every integral reduced by e^{+zeta'.corner}

    auto reduced_exp = [&](const std::array<double, 3>& x) {
      C arg = 0.0;
      for (int d = 0; d < 3; ++d)
        arg += zs[static_cast<std::size_t>(d)] * (x[static_cast<std::size_t>(d)] - corner[static_cast<std::size_t>(d)]);
      return std::exp(-arg);
    };
    auto taylor_at = [&](const TaylorField& f, const std::array<double, 3>& x) {
      return f.evaluate({C(x[0] - corner[0]), C(x[1] - corner[1]), C(x[2] - corner[2])});
    };
    auto lowest_at = [&](const std::array<double, 3>& x) {
      auto v = incident.lowest_body.evaluate({C(x[0] - corner[0]), C(x[1] - corner[1]), C(x[2] - corner[2])});
      return cvec3{incident.lowest_scale * v[0], incident.lowest_scale * v[1],
                   incident.lowest_scale * v[2]};
    };

    const cvec3& e0vec = sol.E0;

    // --- I0 and I2 over the corner cube (analytic integrands) ---
    {
      TensorRule r = tensor_rule(nlo, nhi, cfg.quad_n);
      C i0 = 0.0, i2 = 0.0;
      double dominated_cube = 0.0;  // cube part of the |integrand| majorant
      std::size_t idx = 0;
      for (std::size_t i = 0; i < r.xs.size(); ++i)
        for (std::size_t j = 0; j < r.ys.size(); ++j)
          for (std::size_t k = 0; k < r.zs.size(); ++k, ++idx) {
            std::array<double, 3> x{r.xs[i], r.ys[j], r.zs[k]};
            double w = r.wx[i] * r.wy[j] * r.wz[k];
            C ex = reduced_exp(x);
            C gamma = cfg.medium.gamma_at(x);
            C ga_t = gamma - cfg.medium.eps0;
            C gsqrt = std::sqrt(gamma);
            cvec3 pn = lowest_at(x);
            cvec3 e_full = taylor_at(incident.e, x);
            cvec3 rest{e_full[0] - pn[0], e_full[1] - pn[1], e_full[2] - pn[2]};
            i0 += w * ex * rep.c0 * dot3(e0vec, pn);
            dominated_cube += w * std::abs(ex) * std::abs(rep.c0 * dot3(e0vec, pn));
            C coef = (ga_t - rep.c0 * gsqrt) / gsqrt;
            i2 += w * ex * (coef * dot3(e0vec, pn) + ga_t / gsqrt * dot3(e0vec, rest));
          }
      row.I0 = i0;
      row.I2 = i2;

      // Exactness anchor: the closed-form full-orthant transform of the
      // corner term, with the truncation tail bounded by the difference of
      // the dominated integrals (exact outside-cube majorant mass).
      C exact_full = 0.0;
      double dominated_full = 0.0;
      for (int jc = 1; jc <= 3; ++jc) {
        if (std::abs(e0vec[static_cast<std::size_t>(jc - 1)]) == 0.0) continue;
        exact_full += e0vec[static_cast<std::size_t>(jc - 1)] *
                      laplace_full_scalar(incident.lowest_body[jc], zs);
        for (const auto& [alpha, cc] : incident.lowest_body[jc].coeffs()) {
          double term = std::abs(cc.to_complex() * e0vec[static_cast<std::size_t>(jc - 1)]);
          for (int d = 1; d <= 3; ++d)
            term *= to_double(factorial(static_cast<unsigned>(alpha[d]))) /
                    std::pow(zs[static_cast<std::size_t>(d - 1)].real(), alpha[d] + 1);
          dominated_full += term;
        }
      }
      exact_full *= rep.c0 * incident.lowest_scale;
      dominated_full *= std::abs(rep.c0 * incident.lowest_scale);
      row.i0_anchor_gap = std::abs(row.I0 - exact_full);
      row.i0_anchor_allow =
          std::max(dominated_full - dominated_cube, 0.0) + 1e-9 * dominated_full;
    }

    // --- I3 over the corner cube (CGO remainders) ---
    {
      TensorRule r = tensor_rule(nlo, nhi, cfg.quad_n);
      std::vector<cvec3> e_rem, h_rem;
      sampler.evaluate(r.xs, r.ys, r.zs, e_rem, h_rem, /*remainder_only=*/true);
      C i3 = 0.0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < r.xs.size(); ++i)
        for (std::size_t j = 0; j < r.ys.size(); ++j)
          for (std::size_t k = 0; k < r.zs.size(); ++k, ++idx) {
            std::array<double, 3> x{r.xs[i], r.ys[j], r.zs[k]};
            double w = r.wx[i] * r.wy[j] * r.wz[k];
            C ga_t = cfg.medium.gamma_at(x) - cfg.medium.eps0;
            C mu_t = cfg.medium.mu_at(x) - cfg.medium.mu0;
            i3 += w * (ga_t * dot3(taylor_at(incident.e, x), e_rem[idx]) -
                       mu_t * dot3(taylor_at(incident.h, x), h_rem[idx]));
          }
      row.I3 = i3;
    }

    // --- I1 over D minus the corner cube (three slabs) ---
    {
      C i1 = 0.0;
      std::array<std::pair<std::array<double, 3>, std::array<double, 3>>, 3> slabs{
          {{{nhi[0], nlo[1], nlo[2]}, {dhi[0], dhi[1], dhi[2]}},
           {{nlo[0], nhi[1], nlo[2]}, {nhi[0], dhi[1], dhi[2]}},
           {{nlo[0], nlo[1], nhi[2]}, {nhi[0], nhi[1], dhi[2]}}}};
      for (const auto& [lo, hi] : slabs) {
        TensorRule r = tensor_rule(lo, hi, cfg.quad_n);
        std::vector<cvec3> e_cgo, h_cgo;
        sampler.evaluate(r.xs, r.ys, r.zs, e_cgo, h_cgo);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < r.xs.size(); ++i)
          for (std::size_t j = 0; j < r.ys.size(); ++j)
            for (std::size_t k = 0; k < r.zs.size(); ++k, ++idx) {
              std::array<double, 3> x{r.xs[i], r.ys[j], r.zs[k]};
              double w = r.wx[i] * r.wy[j] * r.wz[k];
              C ga_t = cfg.medium.gamma_at(x) - cfg.medium.eps0;
              C mu_t = cfg.medium.mu_at(x) - cfg.medium.mu0;
              i1 += w * (ga_t * dot3(taylor_at(incident.e, x), e_cgo[idx]) -
                         mu_t * dot3(taylor_at(incident.h, x), h_cgo[idx]));
            }
      }
      row.I1 = i1;
    }

    // --- direct total over D for the reassembly check ---
    {
      TensorRule r = tensor_rule(nlo, dhi, cfg.quad_n + 6);
      std::vector<cvec3> e_cgo, h_cgo;
      sampler.evaluate(r.xs, r.ys, r.zs, e_cgo, h_cgo);
      C total = 0.0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < r.xs.size(); ++i)
        for (std::size_t j = 0; j < r.ys.size(); ++j)
          for (std::size_t k = 0; k < r.zs.size(); ++k, ++idx) {
            std::array<double, 3> x{r.xs[i], r.ys[j], r.zs[k]};
            double w = r.wx[i] * r.wy[j] * r.wz[k];
            C ga_t = cfg.medium.gamma_at(x) - cfg.medium.eps0;
            C mu_t = cfg.medium.mu_at(x) - cfg.medium.mu0;
            total += w * (ga_t * dot3(taylor_at(incident.e, x), e_cgo[idx]) -
                          mu_t * dot3(taylor_at(incident.h, x), h_cgo[idx]));
          }
      row.total_direct = total;
      C sum = row.I0 + row.I1 + row.I2 + row.I3;
      double scale = std::max({std::abs(row.I0), std::abs(row.I1), std::abs(row.I2),
                               std::abs(row.I3), std::abs(total), 1e-300});
      row.reassembly_rel = std::abs(sum - total) / scale;
    }

    row.ratio = (std::abs(row.I1) + std::abs(row.I2) + std::abs(row.I3)) /
                std::max(std::abs(row.I0), 1e-300);
    // In corner coordinates (every integral carries e^{-zeta'.(x - corner)})
    // the reduced values obey the pure power laws directly.
    row.log_abs_I0 = std::log(std::max(std::abs(row.I0), 1e-300));
    row.log_abs_I2 = std::log(std::max(std::abs(row.I2), 1e-300));
    rep.rows.push_back(row);
  }

  // tail monotonicity and slope fits
  std::vector<double> lx, ly0, ly2;
  for (const auto& r : rep.rows) {
    if (!r.cgo_ok) continue;
    lx.push_back(std::log(r.zeta_mag));
    ly0.push_back(r.log_abs_I0);
    ly2.push_back(r.log_abs_I2);
  }
  if (lx.size() >= 2) {
    rep.i0_slope = fit_slope(lx, ly0).first;
    rep.i2_slope = fit_slope(lx, ly2).first;
  }
  if (rep.rows.size() >= 3) {
    std::size_t n = rep.rows.size();
    rep.ratio_decreasing_tail = rep.rows[n - 1].cgo_ok && rep.rows[n - 2].cgo_ok &&
                                rep.rows[n - 3].cgo_ok &&
                                rep.rows[n - 1].ratio < rep.rows[n - 2].ratio &&
                                rep.rows[n - 2].ratio < rep.rows[n - 3].ratio;
  }
  return rep;
}

}  // namespace mxc
