#include "mxc/medium.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace mxc {

namespace {

using C = std::complex<double>;

double bump_value(const BumpSpec& b, double r) {
  if (r >= b.radius) return 0.0;
  double s = r / b.width;
  return std::exp(-s * s);
}

struct StepEval {
  double s, sp, spp;  // value and first two derivatives
};

StepEval step_eval(double t, double w) {
  double u = 2.0 * t / w;
  double th = std::tanh(u);
  double sech2 = 1.0 - th * th;
  StepEval e;
  e.s = 0.5 * (1.0 + th);
  e.sp = sech2 / w;
  e.spp = -4.0 * sech2 * th / (w * w);
  return e;
}

}  // namespace

double smooth_step(double t, double w) { return step_eval(t, w).s; }

std::complex<double> MediumProfile::gamma_at(const std::array<double, 3>& x) const {
  return derivs_at(x).gamma;
}

std::complex<double> MediumProfile::mu_at(const std::array<double, 3>& x) const {
  return derivs_at(x).mu;
}

MediumDerivs MediumProfile::derivs_at(const std::array<double, 3>& x) const {
  MediumDerivs out;

  // corner factor and its derivatives (1 when absent)
  double pval = 1.0;
  std::array<double, 3> sv{1.0, 1.0, 1.0}, sp{0.0, 0.0, 0.0}, spp{0.0, 0.0, 0.0};
  if (corner) {
    for (int d = 0; d < 3; ++d) {
      auto sd = static_cast<std::size_t>(d);
      StepEval e = step_eval(x[sd] - corner->corner[sd], corner->width);
      sv[sd] = e.s;
      sp[sd] = e.sp;
      spp[sd] = e.spp;
    }
    pval = sv[0] * sv[1] * sv[2];
  }
  std::array<double, 3> pgrad{0.0, 0.0, 0.0};
  std::array<double, 6> phess{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  if (corner) {
    pgrad = {sp[0] * sv[1] * sv[2], sv[0] * sp[1] * sv[2], sv[0] * sv[1] * sp[2]};
    phess[0] = spp[0] * sv[1] * sv[2];
    phess[3] = sv[0] * spp[1] * sv[2];
    phess[5] = sv[0] * sv[1] * spp[2];
    phess[1] = sp[0] * sp[1] * sv[2];
    phess[2] = sp[0] * sv[1] * sp[2];
    phess[4] = sv[0] * sp[1] * sp[2];
  }

  auto field_with_bumps = [&](const std::vector<BumpSpec>& bumps, double background, C& value,
                              std::array<C, 3>& grad_log, std::array<C, 6>& hess_log) {
    C bsum = 0.0;
    std::array<C, 3> bgrad{0.0, 0.0, 0.0};
    std::array<C, 6> bhess{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (const auto& b : bumps) {
      std::array<double, 3> d{x[0] - b.center[0], x[1] - b.center[1], x[2] - b.center[2]};
      double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      double g = bump_value(b, r);
      if (g == 0.0) continue;
      double iw2 = 1.0 / (b.width * b.width);
      bsum += b.amplitude * g;
      for (int i = 0; i < 3; ++i)
        bgrad[static_cast<std::size_t>(i)] += b.amplitude * g * (-2.0 * iw2) * d[static_cast<std::size_t>(i)];
      int pos = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j, ++pos) {
          double hij = 4.0 * iw2 * iw2 * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
          if (i == j) hij -= 2.0 * iw2;
          bhess[static_cast<std::size_t>(pos)] += b.amplitude * g * hij;
        }
    }
    // fold the corner factor: F = P * B
    C fval = pval * bsum;
    std::array<C, 3> fgrad;
    for (int i = 0; i < 3; ++i)
      fgrad[static_cast<std::size_t>(i)] = pval * bgrad[static_cast<std::size_t>(i)] +
                                           bsum * pgrad[static_cast<std::size_t>(i)];
    std::array<C, 6> fhess;
    int pos = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j, ++pos) {
        auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j),
             sp_ = static_cast<std::size_t>(pos);
        fhess[sp_] = pval * bhess[sp_] + pgrad[si] * bgrad[sj] + pgrad[sj] * bgrad[si] +
                     bsum * phess[sp_];
      }

    value = background + fval;
    // log derivatives: grad log v = grad v / v, hess log = hess v / v - gg^T/v^2
    for (int i = 0; i < 3; ++i) grad_log[static_cast<std::size_t>(i)] = fgrad[static_cast<std::size_t>(i)] / value;
    pos = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j, ++pos) {
        auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j),
             sp_ = static_cast<std::size_t>(pos);
        hess_log[sp_] = fhess[sp_] / value - fgrad[si] * fgrad[sj] / (value * value);
      }
  };

  auto field_with_modes = [&](const std::vector<LogModeSpec>& modes, double background, C& value,
                              std::array<C, 3>& grad_log, std::array<C, 6>& hess_log) {
    double expo = 0.0;
    std::array<double, 3> g{0.0, 0.0, 0.0};
    std::array<double, 6> h{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const double base = 2.0 * std::numbers::pi / length;
    for (const auto& m : modes) {
      std::array<double, 3> kv{base * m.k[0], base * m.k[1], base * m.k[2]};
      double arg = kv[0] * x[0] + kv[1] * x[1] + kv[2] * x[2] + m.phase;
      double c = std::cos(arg), s = std::sin(arg);
      expo += m.amp * c;
      for (int i = 0; i < 3; ++i) g[static_cast<std::size_t>(i)] -= m.amp * kv[static_cast<std::size_t>(i)] * s;
      int pos = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j, ++pos)
          h[static_cast<std::size_t>(pos)] -=
              m.amp * kv[static_cast<std::size_t>(i)] * kv[static_cast<std::size_t>(j)] * c;
    }
    value = background * std::exp(expo);
    for (int i = 0; i < 3; ++i) grad_log[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)];
    for (int i = 0; i < 6; ++i) hess_log[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
  };

  if (!gamma_bumps.empty() && !gamma_log_modes.empty())
    throw std::invalid_argument("MediumProfile: gamma mixes bumps and log modes");
  if (!mu_bumps.empty() && !mu_log_modes.empty())
    throw std::invalid_argument("MediumProfile: mu mixes bumps and log modes");

  if (!gamma_log_modes.empty())
    field_with_modes(gamma_log_modes, eps0, out.gamma, out.grad_alpha, out.hess_alpha);
  else
    field_with_bumps(gamma_bumps, eps0, out.gamma, out.grad_alpha, out.hess_alpha);
  if (!mu_log_modes.empty())
    field_with_modes(mu_log_modes, mu0, out.mu, out.grad_beta, out.hess_beta);
  else
    field_with_bumps(mu_bumps, mu0, out.mu, out.grad_beta, out.hess_beta);
  return out;
}

double MediumProfile::boundary_deviation(int samples) const {
  double worst = 0.0;
  double h = length / samples;
  for (int face = 0; face < 3; ++face)
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i <= samples; ++i)
        for (int j = 0; j <= samples; ++j) {
          std::array<double, 3> x{};
          x[static_cast<std::size_t>(face)] = side == 0 ? 0.0 : length;
          x[static_cast<std::size_t>((face + 1) % 3)] = i * h;
          x[static_cast<std::size_t>((face + 2) % 3)] = j * h;
          worst = std::max(worst, std::abs(gamma_at(x) - eps0) + std::abs(mu_at(x) - mu0));
        }
  return worst;
}

std::string MediumProfile::to_json() const {
  nlohmann::json j;
  j["length"] = length;
  j["eps0"] = eps0;
  j["mu0"] = mu0;
  auto dump_bumps = [](const std::vector<BumpSpec>& bumps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : bumps) {
      nlohmann::json e;
      e["center"] = {b.center[0], b.center[1], b.center[2]};
      e["radius"] = b.radius;
      e["width"] = b.width;
      e["amplitude"] = {b.amplitude.real(), b.amplitude.imag()};
      arr.push_back(std::move(e));
    }
    return arr;
  };
  auto dump_modes = [](const std::vector<LogModeSpec>& modes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : modes) {
      nlohmann::json e;
      e["k"] = {m.k[0], m.k[1], m.k[2]};
      e["amp"] = m.amp;
      e["phase"] = m.phase;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["gamma_bumps"] = dump_bumps(gamma_bumps);
  j["mu_bumps"] = dump_bumps(mu_bumps);
  j["gamma_log_modes"] = dump_modes(gamma_log_modes);
  j["mu_log_modes"] = dump_modes(mu_log_modes);
  if (corner) {
    j["corner"] = {{"corner", {corner->corner[0], corner->corner[1], corner->corner[2]}},
                   {"width", corner->width}};
  }
  return j.dump(2);
}

MediumProfile MediumProfile::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MediumProfile p;
  p.length = j.value("length", p.length);
  p.eps0 = j.value("eps0", 1.0);
  p.mu0 = j.value("mu0", 1.0);
  auto read_bumps = [&](const char* key, std::vector<BumpSpec>& into) {
    if (!j.contains(key)) return;
    for (const auto& e : j.at(key)) {
      BumpSpec b;
      b.center = {e.at("center").at(0).get<double>(), e.at("center").at(1).get<double>(),
                  e.at("center").at(2).get<double>()};
      b.radius = e.at("radius").get<double>();
      b.width = e.value("width", b.radius / 5.5);
      b.amplitude = {e.at("amplitude").at(0).get<double>(), e.at("amplitude").at(1).get<double>()};
      into.push_back(b);
    }
  };
  auto read_modes = [&](const char* key, std::vector<LogModeSpec>& into) {
    if (!j.contains(key)) return;
    for (const auto& e : j.at(key)) {
      LogModeSpec m;
      m.k = {e.at("k").at(0).get<int>(), e.at("k").at(1).get<int>(), e.at("k").at(2).get<int>()};
      m.amp = e.at("amp").get<double>();
      m.phase = e.value("phase", 0.0);
      into.push_back(m);
    }
  };
  read_bumps("gamma_bumps", p.gamma_bumps);
  read_bumps("mu_bumps", p.mu_bumps);
  read_modes("gamma_log_modes", p.gamma_log_modes);
  read_modes("mu_log_modes", p.mu_log_modes);
  if (j.contains("corner")) {
    CornerStepSpec c;
    c.corner = {j["corner"].at("corner").at(0).get<double>(),
                j["corner"].at("corner").at(1).get<double>(),
                j["corner"].at("corner").at(2).get<double>()};
    c.width = j["corner"].at("width").get<double>();
    p.corner = c;
  }
  return p;
}

MediumProfile MediumProfile::homogeneous(double length, double eps0, double mu0) {
  MediumProfile p;
  p.length = length;
  p.eps0 = eps0;
  p.mu0 = mu0;
  return p;
}

namespace {

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uni() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
};

}  // namespace

MediumProfile MediumProfile::random_smooth(double length, std::uint64_t seed, double max_amplitude,
                                           bool with_mu, bool complex_gamma) {
  SplitMix rng{seed ? seed : 1};
  MediumProfile p = homogeneous(length);
  double c0 = length / 2.0;
  auto make_bump = [&](bool cplx) {
    BumpSpec b;
    b.radius = length * (0.36 + 0.04 * rng.uni());
    b.width = b.radius / 5.5;
    double wiggle = length * 0.03;
    b.center = {c0 + wiggle * (2 * rng.uni() - 1), c0 + wiggle * (2 * rng.uni() - 1),
                c0 + wiggle * (2 * rng.uni() - 1)};
    double re = max_amplitude * (0.5 + 0.5 * rng.uni()) * (rng.uni() < 0.5 ? -1.0 : 1.0);
    double im = cplx ? 0.5 * max_amplitude * rng.uni() : 0.0;
    b.amplitude = {re, im};
    return b;
  };
  p.gamma_bumps.push_back(make_bump(complex_gamma));
  if (with_mu) p.mu_bumps.push_back(make_bump(false));
  return p;
}

MediumProfile MediumProfile::random_log_modes(double length, std::uint64_t seed, int band,
                                              double max_amplitude, bool with_mu) {
  SplitMix rng{seed ? seed : 1};
  MediumProfile p = homogeneous(length);
  auto fill = [&](std::vector<LogModeSpec>& modes) {
    int count = 3 + static_cast<int>(rng.next() % 3);
    double total = 0.0;
    for (int q = 0; q < count; ++q) {
      LogModeSpec m;
      do {
        m.k = {static_cast<int>(rng.next() % (2 * static_cast<unsigned>(band) + 1)) - band,
               static_cast<int>(rng.next() % (2 * static_cast<unsigned>(band) + 1)) - band,
               static_cast<int>(rng.next() % (2 * static_cast<unsigned>(band) + 1)) - band};
      } while (m.k[0] == 0 && m.k[1] == 0 && m.k[2] == 0);
      m.amp = max_amplitude * (0.3 + 0.7 * rng.uni()) / count;
      m.phase = 2.0 * std::numbers::pi * rng.uni();
      total += m.amp;
      modes.push_back(m);
    }
    (void)total;
  };
  fill(p.gamma_log_modes);
  if (with_mu) fill(p.mu_log_modes);
  return p;
}

MediumGrids sample_medium(const SpectralBox& box, const MediumProfile& profile) {
  if (std::abs(box.length() - profile.length) > 1e-12 * profile.length)
    throw std::invalid_argument("sample_medium: box length does not match the profile");
  MediumGrids g{box.zeros(), box.zeros()};
  std::size_t idx = 0;
  for (int i = 0; i < box.n(); ++i)
    for (int j = 0; j < box.n(); ++j)
      for (int k = 0; k < box.n(); ++k, ++idx) {
        auto x = box.point(i, j, k);
        g.gamma[idx] = profile.gamma_at(x);
        g.mu[idx] = profile.mu_at(x);
      }
  return g;
}

}  // namespace mxc
