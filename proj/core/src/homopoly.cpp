#include "mxc/homopoly.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mxc {

HomoPoly::HomoPoly(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
}

HomoPoly HomoPoly::constant(GaussianRational c) {
  HomoPoly p(0);
  p.add_term(MultiIndex(), c);
  return p;
}

HomoPoly HomoPoly::monomial(const MultiIndex& alpha, GaussianRational c) {
  HomoPoly p(alpha.order());
  p.add_term(alpha, c);
  return p;
}

GaussianRational HomoPoly::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? GaussianRational() : it->second;
}

void HomoPoly::add_term(const MultiIndex& alpha, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (alpha[1] < 0 || alpha[2] < 0 || alpha[3] < 0)
    throw std::invalid_argument("HomoPoly: negative exponent");
  if (is_zero()) {
    degree_ = alpha.order();
  } else if (alpha.order() != degree_) {
    throw std::invalid_argument("HomoPoly: mixed total orders");
  }
  auto [it, inserted] = coeffs_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

HomoPoly& HomoPoly::operator+=(const HomoPoly& o) {
  for (const auto& [alpha, c] : o.coeffs_) add_term(alpha, c);
  return *this;
}

HomoPoly& HomoPoly::operator-=(const HomoPoly& o) {
  for (const auto& [alpha, c] : o.coeffs_) add_term(alpha, -c);
  return *this;
}

HomoPoly operator*(const HomoPoly& a, const HomoPoly& b) {
  HomoPoly out(a.degree_ + b.degree_);
  for (const auto& [al, ca] : a.coeffs_)
    for (const auto& [be, cb] : b.coeffs_) {
      MultiIndex m(al.a[0] + be.a[0], al.a[1] + be.a[1], al.a[2] + be.a[2]);
      out.add_term(m, ca * cb);
    }
  return out;
}

bool operator==(const HomoPoly& a, const HomoPoly& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

HomoPoly HomoPoly::scaled(const GaussianRational& c) const {
  HomoPoly out(degree_);
  if (c.is_zero()) return out;
  for (const auto& [alpha, v] : coeffs_) out.coeffs_.emplace(alpha, v * c);
  return out;
}

HomoPoly HomoPoly::conjugated() const {
  HomoPoly out(degree_);
  for (const auto& [alpha, v] : coeffs_) out.coeffs_.emplace(alpha, v.conj());
  return out;
}

std::complex<double> HomoPoly::evaluate(const std::array<std::complex<double>, 3>& x) const {
  std::complex<double> acc = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    std::complex<double> term = c.to_complex();
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < alpha.a[j]; ++k) term *= x[j];
    acc += term;
  }
  return acc;
}

double HomoPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [alpha, c] : coeffs_) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

HomoPoly differentiate(const HomoPoly& p, int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("differentiate: axis must be 1..3");
  HomoPoly out(p.degree() > 0 ? p.degree() - 1 : 0);
  for (const auto& [alpha, c] : p.coeffs()) {
    if (alpha[axis] == 0) continue;
    out.add_term(alpha.minus(axis), c * GaussianRational(alpha[axis]));
  }
  return out;
}

HomoPoly laplacian(const HomoPoly& p) {
  HomoPoly out(p.degree() >= 2 ? p.degree() - 2 : 0);
  for (int j = 1; j <= 3; ++j) out += differentiate(differentiate(p, j), j);
  return out;
}

HomoPoly r_squared() {
  HomoPoly p(2);
  p.add_term(MultiIndex(2, 0, 0), GaussianRational(1));
  p.add_term(MultiIndex(0, 2, 0), GaussianRational(1));
  p.add_term(MultiIndex(0, 0, 2), GaussianRational(1));
  return p;
}

VecHomoPoly::VecHomoPoly(int degree)
    : degree_(degree), comps_{HomoPoly(degree), HomoPoly(degree), HomoPoly(degree)} {}

VecHomoPoly::VecHomoPoly(HomoPoly c1, HomoPoly c2, HomoPoly c3)
    : comps_{std::move(c1), std::move(c2), std::move(c3)} {
  degree_ = 0;
  bool seen = false;
  for (const auto& c : comps_) {
    if (c.is_zero()) continue;
    if (seen && c.degree() != degree_)
      throw std::invalid_argument("VecHomoPoly: components of different orders");
    degree_ = c.degree();
    seen = true;
  }
}

bool VecHomoPoly::is_zero() const {
  return comps_[0].is_zero() && comps_[1].is_zero() && comps_[2].is_zero();
}

VecHomoPoly& VecHomoPoly::operator+=(const VecHomoPoly& o) {
  for (int j = 1; j <= 3; ++j) (*this)[j] += o[j];
  for (int j = 1; j <= 3; ++j)
    if (!(*this)[j].is_zero()) {
      degree_ = (*this)[j].degree();
      break;
    }
  return *this;
}

VecHomoPoly& VecHomoPoly::operator-=(const VecHomoPoly& o) {
  return *this += o.scaled(GaussianRational(-1));
}

bool operator==(const VecHomoPoly& a, const VecHomoPoly& b) {
  return a.comps_[0] == b.comps_[0] && a.comps_[1] == b.comps_[1] && a.comps_[2] == b.comps_[2];
}

VecHomoPoly VecHomoPoly::scaled(const GaussianRational& c) const {
  VecHomoPoly out(degree_);
  for (int j = 1; j <= 3; ++j) out[j] = (*this)[j].scaled(c);
  return out;
}

VecHomoPoly VecHomoPoly::conjugated() const {
  VecHomoPoly out(degree_);
  for (int j = 1; j <= 3; ++j) out[j] = (*this)[j].conjugated();
  return out;
}

VecHomoPoly VecHomoPoly::times(const HomoPoly& s) const {
  VecHomoPoly out(degree_ + s.degree());
  for (int j = 1; j <= 3; ++j)
    if (!(*this)[j].is_zero()) out[j] = (*this)[j] * s;
  return out;
}

VecHomoPoly VecHomoPoly::cross_x() const {
  auto xmono = [](int j) { return HomoPoly::monomial(MultiIndex::e(j), GaussianRational(1)); };
  VecHomoPoly out(degree_ + 1);
  out[1] = (*this)[2] * xmono(3) - (*this)[3] * xmono(2);
  out[2] = (*this)[3] * xmono(1) - (*this)[1] * xmono(3);
  out[3] = (*this)[1] * xmono(2) - (*this)[2] * xmono(1);
  return out;
}

std::array<std::complex<double>, 3> VecHomoPoly::evaluate(
    const std::array<std::complex<double>, 3>& x) const {
  return {comps_[0].evaluate(x), comps_[1].evaluate(x), comps_[2].evaluate(x)};
}

double VecHomoPoly::max_abs_coeff() const {
  double m = 0.0;
  for (int j = 1; j <= 3; ++j) m = std::max(m, (*this)[j].max_abs_coeff());
  return m;
}

HomoPoly divergence(const VecHomoPoly& p) {
  HomoPoly out(p.degree() > 0 ? p.degree() - 1 : 0);
  for (int j = 1; j <= 3; ++j) out += differentiate(p[j], j);
  return out;
}

VecHomoPoly curl(const VecHomoPoly& p) {
  VecHomoPoly out(p.degree() > 0 ? p.degree() - 1 : 0);
  out[1] = differentiate(p[3], 2) - differentiate(p[2], 3);
  out[2] = differentiate(p[1], 3) - differentiate(p[3], 1);
  out[3] = differentiate(p[2], 1) - differentiate(p[1], 2);
  return out;
}

VecHomoPoly gradient(const HomoPoly& p) {
  return VecHomoPoly(differentiate(p, 1), differentiate(p, 2), differentiate(p, 3));
}

bool is_harmonic(const VecHomoPoly& p) {
  for (int j = 1; j <= 3; ++j)
    if (!laplacian(p[j]).is_zero()) return false;
  return true;
}

namespace {

// Candidate beta indices obtained by lowering each stored term.
std::set<MultiIndex> lowered_indices(const VecHomoPoly& p, int drop) {
  std::set<MultiIndex> betas;
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : p[j].coeffs())
      for (int l = 1; l <= 3; ++l)
        if (alpha[l] >= drop) betas.insert(alpha.minus(l, drop));
  return betas;
}

}  // namespace

bool divergence_free_by_coeffs(const VecHomoPoly& p) { return !divergence_violation(p).has_value(); }

std::optional<MultiIndex> divergence_violation(const VecHomoPoly& p) {
  for (const auto& beta : lowered_indices(p, 1)) {
    GaussianRational sum;
    for (int j = 1; j <= 3; ++j)
      sum += p[j].coeff(beta.plus(j)) * GaussianRational(beta[j] + 1);
    if (!sum.is_zero()) return beta;
  }
  return std::nullopt;
}

bool curl_free_by_coeffs(const VecHomoPoly& p) {
  for (const auto& beta : lowered_indices(p, 1)) {
    for (int j = 1; j <= 3; ++j)
      for (int l = j + 1; l <= 3; ++l) {
        GaussianRational lhs = p[j].coeff(beta.plus(l)) * GaussianRational(beta[l] + 1);
        GaussianRational rhs = p[l].coeff(beta.plus(j)) * GaussianRational(beta[j] + 1);
        if (!(lhs == rhs)) return false;
      }
  }
  return true;
}

bool harmonic_by_coeffs(const VecHomoPoly& p) {
  if (p.degree() < 2) return true;
  for (const auto& beta : lowered_indices(p, 2)) {
    for (int j = 1; j <= 3; ++j) {
      GaussianRational sum;
      for (int l = 1; l <= 3; ++l)
        sum += p[j].coeff(beta.plus(l, 2)) *
               GaussianRational(static_cast<long>(beta[l] + 1) * (beta[l] + 2));
      if (!sum.is_zero()) return false;
    }
  }
  return true;
}

std::string to_text(const HomoPoly& p) {
  std::ostringstream os;
  for (const auto& [alpha, c] : p.coeffs()) os << alpha.to_string() << " : " << to_string(c) << "\n";
  return os.str();
}

std::string to_text(const VecHomoPoly& p) {
  std::ostringstream os;
  for (int j = 1; j <= 3; ++j) {
    os << "component " << j << "\n";
    os << to_text(p[j]);
  }
  return os.str();
}

namespace {

void parse_term_line(const std::string& line, HomoPoly& into) {
  auto colon = line.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("polynomial term missing ':' separator: " + line);
  std::istringstream head(line.substr(0, colon));
  MultiIndex alpha;
  if (!(head >> alpha.a[0] >> alpha.a[1] >> alpha.a[2]))
    throw std::invalid_argument("malformed multi-index in: " + line);
  into.add_term(alpha, gaussian_from_string(line.substr(colon + 1)));
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

HomoPoly homopoly_from_text(const std::string& text) {
  HomoPoly p(0);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    parse_term_line(line, p);
  }
  return p;
}

VecHomoPoly vecpoly_from_text(const std::string& text) {
  std::array<HomoPoly, 3> comps{HomoPoly(0), HomoPoly(0), HomoPoly(0)};
  int current = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("component", 0) == 0) {
      current = std::stoi(line.substr(9));
      if (current < 1 || current > 3)
        throw std::invalid_argument("component index out of range: " + line);
      continue;
    }
    if (line.rfind("norm", 0) == 0) continue;  // tolerated; owned by NormalizedVecPoly
    if (current == 0) throw std::invalid_argument("term before any 'component' header");
    parse_term_line(line, comps[current - 1]);
  }
  return VecHomoPoly(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
}

}  // namespace mxc
