#include "mxc/taylor_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mxc {

namespace {
bool all_zero(const cvec3& c) { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }
}  // namespace

TaylorField::TaylorField(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("TaylorField: negative truncation order");
}

cvec3 TaylorField::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? cvec3{0.0, 0.0, 0.0} : it->second;
}

void TaylorField::add(const MultiIndex& alpha, const cvec3& c) {
  if (alpha.order() > max_degree_)
    throw std::invalid_argument("TaylorField: term beyond truncation order");
  auto [it, inserted] = coeffs_.try_emplace(alpha, c);
  if (!inserted)
    for (int j = 0; j < 3; ++j) it->second[j] += c[j];
  if (all_zero(it->second)) coeffs_.erase(it);
}

void TaylorField::add(const MultiIndex& alpha, int component, cplx c) {
  cvec3 v{0.0, 0.0, 0.0};
  v[component - 1] = c;
  add(alpha, v);
}

void TaylorField::prune(double eps) {
  double thresh = eps * max_abs_coeff();
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    for (int j = 0; j < 3; ++j)
      if (std::abs(it->second[j]) <= thresh) it->second[j] = 0.0;
    if (all_zero(it->second))
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

TaylorField& TaylorField::operator+=(const TaylorField& o) { return axpy(1.0, o); }

TaylorField& TaylorField::axpy(cplx a, const TaylorField& o) {
  if (o.max_degree_ > max_degree_) max_degree_ = o.max_degree_;
  for (const auto& [alpha, c] : o.coeffs_) add(alpha, {a * c[0], a * c[1], a * c[2]});
  return *this;
}

TaylorField TaylorField::scaled(cplx a) const {
  TaylorField out(max_degree_);
  out.axpy(a, *this);
  return out;
}

void TaylorField::add_vecpoly(const VecHomoPoly& body, cplx a) {
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : body[j].coeffs()) add(alpha, j, a * c.to_complex());
}

void TaylorField::add_scalar_poly(const HomoPoly& body, int component, cplx a) {
  for (const auto& [alpha, c] : body.coeffs()) add(alpha, component, a * c.to_complex());
}

std::map<MultiIndex, cvec3> TaylorField::part(int d) const {
  std::map<MultiIndex, cvec3> out;
  for (const auto& [alpha, c] : coeffs_)
    if (alpha.order() == d) out.emplace(alpha, c);
  return out;
}

double TaylorField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [alpha, c] : coeffs_)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(c[j]));
  return m;
}

double TaylorField::max_abs_coeff_at_degree(int d) const {
  double m = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    if (alpha.order() != d) continue;
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(c[j]));
  }
  return m;
}

cvec3 TaylorField::evaluate(const std::array<cplx, 3>& x) const {
  cvec3 acc{0.0, 0.0, 0.0};
  for (const auto& [alpha, c] : coeffs_) {
    cplx mono = 1.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < alpha.a[j]; ++k) mono *= x[j];
    for (int j = 0; j < 3; ++j) acc[j] += c[j] * mono;
  }
  return acc;
}

std::string TaylorField::to_json() const {
  nlohmann::json j;
  j["max_degree"] = max_degree_;
  j["terms"] = nlohmann::json::array();
  for (const auto& [alpha, c] : coeffs_) {
    nlohmann::json t;
    t["alpha"] = {alpha.a[0], alpha.a[1], alpha.a[2]};
    t["c"] = {{c[0].real(), c[0].imag()}, {c[1].real(), c[1].imag()}, {c[2].real(), c[2].imag()}};
    j["terms"].push_back(std::move(t));
  }
  return j.dump(2);
}

TaylorField TaylorField::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  TaylorField f(j.at("max_degree").get<int>());
  for (const auto& t : j.at("terms")) {
    const auto& a = t.at("alpha");
    MultiIndex alpha(a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<int>());
    const auto& c = t.at("c");
    cvec3 v;
    for (int k = 0; k < 3; ++k)
      v[k] = cplx(c.at(k).at(0).get<double>(), c.at(k).at(1).get<double>());
    f.add(alpha, v);
  }
  return f;
}

TaylorField differentiate(const TaylorField& f, int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("differentiate: axis must be 1..3");
  TaylorField out(f.max_degree() > 0 ? f.max_degree() - 1 : 0);
  for (const auto& [alpha, c] : f.coeffs()) {
    if (alpha[axis] == 0) continue;
    double k = alpha[axis];
    out.add(alpha.minus(axis), {k * c[0], k * c[1], k * c[2]});
  }
  return out;
}

std::map<MultiIndex, cplx> divergence(const TaylorField& f) {
  std::map<MultiIndex, cplx> out;
  for (const auto& [alpha, c] : f.coeffs())
    for (int j = 1; j <= 3; ++j) {
      if (alpha[j] == 0) continue;
      out[alpha.minus(j)] += double(alpha[j]) * c[j - 1];
    }
  return out;
}

TaylorField curl_field(const TaylorField& f) {
  TaylorField out(f.max_degree() > 0 ? f.max_degree() - 1 : 0);
  for (const auto& [alpha, c] : f.coeffs())
    for (int j = 1; j <= 3; ++j) {
      if (alpha[j] == 0) continue;
      double k = alpha[j];
      MultiIndex beta = alpha.minus(j);
      switch (j) {
        case 1:
          out.add(beta, 2, -k * c[2]);  // -d1 F3 -> component 2
          out.add(beta, 3, k * c[1]);   //  d1 F2 -> component 3
          break;
        case 2:
          out.add(beta, 1, k * c[2]);   //  d2 F3 -> component 1
          out.add(beta, 3, -k * c[0]);  // -d2 F1 -> component 3
          break;
        case 3:
          out.add(beta, 1, -k * c[1]);  // -d3 F2 -> component 1
          out.add(beta, 2, k * c[0]);   //  d3 F1 -> component 2
          break;
      }
    }
  return out;
}

LowestOrderPart lowest_order_part(const TaylorField& f, double tol) {
  if (tol < 0) throw std::invalid_argument("lowest_order_part: negative tolerance");
  double scale = f.max_abs_coeff();
  double thresh = tol * scale;
  if (scale == 0.0) throw std::domain_error("zero field has no lowest-order part");

  // Per component: the first degree carrying a surviving coefficient.
  LowestOrderPart out;
  std::array<double, 3> leading_scale{0.0, 0.0, 0.0};
  for (const auto& [alpha, c] : f.coeffs()) {
    int d = alpha.order();
    for (int j = 0; j < 3; ++j) {
      double m = std::abs(c[j]);
      if (m <= thresh) continue;
      if (out.component_order[j] == -1 || d < out.component_order[j]) {
        out.component_order[j] = d;
        leading_scale[j] = m;
      } else if (d == out.component_order[j]) {
        leading_scale[j] = std::max(leading_scale[j], m);
      }
    }
  }
  int n = std::numeric_limits<int>::max();
  for (int j = 0; j < 3; ++j)
    if (out.component_order[j] >= 0) n = std::min(n, out.component_order[j]);
  if (n == std::numeric_limits<int>::max())
    throw std::domain_error("zero field has no lowest-order part");
  out.N = n;

  // Degree-N slab; components of strictly higher order are zeroed.
  for (const auto& [alpha, c] : f.coeffs()) {
    if (alpha.order() != n) continue;
    for (int j = 0; j < 3; ++j) {
      if (out.component_order[j] != n) continue;
      if (std::abs(c[j]) <= thresh) continue;
      out.part[j][alpha] = c[j];
    }
  }

  // A discarded coefficient within a decade of the threshold at a degree at
  // or below the component's order would flip the call under a slightly
  // smaller tol: flag it.
  if (thresh > 0) {
    for (const auto& [alpha, c] : f.coeffs())
      for (int j = 0; j < 3; ++j) {
        int nj = out.component_order[j];
        bool below = (nj == -1) || alpha.order() < nj;
        double m = std::abs(c[j]);
        if (below && m <= thresh && m > 0.1 * thresh) out.ambiguous = true;
      }
  }
  for (int j = 0; j < 3; ++j)
    out.confidence[j] =
        thresh > 0 ? leading_scale[j] / thresh : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace mxc
