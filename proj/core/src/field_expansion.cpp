#include "mxc/field_expansion.hpp"

#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mxc {

namespace {
bool nonzero(const FieldExpansion::Coeff& c) { return c.a != 0.0 || c.b != 0.0; }
}  // namespace

void FieldExpansion::set(int l, int m, std::complex<double> a, std::complex<double> b) {
  if (l < 0 || std::abs(m) > l + 1)
    throw std::invalid_argument("FieldExpansion: need l >= 0, |m| <= l+1");
  if (a == 0.0 && b == 0.0) {
    entries_.erase({l, m});
    return;
  }
  entries_[{l, m}] = {a, b};
}

void FieldExpansion::add(int l, int m, std::complex<double> a, std::complex<double> b) {
  Coeff c = coeff(l, m);
  set(l, m, c.a + a, c.b + b);
}

FieldExpansion::Coeff FieldExpansion::coeff(int l, int m) const {
  auto it = entries_.find({l, m});
  return it == entries_.end() ? Coeff{} : it->second;
}

bool FieldExpansion::empty() const {
  for (const auto& [lm, c] : entries_)
    if (nonzero(c)) return false;
  return true;
}

int FieldExpansion::l_min() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& [lm, c] : entries_)
    if (nonzero(c)) best = std::min(best, lm.first);
  if (best == std::numeric_limits<int>::max())
    throw std::domain_error("FieldExpansion: empty expansion");
  return best;
}

int FieldExpansion::l_max() const {
  int best = -1;
  for (const auto& [lm, c] : entries_)
    if (nonzero(c)) best = std::max(best, lm.first);
  if (best < 0) throw std::domain_error("FieldExpansion: empty expansion");
  return best;
}

std::string FieldExpansion::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& [lm, c] : entries_) {
    nlohmann::json e;
    e["l"] = lm.first;
    e["m"] = lm.second;
    e["a"] = {c.a.real(), c.a.imag()};
    e["b"] = {c.b.real(), c.b.imag()};
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2);
}

FieldExpansion FieldExpansion::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FieldExpansion f;
  for (const auto& e : j.at("entries")) {
    std::complex<double> a(e.at("a").at(0).get<double>(), e.at("a").at(1).get<double>());
    std::complex<double> b(e.at("b").at(0).get<double>(), e.at("b").at(1).get<double>());
    f.add(e.at("l").get<int>(), e.at("m").get<int>(), a, b);
  }
  return f;
}

}  // namespace mxc
