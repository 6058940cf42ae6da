#include "mxc/admissibility.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mxc {

bool pattern_odd(const VecHomoPoly& p) {
  if (p.degree() < 1 || p.degree() % 2 == 0)
    throw std::invalid_argument("pattern_odd: requires odd degree >= 1");
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : p[j].coeffs())
      if (alpha[j] == 0) return false;
  return true;
}

bool pattern_even(const VecHomoPoly& p) {
  if (p.degree() < 2 || p.degree() % 2 == 1)
    throw std::invalid_argument("pattern_even: requires even degree >= 2");
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : p[j].coeffs())
      for (int l = 1; l <= 3; ++l)
        if (l != j && alpha[l] == 0) return false;
  return true;
}

namespace {

double slab_scale(const std::array<std::map<MultiIndex, cplx>, 3>& part) {
  double s = 0.0;
  for (const auto& comp : part)
    for (const auto& [alpha, c] : comp) s = std::max(s, std::abs(c));
  return s;
}

std::string monomial_witness(int j, const MultiIndex& alpha, const char* missing) {
  std::ostringstream os;
  os << "component " << j << " term (" << alpha.to_string() << ") lacks factor " << missing;
  return os.str();
}

}  // namespace

bool pattern_odd(const std::array<std::map<MultiIndex, cplx>, 3>& part, int degree, double tol,
                 std::string* witness) {
  if (degree < 1 || degree % 2 == 0)
    throw std::invalid_argument("pattern_odd: requires odd degree >= 1");
  double thresh = tol * slab_scale(part);
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : part[static_cast<std::size_t>(j - 1)]) {
      if (std::abs(c) <= thresh) continue;
      if (alpha[j] == 0) {
        if (witness) *witness = monomial_witness(j, alpha, j == 1 ? "x1" : j == 2 ? "x2" : "x3");
        return false;
      }
    }
  return true;
}

bool pattern_even(const std::array<std::map<MultiIndex, cplx>, 3>& part, int degree, double tol,
                  std::string* witness) {
  if (degree < 2 || degree % 2 == 1)
    throw std::invalid_argument("pattern_even: requires even degree >= 2");
  double thresh = tol * slab_scale(part);
  for (int j = 1; j <= 3; ++j)
    for (const auto& [alpha, c] : part[static_cast<std::size_t>(j - 1)]) {
      if (std::abs(c) <= thresh) continue;
      for (int l = 1; l <= 3; ++l)
        if (l != j && alpha[l] == 0) {
          if (witness) *witness = monomial_witness(j, alpha, l == 1 ? "x1" : l == 2 ? "x2" : "x3");
          return false;
        }
    }
  return true;
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::Inadmissible: return "inadmissible";
    default: return "undetermined";
  }
}

std::string Verdict::to_json() const {
  nlohmann::json j;
  j["status"] = to_string(status);
  j["N"] = N;
  j["attained"] = attained;
  j["witness"] = witness;
  j["notes"] = notes;
  return j.dump(2);
}

namespace {

struct FieldOrder {
  bool present = false;
  LowestOrderPart lop;
};

FieldOrder order_of(const TaylorField& f, double tol) {
  FieldOrder out;
  if (f.is_zero()) return out;
  try {
    out.lop = lowest_order_part(f, tol);
    out.present = true;
  } catch (const std::domain_error&) {
    out.present = false;  // everything under the noise threshold
  }
  return out;
}

}  // namespace

Verdict classify_taylor(const TaylorField& e_field, const TaylorField& h_field, double tol) {
  FieldOrder fe = order_of(e_field, tol);
  FieldOrder fh = order_of(h_field, tol);
  if (!fe.present && !fh.present)
    throw std::domain_error("classify_taylor: both fields vanish");

  Verdict v;
  if ((fe.present && fe.lop.ambiguous) || (fh.present && fh.lop.ambiguous)) {
    v.status = Admissibility::Undetermined;
    v.witness = "lowest order is tolerance-sensitive";
    v.N = fe.present && fh.present ? std::min(fe.lop.N, fh.lop.N)
                                   : (fe.present ? fe.lop.N : fh.lop.N);
    return v;
  }

  int ne = fe.present ? fe.lop.N : -1;
  int nh = fh.present ? fh.lop.N : -1;
  int n = fe.present && fh.present ? std::min(ne, nh) : (fe.present ? ne : nh);
  v.N = n;
  if (fe.present && (!fh.present || ne <= nh)) v.attained += "E";
  if (fh.present && (!fe.present || nh <= ne)) v.attained += "H";

  if (n == 0) {
    v.status = Admissibility::Admissible;
    v.witness = "lowest order N = 0";
    return v;
  }

  bool all_match = true;
  std::string witness;
  auto check = [&](const LowestOrderPart& lop) {
    bool ok = n % 2 == 1 ? pattern_odd(lop.part, n, tol, &witness)
                         : pattern_even(lop.part, n, tol, &witness);
    all_match = all_match && ok;
  };
  if (fe.present && ne == n) check(fe.lop);
  if (fh.present && nh == n) check(fh.lop);

  if (all_match) {
    v.status = Admissibility::Inadmissible;
    v.witness = n % 2 == 1 ? "odd pattern: P^(j) divisible by x^(j)"
                           : "even pattern: P^(j) divisible by prod_{l!=j} x^(l)";
  } else {
    v.status = Admissibility::Admissible;
    v.witness = witness;
  }
  return v;
}

Verdict classify_single(const TaylorField& v, double tol) { return classify_taylor(v, v, tol); }

std::vector<int> inadmissible_m_range(int l0) {
  std::vector<int> out;
  for (int m = (l0 + 1) % 2; m <= (l0 + 1) / 2; ++m) out.push_back(m);
  return out;
}

int inadmissible_pair_sign(int l0) { return l0 % 2 == 1 ? 1 : -1; }

Verdict classify_expansion(const FieldExpansion& f, double tol) {
  if (f.empty()) throw std::domain_error("classify_expansion: empty expansion");
  const int l0 = f.l_min();

  Verdict v;
  v.N = l0;

  // Block-level scale for the relative zero test.
  double scale = 0.0;
  bool a_block = false, b_block = false;
  for (int m = -(l0 + 1); m <= l0 + 1; ++m) {
    auto c = f.coeff(l0, m);
    scale = std::max({scale, std::abs(c.a), std::abs(c.b)});
    a_block = a_block || std::abs(c.a) > 0.0;
    b_block = b_block || std::abs(c.b) > 0.0;
  }
  double thresh = tol * scale;
  // First ladder contributes lowest order l0 on the H side, the second on
  // the E side.
  if (a_block && b_block)
    v.attained = "EH";
  else
    v.attained = a_block ? "H" : "E";

  std::ostringstream notes;
  const int sign = inadmissible_pair_sign(l0);
  notes << "l0 = " << l0 << "; allowed m pairs:";
  for (int m : inadmissible_m_range(l0)) notes << " (" << 2 * m << "," << -2 * m << ")";
  notes << "; pair sign " << (sign > 0 ? "+1" : "-1");
  v.notes = notes.str();

  if (l0 == 0) {
    v.status = Admissibility::Admissible;
    v.witness = "block order l0 = 0";
    return v;
  }

  auto in_range = [&](int m_abs) {
    if (m_abs % 2 != 0) return false;
    int idx = m_abs / 2;
    return idx >= (l0 + 1) % 2 && idx <= (l0 + 1) / 2;
  };

  auto check_side = [&](bool take_a) -> std::optional<std::string> {
    for (int m = 0; m <= l0 + 1; ++m) {
      cplx cp = take_a ? f.coeff(l0, m).a : f.coeff(l0, m).b;
      cplx cm = take_a ? f.coeff(l0, -m).a : f.coeff(l0, -m).b;
      bool live = std::abs(cp) > thresh || std::abs(cm) > thresh;
      if (!live) continue;
      std::string side = take_a ? "a" : "b";
      if (!in_range(m))
        return side + " coefficient at m = " + std::to_string(m) + " outside the allowed set";
      if (m == 0) {
        if (sign < 0)
          return side + " coefficient at m = 0 requires odd block order";
        continue;
      }
      if (std::abs(cm - double(sign) * cp) > thresh * 4.0 + 1e-300)
        return side + " pair (" + std::to_string(m) + "," + std::to_string(-m) +
               ") breaks the conjugate pairing";
    }
    return std::nullopt;
  };

  for (bool side : {true, false}) {
    if (auto why = check_side(side)) {
      v.status = Admissibility::Admissible;
      v.witness = *why;
      return v;
    }
  }
  v.status = Admissibility::Inadmissible;
  v.witness = "lowest block supported on the conjugate-paired even-m combinations";
  return v;
}

}  // namespace mxc
