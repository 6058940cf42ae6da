#include "mxc/rational.hpp"

#include <stdexcept>

namespace mxc {

Rational rational_from_string(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '+') t.erase(t.begin());  // GMP rejects a leading '+'
  Rational r;
  if (t.empty() || r.set_str(t, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Rational factorial(unsigned n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return Rational(z);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Rational(z);
}

Rational pow_rational(const Rational& base, int exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base == 0) throw std::domain_error("pow_rational: zero to negative power");
    return Rational(1) / pow_rational(base, -exp);
  }
  Rational acc(1);
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational d = o.norm2();
  if (d == 0) throw std::domain_error("GaussianRational: division by zero");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return z.re.get_str();
  std::string s = z.re.get_str();
  if (z.im > 0) {
    s += " + " + z.im.get_str() + " i";
  } else {
    Rational m = -z.im;
    s += " - " + m.get_str() + " i";
  }
  return s;
}

GaussianRational gaussian_from_string(const std::string& s) {
  // Accepts "re", "re + im i", "re - im i" (whitespace tolerant).
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (c != ' ' && c != '\t') t += c;
  if (t.empty()) throw std::invalid_argument("empty Gaussian rational");

  auto ipos = t.find('i');
  if (ipos == std::string::npos) return GaussianRational(rational_from_string(t));
  if (ipos != t.size() - 1) throw std::invalid_argument("malformed Gaussian rational: '" + s + "'");
  t.pop_back();  // drop 'i'

  // Split at the last top-level +/- that is not a leading sign or exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '+' && t[k - 1] != '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    // pure imaginary
    if (t == "+" || t.empty()) return GaussianRational(Rational(0), Rational(1));
    if (t == "-") return GaussianRational(Rational(0), Rational(-1));
    return GaussianRational(Rational(0), rational_from_string(t));
  }
  Rational re = rational_from_string(t.substr(0, split));
  std::string impart = t.substr(split);
  if (impart == "+") impart = "1";
  if (impart == "-") impart = "-1";
  return GaussianRational(re, rational_from_string(impart));
}

std::uint64_t RationalSampler::next_raw() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rational RationalSampler::next(int max_num, int max_den) {
  std::uint64_t r = next_raw();
  long num = static_cast<long>(r % (2 * max_num + 1)) - max_num;
  long den = static_cast<long>((r >> 32) % max_den) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

GaussianRational RationalSampler::next_gaussian(int max_num, int max_den) {
  Rational re = next(max_num, max_den);
  Rational im = next(max_num, max_den);
  return {re, im};
}

}  // namespace mxc
