#include "posnorm/exponent.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace posnorm {

namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduce(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

// Exact value of an unsigned decimal such as "12", "2.5", "1e3" or "0.125e-1".
Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  Wide num = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  std::size_t i = 0;
  constexpr Wide kLimit = Wide(1) << 100;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) break;
    any_digit = true;
    num = num * 10 + (c - '0');
    if (num > kLimit) throw std::overflow_error("number too long '" + std::string(text) + "'");
    if (seen_point) --scale;
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    ++i;
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    }
    if (i == text.size()) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    int e = 0;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])) || e > 100) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      }
      e = e * 10 + (text[i] - '0');
    }
    scale += sign * e;
  }
  Wide den = 1;
  for (; scale > 0; --scale) {
    num *= 10;
    if (num > kLimit) throw std::overflow_error("number too large '" + std::string(text) + "'");
  }
  for (; scale < 0; ++scale) {
    den *= 10;
    if (den > kLimit) throw std::overflow_error("number too precise '" + std::string(text) + "'");
  }
  return reduce(num, den);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Exponent Exponent::ratio(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("exponent must be positive");
  return Exponent(Rational(den, num));
}

Exponent Exponent::from_inverse(const Rational& inverse) {
  if (inverse < Rational(0)) throw std::invalid_argument("exponent must be positive");
  return Exponent(inverse);
}

Exponent Exponent::from_double(double p) {
  if (std::isnan(p) || p <= 0) throw std::invalid_argument("exponent must be positive");
  if (std::isinf(p)) return infinity();
  // Continued-fraction convergents of p.
  constexpr std::int64_t kMaxDen = std::int64_t(1) << 20;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = p;
  for (int step = 0; step < 64; ++step) {
    double a = std::floor(x);
    if (a > 9.0e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0;
    std::int64_t k2 = ai * k1 + k0;
    if (k2 > kMaxDen) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = x - a;
    if (frac < 1e-300 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - p) <= 0) break;
    x = 1.0 / frac;
  }
  if (h1 <= 0 || k1 <= 0) throw std::invalid_argument("exponent out of range");
  double approx = static_cast<double>(h1) / static_cast<double>(k1);
  if (std::abs(approx - p) > 4 * std::numeric_limits<double>::epsilon() * p) {
    throw std::invalid_argument("exponent " + std::to_string(p) +
                                " has no small-denominator rational form");
  }
  return ratio(h1, k1);
}

Exponent Exponent::parse(std::string_view text) {
  std::string_view s = trim(text);
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '-') {
    throw std::invalid_argument("exponent must be positive: '" + std::string(text) + "'");
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)));
    Rational den = parse_decimal(trim(s.substr(slash + 1)));
    if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = num / den;
  } else {
    value = parse_decimal(s);
  }
  if (value.is_zero()) throw std::invalid_argument("exponent must be positive: '" + std::string(text) + "'");
  return Exponent(Rational(1) / value);
}

double Exponent::value() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(inverse_.den()) / static_cast<double>(inverse_.num());
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  return (Rational(1) / inverse_).to_string();
}

Exponent conjugate(const Exponent& p) {
  if (p.exact_inverse() > Rational(1)) {
    throw std::domain_error("conjugate index requires p >= 1, got " + p.to_string());
  }
  return Exponent::from_inverse(Rational(1) - p.exact_inverse());
}

ExponentPair make_exponent_pair(const Exponent& p, const Exponent& q) {
  if (q > p) {
    throw std::invalid_argument("exponent pair requires q <= p, got p=" + p.to_string() +
                                " q=" + q.to_string());
  }
  Rational inv_r = q.exact_inverse() - p.exact_inverse();
  Rational inv_s = inv_r / Rational(2) + Rational(1, 4);
  ExponentPair pair{p, q, Exponent::from_inverse(inv_r), Exponent::from_inverse(inv_s),
                    std::nullopt, std::nullopt};
  if (p.exact_inverse() <= Rational(1)) pair.p_conj = conjugate(p);
  if (q.exact_inverse() <= Rational(1)) pair.q_conj = conjugate(q);
  return pair;
}

}  // namespace posnorm
