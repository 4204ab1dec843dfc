#ifndef POSNORM_EXPONENT_HPP_
#define POSNORM_EXPONENT_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace posnorm {

// Exact rational number with a positive denominator, always in lowest terms.
// Arithmetic throws std::overflow_error if a reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// An index p in (0, inf]. Stored as the exact reciprocal 1/p, so p = inf is
// the reciprocal 0 and every derived index is an exact subtraction.
class Exponent {
 public:
  static Exponent infinity() { return Exponent(Rational(0)); }
  // p = num / den.
  static Exponent ratio(std::int64_t num, std::int64_t den = 1);
  static Exponent from_inverse(const Rational& inverse);
  // Nearest rational with denominator <= 2^20; throws if that is not within
  // a few ulps of `p`.
  static Exponent from_double(double p);
  // Accepts "inf", "infinity", integers, decimals ("2.5") and fractions ("4/3").
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return inverse_.is_zero(); }
  // +inf when infinite.
  double value() const;
  double inverse() const { return inverse_.to_double(); }
  const Rational& exact_inverse() const { return inverse_; }

  // Canonical text: "inf", "2", "4/3".
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  // Larger exponent means smaller reciprocal.
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    return b.inverse_ <=> a.inverse_;
  }

 private:
  explicit Exponent(Rational inverse) : inverse_(inverse) {}
  Rational inverse_;
};

// p* with 1/p + 1/p* = 1. Throws std::domain_error for p < 1.
Exponent conjugate(const Exponent& p);

// The indices attached to an l_p -> l_q operator:
//   1/r = 1/q - 1/p,   1/s = 1/(2r) + 1/4,   conjugates where p, q >= 1.
struct ExponentPair {
  Exponent p;
  Exponent q;
  Exponent r;
  Exponent s;
  std::optional<Exponent> p_conj;
  std::optional<Exponent> q_conj;
};

// Requires 0 < q <= p <= inf; throws std::invalid_argument otherwise.
ExponentPair make_exponent_pair(const Exponent& p, const Exponent& q);

}  // namespace posnorm

#endif  // POSNORM_EXPONENT_HPP_
