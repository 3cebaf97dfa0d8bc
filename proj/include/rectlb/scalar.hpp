#pragma once

// Exact rational scalar used for every dimension, weight and ratio.
//
// Values are kept in canonical form (positive denominator, coprime parts).
// Nothing in this header converts to floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace rectlb {

class Scalar {
 public:
  Scalar() : value_(0) {}
  Scalar(int v) : value_(v) {}                 // NOLINT(implicit)
  Scalar(long v) : value_(v) {}                // NOLINT(implicit)
  Scalar(long long v) : value_(mpz_from(v)) {}  // NOLINT(implicit)
  Scalar(long long num, long long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    value_ = mpq_class(mpz_from(num), mpz_from(den));
    value_.canonicalize();
  }
  explicit Scalar(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  explicit Scalar(const mpz_class& v) : value_(v) {}

  // Parses "p", "p/q", or "b^e" (e may be negative).
  static Scalar parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  // floor / ceil as arbitrary-precision integers.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
  }

  Scalar operator-() const { return Scalar(mpq_class(-value_)); }
  Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
  Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
  Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "num/den", or "num" when the denominator is 1.
  std::string str() const {
    return is_integer() ? value_.get_num().get_str() : value_.get_str();
  }
  // Always "num/den"; the JSON wire form.
  std::string fraction_str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static mpz_class mpz_from(long long v) {
    // mpz_class has no long long constructor on every platform.
    return mpz_class(std::to_string(v));
  }

  mpq_class value_;
};

inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

// Exact power by repeated squaring. Throws on 0^negative.
inline Scalar pow(const Scalar& base, long long e) {
  if (e < 0) {
    if (base.is_zero()) throw std::domain_error("pow: zero base with negative exponent");
    return Scalar(1) / pow(base, -e);
  }
  mpz_class num;
  mpz_class den;
  const auto ue = static_cast<unsigned long>(e);
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), ue);
  return Scalar(mpq_class(num, den));
}

// Truncated decimal expansion with exactly `digits` fractional digits.
inline std::string to_decimal(const Scalar& x, int digits) {
  if (digits < 0) throw std::invalid_argument("to_decimal: negative digit count");
  const bool negative = x.sign() < 0;
  mpz_class num = abs(x).numerator();
  const mpz_class den = x.denominator();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = num * scale;
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  std::string out;
  if (negative && q != 0) out.push_back('-');
  out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out.push_back('.');
    out += s.substr(s.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

inline Scalar Scalar::parse(std::string_view text) {
  std::string t(text);
  auto fail = [&]() { throw std::invalid_argument("Scalar: cannot parse '" + t + "'"); };
  if (t.empty()) fail();
  try {
    if (const auto caret = t.find('^'); caret != std::string::npos) {
      const Scalar base = parse(t.substr(0, caret));
      std::size_t used = 0;
      const long long e = std::stoll(t.substr(caret + 1), &used);
      if (used != t.size() - caret - 1) fail();
      return pow(base, e);
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) fail();
    if (q.get_den() == 0) throw std::domain_error("Scalar: zero denominator");
    return Scalar(q);
  } catch (const std::out_of_range&) {
    fail();
  }
  return {};
}

inline void to_json(nlohmann::json& j, const Scalar& s) { j = s.fraction_str(); }
inline void from_json(const nlohmann::json& j, Scalar& s) { s = Scalar::parse(j.get<std::string>()); }

}  // namespace rectlb
