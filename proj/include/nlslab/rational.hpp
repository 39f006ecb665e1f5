#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace nlslab {

/// Exact rational number, always stored in lowest terms with positive
/// denominator.  All exponent relations in the library are evaluated on
/// this type; doubles appear only at the simulation boundary.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Integer power; exponent may be negative if the value is nonzero.
  Rational pow_int(std::int64_t e) const;

  /// Serialized form used everywhere (JSON, CLI): "num/den", e.g. "3/1".
  std::string str() const;

  /// Parses "a/b", a plain integer "a", or a finite decimal "1.9" (converted
  /// exactly, 1.9 -> 19/10).
  static Rational parse(const std::string& text);

  /// Nearest rational with denominator <= max_den (continued fractions).
  /// Throws if the reconstruction misses v by more than 1e-9 relative.
  static Rational from_double(double v, std::int64_t max_den = 1000000);

 private:
  void normalize();
  std::int64_t num_;
  std::int64_t den_;
};

/// Conjugate exponent p' with 1/p + 1/p' = 1.  Requires p > 1.
Rational conjugate_exponent(const Rational& p);

/// A Lebesgue exponent that may be the +infinity sentinel (sup norm).
class LpExponent {
 public:
  LpExponent(Rational p) : value_(p) {}  // NOLINT: implicit on purpose
  LpExponent(std::int64_t p) : value_(Rational(p)) {}

  static LpExponent inf() { return LpExponent(); }

  bool infinite() const { return !value_.has_value(); }
  const Rational& finite() const {
    if (!value_) throw std::logic_error("LpExponent: infinite sentinel has no rational value");
    return *value_;
  }
  double to_double() const;
  std::string str() const { return value_ ? value_->str() : "inf"; }

 private:
  LpExponent() : value_(std::nullopt) {}
  std::optional<Rational> value_;
};

}  // namespace nlslab
