#include "nlslab/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace nlslab {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error(std::string("Rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

Rational make_from_wide(Wide num, Wide den, const char* what) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num, what), narrow(den, what));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

void Rational::normalize() {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den_ < 0) {
    if (num_ == std::numeric_limits<std::int64_t>::min() ||
        den_ == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("Rational overflow in normalize");
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("Rational: reciprocal of zero");
  return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_from_wide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_, "+");
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_from_wide(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_, "-");
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_, "*");
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return make_from_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_, "/");
}

bool operator<(const Rational& a, const Rational& b) {
  return Wide(a.num_) * b.den_ < Wide(b.num_) * a.den_;
}

Rational Rational::pow_int(std::int64_t e) const {
  if (e == 0) return Rational(1);
  Rational base = e > 0 ? *this : reciprocal();
  std::int64_t n = e > 0 ? e : -e;
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base = (n >>= 1) > 0 ? base * base : base;
  }
  return acc;
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  if (slash != std::string::npos) {
    if (dot != std::string::npos) throw std::invalid_argument("Rational::parse: bad literal " + text);
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  if (dot != std::string::npos) {
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    if (tail.size() > 17) throw std::invalid_argument("Rational::parse: too many digits in " + text);
    for (char c : tail)
      if (c < '0' || c > '9') throw std::invalid_argument("Rational::parse: bad literal " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    std::int64_t whole = head.empty() || head == "-" || head == "+" ? 0 : std::stoll(head);
    const bool neg = !head.empty() && head[0] == '-';
    std::int64_t frac = tail.empty() ? 0 : std::stoll(tail);
    Wide num = Wide(whole) * den + (neg ? -Wide(frac) : Wide(frac));
    return make_from_wide(num, den, "parse");
  }
  return Rational(std::stoll(text));
}

Rational Rational::from_double(double v, std::int64_t max_den) {
  if (!std::isfinite(v)) throw std::invalid_argument("Rational::from_double: non-finite value");
  const bool neg = v < 0.0;
  double x = neg ? -v : v;
  // Continued-fraction convergents p_k/q_k until the denominator cap.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int k = 0; k < 64; ++k) {
    const double ip = std::floor(frac);
    if (ip > 9e17) break;
    const auto a = static_cast<std::int64_t>(ip);
    const Wide p2 = Wide(a) * p1 + p0;
    const Wide q2 = Wide(a) * q1 + q0;
    if (q2 > max_den || p2 > std::numeric_limits<std::int64_t>::max()) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<std::int64_t>(p2);
    q1 = static_cast<std::int64_t>(q2);
    const double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) throw std::invalid_argument("Rational::from_double: no convergent found");
  const Rational out(neg ? -p1 : p1, q1);
  const double err = std::abs(out.to_double() - v);
  if (err > 1e-9 * std::max(1.0, std::abs(v)))
    throw std::invalid_argument("Rational::from_double: value not close to a small rational");
  return out;
}

Rational conjugate_exponent(const Rational& p) {
  if (p <= Rational(1)) throw std::domain_error("conjugate_exponent: requires p > 1");
  return p / (p - Rational(1));
}

double LpExponent::to_double() const {
  return value_ ? value_->to_double() : std::numeric_limits<double>::infinity();
}

}  // namespace nlslab
