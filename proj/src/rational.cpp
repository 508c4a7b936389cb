#include "ccbc/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace ccbc {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad rational '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) throw std::overflow_error("rational overflow");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + std::string(text));
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den(), b.den());
  const std::int64_t da = a.den() / g;
  const std::int64_t db = b.den() / g;
  return Rational(checked_add(checked_mul(a.num(), db), checked_mul(b.num(), da)), checked_mul(a.den(), db));
}

Rational operator-(const Rational& a) { return Rational(-a.num(), a.den()); }

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num(), b.den());
  const std::int64_t g2 = std::gcd(b.num(), a.den());
  const std::int64_t n1 = g1 == 0 ? a.num() : a.num() / g1;
  const std::int64_t d2 = g1 == 0 ? b.den() : b.den() / g1;
  const std::int64_t n2 = g2 == 0 ? b.num() : b.num() / g2;
  const std::int64_t d1 = g2 == 0 ? a.den() : a.den() / g2;
  return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return a * Rational(b.den(), b.num());
}

}  // namespace ccbc
