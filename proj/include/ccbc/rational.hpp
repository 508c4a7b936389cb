#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ccbc {

/// Exact fraction over int64 in lowest terms with a positive denominator.
/// Every operation throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }

  /// "3", "-1/6".
  std::string to_string() const;
  /// Inverse of to_string(). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
/// Throws std::domain_error on division by zero.
Rational operator/(const Rational& a, const Rational& b);
Rational operator-(const Rational& a);

}  // namespace ccbc
