#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clin {

/// Thrown when an exact rational operation leaves the int64 range.
class RationalOverflow : public std::overflow_error {
 public:
  RationalOverflow() : std::overflow_error("rational overflow") {}
};

/// Exact rational with int64 numerator and positive int64 denominator,
/// always kept in lowest terms. Arithmetic throws RationalOverflow instead
/// of silently wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  /// True when the value has a finite decimal expansion (den = 2^a 5^b).
  bool is_decimal() const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  /// Integer power; negative exponents invert.
  Rational pow(std::int64_t e) const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Exact decimal text for decimal rationals ("0.125", "-3"); "p/q" otherwise.
  std::string to_string() const;

  /// Parses a decimal literal such as "12", "0.25", "1.5e-3". Returns
  /// nullopt when the exact value does not fit.
  static std::optional<Rational> from_decimal(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace clin
