#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pma {

// Exact rational number with 64-bit numerator and positive denominator, kept
// in lowest terms. Every operation is overflow-checked; an intermediate result
// that does not fit throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by intent
  Rational(std::int64_t num, std::int64_t den);

  // Parses "6", "-3", "6.1", "0.25" or "61/10".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  // Value as an integer; throws std::domain_error when not integral.
  std::int64_t to_integer() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "61/10", "-3", "0".
  std::string str() const;
  // Decimal form when the denominator divides a power of ten ("6.1"),
  // otherwise the fraction form.
  std::string decimal() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

// Least common multiple with overflow check.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace pma

template <>
struct std::hash<pma::Rational> {
  std::size_t operator()(const pma::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u ^ std::hash<std::int64_t>{}(r.den());
  }
};
