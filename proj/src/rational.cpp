#include "pma/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace pma {
namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));

  bool negative = !text.empty() && text.front() == '-';
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 18) throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
  for (char c : frac) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
  }
  std::int64_t w = 0;
  if (!whole.empty() && whole != "-" && whole != "+") w = parse_int(whole);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t f = parse_int(frac);
  i128 num = static_cast<i128>(w < 0 ? -w : w) * den + f;
  if (negative) num = -num;
  return from_wide(num, den);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::int64_t Rational::to_integer() const {
  if (den_ != 1) throw std::domain_error("rational " + str() + " is not an integer");
  return num_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return str();
  int digits = std::max(twos, fives);
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  i128 scaled = static_cast<i128>(num_) * (scale / den_);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  auto whole = static_cast<std::int64_t>(scaled / scale);
  auto frac = static_cast<std::int64_t>(scaled % scale);
  std::string frac_text = std::to_string(frac);
  frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
  return (negative ? "-" : "") + std::to_string(whole) + "." + frac_text;
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t out;
    if (__builtin_add_overflow(num_, o.num_, &out)) throw std::overflow_error("rational overflow");
    num_ = out;
    return *this;
  }
  return *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                           static_cast<i128>(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t out;
    if (__builtin_sub_overflow(num_, o.num_, &out)) throw std::overflow_error("rational overflow");
    num_ = out;
    return *this;
  }
  return *this = from_wide(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                           static_cast<i128>(den_) * o.den_);
}

Rational& Rational::operator*=(const Rational& o) {
  return *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  return *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r < Rational{} ? -r : r; }

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  i128 g = gcd128(a, b);
  i128 l = static_cast<i128>(a) / g * b;
  if (l < 0) l = -l;
  if (!fits(l)) throw std::overflow_error("lcm overflow");
  return static_cast<std::int64_t>(l);
}

}  // namespace pma
