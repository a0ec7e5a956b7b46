#include "expander/rational.hpp"

#include "expander/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace expander {

namespace {

Rational from_wide(__int128 num, __int128 den) {
  if (den == 0)
    throw ArgumentError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi)
    throw ArgumentError("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ArgumentError("cannot parse integer '" + std::string(s) + "'");
  return v;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw ArgumentError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const bool negative = !text.empty() && text.front() == '-';
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 17)
      throw ArgumentError("too many decimal digits in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0)
      throw ArgumentError("malformed decimal '" + std::string(text) + "'");
    const __int128 mag = static_cast<__int128>(w < 0 ? -w : w) * scale + f;
    return from_wide(negative ? -mag : mag, scale);
  }
  return Rational(parse_int(text));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational operator+(const Rational &a, const Rational &b) {
  return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b) {
  return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational &a, const Rational &b) {
  if (b.num_ == 0)
    throw ArgumentError("division by zero rational");
  return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  return compare_ratios(a.num_, a.den_, b.num_, b.den_);
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

} // namespace expander
