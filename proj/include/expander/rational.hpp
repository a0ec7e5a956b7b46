#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace expander {

/// Exact rational number over 64-bit integers, always stored in lowest terms
/// with a positive denominator. Comparisons cross-multiply in 128 bits, so no
/// threshold decision anywhere in the library goes through floating point.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "p/q", "p" or a finite decimal such as "0.125".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Always "p/q", also for integers.
  std::string str() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

/// a / b < k with b > 0, decided exactly.
inline bool ratio_below(std::int64_t a, std::int64_t b, const Rational &k) {
  return static_cast<__int128>(a) * k.den() < static_cast<__int128>(k.num()) * b;
}

/// Total order on a / b versus c / d for positive denominators.
inline std::strong_ordering compare_ratios(std::int64_t a, std::int64_t b, std::int64_t c,
                                           std::int64_t d) {
  const __int128 lhs = static_cast<__int128>(a) * d;
  const __int128 rhs = static_cast<__int128>(c) * b;
  if (lhs < rhs)
    return std::strong_ordering::less;
  if (lhs > rhs)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

} // namespace expander
