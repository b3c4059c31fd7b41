#ifndef TORWAV_RATIONAL_HPP
#define TORWAV_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace torwav {

/// Exact rational with canonical form: den > 0, gcd(|num|, den) = 1.
/// Used wherever membership tests must be exact (dual-group points,
/// grid-aligned translations); magnitudes stay tiny at desk scale.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator-() const { return Rational(-num, den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

  bool is_integer() const { return den == 1; }

  /// Reduce into [0, 1).
  Rational mod1() const {
    std::int64_t r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

using RationalVec = std::vector<Rational>;

inline bool lex_less(const RationalVec& a, const RationalVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace torwav

#endif  // TORWAV_RATIONAL_HPP
