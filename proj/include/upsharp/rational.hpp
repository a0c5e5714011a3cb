#ifndef UPSHARP_RATIONAL_HPP
#define UPSHARP_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace upsharp {

using int128 = __int128;

std::string to_string(int128 v);

/// Exact fraction on 128-bit integers, always reduced with a positive denominator.
/// Arithmetic that would overflow throws std::overflow_error.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int128 num, int128 den);

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  double to_double() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace upsharp

#endif  // UPSHARP_RATIONAL_HPP
