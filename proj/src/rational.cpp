#include "upsharp/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace upsharp {

namespace {

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int128 mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

int128 add(int128 a, int128 b) {
  int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

}  // namespace

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  // Works for the most negative value too since digits are taken one at a time.
  while (v != 0) {
    const int d = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Rational::Rational(int128 num, int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const int128 g = gcd128(a.den_, b.den_);
  const int128 da = a.den_ / g, db = b.den_ / g;
  return {add(mul(a.num_, db), mul(b.num_, da)), mul(a.den_, db)};
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const int128 g1 = gcd128(a.num_, b.den_), g2 = gcd128(b.num_, a.den_);
  const int128 n1 = g1 == 0 ? a.num_ : a.num_ / g1, d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const int128 n2 = g2 == 0 ? b.num_ : b.num_ / g2, d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return {mul(n1, n2), mul(d1, d2)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int128 l = mul(a.num_, b.den_), r = mul(b.num_, a.den_);
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace upsharp
