#pragma once

// Exact rational arithmetic for test oracles. Independent of sta::Polynomial:
// integer-coefficient polynomials are expanded and integrated term by term.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rational {
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(i128 n, i128 d = 1) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

using IntPoly = std::vector<std::int64_t>;

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// s^(2N) (1-s)^(2N) (1-2s)
inline IntPoly shape(int n) {
  IntPoly p{1};
  for (int i = 0; i < 2 * n; ++i) p = mul(p, {0, 1});
  for (int i = 0; i < 2 * n; ++i) p = mul(p, {1, -1});
  return mul(p, {1, -2});
}

/// int_0^1 p(s) ds, exactly.
inline Rational integrate01(const IntPoly& p) {
  Rational acc;
  for (std::size_t k = 0; k < p.size(); ++k) acc = acc + Rational(p[k], static_cast<i128>(k + 1));
  return acc;
}

/// int_0^1 (1 - s) g~(s) ds for the order-N shape.
inline Rational shape_delta(int n) { return integrate01(mul({1, -1}, shape(n))); }

}  // namespace oracle
