#pragma once

// Exact arithmetic in Z[sqrt2, sqrt3]: values a + b*sqrt2 + c*sqrt3 + d*sqrt6
// with 64-bit integer coefficients (overflow-checked).  This ring carries the
// reflection representation of every Coxeter matrix with entries in
// {2,3,4,6,inf}, where the form values -2cos(pi/m) are 0, -1, -sqrt2, -sqrt3
// and -2.  Sign decisions are exact (no floating point on the decision path).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "wagoner/common.hpp"

namespace wag {

using BigInt = boost::multiprecision::cpp_int;

struct QuadInt {
  std::int64_t a = 0;  // 1
  std::int64_t b = 0;  // sqrt2
  std::int64_t c = 0;  // sqrt3
  std::int64_t d = 0;  // sqrt6

  QuadInt() = default;
  QuadInt(std::int64_t a_, std::int64_t b_ = 0, std::int64_t c_ = 0, std::int64_t d_ = 0)
      : a(a_), b(b_), c(c_), d(d_) {}

  static QuadInt sqrt2() { return QuadInt(0, 1); }
  static QuadInt sqrt3() { return QuadInt(0, 0, 1); }
  static QuadInt sqrt6() { return QuadInt(0, 0, 0, 1); }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

  friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    return QuadInt(checked_add(x.a, y.a), checked_add(x.b, y.b), checked_add(x.c, y.c),
                   checked_add(x.d, y.d));
  }
  friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    return QuadInt(checked_sub(x.a, y.a), checked_sub(x.b, y.b), checked_sub(x.c, y.c),
                   checked_sub(x.d, y.d));
  }
  friend QuadInt operator-(const QuadInt& x) { return QuadInt(0) - x; }

  // (a1 + b1 r2 + c1 r3 + d1 r6)(a2 + b2 r2 + c2 r3 + d2 r6), using
  // r2^2 = 2, r3^2 = 3, r6^2 = 6, r2 r3 = r6, r2 r6 = 2 r3, r3 r6 = 3 r2.
  friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    auto m = checked_mul;
    auto s = checked_add;
    std::int64_t a = s(s(m(x.a, y.a), m(2, m(x.b, y.b))), s(m(3, m(x.c, y.c)), m(6, m(x.d, y.d))));
    std::int64_t b = s(s(m(x.a, y.b), m(x.b, y.a)), s(m(3, m(x.c, y.d)), m(3, m(x.d, y.c))));
    std::int64_t c = s(s(m(x.a, y.c), m(x.c, y.a)), s(m(2, m(x.b, y.d)), m(2, m(x.d, y.b))));
    std::int64_t d = s(s(m(x.a, y.d), m(x.d, y.a)), s(m(x.b, y.c), m(x.c, y.b)));
    return QuadInt(a, b, c, d);
  }

  QuadInt& operator+=(const QuadInt& y) { return *this = *this + y; }
  QuadInt& operator-=(const QuadInt& y) { return *this = *this - y; }
  QuadInt& operator*=(const QuadInt& y) { return *this = *this * y; }

  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

  // Lexicographic coefficient order; a total order used for canonical keys
  // (not the order of real values).
  friend bool operator<(const QuadInt& x, const QuadInt& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }

  // Exact sign of the real value.  Write v = X + Y*sqrt3 with
  // X = a + b sqrt2, Y = c + d sqrt2 and compare |X| with sqrt3 |Y| by
  // squaring inside Z[sqrt2], where signs reduce to comparing n^2 vs 2 m^2.
  int sign() const {
    int sx = sign_z2(a, b);
    int sy = sign_z2(c, d);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // X and sqrt3*Y have opposite signs: compare X^2 with 3 Y^2 in Z[sqrt2].
    BigInt xa = BigInt(a) * a + 2 * BigInt(b) * b, xb = 2 * BigInt(a) * b;
    BigInt ya = 3 * (BigInt(c) * c + 2 * BigInt(d) * d), yb = 6 * BigInt(c) * d;
    int cmp = sign_z2_big(xa - ya, xb - yb);
    if (cmp == 0) return 0;  // cannot happen for nonzero X, Y; kept for totality
    return cmp > 0 ? sx : sy;
  }

  // Floating point embedding, for diagnostics only.
  double approx() const {
    return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(2.0) +
           static_cast<double>(c) * std::sqrt(3.0) + static_cast<double>(d) * std::sqrt(6.0);
  }

  std::string str() const {
    std::string out = std::to_string(a);
    auto term = [&out](std::int64_t v, const char* sym) {
      if (v == 0) return;
      out += (v > 0 ? "+" : "-");
      out += std::to_string(v > 0 ? v : -v);
      out += sym;
    };
    term(b, "r2");
    term(c, "r3");
    term(d, "r6");
    return out;
  }

 private:
  // sign of n + m*sqrt2, exactly
  static int sign_z2(std::int64_t n, std::int64_t m) { return sign_z2_big(BigInt(n), BigInt(m)); }

  static int sign_z2_big(const BigInt& n, const BigInt& m) {
    int sn = n == 0 ? 0 : (n > 0 ? 1 : -1);
    int sm = m == 0 ? 0 : (m > 0 ? 1 : -1);
    if (sm == 0) return sn;
    if (sn == 0) return sm;
    if (sn == sm) return sn;
    BigInt lhs = n * n, rhs = 2 * m * m;
    if (lhs == rhs) return 0;  // impossible: sqrt2 irrational, nonzero n,m
    return lhs > rhs ? sn : sm;
  }
};

}  // namespace wag
