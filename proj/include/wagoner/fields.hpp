#pragma once

// Finite fields F_{p^k} for small p, k.  Elements are encoded as integers in
// [0, q) interpreting the base-p digits as coefficients of a length-k vector
// over F_p (digit i = coefficient of x^i modulo the defining polynomial).
// The integer encoding doubles as the canonical total order on elements, so
// coset representatives chosen "minimal" downstream are reproducible.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "wagoner/common.hpp"

namespace wag {

using Fq = std::uint8_t;  // element encoding, q <= 255

class FiniteField {
 public:
  // Prime field F_p.
  explicit FiniteField(int p) : FiniteField(p, 1, default_poly(p, 1)) {}

  // Extension field F_{p^k} with monic defining polynomial
  // poly[0] + poly[1] x + ... + poly[k] x^k (poly[k] == 1), irreducible
  // over F_p.  Irreducibility is verified exhaustively at construction.
  FiniteField(int p, int k, std::vector<int> poly) : p_(p), k_(k), poly_(std::move(poly)) {
    if (p_ < 2 || !is_prime(p_)) throw invalid_argument("field characteristic must be prime");
    if (k_ < 1 || k_ > 4) throw invalid_argument("field degree must be in [1,4]");
    if (static_cast<int>(poly_.size()) != k_ + 1 || poly_[static_cast<std::size_t>(k_)] != 1)
      throw invalid_argument("defining polynomial must be monic of degree k");
    q_ = 1;
    for (int i = 0; i < k_; ++i) q_ *= p_;
    if (q_ > 255) throw invalid_argument("field too large (q must be <= 255)");
    if (k_ > 1 && !poly_irreducible()) throw invalid_argument("defining polynomial is reducible");
    build_tables();
  }

  // F_q with the library's fixed defining polynomial for each supported q.
  static FiniteField of_order(int q) {
    for (int p = 2; p <= q; ++p) {
      if (!is_prime(p)) continue;
      int k = 0, t = q;
      while (t % p == 0) { t /= p; ++k; }
      if (t == 1 && k >= 1) return FiniteField(p, k, default_poly(p, k));
    }
    throw invalid_argument("order is not a prime power");
  }

  int p() const { return p_; }
  int degree() const { return k_; }
  int order() const { return q_; }
  const std::vector<int>& poly() const { return poly_; }

  Fq zero() const { return 0; }
  Fq one() const { return 1; }

  Fq add(Fq a, Fq b) const { return add_[idx(a, b)]; }
  Fq sub(Fq a, Fq b) const { return add_[idx(a, neg_[b])]; }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq mul(Fq a, Fq b) const { return mul_[idx(a, b)]; }
  Fq inv(Fq a) const {
    if (a == 0) throw error("division by zero in finite field");
    return inv_[a];
  }
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

  Fq pow(Fq a, long e) const {
    if (a == 0) {
      if (e <= 0) throw error("0 to a nonpositive power");
      return 0;
    }
    long m = q_ - 1;
    e %= m;
    if (e < 0) e += m;
    Fq r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Element from an integer (reduces mod p in the prime field; requires
  // 0 <= v < q otherwise).
  Fq element(long v) const {
    if (k_ == 1) {
      long r = v % p_;
      if (r < 0) r += p_;
      return static_cast<Fq>(r);
    }
    if (v < 0 || v >= q_) throw invalid_argument("element encoding out of range");
    return static_cast<Fq>(v);
  }

  std::vector<int> coefficients(Fq a) const {
    std::vector<int> c(static_cast<std::size_t>(k_));
    int v = a;
    for (int i = 0; i < k_; ++i) { c[static_cast<std::size_t>(i)] = v % p_; v /= p_; }
    return c;
  }

  // All elements in canonical order.
  std::vector<Fq> elements() const {
    std::vector<Fq> out(static_cast<std::size_t>(q_));
    for (int i = 0; i < q_; ++i) out[static_cast<std::size_t>(i)] = static_cast<Fq>(i);
    return out;
  }

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && k_ == o.k_ && poly_ == o.poly_;
  }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  static std::vector<int> default_poly(int p, int k) {
    if (k == 1) return {0, 1};  // placeholder x, unused for prime fields
    // Fixed conventions: F_4 = F_2[x]/(x^2+x+1), F_8 = /(x^3+x+1),
    // F_9 = F_3[x]/(x^2+1), F_16 = /(x^4+x+1), F_25 = F_5[x]/(x^2+2).
    if (p == 2 && k == 2) return {1, 1, 1};
    if (p == 2 && k == 3) return {1, 1, 0, 1};
    if (p == 2 && k == 4) return {1, 1, 0, 0, 1};
    if (p == 3 && k == 2) return {1, 0, 1};
    if (p == 5 && k == 2) return {2, 0, 1};
    throw invalid_argument("no default polynomial for this (p,k)");
  }

 private:
  std::size_t idx(Fq a, Fq b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b;
  }

  // Polynomial arithmetic on digit vectors, for table construction only.
  std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    // reduce modulo the monic defining polynomial
    for (std::size_t d = prod.size(); d-- > static_cast<std::size_t>(k_);) {
      int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < k_; ++i) {
        std::size_t pos = d - static_cast<std::size_t>(k_) + static_cast<std::size_t>(i);
        prod[pos] = ((prod[pos] - c * poly_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(k_));
    return prod;
  }

  Fq encode(const std::vector<int>& c) const {
    int v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + c[static_cast<std::size_t>(i)];
    return static_cast<Fq>(v);
  }

  bool poly_irreducible() const {
    // Exhaustive: no root for k<=3 is not enough for k=4, so check for
    // factors of every degree d <= k/2 by trying all monic candidates.
    for (int d = 1; 2 * d <= k_; ++d) {
      int count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (int enc = 0; enc < count; ++enc) {
        std::vector<int> cand(static_cast<std::size_t>(d + 1), 0);
        int v = enc;
        for (int i = 0; i < d; ++i) { cand[static_cast<std::size_t>(i)] = v % p_; v /= p_; }
        cand[static_cast<std::size_t>(d)] = 1;
        if (divides(cand)) return false;
      }
    }
    return true;
  }

  bool divides(const std::vector<int>& divisor) const {
    std::vector<int> rem = poly_;
    int dd = static_cast<int>(divisor.size()) - 1;
    for (int d = static_cast<int>(rem.size()) - 1; d >= dd; --d) {
      int c = rem[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      // divisor is monic, multiply by c and subtract shifted
      for (int i = 0; i <= dd; ++i) {
        std::size_t pos = static_cast<std::size_t>(d - dd + i);
        rem[pos] = ((rem[pos] - c * divisor[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
      }
    }
    for (int i = 0; i < dd; ++i)
      if (rem[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  void build_tables() {
    std::size_t q = static_cast<std::size_t>(q_);
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q_; ++a) {
      auto ca = coefficients(static_cast<Fq>(a));
      std::vector<int> cn(static_cast<std::size_t>(k_));
      for (int i = 0; i < k_; ++i)
        cn[static_cast<std::size_t>(i)] = (p_ - ca[static_cast<std::size_t>(i)]) % p_;
      neg_[static_cast<std::size_t>(a)] = encode(cn);
      for (int b = 0; b < q_; ++b) {
        auto cb = coefficients(static_cast<Fq>(b));
        std::vector<int> cs(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i)
          cs[static_cast<std::size_t>(i)] =
              (ca[static_cast<std::size_t>(i)] + cb[static_cast<std::size_t>(i)]) % p_;
        add_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] = encode(cs);
        mul_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] = encode(poly_mul_mod(ca, cb));
      }
    }
    for (int a = 1; a < q_; ++a) {
      for (int b = 1; b < q_; ++b) {
        if (mul_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] == 1) {
          inv_[static_cast<std::size_t>(a)] = static_cast<Fq>(b);
          break;
        }
      }
      if (inv_[static_cast<std::size_t>(a)] == 0) throw error("element without inverse; field tables corrupt");
    }
  }

  int p_, k_, q_ = 0;
  std::vector<int> poly_;
  std::vector<Fq> add_, mul_, neg_, inv_;
};

}  // namespace wag
