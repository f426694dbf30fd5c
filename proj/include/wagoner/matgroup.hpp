#pragma once

// Square matrices over a finite field with exact inverse/determinant, plus
// the packed row-major encoding used as canonical key for group elements.

#include <cstdint>
#include <vector>

#include "wagoner/fields.hpp"

namespace wag {

class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(const FiniteField* f, std::size_t n) : field_(f), n_(n), e_(n * n, 0) {}

  static FqMatrix identity(const FiniteField* f, std::size_t n) {
    FqMatrix m(f, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  const FiniteField& field() const { return *field_; }

  Fq& at(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  Fq at(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

  // Row-major encoding; doubles as the canonical total order on elements.
  const std::vector<Fq>& encoding() const { return e_; }

  friend bool operator==(const FqMatrix& x, const FqMatrix& y) { return x.e_ == y.e_; }
  friend bool operator!=(const FqMatrix& x, const FqMatrix& y) { return !(x == y); }
  friend bool operator<(const FqMatrix& x, const FqMatrix& y) { return x.e_ < y.e_; }

  friend FqMatrix operator*(const FqMatrix& x, const FqMatrix& y) {
    if (x.n_ != y.n_) throw invalid_argument("matrix dimension mismatch");
    const FiniteField& F = *x.field_;
    FqMatrix z(x.field_, x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        Fq v = x.at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j)
          z.at(i, j) = F.add(z.at(i, j), F.mul(v, y.at(k, j)));
      }
    return z;
  }

  Fq det() const {
    const FiniteField& F = *field_;
    FqMatrix a = *this;
    Fq d = 1;
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t p = c;
      while (p < n_ && a.at(p, c) == 0) ++p;
      if (p == n_) return 0;
      if (p != c) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(a.at(p, j), a.at(c, j));
        d = F.neg(d);
      }
      d = F.mul(d, a.at(c, c));
      Fq inv = F.inv(a.at(c, c));
      for (std::size_t i = c + 1; i < n_; ++i) {
        Fq f = F.mul(a.at(i, c), inv);
        if (f == 0) continue;
        for (std::size_t j = c; j < n_; ++j)
          a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(c, j)));
      }
    }
    return d;
  }

  FqMatrix inverse() const {
    const FiniteField& F = *field_;
    FqMatrix a = *this, inv = identity(field_, n_);
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t p = c;
      while (p < n_ && a.at(p, c) == 0) ++p;
      if (p == n_) throw error("singular matrix has no inverse");
      if (p != c)
        for (std::size_t j = 0; j < n_; ++j) {
          std::swap(a.at(p, j), a.at(c, j));
          std::swap(inv.at(p, j), inv.at(c, j));
        }
      Fq s = F.inv(a.at(c, c));
      for (std::size_t j = 0; j < n_; ++j) {
        a.at(c, j) = F.mul(a.at(c, j), s);
        inv.at(c, j) = F.mul(inv.at(c, j), s);
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == c || a.at(i, c) == 0) continue;
        Fq f = a.at(i, c);
        for (std::size_t j = 0; j < n_; ++j) {
          a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(c, j)));
          inv.at(i, j) = F.sub(inv.at(i, j), F.mul(f, inv.at(c, j)));
        }
      }
    }
    return inv;
  }

  std::vector<Fq> apply(const std::vector<Fq>& v) const {
    const FiniteField& F = *field_;
    std::vector<Fq> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        out[i] = F.add(out[i], F.mul(at(i, j), v[j]));
    return out;
  }

 private:
  const FiniteField* field_ = nullptr;
  std::size_t n_ = 0;
  std::vector<Fq> e_;
};

}  // namespace wag
