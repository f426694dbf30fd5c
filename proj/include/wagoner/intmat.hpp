#pragma once

// Dense arbitrary-precision integer matrices and Smith normal form.  Sized
// for chain-complex boundary matrices of the complexes built here; pivoting
// is by minimal absolute value with exact arithmetic throughout.

#include <cstddef>
#include <utility>
#include <vector>

#include "wagoner/quadint.hpp"  // BigInt

namespace wag {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw invalid_argument("matrix dimension mismatch");
    IntMatrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const BigInt& v = x.at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) z.at(i, j) += v * y.at(k, j);
      }
    return z;
  }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

struct SNFResult {
  std::vector<BigInt> factors;  // d_1 | d_2 | ... | d_r, all positive
  std::size_t rank = 0;
  bool has_transforms = false;
  IntMatrix left, right;  // left * A * right = diag(factors), both unimodular
};

// Smith normal form by minimal-absolute-value pivoting.
inline SNFResult smith_normal_form(IntMatrix a, bool want_transforms = false) {
  const std::size_t m = a.rows(), n = a.cols();
  SNFResult res;
  res.has_transforms = want_transforms;
  if (want_transforms) {
    res.left = IntMatrix::identity(m);
    res.right = IntMatrix::identity(n);
  }

  auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < n; ++j) a.at(dst, j) += f * a.at(src, j);
    if (want_transforms)
      for (std::size_t j = 0; j < m; ++j) res.left.at(dst, j) += f * res.left.at(src, j);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t i = 0; i < m; ++i) a.at(i, dst) += f * a.at(i, src);
    if (want_transforms)
      for (std::size_t i = 0; i < n; ++i) res.right.at(i, dst) += f * res.right.at(i, src);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(a.at(x, j), a.at(y, j));
    if (want_transforms)
      for (std::size_t j = 0; j < m; ++j) std::swap(res.left.at(x, j), res.left.at(y, j));
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(a.at(i, x), a.at(i, y));
    if (want_transforms)
      for (std::size_t i = 0; i < n; ++i) std::swap(res.right.at(i, x), res.right.at(i, y));
  };
  auto row_negate = [&](std::size_t x) {
    for (std::size_t j = 0; j < n; ++j) a.at(x, j) = -a.at(x, j);
    if (want_transforms)
      for (std::size_t j = 0; j < m; ++j) res.left.at(x, j) = -res.left.at(x, j);
  };

  std::size_t t = 0;
  while (t < m && t < n) {
    // locate minimal nonzero |entry| in the trailing block
    std::size_t pr = t, pc = t;
    BigInt best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const BigInt& v = a.at(i, j);
        if (v == 0) continue;
        BigInt av = v < 0 ? BigInt(-v) : v;
        if (best == 0 || av < best) { best = av; pr = i; pc = j; }
      }
    if (best == 0) break;
    row_swap(t, pr);
    col_swap(t, pc);
    if (a.at(t, t) < 0) row_negate(t);

    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a.at(i, t) == 0) continue;
      BigInt f = a.at(i, t) / a.at(t, t);
      if (f != 0) row_add(i, t, -f);
      if (a.at(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a.at(t, j) == 0) continue;
      BigInt f = a.at(t, j) / a.at(t, t);
      if (f != 0) col_add(j, t, -f);
      if (a.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // smaller remainders appeared; re-pick pivot

    // pivot divides its row and column; enforce divisibility of the block
    bool absorbed = false;
    for (std::size_t i = t + 1; i < m && !absorbed; ++i)
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a.at(i, j) % a.at(t, t) != 0) {
          row_add(t, i, 1);
          absorbed = true;
          break;
        }
      }
    if (absorbed) continue;
    ++t;
  }

  res.rank = t;
  res.factors.reserve(t);
  for (std::size_t i = 0; i < t; ++i) res.factors.push_back(a.at(i, i));
  return res;
}

}  // namespace wag
