#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqtate {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("IntMatrix: entry count does not match shape");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("IntMatrix: ragged rows");
      std::size_t j = 0;
      for (long v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static IntMatrix diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix column_vector(const IntVector& v) {
    return IntMatrix(v.size(), 1, v);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Int>& entries() const { return data_; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, const IntVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix columns(std::size_t first, std::size_t last) const {
    IntMatrix m(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = first; j < last; ++j) m(i, j - first) = (*this)(i, j);
    return m;
  }

  IntMatrix row_range(std::size_t first, std::size_t last) const {
    IntMatrix m(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - first, j) = (*this)(i, j);
    return m;
  }

  /// Copies `block` into this matrix with its top-left corner at (r, c).
  void put(std::size_t r, std::size_t c, const IntMatrix& block) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r + i, c + j) = block(i, j);
  }

  IntVector apply(const IntVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: size mismatch");
    IntVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(x[j]) != 0) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend IntMatrix operator*(const Int& s, IntMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(src, j)) != 0) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (sgn((*this)(i, src)) != 0) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }
  /// (row a, row b) <- (p*a + q*b, r*a + s*b)
  void combine_rows(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                    const Int& s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Int& x = (*this)(a, j);
      Int& y = (*this)(b, j);
      if (sgn(x) == 0 && sgn(y) == 0) continue;
      Int nx = p * x + q * y;
      y = r * x + s * y;
      x = std::move(nx);
    }
  }
  /// (col a, col b) <- (p*a + q*b, r*a + s*b)
  void combine_cols(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                    const Int& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Int& x = (*this)(i, a);
      Int& y = (*this)(i, b);
      if (sgn(x) == 0 && sgn(y) == 0) continue;
      Int nx = p * x + q * y;
      y = r * x + s * y;
      x = std::move(nx);
    }
  }

 private:
  void require_same_shape(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("IntMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// [a | b]
inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.put(0, 0, a);
  m.put(0, a.cols(), b);
  return m;
}

/// Block diagonal a ⊕ b.
inline IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.put(0, 0, a);
  m.put(a.rows(), a.cols(), b);
  return m;
}

/// Block diagonal with `copies` copies of `a`.
inline IntMatrix block_repeat(const IntMatrix& a, std::size_t copies) {
  IntMatrix m(a.rows() * copies, a.cols() * copies);
  for (std::size_t k = 0; k < copies; ++k) m.put(k * a.rows(), k * a.cols(), a);
  return m;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace eqtate
