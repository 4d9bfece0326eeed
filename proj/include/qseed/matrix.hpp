#pragma once

#include "qseed/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace qseed {

// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionError("entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static auto identity(std::size_t n) -> Matrix {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static auto zero(std::size_t rows, std::size_t cols) -> Matrix { return Matrix(rows, cols); }

  [[nodiscard]] auto rows() const -> std::size_t { return rows_; }
  [[nodiscard]] auto cols() const -> std::size_t { return cols_; }
  [[nodiscard]] auto square() const -> bool { return rows_ == cols_; }
  [[nodiscard]] auto empty() const -> bool { return data_.empty(); }
  [[nodiscard]] auto data() const -> const std::vector<T>& { return data_; }

  auto operator()(std::size_t i, std::size_t j) -> T& { return data_[i * cols_ + j]; }
  auto operator()(std::size_t i, std::size_t j) const -> const T& { return data_[i * cols_ + j]; }

  [[nodiscard]] auto transpose() const -> Matrix {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] auto block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
      -> Matrix {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  [[nodiscard]] auto column(std::size_t j) const -> std::vector<T> {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  [[nodiscard]] auto is_zero() const -> bool {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  [[nodiscard]] auto is_skew() const -> bool {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  friend auto operator==(const Matrix& a, const Matrix& b) -> bool {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend auto operator+(const Matrix& a, const Matrix& b) -> Matrix {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend auto operator-(const Matrix& a, const Matrix& b) -> Matrix {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend auto operator-(const Matrix& a) -> Matrix {
    Matrix c = a;
    for (auto& x : c.data_) x = -x;
    return c;
  }
  friend auto operator*(const T& s, const Matrix& a) -> Matrix {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }
  friend auto operator*(const Matrix& a, const Matrix& b) -> Matrix {
    if (a.cols_ != b.rows_) throw DimensionError("product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (bkj != 0) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  auto operator+=(const Matrix& b) -> Matrix& { return *this = *this + b; }
  auto operator-=(const Matrix& b) -> Matrix& { return *this = *this - b; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<BigInt>;

inline auto to_rational(const IntMatrix& m) -> RatMatrix {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline auto is_integral(const RatMatrix& m) -> bool {
  for (const auto& x : m.data())
    if (!is_integer(x)) return false;
  return true;
}

// Throws DomainError when some entry has a nontrivial denominator.
inline auto to_integer(const RatMatrix& m) -> IntMatrix {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw DomainError("matrix is not integer-valued");
      r(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return r;
}

template <class T>
auto apply(const Matrix<T>& m, const std::vector<T>& v) -> std::vector<T> {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

template <class T>
auto power(const Matrix<T>& m, unsigned k) -> Matrix<T> {
  if (!m.square()) throw DimensionError("power of non-square matrix");
  Matrix<T> result = Matrix<T>::identity(m.rows());
  Matrix<T> base = m;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

template <class T>
auto elementary(std::size_t n, std::size_t i, std::size_t j) -> Matrix<T> {
  Matrix<T> e(n, n);
  e(i, j) = T(1);
  return e;
}

}  // namespace qseed
