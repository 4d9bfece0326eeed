#pragma once

#include "qseed/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qseed {

struct KernelBasis {
  std::vector<IntVector> vectors;

  [[nodiscard]] auto dimension() const -> std::size_t { return vectors.size(); }
};

// Fraction-free (Bareiss) determinant.
inline auto det(const IntMatrix& m) -> BigInt {
  if (!m.square()) throw DimensionError("det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline auto rank(const IntMatrix& m) -> std::size_t {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over the rationals; pivots chosen at the earliest nonzero row.
inline auto rref(const RatMatrix& m) -> Echelon {
  Echelon e{m, {}};
  RatMatrix& a = e.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

inline auto rank(const RatMatrix& m) -> std::size_t { return rref(m).pivots.size(); }

inline auto det(const RatMatrix& m) -> Rational {
  if (!m.square()) throw DimensionError("det of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

inline auto inverse(const RatMatrix& m) -> std::optional<RatMatrix> {
  if (!m.square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, RatMatrix::identity(n));
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

inline auto inverse(const IntMatrix& m) -> std::optional<RatMatrix> { return inverse(to_rational(m)); }

inline auto primitive(const std::vector<Rational>& v) -> IntVector {
  BigInt l = 1;
  for (const auto& x : v) {
    const BigInt& d = boost::multiprecision::denominator(x);
    l = l / gcd(l, d) * d;
  }
  IntVector out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = boost::multiprecision::numerator(s);
    g = gcd(g, out[i]);
  }
  if (g == 0) return out;
  int sign = 1;
  for (const auto& x : out)
    if (x != 0) {
      sign = x < 0 ? -1 : 1;
      break;
    }
  for (auto& x : out) x = x / g * sign;
  return out;
}

inline auto primitive(const IntVector& v) -> IntVector {
  std::vector<Rational> r(v.begin(), v.end());
  return primitive(r);
}

inline auto kernel(const RatMatrix& m) -> KernelBasis {
  Echelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  KernelBasis kb;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    kb.vectors.push_back(primitive(v));
  }
  return kb;
}

inline auto kernel(const IntMatrix& m) -> KernelBasis { return kernel(to_rational(m)); }

// Coefficients of v in the span of the given independent vectors, if v lies in it.
inline auto coordinates(const std::vector<IntVector>& basis, const IntVector& v)
    -> std::optional<std::vector<Rational>> {
  const std::size_t k = basis.size(), n = v.size();
  RatMatrix aug(n, k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != n) throw DimensionError("vector length mismatch");
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = Rational(basis[j][i]);
  }
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = Rational(v[i]);
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == k) return std::nullopt;
  std::vector<Rational> c(k);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) c[e.pivots[i]] = e.reduced(i, k);
  return c;
}

inline auto independent(const std::vector<IntVector>& vs) -> bool {
  if (vs.empty()) return true;
  IntMatrix m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) m(i, j) = vs[i][j];
  return rank(m) == vs.size();
}

// Same rational span.
inline auto same_span(const std::vector<IntVector>& a, const std::vector<IntVector>& b) -> bool {
  if (a.size() != b.size() || !independent(a) || !independent(b)) return false;
  for (const auto& v : a)
    if (!coordinates(b, v)) return false;
  return true;
}

// Same integer lattice: both bases are integer combinations of each other.
inline auto same_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b) -> bool {
  if (!same_span(a, b)) return false;
  auto inside = [](const std::vector<IntVector>& basis, const std::vector<IntVector>& vs) {
    for (const auto& v : vs) {
      auto c = coordinates(basis, v);
      for (const auto& x : *c)
        if (!is_integer(x)) return false;
    }
    return true;
  };
  return inside(a, b) && inside(b, a);
}

template <class T>
auto block_assemble(const std::vector<std::vector<Matrix<T>>>& grid) -> Matrix<T> {
  if (grid.empty() || grid[0].empty()) throw DimensionError("empty block grid");
  const std::size_t br = grid.size(), bc = grid[0].size();
  std::vector<std::size_t> heights(br), widths(bc);
  for (std::size_t j = 0; j < bc; ++j) widths[j] = grid[0][j].cols();
  for (std::size_t i = 0; i < br; ++i) {
    if (grid[i].size() != bc) throw DimensionError("ragged block grid");
    heights[i] = grid[i][0].rows();
    for (std::size_t j = 0; j < bc; ++j)
      if (grid[i][j].rows() != heights[i] || grid[i][j].cols() != widths[j])
        throw DimensionError("ragged block grid");
  }
  std::size_t rows = 0, cols = 0;
  for (auto h : heights) rows += h;
  for (auto w : widths) cols += w;
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < br; ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < bc; ++j) {
      out.set_block(r0, c0, grid[i][j]);
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

inline auto is_unimodular(const IntMatrix& m) -> bool {
  if (!m.square()) return false;
  BigInt d = det(m);
  return d == 1 || d == -1;
}

}  // namespace qseed
