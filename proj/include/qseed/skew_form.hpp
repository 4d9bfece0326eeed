#pragma once

#include "qseed/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qseed {

struct SkewForm {
  IntMatrix transform;
  std::vector<BigInt> blockValues;
  std::size_t corank = 0;
};

// Diag((0 d1; -d1 0), ..., 0, ..., 0) of the given size.
inline auto skew_canonical(const std::vector<BigInt>& blocks, std::size_t size) -> IntMatrix {
  if (2 * blocks.size() > size) throw DimensionError("too many blocks for size");
  IntMatrix m(size, size);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    m(2 * k, 2 * k + 1) = blocks[k];
    m(2 * k + 1, 2 * k) = -blocks[k];
  }
  return m;
}

namespace detail {

// Congruence by elementary operations: w <- E^t w E, p <- p E.
class Congruence {
 public:
  Congruence(IntMatrix w) : w_(std::move(w)), p_(IntMatrix::identity(w_.rows())) {}

  void swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    const std::size_t n = w_.rows();
    for (std::size_t k = 0; k < n; ++k) std::swap(w_(a, k), w_(b, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(w_(k, a), w_(k, b));
    for (std::size_t k = 0; k < n; ++k) std::swap(p_(k, a), p_(k, b));
  }

  // column/row dst += f * column/row src
  void add(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    const std::size_t n = w_.rows();
    for (std::size_t k = 0; k < n; ++k)
      if (w_(k, src) != 0) w_(k, dst) += f * w_(k, src);
    for (std::size_t k = 0; k < n; ++k)
      if (w_(src, k) != 0) w_(dst, k) += f * w_(src, k);
    for (std::size_t k = 0; k < n; ++k)
      if (p_(k, src) != 0) p_(k, dst) += f * p_(k, src);
  }

  [[nodiscard]] auto w() const -> const IntMatrix& { return w_; }
  [[nodiscard]] auto p() const -> const IntMatrix& { return p_; }

 private:
  IntMatrix w_;
  IntMatrix p_;
};

inline auto abs(const BigInt& v) -> BigInt { return v < 0 ? BigInt(-v) : v; }

}  // namespace detail

inline auto skew_normal_form(const IntMatrix& j) -> SkewForm {
  if (!j.is_skew()) throw DomainError("skew_normal_form requires a skew-symmetric matrix");
  const std::size_t n = j.rows();
  detail::Congruence c(j);
  SkewForm out;
  std::size_t t = 0;
  while (t + 1 < n) {
    bool settled = false;
    while (!settled) {
      const IntMatrix& w = c.w();
      std::optional<std::pair<std::size_t, std::size_t>> best;
      BigInt best_abs;
      for (std::size_t a = t; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          if (w(a, b) == 0) continue;
          BigInt v = detail::abs(w(a, b));
          if (!best || v < best_abs) {
            best = {a, b};
            best_abs = v;
          }
        }
      if (!best) break;
      auto [a, b] = *best;
      c.swap(t, a);
      c.swap(t + 1, b);

      const BigInt d = c.w()(t, t + 1);
      bool clean = true;
      for (std::size_t k = t + 2; k < n; ++k) {
        BigInt q = c.w()(t, k) / d;
        c.add(k, t + 1, -q);
        if (c.w()(t, k) != 0) clean = false;
        BigInt q2 = c.w()(t + 1, k) / d;
        c.add(k, t, q2);
        if (c.w()(t + 1, k) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offender;
      for (std::size_t x = t + 2; x < n && !offender; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          if (c.w()(x, y) % d != 0) {
            offender = x;
            break;
          }
      if (offender) {
        c.add(t, *offender, 1);
        continue;
      }
      if (d < 0) c.swap(t, t + 1);
      out.blockValues.push_back(c.w()(t, t + 1));
      settled = true;
    }
    if (!settled) break;
    t += 2;
  }
  out.transform = c.p();
  out.corank = n - 2 * out.blockValues.size();
  return out;
}

// Checks every SkewForm invariant against the input matrix.
inline auto verify_skew_form(const IntMatrix& j, const SkewForm& f) -> bool {
  if (!is_unimodular(f.transform)) return false;
  if (2 * f.blockValues.size() + f.corank != j.rows()) return false;
  for (std::size_t k = 0; k < f.blockValues.size(); ++k) {
    if (f.blockValues[k] <= 0) return false;
    if (k + 1 < f.blockValues.size() && f.blockValues[k + 1] % f.blockValues[k] != 0) return false;
  }
  return f.transform.transpose() * j * f.transform == skew_canonical(f.blockValues, j.rows());
}

}  // namespace qseed
