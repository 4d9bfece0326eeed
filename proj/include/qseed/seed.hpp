#pragma once

#include "qseed/families.hpp"
#include "qseed/linalg.hpp"
#include "qseed/serialize.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qseed {

struct LeftReduction {
  RatMatrix K;
  RatMatrix Y;  // (N - s) x s
  std::size_t s = 0;
};

// Exact K with K*h = [[I, Y], [0, 0]], from Gauss-Jordan on [h | I] with earliest-row pivots.
inline auto left_reduce(const IntMatrix& h) -> LeftReduction {
  if (!h.square()) throw DimensionError("left_reduce needs a square matrix");
  const std::size_t N = h.rows();
  const RatMatrix aug = block_assemble<Rational>({{to_rational(h), RatMatrix::identity(N)}});
  const Echelon e = rref(aug);
  std::size_t c = 0;
  while (c < e.pivots.size() && e.pivots[c] < N) ++c;
  for (std::size_t i = 0; i < c; ++i)
    if (e.pivots[i] != i)
      throw NotApplicable("leading columns of H are dependent; no reduction of the form [[I, Y], [0, 0]]");
  LeftReduction out;
  out.s = N - c;
  out.K = e.reduced.block(0, N, N, N);
  out.Y = e.reduced.block(0, c, c, out.s);
  return out;
}

struct BlockParams {
  RatMatrix a;  // c x c, invertible upper triangular
  RatMatrix b;  // c x s
  RatMatrix d;  // s x s, invertible upper triangular
};

struct CompatiblePair {
  IntMatrix lambda;
  RatMatrix bTilde;  // N x c
  std::size_t c = 0;
  RatMatrix basisChange;
};

class ParameterError : public DomainError {
 public:
  ParameterError(const std::string& what, RatMatrix residual) : DomainError(what), residual_(std::move(residual)) {}
  [[nodiscard]] auto residual() const -> const RatMatrix& { return residual_; }

 private:
  RatMatrix residual_;
};

// (-2 I_c ; 0) of shape N x c.
inline auto compatibility_target(std::size_t N, std::size_t c) -> RatMatrix {
  RatMatrix t(N, c);
  for (std::size_t i = 0; i < c; ++i) t(i, i) = -2;
  return t;
}

inline auto is_upper_triangular(const RatMatrix& m) -> bool {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, m.cols()); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

// Certifies every CompatiblePair invariant; throws std::logic_error on failure.
inline void certify(const CompatiblePair& p) {
  const std::size_t N = p.lambda.rows();
  if (!p.lambda.is_skew()) throw std::logic_error("lambda is not skew-symmetric");
  if (p.bTilde.rows() != N || p.bTilde.cols() != p.c) throw std::logic_error("bTilde has the wrong shape");
  if (to_rational(p.lambda) * p.bTilde != compatibility_target(N, p.c))
    throw std::logic_error("lambda * bTilde differs from (-2I ; 0)");
  if (!is_upper_triangular(p.basisChange) || !inverse(p.basisChange))
    throw std::logic_error("basis change is not invertible upper triangular");
}

inline auto default_block_params(const FamilySpec& s, const LeftReduction& red) -> BlockParams {
  const RatMatrix t = to_rational(build_T_basis(s.n, s.r));
  const std::size_t N = t.rows(), c = N - red.s;
  BlockParams p;
  p.a = t.block(0, 0, c, c);
  p.d = t.block(c, c, red.s, red.s);
  p.b = red.s ? RatMatrix(-(red.Y * p.d)) : RatMatrix(c, 0);
  return p;
}

inline auto compatible_pair(const FamilySpec& s, const std::optional<BlockParams>& params = std::nullopt)
    -> CompatiblePair {
  s.validate();
  if (s.kind == Kind::Extended) throw NotApplicable("compatible pairs need an nr x nr defining matrix");
  const IntMatrix h = build_H(s);
  const std::size_t N = h.rows();
  const LeftReduction red = left_reduce(h);
  const std::size_t c = N - red.s;
  const BlockParams p = params ? *params : default_block_params(s, red);
  if (p.a.rows() != c || p.a.cols() != c || p.d.rows() != red.s || p.d.cols() != red.s || p.b.rows() != c ||
      p.b.cols() != red.s)
    throw DimensionError("block parameters do not match corank " + std::to_string(red.s));
  if (red.s) {
    const RatMatrix residual = p.b + red.Y * p.d;
    if (!residual.is_zero()) throw ParameterError("block parameters violate b = -Y d", residual);
  }

  RatMatrix tabd(N, N);
  tabd.set_block(0, 0, p.a);
  if (red.s) {
    tabd.set_block(0, c, p.b);
    tabd.set_block(c, c, p.d);
  }
  const auto tinv = inverse(tabd);
  if (!tinv || !is_upper_triangular(tabd)) throw DomainError("basis change must be invertible upper triangular");

  CompatiblePair out;
  out.c = c;
  out.basisChange = tabd;
  out.lambda = to_integer(tabd.transpose() * to_rational(h) * tabd);
  // Full rank: K = H^-1, so this is 2 (Lambda^-1)^t.
  const RatMatrix K = red.s ? red.K : *inverse(h);
  const RatMatrix full = Rational(2) * (*tinv * K * tinv->transpose()).transpose();
  out.bTilde = full.block(0, 0, N, c);
  certify(out);
  return out;
}

struct TruncatedPair {
  IntMatrix lambda;
  RatMatrix b;
  std::vector<std::size_t> mutableColumns;  // 0-based basis positions kept
  std::vector<std::pair<std::size_t, std::size_t>> frozen;
};

// chi_{n1..nr} and chi_{n-1,r}..chi_{1r}.
inline auto default_frozen(std::size_t n, std::size_t r) -> std::vector<std::pair<std::size_t, std::size_t>> {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 1; j <= r; ++j) out.emplace_back(n, j);
  for (std::size_t a = n - 1; a >= 1; --a) out.emplace_back(a, r);
  return out;
}

inline auto truncate_nonmutable(const CompatiblePair& p, std::size_t n, std::size_t r,
                                const std::vector<std::pair<std::size_t, std::size_t>>& frozen) -> TruncatedPair {
  const std::size_t N = p.lambda.rows();
  if (N != n * r) throw DimensionError("pair size differs from n*r");
  std::set<std::size_t> drop;
  for (const auto& [a, j] : frozen) {
    if (a < 1 || a > n || j < 1 || j > r) throw DomainError("frozen minor index out of range");
    drop.insert((a - 1) * r + (j - 1));
  }
  TruncatedPair out{p.lambda, RatMatrix(), {}, frozen};
  for (std::size_t k = 0; k < p.c; ++k)
    if (!drop.count(k)) out.mutableColumns.push_back(k);
  if (out.mutableColumns.empty()) throw DomainError("frozen set leaves no mutable column");
  out.b = RatMatrix(N, out.mutableColumns.size());
  for (std::size_t t = 0; t < out.mutableColumns.size(); ++t)
    for (std::size_t i = 0; i < N; ++i) out.b(i, t) = p.bTilde(i, out.mutableColumns[t]);
  const RatMatrix prod = to_rational(p.lambda) * out.b;
  for (std::size_t t = 0; t < out.mutableColumns.size(); ++t)
    for (std::size_t i = 0; i < N; ++i)
      if (prod(i, t) != (i == out.mutableColumns[t] ? Rational(-2) : Rational(0)))
        throw std::logic_error("truncated pair fails the compatibility check");
  return out;
}

inline auto seed_json(const FamilySpec& s, const CompatiblePair& p,
                      const std::vector<std::pair<std::size_t, std::size_t>>& frozen = {}) -> json {
  json fz = json::array();
  for (const auto& [a, j] : frozen) fz.push_back({a, j});
  return json{{"lambda", to_json(p.lambda)}, {"bTilde", to_json(p.bTilde)}, {"c", p.c}, {"frozen", fz},
              {"family", to_json(s)}};
}

}  // namespace qseed
