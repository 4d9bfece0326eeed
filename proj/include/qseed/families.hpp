#pragma once

#include "qseed/linalg.hpp"
#include "qseed/serialize.hpp"

#include <optional>
#include <string>
#include <utility>

namespace qseed {

enum class Kind { FRT, DipperDonkin, CombinedI, CombinedII, Extended, Custom };

inline auto kind_name(Kind k) -> std::string {
  switch (k) {
    case Kind::FRT: return "frt";
    case Kind::DipperDonkin: return "dd";
    case Kind::CombinedI: return "c1";
    case Kind::CombinedII: return "c2";
    case Kind::Extended: return "ext";
    case Kind::Custom: return "custom";
  }
  return "?";
}

inline auto parse_kind(const std::string& s) -> Kind {
  if (s == "frt") return Kind::FRT;
  if (s == "dd") return Kind::DipperDonkin;
  if (s == "c1") return Kind::CombinedI;
  if (s == "c2") return Kind::CombinedII;
  if (s == "ext") return Kind::Extended;
  if (s == "custom") return Kind::Custom;
  throw DomainError("unknown family kind: " + s);
}

struct FamilySpec {
  Kind kind = Kind::DipperDonkin;
  std::size_t n = 1;
  std::size_t r = 1;
  std::optional<IntMatrix> A;  // Custom only
  std::optional<IntMatrix> M;  // Custom only

  static auto frt(std::size_t n, std::size_t r) -> FamilySpec { return {Kind::FRT, n, r, {}, {}}; }
  static auto dd(std::size_t n, std::size_t r) -> FamilySpec { return {Kind::DipperDonkin, n, r, {}, {}}; }
  static auto c1(std::size_t n, std::size_t r) -> FamilySpec { return {Kind::CombinedI, n, r, {}, {}}; }
  static auto c2(std::size_t n, std::size_t r) -> FamilySpec { return {Kind::CombinedII, n, r, {}, {}}; }
  static auto ext(std::size_t n, std::size_t r) -> FamilySpec { return {Kind::Extended, n, r, {}, {}}; }
  static auto custom(std::size_t n, IntMatrix a, IntMatrix m) -> FamilySpec {
    FamilySpec s{Kind::Custom, n, a.rows(), std::move(a), std::move(m)};
    s.validate();
    return s;
  }

  [[nodiscard]] auto named() const -> bool { return kind != Kind::Custom && kind != Kind::Extended; }

  void validate() const {
    if (n < 1 || r < 1) throw DomainError("n and r must be at least 1");
    if (kind == Kind::Custom) {
      if (!A || !M) throw DomainError("custom family needs A and M");
      if (A->rows() != r || A->cols() != r || M->rows() != r || M->cols() != r)
        throw DimensionError("custom A and M must be r x r");
      if (!A->is_skew()) throw DomainError("custom A must be skew-symmetric");
    }
  }

  [[nodiscard]] auto label() const -> std::string {
    return kind_name(kind) + "(" + std::to_string(n) + "," + std::to_string(r) + ")";
  }

  friend auto operator==(const FamilySpec& a, const FamilySpec& b) -> bool {
    return a.kind == b.kind && a.n == b.n && a.r == b.r && a.A == b.A && a.M == b.M;
  }
};

inline auto to_json(const FamilySpec& s) -> json {
  json j{{"kind", kind_name(s.kind)}, {"n", s.n}, {"r", s.r}};
  if (s.A) j["A"] = to_json(*s.A);
  if (s.M) j["M"] = to_json(*s.M);
  return j;
}

inline auto family_from_json(const json& j) -> FamilySpec {
  FamilySpec s;
  s.kind = parse_kind(j.at("kind").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.r = j.at("r").get<std::size_t>();
  if (j.contains("A")) s.A = int_matrix_from_json(j.at("A"));
  if (j.contains("M")) s.M = int_matrix_from_json(j.at("M"));
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Structural r x r matrices. Indices passed to E_unit are 1-based.

enum class Structural { N_r, M_r, S_r, X_r, T, P, Q, U_n, E_tilde, E_unit };

namespace detail {
inline void need_size(std::size_t size) {
  if (size < 1) throw DimensionError("structural matrix size must be at least 1");
}
}  // namespace detail

inline auto N_r(std::size_t r) -> IntMatrix {
  detail::need_size(r);
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) m(i, j) = -1;
  return m;
}

inline auto M_r(std::size_t r) -> IntMatrix { return -N_r(r).transpose(); }

inline auto T_r(std::size_t r) -> IntMatrix {
  detail::need_size(r);
  IntMatrix m(r, r);
  for (std::size_t i = 0; i + 1 < r; ++i) m(i, i + 1) = 1;
  return m;
}

inline auto S_r(std::size_t r) -> IntMatrix {
  IntMatrix m = T_r(r);
  m(r - 1, 0) -= 1;
  return m;
}

inline auto X_r(std::size_t r) -> IntMatrix {
  IntMatrix m = T_r(r);
  for (std::size_t j = 0; j < r; ++j) m(r - 1, j) = -1;
  return m;
}

inline auto P_r(std::size_t r) -> IntMatrix {
  detail::need_size(r);
  IntMatrix m(r, r);
  for (std::size_t j = 0; j < r; ++j) m(r - 1, j) = 1;
  return m;
}

inline auto E_unit(std::size_t size, std::size_t i, std::size_t j) -> IntMatrix {
  detail::need_size(size);
  if (i < 1 || j < 1 || i > size || j > size) throw DimensionError("E_unit index out of range");
  return elementary<BigInt>(size, i - 1, j - 1);
}

// I + sum of E_{n,2i+1} over 1 <= 2i+1 < n
inline auto U_n(std::size_t n) -> IntMatrix {
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t c = 1; c < n; c += 2) m(n - 1, c - 1) += 1;
  return m;
}

// E_nn - E_{n-1,n} + E_{n-2,n} - ... : last column with entries (-1)^(n-i)
inline auto E_tilde(std::size_t n) -> IntMatrix {
  detail::need_size(n);
  IntMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m(i - 1, n - 1) = ((n - i) % 2 == 0) ? 1 : -1;
  return m;
}

inline auto structural(Structural kind, std::size_t size, std::size_t i = 1, std::size_t j = 1)
    -> IntMatrix {
  switch (kind) {
    case Structural::N_r: return N_r(size);
    case Structural::M_r: return M_r(size);
    case Structural::S_r: return S_r(size);
    case Structural::X_r: return X_r(size);
    case Structural::T: return T_r(size);
    case Structural::P:
    case Structural::Q: return P_r(size);
    case Structural::U_n: return U_n(size);
    case Structural::E_tilde: return E_tilde(size);
    case Structural::E_unit: return E_unit(size, i, j);
  }
  throw DomainError("unknown structural selector");
}

// ---------------------------------------------------------------------------
// Defining matrices.

// (A, M) for a non-extended spec.
inline auto family_blocks(const FamilySpec& s) -> std::pair<IntMatrix, IntMatrix> {
  s.validate();
  const std::size_t r = s.r;
  switch (s.kind) {
    case Kind::DipperDonkin: return {IntMatrix(r, r), M_r(r)};
    case Kind::FRT: return {-(M_r(r) + N_r(r)), IntMatrix::identity(r)};
    case Kind::CombinedI: return {M_r(r) + N_r(r), M_r(r)};
    case Kind::CombinedII: return {M_r(r) + N_r(r), N_r(r)};
    case Kind::Custom: return {*s.A, *s.M};
    case Kind::Extended: break;
  }
  throw DomainError("extended family has no (A, M) pair");
}

inline auto build_H_blocks(std::size_t n, const IntMatrix& a, const IntMatrix& m) -> IntMatrix {
  const std::size_t r = a.rows();
  const IntMatrix nb = -m.transpose();
  IntMatrix h(n * r, n * r);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) h.set_block(x * r, y * r, x == y ? a : (x < y ? m : nb));
  return h;
}

// Z generators first (alpha slow), then C_1..C_r, then R_1..R_n.
inline auto build_H_extended(std::size_t n, std::size_t r) -> IntMatrix {
  if (n < 1 || r < 1) throw DomainError("n and r must be at least 1");
  const std::size_t z = n * r, size = z + r + n;
  IntMatrix h(size, size);
  h.set_block(0, 0, build_H_blocks(n, IntMatrix(r, r), BigInt(2) * M_r(r)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t row = a * r + j;
      h(row, z + j) = 1;
      h(z + j, row) = -1;
      h(row, z + r + a) = 1;
      h(z + r + a, row) = -1;
    }
  return h;
}

inline auto build_H(const FamilySpec& s) -> IntMatrix {
  s.validate();
  if (s.kind == Kind::Extended) return build_H_extended(s.n, s.r);
  auto [a, m] = family_blocks(s);
  return build_H_blocks(s.n, a, m);
}

inline auto build_T_basis(std::size_t n, std::size_t r) -> IntMatrix {
  const IntMatrix t = T_r(r);
  IntMatrix out(n * r, n * r);
  IntMatrix pw = IntMatrix::identity(r);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t a = 0; a + d < n; ++a) out.set_block(a * r, (a + d) * r, pw);
    pw = pw * t;
  }
  return out;
}

inline auto build_T_basis_inverse(std::size_t n, std::size_t r) -> IntMatrix {
  const IntMatrix t = T_r(r);
  IntMatrix out = IntMatrix::identity(n * r);
  for (std::size_t a = 0; a + 1 < n; ++a) out.set_block(a * r, (a + 1) * r, -t);
  return out;
}

inline auto build_lambda(const FamilySpec& s) -> IntMatrix {
  const IntMatrix h = build_H(s);
  if (s.kind == Kind::Extended) throw DomainError("lambda is defined for the n x r minor family only");
  const IntMatrix t = build_T_basis(s.n, s.r);
  return t.transpose() * h * t;
}

// ---------------------------------------------------------------------------
// Elimination artifacts.

struct Elimination {
  RatMatrix AminusN_inv;  // (A - N)^{-1}
  RatMatrix X;            // (A - N)^{-1}(A - M)
  RatMatrix N;
  RatMatrix F;
};

inline auto elimination(const FamilySpec& s) -> Elimination {
  auto [a, m] = family_blocks(s);
  const RatMatrix A = to_rational(a), M = to_rational(m), N = -to_rational(m).transpose();
  auto an = inverse(A - N);
  if (!an) throw DomainError("A - N is singular");
  const RatMatrix X = *an * (A - M);
  RatMatrix sum(s.r, s.r), pw = RatMatrix::identity(s.r);
  for (std::size_t k = 0; k < s.n; ++k) {
    sum += pw;
    pw = pw * X;
  }
  return {*an, X, N, (A - N) + N * sum};
}

inline auto build_F(const FamilySpec& s) -> RatMatrix {
  RatMatrix f = elimination(s).F;
  auto [a, m] = family_blocks(s);
  if (!inverse(to_rational(m + m.transpose()))) throw DomainError("I - X is singular (M - N is singular)");
  if (s.named() && !is_integral(f)) throw DomainError("F is not integer-valued for a named family");
  return f;
}

// X of the elimination; for named families this is an integer matrix.
inline auto build_X(const FamilySpec& s) -> RatMatrix { return elimination(s).X; }

struct K2H4 {
  RatMatrix K2;
  RatMatrix H4;
};

inline auto build_K2_H4(const FamilySpec& s) -> K2H4 {
  const Elimination e = elimination(s);
  const std::size_t n = s.n, r = s.r;
  const RatMatrix I = RatMatrix::identity(r);
  std::vector<RatMatrix> xp{I};
  for (std::size_t k = 1; k <= n; ++k) xp.push_back(xp.back() * e.X);

  RatMatrix k2(n * r, n * r);
  for (std::size_t a = 0; a + 1 < n; ++a) {
    k2.set_block(a * r, a * r, I);
    for (std::size_t b = a + 1; b + 1 < n; ++b) k2.set_block(a * r, b * r, xp[b - a] - xp[b - a - 1]);
    k2.set_block(a * r, (n - 1) * r, -xp[n - 2 - a]);
  }
  const RatMatrix anN = e.AminusN_inv * e.N;
  RatMatrix xsum(r, r);
  for (std::size_t b = 0; b + 1 < n; ++b) {
    k2.set_block((n - 1) * r, b * r, -(anN * xp[b]));
    xsum += xp[b];
  }
  k2.set_block((n - 1) * r, (n - 1) * r, I + anN * xsum);
  RatMatrix diag(n * r, n * r);
  for (std::size_t a = 0; a < n; ++a) diag.set_block(a * r, a * r, e.AminusN_inv);
  k2 = k2 * diag;

  RatMatrix h4 = RatMatrix::identity(n * r);
  for (std::size_t a = 0; a + 1 < n; ++a) h4.set_block(a * r, (n - 1) * r, -xp[n - 1 - a]);
  h4.set_block((n - 1) * r, (n - 1) * r, e.AminusN_inv * e.F);
  return {k2, h4};
}

}  // namespace qseed
