#pragma once

#include "qseed/families.hpp"
#include "qseed/skew_form.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qseed {

namespace detail {

inline auto ugcd(std::size_t a, std::size_t b) -> std::size_t { return std::gcd(a, b); }

inline auto rat(const IntMatrix& m) -> RatMatrix { return to_rational(m); }

// Integer power, negative exponents through the exact inverse.
inline auto ipow(const RatMatrix& m, long k) -> RatMatrix {
  if (k >= 0) return power(m, static_cast<unsigned>(k));
  auto inv = inverse(m);
  if (!inv) throw DomainError("negative power of a singular matrix");
  return power(*inv, static_cast<unsigned>(-k));
}

inline auto E(std::size_t r, std::size_t i, std::size_t j) -> RatMatrix {
  return rat(E_unit(r, i, j));
}

inline auto block(const RatMatrix& m, std::size_t r, std::size_t a, std::size_t b) -> RatMatrix {
  return m.block(a * r, b * r, r, r);
}

// Fill the lower blocks (a >= b, 0-based) from f, the upper blocks by block skew-symmetry.
template <class F>
auto skew_blocks(std::size_t n, std::size_t r, F f) -> RatMatrix {
  RatMatrix out(n * r, n * r);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      RatMatrix v = f(a + 1, b + 1);
      out.set_block(a * r, b * r, v);
      if (a != b) out.set_block(b * r, a * r, -v.transpose());
    }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coranks and determinants.

inline auto corank_closed(const FamilySpec& s) -> std::size_t {
  s.validate();
  const std::size_t n = s.n, r = s.r;
  switch (s.kind) {
    case Kind::DipperDonkin: return detail::ugcd(n - 1, r + 1) - 1;
    case Kind::FRT: {
      const std::size_t g = detail::ugcd(n, r);
      return ((n / g) % 2 == 1 && (r / g) % 2 == 1) ? g : 0;
    }
    case Kind::CombinedI:
    case Kind::CombinedII: return detail::ugcd(n + 1, r + 1) - 1;
    case Kind::Extended: return detail::ugcd(n, r);
    case Kind::Custom: break;
  }
  throw NotApplicable("no closed-form corank for custom families");
}

// Empty when no closed value is known.
inline auto det_closed(const FamilySpec& s) -> std::optional<BigInt> {
  if (s.kind == Kind::Custom) return std::nullopt;
  if (corank_closed(s) > 0) return BigInt(0);
  if (s.kind == Kind::FRT) {
    const std::size_t g = detail::ugcd(s.n, s.r);
    return boost::multiprecision::pow(BigInt(2), static_cast<unsigned>((s.r - 1) * (s.n - 1) + g - 1));
  }
  return BigInt(1);
}

// ---------------------------------------------------------------------------
// H^{-1}.

struct ClosedInverse {
  RatMatrix matrix;
  std::string formula;
};

namespace detail {

inline auto hinv_generic(const FamilySpec& s) -> RatMatrix {
  const Elimination e = elimination(s);
  auto fi = inverse(e.F);
  if (!fi) throw NotApplicable("F is singular");
  const std::size_t n = s.n, r = s.r;
  const RatMatrix I = RatMatrix::identity(r);
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) {
    const RatMatrix core = ipow(e.X, static_cast<long>(n - a)) * *fi * e.N * ipow(e.X, static_cast<long>(b - 1));
    return a == b ? RatMatrix((I - core) * e.AminusN_inv) : RatMatrix(-(core * e.AminusN_inv));
  });
}

// n = r even: entries depend on (b - a) mod (r + 1) only.
inline auto hinv_dd_square_even(std::size_t r) -> RatMatrix {
  const std::size_t size = r * r;
  RatMatrix m(size, size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a + 1; b < size; ++b) {
      const std::size_t c = (b - a) % (r + 1);
      const int v = c == 1 ? 0 : ((c % 2 == 1 || c == 0) ? 1 : -1);
      m(a, b) = v;
      m(b, a) = -v;
    }
  return m;
}

inline auto hinv_dd_next(std::size_t r) -> RatMatrix {
  const std::size_t n = r + 1;
  const RatMatrix T = rat(T_r(r)), Tt = T.transpose();
  auto tp = [&](long k) { return k >= static_cast<long>(r) ? RatMatrix(r, r) : ipow(T, k); };
  auto ttp = [&](long k) { return k >= static_cast<long>(r) ? RatMatrix(r, r) : ipow(Tt, k); };
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) {
    if (a == b) return RatMatrix(Tt - T);
    // upper block (b, a), returned transposed and negated
    const long d = static_cast<long>(a) - static_cast<long>(b);
    const long rr = static_cast<long>(r);
    RatMatrix up = tp(d) - tp(d + 1) + ttp(rr - d + 1) - ttp(rr - d);
    return RatMatrix(-up.transpose());
  });
}

inline auto hinv_frt_next(std::size_t r) -> RatMatrix {
  const std::size_t n = r + 1;
  const RatMatrix S = rat(S_r(r));
  const Rational half(1, 2);
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) {
    if (a == b) return RatMatrix(r, r);
    const long d = static_cast<long>(b) - static_cast<long>(a);
    return RatMatrix(half * (ipow(S, d + 1) - ipow(S, d)));
  });
}

inline auto hinv_frt_regular(std::size_t n, std::size_t r) -> RatMatrix {
  const RatMatrix S = rat(S_r(r)), I = RatMatrix::identity(r);
  auto sn = inverse(I + ipow(S, static_cast<long>(n)));
  if (!sn) throw NotApplicable("I + S^n is singular");
  const Rational half(1, 2);
  const RatMatrix sq = (I - S) * (I - S);
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) {
    if (a == b) return RatMatrix(half * ((I - S) * (I + ipow(S, static_cast<long>(n) - 1)) * *sn));
    const long e = static_cast<long>(n + b) - static_cast<long>(a) - 1;
    return RatMatrix(half * (ipow(S, e) * sq * *sn));
  });
}

}  // namespace detail

inline auto inverse_H_closed(const FamilySpec& s) -> ClosedInverse {
  s.validate();
  if (s.kind == Kind::Extended) throw NotApplicable("extended defining matrix is singular");
  if (s.kind != Kind::Custom && corank_closed(s) > 0) throw NotApplicable("H is singular");
  const std::size_t n = s.n, r = s.r;
  if (s.kind == Kind::DipperDonkin && n == r && r % 2 == 0)
    return {detail::hinv_dd_square_even(r), "dd-square-even-residue"};
  if (s.kind == Kind::DipperDonkin && n == r + 1) return {detail::hinv_dd_next(r), "dd-n-eq-r+1"};
  if (s.kind == Kind::FRT && n == r + 1) return {detail::hinv_frt_next(r), "frt-n-eq-r+1"};
  if (s.kind == Kind::FRT) return {detail::hinv_frt_regular(n, r), "frt-regular-block"};
  return {detail::hinv_generic(s), "generic-block"};
}

// ---------------------------------------------------------------------------
// Lambda^{-1}.

namespace detail {

// Lambda^{-1} = T^{-1} H^{-1} T^{-t}, written blockwise.
inline auto lambda_inv_from_hinv(const RatMatrix& hi, std::size_t n, std::size_t r) -> RatMatrix {
  const RatMatrix T = rat(T_r(r)), Tt = T.transpose();
  auto h = [&](std::size_t a, std::size_t b) -> RatMatrix {
    if (a > n || b > n) return RatMatrix(r, r);
    return block(hi, r, a - 1, b - 1);
  };
  RatMatrix out(n * r, n * r);
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = 1; b <= n; ++b)
      out.set_block((a - 1) * r, (b - 1) * r, h(a, b) - h(a, b + 1) * Tt - T * h(a + 1, b) + T * h(a + 1, b + 1) * Tt);
  return out;
}

inline auto dd_Pn(std::size_t n, std::size_t r) -> RatMatrix {
  const RatMatrix X = rat(X_r(r)), I = RatMatrix::identity(r);
  const RatMatrix Q = (I - X) * *inverse(X - ipow(X, static_cast<long>(n)));
  return -(ipow(X, static_cast<long>(n) - 1) * Q);
}

inline auto lambda_inv_dd_summary(std::size_t n, std::size_t r) -> RatMatrix {
  const RatMatrix X = rat(X_r(r)), T = rat(T_r(r)), Tt = T.transpose(), I = RatMatrix::identity(r);
  const RatMatrix Err = E(r, r, r);
  const RatMatrix Q = (I - X) * *inverse(X - ipow(X, static_cast<long>(n)));
  const RatMatrix Pn = -(ipow(X, static_cast<long>(n) - 1) * Q);
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) -> RatMatrix {
    if (a < n && a > b + 1) return (ipow(X, static_cast<long>(n + b - a)) * Q)(r - 1, r - 1) * Err;
    if (a != n && b + 1 == a) return I - Tt;
    if (a == b && a != n) return Tt - T;
    if (a == n && b == n) return (Pn + I) * (I - T);
    if (b + 1 < n) return ipow(X, static_cast<long>(b)) * Q * Err;
    return ipow(X, static_cast<long>(n) - 1) * Q * Err + I - Tt - Err;
  });
}

inline auto lambda_inv_dd_square_even(std::size_t r) -> RatMatrix {
  const std::size_t n = r;
  const RatMatrix X = rat(X_r(r)), T = rat(T_r(r)), Tt = T.transpose(), I = RatMatrix::identity(r);
  const RatMatrix Err = E(r, r, r);
  RatMatrix pn_plus_i(r, r);
  for (std::size_t k = 1; 2 * k <= r - 2; ++k) pn_plus_i -= ipow(X, static_cast<long>(2 * k));
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) -> RatMatrix {
    if (a < n && a > b + 1) return Rational((a - b) % 2 == 0 ? -1 : 1) * Err;
    if (a != n && b + 1 == a) return I - Tt;
    if (a == b && a != n) return Tt - T;
    if (a == n && b == n) return pn_plus_i * (I - T);
    if (b + 1 < n) {
      // alternating column, zero at row r - b, starting and ending with -1 (b even) or +1 (b odd)
      RatMatrix v(r, r);
      const int start = b % 2 == 0 ? -1 : 1;
      for (std::size_t i = 1; i <= r; ++i) {
        if (i == r - b) continue;
        const std::size_t parity = i < r - b ? i - 1 : i;
        v(i - 1, r - 1) = parity % 2 == 0 ? start : -start;
      }
      return v;
    }
    RatMatrix v = I - Tt;
    for (std::size_t i = 2; i < r; ++i) v(i - 1, r - 1) += i % 2 == 0 ? 1 : -1;
    return v;
  });
}

inline auto lambda_inv_frt_summary(std::size_t n, std::size_t r) -> RatMatrix {
  const RatMatrix hi = hinv_frt_regular(n, r);
  const RatMatrix S = rat(S_r(r)), T = rat(T_r(r)), Tt = T.transpose(), I = RatMatrix::identity(r);
  const RatMatrix Err = E(r, r, r), E1r = E(r, 1, r);
  const RatMatrix sn = *inverse(I + ipow(S, static_cast<long>(n)));
  const Rational half(1, 2);
  return skew_blocks(n, r, [&](std::size_t a, std::size_t b) -> RatMatrix {
    if (a < n && a > b + 1) return block(hi, r, a - 1, b - 1)(0, 0) * Err;
    if (a == b && a < n) return half * (Tt - T);
    if (a == n && b == n) return block(hi, r, n - 1, n - 1);
    if (b + 1 == a && a < n) return block(hi, r, a - 1, b - 1)(0, 0) * Err - half * (Tt - I + Err);
    if (b + 1 < n) return -half * (ipow(S, static_cast<long>(b)) * (I - S) * (I - S) * sn * E1r);
    return -half * ((I + ipow(S, static_cast<long>(n) - 1)) * sn * (E1r + Err)) - half * (ipow(S, -1) - I);
  });
}

}  // namespace detail

inline auto inverse_Lambda_closed(const FamilySpec& s) -> ClosedInverse {
  s.validate();
  if (s.kind != Kind::DipperDonkin && s.kind != Kind::FRT)
    throw NotApplicable("no closed-form Lambda inverse for " + kind_name(s.kind));
  if (corank_closed(s) > 0) throw NotApplicable("Lambda is singular");
  const std::size_t n = s.n, r = s.r;
  if (s.kind == Kind::FRT) return {detail::lambda_inv_frt_summary(n, r), "frt-summary"};
  if (n == r && r % 2 == 0) return {detail::lambda_inv_dd_square_even(r), "dd-square-even"};
  if (n >= 2 && detail::dd_Pn(n, r)(r - 1, r - 1) == -1)
    return {detail::lambda_inv_dd_summary(n, r), "dd-summary"};
  return {detail::lambda_inv_from_hinv(inverse_H_closed(s).matrix, n, r), "dd-block-identity"};
}

// ---------------------------------------------------------------------------
// Partial left inverse for DD, n = r odd.

struct PartialLeftInverse {
  IntMatrix Zn;
  IntMatrix residual;  // Z_n K_2 H
  IntMatrix expected;  // identity except last block column -X^{n-a} E~_n, corner I - E~_n
};

inline auto partial_left_inverse_dd(std::size_t n) -> PartialLeftInverse {
  if (n < 1 || n % 2 == 0) throw DomainError("partial left inverse needs n = r odd");
  const std::size_t r = n;
  const RatMatrix X = detail::rat(X_r(r)), T = detail::rat(T_r(r)), I = RatMatrix::identity(r);
  const RatMatrix V = *inverse(I + T) * detail::rat(U_n(n)) * X;
  RatMatrix z = RatMatrix::identity(n * r);
  for (std::size_t a = 0; a < n; ++a) z.set_block(a * r, (n - 1) * r, detail::ipow(X, static_cast<long>(n - 1 - a)) * V);
  const FamilySpec s = FamilySpec::dd(n, r);
  const K2H4 k = build_K2_H4(s);
  const RatMatrix residual = z * k.K2 * detail::rat(build_H(s));

  const RatMatrix Et = detail::rat(E_tilde(n));
  RatMatrix expected = RatMatrix::identity(n * r);
  for (std::size_t a = 0; a + 1 < n; ++a)
    expected.set_block(a * r, (n - 1) * r, -(detail::ipow(X, static_cast<long>(n - 1 - a)) * Et));
  expected.set_block((n - 1) * r, (n - 1) * r, I - Et);
  return {to_integer(z), to_integer(residual), to_integer(expected)};
}

// ---------------------------------------------------------------------------
// Kernels and centers.

struct ClosedKernels {
  KernelBasis H;
  KernelBasis Lambda;
};

namespace detail {

// Integer basis of ker F built from the explicit vectors v_i.
inline auto f_kernel_vectors(const FamilySpec& s) -> std::vector<IntVector> {
  const std::size_t n = s.n, r = s.r;
  std::vector<IntVector> out;
  if (s.kind == Kind::DipperDonkin) {
    const std::size_t g = ugcd(n - 1, r + 1), y = (r + 1) / g;
    for (std::size_t i = 1; i < g; ++i) {
      IntVector v(r);
      for (std::size_t k = 0; k < y; ++k) v[i + k * g - 1] += 1;
      for (std::size_t k = 1; k < y; ++k) v[k * g - 1] -= 1;
      out.push_back(v);
    }
  } else if (s.kind == Kind::FRT) {
    if (corank_closed(s) == 0) return out;
    const std::size_t g = ugcd(n, r), y = r / g;
    for (std::size_t i = 1; i <= g; ++i) {
      IntVector v(r);
      for (std::size_t l = 0; l < y; ++l) v[i + l * g - 1] = l % 2 == 0 ? 1 : -1;
      out.push_back(v);
    }
  } else {
    throw NotApplicable("closed-form kernels cover the DD and FRT families");
  }
  return out;
}

inline auto to_int_vector(const std::vector<Rational>& v) -> IntVector {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) throw DomainError("non-integer kernel entry");
    out[i] = boost::multiprecision::numerator(v[i]);
  }
  return out;
}

}  // namespace detail

inline auto kernel_closed(const FamilySpec& s) -> ClosedKernels {
  s.validate();
  const std::size_t n = s.n, r = s.r;
  const RatMatrix X = build_X(s), T = detail::rat(T_r(r));
  ClosedKernels out;
  for (const IntVector& v : detail::f_kernel_vectors(s)) {
    const std::vector<Rational> a1(v.begin(), v.end());
    IntVector a(n * r), b(n * r);
    for (std::size_t c = 1; c <= n; ++c) {
      const std::size_t p = n - c;
      const auto ac = detail::to_int_vector(qseed::apply(detail::ipow(X, static_cast<long>(c - 1)), a1));
      const auto bc = c == 1 ? v : detail::to_int_vector(qseed::apply((X - T) * detail::ipow(X, static_cast<long>(c) - 2), a1));
      for (std::size_t j = 0; j < r; ++j) {
        a[p * r + j] = ac[j];
        b[p * r + j] = bc[j];
      }
    }
    out.H.vectors.push_back(primitive(a));
    out.Lambda.vectors.push_back(primitive(b));
  }
  return out;
}

struct CenterGenerator {
  IntVector exponents;  // indexed by (alpha, j), alpha slow
  std::string label;
};

namespace detail {

inline auto center_label(const IntVector& e, std::size_t r) -> std::string {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    out << (first ? "" : " * ") << "chi[" << k / r + 1 << "," << k % r + 1 << "]";
    if (e[k] != 1) out << "^" << e[k];
    first = false;
  }
  return first ? "1" : out.str();
}

}  // namespace detail

inline auto center_generators(const FamilySpec& s) -> std::vector<CenterGenerator> {
  s.validate();
  const std::size_t n = s.n, r = s.r;
  std::vector<IntVector> gens;
  auto idx = [r](std::size_t a, std::size_t j) { return (a - 1) * r + (j - 1); };
  if (s.kind == Kind::DipperDonkin) {
    if (n == r && n % 2 == 1 && n > 1) {
      IntVector e(n * r);
      for (std::size_t g = 1; g <= n; ++g) e[idx(g, n)] += g % 2 == 0 ? 1 : -1;
      for (std::size_t k = 1; k < n; ++k) e[idx(n, k)] += k % 2 == 0 ? 1 : -1;
      gens.push_back(e);
    } else {
      const std::size_t g = detail::ugcd(n - 1, r + 1), x = (n - 1) / g, y = (r + 1) / g;
      for (std::size_t i = 1; i < g; ++i) {
        IntVector e(n * r);
        for (std::size_t k = 0; k < x; ++k) {
          e[idx(n - 1 - k * g, r)] -= 1;
          e[idx(n - 1 - i - k * g, r)] += 1;
        }
        for (std::size_t j = 1; j < y; ++j) e[idx(n, j * g)] -= 1;
        for (std::size_t l = 0; l < y; ++l) e[idx(n, i + l * g)] += 1;
        gens.push_back(e);
      }
    }
  } else if (s.kind == Kind::FRT) {
    if (corank_closed(s) > 0) {
      const std::size_t g = detail::ugcd(n, r), x = n / g, y = r / g;
      for (std::size_t i = 1; i <= g; ++i) {
        IntVector e(n * r);
        for (std::size_t l = 0; l < y; ++l) e[idx(n, i + l * g)] += l % 2 == 0 ? 1 : -1;
        for (std::size_t k = 0; k < x; ++k) {
          const std::size_t row = n - i - k * g;
          if (row == 0) continue;
          e[idx(row, r)] += k % 2 == 1 ? 1 : -1;
        }
        gens.push_back(e);
      }
    }
  } else {
    throw NotApplicable("center generators cover the DD and FRT families");
  }
  const IntMatrix lambda = build_lambda(s);
  std::vector<CenterGenerator> out;
  for (auto& e : gens) {
    if (!(lambda * IntMatrix(e.size(), 1, e)).is_zero())
      throw std::logic_error("center generator outside ker(Lambda) for " + s.label());
    out.push_back({e, detail::center_label(e, r)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block-diagonal counts and degrees.

struct BlockCountReport {
  std::size_t ones = 0;
  std::size_t twos = 0;
  std::size_t fours = 0;
  std::size_t other = 0;  // blocks with values outside {1, 2, 4}
  std::size_t corank = 0;
  BigInt detD = 1;        // product of squared block values

  friend auto operator==(const BlockCountReport&, const BlockCountReport&) -> bool = default;
};

inline auto block_counts(const SkewForm& f) -> BlockCountReport {
  BlockCountReport b;
  b.corank = f.corank;
  for (const auto& d : f.blockValues) {
    if (d == 1) ++b.ones;
    else if (d == 2) ++b.twos;
    else if (d == 4) ++b.fours;
    else ++b.other;
    b.detD *= d * d;
  }
  return b;
}

inline auto block_counts_closed(const FamilySpec& s) -> BlockCountReport {
  s.validate();
  if (s.kind == Kind::Custom) throw NotApplicable("no closed-form block counts for custom families");
  const std::size_t n = s.n, r = s.r;
  BlockCountReport b;
  b.corank = corank_closed(s);
  if (s.kind == Kind::Extended) {
    const std::size_t g = detail::ugcd(n, r);
    b.ones = n + r - 1;
    b.twos = ((n - 1) * (r - 1) + 1 - g) / 2;
  } else {
    const std::size_t total = (n * r - b.corank) / 2;
    if (s.kind == Kind::FRT) {
      const std::size_t g = detail::ugcd(n, r);
      b.ones = (n + r - 1) / 2;
      b.fours = b.corank == 0 ? (g - 1) / 2 : 0;
      b.twos = total - b.ones - b.fours;
    } else {
      b.ones = total;
    }
  }
  b.detD = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(b.twos)) *
           boost::multiprecision::pow(BigInt(16), static_cast<unsigned>(b.fours));
  return b;
}

inline auto degree_at_root(const std::vector<BigInt>& blockValues, const BigInt& m) -> BigInt {
  if (m < 2) throw DomainError("root order must be at least 2");
  BigInt d = 1;
  for (const auto& v : blockValues) d *= m / gcd(v, m);
  return d;
}

inline auto degree_at_root(const FamilySpec& s, const BigInt& m) -> BigInt {
  return degree_at_root(skew_normal_form(build_H(s)).blockValues, m);
}

}  // namespace qseed
