#pragma once

#include "qseed/families.hpp"
#include "qseed/nc/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qseed::nc {

// 1-based, strictly increasing row and column sets of equal size.
struct MinorId {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  [[nodiscard]] auto order() const -> std::size_t { return rows.size(); }
  auto operator<=>(const MinorId&) const = default;

  void validate(std::size_t n, std::size_t r) const {
    if (rows.empty() || rows.size() != cols.size()) throw DomainError("minor needs equal, nonempty row/col sets");
    if (rows.size() > std::min(n, r)) throw DomainError("minor order exceeds min(n, r)");
    auto check = [](const std::vector<std::size_t>& v, std::size_t bound) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1 || v[i] > bound) throw DomainError("minor index out of range");
        if (i && v[i] <= v[i - 1]) throw DomainError("minor indices must increase");
      }
    };
    check(rows, n);
    check(cols, r);
  }
};

inline auto consecutive(std::size_t from, std::size_t count) -> std::vector<std::size_t> {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

// The chi_{alpha j} label of the V+ family.
inline auto family_minor(std::size_t alpha, std::size_t j) -> MinorId {
  if (alpha >= j) return {consecutive(alpha - j + 1, j), consecutive(1, j)};
  return {consecutive(1, alpha), consecutive(j - alpha + 1, alpha)};
}

// Positions (alpha, j) along the main diagonal of the V+ minor chi_{alpha j}.
inline auto family_diagonal(std::size_t alpha, std::size_t j) -> std::vector<std::pair<std::size_t, std::size_t>> {
  const MinorId id = family_minor(alpha, j);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t < id.order(); ++t) out.emplace_back(id.rows[t], id.cols[t]);
  return out;
}

// W_{alpha j} = Z_{alpha j} M_{alpha j} with M a monomial in R^{+-1}, C^{+-1}.
struct MonomialMap {
  std::size_t n = 0, r = 0;
  std::vector<std::vector<int>> rExp;  // indexed (alpha-1)*r + (j-1)
  std::vector<std::vector<int>> cExp;

  static auto trivial(std::size_t n, std::size_t r) -> MonomialMap {
    return {n, r, std::vector<std::vector<int>>(n * r, std::vector<int>(n, 0)),
            std::vector<std::vector<int>>(n * r, std::vector<int>(r, 0))};
  }

  // M_{alpha j} = R_{alpha+1}...R_n C_{j+1}^{-1}...C_r^{-1}
  static auto dipper_donkin(std::size_t n, std::size_t r) -> MonomialMap {
    MonomialMap m = trivial(n, r);
    for (std::size_t a = 1; a <= n; ++a)
      for (std::size_t j = 1; j <= r; ++j) {
        for (std::size_t b = a + 1; b <= n; ++b) m.rExp[m.index(a, j)][b - 1] = 1;
        for (std::size_t k = j + 1; k <= r; ++k) m.cExp[m.index(a, j)][k - 1] = -1;
      }
    return m;
  }

  [[nodiscard]] auto index(std::size_t alpha, std::size_t j) const -> std::size_t { return (alpha - 1) * r + (j - 1); }

  // M_{alpha j} Z_{beta i} = q^Phi Z_{beta i} M_{alpha j}
  [[nodiscard]] auto phi(std::size_t alpha, std::size_t j, std::size_t beta, std::size_t i) const -> int {
    return rExp[index(alpha, j)][beta - 1] + cExp[index(alpha, j)][i - 1];
  }

  [[nodiscard]] auto is_trivial() const -> bool { return *this == trivial(n, r); }
  auto operator==(const MonomialMap&) const -> bool = default;
};

// Twist used for a named family's symbolic model, with the q-exponent scale relative to H.
struct FamilyModel {
  MonomialMap map;
  long scale = 1;
};

inline auto family_model(const FamilySpec& s) -> FamilyModel {
  switch (s.kind) {
    case Kind::FRT: return {MonomialMap::trivial(s.n, s.r), 1};
    case Kind::DipperDonkin: return {MonomialMap::dipper_donkin(s.n, s.r), 2};
    default: throw NotApplicable("no symbolic model for family " + kind_name(s.kind));
  }
}

namespace detail {

inline auto inversions(const std::vector<std::size_t>& p) -> long {
  long c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t k = i + 1; k < p.size(); ++k)
      if (p[i] > p[k]) ++c;
  return c;
}

inline auto minus_q_pow(long l) -> Laurent { return Laurent::q(l, l % 2 ? -1 : 1); }

}  // namespace detail

// xi as the row-ordered sum over sigma of (-q)^{l(sigma)} Z_{a1 j_s(1)}...Z_{am j_s(m)}.
inline auto quantum_minor_rows(const MinorId& id, Engine& e) -> NCPoly {
  id.validate(e.n(), e.r());
  const std::size_t m = id.order();
  std::vector<std::size_t> p = consecutive(0, m);
  NCPoly out(e.n(), e.r());
  const std::vector<int> zr(e.n(), 0), zc(e.r(), 0);
  do {
    std::vector<int> w;
    for (std::size_t t = 0; t < m; ++t) w.push_back(e.gen(id.rows[t], id.cols[p[t]]));
    out += e.term(w, zr, zc, detail::minus_q_pow(detail::inversions(p)));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// The column-ordered expansion of the same minor.
inline auto quantum_minor_cols(const MinorId& id, Engine& e) -> NCPoly {
  id.validate(e.n(), e.r());
  const std::size_t m = id.order();
  std::vector<std::size_t> p = consecutive(0, m);
  NCPoly out(e.n(), e.r());
  const std::vector<int> zr(e.n(), 0), zc(e.r(), 0);
  do {
    std::vector<int> w;
    for (std::size_t t = 0; t < m; ++t) w.push_back(e.gen(id.rows[p[t]], id.cols[t]));
    out += e.term(w, zr, zc, detail::minus_q_pow(detail::inversions(p)));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// M_{a1 j1}...M_{am jm} as a single R/C monomial.
inline auto minor_monomial(const MinorId& id, const MonomialMap& map, Engine& e) -> NCPoly {
  std::vector<int> re(e.n(), 0), ce(e.r(), 0);
  for (std::size_t t = 0; t < id.order(); ++t) {
    const std::size_t k = map.index(id.rows[t], id.cols[t]);
    for (std::size_t a = 0; a < e.n(); ++a) re[a] += map.rExp[k][a];
    for (std::size_t j = 0; j < e.r(); ++j) ce[j] += map.cExp[k][j];
  }
  return e.rc_monomial(re, ce);
}

// Bar-invariant quantum minor chi of the twisted algebra; equals xi for the trivial map.
inline auto quantum_minor(const MinorId& id, Engine& e, const std::optional<MonomialMap>& map = std::nullopt)
    -> NCPoly {
  NCPoly xi = quantum_minor_rows(id, e);
  if (!map || map->is_trivial()) return xi;
  if (map->n != e.n() || map->r != e.r()) throw DimensionError("monomial map shape differs from engine");
  const NCPoly candidate = e.mul(xi, minor_monomial(id, *map, e));
  auto k = proportional_shift(e.bar(candidate), candidate);
  if (!k || *k % 2 != 0) throw std::logic_error("twisted minor has no bar-invariant normalization");
  return candidate.shifted(*k / 2);
}

struct MapViolation {
  std::string identity;
  std::string witness;
};

// First violated identity among (first), bottom/top relations, (third), and the sigma-independence lemma.
inline auto validate_monomial_map(const MonomialMap& map, std::uint32_t seed = 7) -> std::optional<MapViolation> {
  const std::size_t n = map.n, r = map.r;
  if (map.rExp.size() != n * r || map.cExp.size() != n * r) return MapViolation{"shape", "table sizes"};
  auto at = [&](std::size_t a, std::size_t j) { return std::to_string(a) + "," + std::to_string(j); };

  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b)
      for (std::size_t j = 1; j <= r; ++j)
        for (std::size_t l = j + 1; l <= r; ++l) {
          const auto i1 = map.index(a, j), i2 = map.index(b, l), i3 = map.index(a, l), i4 = map.index(b, j);
          for (std::size_t x = 0; x < n; ++x)
            if (map.rExp[i1][x] + map.rExp[i2][x] != map.rExp[i3][x] + map.rExp[i4][x])
              return MapViolation{"first", "M" + at(a, j) + " M" + at(b, l) + " vs M" + at(a, l) + " M" + at(b, j)};
          for (std::size_t x = 0; x < r; ++x)
            if (map.cExp[i1][x] + map.cExp[i2][x] != map.cExp[i3][x] + map.cExp[i4][x])
              return MapViolation{"first", "M" + at(a, j) + " M" + at(b, l) + " vs M" + at(a, l) + " M" + at(b, j)};
          for (std::size_t y = 1; y <= n; ++y)
            for (std::size_t i = 1; i <= r; ++i) {
              if (map.phi(a, j, y, i) + map.phi(b, l, y, i) != map.phi(b, j, y, i) + map.phi(a, l, y, i))
                return MapViolation{"bottom-rel", "Phi_" + at(a, j) + "^" + at(y, i)};
              if (map.phi(y, i, a, j) + map.phi(y, i, b, l) != map.phi(y, i, b, j) + map.phi(y, i, a, l))
                return MapViolation{"top-rel", "Phi_" + at(y, i) + "^" + at(a, j)};
            }
        }

  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t j = 1; j <= r; ++j)
      if (map.phi(a, j, a, j) != 0) return MapViolation{"third", "Phi_" + at(a, j) + "^" + at(a, j)};

  // sigma-independence of conjugation exponents, by actual conjugation in the engine
  Engine e(n, r);
  std::mt19937 rng(seed);
  const std::vector<int> zr(n, 0), zc(r, 0);
  const std::size_t smax = std::min({n, r, std::size_t{4}});
  for (std::size_t s = 1; s <= smax; ++s)
    for (int sample = 0; sample < 4; ++sample) {
      std::vector<std::size_t> rows = consecutive(1, n), cols = consecutive(1, r);
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      rows.resize(s);
      cols.resize(s);
      std::sort(rows.begin(), rows.end());
      std::sort(cols.begin(), cols.end());
      for (std::size_t b = 1; b <= n; ++b)
        for (std::size_t t = 1; t <= r; ++t) {
          const std::size_t k = map.index(b, t);
          std::vector<int> negR(n), negC(r);
          for (std::size_t x = 0; x < n; ++x) negR[x] = -map.rExp[k][x];
          for (std::size_t x = 0; x < r; ++x) negC[x] = -map.cExp[k][x];
          const NCPoly M = e.rc_monomial(map.rExp[k], map.cExp[k]), Minv = e.rc_monomial(negR, negC);
          std::optional<long> psi;
          std::optional<std::pair<std::vector<int>, std::vector<int>>> mprod;
          std::vector<std::size_t> p = consecutive(0, s);
          do {
            std::vector<int> w;
            std::vector<int> pr(n, 0), pc(r, 0);
            for (std::size_t x = 0; x < s; ++x) {
              w.push_back(e.gen(rows[x], cols[p[x]]));
              const std::size_t kk = map.index(rows[x], cols[p[x]]);
              for (std::size_t y = 0; y < n; ++y) pr[y] += map.rExp[kk][y];
              for (std::size_t y = 0; y < r; ++y) pc[y] += map.cExp[kk][y];
            }
            const NCPoly word = e.term(w, zr, zc);
            auto k2 = proportional_shift(e.mul({M, word, Minv}), word);
            if (!k2) return MapViolation{"psi", "conjugation by M" + at(b, t) + " not a q-power"};
            if (psi && *psi != *k2) return MapViolation{"psi", "Psi depends on sigma under M" + at(b, t)};
            psi = k2;
            if (mprod && (mprod->first != pr || mprod->second != pc))
              return MapViolation{"psi", "M-product depends on sigma"};
            mprod = std::make_pair(pr, pc);
          } while (std::next_permutation(p.begin(), p.end()));
        }
    }
  return std::nullopt;
}

}  // namespace qseed::nc
