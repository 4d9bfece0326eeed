#pragma once

#include "qseed/nc/laurent.hpp"

#include <algorithm>
#include <compare>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseed::nc {

// Z-word in PBW order plus Laurent exponents of R_1..R_n and C_1..C_r.
// Generator index g encodes Z_{alpha j} as (alpha-1)*r + (j-1).
struct Monomial {
  std::vector<int> word;
  std::vector<int> rExp;
  std::vector<int> cExp;

  auto operator<=>(const Monomial&) const = default;
};

class NCPoly {
 public:
  NCPoly() = default;
  NCPoly(std::size_t n, std::size_t r) : n_(n), r_(r) {}

  [[nodiscard]] auto n() const -> std::size_t { return n_; }
  [[nodiscard]] auto r() const -> std::size_t { return r_; }
  [[nodiscard]] auto terms() const -> const std::map<Monomial, Laurent>& { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }

  void add(const Monomial& m, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] auto scaled(const Laurent& c) const -> NCPoly {
    NCPoly out(n_, r_);
    for (const auto& [m, k] : terms_) out.add(m, k * c);
    return out;
  }
  [[nodiscard]] auto shifted(long k) const -> NCPoly { return scaled(Laurent::q(k)); }

  auto operator+=(const NCPoly& o) -> NCPoly& {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  auto operator-=(const NCPoly& o) -> NCPoly& {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend auto operator+(NCPoly a, const NCPoly& b) -> NCPoly { return a += b; }
  friend auto operator-(NCPoly a, const NCPoly& b) -> NCPoly { return a -= b; }
  friend auto operator==(const NCPoly& a, const NCPoly& b) -> bool {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.terms_ == b.terms_;
  }

 private:
  void check(const NCPoly& o) const {
    if (o.n_ != n_ || o.r_ != r_) throw DimensionError("NCPoly shapes differ");
  }

  std::size_t n_ = 0, r_ = 0;
  std::map<Monomial, Laurent> terms_;
};

// Straightening engine for O_q(M(n,r)) extended by R, C. Not thread-safe; use one per worker.
class Engine {
 public:
  Engine(std::size_t n, std::size_t r) : n_(n), r_(r) {
    if (n == 0 || r == 0) throw DomainError("engine needs n, r >= 1");
  }

  [[nodiscard]] auto n() const -> std::size_t { return n_; }
  [[nodiscard]] auto r() const -> std::size_t { return r_; }

  [[nodiscard]] auto gen(std::size_t alpha, std::size_t j) const -> int {
    if (alpha < 1 || alpha > n_ || j < 1 || j > r_) throw DomainError("generator index out of range");
    return static_cast<int>((alpha - 1) * r_ + (j - 1));
  }
  [[nodiscard]] auto row(int g) const -> std::size_t { return static_cast<std::size_t>(g) / r_ + 1; }
  [[nodiscard]] auto col(int g) const -> std::size_t { return static_cast<std::size_t>(g) % r_ + 1; }

  [[nodiscard]] auto one() const -> NCPoly { return constant(1); }
  [[nodiscard]] auto constant(const Laurent& c) const -> NCPoly {
    NCPoly p(n_, r_);
    p.add(empty_monomial(), c);
    return p;
  }
  [[nodiscard]] auto Z(std::size_t alpha, std::size_t j) const -> NCPoly {
    NCPoly p(n_, r_);
    Monomial m = empty_monomial();
    m.word.push_back(gen(alpha, j));
    p.add(m, 1);
    return p;
  }
  [[nodiscard]] auto R(std::size_t alpha, int e = 1) const -> NCPoly {
    if (alpha < 1 || alpha > n_) throw DomainError("R index out of range");
    NCPoly p(n_, r_);
    Monomial m = empty_monomial();
    m.rExp[alpha - 1] = e;
    p.add(m, 1);
    return p;
  }
  [[nodiscard]] auto C(std::size_t j, int e = 1) const -> NCPoly {
    if (j < 1 || j > r_) throw DomainError("C index out of range");
    NCPoly p(n_, r_);
    Monomial m = empty_monomial();
    m.cExp[j - 1] = e;
    p.add(m, 1);
    return p;
  }
  [[nodiscard]] auto rc_monomial(std::vector<int> rExp, std::vector<int> cExp) const -> NCPoly {
    if (rExp.size() != n_ || cExp.size() != r_) throw DimensionError("R/C exponent lengths");
    NCPoly p(n_, r_);
    p.add(Monomial{{}, std::move(rExp), std::move(cExp)}, 1);
    return p;
  }

  // c * Z_{w1}...Z_{wk} * R^rExp * C^cExp for an arbitrary (unsorted) word, normalized.
  [[nodiscard]] auto term(const std::vector<int>& w, const std::vector<int>& rExp, const std::vector<int>& cExp,
                          const Laurent& c = 1) -> NCPoly {
    for (int g : w)
      if (g < 0 || static_cast<std::size_t>(g) >= n_ * r_) throw DomainError("unknown generator index");
    NCPoly out(n_, r_);
    for (const auto& [sorted, k] : normalize_word(w)) out.add(Monomial{sorted, rExp, cExp}, k * c);
    return out;
  }

  [[nodiscard]] auto normal_form(const NCPoly& x) -> NCPoly {
    own(x);
    NCPoly out(n_, r_);
    for (const auto& [m, c] : x.terms()) out += term(m.word, m.rExp, m.cExp, c);
    return out;
  }

  [[nodiscard]] auto mul(const NCPoly& x, const NCPoly& y) -> NCPoly {
    own(x);
    own(y);
    NCPoly out(n_, r_);
    for (const auto& [mx, cx] : x.terms())
      for (const auto& [my, cy] : y.terms()) {
        long shift = 0;
        for (int g : my.word) shift += mx.rExp[row(g) - 1] + mx.cExp[col(g) - 1];
        std::vector<int> w = mx.word;
        w.insert(w.end(), my.word.begin(), my.word.end());
        std::vector<int> re = mx.rExp, ce = mx.cExp;
        for (std::size_t a = 0; a < n_; ++a) re[a] += my.rExp[a];
        for (std::size_t j = 0; j < r_; ++j) ce[j] += my.cExp[j];
        const Laurent c = (cx * cy).shifted(shift);
        for (const auto& [sorted, k] : normalize_word(w)) out.add(Monomial{sorted, re, ce}, k * c);
      }
    return out;
  }

  [[nodiscard]] auto mul(const std::vector<NCPoly>& factors) -> NCPoly {
    NCPoly acc = one();
    for (const auto& f : factors) acc = mul(acc, f);
    return acc;
  }

  // C-antilinear anti-automorphism: q -> q^-1, Z and R, C fixed, order of factors reversed.
  [[nodiscard]] auto bar(const NCPoly& x) -> NCPoly {
    own(x);
    NCPoly out(n_, r_);
    for (const auto& [m, c] : x.terms()) {
      std::vector<int> w(m.word.rbegin(), m.word.rend());
      long shift = 0;
      for (int g : w) shift += m.rExp[row(g) - 1] + m.cExp[col(g) - 1];
      out += term(w, m.rExp, m.cExp, c.bar().shifted(shift));
    }
    return out;
  }

  [[nodiscard]] auto memo_size() const -> std::size_t { return memo_.size(); }

 private:
  using Expansion = std::vector<std::pair<std::vector<int>, Laurent>>;

  [[nodiscard]] auto empty_monomial() const -> Monomial {
    return Monomial{{}, std::vector<int>(n_, 0), std::vector<int>(r_, 0)};
  }

  void own(const NCPoly& x) const {
    if (x.n() != n_ || x.r() != r_) throw DimensionError("NCPoly does not belong to this engine");
  }

  auto normalize_word(const std::vector<int>& w) -> const Expansion& {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    std::size_t i = 0;
    while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
    Expansion result;
    if (i + 1 >= w.size()) {
      result.emplace_back(w, Laurent(1));
    } else {
      std::map<std::vector<int>, Laurent> acc;
      auto absorb = [&](std::vector<int> v, const Laurent& c) {
        for (const auto& [sorted, k] : normalize_word(v)) {
          auto [it, fresh] = acc.try_emplace(sorted, k * c);
          if (!fresh) it->second += k * c;
        }
      };
      const int a = w[i], b = w[i + 1];
      const std::size_t ra = row(a), ca = col(a), rb = row(b), cb = col(b);
      std::vector<int> swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      if (ra == rb || ca == cb) {
        absorb(swapped, Laurent::q(-1));
      } else if (ca < cb) {
        absorb(swapped, Laurent(1));
      } else {
        absorb(swapped, Laurent(1));
        std::vector<int> corr = w;
        corr[i] = gen(rb, ca);
        corr[i + 1] = gen(ra, cb);
        absorb(corr, -q_minus_qinv());
      }
      for (auto& [sorted, k] : acc)
        if (!k.is_zero()) result.emplace_back(sorted, std::move(k));
    }
    return memo_.emplace(w, std::move(result)).first->second;
  }

  std::size_t n_, r_;
  std::map<std::vector<int>, Expansion> memo_;
};

// Canonical text: terms `coef*q^k * Z[a,j]*Z[a,j] * R[a]^e * C[j]^e` joined by " + ".
inline auto to_text(const NCPoly& p) -> std::string {
  if (p.is_zero()) return "0";
  std::string out;
  const std::size_t r = p.r();
  for (const auto& [m, c] : p.terms())
    for (const auto& [k, coef] : c.terms()) {
      std::string t = coef.str() + "*q^" + std::to_string(k);
      if (!m.word.empty()) {
        t += " * ";
        for (std::size_t i = 0; i < m.word.size(); ++i) {
          const std::size_t g = static_cast<std::size_t>(m.word[i]);
          t += (i ? "*Z[" : "Z[") + std::to_string(g / r + 1) + "," + std::to_string(g % r + 1) + "]";
        }
      }
      for (std::size_t a = 0; a < m.rExp.size(); ++a)
        if (m.rExp[a]) t += " * R[" + std::to_string(a + 1) + "]^" + std::to_string(m.rExp[a]);
      for (std::size_t j = 0; j < m.cExp.size(); ++j)
        if (m.cExp[j]) t += " * C[" + std::to_string(j + 1) + "]^" + std::to_string(m.cExp[j]);
      out += (out.empty() ? "" : " + ") + t;
    }
  return out;
}

namespace detail {

inline auto split(const std::string& s, const std::string& sep) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(sep, start)) != std::string::npos; start = pos + sep.size())
    out.push_back(s.substr(start, pos - start));
  out.push_back(s.substr(start));
  return out;
}

inline auto parse_index_pair(const std::string& s) -> std::pair<std::size_t, std::size_t> {
  unsigned a = 0, j = 0;
  int used = 0;
  if (std::sscanf(s.c_str(), "Z[%u,%u]%n", &a, &j, &used) != 2 || used != static_cast<int>(s.size()))
    throw DomainError("bad generator token: " + s);
  return {a, j};
}

}  // namespace detail

// Parses the canonical text format; the result is normalized by the engine.
inline auto parse_text(const std::string& text, Engine& e) -> NCPoly {
  NCPoly out(e.n(), e.r());
  if (text == "0") return out;
  for (const auto& t : detail::split(text, " + ")) {
    const auto parts = detail::split(t, " * ");
    const auto head = detail::split(parts[0], "*q^");
    if (head.size() != 2) throw DomainError("bad coefficient: " + parts[0]);
    const BigInt coef = parse_bigint(head[0]);
    const long k = std::stol(head[1]);
    std::vector<int> w;
    std::vector<int> re(e.n(), 0), ce(e.r(), 0);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::string& f = parts[i];
      if (f.empty()) throw DomainError("empty factor");
      if (f[0] == 'Z') {
        for (const auto& z : detail::split(f, "*")) {
          auto [a, j] = detail::parse_index_pair(z);
          w.push_back(e.gen(a, j));
        }
      } else if (f[0] == 'R' || f[0] == 'C') {
        unsigned idx = 0;
        int ex = 0, used = 0;
        if (std::sscanf(f.c_str() + 1, "[%u]^%d%n", &idx, &ex, &used) != 2 ||
            used + 1 != static_cast<int>(f.size()))
          throw DomainError("bad factor: " + f);
        auto& v = f[0] == 'R' ? re : ce;
        if (idx < 1 || idx > v.size()) throw DomainError("factor index out of range: " + f);
        v[idx - 1] += ex;
      } else {
        throw DomainError("bad factor: " + f);
      }
    }
    out += e.term(w, re, ce, Laurent::q(k, coef));
  }
  return out;
}

// k with a == q^k * b, if any (both nonzero).
inline auto proportional_shift(const NCPoly& a, const NCPoly& b) -> std::optional<long> {
  if (a.is_zero() || b.is_zero() || a.terms().size() != b.terms().size()) return std::nullopt;
  const auto& [m0, c0] = *a.terms().begin();
  auto it = b.terms().find(m0);
  if (it == b.terms().end()) return std::nullopt;
  auto k = shift_between(c0, it->second);
  if (!k || b.shifted(*k) != a) return std::nullopt;
  return k;
}

// lambda with u*v = q^lambda * v*u, if u and v q-commute.
inline auto q_exponent(const NCPoly& u, const NCPoly& v, Engine& e) -> std::optional<long> {
  if (u.is_zero() || v.is_zero()) throw DomainError("q_exponent of zero polynomial");
  return proportional_shift(e.mul(u, v), e.mul(v, u));
}

}  // namespace qseed::nc
