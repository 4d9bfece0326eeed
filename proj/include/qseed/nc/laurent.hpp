#pragma once

#include "qseed/bigint.hpp"

#include <map>
#include <optional>
#include <string>

namespace qseed::nc {

// Element of Z[q, q^-1]; zero coefficients are never stored.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[0] = c;
  }
  Laurent(const BigInt& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[0] = c;
  }

  static auto q(long k, const BigInt& c = 1) -> Laurent {
    Laurent l;
    if (c != 0) l.terms_[k] = c;
    return l;
  }

  [[nodiscard]] auto terms() const -> const std::map<long, BigInt>& { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }

  [[nodiscard]] auto coefficient(long k) const -> BigInt {
    auto it = terms_.find(k);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add(long k, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  [[nodiscard]] auto shifted(long k) const -> Laurent {
    Laurent l;
    for (const auto& [e, c] : terms_) l.terms_.emplace(e + k, c);
    return l;
  }

  // q -> q^-1
  [[nodiscard]] auto bar() const -> Laurent {
    Laurent l;
    for (const auto& [e, c] : terms_) l.terms_.emplace(-e, c);
    return l;
  }

  auto operator+=(const Laurent& o) -> Laurent& {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  auto operator-=(const Laurent& o) -> Laurent& {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }

  friend auto operator+(Laurent a, const Laurent& b) -> Laurent { return a += b; }
  friend auto operator-(Laurent a, const Laurent& b) -> Laurent { return a -= b; }
  friend auto operator-(const Laurent& a) -> Laurent { return Laurent() - a; }
  friend auto operator*(const Laurent& a, const Laurent& b) -> Laurent {
    Laurent out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add(ea + eb, ca * cb);
    return out;
  }
  friend auto operator==(const Laurent& a, const Laurent& b) -> bool { return a.terms_ == b.terms_; }

  // k with a == q^k * b, if any.
  friend auto shift_between(const Laurent& a, const Laurent& b) -> std::optional<long> {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    const long k = a.terms_.begin()->first - b.terms_.begin()->first;
    if (b.shifted(k) == a) return k;
    return std::nullopt;
  }

  [[nodiscard]] auto str() const -> std::string {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*q^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::map<long, BigInt> terms_;
};

// q - q^-1
inline auto q_minus_qinv() -> Laurent { return Laurent::q(1) - Laurent::q(-1); }

}  // namespace qseed::nc
