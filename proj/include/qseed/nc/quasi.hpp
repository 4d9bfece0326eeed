#pragma once

#include "qseed/nc/minors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qseed::nc {

// Lambda entries as sums of H along the diagonals of the V+ minors.
inline auto lambda_via_diagonals(const FamilySpec& s) -> IntMatrix {
  const IntMatrix h = build_H(s);
  const std::size_t n = s.n, r = s.r, N = n * r;
  if (h.rows() != N) throw NotApplicable("diagonal Lambda needs an nr x nr defining matrix");
  IntMatrix out(N, N);
  auto idx = [r](std::size_t a, std::size_t j) { return (a - 1) * r + (j - 1); };
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t j = 1; j <= r; ++j) {
      const auto da = family_diagonal(a, j);
      for (std::size_t b = 1; b <= n; ++b)
        for (std::size_t k = 1; k <= r; ++k) {
          BigInt sum = 0;
          for (const auto& [x, y] : da)
            for (const auto& [u, v] : family_diagonal(b, k)) sum += h(idx(x, y), idx(u, v));
          out(idx(a, j), idx(b, k)) = sum;
        }
    }
  return out;
}

struct SymbolicOptions {
  std::size_t cap = 3;  // largest allowed min(n, r)
  std::size_t workers = 1;
};

// Runs body(worker, task) for task in [0, count) on the given number of threads.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto run = [&](std::size_t w) {
    try {
      for (std::size_t t; (t = next++) < count;) body(w, t);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// All chi_{alpha j} of V+ in basis order.
inline auto family_minors(const FamilySpec& s, Engine& e) -> std::vector<NCPoly> {
  const FamilyModel model = family_model(s);
  std::vector<NCPoly> out;
  for (std::size_t a = 1; a <= s.n; ++a)
    for (std::size_t j = 1; j <= s.r; ++j) out.push_back(quantum_minor(family_minor(a, j), e, model.map));
  return out;
}

// Pairwise q-commutation exponents over V+, rescaled to the normalization of H.
inline auto lambda_symbolic(const FamilySpec& s, const SymbolicOptions& opt = {}) -> IntMatrix {
  s.validate();
  if (std::min(s.n, s.r) > opt.cap)
    throw DomainError("symbolic Lambda capped at min(n, r) <= " + std::to_string(opt.cap));
  const FamilyModel model = family_model(s);
  Engine base(s.n, s.r);
  const std::vector<NCPoly> chi = family_minors(s, base);
  const std::size_t N = chi.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = i + 1; k < N; ++k) pairs.emplace_back(i, k);

  const std::size_t workers = std::max<std::size_t>(1, opt.workers);
  std::vector<Engine> engines(workers, Engine(s.n, s.r));
  std::vector<long> values(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t w, std::size_t t) {
    const auto [i, k] = pairs[t];
    auto lam = q_exponent(chi[i], chi[k], engines[w]);
    if (!lam)
      throw std::logic_error("minors " + std::to_string(i) + " and " + std::to_string(k) + " do not q-commute");
    if (*lam % model.scale != 0) throw std::logic_error("q-exponent not divisible by family scale");
    values[t] = *lam / model.scale;
  });
  IntMatrix out(N, N);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    out(pairs[t].first, pairs[t].second) = values[t];
    out(pairs[t].second, pairs[t].first) = -values[t];
  }
  return out;
}

enum class Ordering { BottomTop, TopBottom };

inline auto ordering_name(Ordering o) -> std::string { return o == Ordering::BottomTop ? "Xb*Xt" : "Xt*Xb"; }

struct ExchangeElements {
  NCPoly Xt, Xb, Xo, D, YL, YR;
};

struct ExchangeResult {
  long a = 0;
  long c = 0;
  Ordering ordering = Ordering::BottomTop;
  std::vector<long> zBalance;         // row then column Z-degree of X_o^-1 D^-1 Y_L Y_R
  std::vector<long> monomialBalance;  // R then C exponents of the same element

  [[nodiscard]] auto balanced() const -> bool {
    auto zero = [](const std::vector<long>& v) { return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }); };
    return zero(zBalance) && zero(monomialBalance);
  }
};

inline auto exchange_elements(const MinorId& id, Engine& e, const MonomialMap& map) -> ExchangeElements {
  id.validate(e.n(), e.r());
  const std::size_t m = id.order();
  if (m < 2) throw DomainError("exchange relation needs minors of order >= 2");
  auto slice = [](const std::vector<std::size_t>& v, std::size_t from, std::size_t to) {
    return std::vector<std::size_t>(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to));
  };
  const auto aL = slice(id.rows, 1, m), aR = slice(id.rows, 0, m - 1), aO = slice(id.rows, 1, m - 1);
  const auto jL = slice(id.cols, 1, m), jR = slice(id.cols, 0, m - 1), jO = slice(id.cols, 1, m - 1);
  auto chi = [&](std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.empty()) return e.one();
    return quantum_minor(MinorId{std::move(rows), std::move(cols)}, e, map);
  };
  return {chi(aL, jL), chi(aR, jR), chi(aO, jO), chi(id.rows, id.cols), chi(aR, jL), chi(aL, jR)};
}

namespace detail {

// Row and column Z-degrees, and R/C exponents, of a homogeneous polynomial.
inline auto degrees(const NCPoly& p, const Engine& e) -> std::pair<std::vector<long>, std::vector<long>> {
  std::optional<std::pair<std::vector<long>, std::vector<long>>> out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<long> z(e.n() + e.r(), 0), rc;
    for (int g : m.word) {
      ++z[e.row(g) - 1];
      ++z[e.n() + e.col(g) - 1];
    }
    rc.insert(rc.end(), m.rExp.begin(), m.rExp.end());
    rc.insert(rc.end(), m.cExp.begin(), m.cExp.end());
    if (out && (out->first != z || out->second != rc)) throw std::logic_error("minor is not homogeneous");
    out = std::make_pair(z, rc);
  }
  if (!out) throw std::logic_error("zero minor");
  return *out;
}

}  // namespace detail

// Solves Xb*Xt (or Xt*Xb) = q^a X_o D + q^c Y_L Y_R and reports the R/C balance of X_o^-1 D^-1 Y_L Y_R.
inline auto exchange_check(const MinorId& id, const FamilySpec& s, Engine& e, long search = 8) -> ExchangeResult {
  const FamilyModel model = family_model(s);
  const ExchangeElements x = exchange_elements(id, e, model.map);
  const NCPoly left = e.mul(x.Xo, x.D), right = e.mul(x.YL, x.YR);

  ExchangeResult out;
  const auto [zl, ml] = detail::degrees(left, e);
  const auto [zr, mr] = detail::degrees(right, e);
  for (std::size_t i = 0; i < zl.size(); ++i) out.zBalance.push_back(zr[i] - zl[i]);
  for (std::size_t i = 0; i < ml.size(); ++i) out.monomialBalance.push_back(mr[i] - ml[i]);

  for (Ordering o : {Ordering::BottomTop, Ordering::TopBottom}) {
    const NCPoly prod = o == Ordering::BottomTop ? e.mul(x.Xb, x.Xt) : e.mul(x.Xt, x.Xb);
    for (long a = -search; a <= search; ++a) {
      const NCPoly rest = prod - left.shifted(a);
      if (auto c = proportional_shift(rest, right)) {
        out.a = a;
        out.c = *c;
        out.ordering = o;
        return out;
      }
    }
  }
  throw std::logic_error("no exchange relation found for " + s.label());
}

}  // namespace qseed::nc
