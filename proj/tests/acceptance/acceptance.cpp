#include "qseed/closed_forms.hpp"
#include "qseed/nc/quasi.hpp"
#include "qseed/seed.hpp"
#include "qseed/serialize.hpp"
#include "support/properties.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qseed;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

auto read_file(const std::string& path) -> std::string {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<FamilySpec (*)(std::size_t, std::size_t)> kNamed{FamilySpec::dd, FamilySpec::frt, FamilySpec::c1,
                                                                   FamilySpec::c2};

auto golden() -> Outcome {
  Outcome o;
  const std::string dir = QSEED_GOLDEN_DIR;
  const FamilySpec s = FamilySpec::dd(4, 4);
  const IntMatrix h = build_H(s), lambda = build_lambda(s);
  auto expect = [&](const std::string& file, const std::string& got, const std::string& what) {
    if (read_file(dir + "/" + file) != got) o.fail(what + " differs from " + file);
  };
  expect("dd44_h.csv", to_csv(h), "build_H");
  expect("dd44_hinv.csv", to_csv(*inverse(h)), "inverse(H)");
  expect("dd44_hinv.csv", to_csv(inverse_H_closed(s).matrix), "inverse_H_closed");
  expect("dd44_lambda.csv", to_csv(lambda), "build_lambda");
  expect("dd44_lambda_inv.csv", to_csv(*inverse(lambda)), "inverse(Lambda)");
  expect("dd44_lambda_inv.csv", to_csv(inverse_Lambda_closed(s).matrix), "inverse_Lambda_closed");
  return o;
}

auto coranks() -> Outcome {
  Outcome o;
  for (auto make : kNamed)
    for (std::size_t n = 2; n <= 8; ++n)
      for (std::size_t r = 2; r <= 8; ++r) {
        const FamilySpec s = make(n, r);
        const std::size_t oracle = n * r - rank(build_H(s));
        std::size_t formula = 0;
        switch (s.kind) {
          case Kind::DipperDonkin: formula = std::gcd(n - 1, r + 1) - 1; break;
          case Kind::FRT: {
            const std::size_t g = std::gcd(n, r);
            formula = (n / g) % 2 && (r / g) % 2 ? g : 0;
            break;
          }
          default: formula = std::gcd(n + 1, r + 1) - 1;
        }
        if (oracle != formula || corank_closed(s) != oracle)
          o.fail(s.label() + ": oracle " + std::to_string(oracle) + ", formula " + std::to_string(formula));
      }
  return o;
}

auto determinants() -> Outcome {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t r = 2; r <= 8; ++r) {
      const FamilySpec dd = FamilySpec::dd(n, r), frt = FamilySpec::frt(n, r);
      if (corank_closed(dd) == 0) {
        ++checked;
        if (det(build_H(dd)) != 1) o.fail(dd.label() + ": det != 1");
      }
      if (corank_closed(frt) == 0) {
        ++checked;
        const std::size_t g = std::gcd(n, r);
        const BigInt expected = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>((r - 1) * (n - 1) + g - 1));
        if (det(build_H(frt)) != expected) o.fail(frt.label() + ": det != " + expected.str());
      }
    }
  if (checked == 0) o.fail("no invertible instance in the sweep");
  return o;
}

auto block_counts_sweep() -> Outcome {
  Outcome o;
  for (auto make : {FamilySpec::dd, FamilySpec::frt, FamilySpec::c1, FamilySpec::c2, FamilySpec::ext})
    for (std::size_t n = 2; n <= 7; ++n)
      for (std::size_t r = 2; r <= 7; ++r) {
        const FamilySpec s = make(n, r);
        const IntMatrix h = build_H(s);
        const SkewForm f = skew_normal_form(h);
        if (!verify_skew_form(h, f)) o.fail(s.label() + ": skew form invariants");
        const BlockCountReport got = block_counts(f);
        BlockCountReport want;
        want.corank = h.rows() - rank(h);
        const std::size_t total = (h.rows() - want.corank) / 2, g = std::gcd(n, r);
        if (s.kind == Kind::FRT) {
          want.ones = (n + r - 1) / 2;
          want.fours = want.corank == 0 ? (g - 1) / 2 : 0;
          want.twos = total - want.ones - want.fours;
        } else if (s.kind == Kind::Extended) {
          want.ones = n + r - 1;
          want.twos = ((n - 1) * (r - 1) + 1 - g) / 2;
        } else {
          want.ones = total;
        }
        if (got.ones != want.ones || got.twos != want.twos || got.fours != want.fours || got.other != 0 ||
            got.corank != want.corank)
          o.fail(s.label() + ": block counts differ");
        if (!(block_counts_closed(s) == got)) o.fail(s.label() + ": block_counts_closed differs");
      }
  return o;
}

auto symbolic() -> Outcome {
  Outcome o;
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  nc::SymbolicOptions opt;
  opt.workers = 2;
  for (auto make : {FamilySpec::frt, FamilySpec::dd})
    for (auto [n, r] : shapes) {
      const FamilySpec s = make(n, r);
      try {
        const IntMatrix sym = nc::lambda_symbolic(s, opt);
        if (sym != nc::lambda_via_diagonals(s) || sym != build_lambda(s)) o.fail(s.label() + ": Lambda mismatch");
      } catch (const std::logic_error& e) {
        o.fail(s.label() + ": " + e.what());
      }
    }
  return o;
}

auto exchange() -> Outcome {
  Outcome o;
  const std::vector<std::vector<std::size_t>> pairs{{1, 2}, {1, 3}, {2, 3}};
  nc::Engine e(3, 3);
  std::size_t configs = 0;
  for (const auto& rows : pairs)
    for (const auto& cols : pairs) {
      ++configs;
      const nc::MinorId id{rows, cols};
      const nc::ExchangeResult frt = nc::exchange_check(id, FamilySpec::frt(3, 3), e);
      if (frt.a != 0 || frt.c != 1 || !frt.balanced())
        o.fail("FRT (" + std::to_string(frt.a) + "," + std::to_string(frt.c) + ") for a 2x2 configuration");
      const nc::ExchangeResult dd = nc::exchange_check(id, FamilySpec::dd(3, 3), e);
      if (!dd.balanced()) o.fail("DD R/C balance is nonzero");
    }
  if (configs != 9) o.fail("expected 9 configurations");
  return o;
}

auto kernels() -> Outcome {
  Outcome o;
  const std::vector<FamilySpec> specs{FamilySpec::dd(3, 3), FamilySpec::dd(3, 5), FamilySpec::dd(5, 3),
                                      FamilySpec::frt(2, 2), FamilySpec::frt(3, 3)};
  for (const auto& s : specs) {
    const IntMatrix h = build_H(s), lambda = build_lambda(s);
    const ClosedKernels k = kernel_closed(s);
    const std::size_t N = h.rows();
    for (const auto& a : k.H.vectors)
      if (!(h * IntMatrix(N, 1, a)).is_zero()) o.fail(s.label() + ": H a != 0");
    for (const auto& b : k.Lambda.vectors)
      if (!(lambda * IntMatrix(N, 1, b)).is_zero()) o.fail(s.label() + ": Lambda b != 0");
    const std::vector<CenterGenerator> centers = center_generators(s);
    std::vector<IntVector> cv;
    for (const auto& c : centers) {
      cv.push_back(c.exponents);
      if (!(lambda * IntMatrix(N, 1, c.exponents)).is_zero()) o.fail(s.label() + ": center outside ker Lambda");
    }
    const std::size_t dim = kernel(h).dimension();
    if (dim == 0) o.fail(s.label() + ": expected a singular case");
    if (k.H.dimension() != dim || !independent(k.H.vectors) || !same_span(k.H.vectors, kernel(h).vectors))
      o.fail(s.label() + ": H kernel does not span the nullspace");
    if (k.Lambda.dimension() != dim || !same_span(k.Lambda.vectors, kernel(lambda).vectors))
      o.fail(s.label() + ": Lambda kernel does not span the nullspace");
    if (cv.size() != dim || !independent(cv)) o.fail(s.label() + ": center generator count");
  }
  return o;
}

auto pairs() -> Outcome {
  Outcome o;
  for (auto make : {FamilySpec::dd, FamilySpec::frt})
    for (std::size_t n = 2; n <= 5; ++n)
      for (std::size_t r = 2; r <= 5; ++r) {
        const FamilySpec s = make(n, r);
        try {
          const CompatiblePair p = compatible_pair(s);
          const std::size_t N = n * r;
          if (p.c != rank(build_H(s))) o.fail(s.label() + ": c != rank");
          if (to_rational(p.lambda) * p.bTilde != compatibility_target(N, p.c)) o.fail(s.label() + ": not compatible");
          const auto frozen = default_frozen(n, r);
          if (frozen.size() != n + r - 1) o.fail(s.label() + ": frozen count");
          const TruncatedPair t = truncate_nonmutable(p, n, r, frozen);
          const RatMatrix prod = to_rational(t.lambda) * t.b;
          for (std::size_t k = 0; k < t.mutableColumns.size(); ++k)
            for (std::size_t i = 0; i < N; ++i)
              if (prod(i, k) != (i == t.mutableColumns[k] ? Rational(-2) : Rational(0)))
                o.fail(s.label() + ": truncated column fails");
        } catch (const std::exception& e) {
          o.fail(s.label() + ": " + e.what());
        }
      }
  return o;
}

auto in_range(const RatMatrix& m, const Rational& scale, long bound) -> bool {
  for (const auto& x : m.data()) {
    const Rational v = scale * x;
    if (!is_integer(v) || v > bound || v < -bound) return false;
  }
  return true;
}

auto entry_ranges() -> Outcome {
  Outcome o;
  std::size_t checked = 0;
  std::vector<std::string> bad;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t r = 2; r <= 8; ++r) {
      for (auto make : {FamilySpec::dd, FamilySpec::frt}) {
        const FamilySpec s = make(n, r);
        const auto hi = inverse(build_H(s));
        if (!hi) continue;
        const auto li = inverse(build_lambda(s));
        ++checked;
        if (!li) {
          bad.push_back(s.label() + " Lambda singular");
          continue;
        }
        const Rational scale = s.kind == Kind::DipperDonkin ? 1 : 2;
        const long bound = s.kind == Kind::DipperDonkin ? 1 : 2;
        if (!in_range(*hi, scale, bound) || !in_range(*li, scale, bound)) bad.push_back(s.label());
      }
    }
  if (checked == 0) o.fail("no full-rank instance");
  if (!bad.empty()) {
    std::string list;
    for (const auto& b : bad) list += (list.empty() ? "" : ", ") + b;
    o.fail("entries outside the stated range for " + list);
  }
  return o;
}

auto properties() -> Outcome {
  Outcome o;
  for (const auto& res : testing::all_suites(200))
    if (!res.passed()) o.fail(res.name + ": " + std::to_string(res.failures) + " failures, " + res.firstFailure);
  return o;
}

}  // namespace

auto main() -> int {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden DD(4,4) matrices", golden},
      {"corank sweep 2..8, named families", coranks},
      {"determinants of invertible DD and FRT", determinants},
      {"block-diagonal counts 2..7", block_counts_sweep},
      {"symbolic Lambda", symbolic},
      {"exchange identity in O_q(M(3,3))", exchange},
      {"kernels and centers", kernels},
      {"compatible pairs and truncation", pairs},
      {"inverse entry ranges", entry_ranges},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first;
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << "s)";
    if (!o.ok) std::cout << " -- " << o.detail;
    std::cout << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
