#include "qseed/closed_forms.hpp"
#include "qseed/nc/quasi.hpp"
#include "qseed/report.hpp"
#include "qseed/seed.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qseed;

struct Options {
  std::string family = "dd";
  std::string specFile;
  std::string n = "2";
  std::string r = "2";
  std::vector<unsigned> roots;
  std::string format = "json";
  std::size_t cap = 3;
  std::string out;
  std::string target;
};

auto workers() -> std::size_t {
  if (const char* w = std::getenv("QSEED_WORKERS")) {
    const long v = std::strtol(w, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

// "4" or "2..6"
auto parse_range(const std::string& s) -> std::pair<std::size_t, std::size_t> {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    const auto lo = std::stoul(s.substr(0, dots)), hi = std::stoul(s.substr(dots + 2));
    if (lo > hi) throw DomainError("empty range " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw DomainError("bad size or range: " + s);
  }
}

auto make_spec(const Options& o, std::size_t n, std::size_t r) -> FamilySpec {
  if (o.specFile.empty()) {
    const Kind k = parse_kind(o.family);
    if (k == Kind::Custom) throw DomainError("custom families need --spec");
    return FamilySpec{k, n, r, {}, {}};
  }
  std::ifstream in(o.specFile);
  if (!in) throw DomainError("cannot read " + o.specFile);
  FamilySpec s = family_from_json(json::parse(in));
  s.validate();
  return s;
}

auto single_spec(const Options& o) -> FamilySpec {
  const auto [n, n2] = parse_range(o.n);
  const auto [r, r2] = parse_range(o.r);
  if (n != n2 || r != r2) throw DomainError("this command takes a single n and r");
  return make_spec(o, n, r);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

auto render(const IntMatrix& m, const Options& o, std::size_t block) -> std::string {
  if (o.format == "csv") return to_csv(m);
  if (o.format == "latex") return to_latex(m, block);
  return to_json(m).dump(2) + "\n";
}

// Accumulates verdict lines; any FAIL makes the run exit with status 1.
class Verdicts {
 public:
  void check(const std::string& name, bool ok) {
    lines_ << (ok ? "PASS " : "FAIL ") << name << '\n';
    failed_ = failed_ || !ok;
  }
  void skip(const std::string& name, const std::string& why) { lines_ << "SKIP " << name << " (" << why << ")\n"; }
  [[nodiscard]] auto text() const -> std::string { return lines_.str(); }
  [[nodiscard]] auto failed() const -> bool { return failed_; }

 private:
  std::ostringstream lines_;
  bool failed_ = false;
};

void verify_inverse(const FamilySpec& s, Verdicts& v) {
  const auto hinv = inverse(build_H(s));
  if (!hinv) {
    v.skip("inverse " + s.label(), "H is singular");
    return;
  }
  try {
    const ClosedInverse c = inverse_H_closed(s);
    v.check("H^-1 closed form [" + c.formula + "] " + s.label(), c.matrix == *hinv);
  } catch (const NotApplicable& e) {
    v.skip("H^-1 closed form " + s.label(), e.what());
  }
  try {
    const ClosedInverse c = inverse_Lambda_closed(s);
    v.check("Lambda^-1 closed form [" + c.formula + "] " + s.label(), c.matrix == *inverse(build_lambda(s)));
  } catch (const NotApplicable& e) {
    v.skip("Lambda^-1 closed form " + s.label(), e.what());
  }
}

void verify_lambda(const FamilySpec& s, const Options& o, Verdicts& v) {
  const IntMatrix lambda = build_lambda(s);
  v.check("Lambda = diagonal sums " + s.label(), lambda == nc::lambda_via_diagonals(s));
  if (s.kind != Kind::FRT && s.kind != Kind::DipperDonkin) {
    v.skip("symbolic Lambda " + s.label(), "no symbolic model");
    return;
  }
  if (std::min(s.n, s.r) > o.cap) {
    v.skip("symbolic Lambda " + s.label(), "above --cap");
    return;
  }
  v.check("Lambda = symbolic " + s.label(), lambda == nc::lambda_symbolic(s, {o.cap, workers()}));
}

void verify_minors(const FamilySpec& s, const Options& o, Verdicts& v) {
  const nc::FamilyModel model = nc::family_model(s);
  const auto violation = nc::validate_monomial_map(model.map);
  v.check("monomial map " + s.label() + (violation ? " (" + violation->identity + ": " + violation->witness + ")" : ""),
          !violation);
  if (std::min(s.n, s.r) > o.cap) {
    v.skip("minor expansions " + s.label(), "above --cap");
    return;
  }
  nc::Engine e(s.n, s.r);
  bool expansions = true, barFixed = true;
  for (std::size_t a = 1; a <= s.n; ++a)
    for (std::size_t j = 1; j <= s.r; ++j) {
      const nc::MinorId id = nc::family_minor(a, j);
      expansions = expansions && nc::quantum_minor_rows(id, e) == nc::quantum_minor_cols(id, e);
      const nc::NCPoly chi = nc::quantum_minor(id, e, model.map);
      barFixed = barFixed && e.bar(chi) == chi;
    }
  v.check("row and column expansions agree " + s.label(), expansions);
  v.check("minors are bar-invariant " + s.label(), barFixed);
  try {
    (void)nc::lambda_symbolic(s, {o.cap, workers()});
    v.check("V+ pairs q-commute " + s.label(), true);
  } catch (const std::logic_error&) {
    v.check("V+ pairs q-commute " + s.label(), false);
  }
}

void verify_seeds(const FamilySpec& s, Verdicts& v) {
  try {
    const CompatiblePair p = compatible_pair(s);
    v.check("Lambda*B = (-2I_" + std::to_string(p.c) + " ; 0) " + s.label(), true);
    const TruncatedPair t = truncate_nonmutable(p, s.n, s.r, default_frozen(s.n, s.r));
    v.check("truncated pair (" + std::to_string(t.mutableColumns.size()) + " mutable) " + s.label(), true);
  } catch (const std::logic_error& e) {
    v.check(std::string("compatible pair ") + s.label() + ": " + e.what(), false);
  }
}

void verify_kernel(const FamilySpec& s, Verdicts& v) {
  const IntMatrix h = build_H(s), lambda = build_lambda(s);
  const ClosedKernels k = kernel_closed(s);
  const std::size_t corank = h.rows() - rank(h);
  auto annihilates = [](const IntMatrix& m, const KernelBasis& b) {
    for (const auto& x : b.vectors)
      if (!(m * IntMatrix(x.size(), 1, x)).is_zero()) return false;
    return true;
  };
  v.check("H a = 0 " + s.label(), annihilates(h, k.H));
  v.check("Lambda b = 0 " + s.label(), annihilates(lambda, k.Lambda));
  v.check("kernel dimension " + std::to_string(corank) + " " + s.label(),
          k.H.dimension() == corank && independent(k.H.vectors) && k.Lambda.dimension() == corank &&
              independent(k.Lambda.vectors));
  const auto centers = center_generators(s);
  std::vector<IntVector> cv;
  for (const auto& c : centers) cv.push_back(c.exponents);
  v.check("center generators span ker(Lambda) " + s.label(),
          cv.size() == corank && (corank == 0 || same_span(cv, kernel(lambda).vectors)));
}

void verify_exchange(const FamilySpec& s, const Options& o, Verdicts& v) {
  if (std::min(s.n, s.r) > o.cap) {
    v.skip("exchange " + s.label(), "above --cap");
    return;
  }
  nc::Engine e(s.n, s.r);
  const std::size_t mmax = std::min(s.n, s.r);
  for (std::size_t m = 2; m <= mmax; ++m) {
    std::vector<bool> rowPick(s.n, false), colPick(s.r, false);
    std::fill(rowPick.begin(), rowPick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
      std::fill(colPick.begin(), colPick.end(), false);
      std::fill(colPick.begin(), colPick.begin() + static_cast<std::ptrdiff_t>(m), true);
      do {
        nc::MinorId id;
        for (std::size_t i = 0; i < s.n; ++i)
          if (rowPick[i]) id.rows.push_back(i + 1);
        for (std::size_t j = 0; j < s.r; ++j)
          if (colPick[j]) id.cols.push_back(j + 1);
        std::ostringstream name;
        name << "exchange rows";
        for (auto x : id.rows) name << ' ' << x;
        name << " cols";
        for (auto x : id.cols) name << ' ' << x;
        try {
          const nc::ExchangeResult x = nc::exchange_check(id, s, e);
          name << " -> a=" << x.a << " c=" << x.c << " " << nc::ordering_name(x.ordering) << ' ' << s.label();
          const bool expected = s.kind != Kind::FRT || (x.a == 0 && x.c == 1);
          v.check(name.str(), expected && x.balanced());
        } catch (const std::logic_error& err) {
          v.check(name.str() + " " + s.label() + ": " + err.what(), false);
        }
      } while (std::prev_permutation(colPick.begin(), colPick.end()));
    } while (std::prev_permutation(rowPick.begin(), rowPick.end()));
  }
}

auto run_sweep(const Options& o) -> std::pair<std::string, bool> {
  const auto [n0, n1] = parse_range(o.n);
  const auto [r0, r1] = parse_range(o.r);
  if (!o.specFile.empty()) throw DomainError("sweep covers named families only");
  std::vector<Kind> kinds;
  if (o.family == "all")
    kinds = {Kind::DipperDonkin, Kind::FRT, Kind::CombinedI, Kind::CombinedII, Kind::Extended};
  else
    kinds = {parse_kind(o.family)};
  std::vector<FamilySpec> jobs;
  for (Kind k : kinds)
    for (std::size_t n = n0; n <= n1; ++n)
      for (std::size_t r = r0; r <= r1; ++r) jobs.push_back(FamilySpec{k, n, r, {}, {}});
  std::vector<Analysis> results(jobs.size());
  nc::parallel_for(jobs.size(), workers(), [&](std::size_t, std::size_t t) { results[t] = analyze(jobs[t], o.roots); });
  bool ok = true;
  for (const auto& a : results)
    if (!a.consistent()) std::cerr << "counterexample: " << to_json(a).dump() << '\n';
  std::string text;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& a : results) {
      arr.push_back(to_json(a));
      ok = ok && a.consistent();
    }
    text = arr.dump(2) + "\n";
  } else {
    text = sweep_header(o.roots) + "\n";
    for (const auto& a : results) {
      text += sweep_row(a) + "\n";
      ok = ok && a.consistent();
    }
  }
  return {text, ok};
}

}  // namespace

auto main(int argc, char** argv) -> int {
  CLI::App app{"Exact toolkit for quasi-polynomial algebras of quantized matrix algebras"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool formats) {
    c->add_option("--family", o.family, "dd, frt, c1, c2, ext (sweep also accepts all)");
    c->add_option("--spec", o.specFile, "FamilySpec JSON file (custom families)");
    c->add_option("--n", o.n, "rows, or a range a..b for sweep");
    c->add_option("--r", o.r, "columns, or a range a..b for sweep");
    c->add_option("--out", o.out, "write output to this file");
    if (formats) c->add_option("--format", o.format, "json, csv or latex")->check(CLI::IsMember({"json", "csv", "latex"}));
  };

  auto* buildH = app.add_subcommand("build-h", "defining matrix H");
  common(buildH, true);
  auto* buildL = app.add_subcommand("build-lambda", "quasi-commutation matrix T^t H T");
  common(buildL, true);
  auto* analyzeCmd = app.add_subcommand("analyze", "corank, det, blocks, degrees, center");
  common(analyzeCmd, false);
  analyzeCmd->add_option("--m", o.roots, "root-of-unity orders")->check(CLI::Range(2u, 1000000u));
  auto* verifyCmd = app.add_subcommand("verify", "check closed forms against oracles");
  common(verifyCmd, false);
  verifyCmd->add_option("what", o.target, "inverse, lambda, minors, seeds, kernel or exchange")
      ->required()
      ->check(CLI::IsMember({"inverse", "lambda", "minors", "seeds", "kernel", "exchange"}));
  verifyCmd->add_option("--cap", o.cap, "largest min(n, r) for symbolic work")->check(CLI::PositiveNumber);
  auto* sweepCmd = app.add_subcommand("sweep", "one row per (family, n, r)");
  common(sweepCmd, true);
  sweepCmd->add_option("--m", o.roots, "root-of-unity orders")->check(CLI::Range(2u, 1000000u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*buildH || *buildL) {
      const FamilySpec s = single_spec(o);
      const IntMatrix m = *buildH ? build_H(s) : build_lambda(s);
      emit(o, render(m, o, s.kind == Kind::Extended ? 0 : s.r));
      return 0;
    }
    if (*analyzeCmd) {
      const Analysis a = analyze(single_spec(o), o.roots);
      emit(o, to_json(a).dump(2) + "\n");
      return a.consistent() ? 0 : 1;
    }
    if (*sweepCmd) {
      const auto [text, ok] = run_sweep(o);
      emit(o, text);
      return ok ? 0 : 1;
    }
    const FamilySpec s = single_spec(o);
    Verdicts v;
    if (o.target == "inverse") verify_inverse(s, v);
    if (o.target == "lambda") verify_lambda(s, o, v);
    if (o.target == "minors") verify_minors(s, o, v);
    if (o.target == "seeds") verify_seeds(s, v);
    if (o.target == "kernel") verify_kernel(s, v);
    if (o.target == "exchange") verify_exchange(s, o, v);
    emit(o, v.text());
    return v.failed() ? 1 : 0;
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 1;
  }
}
