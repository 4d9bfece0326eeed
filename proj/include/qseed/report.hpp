#pragma once

#include "qseed/closed_forms.hpp"
#include "qseed/serialize.hpp"
#include "qseed/skew_form.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qseed {

struct Analysis {
  FamilySpec spec;
  std::size_t corank = 0;
  std::optional<std::size_t> corankClosed;
  BigInt det = 0;
  std::optional<BigInt> detClosed;
  BlockCountReport blocks;
  std::optional<BlockCountReport> blocksClosed;
  std::vector<BigInt> blockValues;
  std::map<unsigned, BigInt> degree;
  std::optional<std::vector<CenterGenerator>> centers;

  // Every available closed form agrees with its oracle.
  [[nodiscard]] auto consistent() const -> bool {
    if (corankClosed && *corankClosed != corank) return false;
    if (detClosed && *detClosed != det) return false;
    if (blocksClosed && !(*blocksClosed == blocks)) return false;
    return true;
  }
};

inline auto analyze(const FamilySpec& s, const std::vector<unsigned>& roots = {}) -> Analysis {
  s.validate();
  const IntMatrix h = build_H(s);
  Analysis a;
  a.spec = s;
  a.corank = h.rows() - rank(h);
  a.det = det(h);
  const SkewForm f = skew_normal_form(h);
  a.blocks = block_counts(f);
  a.blockValues = f.blockValues;
  for (unsigned m : roots) a.degree[m] = degree_at_root(f.blockValues, m);
  if (s.kind != Kind::Custom) {
    a.corankClosed = corank_closed(s);
    a.detClosed = det_closed(s);
    a.blocksClosed = block_counts_closed(s);
  }
  if (s.kind == Kind::DipperDonkin || s.kind == Kind::FRT) a.centers = center_generators(s);
  return a;
}

inline auto to_json(const Analysis& a) -> json {
  json degree = json::object();
  for (const auto& [m, d] : a.degree) degree[std::to_string(m)] = d.str();
  json centers = nullptr;
  if (a.centers) {
    centers = json::array();
    for (const auto& c : *a.centers) {
      json e = json::array();
      for (const auto& x : c.exponents) e.push_back(x.str());
      centers.push_back({{"label", c.label}, {"exponents", e}});
    }
  }
  return json{{"spec", to_json(a.spec)},
              {"corank", a.corank},
              {"det", a.det.str()},
              {"blocks", {{"1", a.blocks.ones}, {"2", a.blocks.twos}, {"4", a.blocks.fours}}},
              {"degree", degree},
              {"centerGenerators", centers},
              {"closedFormsAgree", a.consistent()}};
}

inline auto sweep_header(const std::vector<unsigned>& roots) -> std::string {
  std::string h = "family,n,r,corank,corank_closed,det,det_closed,ones,twos,fours,other";
  for (unsigned m : roots) h += ",degree_m" + std::to_string(m);
  return h + ",verdict";
}

inline auto sweep_row(const Analysis& a) -> std::string {
  std::ostringstream out;
  out << kind_name(a.spec.kind) << ',' << a.spec.n << ',' << a.spec.r << ',' << a.corank << ','
      << (a.corankClosed ? std::to_string(*a.corankClosed) : "") << ',' << a.det << ','
      << (a.detClosed ? a.detClosed->str() : "") << ',' << a.blocks.ones << ',' << a.blocks.twos << ','
      << a.blocks.fours << ',' << a.blocks.other;
  for (const auto& [m, d] : a.degree) out << ',' << d;
  out << ',' << (a.consistent() ? "PASS" : "FAIL");
  return out.str();
}

}  // namespace qseed
