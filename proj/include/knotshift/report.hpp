#pragma once

// Versioned JSON documents emitted by the command-line tool.
//
// Top-level fields: schema, command, knot, delta, and depending on the
// command p, r, n, hom_order, d, Q, period_counts, sigma, tower, coverings.
// Counts that can exceed 64 bits (period_counts values, covering counts) are
// decimal strings.

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotshift/coverings.hpp"
#include "knotshift/errors.hpp"
#include "knotshift/knot.hpp"
#include "knotshift/spectra.hpp"

namespace knotshift {

inline constexpr const char* kSchemaVersion = "knotshift/v1";

using Json = nlohmann::ordered_json;
using CountMap = std::map<std::uint64_t, BigCount>;

struct LevelSection {
  int r = 0;
  std::size_t n = 0;
  std::uint64_t d = 1;
  CountMap counts;

  bool operator==(const LevelSection&) const = default;
};

struct TowerSection {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> d;
  TowerPattern pattern = TowerPattern::Constant;
  int s = 0;
  std::vector<LevelSection> levels;

  bool operator==(const TowerSection&) const = default;
};

struct Report {
  std::string command;
  std::string knot;
  PolyZ delta;
  std::optional<std::uint64_t> p;
  std::optional<int> r;
  std::optional<std::size_t> n;
  std::optional<std::string> hom_order;
  std::optional<std::uint64_t> d;
  std::optional<std::vector<std::uint64_t>> Q;
  std::optional<CountMap> period_counts;
  std::optional<std::vector<std::pair<std::uint64_t, int>>> sigma;
  std::optional<TowerSection> tower;
  std::optional<CoveringReport> coverings;

  bool operator==(const Report&) const = default;
};

namespace detail {

inline Json counts_to_json(const CountMap& m) {
  Json j = Json::object();
  for (const auto& [q, c] : m) j[std::to_string(q)] = c.str();
  return j;
}

inline CountMap counts_from_json(const Json& j) {
  CountMap m;
  for (const auto& [k, v] : j.items()) m[std::stoull(k)] = BigCount(v.get<std::string>());
  return m;
}

inline Json sigma_to_json(const std::vector<std::pair<std::uint64_t, int>>& f) {
  Json j = Json::array();
  for (const auto& [p, r] : f) j.push_back(Json::array({p, r}));
  return j;
}

inline std::vector<std::pair<std::uint64_t, int>> sigma_from_json(const Json& j) {
  std::vector<std::pair<std::uint64_t, int>> f;
  for (const auto& e : j) f.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<int>());
  return f;
}

}  // namespace detail

inline Json to_json(const Report& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = rep.command;
  j["knot"] = rep.knot;
  j["delta"] = rep.delta;
  if (rep.sigma) j["sigma"] = detail::sigma_to_json(*rep.sigma);
  if (rep.p) j["p"] = *rep.p;
  if (rep.r) j["r"] = *rep.r;
  if (rep.n) j["n"] = *rep.n;
  if (rep.hom_order) j["hom_order"] = *rep.hom_order;
  if (rep.d) j["d"] = *rep.d;
  if (rep.Q) j["Q"] = *rep.Q;
  if (rep.period_counts) j["period_counts"] = detail::counts_to_json(*rep.period_counts);
  if (rep.tower) {
    const auto& t = *rep.tower;
    Json jt;
    jt["p"] = t.p;
    jt["d"] = t.d;
    jt["pattern"] = pattern_name(t.pattern);
    if (t.pattern == TowerPattern::GrowthFrom) jt["s"] = t.s;
    Json levels = Json::array();
    for (const auto& l : t.levels) {
      Json jl;
      jl["r"] = l.r;
      jl["n"] = l.n;
      jl["d"] = l.d;
      jl["period_counts"] = detail::counts_to_json(l.counts);
      levels.push_back(std::move(jl));
    }
    jt["levels"] = std::move(levels);
    j["tower"] = std::move(jt);
  }
  if (rep.coverings) {
    const auto& c = *rep.coverings;
    Json jc;
    jc["d"] = c.d;
    jc["sigma"] = detail::sigma_to_json(c.sigma.factors);
    jc["total_fixed"] = c.total_fixed.str();
    jc["surjective_count"] = c.surjective_count.str();
    jc["representatives_listed"] = c.representatives_listed;
    Json factors = Json::array();
    for (const auto& f : c.factors) {
      Json jf;
      jf["p"] = f.p;
      jf["r"] = f.r;
      jf["fixed_exponent"] = f.fixed_exponent;
      jf["surjective"] = f.surjective.str();
      if (c.representatives_listed) jf["representatives"] = f.representatives;
      factors.push_back(std::move(jf));
    }
    jc["factors"] = std::move(factors);
    j["coverings"] = std::move(jc);
  }
  return j;
}

inline Report report_from_json(const Json& j) {
  if (j.value("schema", std::string()) != kSchemaVersion) {
    throw InputError("report: unsupported schema `" + j.value("schema", std::string()) + "`");
  }
  Report rep;
  rep.command = j.at("command").get<std::string>();
  rep.knot = j.at("knot").get<std::string>();
  rep.delta = j.at("delta").get<PolyZ>();
  if (j.contains("sigma")) rep.sigma = detail::sigma_from_json(j["sigma"]);
  if (j.contains("p")) rep.p = j["p"].get<std::uint64_t>();
  if (j.contains("r")) rep.r = j["r"].get<int>();
  if (j.contains("n")) rep.n = j["n"].get<std::size_t>();
  if (j.contains("hom_order")) rep.hom_order = j["hom_order"].get<std::string>();
  if (j.contains("d")) rep.d = j["d"].get<std::uint64_t>();
  if (j.contains("Q")) rep.Q = j["Q"].get<std::vector<std::uint64_t>>();
  if (j.contains("period_counts")) rep.period_counts = detail::counts_from_json(j["period_counts"]);
  if (j.contains("tower")) {
    const auto& jt = j["tower"];
    TowerSection t;
    t.p = jt.at("p").get<std::uint64_t>();
    t.d = jt.at("d").get<std::vector<std::uint64_t>>();
    t.pattern = pattern_from_name(jt.at("pattern").get<std::string>());
    t.s = jt.value("s", 0);
    for (const auto& jl : jt.at("levels")) {
      t.levels.push_back({jl.at("r").get<int>(), jl.at("n").get<std::size_t>(),
                          jl.at("d").get<std::uint64_t>(), detail::counts_from_json(jl.at("period_counts"))});
    }
    rep.tower = std::move(t);
  }
  if (j.contains("coverings")) {
    const auto& jc = j["coverings"];
    CoveringReport c;
    c.knot = rep.knot;
    c.d = jc.at("d").get<std::int64_t>();
    c.sigma = AbelianGroupSpec{detail::sigma_from_json(jc.at("sigma"))};
    c.total_fixed = BigCount(jc.at("total_fixed").get<std::string>());
    c.surjective_count = BigCount(jc.at("surjective_count").get<std::string>());
    c.representatives_listed = jc.at("representatives_listed").get<bool>();
    for (const auto& jf : jc.at("factors")) {
      FactorCoverings f;
      f.p = jf.at("p").get<std::uint64_t>();
      f.r = jf.at("r").get<int>();
      f.fixed_exponent = jf.at("fixed_exponent").get<int>();
      f.surjective = BigCount(jf.at("surjective").get<std::string>());
      if (jf.contains("representatives")) f.representatives = jf["representatives"].get<std::vector<Vector>>();
      c.factors.push_back(std::move(f));
    }
    rep.coverings = std::move(c);
  }
  return rep;
}

inline std::string emit(const Report& rep) { return to_json(rep).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return report_from_json(j);
}

inline std::string power_string(std::uint64_t p, int k) {
  return std::to_string(p) + "^" + std::to_string(k);
}

// Builders shared by the CLI and the tests.

inline Report analyze_report(const Knot& knot, RingParams ring, PairRoute route = PairRoute::Auto,
                             std::uint64_t cap = kDefaultOrderCap) {
  ShiftSystem sys = build_shift_system(knot, ring, route);
  PeriodSpectrum spec = period_set(sys.T(), cap);
  Report rep;
  rep.command = "analyze";
  rep.knot = knot.name;
  rep.delta = knot.delta.coeffs;
  rep.p = ring.p();
  rep.r = ring.r();
  rep.n = sys.n();
  rep.hom_order = power_string(ring.p(), sys.V.count_exponent());
  rep.d = spec.d;
  rep.Q = spec.periods();
  rep.period_counts = spec.counts;
  return rep;
}

inline Report analyze_report(const Knot& knot, const AbelianGroupSpec& sigma, PairRoute route = PairRoute::Auto,
                             std::uint64_t cap = kDefaultOrderCap) {
  std::vector<PeriodSpectrum> parts;
  std::string hom;
  for (const auto& [p, r] : sigma.factors) {
    ShiftSystem sys = build_shift_system(knot, RingParams(p, r), route);
    if (!hom.empty()) hom += " * ";
    hom += power_string(p, sys.V.count_exponent());
    parts.push_back(period_set(sys.T(), cap));
  }
  CombinedSpectrum comb = combine_abelian(sigma, parts);
  Report rep;
  rep.command = "analyze";
  rep.knot = knot.name;
  rep.delta = knot.delta.coeffs;
  rep.sigma = sigma.factors;
  rep.hom_order = hom;
  rep.d = comb.d;
  rep.Q = comb.periods();
  rep.period_counts = comb.counts;
  return rep;
}

inline Report periods_report(const Knot& knot, std::uint64_t p, int rmax, PairRoute route = PairRoute::Auto,
                             std::uint64_t cap = kDefaultOrderCap) {
  if (rmax < 1) throw InputError("periods: --rmax must be >= 1");
  TowerSection t;
  t.p = p;
  std::size_t n1 = 0;
  for (int r = 1; r <= rmax; ++r) {
    ShiftSystem sys = build_shift_system(knot, RingParams(p, r), route);
    PeriodSpectrum spec = period_set(sys.T(), cap);
    if (r == 1) n1 = sys.n();
    t.d.push_back(spec.d);
    t.levels.push_back({r, sys.n(), spec.d, spec.counts});
  }
  auto cls = classify_tower(p, t.d);
  t.pattern = cls.pattern;
  t.s = cls.growth_start;
  Report rep;
  rep.command = "periods";
  rep.knot = knot.name;
  rep.delta = knot.delta.coeffs;
  rep.p = p;
  rep.n = n1;
  rep.tower = std::move(t);
  return rep;
}

inline Report coverings_report(const Knot& knot, const AbelianGroupSpec& sigma, std::int64_t d,
                               PairRoute route = PairRoute::Auto) {
  Report rep;
  rep.command = "coverings";
  rep.knot = knot.name;
  rep.delta = knot.delta.coeffs;
  rep.sigma = sigma.factors;
  rep.coverings = classify_coverings(knot, sigma, d, route);
  return rep;
}

}  // namespace knotshift
