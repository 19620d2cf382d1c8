#pragma once

// knotshift command line: analyze | periods | coverings | selfcheck.
// Exit codes: 0 ok, 1 usage or input error, 2 theorem-violation diagnostics.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "knotshift/knotshift.hpp"
#include "knotshift/report.hpp"
#include "knotshift/selfcheck.hpp"

namespace knotshift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitTheorem = 2;

inline Knot load_knot(const std::string& source) {
  namespace fs = std::filesystem;
  const bool looks_like_file = source.ends_with(".wirt") || source.find('/') != std::string::npos;
  if (!looks_like_file) return builtin_knot(source);
  std::ifstream in(source);
  if (!in) throw InputError("cannot open knot file `" + source + "`");
  std::stringstream buf;
  buf << in.rdbuf();
  return knot_from_presentation(parse_wirtinger(buf.str(), fs::path(source).stem().string()));
}

inline PairRoute parse_route(const std::string& s) {
  if (s == "auto") return PairRoute::Auto;
  if (s == "wirtinger") return PairRoute::Wirtinger;
  if (s == "windowed") return PairRoute::Windowed;
  throw InputError("unknown route `" + s + "`");
}

inline std::uint64_t order_cap_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("KNOTSHIFT_ORDER_CAP");
  if (env == nullptr || *env == '\0') return fallback;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("KNOTSHIFT_ORDER_CAP must be a positive integer, got `" + s + "`");
  }
  std::uint64_t v = std::stoull(s);
  if (v == 0) throw InputError("KNOTSHIFT_ORDER_CAP must be positive");
  return v;
}

namespace detail {

inline std::string join(const std::vector<std::uint64_t>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline std::string pattern_text(const TowerSection& t) {
  switch (t.pattern) {
    case TowerPattern::Constant: return "constant";
    case TowerPattern::GrowthFrom: return "growth from s=" + std::to_string(t.s);
    case TowerPattern::StabilizedAfterGrowth: return "stabilized after growth";
    case TowerPattern::Other: return "other";
  }
  return "other";
}

inline void counts_table(std::ostream& out, const CountMap& counts) {
  out << "  period  states\n";
  for (const auto& [q, c] : counts) {
    std::string qs = std::to_string(q);
    out << "  " << std::string(qs.size() < 6 ? 6 - qs.size() : 0, ' ') << qs << "  " << c.str() << "\n";
  }
}

}  // namespace detail

inline void print_table(std::ostream& out, const Report& rep) {
  out << "knot   " << rep.knot << "\n";
  out << "delta  " << make_delta(rep.delta).str() << "\n";
  if (rep.sigma) out << "sigma  " << AbelianGroupSpec{*rep.sigma}.str() << "\n";
  if (rep.command == "analyze") {
    if (rep.p) out << "ring   Z/" << *rep.p << "^" << *rep.r << "\n";
    if (rep.n) out << "n      " << *rep.n << "\n";
    out << "|Hom|  " << *rep.hom_order << "\n";
    out << "d      " << *rep.d << "\n";
    out << "Q      {" << detail::join(*rep.Q) << "}\n";
    detail::counts_table(out, *rep.period_counts);
  } else if (rep.command == "periods") {
    const auto& t = *rep.tower;
    out << "p      " << t.p << "\n";
    out << "  r  n  d_r  Q_r\n";
    for (const auto& l : t.levels) {
      std::vector<std::uint64_t> q;
      for (const auto& kv : l.counts) q.push_back(kv.first);
      out << "  " << l.r << "  " << l.n << "  " << l.d << "  {" << detail::join(q) << "}\n";
    }
    out << "pattern  " << detail::pattern_text(t) << "\n";
  } else if (rep.command == "coverings") {
    const auto& c = *rep.coverings;
    out << "d      " << c.d << "\n";
    out << "fixed representations       " << c.total_fixed.str() << "\n";
    out << "surjective (coverings)      " << c.surjective_count.str() << "\n";
    for (const auto& f : c.factors) {
      out << "  Z/" << f.p << "^" << f.r << ": |F| = " << f.p << "^" << f.fixed_exponent
          << ", surjective " << f.surjective.str() << "\n";
      for (const auto& v : f.representatives) {
        out << "    (" << detail::join(v) << ")\n";
      }
    }
  }
}

struct Options {
  std::string knot;
  std::string route = "auto";
  std::string format = "json";
  std::uint64_t p = 0;
  int r = 1;
  int rmax = 4;
  std::int64_t d = 1;
  std::string sigma;
  std::uint64_t order_cap = 0;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shift dynamics of knot representations into finite abelian groups", "knotshift"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--knot", o.knot, "built-in name or .wirt file")->required();
    sub->add_option("--route", o.route, "pair construction: auto | wirtinger | windowed")
        ->check(CLI::IsMember({"auto", "wirtinger", "windowed"}));
    sub->add_option("--format", o.format, "json | table")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--order-cap", o.order_cap, "iteration cap for the mod-p order search");
  };

  auto* analyze = app.add_subcommand("analyze", "rank, |Hom| and period spectrum");
  add_common(analyze);
  auto* p_opt = analyze->add_option("--p", o.p, "prime");
  analyze->add_option("--r", o.r, "exponent")->check(CLI::Range(1, 62));
  auto* s_opt = analyze->add_option("--sigma", o.sigma, "target group, e.g. 4,3");
  p_opt->excludes(s_opt);

  auto* periods = app.add_subcommand("periods", "tower d_1, d_2, ... over Z/p^r");
  add_common(periods);
  periods->add_option("--p", o.p, "prime")->required();
  periods->add_option("--rmax", o.rmax, "top level")->check(CLI::Range(1, 62));

  auto* coverings = app.add_subcommand("coverings", "regular Sigma-coverings of the d-fold cyclic cover");
  add_common(coverings);
  coverings->add_option("--sigma", o.sigma, "target group, e.g. 6 or 2,3")->required();
  coverings->add_option("--d", o.d, "degree of the cyclic cover")->required()->check(CLI::PositiveNumber);

  auto* selfcheck = app.add_subcommand("selfcheck", "compare against brute-force oracles");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (selfcheck->parsed()) {
      int failed = 0;
      for (const auto& c : selfcheck_suite()) {
        out << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        failed += c.ok ? 0 : 1;
      }
      out << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << "\n";
      return failed ? kExitTheorem : kExitOk;
    }

    std::uint64_t cap = o.order_cap ? o.order_cap : order_cap_from_env(kDefaultOrderCap);
    Knot knot = load_knot(o.knot);
    PairRoute route = parse_route(o.route);
    Report rep;
    if (analyze->parsed()) {
      if (!o.sigma.empty()) {
        rep = analyze_report(knot, parse_sigma(o.sigma), route, cap);
      } else {
        if (o.p == 0) throw InputError("analyze: give --p (with --r) or --sigma");
        rep = analyze_report(knot, RingParams(o.p, o.r), route, cap);
      }
    } else if (periods->parsed()) {
      rep = periods_report(knot, o.p, o.rmax, route, cap);
    } else {
      rep = coverings_report(knot, parse_sigma(o.sigma), o.d, route);
    }
    if (o.format == "table") {
      print_table(out, rep);
    } else {
      out << emit(rep);
    }
    if (rep.tower && rep.tower->pattern == TowerPattern::Other) {
      err << "knotshift: tower breaks the chain d_r | d_(r+1) | p d_r\n";
      return kExitTheorem;
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "knotshift: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "knotshift: " << e.what() << "\n";
    return kExitInput;
  } catch (const TheoremViolation& e) {
    err << "knotshift: " << e.what() << "\n";
    return kExitTheorem;
  } catch (const std::exception& e) {
    err << "knotshift: internal error: " << e.what() << "\n";
    return kExitTheorem;
  }
}

}  // namespace knotshift::cli
