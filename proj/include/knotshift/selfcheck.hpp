#pragma once

// Cross-checks of the production pipeline against the brute-force oracle.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "knotshift/knotshift.hpp"
#include "knotshift/oracle.hpp"

namespace knotshift {

/// Same set: equal cardinality and every explicit state is a member.
inline bool same_states(const Submodule& s, const oracle::ExplicitStateSet& e) {
  if (e.p != s.ring().p() || e.r != s.ring().r() || e.dim != s.ambient_dim()) return false;
  if (detail::big_pow(e.p, s.count_exponent()) != BigCount(e.size())) return false;
  oracle::StateCodec codec(s.ring().modulus(), s.ambient_dim(), oracle::kStateCap);
  for (auto c : e.states) {
    if (!membership(s, codec.decode(c))) return false;
  }
  return true;
}

inline bool same_spectrum(const PeriodSpectrum& spec, const std::map<std::uint64_t, std::uint64_t>& census) {
  if (spec.counts.size() != census.size()) return false;
  for (const auto& [q, c] : census) {
    auto it = spec.counts.find(q);
    if (it == spec.counts.end() || it->second != BigCount(c)) return false;
  }
  return true;
}

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Oracle-vs-production agreement on one (knot, p, r) instance: states,
/// decomposition, and orbit census.
inline CheckResult check_instance(const Knot& knot, RingParams ring, PairRoute route = PairRoute::Auto) {
  CheckResult res;
  res.name = knot.name + " " + ring.label();
  try {
    AlexanderPair pair = knot_pair(knot, ring.p(), route);
    RingPair pr = reduce_mod(pair, ring);
    auto brute = oracle::brute_force_states(pair, ring);
    if (!same_states(compute_V(pr), brute.V)) return res.detail = "V differs", res;
    if (!same_states(compute_forward_null(pr), brute.Afwd)) return res.detail = "Afwd differs", res;
    if (!same_states(compute_backward_null(pr), brute.Bbwd)) return res.detail = "Bbwd differs", res;
    (void)verify_decomposition(pair, ring);
    ShiftSystem sys = build_shift_system(pair, ring);
    if (!same_spectrum(period_set(sys.T()), oracle::brute_force_orbits(pair, ring))) {
      return res.detail = "orbit census differs", res;
    }
    res.ok = true;
  } catch (const std::exception& e) {
    res.detail = e.what();
  }
  return res;
}

inline CheckResult check_companion(const Knot& knot, std::uint64_t p) {
  CheckResult res;
  res.name = knot.name + " companion p=" + std::to_string(p);
  try {
    ShiftSystem sys = build_shift_system(knot, RingParams(p, 1), PairRoute::Windowed);
    std::uint64_t got = order_of_transfer(sys.T());
    std::uint64_t want = oracle::companion_order_r1(knot.delta, p);
    res.ok = got == want;
    if (!res.ok) res.detail = std::to_string(got) + " != " + std::to_string(want);
  } catch (const std::exception& e) {
    res.detail = e.what();
  }
  return res;
}

/// Built-ins whose reduced pair is small enough for the oracle at p in
/// {2, 3}, r in {1, 2}.
inline std::vector<CheckResult> selfcheck_suite() {
  std::vector<CheckResult> out;
  for (const char* name : {"trefoil", "figure8", "5_2", "7_4"}) {
    Knot k = builtin_knot(name);
    for (std::uint64_t p : {2, 3}) {
      for (int r : {1, 2}) out.push_back(check_instance(k, RingParams(p, r)));
    }
  }
  for (const auto& name : builtin_names()) {
    Knot k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) out.push_back(check_companion(k, p));
  }
  return out;
}

}  // namespace knotshift
