#pragma once

// A knot as the pipeline sees it: an optional Wirtinger presentation plus
// its Alexander polynomial, with the built-in test corpus.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotshift/alexander.hpp"
#include "knotshift/errors.hpp"
#include "knotshift/polynomial.hpp"

namespace knotshift {

struct Knot {
  std::string name;
  std::optional<KnotPresentation> presentation;
  LaurentPolyZ delta;
};

namespace detail {

struct BuiltinEntry {
  std::string_view name;
  std::string_view aliases;  // space separated
  std::string_view wirtinger;  // empty if only the polynomial is stored
  std::array<std::int64_t, 5> delta;
  std::size_t delta_len;
};

inline constexpr std::array<BuiltinEntry, 6> kBuiltins{{
    {"trefoil", "3_1",
     "generators 3\nxing 3 1 2 +\nxing 1 2 3 +\nxing 2 3 1 +\n", {1, -1, 1, 0, 0}, 3},
    {"figure8", "4_1 figure-eight",
     "generators 4\nxing 1 2 4 +\nxing 2 3 1 -\nxing 3 4 2 +\nxing 4 1 3 -\n", {1, -3, 1, 0, 0}, 3},
    {"5_1", "", "", {1, -1, 1, -1, 1}, 5},
    {"5_2", "", "", {2, -3, 2, 0, 0}, 3},
    {"6_1", "", "", {2, -5, 2, 0, 0}, 3},
    {"7_4", "", "", {4, -7, 4, 0, 0}, 3},
}};

inline bool matches(const BuiltinEntry& e, std::string_view name) {
  if (e.name == name) return true;
  std::string_view rest = e.aliases;
  while (!rest.empty()) {
    auto sp = rest.find(' ');
    if (rest.substr(0, sp) == name) return true;
    if (sp == std::string_view::npos) break;
    rest.remove_prefix(sp + 1);
  }
  return false;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& e : detail::kBuiltins) out.emplace_back(e.name);
  return out;
}

/// The stored presentation (if any) and stored Alexander polynomial.
/// Stored polynomials are not trusted here; the test suite re-derives them
/// from the presentations.
inline Knot builtin_knot(std::string_view name) {
  for (const auto& e : detail::kBuiltins) {
    if (!detail::matches(e, name)) continue;
    Knot k;
    k.name = std::string(e.name);
    if (!e.wirtinger.empty()) k.presentation = parse_wirtinger(std::string(e.wirtinger), k.name);
    k.delta = make_delta(PolyZ(e.delta.begin(), e.delta.begin() + static_cast<std::ptrdiff_t>(e.delta_len)));
    return k;
  }
  throw InputError("unknown knot `" + std::string(name) + "`");
}

/// Knot from a parsed presentation; the polynomial is computed.
inline Knot knot_from_presentation(KnotPresentation kp) {
  Knot k;
  k.name = kp.name;
  k.delta = alexander_polynomial(reduce_pair(fox_pair(kp)));
  k.presentation = std::move(kp);
  return k;
}

}  // namespace knotshift
