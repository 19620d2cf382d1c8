#pragma once

// Orbit periods of the shift on Hom(K, Z/p^r): the order d_r of the transfer
// map, exact-period counts Q_r, the tower d_1 | d_2 | ... over r, and the
// product rule for a general finite abelian target.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "knotshift/errors.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/ring.hpp"
#include "knotshift/shift_system.hpp"
#include "knotshift/submodule.hpp"

namespace knotshift {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultOrderCap = 10'000'000;

class NotInvertible : public TheoremViolation {
 public:
  using TheoremViolation::TheoremViolation;
};

namespace detail {

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("period arithmetic overflows 64 bits");
  return out;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return checked_mul_u64(a / std::gcd(a, b), b);
}

inline BigCount big_pow(std::uint64_t p, int e) {
  BigCount out = 1;
  for (int i = 0; i < e; ++i) out *= p;
  return out;
}

}  // namespace detail

/// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t q = 2; q <= n / q; ++q) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [q, e] : factorize(n)) {
    const std::size_t prev = out.size();
    std::uint64_t pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t k = 0; k < prev; ++k) out.push_back(out[k] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Least d >= 1 with T^d = E: the order d_1 mod p by iterated powering
/// (bounded by `cap`), then the least p-power lift.
inline std::uint64_t order_of_transfer(const Matrix& T, std::uint64_t cap = kDefaultOrderCap) {
  const auto& ring = T.ring();
  const std::size_t n = T.rows();
  if (n == 0) return 1;
  RingParams field(ring.p(), 1);
  Matrix tp = T.reduced_to(field);
  Vector cp = characteristic_polynomial(tp);
  if (cp.front() == 0) throw NotInvertible("transfer map is singular mod " + std::to_string(ring.p()));

  std::uint64_t d1 = 1;
  Matrix power = tp;
  while (!power.is_identity()) {
    if (d1 >= cap) {
      throw CapExceeded("order search mod " + std::to_string(ring.p()) + " exceeded cap " +
                        std::to_string(cap));
    }
    power = power * tp;
    ++d1;
  }
  Matrix lifted = T.pow(d1);
  std::uint64_t d = d1;
  for (int e = 0; !lifted.is_identity(); ++e) {
    if (e >= ring.r()) throw InternalError("order_of_transfer: p-power lift did not terminate");
    lifted = lifted.pow(ring.p());
    d = detail::checked_mul_u64(d, ring.p());
  }
  return d;
}

/// Exact-period census of (V, T).
struct PeriodSpectrum {
  std::uint64_t p = 0;
  int r = 0;
  std::uint64_t d = 1;                        // lcm of the periods = order of T
  std::map<std::uint64_t, BigCount> counts;   // period -> number of states

  [[nodiscard]] std::vector<std::uint64_t> periods() const {
    std::vector<std::uint64_t> q;
    for (const auto& [k, v] : counts) q.push_back(k);
    return q;
  }
  [[nodiscard]] BigCount total() const {
    BigCount s = 0;
    for (const auto& [k, v] : counts) s += v;
    return s;
  }
};

/// Fix(T^q) = ker(T^q - E) for every divisor q of d, then exact counts by
/// inclusion-exclusion over the divisor lattice.
inline PeriodSpectrum period_set(const Matrix& T, std::uint64_t cap = kDefaultOrderCap) {
  const auto& ring = T.ring();
  PeriodSpectrum out;
  out.p = ring.p();
  out.r = ring.r();
  out.d = order_of_transfer(T, cap);
  const Matrix id = Matrix::identity(ring, T.rows());
  std::map<std::uint64_t, BigCount> exact;
  for (std::uint64_t q : divisors(out.d)) {
    Submodule fixed = kernel(T.pow(q) - id);
    BigCount c = detail::big_pow(ring.p(), fixed.count_exponent());
    for (const auto& [q2, c2] : exact) {
      if (q % q2 == 0) c -= c2;
    }
    exact[q] = c;
  }
  for (auto& [q, c] : exact) {
    if (c < 0) throw InternalError("period_set: negative exact-period count");
    if (c > 0) out.counts[q] = c;
  }
  return out;
}

enum class TowerPattern { Constant, GrowthFrom, StabilizedAfterGrowth, Other };

inline std::string pattern_name(TowerPattern p) {
  switch (p) {
    case TowerPattern::Constant: return "Constant";
    case TowerPattern::GrowthFrom: return "GrowthFrom";
    case TowerPattern::StabilizedAfterGrowth: return "StabilizedAfterGrowth";
    case TowerPattern::Other: return "Other";
  }
  return "Other";
}

inline TowerPattern pattern_from_name(const std::string& s) {
  if (s == "Constant") return TowerPattern::Constant;
  if (s == "GrowthFrom") return TowerPattern::GrowthFrom;
  if (s == "StabilizedAfterGrowth") return TowerPattern::StabilizedAfterGrowth;
  if (s == "Other") return TowerPattern::Other;
  throw InputError("unknown tower pattern `" + s + "`");
}

struct PeriodTower {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> d_list;  // d_1, ..., d_R
  TowerPattern pattern = TowerPattern::Constant;
  int growth_start = 0;               // s, for GrowthFrom
  std::vector<PeriodSpectrum> levels;
};

struct TowerClass {
  TowerPattern pattern = TowerPattern::Other;
  int growth_start = 0;
};

/// Every step of a valid tower is either d_{i+1} = d_i or d_{i+1} = p d_i.
/// Constant: no growth. GrowthFrom(s): equal through level s, then a factor
/// p at every later level. StabilizedAfterGrowth: an equal step after a
/// growth step (seen at p = 2). Other: the divisibility chain is broken.
inline TowerClass classify_tower(std::uint64_t p, const std::vector<std::uint64_t>& d) {
  bool grown = false;
  bool stalled_after_growth = false;
  int s = static_cast<int>(d.size());
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i + 1] == d[i]) {
      if (grown) stalled_after_growth = true;
    } else if (d[i] <= UINT64_MAX / p && d[i + 1] == d[i] * p) {
      if (!grown) s = static_cast<int>(i) + 1;
      grown = true;
    } else {
      return {TowerPattern::Other, 0};
    }
  }
  if (!grown) return {TowerPattern::Constant, 0};
  if (stalled_after_growth) return {TowerPattern::StabilizedAfterGrowth, 0};
  return {TowerPattern::GrowthFrom, s};
}

/// d_r and Q_r for r = 1..R; `transfer_at(ring)` supplies T_r.
inline PeriodTower period_tower(const std::function<Matrix(RingParams)>& transfer_at, std::uint64_t p,
                                int R, std::uint64_t cap = kDefaultOrderCap) {
  if (R < 1) throw InputError("period_tower: need at least one level");
  PeriodTower tower;
  tower.p = p;
  for (int r = 1; r <= R; ++r) {
    PeriodSpectrum spec = period_set(transfer_at(RingParams(p, r)), cap);
    tower.d_list.push_back(spec.d);
    tower.levels.push_back(std::move(spec));
  }
  auto cls = classify_tower(p, tower.d_list);
  tower.pattern = cls.pattern;
  tower.growth_start = cls.growth_start;
  return tower;
}

inline PeriodTower period_tower(const Knot& knot, std::uint64_t p, int R,
                                PairRoute route = PairRoute::Auto,
                                std::uint64_t cap = kDefaultOrderCap) {
  return period_tower([&](RingParams ring) { return build_shift_system(knot, ring, route).T(); }, p,
                      R, cap);
}

/// Sigma = ⊕ Z/p_i^r_i, canonically ordered.
struct AbelianGroupSpec {
  std::vector<std::pair<std::uint64_t, int>> factors;

  bool operator==(const AbelianGroupSpec&) const = default;

  [[nodiscard]] bool has_repeated_prime() const {
    for (std::size_t i = 1; i < factors.size(); ++i) {
      if (factors[i].first == factors[i - 1].first) return true;
    }
    return false;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (const auto& [p, r] : factors) {
      if (!s.empty()) s += " + ";
      s += "Z/" + std::to_string(p);
      if (r > 1) s += "^" + std::to_string(r);
    }
    return s;
  }
};

inline AbelianGroupSpec make_group(std::vector<std::pair<std::uint64_t, int>> factors) {
  if (factors.empty()) throw InputError("abelian group needs at least one factor");
  for (const auto& [p, r] : factors) RingParams check(p, r);
  std::sort(factors.begin(), factors.end());
  return AbelianGroupSpec{std::move(factors)};
}

/// Comma-separated orders, each split into prime powers: "4,3" is Z/4 ⊕ Z/3,
/// "12" is Z/4 ⊕ Z/3 as well, "2,2" is Z/2 ⊕ Z/2.
inline AbelianGroupSpec parse_sigma(const std::string& text) {
  std::vector<std::pair<std::uint64_t, int>> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("sigma: `" + item + "` is not a positive integer");
    }
    std::uint64_t n = 0;
    try {
      n = std::stoull(item);
    } catch (const std::exception&) {
      throw InputError("sigma: `" + item + "` is out of range");
    }
    if (n < 2) throw InputError("sigma: cyclic factor orders must be >= 2");
    for (auto [q, e] : factorize(n)) factors.emplace_back(q, e);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return make_group(std::move(factors));
}

struct CombinedSpectrum {
  std::uint64_t d = 1;
  std::map<std::uint64_t, BigCount> counts;

  [[nodiscard]] std::vector<std::uint64_t> periods() const {
    std::vector<std::uint64_t> q;
    for (const auto& [k, v] : counts) q.push_back(k);
    return q;
  }
};

/// The product system: d = lcm d_i; a tuple of states with exact periods q_i
/// has exact period lcm(q_i), so counts multiply over matching tuples.
inline CombinedSpectrum combine_abelian(const AbelianGroupSpec& sigma,
                                        const std::vector<PeriodSpectrum>& parts) {
  if (parts.size() != sigma.factors.size()) {
    throw InputError("combine_abelian: " + std::to_string(parts.size()) + " spectra for " +
                     std::to_string(sigma.factors.size()) + " factors");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].p != sigma.factors[i].first || parts[i].r != sigma.factors[i].second) {
      throw InputError("combine_abelian: spectrum " + std::to_string(i) + " does not match factor " +
                       std::to_string(sigma.factors[i].first) + "^" +
                       std::to_string(sigma.factors[i].second));
    }
  }
  CombinedSpectrum out;
  out.counts[1] = 1;
  for (const auto& part : parts) {
    out.d = detail::lcm_u64(out.d, part.d);
    std::map<std::uint64_t, BigCount> next;
    for (const auto& [q1, c1] : out.counts) {
      for (const auto& [q2, c2] : part.counts) next[detail::lcm_u64(q1, q2)] += c1 * c2;
    }
    out.counts = std::move(next);
  }
  return out;
}

}  // namespace knotshift
