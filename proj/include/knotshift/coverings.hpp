#pragma once

// Surjective representations fixed by the d-th power of the shift; these are
// in bijection with regular Sigma-coverings of the d-fold cyclic cover.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotshift/errors.hpp"
#include "knotshift/knot.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/shift_system.hpp"
#include "knotshift/spectra.hpp"
#include "knotshift/submodule.hpp"

namespace knotshift {

inline constexpr std::uint64_t kRepresentativeCap = 10'000;

class RepeatedPrime : public InputError {
 public:
  using InputError::InputError;
};

/// ker(T^d - E), in V-coordinates.
inline Submodule fixed_subgroup(const Matrix& T, std::int64_t d) {
  if (d < 1) throw InputError("fixed_subgroup: degree d must be >= 1");
  return kernel(T.pow(static_cast<std::uint64_t>(d)) - Matrix::identity(T.ring(), T.rows()));
}

/// States v in F with v != 0 mod p. Because V is a direct summand and T is
/// invertible, these are exactly the v whose representation is onto Z/p^r.
inline BigCount count_surjective(const Submodule& F) {
  const auto& ring = F.ring();
  Submodule non_onto = intersect(F, scaled_full_module(ring, F.ambient_dim(), 1));
  return detail::big_pow(ring.p(), F.count_exponent()) -
         detail::big_pow(ring.p(), non_onto.count_exponent());
}

struct FactorCoverings {
  std::uint64_t p = 0;
  int r = 0;
  int fixed_exponent = 0;   // |F| = p^fixed_exponent
  BigCount surjective = 0;
  std::vector<Vector> representatives;  // surjective fixed states, V-coordinates

  bool operator==(const FactorCoverings&) const = default;
};

struct CoveringReport {
  std::string knot;
  AbelianGroupSpec sigma;
  std::int64_t d = 1;
  BigCount total_fixed = 1;
  BigCount surjective_count = 1;
  bool representatives_listed = false;
  std::vector<FactorCoverings> factors;

  bool operator==(const CoveringReport&) const = default;
};

inline CoveringReport classify_coverings(const Knot& knot, const AbelianGroupSpec& sigma, std::int64_t d,
                                         PairRoute route = PairRoute::Auto) {
  if (d < 1) throw InputError("coverings: degree d must be >= 1");
  if (sigma.factors.empty()) throw InputError("coverings: empty group");
  if (sigma.has_repeated_prime()) {
    throw RepeatedPrime("coverings: " + sigma.str() +
                        " repeats a prime; only pairwise distinct primes are supported");
  }
  CoveringReport rep;
  rep.knot = knot.name;
  rep.sigma = sigma;
  rep.d = d;
  std::vector<Submodule> fixed;
  for (const auto& [p, r] : sigma.factors) {
    RingParams ring(p, r);
    ShiftSystem sys = build_shift_system(knot, ring, route);
    Submodule F = fixed_subgroup(sys.T(), d);
    FactorCoverings fc;
    fc.p = p;
    fc.r = r;
    fc.fixed_exponent = F.count_exponent();
    fc.surjective = count_surjective(F);
    rep.total_fixed *= detail::big_pow(p, fc.fixed_exponent);
    rep.surjective_count *= fc.surjective;
    rep.factors.push_back(std::move(fc));
    fixed.push_back(std::move(F));
  }
  if (rep.total_fixed <= kRepresentativeCap) {
    rep.representatives_listed = true;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      const auto& ring = fixed[i].ring();
      for (auto& v : enumerate_elements(fixed[i])) {
        bool onto = false;
        for (auto x : v) onto = onto || ring.is_unit(x);
        if (onto) rep.factors[i].representatives.push_back(std::move(v));
      }
      std::sort(rep.factors[i].representatives.begin(), rep.factors[i].representatives.end());
    }
  }
  return rep;
}

}  // namespace knotshift
