#pragma once

// Arithmetic in the local rings Z/p^r with canonical residues in [0, p^r).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotshift/errors.hpp"

namespace knotshift {

using Residue = std::uint64_t;
using Vector = std::vector<Residue>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : small) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The coefficient ring Z/p^r. Construction validates primality of p and the
/// word budget p^r < 2^63.
class RingParams {
 public:
  RingParams(std::uint64_t p, int r) : p_(p), r_(r) {
    if (!is_prime(p)) throw InputError("ring: p = " + std::to_string(p) + " is not prime");
    if (r < 1) throw InputError("ring: exponent r must be >= 1");
    constexpr std::uint64_t budget = std::uint64_t{1} << 63U;
    std::uint64_t m = 1;
    for (int i = 0; i < r; ++i) {
      if (m > (budget - 1) / p) {
        throw InputError("ring: " + std::to_string(p) + "^" + std::to_string(r) +
                         " exceeds the 2^63 word budget");
      }
      m *= p;
    }
    modulus_ = m;
  }

  [[nodiscard]] std::uint64_t p() const { return p_; }
  [[nodiscard]] int r() const { return r_; }
  [[nodiscard]] std::uint64_t modulus() const { return modulus_; }

  bool operator==(const RingParams&) const = default;

  [[nodiscard]] Residue reduce(std::int64_t x) const {
    auto m = static_cast<std::int64_t>(modulus_);
    std::int64_t v = x % m;
    if (v < 0) v += m;
    return static_cast<Residue>(v);
  }
  [[nodiscard]] Residue reduce_u(std::uint64_t x) const { return x % modulus_; }

  [[nodiscard]] Residue add(Residue a, Residue b) const {
    Residue s = a + b;  // a, b < 2^63 so no wrap
    return s >= modulus_ ? s - modulus_ : s;
  }
  [[nodiscard]] Residue sub(Residue a, Residue b) const {
    return a >= b ? a - b : a + (modulus_ - b);
  }
  [[nodiscard]] Residue neg(Residue a) const { return a == 0 ? 0 : modulus_ - a; }
  [[nodiscard]] Residue mul(Residue a, Residue b) const {
    return detail::mulmod_u64(a, b, modulus_);
  }

  /// p^e for 0 <= e <= r (p^r maps to 0).
  [[nodiscard]] Residue p_pow(int e) const {
    if (e >= r_) return 0;
    Residue v = 1;
    for (int i = 0; i < e; ++i) v *= p_;
    return v;
  }

  /// p-adic valuation; the zero residue has valuation r.
  [[nodiscard]] int valuation(Residue a) const {
    if (a == 0) return r_;
    int e = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++e;
    }
    return e;
  }

  [[nodiscard]] bool is_unit(Residue a) const { return a % p_ != 0; }

  /// Inverse of a unit.
  [[nodiscard]] Residue inverse(Residue a) const {
    if (!is_unit(a)) throw InternalError("ring: inverse of a non-unit");
    __int128 t0 = 0, t1 = 1;
    __int128 r0 = modulus_, r1 = a;
    while (r1 != 0) {
      __int128 q = r0 / r1;
      __int128 tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    __int128 m = modulus_;
    t0 %= m;
    if (t0 < 0) t0 += m;
    return static_cast<Residue>(t0);
  }

  /// Splits a nonzero a as u * p^e with u a unit; returns {e, u^{-1}}.
  [[nodiscard]] std::pair<int, Residue> normalizer(Residue a) const {
    int e = valuation(a);
    Residue u = a;
    for (int i = 0; i < e; ++i) u /= p_;
    return {e, inverse(u % modulus_)};
  }

  [[nodiscard]] std::string label() const {
    return "Z/" + std::to_string(p_) + "^" + std::to_string(r_);
  }

 private:
  std::uint64_t p_;
  int r_;
  std::uint64_t modulus_ = 1;
};

}  // namespace knotshift
