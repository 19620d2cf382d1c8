#pragma once

// Integer polynomials in t (dense, lowest degree first) and Laurent
// polynomials up to the unit ambiguity +-t^k.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "knotshift/errors.hpp"

namespace knotshift {

using PolyZ = std::vector<std::int64_t>;

namespace poly {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InternalError("polynomial coefficient overflow");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InternalError("polynomial coefficient overflow");
  return out;
}

inline void trim(PolyZ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool is_zero(const PolyZ& a) {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

inline PolyZ mul(const PolyZ& a, const PolyZ& b) {
  if (a.empty() || b.empty()) return {};
  PolyZ out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
    }
  }
  trim(out);
  return out;
}

inline PolyZ sub(const PolyZ& a, const PolyZ& b) {
  PolyZ out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = checked_add(out[i], -b[i]);
  trim(out);
  return out;
}

inline PolyZ negate(PolyZ a) {
  for (auto& c : a) c = -c;
  return a;
}

/// a / b where the division is known to be exact over Z.
inline PolyZ exact_div(PolyZ a, PolyZ b) {
  trim(a);
  trim(b);
  if (b.empty()) throw InternalError("polynomial division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw InternalError("inexact polynomial division");
  PolyZ q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::int64_t lead = a[k + b.size() - 1];
    if (lead % b.back() != 0) throw InternalError("inexact polynomial division");
    std::int64_t c = lead / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[k + j] = checked_add(a[k + j], -checked_mul(c, b[j]));
    }
  }
  if (!is_zero(a)) throw InternalError("inexact polynomial division");
  trim(q);
  return q;
}

}  // namespace poly

/// c_0 + c_1 t + ... + c_n t^n multiplied by t^low.
struct LaurentPolyZ {
  int low = 0;
  PolyZ coeffs;

  bool operator==(const LaurentPolyZ&) const = default;

  [[nodiscard]] int span_degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }

  [[nodiscard]] std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto c : coeffs) s = poly::checked_add(s, c);
    return s;
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t c = coeffs[i];
      if (c == 0) continue;
      int e = low + static_cast<int>(i);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << '-';
      std::int64_t a = c < 0 ? -c : c;
      if (a != 1 || e == 0) os << a;
      if (e != 0) os << 't';
      if (e != 0 && e != 1) os << '^' << e;
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }
};

/// Strips t-powers and fixes the sign so that c_0 > 0. Zero stays zero.
inline LaurentPolyZ normalized(LaurentPolyZ f) {
  poly::trim(f.coeffs);
  std::size_t lead = 0;
  while (lead < f.coeffs.size() && f.coeffs[lead] == 0) ++lead;
  f.coeffs.erase(f.coeffs.begin(), f.coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  f.low = 0;
  if (!f.coeffs.empty() && f.coeffs.front() < 0) f.coeffs = poly::negate(std::move(f.coeffs));
  return f;
}

inline LaurentPolyZ make_delta(PolyZ coeffs) { return normalized(LaurentPolyZ{0, std::move(coeffs)}); }

/// Alexander-polynomial sanity: Delta(1) = +-1 and c_i = eps * c_{n-i}.
inline bool is_knot_polynomial(const LaurentPolyZ& f) {
  if (f.coeffs.empty()) return false;
  std::int64_t one = f.at_one();
  if (one != 1 && one != -1) return false;
  const auto& c = f.coeffs;
  std::size_t n = c.size() - 1;
  int sign = (c.front() == c.back()) ? 1 : (c.front() == -c.back() ? -1 : 0);
  if (sign == 0) return false;
  for (std::size_t i = 0; i <= n; ++i) {
    if (c[i] != sign * c[n - i]) return false;
  }
  return true;
}

/// n = deg - val of the reduction mod p; 0 when the reduction is a monomial.
inline int degree_mod_p(const LaurentPolyZ& delta, std::uint64_t p) {
  int lo = -1;
  int hi = -1;
  auto pp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < delta.coeffs.size(); ++i) {
    if (delta.coeffs[i] % pp != 0) {
      if (lo < 0) lo = static_cast<int>(i);
      hi = static_cast<int>(i);
    }
  }
  if (lo < 0) throw InputError("degree_mod_p: polynomial vanishes mod " + std::to_string(p));
  return hi - lo;
}

}  // namespace knotshift
