#pragma once

// Brute-force ground truth for small instances. Everything here works on
// explicit sets of encoded state vectors and integer matrices, and shares no
// code with the submodule calculus it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotshift/alexander.hpp"
#include "knotshift/errors.hpp"
#include "knotshift/polynomial.hpp"
#include "knotshift/ring.hpp"

namespace knotshift::oracle {

inline constexpr std::uint64_t kStateCap = 1'000'000;
inline constexpr std::uint64_t kOrbitCap = 100'000;

/// Vectors of (Z/q)^dim encoded as base-q integers, first coordinate least
/// significant.
class StateCodec {
 public:
  StateCodec(std::uint64_t q, std::size_t dim, std::uint64_t cap) : q_(q), dim_(dim) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      if (n > cap / q) {
        throw CapExceeded("oracle: state space exceeds cap " + std::to_string(cap));
      }
      n *= q;
    }
    count_ = n;
  }

  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::uint64_t modulus() const { return q_; }

  [[nodiscard]] std::vector<std::uint64_t> decode(std::uint64_t code) const {
    std::vector<std::uint64_t> v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      v[i] = code % q_;
      code /= q_;
    }
    return v;
  }
  [[nodiscard]] std::uint64_t encode(const std::vector<std::uint64_t>& v) const {
    std::uint64_t code = 0;
    for (std::size_t i = dim_; i-- > 0;) code = code * q_ + v[i];
    return code;
  }

  /// Integer matrix times decoded state, reduced mod q.
  [[nodiscard]] std::uint64_t image(const IntMatrix& m, std::uint64_t code) const {
    auto v = decode(code);
    std::vector<std::uint64_t> out(m.rows);
    auto q = static_cast<__int128>(q_);
    for (std::size_t i = 0; i < m.rows; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < m.cols; ++j) acc += static_cast<__int128>(m(i, j)) * v[j];
      acc %= q;
      if (acc < 0) acc += q;
      out[i] = static_cast<std::uint64_t>(acc);
    }
    return encode(out);
  }

 private:
  std::uint64_t q_;
  std::size_t dim_;
  std::uint64_t count_ = 1;
};

struct ExplicitStateSet {
  std::uint64_t p = 0;
  int r = 0;
  std::size_t dim = 0;
  std::vector<std::uint64_t> states;  // sorted codes

  [[nodiscard]] std::uint64_t size() const { return states.size(); }
  [[nodiscard]] bool contains(std::uint64_t code) const {
    return std::binary_search(states.begin(), states.end(), code);
  }
  /// Closed under addition and negation.
  [[nodiscard]] bool is_subgroup() const {
    RingParams ring(p, r);
    StateCodec codec(ring.modulus(), dim, UINT64_MAX);
    if (!contains(0)) return false;
    for (auto a : states) {
      auto va = codec.decode(a);
      std::vector<std::uint64_t> neg(dim);
      for (std::size_t i = 0; i < dim; ++i) neg[i] = ring.neg(va[i]);
      if (!contains(codec.encode(neg))) return false;
      for (auto b : states) {
        auto vb = codec.decode(b);
        std::vector<std::uint64_t> s(dim);
        for (std::size_t i = 0; i < dim; ++i) s[i] = ring.add(va[i], vb[i]);
        if (!contains(codec.encode(s))) return false;
      }
    }
    return true;
  }
};

struct BruteForceStates {
  ExplicitStateSet V;
  ExplicitStateSet Afwd;
  ExplicitStateSet Bbwd;
};

namespace detail {

inline ExplicitStateSet to_set(const std::vector<char>& member, std::uint64_t p, int r, std::size_t dim) {
  ExplicitStateSet s{p, r, dim, {}};
  for (std::uint64_t c = 0; c < member.size(); ++c) {
    if (member[c]) s.states.push_back(c);
  }
  return s;
}

struct PairTables {
  StateCodec codec;
  std::vector<std::uint64_t> a_img;
  std::vector<std::uint64_t> b_img;
};

inline PairTables tabulate(const AlexanderPair& pair, const RingParams& ring, std::uint64_t cap) {
  PairTables t{StateCodec(ring.modulus(), pair.size(), cap), {}, {}};
  const std::uint64_t n = t.codec.count();
  t.a_img.resize(n);
  t.b_img.resize(n);
  for (std::uint64_t c = 0; c < n; ++c) {
    t.a_img[c] = t.codec.image(pair.A, c);
    t.b_img[c] = t.codec.image(pair.B, c);
  }
  return t;
}

}  // namespace detail

/// V by two-sided refinement over explicit sets; Afwd / Bbwd by reachability
/// from 0 going forward / backward.
inline BruteForceStates brute_force_states(const AlexanderPair& pair, RingParams ring,
                                           std::uint64_t cap = kStateCap) {
  auto tab = detail::tabulate(pair, ring, cap);
  const std::uint64_t n = tab.codec.count();

  std::vector<char> w(n, 1);
  for (;;) {
    std::vector<char> bw(n, 0), aw(n, 0);
    for (std::uint64_t u = 0; u < n; ++u) {
      if (!w[u]) continue;
      bw[tab.b_img[u]] = 1;
      aw[tab.a_img[u]] = 1;
    }
    std::vector<char> next(n, 0);
    for (std::uint64_t v = 0; v < n; ++v) next[v] = bw[tab.a_img[v]] && aw[tab.b_img[v]];
    if (next == w) break;
    w = std::move(next);
  }

  auto reach = [&](const std::vector<std::uint64_t>& from_img, const std::vector<std::uint64_t>& to_img) {
    std::vector<char> s(n, 0);
    s[0] = 1;
    for (;;) {
      std::vector<char> img(n, 0);
      for (std::uint64_t u = 0; u < n; ++u) {
        if (s[u]) img[from_img[u]] = 1;
      }
      std::vector<char> next(n, 0);
      for (std::uint64_t v = 0; v < n; ++v) next[v] = img[to_img[v]];
      if (next == s) return s;
      s = std::move(next);
    }
  };

  return {detail::to_set(w, ring.p(), ring.r(), pair.size()),
          detail::to_set(reach(tab.b_img, tab.a_img), ring.p(), ring.r(), pair.size()),
          detail::to_set(reach(tab.a_img, tab.b_img), ring.p(), ring.r(), pair.size())};
}

/// Cycle census of a permutation given by `next` on `states`.
template <typename Successor>
std::map<std::uint64_t, std::uint64_t> cycle_census(const std::vector<std::uint64_t>& states, Successor next) {
  if (states.size() > kOrbitCap) {
    throw CapExceeded("oracle: orbit enumeration over " + std::to_string(states.size()) +
                      " states exceeds cap " + std::to_string(kOrbitCap));
  }
  std::unordered_map<std::uint64_t, char> seen;
  seen.reserve(states.size() * 2);
  std::map<std::uint64_t, std::uint64_t> census;
  for (auto s : states) {
    if (seen.count(s)) continue;
    std::uint64_t len = 0;
    std::uint64_t cur = s;
    do {
      if (seen.count(cur)) throw InternalError("oracle: successor is not a permutation");
      seen[cur] = 1;
      cur = next(cur);
      ++len;
      if (len > states.size()) throw InternalError("oracle: successor leaves the state set");
    } while (cur != s);
    census[len] += len;
  }
  return census;
}

/// The shift on explicit V: v -> the unique w in V with B v = A w.
class ExplicitShift {
 public:
  ExplicitShift(const AlexanderPair& pair, RingParams ring, std::uint64_t cap = kStateCap)
      : ring_(ring), tab_(detail::tabulate(pair, ring, cap)) {
    V_ = brute_force_states(pair, ring, cap).V;
    for (auto w : V_.states) {
      auto [it, fresh] = by_a_image_.emplace(tab_.a_img[w], w);
      if (!fresh) throw TheoremViolation("oracle: A is not injective on V");
    }
  }

  [[nodiscard]] const ExplicitStateSet& V() const { return V_; }
  [[nodiscard]] const StateCodec& codec() const { return tab_.codec; }

  [[nodiscard]] std::uint64_t next(std::uint64_t v) const {
    auto it = by_a_image_.find(tab_.b_img[v]);
    if (it == by_a_image_.end()) throw TheoremViolation("oracle: state has no continuation in V");
    return it->second;
  }

  [[nodiscard]] std::map<std::uint64_t, std::uint64_t> orbits() const {
    return cycle_census(V_.states, [this](std::uint64_t v) { return next(v); });
  }

 private:
  RingParams ring_;
  detail::PairTables tab_;
  ExplicitStateSet V_;
  std::unordered_map<std::uint64_t, std::uint64_t> by_a_image_;
};

/// Orbit census of a pair's shift on its explicit V.
inline std::map<std::uint64_t, std::uint64_t> brute_force_orbits(const AlexanderPair& pair, RingParams ring) {
  return ExplicitShift(pair, ring).orbits();
}

/// Orbit census of v -> T v on all of (Z/p^r)^n, T given by residues
/// (row-major).
inline std::map<std::uint64_t, std::uint64_t> brute_force_orbits(const std::vector<std::uint64_t>& t_rowmajor,
                                                                  std::size_t n, RingParams ring) {
  IntMatrix m(n, n);
  for (std::size_t k = 0; k < n * n; ++k) m.data[k] = static_cast<std::int64_t>(t_rowmajor[k]);
  StateCodec codec(ring.modulus(), n, kOrbitCap);
  std::vector<std::uint64_t> states(codec.count());
  for (std::uint64_t c = 0; c < states.size(); ++c) states[c] = c;
  return cycle_census(states, [&](std::uint64_t c) { return codec.image(m, c); });
}

/// Order of the companion matrix of the mod-p core of Delta (the part between
/// the lowest and highest coefficients not divisible by p). A monomial core
/// gives 1: only the zero representation.
inline std::uint64_t companion_order_r1(const LaurentPolyZ& delta, std::uint64_t p,
                                        std::uint64_t cap = 10'000'000) {
  auto pp = static_cast<std::int64_t>(p);
  std::vector<std::uint64_t> c;
  for (auto x : delta.coeffs) c.push_back(static_cast<std::uint64_t>(((x % pp) + pp) % pp));
  std::size_t lo = 0;
  while (lo < c.size() && c[lo] == 0) ++lo;
  std::size_t hi = c.size();
  while (hi > lo && c[hi - 1] == 0) --hi;
  if (lo == hi) throw InputError("companion_order_r1: polynomial vanishes mod p");
  const std::size_t n = hi - lo - 1;
  if (n == 0) return 1;
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  // Inverse of the leading coefficient by Fermat.
  std::uint64_t inv = 1, base = c[hi - 1], e = p - 2;
  while (e) {
    if (e & 1U) inv = mulmod(inv, base);
    base = mulmod(base, base);
    e >>= 1U;
  }
  using Mat = std::vector<std::vector<std::uint64_t>>;
  Mat comp(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) comp[i + 1][i] = 1;
  for (std::size_t i = 0; i < n; ++i) comp[i][n - 1] = (p - mulmod(c[lo + i], inv)) % p;
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat out(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = (out[i][j] + mulmod(a[i][k], b[k][j])) % p;
    return out;
  };
  Mat id(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  Mat power = comp;
  std::uint64_t d = 1;
  while (power != id) {
    if (++d > cap) throw CapExceeded("companion_order_r1: cap exceeded");
    power = mul(power, comp);
  }
  return d;
}

/// Unrolls every state of the window system of `delta` (built by the caller
/// as `pair`) into its scalar sequence and checks, over `steps` consecutive
/// indices, that consecutive windows overlap and that sum_i c_i x_{j+i} = 0.
inline bool scalar_recurrence_holds(const LaurentPolyZ& delta, const AlexanderPair& pair, RingParams ring,
                                    std::uint64_t steps) {
  ExplicitShift shift(pair, ring);
  const auto& codec = shift.codec();
  const std::size_t L = pair.size();
  auto q = static_cast<__int128>(ring.modulus());
  for (auto s : shift.V().states) {
    std::vector<std::uint64_t> x;
    std::uint64_t cur = s;
    auto window = codec.decode(cur);
    x.insert(x.end(), window.begin(), window.end());
    for (std::uint64_t j = 0; j < steps; ++j) {
      std::uint64_t nxt = shift.next(cur);
      auto w2 = codec.decode(nxt);
      for (std::size_t i = 0; i + 1 < L; ++i) {
        if (w2[i] != window[i + 1]) return false;
      }
      if (L > 0) x.push_back(w2[L - 1]);
      cur = nxt;
      window = std::move(w2);
    }
    for (std::size_t j = 0; j + L < x.size(); ++j) {
      __int128 acc = 0;
      for (std::size_t i = 0; i <= L; ++i) acc += static_cast<__int128>(delta.coeffs[i]) * x[j + i];
      if (acc % q != 0) return false;
    }
  }
  return true;
}

struct CoveringCount {
  std::uint64_t fixed = 0;
  std::uint64_t surjective = 0;
};

/// Counts states with shift^d(v) = v, and among them those whose
/// representation is onto: the coordinates of the whole orbit generate Z/p^r,
/// i.e. some orbit coordinate is a unit.
inline CoveringCount brute_force_coverings(const AlexanderPair& pair, RingParams ring, std::uint64_t d) {
  ExplicitShift shift(pair, ring);
  CoveringCount out;
  for (auto s : shift.V().states) {
    std::uint64_t cur = s;
    for (std::uint64_t i = 0; i < d; ++i) cur = shift.next(cur);
    if (cur != s) continue;
    ++out.fixed;
    bool onto = false;
    cur = s;
    do {
      for (auto x : shift.codec().decode(cur)) onto = onto || (x % ring.p() != 0);
      cur = shift.next(cur);
    } while (cur != s && !onto);
    if (onto) ++out.surjective;
  }
  return out;
}

/// Closure of a generating set under addition in (Z/p^r)^dim.
inline ExplicitStateSet span_closure(const std::vector<std::vector<std::uint64_t>>& gens, RingParams ring,
                                     std::size_t dim) {
  StateCodec codec(ring.modulus(), dim, kStateCap);
  std::vector<char> in(codec.count(), 0);
  std::vector<std::uint64_t> frontier{0};
  in[0] = 1;
  while (!frontier.empty()) {
    auto c = frontier.back();
    frontier.pop_back();
    auto v = codec.decode(c);
    for (const auto& g : gens) {
      std::vector<std::uint64_t> s(dim);
      for (std::size_t i = 0; i < dim; ++i) s[i] = (v[i] + g[i] % ring.modulus()) % ring.modulus();
      auto code = codec.encode(s);
      if (!in[code]) {
        in[code] = 1;
        frontier.push_back(code);
      }
    }
  }
  return detail::to_set(in, ring.p(), ring.r(), dim);
}

}  // namespace knotshift::oracle
