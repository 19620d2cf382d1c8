#pragma once

// The dynamical system of a matrix pair over Z/p^r: the sequences with
// B y_j = A y_{j+1}. States with bi-infinite continuations form V; states
// whose continuation dies out to the left (resp. right) form Afwd (resp.
// Bbwd); and the shift acts on V through T = (A|V)^-1 (B|V).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "knotshift/alexander.hpp"
#include "knotshift/errors.hpp"
#include "knotshift/knot.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/polynomial.hpp"
#include "knotshift/ring.hpp"
#include "knotshift/submodule.hpp"

namespace knotshift {

struct RingPair {
  Matrix A;
  Matrix B;
};

inline RingPair reduce_mod(const AlexanderPair& pair, RingParams ring) {
  if (pair.A.rows != pair.A.cols || pair.B.rows != pair.A.rows || pair.B.cols != pair.A.cols) {
    throw InputError("matrix pair must be square and of equal size");
  }
  return {Matrix::from_int(pair.A, ring), Matrix::from_int(pair.B, ring)};
}

namespace detail {

inline std::size_t refinement_cap(const RingParams& ring, std::size_t size) {
  return 4 * static_cast<std::size_t>(ring.r()) * size + 4;
}

/// Iterates step() from `start` until the count exponent stops changing.
template <typename Step>
Submodule stationary_limit(Submodule current, Step step, std::size_t cap, const char* what) {
  for (std::size_t it = 0; it < cap; ++it) {
    Submodule next = step(current);
    if (next.count_exponent() == current.count_exponent()) return next;
    current = std::move(next);
  }
  throw InternalError(std::string(what) + ": refinement did not stabilize within " +
                      std::to_string(cap) + " iterations");
}

}  // namespace detail

/// Greatest W with W ⊆ A^-1(B W) ∩ B^-1(A W).
inline Submodule compute_V(const RingPair& pr) {
  const auto& ring = pr.A.ring();
  const std::size_t m = pr.A.rows();
  auto step = [&](const Submodule& w) {
    return intersect(preimage(pr.A, apply(pr.B, w)), preimage(pr.B, apply(pr.A, w)));
  };
  return detail::stationary_limit(full_module(ring, m), step, detail::refinement_cap(ring, m),
                                  "compute_V");
}

/// States reachable from 0 by forward steps: S_{k+1} = A^-1(B S_k).
inline Submodule compute_forward_null(const RingPair& pr) {
  const auto& ring = pr.A.ring();
  const std::size_t m = pr.A.rows();
  auto step = [&](const Submodule& s) { return preimage(pr.A, apply(pr.B, s)); };
  return detail::stationary_limit(Submodule(ring, m), step, detail::refinement_cap(ring, m),
                                  "compute_forward_null");
}

/// Mirror image of compute_forward_null: S_{k+1} = B^-1(A S_k).
inline Submodule compute_backward_null(const RingPair& pr) {
  const auto& ring = pr.A.ring();
  const std::size_t m = pr.A.rows();
  auto step = [&](const Submodule& s) { return preimage(pr.B, apply(pr.A, s)); };
  return detail::stationary_limit(Submodule(ring, m), step, detail::refinement_cap(ring, m),
                                  "compute_backward_null");
}

inline Submodule compute_V(const AlexanderPair& pair, RingParams ring) {
  return compute_V(reduce_mod(pair, ring));
}
inline Submodule compute_forward_null(const AlexanderPair& pair, RingParams ring) {
  return compute_forward_null(reduce_mod(pair, ring));
}
inline Submodule compute_backward_null(const AlexanderPair& pair, RingParams ring) {
  return compute_backward_null(reduce_mod(pair, ring));
}

struct Decomposition {
  Submodule V;
  Submodule Afwd;
  Submodule Bbwd;
};

/// Computes V, Afwd, Bbwd and checks that they split the ambient module as a
/// direct sum. Requires ker A ∩ ker B = 0.
inline Decomposition verify_decomposition(const AlexanderPair& pair, RingParams ring) {
  RingPair pr = reduce_mod(pair, ring);
  const std::size_t m = pr.A.rows();
  Submodule common = intersect(kernel(pr.A), kernel(pr.B));
  if (!common.is_zero()) {
    throw HypothesisViolated("ker A ∩ ker B has order " + std::to_string(ring.p()) + "^" +
                             std::to_string(common.count_exponent()) + " over " + ring.label() +
                             "; the pair must be reduced");
  }
  Decomposition d{compute_V(pr), compute_forward_null(pr), compute_backward_null(pr)};
  auto fail = [&](const std::string& msg) {
    throw TheoremViolation("direct-sum decomposition fails over " + ring.label() + ": " + msg);
  };
  if (!intersect(d.V, d.Afwd).is_zero()) fail("V ∩ Afwd != 0");
  if (!intersect(d.V, d.Bbwd).is_zero()) fail("V ∩ Bbwd != 0");
  if (!intersect(d.Afwd, d.Bbwd).is_zero()) fail("Afwd ∩ Bbwd != 0");
  Submodule total = sum(sum(d.V, d.Afwd), d.Bbwd);
  if (!(total == full_module(ring, m))) fail("V + Afwd + Bbwd is not the ambient module");
  const int product = d.V.count_exponent() + d.Afwd.count_exponent() + d.Bbwd.count_exponent();
  if (product != ring.r() * static_cast<int>(m)) fail("|V|·|Afwd|·|Bbwd| != p^(r·size)");
  return d;
}

/// Characteristic polynomial det(tI - M), coefficients lowest degree first,
/// by Berkowitz's division-free recurrence.
inline Vector characteristic_polynomial(const Matrix& mat) {
  const auto& ring = mat.ring();
  const std::size_t n = mat.rows();
  Vector hi_first{1 % ring.modulus()};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading (r+1)x(r+1) block split as [[Ar, S], [R, a]].
    Vector c(r + 2, 0);
    c[0] = 1 % ring.modulus();
    c[1] = ring.neg(mat(r, r));
    Vector power_s(r);  // A^k S, starting with k = 0
    for (std::size_t i = 0; i < r; ++i) power_s[i] = mat(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      Residue dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot = ring.add(dot, ring.mul(mat(r, i), power_s[i]));
      c[k] = ring.neg(dot);
      Vector next(r, 0);
      for (std::size_t i = 0; i < r; ++i) {
        Residue acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc = ring.add(acc, ring.mul(mat(i, j), power_s[j]));
        next[i] = acc;
      }
      power_s = std::move(next);
    }
    Vector updated(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        updated[i] = ring.add(updated[i], ring.mul(c[i - j], hi_first[j]));
      }
    }
    hi_first = std::move(updated);
  }
  return Vector(hi_first.rbegin(), hi_first.rend());
}

/// The shift on V in the coordinates of a free basis of V.
struct TransferMap {
  Matrix T;                  // rank x rank, acts on coordinate columns
  std::vector<Vector> basis;  // ambient vectors; columns of the coordinate map
  Vector charpoly_mod_p;     // det(tI - T) reduced mod p, lowest degree first

  [[nodiscard]] std::size_t rank() const { return basis.size(); }
};

/// T with A G T = B G for G the basis matrix of V.
inline TransferMap transfer_map(const RingPair& pr, const Submodule& V) {
  const auto& ring = pr.A.ring();
  std::vector<Vector> basis = free_basis(V);  // throws NonFreeModule
  const std::size_t t = basis.size();
  Matrix g = Matrix::from_columns(ring, pr.A.rows(), basis);
  Matrix ag = pr.A * g;
  if (!kernel(ag).is_zero()) {
    throw SingularRestriction("A restricted to V is not injective over " + ring.label());
  }
  Matrix bg = pr.B * g;
  Matrix T(ring, t, t);
  for (std::size_t i = 0; i < t; ++i) {
    auto coords = solve(ag, bg.column(i));
    if (!coords) {
      throw TheoremViolation("B V is not contained in A V over " + ring.label());
    }
    for (std::size_t k = 0; k < t; ++k) T(k, i) = (*coords)[k];
  }
  RingParams field(ring.p(), 1);
  Vector cp = characteristic_polynomial(T.reduced_to(field));
  return TransferMap{std::move(T), std::move(basis), std::move(cp)};
}

inline TransferMap transfer_map(const AlexanderPair& pair, RingParams ring, const Submodule& V) {
  return transfer_map(reduce_mod(pair, ring), V);
}

/// Companion-style pair for the scalar recurrence of a two-bridge knot:
/// window states (x_j, ..., x_{j+L-1}) with L = deg Delta; rows 1..L-1 shift
/// the window and row L imposes sum_i c_i x_{j+i} = 0.
inline AlexanderPair two_bridge_window_pair(const LaurentPolyZ& delta, std::uint64_t p) {
  LaurentPolyZ d = normalized(delta);
  (void)degree_mod_p(d, p);  // rejects a polynomial vanishing mod p
  const std::size_t L = d.coeffs.empty() ? 0 : d.coeffs.size() - 1;
  AlexanderPair pair{IntMatrix(L, L), IntMatrix(L, L), PairKind::Windowed};
  if (L == 0) return pair;
  for (std::size_t i = 0; i + 1 < L; ++i) {
    pair.B(i, i + 1) = 1;
    pair.A(i, i) = 1;
  }
  for (std::size_t j = 0; j < L; ++j) pair.B(L - 1, j) = d.coeffs[j];
  pair.A(L - 1, L - 1) = -d.coeffs[L];
  return pair;
}

/// Number k of p-divisible coefficients on each side of the unit core.
inline std::size_t two_bridge_tail_length(const LaurentPolyZ& delta, std::uint64_t p) {
  LaurentPolyZ d = normalized(delta);
  auto pp = static_cast<std::int64_t>(p);
  std::size_t k = 0;
  while (k < d.coeffs.size() && d.coeffs[k] % pp == 0) ++k;
  return k;
}

enum class PairRoute { Auto, Wirtinger, Windowed };

/// The pair fed to the dynamics: the reduced Wirtinger pair when a
/// presentation exists (Auto), else the two-bridge window pair.
inline AlexanderPair knot_pair(const Knot& knot, std::uint64_t p, PairRoute route = PairRoute::Auto) {
  if (route == PairRoute::Windowed || (route == PairRoute::Auto && !knot.presentation)) {
    return two_bridge_window_pair(knot.delta, p);
  }
  if (!knot.presentation) {
    throw InputError("knot `" + knot.name + "` has no stored Wirtinger presentation");
  }
  return reduce_pair(fox_pair(*knot.presentation));
}

struct ShiftSystem {
  AlexanderPair pair;
  RingParams ring;
  Submodule V;
  TransferMap transfer;

  [[nodiscard]] std::size_t n() const { return transfer.rank(); }
  [[nodiscard]] const Matrix& T() const { return transfer.T; }
};

inline ShiftSystem build_shift_system(AlexanderPair pair, RingParams ring) {
  RingPair pr = reduce_mod(pair, ring);
  Submodule V = compute_V(pr);
  TransferMap tm = transfer_map(pr, V);
  return ShiftSystem{std::move(pair), ring, std::move(V), std::move(tm)};
}

inline ShiftSystem build_shift_system(const Knot& knot, RingParams ring,
                                      PairRoute route = PairRoute::Auto) {
  return build_shift_system(knot_pair(knot, ring.p(), route), ring);
}

}  // namespace knotshift
