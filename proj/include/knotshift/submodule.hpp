#pragma once

// Submodules of (Z/p^r)^m in reduced Howell normal form, and the calculus on
// them: kernel, image, preimage, intersection, sum, cardinality, membership.
//
// Howell form here: rows in echelon order by leading (leftmost nonzero)
// column, each pivot normalized to p^e, entries above a pivot p^e reduced into
// [0, p^e), and every annihilator multiple p^(r-e) * row lying in the span of
// the rows below it. The last condition makes the form unique per submodule
// and lets membership be decided by top-down reduction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "knotshift/errors.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/ring.hpp"

namespace knotshift {

class Submodule {
 public:
  /// Zero submodule of (Z/p^r)^dim.
  Submodule(RingParams ring, std::size_t dim) : ring_(ring), dim_(dim) {}

  [[nodiscard]] const RingParams& ring() const { return ring_; }
  [[nodiscard]] std::size_t ambient_dim() const { return dim_; }
  [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  [[nodiscard]] const std::vector<int>& pivot_valuations() const { return valuations_; }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }

  /// log_p of the number of elements.
  [[nodiscard]] int count_exponent() const {
    int k = 0;
    for (int e : valuations_) k += ring_.r() - e;
    return k;
  }

  bool operator==(const Submodule& o) const {
    return ring_ == o.ring_ && dim_ == o.dim_ && basis_ == o.basis_;
  }

  friend Submodule howell_form(std::span<const Vector> rows, RingParams ring, std::size_t dim);

 private:
  RingParams ring_;
  std::size_t dim_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<int> valuations_;
};

namespace detail {

inline std::size_t leading_index(const Vector& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) return j;
  }
  return v.size();
}

inline void axpy(const RingParams& ring, Vector& y, Residue a, const Vector& x) {
  if (a == 0) return;
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = ring.sub(y[j], ring.mul(a, x[j]));
}

inline Vector scaled(const RingParams& ring, const Vector& v, Residue a) {
  Vector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = ring.mul(v[j], a);
  return out;
}

inline bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

}  // namespace detail

inline Submodule howell_form(std::span<const Vector> rows, RingParams ring, std::size_t dim) {
  std::vector<Vector> pending;
  pending.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != dim) {
      throw InputError("howell_form: vector of length " + std::to_string(row.size()) +
                       " in ambient dimension " + std::to_string(dim));
    }
    Vector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = ring.reduce_u(row[j]);
    pending.push_back(std::move(v));
  }

  // slot[j] holds the row with leading index j, pivot normalized to p^e.
  std::vector<std::optional<Vector>> slot(dim);
  const int r = ring.r();

  while (!pending.empty()) {
    Vector v = std::move(pending.back());
    pending.pop_back();
    for (;;) {
      std::size_t j = detail::leading_index(v);
      if (j == dim) break;
      auto [e, unit_inv] = ring.normalizer(v[j]);
      v = detail::scaled(ring, v, unit_inv);
      if (!slot[j]) {
        if (e > 0) pending.push_back(detail::scaled(ring, v, ring.p_pow(r - e)));
        slot[j] = std::move(v);
        break;
      }
      const Vector& b = *slot[j];
      int f = ring.valuation(b[j]);
      if (f <= e) {
        detail::axpy(ring, v, ring.p_pow(e - f), b);
        continue;
      }
      // v has the smaller valuation: it takes the slot, the old row is reduced by it.
      Vector old = std::move(*slot[j]);
      if (e > 0) pending.push_back(detail::scaled(ring, v, ring.p_pow(r - e)));
      detail::axpy(ring, old, ring.p_pow(f - e), v);
      slot[j] = v;
      v = std::move(old);
    }
  }

  Submodule out(ring, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (!slot[j]) continue;
    out.basis_.push_back(std::move(*slot[j]));
    out.pivots_.push_back(j);
    out.valuations_.push_back(ring.valuation(out.basis_.back()[j]));
  }
  // Reduce entries above each pivot into [0, p^e).
  for (std::size_t i = 0; i < out.basis_.size(); ++i) {
    std::size_t j = out.pivots_[i];
    Residue piv = out.basis_[i][j];
    for (std::size_t k = 0; k < i; ++k) {
      Residue q = out.basis_[k][j] / piv;
      detail::axpy(ring, out.basis_[k], q, out.basis_[i]);
    }
  }
  return out;
}

inline Submodule howell_form(const std::vector<Vector>& rows, RingParams ring, std::size_t dim) {
  return howell_form(std::span<const Vector>(rows), ring, dim);
}

inline Submodule full_module(RingParams ring, std::size_t dim) {
  std::vector<Vector> rows(dim, Vector(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return howell_form(rows, ring, dim);
}

/// p^e * (Z/p^r)^dim.
inline Submodule scaled_full_module(RingParams ring, std::size_t dim, int e) {
  std::vector<Vector> rows(dim, Vector(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = ring.p_pow(e);
  return howell_form(rows, ring, dim);
}

inline bool membership(const Submodule& s, const Vector& v) {
  const auto& ring = s.ring();
  if (v.size() != s.ambient_dim()) throw InputError("membership: dimension mismatch");
  Vector w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = ring.reduce_u(v[j]);
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    std::size_t j = s.pivot_columns()[i];
    Residue piv = s.basis()[i][j];
    if (w[j] % piv != 0) return false;
    detail::axpy(ring, w, w[j] / piv, s.basis()[i]);
  }
  return detail::is_zero_vector(w);
}

/// Matrix with the basis rows of `s` as its columns: coordinates -> ambient.
inline Matrix generator_matrix(const Submodule& s) {
  return Matrix::from_columns(s.ring(), s.ambient_dim(), s.basis());
}

inline Submodule kernel(const Matrix& m) {
  const auto& ring = m.ring();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Rows (M e_c | e_c); the Howell rows whose leading index lies in the
  // identity block carry exactly the kernel.
  std::vector<Vector> aug(cols, Vector(rows + cols, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < rows; ++i) aug[c][i] = m(i, c);
    aug[c][rows + c] = 1;
  }
  Submodule h = howell_form(aug, ring, rows + cols);
  std::vector<Vector> ker;
  for (std::size_t i = 0; i < h.basis().size(); ++i) {
    if (h.pivot_columns()[i] < rows) continue;
    ker.emplace_back(h.basis()[i].begin() + static_cast<std::ptrdiff_t>(rows), h.basis()[i].end());
  }
  return howell_form(ker, ring, cols);
}

inline void require_compatible(const Submodule& a, const Submodule& b, const char* what) {
  if (!(a.ring() == b.ring()) || a.ambient_dim() != b.ambient_dim()) {
    throw InputError(std::string(what) + ": ring or dimension mismatch");
  }
}

/// Image {Mv : v in S}.
inline Submodule apply(const Matrix& m, const Submodule& s) {
  if (m.cols() != s.ambient_dim()) throw InputError("apply: dimension mismatch");
  std::vector<Vector> img;
  img.reserve(s.basis().size());
  for (const auto& b : s.basis()) img.push_back(m * b);
  return howell_form(img, m.ring(), m.rows());
}

/// Preimage {v : Mv in S}.
inline Submodule preimage(const Matrix& m, const Submodule& s) {
  if (m.rows() != s.ambient_dim()) throw InputError("preimage: dimension mismatch");
  const auto& ring = m.ring();
  const std::size_t k = s.basis().size();
  // Kernel of (v, c) -> Mv - sum c_i s_i, projected onto v.
  Matrix joint(ring, m.rows(), m.cols() + k);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) joint(i, j) = m(i, j);
    for (std::size_t c = 0; c < k; ++c) joint(i, m.cols() + c) = ring.neg(s.basis()[c][i]);
  }
  Submodule ker = kernel(joint);
  std::vector<Vector> proj;
  proj.reserve(ker.basis().size());
  for (const auto& b : ker.basis()) {
    proj.emplace_back(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m.cols()));
  }
  return howell_form(proj, ring, m.cols());
}

inline Submodule intersect(const Submodule& a, const Submodule& b) {
  require_compatible(a, b, "intersect");
  if (a.is_zero() || b.is_zero()) return Submodule(a.ring(), a.ambient_dim());
  Matrix g = generator_matrix(a);
  return apply(g, preimage(g, b));
}

inline Submodule sum(const Submodule& a, const Submodule& b) {
  require_compatible(a, b, "sum");
  std::vector<Vector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return howell_form(rows, a.ring(), a.ambient_dim());
}

inline bool is_subset(const Submodule& a, const Submodule& b) {
  require_compatible(a, b, "is_subset");
  return std::all_of(a.basis().begin(), a.basis().end(),
                     [&](const Vector& v) { return membership(b, v); });
}

struct CardinalityRank {
  int count_exponent = 0;               // |S| = p^count_exponent
  std::optional<std::size_t> free_rank;  // present iff S is free
};

/// S is free iff |S| = p^(r*t) where p^t = |S[p]| = |S ∩ p^(r-1) X| counts
/// its cyclic summands.
inline CardinalityRank cardinality_and_rank(const Submodule& s) {
  CardinalityRank out;
  out.count_exponent = s.count_exponent();
  if (s.is_zero()) {
    out.free_rank = 0;
    return out;
  }
  const int r = s.ring().r();
  Submodule socle = intersect(s, scaled_full_module(s.ring(), s.ambient_dim(), r - 1));
  const int t = socle.count_exponent();
  if (out.count_exponent == r * t) out.free_rank = static_cast<std::size_t>(t);
  return out;
}

/// Multiplication by a scalar.
inline Submodule scale(const Submodule& s, Residue c) {
  std::vector<Vector> rows;
  rows.reserve(s.basis().size());
  for (const auto& b : s.basis()) rows.push_back(detail::scaled(s.ring(), b, c));
  return howell_form(rows, s.ring(), s.ambient_dim());
}

/// Reduction mod p^s of every element (the projection onto (Z/p^s)^m).
inline Submodule project(const Submodule& s, RingParams target) {
  if (target.p() != s.ring().p() || target.r() > s.ring().r()) {
    throw InputError("project: target ring must be Z/p^s with s <= r");
  }
  return howell_form(s.basis(), target, s.ambient_dim());
}

/// A basis of a free submodule: Howell rows that are independent modulo pS
/// (Nakayama), which then form a free basis. Throws NonFreeModule otherwise.
inline std::vector<Vector> free_basis(const Submodule& s) {
  auto cr = cardinality_and_rank(s);
  if (!cr.free_rank) {
    throw NonFreeModule("submodule of order p^" + std::to_string(cr.count_exponent) +
                        " is not free over " + s.ring().label());
  }
  Submodule ps = scale(s, s.ring().p() % s.ring().modulus());
  std::vector<Vector> chosen;
  Submodule span = ps;
  for (const auto& b : s.basis()) {
    if (membership(span, b)) continue;
    chosen.push_back(b);
    span = sum(span, howell_form(std::vector<Vector>{b}, s.ring(), s.ambient_dim()));
  }
  if (chosen.size() != *cr.free_rank) {
    throw InternalError("free_basis: selected " + std::to_string(chosen.size()) +
                        " generators for a free module of rank " +
                        std::to_string(*cr.free_rank));
  }
  return chosen;
}

/// Some x with Mx = v, or nullopt if v is not in the image.
inline std::optional<Vector> solve(const Matrix& m, const Vector& v) {
  const auto& ring = m.ring();
  if (v.size() != m.rows()) throw InputError("solve: dimension mismatch");
  // Kernel of (t, x) -> t*v + Mx; a kernel row with unit leading t gives x.
  Matrix joint(ring, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    joint(i, 0) = ring.reduce_u(v[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) joint(i, j + 1) = m(i, j);
  }
  Submodule ker = kernel(joint);
  if (ker.is_zero() || ker.pivot_columns()[0] != 0 || ker.pivot_valuations()[0] != 0) {
    return std::nullopt;
  }
  const Vector& row = ker.basis()[0];  // leading entry normalized to 1
  Vector x(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) x[j] = ring.neg(row[j + 1]);
  return x;
}

/// Every element of S, as the sums sum_i c_i b_i with 0 <= c_i < p^(r - e_i).
/// Caller is responsible for keeping |S| small.
inline std::vector<Vector> enumerate_elements(const Submodule& s) {
  const auto& ring = s.ring();
  std::vector<Vector> out{Vector(s.ambient_dim(), 0)};
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    Residue order = ring.p_pow(ring.r() - s.pivot_valuations()[i]);
    if (order == 0) order = ring.modulus();
    std::vector<Vector> next;
    next.reserve(out.size() * order);
    for (const auto& base : out) {
      Vector acc = base;
      for (Residue c = 0; c < order; ++c) {
        next.push_back(acc);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = ring.add(acc[j], s.basis()[i][j]);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace knotshift
