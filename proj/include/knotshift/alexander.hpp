#pragma once

// Knot input: Wirtinger presentations, the Fox-calculus matrix pair (A, B)
// with B - tA the Alexander matrix, and the Alexander polynomial.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "knotshift/errors.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/polynomial.hpp"

namespace knotshift {

/// Relation x_out = x_over x_inc x_over^-1 (sign +1) or
/// x_out = x_over^-1 x_inc x_over (sign -1). Indices are 1-based.
struct Crossing {
  int out = 0;
  int over = 0;
  int inc = 0;
  int sign = 1;

  bool operator==(const Crossing&) const = default;
};

/// Generator 1 is the distinguished meridian.
struct KnotPresentation {
  int generators = 0;
  std::vector<Crossing> crossings;  // sorted by `out`
  std::string name;

  bool operator==(const KnotPresentation&) const = default;
};

enum class PairKind { Full, Reduced, Windowed };

/// Integer matrix pair with B - tA the relation matrix of the system
/// B y_j = A y_{j+1}. Knot pairs (Full, Reduced) have entries in {-1, 0, 1};
/// windowed pairs carry Alexander coefficients.
struct AlexanderPair {
  IntMatrix A;
  IntMatrix B;
  PairKind kind = PairKind::Full;

  [[nodiscard]] std::size_t size() const { return A.rows; }
};

inline void validate_presentation(const KnotPresentation& kp) {
  if (kp.generators < 1) throw InputError("presentation needs at least 1 generator");
  if (kp.crossings.size() != static_cast<std::size_t>(kp.generators)) {
    throw InputError("expected " + std::to_string(kp.generators) + " crossing" +
                     (kp.generators == 1 ? "" : "s") + ", found " +
                     std::to_string(kp.crossings.size()));
  }
  std::vector<int> seen(static_cast<std::size_t>(kp.generators) + 1, 0);
  for (const auto& c : kp.crossings) {
    for (int idx : {c.out, c.over, c.inc}) {
      if (idx < 1 || idx > kp.generators) {
        throw InputError("index " + std::to_string(idx) + " out of range");
      }
    }
    if (c.sign != 1 && c.sign != -1) throw InputError("crossing sign must be +1 or -1");
    if (seen[static_cast<std::size_t>(c.out)]++) {
      throw InputError("generator " + std::to_string(c.out) + " is `out` of more than one crossing");
    }
  }
}

/// Parses the line-oriented .wirt format:
///
///     # comment
///     generators <m>
///     xing <out> <over> <inc> <+|->     (exactly m lines, any order)
inline KnotPresentation parse_wirtinger(const std::string& text, std::string name = {}) {
  KnotPresentation kp;
  kp.name = std::move(name);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto fail = [&](const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (!have_header) {
      if (keyword != "generators") throw fail("expected `generators <m>`, got `" + keyword + "`");
      long long m = 0;
      if (!(ls >> m)) throw fail("`generators` needs an integer count");
      if (m < 1) throw fail("generator count must be >= 1");
      if (m > 100000) throw fail("generator count too large");
      kp.generators = static_cast<int>(m);
      have_header = true;
    } else {
      if (keyword != "xing") throw fail("expected `xing`, got `" + keyword + "`");
      long long out = 0, over = 0, inc = 0;
      std::string sign;
      if (!(ls >> out >> over >> inc >> sign)) throw fail("`xing` needs <out> <over> <inc> <+|->");
      for (long long idx : {out, over, inc}) {
        if (idx < 1 || idx > kp.generators) {
          throw fail("index " + std::to_string(idx) + " out of range 1.." +
                     std::to_string(kp.generators));
        }
      }
      if (sign != "+" && sign != "-") throw fail("sign must be `+` or `-`, got `" + sign + "`");
      kp.crossings.push_back({static_cast<int>(out), static_cast<int>(over),
                              static_cast<int>(inc), sign == "+" ? 1 : -1});
    }
    std::string extra;
    if (ls >> extra) throw fail("unexpected trailing token `" + extra + "`");
  }
  if (!have_header) throw InputError("missing `generators <m>` line");
  if (kp.crossings.size() != static_cast<std::size_t>(kp.generators)) {
    throw InputError("expected " + std::to_string(kp.generators) + " crossing" +
                     (kp.generators == 1 ? "" : "s") + ", found " +
                     std::to_string(kp.crossings.size()));
  }
  std::sort(kp.crossings.begin(), kp.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.out < b.out; });
  validate_presentation(kp);
  return kp;
}

inline std::string format_wirtinger(const KnotPresentation& kp) {
  std::ostringstream os;
  if (!kp.name.empty()) os << "# " << kp.name << '\n';
  os << "generators " << kp.generators << '\n';
  for (const auto& c : kp.crossings) {
    os << "xing " << c.out << ' ' << c.over << ' ' << c.inc << ' ' << (c.sign > 0 ? '+' : '-')
       << '\n';
  }
  return os.str();
}

/// Abelianized Fox derivatives of the Wirtinger relations, one row per
/// crossing at row index `out`.
inline AlexanderPair fox_pair(const KnotPresentation& kp) {
  validate_presentation(kp);
  const auto m = static_cast<std::size_t>(kp.generators);
  AlexanderPair pair{IntMatrix(m, m), IntMatrix(m, m), PairKind::Full};
  for (const auto& c : kp.crossings) {
    const auto row = static_cast<std::size_t>(c.out - 1);
    const auto k = static_cast<std::size_t>(c.out - 1);
    const auto i = static_cast<std::size_t>(c.over - 1);
    const auto j = static_cast<std::size_t>(c.inc - 1);
    if (c.sign > 0) {
      pair.B(row, k) += 1;
      pair.B(row, i) -= 1;
      pair.A(row, j) += 1;
      pair.A(row, i) -= 1;
    } else {
      pair.B(row, i) += 1;
      pair.B(row, j) -= 1;
      pair.A(row, i) += 1;
      pair.A(row, k) -= 1;
    }
  }
  return pair;
}

/// Deletes column `base` and the row of the crossing whose `out` is `base`
/// (row index base-1 in a fox_pair). The full pair always has the all-ones
/// vector in ker A ∩ ker B; the reduced pair does not.
inline AlexanderPair reduce_pair(const AlexanderPair& full, int base = 1) {
  if (full.kind != PairKind::Full) throw InputError("reduce_pair: expects a full pair");
  const std::size_t m = full.size();
  if (base < 1 || static_cast<std::size_t>(base) > m) {
    throw InputError("reduce_pair: base " + std::to_string(base) + " out of range");
  }
  const auto drop = static_cast<std::size_t>(base - 1);
  AlexanderPair red{IntMatrix(m - 1, m - 1), IntMatrix(m - 1, m - 1), PairKind::Reduced};
  for (std::size_t i = 0, ri = 0; i < m; ++i) {
    if (i == drop) continue;
    for (std::size_t j = 0, rj = 0; j < m; ++j) {
      if (j == drop) continue;
      red.A(ri, rj) = full.A(i, j);
      red.B(ri, rj) = full.B(i, j);
      ++rj;
    }
    ++ri;
  }
  return red;
}

/// det(B - tA) over Z[t] by fraction-free (Bareiss) elimination.
inline PolyZ pencil_determinant(const AlexanderPair& pair) {
  const std::size_t n = pair.size();
  if (n == 0) return {1};
  std::vector<std::vector<PolyZ>> m(n, std::vector<PolyZ>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyZ e{pair.B(i, j), -pair.A(i, j)};
      poly::trim(e);
      m[i][j] = std::move(e);
    }
  }
  PolyZ prev{1};
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (poly::is_zero(m[k][k])) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && poly::is_zero(m[swap_row][k])) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        PolyZ num = poly::sub(poly::mul(m[k][k], m[i][j]), poly::mul(m[i][k], m[k][j]));
        m[i][j] = poly::exact_div(std::move(num), prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  PolyZ det = m[n - 1][n - 1];
  if (sign < 0) det = poly::negate(std::move(det));
  poly::trim(det);
  return det;
}

/// Normalized Alexander polynomial of a reduced pair; rejects pairs whose
/// determinant fails the Delta(1) = +-1 / palindromy gate.
inline LaurentPolyZ alexander_polynomial(const AlexanderPair& pair) {
  if (pair.kind != PairKind::Reduced) {
    throw InputError("alexander_polynomial: expects a reduced pair");
  }
  LaurentPolyZ delta = normalized(LaurentPolyZ{0, pencil_determinant(pair)});
  if (!is_knot_polynomial(delta)) {
    throw InputError("not a knot presentation: det(B - tA) = " + delta.str() +
                     " fails Delta(1) = +-1 or symmetry");
  }
  return delta;
}

}  // namespace knotshift
