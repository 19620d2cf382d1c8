#include <gtest/gtest.h>

#include <random>

#include "knotshift/knotshift.hpp"
#include "knotshift/oracle.hpp"
#include "knotshift/selfcheck.hpp"

using namespace knotshift;

namespace {

AlexanderPair scalar_pair(std::int64_t a, std::int64_t b) {
  AlexanderPair pr{IntMatrix(1, 1), IntMatrix(1, 1), PairKind::Windowed};
  pr.A(0, 0) = a;
  pr.B(0, 0) = b;
  return pr;
}

AlexanderPair identity_pair(std::size_t m) {
  AlexanderPair pr{IntMatrix(m, m), IntMatrix(m, m), PairKind::Windowed};
  for (std::size_t i = 0; i < m; ++i) pr.A(i, i) = pr.B(i, i) = 1;
  return pr;
}

Knot unknot() { return knot_from_presentation(parse_wirtinger("generators 1\nxing 1 1 1 +", "unknot")); }

// Monic mod-p core of delta, lowest degree first.
Vector monic_core(const LaurentPolyZ& delta, std::uint64_t p) {
  RingParams f(p, 1);
  Vector c;
  for (auto x : delta.coeffs) c.push_back(f.reduce(x));
  while (!c.empty() && c.front() == 0) c.erase(c.begin());
  while (!c.empty() && c.back() == 0) c.pop_back();
  Residue inv = f.inverse(c.back());
  for (auto& x : c) x = f.mul(x, inv);
  return c;
}

}  // namespace

TEST(ComputeV, Examples) {
  auto tre = builtin_knot("trefoil");
  auto v = compute_V(knot_pair(tre, 2), RingParams(2, 1));
  EXPECT_EQ(v, full_module(RingParams(2, 1), 2));
  EXPECT_EQ(v.count_exponent(), 2);
  for (int r : {1, 2, 3}) {
    EXPECT_TRUE(compute_V(two_bridge_window_pair(builtin_knot("7_4").delta, 2), RingParams(2, r)).is_zero());
  }
  auto u = knot_pair(unknot(), 2);
  EXPECT_EQ(u.size(), 0u);
  EXPECT_TRUE(compute_V(u, RingParams(2, 1)).is_zero());
}

TEST(NullSpaces, Examples) {
  RingParams z2(2, 1);
  auto tre = knot_pair(builtin_knot("trefoil"), 2);
  EXPECT_TRUE(compute_forward_null(tre, z2).is_zero());
  EXPECT_TRUE(compute_backward_null(tre, z2).is_zero());
  EXPECT_EQ(compute_forward_null(scalar_pair(0, 1), z2), full_module(z2, 1));
  EXPECT_EQ(compute_backward_null(scalar_pair(1, 0), z2), full_module(z2, 1));

  auto w52 = two_bridge_window_pair(builtin_knot("5_2").delta, 2);
  auto brute = oracle::brute_force_states(w52, z2);
  auto a = compute_forward_null(w52, z2);
  auto b = compute_backward_null(w52, z2);
  EXPECT_FALSE(a.is_zero());
  EXPECT_TRUE(same_states(a, brute.Afwd));
  EXPECT_TRUE(same_states(b, brute.Bbwd));
  EXPECT_EQ(compute_V(w52, z2).count_exponent() + a.count_exponent() + b.count_exponent(), 2);
}

TEST(Decomposition, Examples) {
  auto d = verify_decomposition(identity_pair(3), RingParams(3, 2));
  EXPECT_EQ(d.V, full_module(RingParams(3, 2), 3));
  EXPECT_TRUE(d.Afwd.is_zero());
  EXPECT_TRUE(d.Bbwd.is_zero());

  auto full = fox_pair(*builtin_knot("trefoil").presentation);
  EXPECT_THROW(verify_decomposition(full, RingParams(2, 1)), HypothesisViolated);

  auto red = verify_decomposition(knot_pair(builtin_knot("trefoil"), 2), RingParams(2, 2));
  EXPECT_EQ(red.V.count_exponent(), 4);
  EXPECT_TRUE(red.Afwd.is_zero());
  EXPECT_TRUE(red.Bbwd.is_zero());
}

TEST(Decomposition, DegenerateWindowPairs) {
  for (const char* name : {"5_2", "6_1", "7_4"}) {
    for (std::uint64_t p : {2, 3, 5}) {
      for (int r : {1, 2, 3}) {
        RingParams ring(p, r);
        auto pair = two_bridge_window_pair(builtin_knot(name).delta, p);
        EXPECT_NO_THROW(verify_decomposition(pair, ring)) << name << " " << ring.label();
      }
    }
  }
}

TEST(TransferMap, TrefoilRelations) {
  RingParams z2(2, 1);
  auto sys = build_shift_system(builtin_knot("trefoil"), z2);
  const Matrix& t = sys.T();
  Matrix id = Matrix::identity(z2, 2);
  Matrix zero(z2, 2, 2);
  Matrix s = t * t;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) s(i, j) = z2.add(s(i, j), z2.add(t(i, j), id(i, j)));
  EXPECT_EQ(s, zero);
  EXPECT_TRUE(t.pow(3).is_identity());

  RingParams z9(3, 2);
  auto sys9 = build_shift_system(builtin_knot("trefoil"), z9);
  Matrix minus_e(z9, 2, 2);
  minus_e(0, 0) = minus_e(1, 1) = 8;
  EXPECT_EQ(sys9.T().pow(3), minus_e);

  auto u = build_shift_system(unknot(), RingParams(5, 1));
  EXPECT_EQ(u.n(), 0u);
}

TEST(TransferMap, NonFreeVRejected) {
  // A = diag(1, 2), B = diag(1, 0) over Z/4: V = Z/4 + {0, 2}
  AlexanderPair pr{IntMatrix(2, 2), IntMatrix(2, 2), PairKind::Windowed};
  pr.A(0, 0) = 1;
  pr.A(1, 1) = 2;
  pr.B(0, 0) = 1;
  RingParams z4(2, 2);
  auto v = compute_V(pr, z4);
  EXPECT_EQ(v.count_exponent(), 3);
  EXPECT_THROW(transfer_map(pr, z4, v), NonFreeModule);
}

TEST(WindowPair, Shapes) {
  auto w = two_bridge_window_pair(builtin_knot("trefoil").delta, 2);
  EXPECT_EQ(w.size(), 2u);
  EXPECT_EQ(two_bridge_tail_length(builtin_knot("trefoil").delta, 2), 0u);
  EXPECT_EQ(compute_V(w, RingParams(2, 1)), full_module(RingParams(2, 1), 2));
  auto sys = build_shift_system(w, RingParams(2, 1));
  EXPECT_EQ(sys.transfer.charpoly_mod_p, (Vector{1, 1, 1}));
  EXPECT_EQ(two_bridge_tail_length(builtin_knot("5_2").delta, 2), 1u);
  EXPECT_EQ(two_bridge_window_pair(builtin_knot("5_2").delta, 2).size(), 2u);
  EXPECT_EQ(two_bridge_tail_length(builtin_knot("7_4").delta, 2), 1u);
}

TEST(RankTheorem, AllBuiltins) {
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      const int n = degree_mod_p(k.delta, p);
      for (int r : {1, 2, 3}) {
        RingParams ring(p, r);
        auto sys = build_shift_system(k, ring);
        auto cr = cardinality_and_rank(sys.V);
        ASSERT_TRUE(cr.free_rank.has_value()) << name << " " << ring.label();
        EXPECT_EQ(*cr.free_rank, static_cast<std::size_t>(n)) << name << " " << ring.label();
        EXPECT_EQ(cr.count_exponent, r * n);
      }
    }
  }
}

TEST(Projection, LiftsReduceIntoLowerLevel) {
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5}) {
      for (int r : {1, 2}) {
        auto pair = knot_pair(k, p);
        auto lo = compute_V(pair, RingParams(p, r));
        auto hi = compute_V(pair, RingParams(p, r + 1));
        auto proj = project(hi, RingParams(p, r));
        EXPECT_TRUE(is_subset(proj, lo)) << name;
        EXPECT_EQ(proj, lo) << name;
      }
    }
  }
}

TEST(ShiftConjugacy, OrbitsSolveThePairEquation) {
  std::mt19937_64 rng(29);
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5}) {
      for (int r : {1, 2, 3}) {
        RingParams ring(p, r);
        auto sys = build_shift_system(k, ring);
        if (sys.n() == 0) continue;
        RingPair pr = reduce_mod(sys.pair, ring);
        Matrix g = Matrix::from_columns(ring, sys.pair.size(), sys.transfer.basis);
        const std::uint64_t d = order_of_transfer(sys.T());
        for (int sample = 0; sample < 4; ++sample) {
          Vector c(sys.n());
          for (auto& x : c) x = rng() % ring.modulus();
          Vector y = g * c;
          ASSERT_TRUE(membership(sys.V, y));
          for (std::uint64_t j = 0; j < 2 * d; ++j) {
            c = sys.T() * c;
            Vector next = g * c;
            ASSERT_EQ(pr.B * y, pr.A * next) << name << " " << ring.label() << " j=" << j;
            y = std::move(next);
          }
        }
      }
    }
  }
}

TEST(CharPoly, MatchesCoreOfDelta) {
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      auto sys = build_shift_system(k, RingParams(p, 1));
      EXPECT_EQ(sys.transfer.charpoly_mod_p, monic_core(k.delta, p)) << name << " p=" << p;
    }
  }
}

TEST(CharPoly, Berkowitz) {
  RingParams z7(7, 1);
  Matrix m(z7, 3, 3);
  // companion of t^3 - 2t^2 + 3t - 4
  m(1, 0) = 1;
  m(2, 1) = 1;
  m(0, 2) = 4;
  m(1, 2) = z7.reduce(-3);
  m(2, 2) = 2;
  EXPECT_EQ(characteristic_polynomial(m), (Vector{3, 3, 5, 1}));
}

TEST(TwoBridge, WindowedAgreesWithWirtinger) {
  for (const char* name : {"trefoil", "figure8"}) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5}) {
      for (int r : {1, 2}) {
        RingParams ring(p, r);
        auto a = build_shift_system(k, ring, PairRoute::Wirtinger);
        auto b = build_shift_system(k, ring, PairRoute::Windowed);
        EXPECT_EQ(a.n(), b.n());
        auto sa = period_set(a.T());
        auto sb = period_set(b.T());
        EXPECT_EQ(sa.d, sb.d) << name << " " << ring.label();
        EXPECT_EQ(sa.counts, sb.counts) << name << " " << ring.label();
      }
    }
  }
  EXPECT_THROW(knot_pair(builtin_knot("7_4"), 2, PairRoute::Wirtinger), InputError);
}

TEST(Refinement, MatchesOracle) {
  for (const char* name : {"trefoil", "figure8", "5_2", "6_1", "7_4", "5_1"}) {
    for (std::uint64_t p : {2, 3}) {
      for (int r : {1, 2}) {
        auto res = check_instance(builtin_knot(name), RingParams(p, r));
        EXPECT_TRUE(res.ok) << res.name << ": " << res.detail;
      }
    }
  }
}
