#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "knotshift/knotshift.hpp"
#include "knotshift/oracle.hpp"
#include "knotshift/selfcheck.hpp"

using namespace knotshift;

namespace {

Matrix transfer(const char* name, std::uint64_t p, int r) {
  return build_shift_system(builtin_knot(name), RingParams(p, r)).T();
}

using Counts = std::map<std::uint64_t, BigCount>;

}  // namespace

TEST(Order, Examples) {
  EXPECT_EQ(order_of_transfer(transfer("trefoil", 2, 1)), 3u);
  EXPECT_EQ(order_of_transfer(transfer("trefoil", 2, 2)), 6u);
  EXPECT_EQ(order_of_transfer(transfer("trefoil", 2, 3)), 6u);
  EXPECT_EQ(order_of_transfer(transfer("figure8", 5, 2)), 50u);
  EXPECT_EQ(order_of_transfer(transfer("7_4", 2, 3)), 1u);
}

TEST(Order, CapAndSingular) {
  EXPECT_THROW(order_of_transfer(transfer("figure8", 5, 1), 5), CapExceeded);
  Matrix z(RingParams(3, 1), 2, 2);
  z(0, 0) = 1;
  EXPECT_THROW(order_of_transfer(z), NotInvertible);
}

TEST(PeriodSet, Examples) {
  auto a = period_set(transfer("trefoil", 2, 1));
  EXPECT_EQ(a.counts, (Counts{{1, 1}, {3, 3}}));
  auto b = period_set(transfer("trefoil", 2, 2));
  EXPECT_EQ(b.counts, (Counts{{1, 1}, {3, 3}, {6, 12}}));
  EXPECT_EQ(b.periods(), (std::vector<std::uint64_t>{1, 3, 6}));
  auto c = period_set(transfer("trefoil", 3, 1));
  EXPECT_EQ(c.counts, (Counts{{1, 1}, {2, 2}, {6, 6}}));
  auto z = period_set(transfer("5_2", 2, 2));
  EXPECT_EQ(z.counts, (Counts{{1, 1}}));
  EXPECT_EQ(z.d, 1u);
}

TEST(PeriodSet, ConservationAndOracle) {
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      for (int r : {1, 2, 3}) {
        RingParams ring(p, r);
        auto sys = build_shift_system(k, ring);
        auto spec = period_set(sys.T());
        EXPECT_EQ(spec.total(), detail::big_pow(p, sys.V.count_exponent()));
        EXPECT_GE(spec.counts.at(1), 1);
        std::uint64_t l = 1;
        for (auto q : spec.periods()) {
          EXPECT_EQ(spec.d % q, 0u);
          l = std::lcm(l, q);
        }
        EXPECT_EQ(l, spec.d);
        const std::uint64_t states = static_cast<std::uint64_t>(std::pow(double(p), double(r * sys.n())));
        if (states <= 10'000) {
          std::vector<std::uint64_t> t;
          for (std::size_t i = 0; i < sys.n(); ++i)
            for (std::size_t j = 0; j < sys.n(); ++j) t.push_back(sys.T()(i, j));
          auto census = oracle::brute_force_orbits(t, sys.n(), ring);
          EXPECT_TRUE(same_spectrum(spec, census)) << name << " " << ring.label();
        }
      }
    }
  }
}

TEST(PeriodSet, ExactPeriodOrbits) {
  for (const char* name : {"trefoil", "figure8", "5_1"}) {
    for (std::uint64_t p : {2, 3, 5}) {
      RingParams ring(p, 2);
      auto sys = build_shift_system(builtin_knot(name), ring);
      auto spec = period_set(sys.T());
      for (auto q : spec.periods()) {
        Matrix id = Matrix::identity(ring, sys.n());
        auto fixed = kernel(sys.T().pow(q) - id);
        for (const auto& v : enumerate_elements(fixed)) {
          std::uint64_t len = 1;
          for (Vector w = sys.T() * v; w != v; w = sys.T() * w) ++len;
          EXPECT_EQ(q % len, 0u);
          EXPECT_TRUE(spec.counts.count(len)) << name << " period " << len;
        }
      }
    }
  }
}

TEST(Tower, Examples) {
  auto t3 = period_tower(builtin_knot("trefoil"), 3, 4);
  EXPECT_EQ(t3.d_list, (std::vector<std::uint64_t>{6, 6, 6, 6}));
  EXPECT_EQ(t3.pattern, TowerPattern::Constant);
  auto f5 = period_tower(builtin_knot("figure8"), 5, 3);
  EXPECT_EQ(f5.d_list, (std::vector<std::uint64_t>{10, 50, 250}));
  EXPECT_EQ(f5.pattern, TowerPattern::GrowthFrom);
  EXPECT_EQ(f5.growth_start, 1);
  auto t2 = period_tower(builtin_knot("trefoil"), 2, 3);
  EXPECT_EQ(t2.d_list, (std::vector<std::uint64_t>{3, 6, 6}));
  EXPECT_EQ(t2.pattern, TowerPattern::StabilizedAfterGrowth);
  auto f2 = period_tower(builtin_knot("figure8"), 2, 1);
  EXPECT_EQ(f2.d_list.front(), 3u);
}

TEST(Tower, Classifier) {
  EXPECT_EQ(classify_tower(3, {6, 6, 6}).pattern, TowerPattern::Constant);
  auto g = classify_tower(3, {2, 2, 6, 18});
  EXPECT_EQ(g.pattern, TowerPattern::GrowthFrom);
  EXPECT_EQ(g.growth_start, 2);
  EXPECT_EQ(classify_tower(2, {3, 6, 6}).pattern, TowerPattern::StabilizedAfterGrowth);
  EXPECT_EQ(classify_tower(3, {2, 4}).pattern, TowerPattern::Other);
  EXPECT_EQ(classify_tower(5, {10, 20}).pattern, TowerPattern::Other);
  EXPECT_EQ(classify_tower(5, {10}).pattern, TowerPattern::Constant);
  for (auto pat : {TowerPattern::Constant, TowerPattern::GrowthFrom, TowerPattern::StabilizedAfterGrowth,
                   TowerPattern::Other}) {
    EXPECT_EQ(pattern_from_name(pattern_name(pat)), pat);
  }
}

TEST(Tower, Laws) {
  for (const auto& name : builtin_names()) {
    auto k = builtin_knot(name);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      auto t = period_tower(k, p, 4);
      for (std::size_t i = 0; i + 1 < t.d_list.size(); ++i) {
        EXPECT_EQ(t.d_list[i + 1] % t.d_list[i], 0u) << name << " p=" << p;
        EXPECT_EQ((p * t.d_list[i]) % t.d_list[i + 1], 0u) << name << " p=" << p;
        auto lo = t.levels[i].periods();
        auto hi = t.levels[i + 1].periods();
        EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end())) << name << " p=" << p;
      }
      if (p % 2 == 1) {
        EXPECT_TRUE(t.pattern == TowerPattern::Constant || t.pattern == TowerPattern::GrowthFrom)
            << name << " p=" << p;
      } else {
        EXPECT_NE(t.pattern, TowerPattern::Other) << name;
      }
    }
  }
}

TEST(Sigma, Parsing) {
  EXPECT_EQ(parse_sigma("4,3").factors, (std::vector<std::pair<std::uint64_t, int>>{{2, 2}, {3, 1}}));
  EXPECT_EQ(parse_sigma("12"), parse_sigma("4,3"));
  EXPECT_EQ(parse_sigma("6").factors, (std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {3, 1}}));
  EXPECT_TRUE(parse_sigma("2,2").has_repeated_prime());
  EXPECT_FALSE(parse_sigma("6").has_repeated_prime());
  EXPECT_THROW(parse_sigma(""), InputError);
  EXPECT_THROW(parse_sigma("1"), InputError);
  EXPECT_THROW(parse_sigma("4,x"), InputError);
}

TEST(Combine, Examples) {
  auto k = builtin_knot("trefoil");
  auto spec = [&](std::uint64_t p, int r) { return period_set(build_shift_system(k, RingParams(p, r)).T()); };
  auto z6 = combine_abelian(parse_sigma("6"), {spec(2, 1), spec(3, 1)});
  EXPECT_EQ(z6.d, 6u);
  EXPECT_EQ(z6.periods(), (std::vector<std::uint64_t>{1, 2, 3, 6}));
  BigCount total = 0;
  for (const auto& [q, c] : z6.counts) total += c;
  EXPECT_EQ(total, 36);
  auto one = combine_abelian(parse_sigma("4"), {spec(2, 2)});
  EXPECT_EQ(one.d, 6u);
  EXPECT_EQ(one.counts, spec(2, 2).counts);
  auto z12 = combine_abelian(parse_sigma("4,3"), {spec(2, 2), spec(3, 1)});
  EXPECT_EQ(z12.d, 6u);
  EXPECT_EQ(z12.periods(), (std::vector<std::uint64_t>{1, 2, 3, 6}));
  EXPECT_THROW(combine_abelian(parse_sigma("6"), {spec(2, 1)}), InputError);
}
