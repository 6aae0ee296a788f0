#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "almost_stable/knapsack.hpp"

using namespace almost_stable;

namespace {

// Independent subset brute force used as the oracle.
bool feasible_brute(const KnapsackInstance& inst) {
  int n = static_cast<int>(inst.items.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::int64_t a = 0, b = 0, p = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        a += inst.items[i].a;
        b += inst.items[i].b;
        p += inst.items[i].p;
      }
    if (a <= inst.c1 && b <= inst.c2 && p >= inst.p) return true;
  }
  return false;
}

bool satisfies(const KnapsackInstance& inst, const std::vector<int>& z) {
  std::int64_t a = 0, b = 0, p = 0;
  for (int idx : z) {
    REQUIRE(idx >= 1);
    REQUIRE(idx <= static_cast<int>(inst.items.size()));
    a += inst.items[idx - 1].a;
    b += inst.items[idx - 1].b;
    p += inst.items[idx - 1].p;
  }
  return a <= inst.c1 && b <= inst.c2 && p >= inst.p;
}

}  // namespace

TEST_CASE("one item fits exactly") {
  KnapsackInstance inst{{{1, 1, 1}}, 1, 1, 1};
  auto z = solve_2dkp(inst);
  REQUIRE(z.has_value());
  CHECK(*z == std::vector<int>{1});
}

TEST_CASE("conflicting costs make the target unreachable") {
  // brute force over all 4 subsets: max profit within (2,2) is 3 < 6
  KnapsackInstance inst{{{2, 1, 3}, {1, 2, 3}}, 2, 2, 6};
  CHECK_FALSE(feasible_brute(inst));
  CHECK_FALSE(solve_2dkp(inst).has_value());
}

TEST_CASE("a single high-profit item beats the pair") {
  // brute force over all 8 subsets: only {3} reaches profit 4 within (3,3)
  KnapsackInstance inst{{{1, 3, 2}, {2, 1, 2}, {3, 2, 4}}, 3, 3, 4};
  CHECK(feasible_brute(inst));
  auto z = solve_2dkp(inst);
  REQUIRE(z.has_value());
  CHECK(satisfies(inst, *z));
}

TEST_CASE("agrees with subset brute force on random instances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    KnapsackInstance inst;
    int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i)
      inst.items.push_back({static_cast<std::int64_t>(rng() % 8),
                            static_cast<std::int64_t>(rng() % 8),
                            static_cast<std::int64_t>(rng() % 6)});
    inst.c1 = rng() % 16;
    inst.c2 = rng() % 16;
    inst.p = rng() % 12;
    auto z = solve_2dkp(inst);
    CHECK(z.has_value() == feasible_brute(inst));
    if (z) CHECK(satisfies(inst, *z));
  }
}

TEST_CASE("relaxing budgets or lowering the target never flips yes to no") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 120; ++trial) {
    KnapsackInstance inst;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i)
      inst.items.push_back({static_cast<std::int64_t>(rng() % 6),
                            static_cast<std::int64_t>(rng() % 6),
                            static_cast<std::int64_t>(rng() % 5)});
    inst.c1 = rng() % 10;
    inst.c2 = rng() % 10;
    inst.p = rng() % 10;
    if (!solve_2dkp(inst)) continue;
    KnapsackInstance relaxed = inst;
    relaxed.c1 += rng() % 3;
    relaxed.c2 += rng() % 3;
    relaxed.p = std::max<std::int64_t>(0, relaxed.p - static_cast<std::int64_t>(rng() % 3));
    CHECK(solve_2dkp(relaxed).has_value());
  }
}

TEST_CASE("deterministic reconstruction") {
  KnapsackInstance inst{{{1, 1, 2}, {1, 1, 2}, {1, 1, 2}}, 2, 2, 4};
  auto z1 = solve_2dkp(inst);
  auto z2 = solve_2dkp(inst);
  REQUIRE(z1.has_value());
  CHECK(*z1 == *z2);
}

TEST_CASE("cell cap raises BudgetOverflow") {
  KnapsackInstance inst{{{1, 1, 1}}, 100000, 100000, 1};
  CHECK_THROWS_WITH_AS(solve_2dkp(inst, 1000), doctest::Contains("BudgetOverflow"), Error);
}

TEST_CASE("negative inputs are rejected") {
  KnapsackInstance inst{{{-1, 0, 0}}, 1, 1, 0};
  CHECK_THROWS_AS(solve_2dkp(inst), InputError);
}
