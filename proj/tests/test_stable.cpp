#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "almost_stable/stable.hpp"
#include "support.hpp"

using namespace almost_stable;
using test_support::make_instance;
using test_support::random_instance;

TEST_CASE("single edge instance matches regardless of proposing side") {
  auto inst = make_instance(1, 1, {{1}}, {{1}});
  for (Side s : {Side::A, Side::B}) {
    auto m = gale_shapley(inst, s);
    REQUIRE(m.size() == 1);
    CHECK(m.contains(1, 1));
  }
}

TEST_CASE("hand-simulated deferred acceptance") {
  // A1:[B1,B2], A2:[B1], B1:[A2,A1], B2:[A1]; A proposes:
  // A1->B1 (held), A2->B1 (displaces A1), A1->B2.
  auto inst = make_instance(2, 2, {{1, 2}, {1}}, {{2, 1}, {1}});
  auto m = gale_shapley(inst, Side::A);
  CHECK(m.contains(2, 1));
  CHECK(m.contains(1, 2));
  CHECK(blocking_edges(inst, m).empty());
}

TEST_CASE("isolated agents stay unmatched") {
  auto inst = make_instance(2, 1, {{1}, {}}, {{1}});
  auto m = gale_shapley(inst, Side::A);
  CHECK(m.partner_a(2) == kUnmatched);
  CHECK(m.contains(1, 1));
}

TEST_CASE("saturated set basics") {
  auto inst = make_instance(1, 1, {{1}}, {{1}});
  CHECK(saturated_set(inst, Matching::empty(inst)) == SaturatedSet{});
  auto m = Matching::from_edges(inst, {{1, 1}});
  auto s = saturated_set(inst, m);
  CHECK(s.a == std::vector<int>{1});
  CHECK(s.b == std::vector<int>{1});
}

TEST_CASE("rural hospital: both proposing sides saturate the same agents") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng, 12, 12, 5);
    auto ma = gale_shapley(inst, Side::A);
    auto mb = gale_shapley(inst, Side::B);
    CHECK(blocking_edges(inst, ma).empty());
    CHECK(blocking_edges(inst, mb).empty());
    CHECK(saturated_set(inst, ma) == saturated_set(inst, mb));
    CHECK(ma.size() == mb.size());
  }
}

TEST_CASE("output size equals the brute-force stable size") {
  std::mt19937_64 rng(202);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 30; ++trial) {
    auto inst = random_instance(rng, 6, 6, 3);
    if (inst.edge_count() > 14) continue;
    ++checked;
    CHECK(gale_shapley(inst, Side::A).size() == test_support::stable_size_brute(inst));
  }
  CHECK(checked >= 20);
}

TEST_CASE("every brute-force stable matching has the Gale-Shapley size") {
  std::mt19937_64 rng(303);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 15; ++trial) {
    auto inst = random_instance(rng, 5, 5, 3);
    if (inst.edge_count() > 12) continue;
    ++checked;
    int gs = gale_shapley(inst, Side::A).size();
    test_support::all_matchings_brute(inst, [&](const std::vector<std::pair<int, int>>& edges) {
      if (test_support::count_blocking_brute(inst, edges) == 0)
        CHECK(static_cast<int>(edges.size()) == gs);
    });
  }
  CHECK(checked >= 10);
}
