#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>

#include "almost_stable/usfam.hpp"

using namespace almost_stable;

namespace {

// Independent exhaustive check over index vectors (no bitmask tricks).
bool universal_brute(const LopsidedFamily& fam) {
  int n = fam.universe_size, p = fam.p, q = fam.q;
  std::vector<int> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = i + 1;
  std::function<bool(std::vector<int>&, std::vector<int>&, int, int)> pick_b =
      [&](std::vector<int>& a, std::vector<int>& b, int start, int left) -> bool {
    if (left == 0) {
      for (const auto& f : fam.sets) {
        bool ok = true;
        for (int x : a)
          if (std::find(f.begin(), f.end(), x) == f.end()) ok = false;
        for (int x : b)
          if (std::find(f.begin(), f.end(), x) != f.end()) ok = false;
        if (ok) return true;
      }
      return false;
    }
    for (int i = start; i < n; ++i) {
      if (std::find(a.begin(), a.end(), elems[i]) != a.end()) continue;
      b.push_back(elems[i]);
      bool ok = pick_b(a, b, i + 1, left - 1);
      b.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  std::function<bool(std::vector<int>&, int, int)> pick_a =
      [&](std::vector<int>& a, int start, int left) -> bool {
    if (left == 0) {
      std::vector<int> b;
      return pick_b(a, b, 0, q);
    }
    for (int i = start; i < n; ++i) {
      a.push_back(elems[i]);
      bool ok = pick_a(a, i + 1, left - 1);
      a.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  std::vector<int> a;
  return pick_a(a, 0, p);
}

}  // namespace

TEST_CASE("the singleton family is 3-1-1 universal") {
  LopsidedFamily fam{3, 1, 1, {{1}, {2}, {3}}};
  CHECK(universal_brute(fam));
  CHECK(verify_lopsided(fam).ok);
}

TEST_CASE("the full set alone is not 3-1-1 universal") {
  LopsidedFamily fam{3, 1, 1, {{1, 2, 3}}};
  CHECK_FALSE(universal_brute(fam));
  auto res = verify_lopsided(fam);
  CHECK_FALSE(res.ok);
  REQUIRE(res.counterexample.has_value());
  // lexicographically first failure
  CHECK(res.counterexample->first == std::vector<int>{1});
  CHECK(res.counterexample->second == std::vector<int>{2});
}

TEST_CASE("the empty set is not 2-1-0 universal") {
  LopsidedFamily fam{2, 1, 0, {{}}};
  auto res = verify_lopsided(fam);
  CHECK_FALSE(res.ok);
  REQUIRE(res.counterexample.has_value());
  CHECK(res.counterexample->first == std::vector<int>{1});
  CHECK(res.counterexample->second.empty());
}

TEST_CASE("p=0, q=0 needs only the empty set") {
  LopsidedFamily fam{4, 0, 0, {{}}};
  CHECK(verify_lopsided(fam).ok);
  auto built = build_lopsided_family(4, 0, 0, FamilyMode::RandomVerified, 1);
  CHECK(!built.sets.empty());
  CHECK(verify_lopsided(built).ok);
}

TEST_CASE("the power set is always universal") {
  auto fam = build_lopsided_family(4, 2, 2, FamilyMode::Exhaustive, 0);
  CHECK(static_cast<int>(fam.sets.size()) == 16);
  CHECK(verify_lopsided(fam).ok);
  CHECK(universal_brute(fam));
}

TEST_CASE("bounded families cover any q") {
  for (int q = 0; q <= 4; ++q) {
    auto fam = build_lopsided_family(6, 2, q, FamilyMode::Bounded, 0);
    CHECK(verify_lopsided(fam).ok);
  }
}

TEST_CASE("random-verified families verify across a small sweep") {
  for (int n : {4, 7, 10}) {
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; p + q <= std::min(n, 5); ++q) {
        auto fam = build_lopsided_family(n, p, q, FamilyMode::RandomVerified, 12345);
        CHECK(verify_lopsided(fam).ok);
        CHECK(static_cast<std::int64_t>(fam.sets.size()) <=
              lopsided_sample_count(n, p, q, FamilyOptions{}.sample_cap));
      }
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_WITH_AS(build_lopsided_family(3, 2, 2, FamilyMode::Exhaustive, 0),
                       doctest::Contains("InvalidParameters"), InputError);
  CHECK_THROWS_WITH_AS(build_lopsided_family(25, 1, 1, FamilyMode::Exhaustive, 0),
                       doctest::Contains("InvalidParameters"), InputError);
  CHECK_THROWS_AS(build_lopsided_family(4, -1, 1, FamilyMode::Exhaustive, 0), InputError);
}

TEST_CASE("verification cap raises TooLargeToVerify") {
  LopsidedFamily fam{40, 10, 10, {}};
  CHECK_THROWS_WITH_AS(verify_lopsided(fam, 1000), doctest::Contains("TooLargeToVerify"),
                       Error);
}

TEST_CASE("sampling is deterministic per seed") {
  auto f1 = build_lopsided_family(8, 2, 3, FamilyMode::RandomUnverified, 99);
  auto f2 = build_lopsided_family(8, 2, 3, FamilyMode::RandomUnverified, 99);
  CHECK(f1.sets == f2.sets);
}
