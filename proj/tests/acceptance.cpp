// Acceptance suite: one test case per criterion, each printing a single
// summary line. Run via ctest or directly:
//   ./acceptance
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "almost_stable/fpt.hpp"
#include "almost_stable/knapsack.hpp"
#include "almost_stable/oracle.hpp"
#include "almost_stable/reductions.hpp"
#include "almost_stable/stable.hpp"
#include "almost_stable/usfam.hpp"
#include "support.hpp"

using namespace almost_stable;
using test_support::random_instance;

#define CRIT_CHECK(expr)     \
  do {                       \
    bool crit_v_ = (expr);   \
    CHECK(crit_v_);          \
    pass = pass && crit_v_;  \
  } while (0)

namespace {

struct CriterionTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, bool pass, const CriterionTimer& timer,
            const std::string& detail) {
  std::printf("criterion %d: %s (%s; %lld ms)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str(), timer.ms());
}

// Shared tallies so criterion 10 can audit the structures produced while
// criteria 6 and 7 ran.
struct StructuralTally {
  long long components = 0;
  long long invalid_components = 0;
  long long augmenting_profiles = 0;
  long long augmenting_without_blocking = 0;
} g_tally;

std::function<void(const std::vector<ClassifiedComponent>&,
                   const std::vector<ComponentProfile>&)>
    g_trace = [](const std::vector<ClassifiedComponent>& comps,
                 const std::vector<ComponentProfile>& profiles) {
      for (const auto& c : comps) {
        ++g_tally.components;
        if (c.structure.kind == ComponentKind::Invalid) ++g_tally.invalid_components;
      }
      for (const auto& p : profiles)
        if (p.structure.kind == ComponentKind::AugmentingPath) {
          ++g_tally.augmenting_profiles;
          if (p.k_i < 1) ++g_tally.augmenting_without_blocking;
        }
    };

McqInstance k22_mcq() {
  McqInstance mcq;
  mcq.k = 2;
  mcq.parts = {{}, {1, 2}, {3, 4}};
  mcq.edges = {{1, 3}, {1, 4}, {2, 3}, {2, 4}};
  mcq.regular_degree = 2;
  return mcq;
}

McqInstance shifted_mcq(int k, int n, int shifts) {
  McqInstance mcq;
  mcq.k = k;
  mcq.parts.assign(k + 1, {});
  int id = 0;
  for (int i = 1; i <= k; ++i)
    for (int x = 0; x < n; ++x) mcq.parts[i].push_back(++id);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      for (int s = 0; s < shifts; ++s)
        for (int x = 0; x < n; ++x)
          mcq.edges.emplace_back(mcq.parts[i][x], mcq.parts[j][(x + s) % n]);
  mcq.regular_degree = shifts * (k - 1);
  return mcq;
}

bool mcq_has_clique_brute(const McqInstance& mcq) {
  std::vector<int> pick(mcq.k);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i > mcq.k) return true;
    for (int v : mcq.parts[i]) {
      bool ok = true;
      for (int j = 1; j < i; ++j)
        if (!mcq.has_edge(pick[j - 1], v)) ok = false;
      if (!ok) continue;
      pick[i - 1] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(1);
}

bool certificate_ok(const PreferenceInstance& inst, const Matching& mu,
                    const Matching& eta, int k, int q, int t) {
  return eta.size() >= mu.size() + t &&
         static_cast<int>(symmetric_difference(mu, eta).size()) <= q &&
         static_cast<int>(blocking_edges(inst, eta).size()) <= k;
}

}  // namespace

TEST_CASE("criterion 1: stable-matching suite") {
  CriterionTimer timer;
  bool pass = true;
  std::mt19937_64 rng(1001);
  int brute_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = random_instance(rng, 12, 12, 5);
    auto ma = gale_shapley(inst, Side::A);
    auto mb = gale_shapley(inst, Side::B);
    CRIT_CHECK(blocking_edges(inst, ma).empty());
    CRIT_CHECK(blocking_edges(inst, mb).empty());
    CRIT_CHECK(saturated_set(inst, ma) == saturated_set(inst, mb));
    if (inst.num_a() <= 6 && inst.num_b() <= 6 && inst.edge_count() <= 14) {
      ++brute_checked;
      CRIT_CHECK(ma.size() == test_support::stable_size_brute(inst));
    }
  }
  CRIT_CHECK(brute_checked >= 25);
  report(1, pass, timer, "500 instances, " + std::to_string(brute_checked) + " brute-force size checks");
}

TEST_CASE("criterion 2: ASM reduction counts") {
  CriterionTimer timer;
  bool pass = true;
  auto mcq = pad_mcq(k22_mcq());
  auto art = build_asm_reduction(mcq);
  CRIT_CHECK(art.instance.num_agents() == 86);
  CRIT_CHECK(art.mu.size() == 40);
  CRIT_CHECK(art.t == 3);
  CRIT_CHECK(art.mu.size() + art.t == art.instance.num_agents() / 2);
  CRIT_CHECK(blocking_edges(art.instance, art.mu).empty());
  CRIT_CHECK(bipartition_exists(art.instance));

  auto mcq3 = shifted_mcq(3, 4, 2);  // parts of 4, |E_ij| = 8, every degree 4
  auto art3 = build_asm_reduction(mcq3);
  CRIT_CHECK(art3.instance.num_agents() == asm_vertex_count(3, 4, 8, 4));
  CRIT_CHECK(art3.mu.size() == asm_mu_size(3, 4, 8, 4));
  CRIT_CHECK(art3.mu.size() + art3.t == art3.instance.num_agents() / 2);
  CRIT_CHECK(blocking_edges(art3.instance, art3.mu).empty());
  CRIT_CHECK(bipartition_exists(art3.instance));
  report(2, pass, timer, "k=2 regime 86/40/3 exact; k=3 closed forms exact");
}

TEST_CASE("criterion 3: ASM embedded-solution census") {
  CriterionTimer timer;
  bool pass = true;
  auto mcq = pad_mcq(k22_mcq());
  auto art = build_asm_reduction(mcq);
  for (std::vector<int> clique : {std::vector<int>{1, 3}, std::vector<int>{1, 4},
                                  std::vector<int>{2, 3}, std::vector<int>{2, 4}}) {
    auto eta = embed_clique_asm(art, clique);
    auto bp = blocking_edges(art.instance, eta);
    CRIT_CHECK(static_cast<std::int64_t>(bp.size()) == art.k_prime);
    CRIT_CHECK(bp.size() == 3);
    std::set<std::pair<int, int>> statics;
    for (auto& [v, e] : art.u_type_edge) statics.insert(e);
    for (auto& [eid, e] : art.e_type_edge) statics.insert(e);
    for (auto e : bp) CRIT_CHECK(statics.count(e) == 1);
    CRIT_CHECK(static_cast<int>(symmetric_difference(art.mu, eta).size()) == 29);
  }
  report(3, pass, timer, "every planted clique yields 3 static blocking edges, |mu^eta|=29");
}

TEST_CASE("criterion 4: LS-ASM reduction counts") {
  CriterionTimer timer;
  bool pass = true;
  McqInstance mcq;
  mcq.k = 2;
  mcq.parts = {{}, {1, 2, 3}, {4, 5, 6}};
  mcq.edges = {{1, 4}, {2, 5}};
  auto art = build_lsasm_reduction(mcq);
  CRIT_CHECK(art.instance.num_agents() == 34);
  CRIT_CHECK(art.mu.size() == 14);
  CRIT_CHECK(art.q == 13);
  CRIT_CHECK(art.t == 3);
  for (std::vector<int> clique : {std::vector<int>{1, 4}, std::vector<int>{2, 5}}) {
    auto eta = embed_clique_lsasm(art, clique);
    CRIT_CHECK(eta.size() == 17);
    CRIT_CHECK(static_cast<int>(symmetric_difference(art.mu, eta).size()) == 13);
    CRIT_CHECK(blocking_edges(art.instance, eta).size() == 3);
    auto [s, es] = extract_clique_lsasm(art, eta);
    std::vector<int> want = clique;
    std::sort(want.begin(), want.end());
    CRIT_CHECK(s == want);
    CRIT_CHECK(es.size() == 1);
  }
  report(4, pass, timer, "figure regime 34/14/13/3 exact; extract o embed = id");
}

TEST_CASE("criterion 5: end-to-end equivalence on 2-part sources") {
  CriterionTimer timer;
  bool pass = true;
  OracleOptions opts;
  opts.edge_cap = 4096;
  int checked = 0;

  auto check_one = [&](const McqInstance& mcq) {
    auto art = build_lsasm_reduction(mcq);
    bool clique = mcq_has_clique_brute(mcq);
    auto witness = oracle_lsasm(art.instance, art.mu, static_cast<int>(art.k_prime),
                                static_cast<int>(art.q), static_cast<int>(art.t), opts);
    CRIT_CHECK(witness.has_value() == clique);
    if (witness)
      CRIT_CHECK(certificate_ok(art.instance, art.mu, *witness,
                                static_cast<int>(art.k_prime), static_cast<int>(art.q),
                                static_cast<int>(art.t)));
    ++checked;
  };

  // all edge subsets of a fixed 6-pair universe over two parts of 4
  std::vector<std::pair<int, int>> universe{{1, 5}, {1, 6}, {2, 5}, {3, 7}, {4, 8}, {2, 6}};
  for (int mask = 0; mask < (1 << 6); ++mask) {
    McqInstance mcq;
    mcq.k = 2;
    mcq.parts = {{}, {1, 2, 3, 4}, {5, 6, 7, 8}};
    for (int b = 0; b < 6; ++b)
      if (mask >> b & 1) mcq.edges.push_back(universe[b]);
    check_one(mcq);
  }
  // plus 50 random k=2 instances
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 50; ++trial)
    check_one(test_support::random_mcq(rng, 2, 4, static_cast<int>(rng() % 17)));
  report(5, pass, timer, std::to_string(checked) + " sources, oracle == clique brute force");
}

TEST_CASE("criterion 6: derandomized FPT vs oracle") {
  CriterionTimer timer;
  bool pass = true;
  std::mt19937_64 rng(1006);
  int done = 0, yeses = 0;
  while (done < 200) {
    auto inst = random_instance(rng, 6, 6, 3);
    auto mu = gale_shapley(inst, Side::A);
    int k = static_cast<int>(rng() % 4);
    int q = static_cast<int>(rng() % 5);
    int t = static_cast<int>(rng() % 3);
    ++done;
    auto query = LsAsmQuery::make(inst, mu, k, q, t);
    SolveOptions sopts;
    sopts.trace = &g_trace;
    auto res = solve_derandomized(query, sopts);
    auto expect = oracle_lsasm(inst, mu, k, q, t);
    CRIT_CHECK(res.yes == expect.has_value());
    if (res.yes) {
      ++yeses;
      CRIT_CHECK(certificate_ok(inst, mu, *res.eta, k, q, t));
    }
  }
  report(6, pass, timer, "200 queries, " + std::to_string(yeses) + " yes, exact agreement");
}

TEST_CASE("criterion 7: randomized success rate at q=3, d=2") {
  CriterionTimer timer;
  bool pass = true;
  std::mt19937_64 rng(1007);
  int queries = 0;
  long long total_runs = 0;
  while (queries < 30) {
    auto inst = random_instance(rng, 6, 6, 2);
    auto mu = gale_shapley(inst, Side::A);
    int k = 3, q = 3, t = 1;
    if (!oracle_lsasm(inst, mu, k, q, t).has_value()) continue;
    ++queries;
    auto query = LsAsmQuery::make(inst, mu, k, q, t);
    int successes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      SolveOptions opts;
      opts.seed = seed;
      opts.trace = &g_trace;
      auto res = solve_randomized(query, opts);
      ++total_runs;
      if (res.yes && certificate_ok(inst, mu, *res.eta, k, q, t)) ++successes;
    }
    CRIT_CHECK(successes >= 99);
  }
  report(7, pass, timer, "30 yes-queries x 100 seeds, >=99 successes each (" +
                      std::to_string(total_runs) + " runs)");
}

TEST_CASE("criterion 8: 2D-KP vs subset brute force") {
  CriterionTimer timer;
  bool pass = true;
  std::mt19937_64 rng(1008);
  for (int trial = 0; trial < 1000; ++trial) {
    KnapsackInstance inst;
    int n = 1 + static_cast<int>(rng() % 15);
    for (int i = 0; i < n; ++i)
      inst.items.push_back({static_cast<std::int64_t>(rng() % 11),
                            static_cast<std::int64_t>(rng() % 11),
                            static_cast<std::int64_t>(rng() % 9)});
    inst.c1 = rng() % 21;
    inst.c2 = rng() % 21;
    inst.p = rng() % 25;

    bool brute = false;
    for (int mask = 0; mask < (1 << n) && !brute; ++mask) {
      std::int64_t a = 0, b = 0, p = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) {
          a += inst.items[i].a;
          b += inst.items[i].b;
          p += inst.items[i].p;
        }
      brute = a <= inst.c1 && b <= inst.c2 && p >= inst.p;
    }
    auto z = solve_2dkp(inst);
    CRIT_CHECK(z.has_value() == brute);
    if (z) {
      std::int64_t a = 0, b = 0, p = 0;
      for (int idx : *z) {
        a += inst.items[idx - 1].a;
        b += inst.items[idx - 1].b;
        p += inst.items[idx - 1].p;
      }
      CRIT_CHECK(a <= inst.c1 && b <= inst.c2 && p >= inst.p);
    }
  }
  report(8, pass, timer, "1000 instances, n<=15, budgets<=20, exact agreement");
}

TEST_CASE("criterion 9: universal families verify across the sweep") {
  CriterionTimer timer;
  bool pass = true;
  int combos = 0;
  for (int n = 1; n <= 12; ++n)
    for (int p = 0; p <= 6; ++p)
      for (int q = 0; p + q <= std::min(6, n); ++q) {
        ++combos;
        auto ex = build_lopsided_family(n, p, q, FamilyMode::Exhaustive, 0);
        CRIT_CHECK(verify_lopsided(ex).ok);
        auto rv = build_lopsided_family(n, p, q, FamilyMode::RandomVerified, 1009);
        CRIT_CHECK(verify_lopsided(rv).ok);
      }
  report(9, pass, timer, std::to_string(combos) + " (n,p,q) combinations, both modes verified");
}

TEST_CASE("criterion 10: structural invariants") {
  CriterionTimer timer;
  bool pass = true;
  // Observation-1 and k_i audits collected while criteria 6 and 7 ran.
  CRIT_CHECK(g_tally.components > 0);
  CRIT_CHECK(g_tally.invalid_components == 0);
  CRIT_CHECK(g_tally.augmenting_profiles > 0);
  CRIT_CHECK(g_tally.augmenting_without_blocking == 0);

  // Stability-vs-change: on a <=6-agent corpus, every blocking edge of
  // every matching touches an endpoint whose partner differs from mu.
  std::mt19937_64 rng(1010);
  long long triples = 0;
  int corpus = 0;
  for (int trial = 0; trial < 200 && corpus < 40; ++trial) {
    auto inst = random_instance(rng, 6, 6, 3);
    if (inst.edge_count() > 12) continue;
    ++corpus;
    auto mu = gale_shapley(inst, Side::A);
    bool all_ok = true;
    test_support::all_matchings_brute(inst, [&](const std::vector<std::pair<int, int>>& edges) {
      auto eta = Matching::from_edges(inst, edges);
      for (auto [a, b] : blocking_edges(inst, eta)) {
        ++triples;
        if (mu.partner_a(a) == eta.partner_a(a) && mu.partner_b(b) == eta.partner_b(b))
          all_ok = false;
      }
    });
    CRIT_CHECK(all_ok);
  }
  CRIT_CHECK(corpus >= 30);
  report(10, pass, timer, "G* components " + std::to_string(g_tally.components) +
                       " all alternating; " + std::to_string(triples) +
                       " blocking-edge triples satisfy the partner-change property");
}
