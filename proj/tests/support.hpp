#ifndef ALMOST_STABLE_TEST_SUPPORT_HPP
#define ALMOST_STABLE_TEST_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "almost_stable/core.hpp"
#include "almost_stable/reductions.hpp"

namespace test_support {

using almost_stable::Matching;
using almost_stable::McqInstance;
using almost_stable::PreferenceInstance;

inline PreferenceInstance make_instance(int na, int nb,
                                        std::vector<std::vector<int>> pa,
                                        std::vector<std::vector<int>> pb) {
  return PreferenceInstance::validate(na, nb, std::move(pa), std::move(pb));
}

// Random bipartite instance with a maximum degree cap and random strict
// preference orders on both sides.
inline PreferenceInstance random_instance(std::mt19937_64& rng, int max_a, int max_b,
                                          int max_deg) {
  int na = 1 + static_cast<int>(rng() % max_a);
  int nb = 1 + static_cast<int>(rng() % max_b);
  std::vector<std::pair<int, int>> cand;
  for (int a = 1; a <= na; ++a)
    for (int b = 1; b <= nb; ++b) cand.emplace_back(a, b);
  std::shuffle(cand.begin(), cand.end(), rng);
  std::size_t want = rng() % (cand.size() + 1);
  std::vector<int> deg_a(na + 1, 0), deg_b(nb + 1, 0);
  std::vector<std::vector<int>> adj_a(na + 1), adj_b(nb + 1);
  std::size_t taken = 0;
  for (auto [a, b] : cand) {
    if (taken >= want) break;
    if (deg_a[a] >= max_deg || deg_b[b] >= max_deg) continue;
    ++deg_a[a];
    ++deg_b[b];
    adj_a[a].push_back(b);
    adj_b[b].push_back(a);
    ++taken;
  }
  for (int a = 1; a <= na; ++a) std::shuffle(adj_a[a].begin(), adj_a[a].end(), rng);
  for (int b = 1; b <= nb; ++b) std::shuffle(adj_b[b].begin(), adj_b[b].end(), rng);
  return PreferenceInstance::validate(na, nb, std::move(adj_a), std::move(adj_b));
}

// --- independent brute-force oracles (test-only, no solver code path) ---

inline bool blocks_brute(const PreferenceInstance& inst,
                         const std::vector<int>& partner_a,
                         const std::vector<int>& partner_b, int a, int b) {
  int ra = inst.rank_a(a, b);
  int cura = partner_a[a] == 0 ? 1 << 30 : inst.rank_a(a, partner_a[a]);
  int rb = inst.rank_b(b, a);
  int curb = partner_b[b] == 0 ? 1 << 30 : inst.rank_b(b, partner_b[b]);
  return ra != 0 && ra < cura && rb != 0 && rb < curb;
}

inline int count_blocking_brute(const PreferenceInstance& inst,
                                const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> pa(inst.num_a() + 1, 0), pb(inst.num_b() + 1, 0);
  for (auto [a, b] : edges) {
    pa[a] = b;
    pb[b] = a;
  }
  int cnt = 0;
  for (int a = 1; a <= inst.num_a(); ++a)
    for (int b : inst.prefs_a(a))
      if (pa[a] != b && blocks_brute(inst, pa, pb, a, b)) ++cnt;
  return cnt;
}

inline void all_matchings_brute(
    const PreferenceInstance& inst,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  int m = inst.edge_count();
  std::vector<char> used(inst.num_agents() + 1, 0);
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int idx) {
    if (idx > m) {
      fn(cur);
      return;
    }
    rec(idx + 1);
    auto [a, b] = inst.edge(idx);
    if (!used[a] && !used[inst.num_a() + b]) {
      used[a] = used[inst.num_a() + b] = 1;
      cur.emplace_back(a, b);
      rec(idx + 1);
      cur.pop_back();
      used[a] = used[inst.num_a() + b] = 0;
    }
  };
  rec(1);
}

inline int stable_size_brute(const PreferenceInstance& inst) {
  int size = -1;
  all_matchings_brute(inst, [&](const std::vector<std::pair<int, int>>& edges) {
    if (size >= 0) return;
    if (count_blocking_brute(inst, edges) == 0) size = static_cast<int>(edges.size());
  });
  // a stable matching always exists in the bipartite setting
  return size;
}

inline bool lsasm_yes_brute(const PreferenceInstance& inst, const Matching& mu, int k,
                            int q, int t) {
  bool yes = false;
  std::vector<std::pair<int, int>> mu_edges = mu.edges();
  std::sort(mu_edges.begin(), mu_edges.end());
  all_matchings_brute(inst, [&](const std::vector<std::pair<int, int>>& edges) {
    if (yes) return;
    if (static_cast<int>(edges.size()) < mu.size() + t) return;
    std::vector<std::pair<int, int>> eta = edges;
    std::sort(eta.begin(), eta.end());
    std::vector<std::pair<int, int>> diff;
    std::set_symmetric_difference(mu_edges.begin(), mu_edges.end(), eta.begin(),
                                  eta.end(), std::back_inserter(diff));
    if (static_cast<int>(diff.size()) > q) return;
    if (count_blocking_brute(inst, edges) > k) return;
    yes = true;
  });
  return yes;
}

// --- random MCQ helpers ------------------------------------------------

inline McqInstance random_mcq(std::mt19937_64& rng, int k, int part_size,
                              int edges_per_pair) {
  McqInstance mcq;
  mcq.k = k;
  mcq.parts.assign(k + 1, {});
  int id = 0;
  for (int i = 1; i <= k; ++i)
    for (int s = 0; s < part_size; ++s) mcq.parts[i].push_back(++id);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      std::vector<std::pair<int, int>> cand;
      for (int u : mcq.parts[i])
        for (int v : mcq.parts[j]) cand.emplace_back(u, v);
      std::shuffle(cand.begin(), cand.end(), rng);
      for (int e = 0; e < edges_per_pair && e < static_cast<int>(cand.size()); ++e)
        mcq.edges.push_back(cand[e]);
    }
  mcq.check();
  return mcq;
}

// k=2 with a guaranteed clique edge included.
inline McqInstance planted_mcq2(std::mt19937_64& rng, int part_size, int edges) {
  McqInstance mcq = random_mcq(rng, 2, part_size, std::max(0, edges - 1));
  int u = mcq.parts[1][rng() % part_size];
  int v = mcq.parts[2][rng() % part_size];
  if (!mcq.has_edge(u, v)) mcq.edges.emplace_back(u, v);
  mcq.check();
  return mcq;
}

}  // namespace test_support

#endif
