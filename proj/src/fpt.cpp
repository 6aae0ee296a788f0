#include "almost_stable/fpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "almost_stable/usfam.hpp"

namespace almost_stable {

LsAsmQuery LsAsmQuery::make(PreferenceInstance instance, Matching mu, int k,
                            int q, int t) {
  if (k < 0 || q < 0 || t < 0)
    throw InputError("InvalidParameters", "k, q, t must be non-negative");
  if (!is_stable(instance, mu))
    throw Error("MuNotStable", "the reference matching has a blocking edge");
  LsAsmQuery query;
  query.instance = std::move(instance);
  query.mu = std::move(mu);
  query.k = k;
  query.q = q;
  query.t = t;
  int n = query.instance.num_agents();
  query.mu_partner.assign(n + 1, 0);
  for (int uid = 1; uid <= n; ++uid)
    query.mu_partner[uid] = query.mu.partner_uid(query.instance, uid);
  query.edge_in_mu.assign(query.instance.edge_count() + 1, 0);
  for (auto [a, b] : query.mu.edges())
    query.edge_in_mu[query.instance.edge_index(a, b)] = 1;
  return query;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int coin_color(std::uint64_t seed, std::uint64_t repetition, std::uint64_t domain,
               std::uint64_t index) {
  std::uint64_t h = mix64(mix64(mix64(seed ^ domain) ^ repetition) ^ index);
  return 1 + static_cast<int>(h & 1);
}

std::vector<std::vector<int>> phase1(const LsAsmQuery& query,
                                     const std::vector<std::uint8_t>& vertex_color) {
  const auto& inst = query.instance;
  int n = inst.num_agents();
  std::vector<int> comp_of(n + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int root = 1; root <= n; ++root) {
    if (vertex_color[root] != 1 || comp_of[root] >= 0) continue;
    int id = static_cast<int>(comps.size());
    std::vector<int> verts{root};
    comp_of[root] = id;
    for (std::size_t qi = 0; qi < verts.size(); ++qi) {
      int u = verts[qi];
      for (int e : inst.incident_edges(u)) {
        int v = inst.edge_other(e, u);
        if (vertex_color[v] == 1 && comp_of[v] < 0) {
          comp_of[v] = id;
          verts.push_back(v);
        }
      }
    }
    std::sort(verts.begin(), verts.end());
    comps.push_back(std::move(verts));
  }
  // Reduction Rule 1.
  std::vector<std::vector<int>> surviving;
  for (auto& comp : comps) {
    bool ok = true;
    for (int u : comp) {
      int p = query.mu_partner[u];
      if (p != 0 && (vertex_color[p] != 1 || comp_of[p] != comp_of[u])) {
        ok = false;
        break;
      }
    }
    if (ok) surviving.push_back(std::move(comp));
  }
  return surviving;
}

std::vector<ClassifiedComponent> phase2(const LsAsmQuery& query,
                                        const std::vector<std::vector<int>>& g1,
                                        const std::vector<std::uint8_t>& edge_color) {
  const auto& inst = query.instance;
  std::vector<char> in_comp(inst.num_agents() + 1, 0);
  std::vector<ClassifiedComponent> kept;
  for (const auto& comp : g1) {
    for (int u : comp) in_comp[u] = 1;
    std::vector<int> colored1;
    for (int u : comp)
      for (int e : inst.incident_edges(u)) {
        int v = inst.edge_other(e, u);
        if (u < v && in_comp[v] && edge_color[e] == 1) colored1.push_back(e);
      }
    for (int u : comp) in_comp[u] = 0;
    std::sort(colored1.begin(), colored1.end());
    if (colored1.empty()) continue;
    auto classified = classify_components(inst, query.mu, colored1);
    if (classified.size() == 1 &&
        classified[0].structure.kind != ComponentKind::Invalid)
      kept.push_back(std::move(classified[0]));
  }
  return kept;
}

std::vector<ComponentProfile> phase3_profiles(const LsAsmQuery& query,
                                              const std::vector<ClassifiedComponent>& comps,
                                              bool count_all_blocking) {
  const auto& inst = query.instance;
  std::vector<char> in_c(inst.num_agents() + 1, 0);
  std::vector<ComponentProfile> profiles;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    for (int u : comp.vertices) in_c[u] = 1;

    std::vector<std::pair<int, int>> probe;
    std::vector<char> edge_in_comp(inst.edge_count() + 1, 0);
    for (int e : comp.edges) edge_in_comp[e] = 1;
    for (int e : comp.edges)
      if (!query.edge_in_mu[e]) probe.push_back(inst.edge(e));
    for (auto [a, b] : query.mu.edges()) {
      int e = inst.edge_index(a, b);
      if (edge_in_comp[e]) continue;
      bool adjacent = false;
      for (int uid : {inst.uid_a(a), inst.uid_b(b)}) {
        for (int f : inst.incident_edges(uid))
          if (in_c[inst.edge_other(f, uid)]) {
            adjacent = true;
            break;
          }
        if (adjacent) break;
      }
      if (adjacent) probe.emplace_back(a, b);
    }
    Matching eta_i = Matching::from_edges(inst, probe);

    int k_i = 0;
    for (auto [a, b] : blocking_edges(inst, eta_i)) {
      if (count_all_blocking || in_c[inst.uid_a(a)] || in_c[inst.uid_b(b)]) ++k_i;
    }

    ComponentProfile p;
    p.component_id = static_cast<int>(ci);
    p.q_i = comp.structure.edge_count;
    p.t_i = p.q_i - 2 * comp.structure.matched_edge_count;
    p.k_i = k_i;
    p.structure = comp.structure;
    p.eta_i = std::move(eta_i);
    profiles.push_back(std::move(p));

    for (int u : comp.vertices) in_c[u] = 0;
  }
  return profiles;
}

std::optional<std::vector<int>> size_fitting(const std::vector<ComponentProfile>& profiles,
                                             int k, int q, int t,
                                             std::int64_t cell_cap) {
  if (t <= 0) return std::vector<int>{};
  KnapsackInstance kp;
  std::vector<int> positions;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].t_i != 1) continue;
    kp.items.push_back({profiles[i].k_i, profiles[i].q_i, profiles[i].t_i});
    positions.push_back(static_cast<int>(i));
  }
  kp.c1 = k;
  kp.c2 = q;
  kp.p = t;
  auto z = solve_2dkp(kp, cell_cap);
  if (!z) return std::nullopt;
  std::vector<int> selected;
  for (int idx : *z) selected.push_back(positions[idx - 1]);
  return selected;
}

Matching assemble_eta(const LsAsmQuery& query,
                      const std::vector<ClassifiedComponent>& comps,
                      const std::vector<ComponentProfile>& profiles,
                      const std::vector<int>& selection) {
  const auto& inst = query.instance;
  std::vector<char> selected_vertex(inst.num_agents() + 1, 0);
  std::vector<std::pair<int, int>> edges;
  std::int64_t sum_k = 0, sum_q = 0, sum_t = 0;
  for (int pi : selection) {
    const auto& prof = profiles[pi];
    const auto& comp = comps[prof.component_id];
    sum_k += prof.k_i;
    sum_q += prof.q_i;
    sum_t += prof.t_i;
    for (int u : comp.vertices) selected_vertex[u] = 1;
    for (int e : comp.edges)
      if (!query.edge_in_mu[e]) edges.push_back(inst.edge(e));
  }
  for (auto [a, b] : query.mu.edges())
    if (!selected_vertex[inst.uid_a(a)] && !selected_vertex[inst.uid_b(b)])
      edges.emplace_back(a, b);

  Matching eta = [&] {
    try {
      return Matching::from_edges(inst, edges);
    } catch (const Error& e) {
      throw InternalError("AssemblyInvariantViolation",
                          std::string("assembled edge set is not a matching: ") + e.what());
    }
  }();

  if (eta.size() < query.mu.size() + query.t)
    throw InternalError("AssemblyInvariantViolation", "size gain below t");
  auto diff = symmetric_difference(query.mu, eta);
  if (static_cast<int>(diff.size()) > query.q || static_cast<std::int64_t>(diff.size()) != sum_q)
    throw InternalError("AssemblyInvariantViolation", "symmetric difference bound violated");
  auto bp = blocking_edges(inst, eta);
  if (static_cast<std::int64_t>(bp.size()) > std::min<std::int64_t>(query.k, sum_k))
    throw InternalError("AssemblyInvariantViolation", "blocking edge bound violated");
  (void)sum_t;
  return eta;
}

std::int64_t default_repetitions(const LsAsmQuery& query, double delta,
                                 std::int64_t cap) {
  int d = query.instance.max_degree();
  long long exponent = 3LL * query.q + 6LL * d * query.q;
  std::int64_t lnfac = static_cast<std::int64_t>(std::ceil(std::log(1.0 / delta)));
  if (lnfac < 1) lnfac = 1;
  if (exponent >= 62) return cap;
  std::int64_t reps = (std::int64_t{1} << exponent);
  if (reps > cap / lnfac) return cap;
  return std::min(cap, reps * lnfac);
}

std::optional<Matching> run_phases(const LsAsmQuery& query,
                                   const SeparationColoring& coloring,
                                   const SolveOptions& opts, SolveStats* stats) {
  auto g1 = phase1(query, coloring.vertex);
  if (g1.empty()) return std::nullopt;
  auto comps = phase2(query, g1, coloring.edge);
  if (stats) stats->components_seen += static_cast<std::int64_t>(comps.size());
  if (comps.empty()) return std::nullopt;
  auto profiles = phase3_profiles(query, comps, opts.count_all_blocking);
  if (opts.trace && *opts.trace) (*opts.trace)(comps, profiles);
  std::int64_t cells = opts.cell_cap > 0 ? opts.cell_cap : knapsack_cell_cap();
  if (stats)
    stats->knapsack_cells =
        std::max<std::int64_t>(stats->knapsack_cells,
                               static_cast<std::int64_t>(query.k + 1) * (query.q + 1));
  auto selection = size_fitting(profiles, query.k, query.q, query.t, cells);
  if (!selection) return std::nullopt;
  return assemble_eta(query, comps, profiles, *selection);
}

SolveResult solve_randomized(const LsAsmQuery& query, const SolveOptions& opts) {
  SolveResult res;
  res.stats.knapsack_cells = 0;
  if (query.t <= 0) {
    res.yes = true;
    res.eta = query.mu;
    return res;
  }
  std::int64_t theoretical = default_repetitions(query, opts.delta,
                                                 std::numeric_limits<std::int64_t>::max());
  std::int64_t budget = opts.repetitions ? *opts.repetitions
                                         : std::min(theoretical, opts.repetition_cap);
  if (budget < 1) budget = 1;

  const auto& inst = query.instance;
  int n = inst.num_agents();
  int m = inst.edge_count();
  SeparationColoring coloring;
  coloring.vertex.assign(n + 1, 0);
  coloring.edge.assign(m + 1, 0);
  for (std::int64_t rep = 1; rep <= budget; ++rep) {
    for (int uid = 1; uid <= n; ++uid)
      coloring.vertex[uid] = static_cast<std::uint8_t>(
          coin_color(opts.seed, static_cast<std::uint64_t>(rep), kVertexDomain,
                     static_cast<std::uint64_t>(uid)));
    for (int e = 1; e <= m; ++e)
      coloring.edge[e] = static_cast<std::uint8_t>(
          coin_color(opts.seed, static_cast<std::uint64_t>(rep), kEdgeDomain,
                     static_cast<std::uint64_t>(e)));
    res.stats.repetitions_used = rep;
    if (auto eta = run_phases(query, coloring, opts, &res.stats)) {
      res.yes = true;
      res.eta = std::move(*eta);
      return res;
    }
  }
  res.stats.repetition_cap_exceeded = !opts.repetitions && theoretical > budget;
  return res;
}

namespace {

// Size-then-lex enumeration of subsets of `universe` with size <= max_size.
// Stops early when fn returns true.
bool for_each_subset(const std::vector<int>& universe, int max_size,
                     const std::function<bool(const std::vector<int>&)>& fn) {
  int n = static_cast<int>(universe.size());
  max_size = std::min(max_size, n);
  std::vector<int> chosen;
  for (int s = 0; s <= max_size; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      chosen.clear();
      for (int i : idx) chosen.push_back(universe[i]);
      if (fn(chosen)) return true;
      if (s == 0) break;
      int i = s - 1;
      while (i >= 0 && idx[i] == n - (s - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

std::int64_t subset_count(int n, int max_size) {
  std::int64_t total = 0;
  for (int s = 0; s <= std::min(n, max_size); ++s) {
    std::int64_t c = binomial(n, s);
    if (c == std::numeric_limits<std::int64_t>::max() ||
        total > std::numeric_limits<std::int64_t>::max() - c)
      return std::numeric_limits<std::int64_t>::max();
    total += c;
  }
  return total;
}

}  // namespace

SolveResult solve_derandomized(const LsAsmQuery& query, const SolveOptions& opts) {
  SolveResult res;
  if (query.t <= 0) {
    res.yes = true;
    res.eta = query.mu;
    return res;
  }
  const auto& inst = query.instance;
  int n = inst.num_agents();
  int m = inst.edge_count();
  int p_vertex = std::min(2 * query.q, n);
  int p_edge = std::min(query.q, m);

  std::int64_t fam_v = subset_count(n, p_vertex);
  std::int64_t fam_e = subset_count(m, p_edge);
  res.stats.family_vertex_size = fam_v;
  res.stats.family_edge_size = fam_e;
  if (fam_v > opts.family_pair_cap || fam_e > opts.family_pair_cap ||
      (fam_e > 0 && fam_v > opts.family_pair_cap / fam_e))
    throw Error("FamilyTooLarge",
                "bounded family pair count exceeds cap; use the randomized mode");

  std::vector<int> agents(n);
  for (int i = 0; i < n; ++i) agents[i] = i + 1;

  SeparationColoring coloring;
  coloring.vertex.assign(n + 1, 2);
  coloring.edge.assign(m + 1, 2);

  bool stopped = for_each_subset(agents, p_vertex, [&](const std::vector<int>& f) {
    for (int uid = 1; uid <= n; ++uid) coloring.vertex[uid] = 2;
    for (int uid : f) coloring.vertex[uid] = 1;
    auto g1 = phase1(query, coloring.vertex);
    if (g1.empty()) return false;
    // Edges of G1: both endpoints in a surviving component.
    std::vector<char> alive(n + 1, 0);
    for (const auto& comp : g1)
      for (int u : comp) alive[u] = 1;
    std::vector<int> g1_edges;
    for (int e = 1; e <= m; ++e)
      if (alive[inst.edge_uid_a(e)] && alive[inst.edge_uid_b(e)]) g1_edges.push_back(e);
    if (g1_edges.empty()) return false;

    // The inner loop enumerates the distinct restrictions of the global
    // bounded edge family to E(G1): exactly the <=q subsets of E(G1).
    return for_each_subset(g1_edges, p_edge, [&](const std::vector<int>& s) {
      if (s.empty()) return false;
      for (int e : g1_edges) coloring.edge[e] = 2;
      for (int e : s) coloring.edge[e] = 1;
      ++res.stats.pairs_tried;
      auto comps = phase2(query, g1, coloring.edge);
      res.stats.components_seen += static_cast<std::int64_t>(comps.size());
      if (comps.empty()) return false;
      auto profiles = phase3_profiles(query, comps, opts.count_all_blocking);
      if (opts.trace && *opts.trace) (*opts.trace)(comps, profiles);
      std::int64_t cells = opts.cell_cap > 0 ? opts.cell_cap : knapsack_cell_cap();
      auto selection = size_fitting(profiles, query.k, query.q, query.t, cells);
      if (!selection) return false;
      res.eta = assemble_eta(query, comps, profiles, *selection);
      res.yes = true;
      return true;
    });
  });
  (void)stopped;
  return res;
}

}  // namespace almost_stable
