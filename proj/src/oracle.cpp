#include "almost_stable/oracle.hpp"

#include <algorithm>
#include <string>

#include "almost_stable/stable.hpp"

namespace almost_stable {

namespace {

void check_size(const PreferenceInstance& inst, const OracleOptions& opts) {
  if (inst.edge_count() > opts.edge_cap)
    throw Error("InstanceTooLarge",
                "instance has " + std::to_string(inst.edge_count()) +
                    " edges, oracle cap is " + std::to_string(opts.edge_cap));
}

struct MatchingDfs {
  const PreferenceInstance& inst;
  const MatchingVisitor& visit;
  std::vector<char> used;  // uid taken
  std::vector<std::pair<int, int>> picked;
  bool stopped = false;

  MatchingDfs(const PreferenceInstance& i, const MatchingVisitor& v)
      : inst(i), visit(v), used(i.num_agents() + 1, 0) {}

  void go(int idx) {
    if (stopped) return;
    if (idx > inst.edge_count()) {
      if (!visit(Matching::from_edges(inst, picked))) stopped = true;
      return;
    }
    go(idx + 1);
    if (stopped) return;
    auto [a, b] = inst.edge(idx);
    int ua = inst.uid_a(a), ub = inst.uid_b(b);
    if (!used[ua] && !used[ub]) {
      used[ua] = used[ub] = 1;
      picked.emplace_back(a, b);
      go(idx + 1);
      picked.pop_back();
      used[ua] = used[ub] = 0;
    }
  }
};

}  // namespace

void enumerate_matchings(const PreferenceInstance& inst, const MatchingVisitor& visit,
                         const OracleOptions& opts) {
  check_size(inst, opts);
  MatchingDfs dfs(inst, visit);
  dfs.go(1);
}

namespace {

struct ComponentScan {
  const PreferenceInstance& inst;
  const Matching& mu;
  int max_edges;
  std::int64_t cap;
  std::vector<AltComponent> out;
  std::vector<char> visited;
  std::vector<int> path_edges;
  std::vector<int> path_verts;

  ComponentScan(const PreferenceInstance& i, const Matching& m, int q, std::int64_t c)
      : inst(i), mu(m), max_edges(q), cap(c), visited(i.num_agents() + 1, 0) {}

  bool in_mu(int e) const {
    auto [a, b] = inst.edge(e);
    return mu.contains(a, b);
  }
  int mu_uid(int uid) const { return mu.partner_uid(inst, uid); }

  void emit() {
    AltComponent c;
    c.edges = path_edges;
    std::sort(c.edges.begin(), c.edges.end());
    c.vertices = path_verts;
    std::sort(c.vertices.begin(), c.vertices.end());
    int matched = 0;
    for (int e : c.edges)
      if (in_mu(e)) ++matched;
    c.t = static_cast<int>(c.edges.size()) - 2 * matched;
    out.push_back(std::move(c));
    if (static_cast<std::int64_t>(out.size()) > cap)
      throw Error("InstanceTooLarge", "alternating component cap exceeded");
  }

  // Paths: extend from `end`; the previous edge is in mu iff last_mu.
  void extend_path(int start, int end, bool last_mu) {
    bool end_ok = last_mu || mu_uid(end) == 0;
    if (end_ok && start < end) emit();
    if (static_cast<int>(path_edges.size()) >= max_edges) return;
    if (last_mu) {
      for (int e : inst.incident_edges(end)) {
        if (in_mu(e)) continue;
        int w = inst.edge_other(e, end);
        if (visited[w]) continue;
        visited[w] = 1;
        path_edges.push_back(e);
        path_verts.push_back(w);
        extend_path(start, w, false);
        path_verts.pop_back();
        path_edges.pop_back();
        visited[w] = 0;
      }
    } else {
      int w = mu_uid(end);
      if (w != 0 && !visited[w]) {
        int e = mu_edge_at(end);
        visited[w] = 1;
        path_edges.push_back(e);
        path_verts.push_back(w);
        extend_path(start, w, true);
        path_verts.pop_back();
        path_edges.pop_back();
        visited[w] = 0;
      }
    }
  }

  int mu_edge_at(int uid) const {
    int w = mu_uid(uid);
    int a = inst.uid_is_a(uid) ? uid : inst.uid_index(w);
    int b = inst.uid_is_a(uid) ? inst.uid_index(w) : inst.uid_index(uid);
    return inst.edge_index(a, b);
  }

  // Cycles anchored at their minimum vertex, traversed mu-edge first.
  void extend_cycle(int anchor, int end, bool last_mu) {
    if (static_cast<int>(path_edges.size()) >= max_edges) return;
    if (last_mu) {
      for (int e : inst.incident_edges(end)) {
        if (in_mu(e)) continue;
        int w = inst.edge_other(e, end);
        if (w == anchor && path_edges.size() >= 3) {
          path_edges.push_back(e);
          emit();
          path_edges.pop_back();
          continue;
        }
        if (w <= anchor || visited[w]) continue;
        visited[w] = 1;
        path_edges.push_back(e);
        path_verts.push_back(w);
        extend_cycle(anchor, w, false);
        path_verts.pop_back();
        path_edges.pop_back();
        visited[w] = 0;
      }
    } else {
      int w = mu_uid(end);
      if (w != 0 && w > anchor && !visited[w]) {
        int e = mu_edge_at(end);
        visited[w] = 1;
        path_edges.push_back(e);
        path_verts.push_back(w);
        extend_cycle(anchor, w, true);
        path_verts.pop_back();
        path_edges.pop_back();
        visited[w] = 0;
      }
    }
  }

  void run() {
    int n = inst.num_agents();
    for (int v0 = 1; v0 <= n; ++v0) {
      // Paths starting at v0.
      for (int e : inst.incident_edges(v0)) {
        bool emu = in_mu(e);
        if (!emu && mu_uid(v0) != 0) continue;  // invalid start forever
        int w = inst.edge_other(e, v0);
        visited[v0] = visited[w] = 1;
        path_edges.assign(1, e);
        path_verts.assign({v0, w});
        extend_path(v0, w, emu);
        visited[v0] = visited[w] = 0;
      }
      // Cycles anchored at v0, first edge the mu-edge of v0.
      int w = mu_uid(v0);
      if (w != 0 && w > v0) {
        int e = mu_edge_at(v0);
        visited[v0] = visited[w] = 1;
        path_edges.assign(1, e);
        path_verts.assign({v0, w});
        extend_cycle(v0, w, true);
        visited[v0] = visited[w] = 0;
      }
    }
    std::sort(out.begin(), out.end(), [](const AltComponent& x, const AltComponent& y) {
      return x.edges < y.edges;
    });
  }
};

Matching apply_components(const PreferenceInstance& inst, const Matching& mu,
                          const std::vector<AltComponent>& comps,
                          const std::vector<int>& chosen) {
  std::vector<char> toggle(inst.edge_count() + 1, 0);
  for (int ci : chosen)
    for (int e : comps[ci].edges) toggle[e] = 1;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : mu.edges())
    if (!toggle[inst.edge_index(a, b)]) edges.emplace_back(a, b);
  for (int e = 1; e <= inst.edge_count(); ++e) {
    auto [a, b] = inst.edge(e);
    if (toggle[e] && !mu.contains(a, b)) edges.emplace_back(a, b);
  }
  return Matching::from_edges(inst, edges);
}

std::vector<std::vector<char>> conflict_table(const std::vector<AltComponent>& comps) {
  std::size_t n = comps.size();
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& vi = comps[i].vertices;
      const auto& vj = comps[j].vertices;
      bool hit = false;
      std::size_t x = 0, y = 0;
      while (x < vi.size() && y < vj.size()) {
        if (vi[x] == vj[y]) {
          hit = true;
          break;
        }
        if (vi[x] < vj[y]) ++x;
        else ++y;
      }
      conflict[i][j] = conflict[j][i] = hit;
    }
  return conflict;
}

}  // namespace

std::vector<AltComponent> alternating_components(const PreferenceInstance& inst,
                                                 const Matching& mu, int max_edges,
                                                 std::int64_t component_cap) {
  ComponentScan scan(inst, mu, max_edges, component_cap);
  scan.run();
  return scan.out;
}

void enumerate_matchings_near(const PreferenceInstance& inst, const Matching& mu,
                              int q, const MatchingVisitor& visit,
                              const OracleOptions& opts) {
  auto comps = alternating_components(inst, mu, q, opts.component_cap);
  auto conflict = conflict_table(comps);
  int n = static_cast<int>(comps.size());
  std::vector<int> chosen;
  int budget = q;
  bool stopped = false;

  std::function<void(int)> rec = [&](int start) {
    if (stopped) return;
    if (!visit(apply_components(inst, mu, comps, chosen))) {
      stopped = true;
      return;
    }
    for (int j = start; j < n && !stopped; ++j) {
      int qj = static_cast<int>(comps[j].edges.size());
      if (qj > budget) continue;
      bool ok = true;
      for (int c : chosen)
        if (conflict[c][j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(j);
      budget -= qj;
      rec(j + 1);
      budget += qj;
      chosen.pop_back();
    }
  };
  rec(0);
}

std::optional<Matching> oracle_asm(const PreferenceInstance& inst, int k, int t,
                                   const OracleOptions& opts) {
  check_size(inst, opts);
  if (k < 0 || t < 0) throw InputError("InvalidParameters", "k, t must be non-negative");
  int target = gale_shapley(inst, Side::A).size() + t;

  int m = inst.edge_count();
  std::vector<char> used(inst.num_agents() + 1, 0);
  std::vector<std::pair<int, int>> picked;
  std::optional<Matching> witness;

  std::function<void(int)> rec = [&](int idx) {
    if (witness) return;
    if (static_cast<int>(picked.size()) + (m - idx + 1) < target) return;
    if (idx > m) {
      Matching cand = Matching::from_edges(inst, picked);
      if (cand.size() >= target &&
          static_cast<int>(blocking_edges(inst, cand).size()) <= k)
        witness = std::move(cand);
      return;
    }
    auto [a, b] = inst.edge(idx);
    int ua = inst.uid_a(a), ub = inst.uid_b(b);
    if (!used[ua] && !used[ub]) {
      used[ua] = used[ub] = 1;
      picked.emplace_back(a, b);
      rec(idx + 1);
      picked.pop_back();
      used[ua] = used[ub] = 0;
    }
    if (!witness) rec(idx + 1);
  };
  rec(1);
  return witness;
}

std::optional<Matching> oracle_lsasm(const PreferenceInstance& inst, const Matching& mu,
                                     int k, int q, int t, const OracleOptions& opts) {
  if (k < 0 || q < 0 || t < 0)
    throw InputError("InvalidParameters", "k, q, t must be non-negative");
  if (!is_stable(inst, mu))
    throw Error("MuNotStable", "the reference matching has a blocking edge");
  if (t <= 0) return mu;
  check_size(inst, opts);

  if (opts.full_enumeration) {
    std::optional<Matching> witness;
    enumerate_matchings(
        inst,
        [&](const Matching& eta) {
          if (eta.size() < mu.size() + t) return true;
          if (static_cast<int>(symmetric_difference(mu, eta).size()) > q) return true;
          if (static_cast<int>(blocking_edges(inst, eta).size()) > k) return true;
          witness = eta;
          return false;
        },
        opts);
    return witness;
  }

  auto comps = alternating_components(inst, mu, q, opts.component_cap);
  auto conflict = conflict_table(comps);
  int n = static_cast<int>(comps.size());
  std::vector<int> chosen;
  int budget = q, gain = 0;
  std::optional<Matching> witness;

  std::function<void(int)> rec = [&](int start) {
    if (witness) return;
    // Each extra unit of gain needs an augmenting path of >= 3 edges.
    if (gain + budget / 3 < t) return;
    if (gain >= t) {
      Matching cand = apply_components(inst, mu, comps, chosen);
      if (static_cast<int>(blocking_edges(inst, cand).size()) <= k) {
        witness = std::move(cand);
        return;
      }
    }
    for (int j = start; j < n && !witness; ++j) {
      int qj = static_cast<int>(comps[j].edges.size());
      if (qj > budget) continue;
      bool ok = true;
      for (int c : chosen)
        if (conflict[c][j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(j);
      budget -= qj;
      gain += comps[j].t;
      rec(j + 1);
      gain -= comps[j].t;
      budget += qj;
      chosen.pop_back();
    }
  };
  rec(0);
  return witness;
}

}  // namespace almost_stable
