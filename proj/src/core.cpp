#include "almost_stable/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace almost_stable {

PreferenceInstance PreferenceInstance::validate(
    int n_a, int n_b, std::vector<std::vector<int>> prefs_a,
    std::vector<std::vector<int>> prefs_b) {
  if (n_a < 0 || n_b < 0) throw InputError("IndexOutOfRange", "negative side size");
  // Accept lists either 0-based (one per agent) or already shifted to 1-based.
  if (static_cast<int>(prefs_a.size()) == n_a)
    prefs_a.insert(prefs_a.begin(), std::vector<int>{});
  if (static_cast<int>(prefs_b.size()) == n_b)
    prefs_b.insert(prefs_b.begin(), std::vector<int>{});
  if (static_cast<int>(prefs_a.size()) != n_a + 1 ||
      static_cast<int>(prefs_b.size()) != n_b + 1)
    throw InputError("IndexOutOfRange", "preference list count mismatch");

  PreferenceInstance inst;
  inst.n_a_ = n_a;
  inst.n_b_ = n_b;
  inst.prefs_a_ = std::move(prefs_a);
  inst.prefs_b_ = std::move(prefs_b);
  inst.rank_a_.assign(n_a + 1, std::vector<int>(n_b + 1, 0));
  inst.rank_b_.assign(n_b + 1, std::vector<int>(n_a + 1, 0));

  for (int a = 1; a <= n_a; ++a) {
    int r = 0;
    for (int b : inst.prefs_a_[a]) {
      if (b < 1 || b > n_b)
        throw InputError("IndexOutOfRange",
                         "a " + std::to_string(a) + " lists b " + std::to_string(b));
      if (inst.rank_a_[a][b] != 0)
        throw InputError("DuplicateEntry",
                         "a " + std::to_string(a) + " lists b " + std::to_string(b) + " twice");
      inst.rank_a_[a][b] = ++r;
    }
  }
  for (int b = 1; b <= n_b; ++b) {
    int r = 0;
    for (int a : inst.prefs_b_[b]) {
      if (a < 1 || a > n_a)
        throw InputError("IndexOutOfRange",
                         "b " + std::to_string(b) + " lists a " + std::to_string(a));
      if (inst.rank_b_[b][a] != 0)
        throw InputError("DuplicateEntry",
                         "b " + std::to_string(b) + " lists a " + std::to_string(a) + " twice");
      inst.rank_b_[b][a] = ++r;
    }
  }
  for (int a = 1; a <= n_a; ++a)
    for (int b : inst.prefs_a_[a])
      if (inst.rank_b_[b][a] == 0)
        throw InputError("NonMutualPreference",
                         "a " + std::to_string(a) + " lists b " + std::to_string(b) +
                             " but not vice versa");
  for (int b = 1; b <= n_b; ++b)
    for (int a : inst.prefs_b_[b])
      if (inst.rank_a_[a][b] == 0)
        throw InputError("NonMutualPreference",
                         "b " + std::to_string(b) + " lists a " + std::to_string(a) +
                             " but not vice versa");

  inst.max_degree_ = 0;
  for (int a = 1; a <= n_a; ++a)
    inst.max_degree_ = std::max(inst.max_degree_, static_cast<int>(inst.prefs_a_[a].size()));
  for (int b = 1; b <= n_b; ++b)
    inst.max_degree_ = std::max(inst.max_degree_, static_cast<int>(inst.prefs_b_[b].size()));

  inst.edge_index_.assign(n_a + 1, std::vector<int>(n_b + 1, 0));
  inst.incident_.assign(n_a + n_b + 1, {});
  for (int a = 1; a <= n_a; ++a) {
    for (int b : inst.prefs_a_[a]) {
      inst.edges_.emplace_back(a, b);
      int idx = static_cast<int>(inst.edges_.size());
      inst.edge_index_[a][b] = idx;
      inst.incident_[inst.uid_a(a)].push_back(idx);
      inst.incident_[inst.uid_b(b)].push_back(idx);
    }
  }
  return inst;
}

int PreferenceInstance::edge_index(int a, int b) const {
  if (a < 1 || a > n_a_ || b < 1 || b > n_b_) return 0;
  return edge_index_[a][b];
}

Matching Matching::from_edges(const PreferenceInstance& inst,
                              const std::vector<std::pair<int, int>>& edges) {
  Matching m;
  m.partner_a_.assign(inst.num_a() + 1, kUnmatched);
  m.partner_b_.assign(inst.num_b() + 1, kUnmatched);
  std::vector<std::pair<int, int>> sorted;
  sorted.reserve(edges.size());
  for (auto [a, b] : edges) {
    int idx = inst.edge_index(a, b);
    if (idx == 0)
      throw InputError("UnacceptableEdge", "edge (" + std::to_string(a) + "," +
                                               std::to_string(b) + ") is not in the instance");
    if (m.partner_a_[a] != kUnmatched || m.partner_b_[b] != kUnmatched)
      throw InputError("AgentReused", "agent appears in two matching edges at (" +
                                          std::to_string(a) + "," + std::to_string(b) + ")");
    m.partner_a_[a] = b;
    m.partner_b_[b] = a;
    sorted.emplace_back(a, b);
  }
  std::sort(sorted.begin(), sorted.end(),
            [&inst](const auto& x, const auto& y) {
              return inst.edge_index(x.first, x.second) <
                     inst.edge_index(y.first, y.second);
            });
  m.edges_ = std::move(sorted);
  return m;
}

Matching Matching::empty(const PreferenceInstance& inst) {
  return from_edges(inst, {});
}

bool a_prefers(const PreferenceInstance& inst, const Matching& m, int a, int b) {
  int cur = m.partner_a(a);
  int cur_rank = cur == kUnmatched ? kUnmatchedRank : inst.rank_a(a, cur);
  int r = inst.rank_a(a, b);
  return r != 0 && r < cur_rank;
}

bool b_prefers(const PreferenceInstance& inst, const Matching& m, int b, int a) {
  int cur = m.partner_b(b);
  int cur_rank = cur == kUnmatched ? kUnmatchedRank : inst.rank_b(b, cur);
  int r = inst.rank_b(b, a);
  return r != 0 && r < cur_rank;
}

std::vector<std::pair<int, int>> blocking_edges(const PreferenceInstance& inst,
                                                const Matching& m) {
  std::vector<std::pair<int, int>> out;
  for (int idx = 1; idx <= inst.edge_count(); ++idx) {
    auto [a, b] = inst.edge(idx);
    if (m.contains(a, b)) continue;
    if (a_prefers(inst, m, a, b) && b_prefers(inst, m, b, a)) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::pair<int, int>> symmetric_difference(const Matching& mu,
                                                      const Matching& eta) {
  std::vector<std::pair<int, int>> out;
  const auto& x = mu.edges();
  const auto& y = eta.edges();
  std::size_t i = 0, j = 0;
  auto less = [](const std::pair<int, int>& p, const std::pair<int, int>& q) {
    return p < q;
  };
  std::vector<std::pair<int, int>> xs(x), ys(y);
  std::sort(xs.begin(), xs.end(), less);
  std::sort(ys.begin(), ys.end(), less);
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i] < ys[j]))
      out.push_back(xs[i++]);
    else if (i == xs.size() || ys[j] < xs[i])
      out.push_back(ys[j++]);
    else {
      ++i;
      ++j;
    }
  }
  return out;
}

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::AugmentingPath: return "AugmentingPath";
    case ComponentKind::AlternatingPathNonAugmenting: return "AlternatingPathNonAugmenting";
    case ComponentKind::AlternatingCycle: return "AlternatingCycle";
    case ComponentKind::Invalid: return "Invalid";
  }
  return "?";
}

std::vector<ClassifiedComponent> classify_components(
    const PreferenceInstance& inst, const Matching& mu,
    const std::vector<int>& edge_subset) {
  int n = inst.num_agents();
  std::vector<std::vector<std::pair<int, int>>> adj(n + 1);
  std::vector<char> present(n + 1, 0);
  std::vector<int> verts;
  std::vector<int> subset(edge_subset);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (int idx : subset) {
    if (idx < 1 || idx > inst.edge_count())
      throw InputError("IndexOutOfRange", "edge index " + std::to_string(idx));
    int u = inst.edge_uid_a(idx);
    int v = inst.edge_uid_b(idx);
    adj[u].emplace_back(idx, v);
    adj[v].emplace_back(idx, u);
    for (int w : {u, v})
      if (!present[w]) {
        present[w] = 1;
        verts.push_back(w);
      }
  }
  std::sort(verts.begin(), verts.end());

  auto in_mu = [&](int idx) {
    auto [a, b] = inst.edge(idx);
    return mu.contains(a, b);
  };

  std::vector<char> seen(n + 1, 0);
  std::vector<ClassifiedComponent> out;
  for (int root : verts) {
    if (seen[root]) continue;
    // Gather the component by BFS.
    std::vector<int> comp_verts;
    std::vector<int> comp_edges;
    seen[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      comp_verts.push_back(u);
      for (auto [idx, v] : adj[u]) {
        if (u < v) comp_edges.push_back(idx);
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    std::sort(comp_verts.begin(), comp_verts.end());
    std::sort(comp_edges.begin(), comp_edges.end());
    comp_edges.erase(std::unique(comp_edges.begin(), comp_edges.end()), comp_edges.end());

    ClassifiedComponent cc;
    cc.edges = comp_edges;
    cc.vertices = comp_verts;
    cc.structure.edge_count = static_cast<int>(comp_edges.size());
    cc.structure.matched_edge_count = 0;
    for (int idx : comp_edges)
      if (in_mu(idx)) ++cc.structure.matched_edge_count;

    int nv = static_cast<int>(comp_verts.size());
    int ne = static_cast<int>(comp_edges.size());
    int max_deg = 0, deg1 = 0;
    for (int v : comp_verts) {
      int d = static_cast<int>(adj[v].size());
      max_deg = std::max(max_deg, d);
      if (d == 1) ++deg1;
    }

    auto walk_ok = [&](int start, int start_edge) {
      // Walks the path/cycle checking strict alternation; returns the
      // final edge index, or 0 on alternation failure.
      int prev_edge = start_edge;
      int prev_in = in_mu(start_edge);
      int cur = inst.edge_other(start_edge, start);
      int steps = 1;
      while (steps < ne) {
        int next_edge = 0;
        for (auto [idx, w] : adj[cur])
          if (idx != prev_edge) {
            next_edge = idx;
            break;
          }
        if (next_edge == 0) return 0;
        if (in_mu(next_edge) == prev_in) return 0;
        prev_in = in_mu(next_edge);
        cur = inst.edge_other(next_edge, cur);
        prev_edge = next_edge;
        ++steps;
      }
      return prev_edge;
    };

    cc.structure.kind = ComponentKind::Invalid;
    if (max_deg <= 2 && deg1 == 2 && ne == nv - 1) {
      // Candidate path: pick the smaller endpoint deterministically.
      int start = 0;
      for (int v : comp_verts)
        if (adj[v].size() == 1) {
          start = v;
          break;
        }
      int first_edge = adj[start][0].first;
      int last_edge = walk_ok(start, first_edge);
      if (last_edge != 0) {
        int end = 0;
        for (int v : comp_verts)
          if (adj[v].size() == 1 && v != start) end = v;
        bool ok = true;
        // Endpoints whose incident edge is outside mu must be mu-free.
        if (!in_mu(first_edge) && mu.partner_uid(inst, start) != 0) ok = false;
        if (!in_mu(last_edge) && mu.partner_uid(inst, end) != 0) ok = false;
        if (ok) {
          if (!in_mu(first_edge) && !in_mu(last_edge))
            cc.structure.kind = ComponentKind::AugmentingPath;
          else
            cc.structure.kind = ComponentKind::AlternatingPathNonAugmenting;
        }
      }
    } else if (max_deg == 2 && deg1 == 0 && ne == nv) {
      // Candidate cycle: alternation forces an even cycle.
      int start = comp_verts[0];
      int e0 = adj[start][0].first;
      int e1 = adj[start][1].first;
      if (in_mu(e0) != in_mu(e1)) {
        int last_edge = walk_ok(start, e0);
        // walk_ok traverses ne edges in a cycle back to start; alternation
        // between last edge and e0 must also hold.
        if (last_edge != 0 && in_mu(last_edge) != in_mu(e0))
          cc.structure.kind = ComponentKind::AlternatingCycle;
      }
    }
    out.push_back(std::move(cc));
  }
  return out;
}

// --- Text formats -----------------------------------------------------

namespace {

// Strips comments/blank lines; returns logical lines.
std::vector<std::string> logical_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) lines.push_back(line);
  }
  return lines;
}

}  // namespace

PreferenceInstance parse_instance(std::istream& in) {
  auto lines = logical_lines(in);
  if (lines.empty()) throw InputError("BadInstanceFile", "empty instance file");
  std::istringstream head(lines[0]);
  std::string kw;
  int n_a = -1, n_b = -1;
  head >> kw >> n_a >> n_b;
  if (kw != "instance" || n_a < 0 || n_b < 0)
    throw InputError("BadInstanceFile", "expected 'instance <nA> <nB>'");
  if (static_cast<int>(lines.size()) != 1 + n_a + n_b)
    throw InputError("BadInstanceFile",
                     "expected " + std::to_string(n_a + n_b) + " list lines, got " +
                         std::to_string(lines.size() - 1));
  std::vector<std::vector<int>> pa(n_a + 1), pb(n_b + 1);
  std::vector<char> seen_a(n_a + 1, 0), seen_b(n_b + 1, 0);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::istringstream ls(lines[li]);
    std::string side, colon;
    int idx;
    if (!(ls >> side >> idx >> colon) || (side != "a" && side != "b") || colon != ":")
      throw InputError("BadInstanceFile", "expected 'a|b <i> : ...' at line: " + lines[li]);
    std::vector<int> prefs;
    int v;
    while (ls >> v) prefs.push_back(v);
    if (side == "a") {
      if (idx < 1 || idx > n_a) throw InputError("IndexOutOfRange", "a " + std::to_string(idx));
      if (seen_a[idx]) throw InputError("BadInstanceFile", "duplicate line for a " + std::to_string(idx));
      seen_a[idx] = 1;
      pa[idx] = std::move(prefs);
    } else {
      if (idx < 1 || idx > n_b) throw InputError("IndexOutOfRange", "b " + std::to_string(idx));
      if (seen_b[idx]) throw InputError("BadInstanceFile", "duplicate line for b " + std::to_string(idx));
      seen_b[idx] = 1;
      pb[idx] = std::move(prefs);
    }
  }
  return PreferenceInstance::validate(n_a, n_b, std::move(pa), std::move(pb));
}

PreferenceInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("FileNotFound", path);
  return parse_instance(f);
}

void write_instance(std::ostream& out, const PreferenceInstance& inst) {
  out << "instance " << inst.num_a() << ' ' << inst.num_b() << '\n';
  for (int a = 1; a <= inst.num_a(); ++a) {
    out << "a " << a << " :";
    for (int b : inst.prefs_a(a)) out << ' ' << b;
    out << '\n';
  }
  for (int b = 1; b <= inst.num_b(); ++b) {
    out << "b " << b << " :";
    for (int a : inst.prefs_b(b)) out << ' ' << a;
    out << '\n';
  }
}

std::string instance_to_string(const PreferenceInstance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

Matching parse_matching(std::istream& in, const PreferenceInstance& inst) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& line : logical_lines(in)) {
    std::istringstream ls(line);
    int a, b;
    if (!(ls >> a >> b))
      throw InputError("BadMatchingFile", "expected '<i> <j>' at line: " + line);
    edges.emplace_back(a, b);
  }
  return Matching::from_edges(inst, edges);
}

Matching load_matching(const std::string& path, const PreferenceInstance& inst) {
  std::ifstream f(path);
  if (!f) throw InputError("FileNotFound", path);
  return parse_matching(f, inst);
}

void write_matching(std::ostream& out, const Matching& m) {
  for (auto [a, b] : m.edges()) out << a << ' ' << b << '\n';
}

void save_matching(const std::string& path, const Matching& m) {
  std::ofstream f(path);
  if (!f) throw InputError("FileNotFound", "cannot write " + path);
  write_matching(f, m);
}

}  // namespace almost_stable
