#include "almost_stable/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace almost_stable {

int McqInstance::num_vertices() const {
  int n = 0;
  for (const auto& part : parts) n += static_cast<int>(part.size());
  return n;
}

int McqInstance::part_of(int v) const {
  for (int i = 1; i <= k; ++i)
    for (int u : parts[i])
      if (u == v) return i;
  return 0;
}

int McqInstance::sigma_vertex(int v) const {
  int i = part_of(v);
  if (i == 0) return 0;
  const auto& part = parts[i];
  for (std::size_t pos = 0; pos < part.size(); ++pos)
    if (part[pos] == v) return static_cast<int>(pos) + 1;
  return 0;
}

int McqInstance::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges)
    if (a == v || b == v) ++d;
  return d;
}

bool McqInstance::has_edge(int u, int v) const {
  for (auto [a, b] : edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

std::vector<int> McqInstance::edge_ids_between(int i, int j) const {
  std::vector<int> ids;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (part_of(a) == i && part_of(b) == j) ids.push_back(static_cast<int>(e) + 1);
  }
  return ids;
}

std::vector<int> McqInstance::edges_at(int v) const {
  std::vector<int> ids;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].first == v || edges[e].second == v)
      ids.push_back(static_cast<int>(e) + 1);
  return ids;
}

void McqInstance::check() const {
  if (k < 1 || static_cast<int>(parts.size()) != k + 1)
    throw InputError("BadMcq", "expected k parts");
  std::set<int> seen;
  for (int i = 1; i <= k; ++i)
    for (int v : parts[i]) {
      if (v < 1) throw InputError("BadMcq", "vertex ids must be positive");
      if (!seen.insert(v).second)
        throw InputError("BadMcq", "vertex " + std::to_string(v) + " appears twice");
    }
  std::set<std::pair<int, int>> edge_seen;
  for (auto [u, v] : edges) {
    int pu = part_of(u), pv = part_of(v);
    if (pu == 0 || pv == 0)
      throw InputError("BadMcq", "edge endpoint not in any part");
    if (pu == pv)
      throw InputError("BadMcq", "edge inside part " + std::to_string(pu) +
                                     "; parts must be independent sets");
    if (pu > pv) std::swap(u, v);
    if (!edge_seen.insert({u, v}).second)
      throw InputError("BadMcq", "duplicate edge");
  }
}

McqInstance parse_mcq(std::istream& in) {
  McqInstance mcq;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) lines.push_back(line);
  }
  if (lines.empty()) throw InputError("BadMcq", "empty mcq file");
  {
    std::istringstream head(lines[0]);
    std::string kw;
    if (!(head >> kw >> mcq.k) || kw != "mcq" || mcq.k < 1)
      throw InputError("BadMcq", "expected 'mcq <k>'");
  }
  mcq.parts.assign(mcq.k + 1, {});
  std::vector<char> have(mcq.k + 1, 0);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::istringstream ls(lines[li]);
    std::string kw;
    ls >> kw;
    if (kw == "part") {
      int i;
      std::string colon;
      if (!(ls >> i >> colon) || colon != ":" || i < 1 || i > mcq.k)
        throw InputError("BadMcq", "expected 'part <i> : v...'");
      if (have[i]) throw InputError("BadMcq", "duplicate part " + std::to_string(i));
      have[i] = 1;
      int v;
      while (ls >> v) mcq.parts[i].push_back(v);
    } else if (kw == "edge") {
      int u, v;
      if (!(ls >> u >> v)) throw InputError("BadMcq", "expected 'edge <u> <v>'");
      mcq.edges.emplace_back(u, v);
    } else {
      throw InputError("BadMcq", "unexpected line: " + lines[li]);
    }
  }
  for (int i = 1; i <= mcq.k; ++i)
    if (!have[i]) throw InputError("BadMcq", "missing part " + std::to_string(i));
  // normalize edge orientation to (lower part, higher part)
  for (auto& [u, v] : mcq.edges) {
    int pu = mcq.part_of(u), pv = mcq.part_of(v);
    if (pu == 0 || pv == 0) throw InputError("BadMcq", "edge endpoint not in any part");
    if (pu > pv) std::swap(u, v);
  }
  mcq.check();
  return mcq;
}

McqInstance load_mcq(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("FileNotFound", path);
  return parse_mcq(f);
}

void write_mcq(std::ostream& out, const McqInstance& mcq) {
  out << "mcq " << mcq.k << '\n';
  for (int i = 1; i <= mcq.k; ++i) {
    out << "part " << i << " :";
    for (int v : mcq.parts[i]) out << ' ' << v;
    out << '\n';
  }
  for (auto [u, v] : mcq.edges) out << "edge " << u << ' ' << v << '\n';
}

std::string mcq_to_string(const McqInstance& mcq) {
  std::ostringstream os;
  write_mcq(os, mcq);
  return os.str();
}

namespace {

int next_pow2_at_least(int x) {
  int p = 4;  // the constructions need 2^p with p > 1
  while (p < x) p <<= 1;
  return p;
}

}  // namespace

McqInstance pad_mcq(const McqInstance& mcq) {
  mcq.check();
  McqInstance out = mcq;
  int max_id = 0;
  for (int i = 1; i <= out.k; ++i)
    for (int v : out.parts[i]) max_id = std::max(max_id, v);

  if (out.k >= 2) {
    int m_max = 0;
    for (int i = 1; i <= out.k; ++i)
      for (int j = i + 1; j <= out.k; ++j)
        m_max = std::max(m_max, static_cast<int>(out.edge_ids_between(i, j).size()));
    int m_target = next_pow2_at_least(m_max);
    for (int i = 1; i <= out.k; ++i)
      for (int j = i + 1; j <= out.k; ++j) {
        int have = static_cast<int>(out.edge_ids_between(i, j).size());
        for (; have < m_target; ++have) {
          int u = ++max_id, v = ++max_id;
          out.parts[i].push_back(u);
          out.parts[j].push_back(v);
          out.edges.emplace_back(u, v);
        }
      }
  }
  int n_max = 0;
  for (int i = 1; i <= out.k; ++i)
    n_max = std::max(n_max, static_cast<int>(out.parts[i].size()));
  int n_target = next_pow2_at_least(n_max);
  for (int i = 1; i <= out.k; ++i)
    while (static_cast<int>(out.parts[i].size()) < n_target)
      out.parts[i].push_back(++max_id);
  out.check();
  return out;
}

bool is_multicolored_clique(const McqInstance& mcq, const std::vector<int>& verts) {
  if (static_cast<int>(verts.size()) != mcq.k) return false;
  std::vector<char> part_hit(mcq.k + 1, 0);
  for (int v : verts) {
    int p = mcq.part_of(v);
    if (p == 0 || part_hit[p]) return false;
    part_hit[p] = 1;
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!mcq.has_edge(verts[i], verts[j])) return false;
  return true;
}

const char* to_string(ReductionKind k) {
  return k == ReductionKind::Asm ? "asm" : "lsasm";
}

std::pair<Side, int> ReductionArtifacts::agent(const std::string& name) const {
  auto it = by_name.find(name);
  if (it == by_name.end())
    throw InputError("UnknownGadgetVertex", name);
  return it->second;
}

const std::string& ReductionArtifacts::name_of(Side side, int index) const {
  return side == Side::A ? name_a[index] : name_b[index];
}

std::int64_t reduction_k_prime(int k) {
  return k + static_cast<std::int64_t>(k) * (k - 1) / 2;
}

std::int64_t asm_vertex_count(int k, int n, int m, int r) {
  std::int64_t K = k, N = n, M = m, R = r;
  return 2 * (R + 1) * K * N + 2 * K * (2 * N - 3) + M * K * (K - 1) +
         K * (K - 1) * (2 * M - 3);
}

std::int64_t asm_mu_size(int k, int n, int m, int r) {
  std::int64_t K = k, N = n, M = m, R = r;
  return K * N * (R + 1) + M * K * (K - 1) / 2 + 2 * K * (N - 2) +
         K * (K - 1) * (M - 2);
}

namespace {

int log2_exact(int x) {
  int l = 0;
  while ((1 << l) < x) ++l;
  return ((1 << l) == x) ? l : -1;
}

}  // namespace

std::int64_t asm_sym_diff(int k, int n, int m, int r) {
  std::int64_t K = k;
  std::int64_t ln = log2_exact(n / 2), lm = log2_exact(m / 2);
  return (2 * static_cast<std::int64_t>(r) + 3) * K + 3 * K * (K - 1) / 2 +
         4 * K * ln + 2 * K * (K - 1) * lm;
}

std::int64_t lsasm_vertex_count(int k, int v, int e) {
  return 4LL * v + 2LL * e + 2LL * k + static_cast<std::int64_t>(k) * (k - 1);
}

std::int64_t lsasm_mu_size(int v, int e) { return 2LL * v + e; }

std::int64_t lsasm_q(int k) {
  return 5LL * k + 3LL * k * (k - 1) / 2;
}

namespace {

// Assembles a two-sided instance from named gadget vertices, assigning
// side indices in insertion order. compile() checks that every listed
// neighbor is on the other side, so a non-bipartite wiring cannot slip
// through.
class GadgetBuilder {
 public:
  void add(Side s, const std::string& name) {
    if (!by_name_.emplace(name, static_cast<int>(verts_.size())).second)
      throw InternalError("GadgetBug", "duplicate gadget vertex " + name);
    int side_index = s == Side::A ? ++na_ : ++nb_;
    verts_.push_back({name, s, side_index, {}});
  }

  bool has(const std::string& name) const { return by_name_.count(name) > 0; }

  void set_prefs(const std::string& name, const std::vector<std::string>& prefs) {
    auto& v = verts_[gid(name)];
    if (!v.prefs.empty())
      throw InternalError("GadgetBug", "preferences set twice for " + name);
    for (const auto& w : prefs) v.prefs.push_back(gid(w));
  }

  std::pair<int, int> instance_edge(const std::string& x, const std::string& y) const {
    const auto& vx = verts_[gid(x)];
    const auto& vy = verts_[gid(y)];
    if (vx.side == vy.side)
      throw InternalError("GadgetBug", "same-side edge " + x + " -- " + y);
    return vx.side == Side::A ? std::make_pair(vx.side_index, vy.side_index)
                              : std::make_pair(vy.side_index, vx.side_index);
  }

  void compile(ReductionArtifacts& art) const {
    std::vector<std::vector<int>> pa(na_ + 1), pb(nb_ + 1);
    art.name_a.assign(na_ + 1, "");
    art.name_b.assign(nb_ + 1, "");
    for (const auto& v : verts_) {
      std::vector<int> lst;
      for (int g : v.prefs) {
        const auto& w = verts_[g];
        if (w.side == v.side)
          throw InternalError("GadgetBug",
                              "same-side preference " + v.name + " -> " + w.name);
        lst.push_back(w.side_index);
      }
      if (v.side == Side::A) {
        pa[v.side_index] = std::move(lst);
        art.name_a[v.side_index] = v.name;
      } else {
        pb[v.side_index] = std::move(lst);
        art.name_b[v.side_index] = v.name;
      }
      art.by_name[v.name] = {v.side, v.side_index};
    }
    art.instance = PreferenceInstance::validate(na_, nb_, std::move(pa), std::move(pb));
  }

 private:
  struct V {
    std::string name;
    Side side;
    int side_index;
    std::vector<int> prefs;
  };

  int gid(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
      throw InternalError("GadgetBug", "unknown gadget vertex " + name);
    return it->second;
  }

  std::vector<V> verts_;
  std::unordered_map<std::string, int> by_name_;
  int na_ = 0;
  int nb_ = 0;
};

std::string nm(const char* kind, int i, int l) {
  return std::string(kind) + std::to_string(i) + "_" + std::to_string(l);
}
std::string nm(const char* kind, int i, int j, int l) {
  return std::string(kind) + std::to_string(i) + "." + std::to_string(j) + "_" +
         std::to_string(l);
}
std::string nm2(const char* kind, int i, int j, int h, int l) {
  return std::string(kind) + std::to_string(i) + "." + std::to_string(j) + "_" +
         std::to_string(h) + "_" + std::to_string(l);
}
std::string nma(const char* kind, int i, int j, int l) {
  return std::string(kind) + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(l);
}
std::string base_name(int v, int pos) {
  return "u" + std::to_string(v) + "_" + std::to_string(pos);
}
std::string edge_name(int eid, bool tilde) {
  return (tilde ? "et" : "e") + std::to_string(eid);
}
std::string hub_p(int which, int i) {
  return "p" + std::to_string(which) + "_" + std::to_string(i);
}
std::string hub_q(int which, int i, int j) {
  return "q" + std::to_string(which) + "_" + std::to_string(i) + "." + std::to_string(j);
}

int ceil_div_pow2(int l, int j) { return (l + (1 << j) - 1) >> j; }

struct SourceIndex {
  std::vector<int> all_vertices;                 // canonical global order
  std::unordered_map<int, int> part_of;          // vertex -> part
  std::unordered_map<int, int> sigma;            // vertex -> position in part
  std::unordered_map<int, std::vector<int>> edges_at;  // vertex -> canonical E_u
  std::unordered_map<int, int> pos_in_eu_first;  // edge id -> pos in E_u of first endpoint
  std::unordered_map<int, int> pos_in_eu_second;
  std::unordered_map<int, int> pos_in_eij;       // edge id -> sigma(E_ij, e)
  std::unordered_map<int, std::pair<int, int>> pair_of;  // edge id -> (i, j)

  explicit SourceIndex(const McqInstance& mcq) {
    for (int i = 1; i <= mcq.k; ++i)
      for (std::size_t pos = 0; pos < mcq.parts[i].size(); ++pos) {
        int v = mcq.parts[i][pos];
        all_vertices.push_back(v);
        part_of[v] = i;
        sigma[v] = static_cast<int>(pos) + 1;
      }
    for (std::size_t e = 0; e < mcq.edges.size(); ++e) {
      int id = static_cast<int>(e) + 1;
      auto [u, v] = mcq.edges[e];
      edges_at[u].push_back(id);
      edges_at[v].push_back(id);
      pos_in_eu_first[id] = static_cast<int>(edges_at[u].size());
      pos_in_eu_second[id] = static_cast<int>(edges_at[v].size());
      pair_of[id] = {part_of[u], part_of[v]};
    }
    std::unordered_map<std::int64_t, int> counter;
    for (std::size_t e = 0; e < mcq.edges.size(); ++e) {
      int id = static_cast<int>(e) + 1;
      auto [i, j] = pair_of[id];
      pos_in_eij[id] = ++counter[static_cast<std::int64_t>(i) * 1000000 + j];
    }
  }
};

}  // namespace

ReductionArtifacts build_asm_reduction(const McqInstance& mcq) {
  mcq.check();
  if (mcq.k < 2)
    throw InputError("InvalidParameters", "the ASM construction needs k >= 2");
  if (!mcq.regular_degree || *mcq.regular_degree < 1)
    throw Error("NotRegular", "the ASM construction needs the regular degree r >= 1");
  int k = mcq.k;
  int r = *mcq.regular_degree;
  int n = static_cast<int>(mcq.parts[1].size());
  for (int i = 1; i <= k; ++i)
    if (static_cast<int>(mcq.parts[i].size()) != n)
      throw Error("NotPadded", "all parts must have equal size");
  if (n < 4 || log2_exact(n) < 0)
    throw Error("NotPadded", "part size must be a power of two >= 4");
  int m = -1;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      int mij = static_cast<int>(mcq.edge_ids_between(i, j).size());
      if (m < 0) m = mij;
      if (mij != m) throw Error("NotPadded", "all E_ij must have equal size");
    }
  if (m < 4 || log2_exact(m) < 0)
    throw Error("NotPadded", "edge-set size must be a power of two >= 4");
  SourceIndex src(mcq);
  for (int v : src.all_vertices)
    if (mcq.degree(v) > r)
      throw Error("NotRegular", "vertex " + std::to_string(v) + " has degree above r");

  int big_l = log2_exact(n / 2);
  int big_lp = log2_exact(m / 2);

  GadgetBuilder g;
  // Base paths and edge vertices.
  for (int v : src.all_vertices)
    for (int pos = 1; pos <= 2 * r + 2; ++pos)
      g.add(pos % 2 == 1 ? Side::A : Side::B, base_name(v, pos));
  for (int eid = 1; eid <= mcq.num_edges(); ++eid) {
    g.add(Side::B, edge_name(eid, false));
    g.add(Side::A, edge_name(eid, true));
  }
  // Vertex-gadget specials.
  for (int i = 1; i <= k; ++i) {
    for (int l = 1; l <= n / 2; ++l) {
      g.add(Side::B, nm("p", i, l));
      g.add(Side::A, nm("pt", i, l));
    }
    for (int j = 1; j <= big_l; ++j)
      for (int l = 1; l <= (n >> j); ++l) {
        g.add(Side::A, nma("a", i, j, l));
        g.add(Side::B, nma("at", i, j, l));
      }
    for (int j = 1; j <= big_l; ++j)
      for (int l = 1; l <= (n >> (j + 1)); ++l) {
        g.add(Side::B, nma("b", i, j, l));
        g.add(Side::A, nma("bt", i, j, l));
      }
  }
  // Edge-gadget specials.
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      for (int l = 1; l <= m / 2; ++l) {
        g.add(Side::A, nm("q", i, j, l));
        g.add(Side::B, nm("qt", i, j, l));
      }
      for (int h = 1; h <= big_lp; ++h)
        for (int l = 1; l <= (m >> h); ++l) {
          g.add(Side::B, nm2("c", i, j, h, l));
          g.add(Side::A, nm2("ct", i, j, h, l));
        }
      for (int h = 1; h <= big_lp; ++h)
        for (int l = 1; l <= (m >> (h + 1)); ++l) {
          g.add(Side::A, nm2("d", i, j, h, l));
          g.add(Side::B, nm2("dt", i, j, h, l));
        }
    }

  // Preference lists, Table-1 wiring.
  for (int v : src.all_vertices) {
    int i = src.part_of[v];
    int lu = src.sigma[v];
    const auto& eu = src.edges_at.count(v) ? src.edges_at[v] : std::vector<int>{};
    int deg = static_cast<int>(eu.size());
    g.set_prefs(base_name(v, 1), {base_name(v, 2), nm("p", i, ceil_div_pow2(lu, 1))});
    for (int h = 1; h <= r; ++h)
      g.set_prefs(base_name(v, 2 * h), {base_name(v, 2 * h - 1), base_name(v, 2 * h + 1)});
    for (int h = 1; h <= r; ++h) {
      std::vector<std::string> lst{base_name(v, 2 * h)};
      if (h <= deg) lst.push_back(edge_name(eu[h - 1], false));
      lst.push_back(base_name(v, 2 * h + 2));
      g.set_prefs(base_name(v, 2 * h + 1), lst);
    }
    g.set_prefs(base_name(v, 2 * r + 2),
                {base_name(v, 2 * r + 1), nm("pt", i, ceil_div_pow2(lu, 1))});
  }
  for (int eid = 1; eid <= mcq.num_edges(); ++eid) {
    auto [u, v] = mcq.edges[eid - 1];
    auto [i, j] = src.pair_of[eid];
    int h = src.pos_in_eu_first[eid];
    int hp = src.pos_in_eu_second[eid];
    int le = src.pos_in_eij[eid];
    g.set_prefs(edge_name(eid, false),
                {edge_name(eid, true), base_name(u, 2 * h + 1), base_name(v, 2 * hp + 1),
                 nm("q", i, j, ceil_div_pow2(le, 1))});
    g.set_prefs(edge_name(eid, true),
                {edge_name(eid, false), nm("qt", i, j, ceil_div_pow2(le, 1))});
  }
  for (int i = 1; i <= k; ++i) {
    for (int l = 1; l <= n / 2; ++l) {
      int x = mcq.parts[i][2 * l - 2], y = mcq.parts[i][2 * l - 1];
      g.set_prefs(nm("p", i, l), {base_name(x, 1), base_name(y, 1), nma("a", i, 1, l)});
      g.set_prefs(nm("pt", i, l),
                  {base_name(x, 2 * r + 2), base_name(y, 2 * r + 2), nma("at", i, 1, l)});
    }
    for (int j = 1; j <= big_l; ++j)
      for (int l = 1; l <= (n >> j); ++l) {
        int up = ceil_div_pow2(l, 1);
        if (j == 1) {
          g.set_prefs(nma("a", i, 1, l), {nm("p", i, l), nma("b", i, 1, up)});
          g.set_prefs(nma("at", i, 1, l), {nm("pt", i, l), nma("bt", i, 1, up)});
        } else {
          g.set_prefs(nma("a", i, j, l), {nma("b", i, j - 1, l), nma("b", i, j, up)});
          g.set_prefs(nma("at", i, j, l), {nma("bt", i, j - 1, l), nma("bt", i, j, up)});
        }
      }
    for (int j = 1; j <= big_l; ++j)
      for (int l = 1; l <= (n >> (j + 1)); ++l) {
        if (j < big_l) {
          g.set_prefs(nma("b", i, j, l),
                      {nma("a", i, j, 2 * l - 1), nma("a", i, j, 2 * l), nma("a", i, j + 1, l)});
          g.set_prefs(nma("bt", i, j, l),
                      {nma("at", i, j, 2 * l - 1), nma("at", i, j, 2 * l), nma("at", i, j + 1, l)});
        } else {
          g.set_prefs(nma("b", i, j, l), {nma("a", i, j, 1), nma("a", i, j, 2)});
          g.set_prefs(nma("bt", i, j, l), {nma("at", i, j, 1), nma("at", i, j, 2)});
        }
      }
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      auto eij = mcq.edge_ids_between(i, j);
      for (int l = 1; l <= m / 2; ++l) {
        int e1 = eij[2 * l - 2], e2 = eij[2 * l - 1];
        g.set_prefs(nm("q", i, j, l),
                    {edge_name(e1, false), edge_name(e2, false), nm2("c", i, j, 1, l)});
        g.set_prefs(nm("qt", i, j, l),
                    {edge_name(e1, true), edge_name(e2, true), nm2("ct", i, j, 1, l)});
      }
      for (int h = 1; h <= big_lp; ++h)
        for (int l = 1; l <= (m >> h); ++l) {
          int up = ceil_div_pow2(l, 1);
          if (h == 1) {
            g.set_prefs(nm2("c", i, j, 1, l), {nm("q", i, j, l), nm2("d", i, j, 1, up)});
            g.set_prefs(nm2("ct", i, j, 1, l), {nm("qt", i, j, l), nm2("dt", i, j, 1, up)});
          } else {
            g.set_prefs(nm2("c", i, j, h, l),
                        {nm2("d", i, j, h - 1, l), nm2("d", i, j, h, up)});
            g.set_prefs(nm2("ct", i, j, h, l),
                        {nm2("dt", i, j, h - 1, l), nm2("dt", i, j, h, up)});
          }
        }
      for (int h = 1; h <= big_lp; ++h)
        for (int l = 1; l <= (m >> (h + 1)); ++l) {
          if (h < big_lp) {
            g.set_prefs(nm2("d", i, j, h, l),
                        {nm2("c", i, j, h, 2 * l - 1), nm2("c", i, j, h, 2 * l),
                         nm2("c", i, j, h + 1, l)});
            g.set_prefs(nm2("dt", i, j, h, l),
                        {nm2("ct", i, j, h, 2 * l - 1), nm2("ct", i, j, h, 2 * l),
                         nm2("ct", i, j, h + 1, l)});
          } else {
            g.set_prefs(nm2("d", i, j, h, l), {nm2("c", i, j, h, 1), nm2("c", i, j, h, 2)});
            g.set_prefs(nm2("dt", i, j, h, l), {nm2("ct", i, j, h, 1), nm2("ct", i, j, h, 2)});
          }
        }
    }

  ReductionArtifacts art;
  art.kind = ReductionKind::Asm;
  art.source = mcq;
  g.compile(art);

  std::vector<std::pair<int, int>> mu_edges;
  auto push = [&](const std::string& x, const std::string& y) {
    mu_edges.push_back(g.instance_edge(x, y));
  };
  for (int v : src.all_vertices)
    for (int h = 1; h <= r + 1; ++h) push(base_name(v, 2 * h - 1), base_name(v, 2 * h));
  for (int eid = 1; eid <= mcq.num_edges(); ++eid)
    push(edge_name(eid, false), edge_name(eid, true));
  for (int i = 1; i <= k; ++i) {
    for (int l = 1; l <= n / 2; ++l) {
      push(nma("a", i, 1, l), nm("p", i, l));
      push(nma("at", i, 1, l), nm("pt", i, l));
    }
    for (int j = 2; j <= big_l; ++j)
      for (int l = 1; l <= (n >> j); ++l) {
        push(nma("a", i, j, l), nma("b", i, j - 1, l));
        push(nma("at", i, j, l), nma("bt", i, j - 1, l));
      }
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      for (int l = 1; l <= m / 2; ++l) {
        push(nm2("c", i, j, 1, l), nm("q", i, j, l));
        push(nm2("ct", i, j, 1, l), nm("qt", i, j, l));
      }
      for (int h = 2; h <= big_lp; ++h)
        for (int l = 1; l <= (m >> h); ++l) {
          push(nm2("c", i, j, h, l), nm2("d", i, j, h - 1, l));
          push(nm2("ct", i, j, h, l), nm2("dt", i, j, h - 1, l));
        }
    }
  art.mu = Matching::from_edges(art.instance, mu_edges);

  art.k_prime = reduction_k_prime(k);
  art.t = art.k_prime;
  art.q = asm_sym_diff(k, n, m, r);

  for (int v : src.all_vertices)
    art.u_type_edge[v] = g.instance_edge(base_name(v, 1), base_name(v, 2));
  for (int eid = 1; eid <= mcq.num_edges(); ++eid)
    art.e_type_edge[eid] = g.instance_edge(edge_name(eid, false), edge_name(eid, true));
  return art;
}

namespace {

// Mutates an edge set by named additions/deletions; throws on
// inconsistent swaps, which would indicate a schedule bug.
struct SwapSchedule {
  const ReductionArtifacts& art;
  std::set<std::pair<int, int>> edges;

  explicit SwapSchedule(const ReductionArtifacts& a) : art(a) {
    for (auto e : a.mu.edges()) edges.insert(e);
  }

  std::pair<int, int> resolve(const std::string& x, const std::string& y) const {
    auto [sx, ix] = art.agent(x);
    auto [sy, iy] = art.agent(y);
    if (sx == sy) throw InternalError("GadgetBug", "same-side swap " + x + "," + y);
    return sx == Side::A ? std::make_pair(ix, iy) : std::make_pair(iy, ix);
  }

  void del(const std::string& x, const std::string& y) {
    if (edges.erase(resolve(x, y)) != 1)
      throw InternalError("GadgetBug", "swap deletes absent edge " + x + "," + y);
  }
  void add(const std::string& x, const std::string& y) {
    if (!edges.insert(resolve(x, y)).second)
      throw InternalError("GadgetBug", "swap adds present edge " + x + "," + y);
  }

  Matching finish() const {
    return Matching::from_edges(art.instance,
                                std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
  }
};

std::vector<int> clique_edge_ids(const McqInstance& mcq, const std::vector<int>& clique) {
  std::vector<int> ids;
  for (std::size_t e = 0; e < mcq.edges.size(); ++e) {
    auto [u, v] = mcq.edges[e];
    bool cu = std::find(clique.begin(), clique.end(), u) != clique.end();
    bool cv = std::find(clique.begin(), clique.end(), v) != clique.end();
    if (cu && cv) ids.push_back(static_cast<int>(e) + 1);
  }
  return ids;
}

}  // namespace

Matching embed_clique_asm(const ReductionArtifacts& art, const std::vector<int>& clique) {
  if (art.kind != ReductionKind::Asm)
    throw InputError("InvalidParameters", "artifacts are not an ASM reduction");
  const McqInstance& mcq = art.source;
  if (!is_multicolored_clique(mcq, clique))
    throw Error("NotAClique", "the given vertex set is not a multicolored clique");
  int r = *mcq.regular_degree;
  int n = static_cast<int>(mcq.parts[1].size());
  int m = static_cast<int>(mcq.edge_ids_between(1, 2).size());
  int big_l = log2_exact(n / 2);
  int big_lp = log2_exact(m / 2);
  SourceIndex src(mcq);

  SwapSchedule sched(art);
  for (int u : clique) {
    int i = src.part_of[u];
    int l = src.sigma[u];
    for (int h = 1; h <= r + 1; ++h) sched.del(base_name(u, 2 * h - 1), base_name(u, 2 * h));
    for (int h = 1; h <= r; ++h) sched.add(base_name(u, 2 * h), base_name(u, 2 * h + 1));
    int lc = ceil_div_pow2(l, 1);
    sched.del(nma("a", i, 1, lc), nm("p", i, lc));
    sched.del(nma("at", i, 1, lc), nm("pt", i, lc));
    sched.add(base_name(u, 1), nm("p", i, lc));
    sched.add(base_name(u, 2 * r + 2), nm("pt", i, lc));
    for (int j = 2; j <= big_l; ++j) {
      int h = ceil_div_pow2(l, j);
      sched.del(nma("a", i, j, h), nma("b", i, j - 1, h));
      sched.del(nma("at", i, j, h), nma("bt", i, j - 1, h));
    }
    for (int j = 1; j <= big_l; ++j) {
      int h = ceil_div_pow2(l, j), hp = ceil_div_pow2(l, j + 1);
      sched.add(nma("a", i, j, h), nma("b", i, j, hp));
      sched.add(nma("at", i, j, h), nma("bt", i, j, hp));
    }
  }
  for (int eid : clique_edge_ids(mcq, clique)) {
    auto [i, j] = src.pair_of[eid];
    int l = src.pos_in_eij[eid];
    int lc = ceil_div_pow2(l, 1);
    sched.del(edge_name(eid, false), edge_name(eid, true));
    sched.del(nm("q", i, j, lc), nm2("c", i, j, 1, lc));
    sched.del(nm("qt", i, j, lc), nm2("ct", i, j, 1, lc));
    sched.add(edge_name(eid, false), nm("q", i, j, lc));
    sched.add(edge_name(eid, true), nm("qt", i, j, lc));
    for (int h = 2; h <= big_lp; ++h) {
      int s = ceil_div_pow2(l, h);
      sched.del(nm2("c", i, j, h, s), nm2("d", i, j, h - 1, s));
      sched.del(nm2("ct", i, j, h, s), nm2("dt", i, j, h - 1, s));
    }
    for (int h = 1; h <= big_lp; ++h) {
      int s = ceil_div_pow2(l, h), sp = ceil_div_pow2(l, h + 1);
      sched.add(nm2("c", i, j, h, s), nm2("d", i, j, h, sp));
      sched.add(nm2("ct", i, j, h, s), nm2("dt", i, j, h, sp));
    }
  }
  return sched.finish();
}

namespace {

std::pair<std::vector<int>, std::vector<std::pair<int, int>>> extract_common(
    const ReductionArtifacts& art, const Matching& eta) {
  std::set<std::pair<int, int>> bp;
  for (auto e : blocking_edges(art.instance, eta)) bp.insert(e);
  std::vector<int> s;
  for (int i = 1; i <= art.source.k; ++i)
    for (int v : art.source.parts[i])
      if (bp.count(art.u_type_edge.at(v))) s.push_back(v);
  std::vector<std::pair<int, int>> es;
  for (int eid = 1; eid <= art.source.num_edges(); ++eid)
    if (bp.count(art.e_type_edge.at(eid))) es.push_back(art.source.edges[eid - 1]);
  std::sort(s.begin(), s.end());
  std::sort(es.begin(), es.end());
  return {s, es};
}

}  // namespace

std::pair<std::vector<int>, std::vector<std::pair<int, int>>> extract_clique_asm(
    const ReductionArtifacts& art, const Matching& eta) {
  return extract_common(art, eta);
}

ReductionArtifacts build_lsasm_reduction(const McqInstance& mcq) {
  mcq.check();
  SourceIndex src(mcq);
  int k = mcq.k;

  GadgetBuilder g;
  for (int v : src.all_vertices) {
    g.add(Side::B, base_name(v, 1));
    g.add(Side::A, base_name(v, 2));
    g.add(Side::B, base_name(v, 3));
    g.add(Side::A, base_name(v, 4));
  }
  for (int eid = 1; eid <= mcq.num_edges(); ++eid) {
    g.add(Side::A, edge_name(eid, false));
    g.add(Side::B, edge_name(eid, true));
  }
  for (int i = 1; i <= k; ++i) {
    g.add(Side::A, hub_p(1, i));
    g.add(Side::B, hub_p(2, i));
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      g.add(Side::B, hub_q(1, i, j));
      g.add(Side::A, hub_q(2, i, j));
    }

  for (int v : src.all_vertices) {
    int i = src.part_of[v];
    std::vector<std::string> u3{base_name(v, 2)};
    if (src.edges_at.count(v))
      for (int eid : src.edges_at[v]) u3.push_back(edge_name(eid, false));
    u3.push_back(base_name(v, 4));
    g.set_prefs(base_name(v, 1), {base_name(v, 2), hub_p(1, i)});
    g.set_prefs(base_name(v, 2), {base_name(v, 1), base_name(v, 3)});
    g.set_prefs(base_name(v, 3), u3);
    g.set_prefs(base_name(v, 4), {base_name(v, 3), hub_p(2, i)});
  }
  for (int eid = 1; eid <= mcq.num_edges(); ++eid) {
    auto [u, v] = mcq.edges[eid - 1];
    auto [i, j] = src.pair_of[eid];
    g.set_prefs(edge_name(eid, false),
                {edge_name(eid, true), base_name(u, 3), base_name(v, 3), hub_q(1, i, j)});
    g.set_prefs(edge_name(eid, true), {edge_name(eid, false), hub_q(2, i, j)});
  }
  for (int i = 1; i <= k; ++i) {
    std::vector<std::string> p1, p2;
    for (int v : mcq.parts[i]) {
      p1.push_back(base_name(v, 1));
      p2.push_back(base_name(v, 4));
    }
    g.set_prefs(hub_p(1, i), p1);
    g.set_prefs(hub_p(2, i), p2);
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      std::vector<std::string> q1, q2;
      for (int eid : mcq.edge_ids_between(i, j)) {
        q1.push_back(edge_name(eid, false));
        q2.push_back(edge_name(eid, true));
      }
      g.set_prefs(hub_q(1, i, j), q1);
      g.set_prefs(hub_q(2, i, j), q2);
    }

  ReductionArtifacts art;
  art.kind = ReductionKind::LsAsm;
  art.source = mcq;
  g.compile(art);

  std::vector<std::pair<int, int>> mu_edges;
  for (int v : src.all_vertices) {
    mu_edges.push_back(g.instance_edge(base_name(v, 1), base_name(v, 2)));
    mu_edges.push_back(g.instance_edge(base_name(v, 3), base_name(v, 4)));
  }
  for (int eid = 1; eid <= mcq.num_edges(); ++eid)
    mu_edges.push_back(g.instance_edge(edge_name(eid, false), edge_name(eid, true)));
  art.mu = Matching::from_edges(art.instance, mu_edges);

  art.k_prime = reduction_k_prime(k);
  art.t = art.k_prime;
  art.q = lsasm_q(k);

  for (int v : src.all_vertices)
    art.u_type_edge[v] = g.instance_edge(base_name(v, 1), base_name(v, 2));
  for (int eid = 1; eid <= mcq.num_edges(); ++eid)
    art.e_type_edge[eid] = g.instance_edge(edge_name(eid, false), edge_name(eid, true));
  return art;
}

Matching embed_clique_lsasm(const ReductionArtifacts& art, const std::vector<int>& clique) {
  if (art.kind != ReductionKind::LsAsm)
    throw InputError("InvalidParameters", "artifacts are not an LS-ASM reduction");
  const McqInstance& mcq = art.source;
  if (!is_multicolored_clique(mcq, clique))
    throw Error("NotAClique", "the given vertex set is not a multicolored clique");
  SourceIndex src(mcq);

  SwapSchedule sched(art);
  for (int u : clique) {
    int i = src.part_of[u];
    sched.del(base_name(u, 1), base_name(u, 2));
    sched.del(base_name(u, 3), base_name(u, 4));
    sched.add(base_name(u, 1), hub_p(1, i));
    sched.add(base_name(u, 2), base_name(u, 3));
    sched.add(base_name(u, 4), hub_p(2, i));
  }
  for (int eid : clique_edge_ids(mcq, clique)) {
    auto [i, j] = src.pair_of[eid];
    sched.del(edge_name(eid, false), edge_name(eid, true));
    sched.add(edge_name(eid, false), hub_q(1, i, j));
    sched.add(edge_name(eid, true), hub_q(2, i, j));
  }
  return sched.finish();
}

std::pair<std::vector<int>, std::vector<std::pair<int, int>>> extract_clique_lsasm(
    const ReductionArtifacts& art, const Matching& eta) {
  return extract_common(art, eta);
}

bool bipartition_exists(const PreferenceInstance& inst) {
  int n = inst.num_agents();
  std::vector<int> color(n + 1, 0);
  for (int root = 1; root <= n; ++root) {
    if (color[root] != 0) continue;
    color[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int e : inst.incident_edges(u)) {
        int v = inst.edge_other(e, u);
        if (color[v] == 0) {
          color[v] = 3 - color[u];
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace almost_stable
