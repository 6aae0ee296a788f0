#ifndef ALMOST_STABLE_REDUCTIONS_HPP
#define ALMOST_STABLE_REDUCTIONS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "almost_stable/core.hpp"

namespace almost_stable {

// A k-partite Multicolored Clique instance. Parts and edge sets keep
// their input order; that order is the canonical order sigma used by the
// gadget constructions.
struct McqInstance {
  int k = 0;
  std::vector<std::vector<int>> parts;  // [1..k] -> vertex ids, input order
  std::vector<std::pair<int, int>> edges;  // normalized (part(u) < part(v))
  std::optional<int> regular_degree;

  int num_vertices() const;
  int num_edges() const { return static_cast<int>(edges.size()); }
  int part_of(int v) const;           // 0 when unknown
  int sigma_vertex(int v) const;      // 1-based position in its part
  int degree(int v) const;
  bool has_edge(int u, int v) const;
  // 1-based indices into `edges`, in input order.
  std::vector<int> edge_ids_between(int i, int j) const;
  std::vector<int> edges_at(int v) const;  // canonical E_u

  // Checks part disjointness and that edges join distinct parts (so every
  // part is an independent set). Throws InputError.
  void check() const;
};

McqInstance parse_mcq(std::istream& in);
McqInstance load_mcq(const std::string& path);
void write_mcq(std::ostream& out, const McqInstance& mcq);
std::string mcq_to_string(const McqInstance& mcq);

// Pads every part to a common power-of-two size n = 2^p and every E_ij to
// a common m = 2^{p'} (p, p' > 1) by appending isolated vertices and
// isolated edges in canonical order. Preserves the yes/no status.
McqInstance pad_mcq(const McqInstance& mcq);

bool is_multicolored_clique(const McqInstance& mcq, const std::vector<int>& verts);

enum class ReductionKind { Asm, LsAsm };
const char* to_string(ReductionKind k);

// A generated gadget instance with its planted stable matching, the
// parameters of the target problem and name maps back to the source.
struct ReductionArtifacts {
  ReductionKind kind = ReductionKind::Asm;
  McqInstance source;
  PreferenceInstance instance;
  Matching mu;
  std::int64_t k_prime = 0;
  std::int64_t t = 0;
  // For LS-ASM the symmetric-difference budget; for ASM the symmetric
  // difference realized by an embedded clique solution.
  std::int64_t q = 0;

  // Gadget vertex names, stable and human readable (u7_3, e2, et2,
  // p1_2, a1_1_2, q1.2_1, ...).
  std::vector<std::string> name_a;  // [1..nA]
  std::vector<std::string> name_b;  // [1..nB]
  std::unordered_map<std::string, std::pair<Side, int>> by_name;

  // u-type static edge (u1,u2) per source vertex; e-type (e,et) per
  // source edge id. Stored as instance (a,b) pairs.
  std::unordered_map<int, std::pair<int, int>> u_type_edge;
  std::unordered_map<int, std::pair<int, int>> e_type_edge;

  std::pair<Side, int> agent(const std::string& name) const;
  const std::string& name_of(Side side, int index) const;
};

// Closed forms from the constructions (exposed for count tests).
std::int64_t reduction_k_prime(int k);                        // k + k(k-1)/2
std::int64_t asm_vertex_count(int k, int n, int m, int r);
std::int64_t asm_mu_size(int k, int n, int m, int r);
std::int64_t asm_sym_diff(int k, int n, int m, int r);        // embedded |mu ^ eta|
std::int64_t lsasm_vertex_count(int k, int v, int e);
std::int64_t lsasm_mu_size(int v, int e);
std::int64_t lsasm_q(int k);                                  // 5k + 3k(k-1)/2

// Builds the ASM gadget. Requires regular_degree r >= 1 with every degree
// <= r (padding vertices may fall short of r), every |V_i| = n = 2^p and
// every |E_ij| = m = 2^{p'} with p, p' > 1. Throws
// Error("NotRegular"/"NotPadded").
ReductionArtifacts build_asm_reduction(const McqInstance& mcq);

// eta from the proof's swap schedule along base paths and special trees.
// clique lists one source vertex per part. Throws Error("NotAClique").
Matching embed_clique_asm(const ReductionArtifacts& art, const std::vector<int>& clique);

// S = sources of u-type blocking edges, E_S = sources of e-type blocking
// edges. Returns possibly non-clique sets; the caller validates.
std::pair<std::vector<int>, std::vector<std::pair<int, int>>> extract_clique_asm(
    const ReductionArtifacts& art, const Matching& eta);

// The LS-ASM gadget; works for arbitrary MCQ instances.
ReductionArtifacts build_lsasm_reduction(const McqInstance& mcq);
Matching embed_clique_lsasm(const ReductionArtifacts& art, const std::vector<int>& clique);
std::pair<std::vector<int>, std::vector<std::pair<int, int>>> extract_clique_lsasm(
    const ReductionArtifacts& art, const Matching& eta);

// Underlying-graph bipartiteness by breadth-first layering, independent of
// the instance's side split.
bool bipartition_exists(const PreferenceInstance& inst);

}  // namespace almost_stable

#endif  // ALMOST_STABLE_REDUCTIONS_HPP
