#ifndef ALMOST_STABLE_FPT_HPP
#define ALMOST_STABLE_FPT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "almost_stable/core.hpp"
#include "almost_stable/knapsack.hpp"

namespace almost_stable {

// A Local-Search ASM query: find eta with |eta| >= |mu|+t, at most k
// blocking edges and |mu ^ eta| <= q.
struct LsAsmQuery {
  PreferenceInstance instance;
  Matching mu;
  int k = 0;
  int q = 0;
  int t = 0;

  // Derived lookup tables (unified vertex ids / canonical edge indices).
  std::vector<int> mu_partner;    // uid -> partner uid, 0 if free
  std::vector<char> edge_in_mu;   // 1-based edge index

  // Validates that mu is stable on the instance and k,q,t >= 0.
  // Throws Error("MuNotStable", ...) / InputError otherwise.
  static LsAsmQuery make(PreferenceInstance instance, Matching mu, int k, int q,
                         int t);
};

// Vertex/edge 2-colorings. vertex[uid] and edge[idx] hold 1 or 2; edge
// colors are consulted only for edges with both endpoints colored 1.
struct SeparationColoring {
  std::vector<std::uint8_t> vertex;
  std::vector<std::uint8_t> edge;
};

// Deterministic counter-based coin: reproducible across platforms.
std::uint64_t mix64(std::uint64_t x);
int coin_color(std::uint64_t seed, std::uint64_t repetition, std::uint64_t domain,
               std::uint64_t index);  // returns 1 or 2

inline constexpr std::uint64_t kVertexDomain = 0x5645525445580000ull;
inline constexpr std::uint64_t kEdgeDomain = 0x4544474500000000ull;

// Phase I (vertex separation): G1 = G[V1] with every component deleted
// that contains an agent whose mu-partner lies outside the component.
// Returns surviving components as ascending unified-id vertex lists.
std::vector<std::vector<int>> phase1(const LsAsmQuery& query,
                                     const std::vector<std::uint8_t>& vertex_color);

// Phase II (edge separation): within each surviving component keep the
// color-1 edges; delete the component unless they form a single
// mu-alternating path or cycle. Every returned component satisfies the
// alternating-structure guarantee by construction.
std::vector<ClassifiedComponent> phase2(const LsAsmQuery& query,
                                        const std::vector<std::vector<int>>& g1,
                                        const std::vector<std::uint8_t>& edge_color);

struct ComponentProfile {
  int component_id = 0;  // index into the phase2 output
  int k_i = 0;           // blocking edges of the probe matching eta_i
  int q_i = 0;           // edges in the component
  int t_i = 0;           // q_i - 2|mu_i|
  AlternatingStructure structure;
  Matching eta_i;        // probe matching, kept for reverification
};

// Phase III profiles. eta_i = (non-mu edges inside C_i) united with
// (mu-edges outside C_i having an endpoint adjacent to C_i). By default
// k_i counts blocking edges of eta_i incident to C_i; distinct components
// of G[V1] are non-adjacent, so this never double counts across
// components. count_all_blocking switches to counting every blocking edge
// of eta_i.
std::vector<ComponentProfile> phase3_profiles(const LsAsmQuery& query,
                                              const std::vector<ClassifiedComponent>& comps,
                                              bool count_all_blocking = false);

// Keeps profiles with t_i = +1 and solves 2D-KP with costs (k_i, q_i),
// unit profits, budgets (k, q) and target t. Returns selected profile
// positions (indices into `profiles`), empty selection when t <= 0.
std::optional<std::vector<int>> size_fitting(const std::vector<ComponentProfile>& profiles,
                                             int k, int q, int t,
                                             std::int64_t cell_cap = knapsack_cell_cap());

// eta = (non-mu edges of selected components) united with (mu-edges with
// both endpoints outside all selected components). Re-checks that eta is
// a matching, |eta| >= |mu|+t, |mu ^ eta| <= q and that the blocking
// edges number at most min(k, sum of selected k_i); a failure signals a
// phase bug and throws Error("AssemblyInvariantViolation", ...).
Matching assemble_eta(const LsAsmQuery& query,
                      const std::vector<ClassifiedComponent>& comps,
                      const std::vector<ComponentProfile>& profiles,
                      const std::vector<int>& selection);

struct SolveOptions {
  std::uint64_t seed = 0;
  std::optional<std::int64_t> repetitions;   // override the default budget
  std::int64_t repetition_cap = 1'000'000;
  double delta = 0.01;                        // target failure probability
  std::int64_t family_pair_cap = 200'000'000; // derandomized work bound
  bool count_all_blocking = false;
  std::int64_t cell_cap = 0;                  // 0 = knapsack_cell_cap()
  // Test hook, called after phase 3 on every coloring that reaches it.
  std::function<void(const std::vector<ClassifiedComponent>&,
                     const std::vector<ComponentProfile>&)>* trace = nullptr;
};

struct SolveStats {
  std::int64_t repetitions_used = 0;
  std::int64_t pairs_tried = 0;
  std::int64_t family_vertex_size = 0;
  std::int64_t family_edge_size = 0;
  std::int64_t components_seen = 0;
  std::int64_t knapsack_cells = 0;
  bool repetition_cap_exceeded = false;
};

struct SolveResult {
  bool yes = false;
  std::optional<Matching> eta;
  SolveStats stats;
};

// The default repetition budget: min(cap, 2^{3q+6dq} * ceil(ln(1/delta))),
// saturated at the cap.
std::int64_t default_repetitions(const LsAsmQuery& query, double delta,
                                 std::int64_t cap);

// One phase-I..III pass under the given coloring; returns the certificate
// when the knapsack selects a component set.
std::optional<Matching> run_phases(const LsAsmQuery& query,
                                   const SeparationColoring& coloring,
                                   const SolveOptions& opts, SolveStats* stats);

// Repeats fresh fair-coin colorings from the deterministic stream; one
// sided: every yes ships a verified certificate, no means no certificate
// was found within the budget.
SolveResult solve_randomized(const LsAsmQuery& query, const SolveOptions& opts = {});

// Exhausts a vertex family (all agent subsets of size <= min(2q, n)) and
// an edge family (all subsets of E(G1) of size <= q, the restriction of
// the global bounded family). Exact yes/no. Throws
// Error("FamilyTooLarge", ...) when the pair bound exceeds the cap.
SolveResult solve_derandomized(const LsAsmQuery& query, const SolveOptions& opts = {});

}  // namespace almost_stable

#endif  // ALMOST_STABLE_FPT_HPP
