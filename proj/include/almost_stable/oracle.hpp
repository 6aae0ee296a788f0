#ifndef ALMOST_STABLE_ORACLE_HPP
#define ALMOST_STABLE_ORACLE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "almost_stable/core.hpp"

namespace almost_stable {

struct OracleOptions {
  int edge_cap = 24;                  // InstanceTooLarge above this
  std::int64_t component_cap = 500'000;  // guard for the difference-first search
  bool full_enumeration = false;      // cross-check route for oracle_lsasm
};

// Visitor returns false to stop the stream.
using MatchingVisitor = std::function<bool(const Matching&)>;

// All matchings of the instance, in a fixed depth-first order.
void enumerate_matchings(const PreferenceInstance& inst, const MatchingVisitor& visit,
                         const OracleOptions& opts = {});

// A connected mu-alternating path or cycle usable as one component of a
// symmetric difference mu ^ eta.
struct AltComponent {
  std::vector<int> edges;     // canonical edge indices, ascending
  std::vector<int> vertices;  // unified ids, ascending
  int t = 0;                  // size gain when applied
};

// Every valid component with at most max_edges edges, canonical order.
std::vector<AltComponent> alternating_components(const PreferenceInstance& inst,
                                                 const Matching& mu, int max_edges,
                                                 std::int64_t component_cap);

// All matchings eta with |mu ^ eta| <= q, enumerated by choosing disjoint
// alternating path/cycle components (difference-first search).
void enumerate_matchings_near(const PreferenceInstance& inst, const Matching& mu,
                              int q, const MatchingVisitor& visit,
                              const OracleOptions& opts = {});

// Is there a matching of size >= stable_size + t with at most k blocking
// edges? Returns the first witness in enumeration order.
std::optional<Matching> oracle_asm(const PreferenceInstance& inst, int k, int t,
                                   const OracleOptions& opts = {});

// Exact LS-ASM ground truth. mu must be stable (Error("MuNotStable")).
// With opts.full_enumeration the answer is recomputed by filtering the
// full matching stream instead of the difference-first search.
std::optional<Matching> oracle_lsasm(const PreferenceInstance& inst, const Matching& mu,
                                     int k, int q, int t,
                                     const OracleOptions& opts = {});

}  // namespace almost_stable

#endif  // ALMOST_STABLE_ORACLE_HPP
