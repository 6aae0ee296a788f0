#ifndef ALMOST_STABLE_CORE_HPP
#define ALMOST_STABLE_CORE_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace almost_stable {

// Base error types. InputError maps to CLI exit code 2, InternalError to 3.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

enum class Side : std::uint8_t { A, B };

inline Side other_side(Side s) { return s == Side::A ? Side::B : Side::A; }
inline char side_char(Side s) { return s == Side::A ? 'a' : 'b'; }

// Partner value meaning "unmatched". Agents are 1-based, so 0 is free.
inline constexpr int kUnmatched = 0;
// Rank assigned to the unmatched state: worse than every list position.
inline constexpr int kUnmatchedRank = std::numeric_limits<int>::max();

// A bipartite preference system with strict, incomplete, mutually
// consistent lists. Immutable after construction; queries are const.
class PreferenceInstance {
 public:
  PreferenceInstance() = default;  // empty 0x0 instance

  // Validates raw 1-based preference lists and builds rank tables.
  // Throws InputError with codes NonMutualPreference, DuplicateEntry,
  // IndexOutOfRange.
  static PreferenceInstance validate(int n_a, int n_b,
                                     std::vector<std::vector<int>> prefs_a,
                                     std::vector<std::vector<int>> prefs_b);

  int num_a() const { return n_a_; }
  int num_b() const { return n_b_; }
  int num_agents() const { return n_a_ + n_b_; }

  const std::vector<int>& prefs_a(int a) const { return prefs_a_[a]; }
  const std::vector<int>& prefs_b(int b) const { return prefs_b_[b]; }

  // 1-based rank (1 = most preferred); 0 when unacceptable.
  int rank_a(int a, int b) const { return rank_a_[a][b]; }
  int rank_b(int b, int a) const { return rank_b_[b][a]; }
  bool acceptable(int a, int b) const { return rank_a_[a][b] != 0; }

  int max_degree() const { return max_degree_; }

  // Canonical edge order: ascending a, then position in a's list.
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::pair<int, int> edge(int idx) const { return edges_[idx - 1]; }  // 1-based
  // 0 when (a,b) is not an edge.
  int edge_index(int a, int b) const;

  // Unified vertex ids 1..nA+nB used by graph-level algorithms.
  int uid_a(int a) const { return a; }
  int uid_b(int b) const { return n_a_ + b; }
  bool uid_is_a(int uid) const { return uid <= n_a_; }
  int uid_index(int uid) const { return uid_is_a(uid) ? uid : uid - n_a_; }

  // Canonical edge indices incident to a unified vertex id, ascending.
  const std::vector<int>& incident_edges(int uid) const {
    return incident_[uid];
  }
  // The other endpoint (unified) of edge idx as seen from uid.
  int edge_other(int idx, int uid) const {
    auto [a, b] = edges_[idx - 1];
    return uid == a ? uid_b(b) : uid_a(a);
  }
  int edge_uid_a(int idx) const { return edges_[idx - 1].first; }
  int edge_uid_b(int idx) const { return uid_b(edges_[idx - 1].second); }

 private:
  int n_a_ = 0;
  int n_b_ = 0;
  int max_degree_ = 0;
  std::vector<std::vector<int>> prefs_a_;  // [1..nA]
  std::vector<std::vector<int>> prefs_b_;  // [1..nB]
  std::vector<std::vector<int>> rank_a_;   // [1..nA][1..nB]
  std::vector<std::vector<int>> rank_b_;   // [1..nB][1..nA]
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> edge_index_;  // [a][b] -> 1-based idx or 0
  std::vector<std::vector<int>> incident_;    // [uid] -> edge indices
};

// A set of disjoint acceptable edges with partner lookup.
class Matching {
 public:
  // Validates that edges are acceptable and agent-disjoint.
  static Matching from_edges(const PreferenceInstance& inst,
                             const std::vector<std::pair<int, int>>& edges);
  static Matching empty(const PreferenceInstance& inst);

  int size() const { return static_cast<int>(edges_.size()); }
  // Edges sorted in canonical edge order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int partner_a(int a) const { return partner_a_[a]; }
  int partner_b(int b) const { return partner_b_[b]; }
  bool contains(int a, int b) const { return partner_a_[a] == b; }

  // Partner of a unified vertex id as a unified id; 0 when unmatched.
  int partner_uid(const PreferenceInstance& inst, int uid) const {
    if (inst.uid_is_a(uid)) {
      int b = partner_a_[uid];
      return b == kUnmatched ? 0 : inst.uid_b(b);
    }
    int a = partner_b_[inst.uid_index(uid)];
    return a == kUnmatched ? 0 : a;
  }

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> partner_a_;
  std::vector<int> partner_b_;
};

// Acceptable non-matching edges whose endpoints both prefer each other to
// their current state; being unmatched ranks below every neighbor.
std::vector<std::pair<int, int>> blocking_edges(const PreferenceInstance& inst,
                                                const Matching& m);

inline bool is_stable(const PreferenceInstance& inst, const Matching& m) {
  return blocking_edges(inst, m).empty();
}

// True iff a prefers b to their current partner in m (A-side view).
bool a_prefers(const PreferenceInstance& inst, const Matching& m, int a, int b);
bool b_prefers(const PreferenceInstance& inst, const Matching& m, int b, int a);

// Edges in exactly one of the two matchings, canonical order.
std::vector<std::pair<int, int>> symmetric_difference(const Matching& mu,
                                                      const Matching& eta);

enum class ComponentKind : std::uint8_t {
  AugmentingPath,
  AlternatingPathNonAugmenting,
  AlternatingCycle,
  Invalid,
};

const char* to_string(ComponentKind k);

struct AlternatingStructure {
  ComponentKind kind = ComponentKind::Invalid;
  int edge_count = 0;          // q_i
  int matched_edge_count = 0;  // |mu_i|
};

struct ClassifiedComponent {
  AlternatingStructure structure;
  std::vector<int> edges;     // canonical edge indices, ascending
  std::vector<int> vertices;  // unified ids, ascending
};

// Connected components of the subgraph induced by edge_subset (canonical
// edge indices), each classified against mu. A component is non-Invalid
// only if it is a simple path or cycle whose edges strictly alternate
// between mu and non-mu and, for paths, every endpoint whose incident
// component edge is outside mu is unmatched in mu.
std::vector<ClassifiedComponent> classify_components(
    const PreferenceInstance& inst, const Matching& mu,
    const std::vector<int>& edge_subset);

// --- Text formats -----------------------------------------------------
//
// Instance file ('#' starts a comment line):
//   instance <nA> <nB>
//   a <i> : <b-indices in preference order>   (nA lines)
//   b <j> : <a-indices in preference order>   (nB lines)
// Matching file: one "<i> <j>" pair per line meaning A_i-B_j.

PreferenceInstance parse_instance(std::istream& in);
PreferenceInstance load_instance(const std::string& path);
void write_instance(std::ostream& out, const PreferenceInstance& inst);
std::string instance_to_string(const PreferenceInstance& inst);

Matching parse_matching(std::istream& in, const PreferenceInstance& inst);
Matching load_matching(const std::string& path, const PreferenceInstance& inst);
void write_matching(std::ostream& out, const Matching& m);
void save_matching(const std::string& path, const Matching& m);

}  // namespace almost_stable

#endif  // ALMOST_STABLE_CORE_HPP
