#ifndef ALMOST_STABLE_KNAPSACK_HPP
#define ALMOST_STABLE_KNAPSACK_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "almost_stable/core.hpp"

namespace almost_stable {

struct KnapsackItem {
  std::int64_t a = 0;  // cost against budget c1
  std::int64_t b = 0;  // cost against budget c2
  std::int64_t p = 0;  // profit
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  std::int64_t p = 0;  // profit target
};

// Cell cap for the DP table; ALMOST_STABLE_MAX_CELLS overrides the
// built-in default of 1e9.
std::int64_t knapsack_cell_cap();

// Exact pseudo-polynomial solver, O(n*c1*c2) time. Returns 1-based item
// indices of a feasible set when one exists. The DP maximizes profit over
// budget pairs; the answer is yes iff the maximum within (c1,c2) reaches p.
// The returned set is the canonical reconstruction: the forward pass
// prefers "take" on profit ties, and the walk-back visits items from the
// last to the first. Throws Error("BudgetOverflow", ...) when
// (c1+1)*(c2+1) exceeds the cell cap, InputError on negative values.
std::optional<std::vector<int>> solve_2dkp(const KnapsackInstance& inst,
                                           std::int64_t cell_cap = knapsack_cell_cap());

}  // namespace almost_stable

#endif  // ALMOST_STABLE_KNAPSACK_HPP
