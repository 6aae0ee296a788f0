#ifndef ALMOST_STABLE_STABLE_HPP
#define ALMOST_STABLE_STABLE_HPP

#include "almost_stable/core.hpp"

namespace almost_stable {

// Deferred acceptance with the given proposing side. Among free proposers
// the lowest index proposes first; the output does not depend on this
// order, it only makes runs reproducible step by step.
Matching gale_shapley(const PreferenceInstance& inst, Side proposing);

struct SaturatedSet {
  std::vector<int> a;  // ascending
  std::vector<int> b;  // ascending

  friend bool operator==(const SaturatedSet&, const SaturatedSet&) = default;
};

SaturatedSet saturated_set(const PreferenceInstance& inst, const Matching& m);

}  // namespace almost_stable

#endif  // ALMOST_STABLE_STABLE_HPP
