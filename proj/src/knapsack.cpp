#include "almost_stable/knapsack.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace almost_stable {

std::int64_t knapsack_cell_cap() {
  if (const char* env = std::getenv("ALMOST_STABLE_MAX_CELLS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1'000'000'000;
}

std::optional<std::vector<int>> solve_2dkp(const KnapsackInstance& inst,
                                           std::int64_t cell_cap) {
  for (const auto& it : inst.items)
    if (it.a < 0 || it.b < 0 || it.p < 0)
      throw InputError("NegativeValue", "knapsack values must be non-negative");
  if (inst.c1 < 0 || inst.c2 < 0 || inst.p < 0)
    throw InputError("NegativeValue", "knapsack budgets/target must be non-negative");

  std::int64_t w1 = inst.c1 + 1, w2 = inst.c2 + 1;
  if (w1 > cell_cap / w2)
    throw Error("BudgetOverflow", "DP table of " + std::to_string(w1) + "x" +
                                      std::to_string(w2) + " cells exceeds cap " +
                                      std::to_string(cell_cap));
  std::size_t cells = static_cast<std::size_t>(w1 * w2);
  int n = static_cast<int>(inst.items.size());

  std::vector<std::int64_t> dp(cells, 0);
  // take[i] marks the cells whose optimum takes item i.
  std::vector<std::vector<std::uint64_t>> take(
      n, std::vector<std::uint64_t>((cells + 63) / 64, 0));
  auto at = [&](std::int64_t x, std::int64_t y) -> std::size_t {
    return static_cast<std::size_t>(x * w2 + y);
  };

  for (int i = 0; i < n; ++i) {
    const auto& it = inst.items[i];
    if (it.a > inst.c1 || it.b > inst.c2) continue;
    for (std::int64_t x = inst.c1; x >= it.a; --x) {
      for (std::int64_t y = inst.c2; y >= it.b; --y) {
        std::int64_t cand = dp[at(x - it.a, y - it.b)] + it.p;
        if (cand >= dp[at(x, y)]) {
          dp[at(x, y)] = cand;
          std::size_t cell = at(x, y);
          take[i][cell >> 6] |= std::uint64_t{1} << (cell & 63);
        }
      }
    }
  }

  if (dp[at(inst.c1, inst.c2)] < inst.p) return std::nullopt;

  std::vector<int> chosen;
  std::int64_t x = inst.c1, y = inst.c2;
  for (int i = n - 1; i >= 0; --i) {
    std::size_t cell = at(x, y);
    if (take[i][cell >> 6] >> (cell & 63) & 1) {
      chosen.push_back(i + 1);
      x -= inst.items[i].a;
      y -= inst.items[i].b;
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace almost_stable
