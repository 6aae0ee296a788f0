#include "almost_stable/stable.hpp"

#include <set>

namespace almost_stable {

Matching gale_shapley(const PreferenceInstance& inst, Side proposing) {
  bool a_proposes = proposing == Side::A;
  int np = a_proposes ? inst.num_a() : inst.num_b();

  auto list = [&](int p) -> const std::vector<int>& {
    return a_proposes ? inst.prefs_a(p) : inst.prefs_b(p);
  };
  auto acceptor_rank = [&](int q, int p) {
    return a_proposes ? inst.rank_b(q, p) : inst.rank_a(q, p);
  };

  std::vector<int> next(np + 1, 0);           // next list position to try
  std::vector<int> engaged_to(np + 1, 0);     // proposer -> acceptor
  int nq = a_proposes ? inst.num_b() : inst.num_a();
  std::vector<int> holds(nq + 1, 0);          // acceptor -> proposer

  std::set<int> free;
  for (int p = 1; p <= np; ++p)
    if (!list(p).empty()) free.insert(p);

  while (!free.empty()) {
    int p = *free.begin();
    const auto& lst = list(p);
    if (next[p] >= static_cast<int>(lst.size())) {
      free.erase(free.begin());
      continue;
    }
    int q = lst[next[p]++];
    int cur = holds[q];
    if (cur == 0) {
      holds[q] = p;
      engaged_to[p] = q;
      free.erase(free.begin());
    } else if (acceptor_rank(q, p) < acceptor_rank(q, cur)) {
      holds[q] = p;
      engaged_to[p] = q;
      engaged_to[cur] = 0;
      free.erase(free.begin());
      free.insert(cur);
    }
  }

  std::vector<std::pair<int, int>> edges;
  for (int p = 1; p <= np; ++p)
    if (engaged_to[p] != 0) {
      if (a_proposes)
        edges.emplace_back(p, engaged_to[p]);
      else
        edges.emplace_back(engaged_to[p], p);
    }
  return Matching::from_edges(inst, edges);
}

SaturatedSet saturated_set(const PreferenceInstance& inst, const Matching& m) {
  SaturatedSet s;
  for (int a = 1; a <= inst.num_a(); ++a)
    if (m.partner_a(a) != kUnmatched) s.a.push_back(a);
  for (int b = 1; b <= inst.num_b(); ++b)
    if (m.partner_b(b) != kUnmatched) s.b.push_back(b);
  return s;
}

}  // namespace almost_stable
