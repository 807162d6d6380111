#include "antipodal/set_cover.hpp"

#include <algorithm>

namespace antipodal {
namespace {

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t e = 0; e < a.size(); ++e) {
    if (a[e] && !b[e]) return false;
  }
  return true;
}

struct Search {
  const CoverMatrix& sets;
  std::size_t universe;
  std::vector<std::size_t> best;
  std::vector<std::size_t> chosen;
  std::vector<int> covered;  // multiplicity

  void run(std::size_t limit) {
    if (chosen.size() >= limit) return;
    std::size_t e = 0;
    while (e < universe && covered[e] > 0) ++e;
    if (e == universe) {
      best = chosen;
      return;
    }
    if (chosen.size() + 1 >= limit) return;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!sets[i][e]) continue;
      chosen.push_back(i);
      for (std::size_t k = 0; k < universe; ++k) covered[k] += sets[i][k];
      run(best.empty() ? limit : best.size());
      for (std::size_t k = 0; k < universe; ++k) covered[k] -= sets[i][k];
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<std::size_t> prune_dominated(const CoverMatrix& sets, std::size_t universe) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool empty = std::none_of(sets[i].begin(), sets[i].begin() + static_cast<std::ptrdiff_t>(universe),
                              [](bool b) { return b; });
    bool dominated = empty;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (j == i || !subset(sets[i], sets[j])) continue;
      // Equal sets: the lower index survives.
      dominated = !subset(sets[j], sets[i]) || j < i;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::optional<std::vector<std::size_t>> greedy_set_cover(const CoverMatrix& sets, std::size_t universe) {
  std::vector<bool> covered(universe, false);
  std::vector<std::size_t> picks;
  std::size_t left = universe;
  while (left > 0) {
    std::size_t best = sets.size(), gain = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::size_t g = 0;
      for (std::size_t e = 0; e < universe; ++e) g += sets[i][e] && !covered[e];
      if (g > gain) gain = g, best = i;
    }
    if (gain == 0) return std::nullopt;
    picks.push_back(best);
    for (std::size_t e = 0; e < universe; ++e) {
      if (sets[best][e] && !covered[e]) covered[e] = true, --left;
    }
  }
  // Drop picks whose elements are all covered by the others.
  for (std::size_t k = picks.size(); k-- > 0;) {
    std::vector<int> count(universe, 0);
    for (std::size_t q = 0; q < picks.size(); ++q) {
      if (q == k) continue;
      for (std::size_t e = 0; e < universe; ++e) count[e] += sets[picks[q]][e];
    }
    if (std::all_of(count.begin(), count.end(), [](int c) { return c > 0; })) picks.erase(picks.begin() + k);
  }
  std::sort(picks.begin(), picks.end());
  return picks;
}

std::optional<std::vector<std::size_t>> exact_set_cover(const CoverMatrix& sets, std::size_t universe) {
  if (universe == 0) return std::vector<std::size_t>{};
  auto greedy = greedy_set_cover(sets, universe);
  if (!greedy) return std::nullopt;
  Search s{sets, universe, {}, {}, std::vector<int>(universe, 0)};
  s.run(greedy->size());
  if (s.best.empty()) return greedy;
  std::sort(s.best.begin(), s.best.end());
  return s.best;
}

}  // namespace antipodal
