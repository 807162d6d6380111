#pragma once

// Minimum set cover over a small universe. sets[i][e] says whether set i
// covers element e.

#include <cstddef>
#include <optional>
#include <vector>

namespace antipodal {

using CoverMatrix = std::vector<std::vector<bool>>;

// Removes duplicate and dominated sets (ties keep the lower index).
// Returns the surviving indices in increasing order.
std::vector<std::size_t> prune_dominated(const CoverMatrix& sets, std::size_t universe);

// Repeatedly takes the set covering most uncovered elements (lowest index on
// ties), then drops redundant picks. Empty optional if no cover exists.
std::optional<std::vector<std::size_t>> greedy_set_cover(const CoverMatrix& sets, std::size_t universe);

// Smallest cover by depth-first search branching on the first uncovered
// element. Intended for a few dozen sets at most.
std::optional<std::vector<std::size_t>> exact_set_cover(const CoverMatrix& sets, std::size_t universe);

}  // namespace antipodal
