#pragma once

// Exhaustive search for cubical functions src -> dst as a constraint
// propagation problem. Variables are the nondegenerate cubes of src in
// descending dimension (top cells determine the most); assigning a cube
// forces its whole span through the generator actions, with conflicts
// detected eagerly. Candidates for an unassigned cube are read off a reverse
// face index of dst keyed by any already-forced face.
//
// The search is deterministic: variables in fixed order, candidates in
// ascending cube id, so results are reproducible run to run.

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "cubetop/cubical_set.hpp"

namespace cubetop {

struct MapSearchOptions {
  // Each attempted candidate assignment costs one node.
  long long node_budget = std::numeric_limits<long long>::max();
  // Stop after this many results (found maps are still returned).
  long long max_results = std::numeric_limits<long long>::max();
  // Keep the found maps in MapSearchResult::maps.
  bool store = true;
  // Called per found map with the full per-dimension value table; return
  // false to stop the search early.
  std::function<bool(const std::vector<std::vector<cube_id>>&)> on_result;
};

struct MapSearchResult {
  std::vector<CubicalFunction> maps;
  long long count = 0;
  // True when the whole space was exhausted (every map is accounted for);
  // false when the node budget, max_results or a callback stopped the search.
  bool complete = true;
  bool budget_exhausted = false;
  long long nodes = 0;
};

using MapPins = std::vector<std::pair<Cube, cube_id>>;

MapSearchResult enumerate_maps(const CSetPtr& src, const CSetPtr& dst, const MapPins& pins = {},
                               const MapSearchOptions& opt = {});

// Convenience: the number of maps, demanding a complete search.
long long count_maps(const CSetPtr& src, const CSetPtr& dst, const MapPins& pins = {});

}  // namespace cubetop
