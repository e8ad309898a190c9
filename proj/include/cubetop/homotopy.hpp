#pragma once

// Horn filling and the Kan property.
//
// An (n, i, s)-horn in C is a cubical function from the open box (the
// boundary of rep(n) minus the (i, s) face) into C; C is Kan up to dimension
// d when every such horn with n <= d extends over an n-cube. Horn maps are
// enumerated by the map-search engine; fillers are looked up in a precomputed
// dictionary mapping each n-cube of the target to its restricted boundary
// data, so a failed lookup is an exhaustively verified counterexample.

#include <limits>
#include <optional>

#include "cubetop/builders.hpp"
#include "cubetop/map_search.hpp"

namespace cubetop {

struct HornWitness {
  int n = 0;
  int i = 1;
  int sign = 0;
  CSetPtr domain;        // the open box, truncated at n
  CubicalFunction horn;  // domain -> C, admits no filling n-cube
};

struct KanReport {
  bool kan = true;
  // False when the node budget stopped some horn enumeration before
  // exhausting it; kan=true is then only "no counterexample found".
  bool complete = true;
  long long horns = 0;  // horn maps enumerated across all (n, i, s)
  std::optional<HornWitness> witness;
};

KanReport is_kan(const CSetPtr& C, int up_to,
                 long long node_budget = std::numeric_limits<long long>::max());

}  // namespace cubetop
