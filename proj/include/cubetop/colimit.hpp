#pragma once

// Finite colimits of cubical sets presented as gluing diagrams: a list of
// objects and a list of parallel pairs of functions to be coequalized. The
// colimit is the disjoint union of the objects with cubes identified per
// dimension by the smallest equivalence relation containing every pair
// (left(c), right(c)); the generator actions descend because the legs commute
// with them.

#include <vector>

#include "cubetop/cubical_set.hpp"

namespace cubetop {

// One identification: left and right share a source and land in the diagram
// objects named by index (indices, not pointers, so an object may repeat).
struct ParallelPair {
  CubicalFunction left;
  int left_object = 0;
  CubicalFunction right;
  int right_object = 0;
};

struct GluingDiagram {
  std::vector<CSetPtr> objects;  // all with equal truncation dimension
  std::vector<ParallelPair> relations;
};

struct ColimitResult {
  CSetPtr set;
  std::vector<CubicalFunction> legs;  // objects[k] -> set
};

// Classes are numbered by their smallest member in disjoint-union order
// (objects in list order), so the result is deterministic.
ColimitResult colimit(const GluingDiagram& D, bool run_validate = false);

// Disjoint union (no relations).
ColimitResult disjoint_union(const std::vector<CSetPtr>& objects);

// Path components of the vertex set under the edge relation (both endpoints
// of every 1-cube identified); component ids numbered by first appearance.
std::vector<int> pi0_labels(const CubicalSet& C);
int pi0_count(const CubicalSet& C);

}  // namespace cubetop
