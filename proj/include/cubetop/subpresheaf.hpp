#pragma once

// Subpresheaf bookkeeping over a fixed ambient cubical set: membership masks,
// generated subpresheaves (spans), largest subpresheaves avoiding given cubes,
// closed stars of vertices, and extraction of a mask as a standalone cubical
// set together with its inclusion.

#include <cstdint>
#include <vector>

#include "cubetop/cubical_set.hpp"

namespace cubetop {

// Membership mask over the cubes of an ambient cubical set.
struct SubMask {
  std::vector<std::vector<std::uint8_t>> member;  // [dim][cube_id] in {0,1}

  static SubMask none(const CubicalSet& C);
  static SubMask all(const CubicalSet& C);
  bool contains(const Cube& c) const { return member[c.dim][c.id] != 0; }
  void add(const Cube& c) { member[c.dim][c.id] = 1; }
  long long size() const;
  bool operator==(const SubMask& o) const { return member == o.member; }
};

SubMask mask_union(const SubMask& a, const SubMask& b);
SubMask mask_intersection(const SubMask& a, const SubMask& b);
bool mask_subset(const SubMask& a, const SubMask& b);

// True when the mask is closed under every generator action (faces going down,
// degeneracies and connections going up), i.e. it selects a subpresheaf.
bool is_action_closed(const CubicalSet& C, const SubMask& m);

// Smallest subpresheaf containing the seed cubes.
SubMask span_of(const CubicalSet& C, const std::vector<Cube>& seeds);

// Cubes from which some target cube is reachable along generator actions.
// Its complement is the largest subpresheaf avoiding every target.
SubMask reverse_reachable(const CubicalSet& C, const std::vector<Cube>& targets);

// Largest subpresheaf of C containing none of the given cubes.
SubMask max_subpresheaf_excluding(const CubicalSet& C, const std::vector<Cube>& excluded);

// Image of a cubical function, as a mask on its target (always closed).
SubMask image_mask(const CubicalFunction& f);

// {c : f(c) = g(c)} for parallel f, g, as a mask on the source (always closed).
SubMask equalizer_mask(const CubicalFunction& f, const CubicalFunction& g);

// Closed star of a vertex v: union of the spans of all nondegenerate cubes
// whose span contains v.
SubMask closed_star(const CubicalSet& C, cube_id v);

// A mask extracted as a cubical set of its own, with the inclusion into the
// ambient set and the partial inverse index (ambient id -> sub id, or -1).
struct SubObject {
  CSetPtr set;
  CubicalFunction inclusion;
  std::vector<std::vector<cube_id>> to_sub;
};

SubObject extract_subpresheaf(const CSetPtr& C, const SubMask& m, bool run_validate = false);

// Corestriction of f through a subobject of its target that contains im(f).
CubicalFunction corestrict(const CubicalFunction& f, const SubObject& sub);

}  // namespace cubetop
