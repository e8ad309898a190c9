#pragma once

// Standard cubical sets: representables and their boundaries/open boxes,
// circles, the Klein bottle, wedges of glued cubes, conical nerves of finite
// posets and finite groups, and seeded random gluings for fuzz tests.

#include <map>
#include <vector>

#include "cubetop/colimit.hpp"
#include "cubetop/cubical_set.hpp"
#include "cubetop/subpresheaf.hpp"

namespace cubetop {

// The representable at box^n, truncated at dimension D: its m-cubes are the
// site morphisms box^m -> box^n, acting by precomposition.
struct Representable {
  CSetPtr set;
  int n = 0;  // the represented object
  std::vector<std::vector<BoxMorphism>> cube_morphism;  // [m][id]

  cube_id id_of(const BoxMorphism& f) const;  // throws if absent
  Cube cube_of(const BoxMorphism& f) const { return Cube{f.dom, id_of(f)}; }
  Cube top() const;  // the identity cube; requires D >= n

 private:
  friend Representable representable(int, int, bool);
  std::vector<std::map<BoxMorphism, cube_id>> index_;
};

Representable representable(int n, int D, bool run_validate = true);

// The function rep(n) -> C classified by an n-cube c (Yoneda): x |-> C(x)(c).
// Requires R.set->dim <= C->dim.
CubicalFunction yoneda_function(const Representable& R, const CSetPtr& C, Cube c);

// The function rep(m) -> rep(m') induced by u: box^m -> box^m', x |-> u o x.
CubicalFunction rep_postcompose(const Representable& from, const Representable& to,
                                const BoxMorphism& u);

// The minimal representable through which a cube factors: the classifying
// function of its nondegenerate root (the cube itself when nondegenerate).
CubicalFunction support_function(const CSetPtr& C, Cube c);

// A subobject of a representable, kept with its ambient.
struct RepPart {
  Representable rep;
  SubObject part;
};

// Largest subpresheaf of rep(n) missing the top cube. Requires D >= n >= 1.
RepPart boundary_set(int n, int D);

// Largest subpresheaf of rep(n) missing the top cube and the (i, sign) face.
RepPart open_box_set(int n, int i, int sign, int D);

CSetPtr point_set(int D);
ColimitResult disjoint_points(int N, int D);

// Directed k-gon: vertices v_0..v_{k-1}, edges e_j: v_j -> v_{j+1 mod k}.
// legs[j] is the inclusion of the j-th edge as a copy of rep(1).
ColimitResult circle(int k, int D);

// Two squares glued along their edge boundaries so that the horizontal edges
// are identified straight and the vertical edges crosswise; the classical
// non-orientable gluing (first homology Z + Z/2).
CSetPtr klein_bottle(int D, bool run_validate = true);

// Wedge with one basepoint and one summand per entry of dims: summand n is a
// copy of rep(n) with its two extreme corners glued to the basepoint.
ColimitResult glued_cube_wedge(const std::vector<int>& dims, int D);

struct FinitePoset {
  int size = 0;
  std::vector<std::vector<std::uint8_t>> leq;  // leq[x][y] = (x <= y)
};
void validate_poset(const FinitePoset& P);
FinitePoset box_poset(int n);    // subsets of {1..n} by inclusion, as bitmasks
FinitePoset chain_poset(int k);  // 0 < 1 < ... < k-1

// Conical nerve of a poset: m-cubes are the monotone maps from the vertex
// poset of box^m to P, acting by precomposition with vertex evaluation.
struct CNervePoset {
  CSetPtr set;
  std::vector<std::vector<std::vector<int>>> table;  // [m][id][vertex] = value in P
  cube_id id_of(const std::vector<int>& values, int m) const;  // throws if absent
};
CNervePoset cnerve_poset(const FinitePoset& P, int D, bool run_validate = true);

struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;  // identity is element 0
};
void validate_group(const FiniteGroup& G);
FiniteGroup cyclic_group(int m);
FiniteGroup symmetric_group_3();

// Conical nerve of a group: m-cubes are maps h from the vertices of box^m to
// G with h(0) = e, giving each cover edge x < y the value h(x)^{-1} h(y);
// actions precompose with vertex evaluation and renormalize to h(0) = e.
// Cubes are ordered by their value table read as a mixed-radix number, so ids
// are arithmetic and no index is stored.
struct CNerveGroup {
  CSetPtr set;
  FiniteGroup group;
  std::vector<std::vector<std::vector<int>>> table;  // [m][id][vertex] = group element
  cube_id id_of(const std::vector<int>& values) const;
};
// Throws CapExceeded when some dimension would hold more than max_cubes cubes.
CNerveGroup cnerve_group(const FiniteGroup& G, int D, long long max_cubes = 2'000'000,
                         bool run_validate = true);

// Seeded random gluing of representable copies along random cube pairs;
// deterministic in the seed, always a valid cubical set.
CSetPtr random_cubical_set(std::uint64_t seed, int D, int n_objects, int n_relations);

}  // namespace cubetop
