#pragma once

// Triangulation, quadrangulation, and sharp replacement.
//
// tri sends a representable n-cube to the nerve of the vertex poset box^n and
// extends to arbitrary cubical sets as a colimit over their nondegenerate
// cells (faces factored through degeneracy roots, as in sd). quad is its
// right adjoint: (quad Y)_n is the set of simplicial maps from the nerve of
// box^n into Y, with actions by precomposition; cube ids are ordered
// lexicographically by value tables, whose first row is the vertex table, so
// for Y the nerve of a poset P the result coincides table-for-table with the
// conical nerve of P. sharp(C) = quad(tri(C)) with the unit C -> sharp(C) as
// the inclusion; the counit of the adjunction induces the retraction
// sharp(sharp C) -> sharp(C) that makes sharp objects recognizable.

#include <map>
#include <vector>

#include "cubetop/map_search.hpp"
#include "cubetop/simplicial.hpp"

namespace cubetop {

// The induced simplicial map between box-poset nerves truncated at T, for a
// site morphism u: box^m -> box^p (every canonical morphism is monotone on
// vertices; chains map pointwise).
SimplicialFunction tri_morphism(const BoxMorphism& u, int T);

struct TriSet {
  SSetPtr sset;  // tri(C), truncated at C->dim
  CSetPtr base;  // C
  // cell_map[p][j]: nerve(box^p) -> tri(C) for the j-th nondegenerate p-cube.
  std::vector<std::vector<SimplicialFunction>> cell_map;
  std::vector<std::vector<int>> nondeg_index;  // [p][id] = j or -1
};

TriSet tri(const CSetPtr& C, bool run_validate = true);

// tri is functorial: the induced simplicial map tri(A) -> tri(B) for f: A -> B.
SimplicialFunction tri_function(const CubicalFunction& f, const TriSet& TA, const TriSet& TB);

struct QuadSet {
  CSetPtr set;   // quad(Y), truncated at D
  SSetPtr base;  // Y
  int D = 0;
  std::vector<PosetNerve> domains;  // domains[m] = nerve of box_poset(m) @ Y->dim
  // content[m][id] = value tables of the corresponding map nerve(box^m) -> Y.
  std::vector<std::vector<std::vector<std::vector<simplex_id>>>> content;

  cube_id id_of(const std::vector<std::vector<simplex_id>>& tables, int m) const;  // throws
  SimplicialFunction member(int m, cube_id g) const;

 private:
  friend QuadSet quad(const SSetPtr&, int, long long, long long, bool);
  std::vector<std::map<std::vector<std::vector<simplex_id>>, cube_id>> index_;
};

QuadSet quad(const SSetPtr& Y, int D, long long max_per_dim = 2'000'000,
             long long node_budget = 1'000'000'000, bool run_validate = true);

// quad is functorial: the induced map quad(Y) -> quad(Z) for a simplicial
// f: Y -> Z. Requires equal D and equal base truncations.
CubicalFunction quad_function(const SimplicialFunction& f, const QuadSet& QY, const QuadSet& QZ);

// Counit tri(quad Y) -> Y of tri -| quad: on the cell of a cube g of quad(Y),
// it is the simplicial map g classifies. TQ must be built on QY.set.
SimplicialFunction tri_counit(const TriSet& TQ, const QuadSet& QY);

struct SharpSet {
  CSetPtr set;   // quad(tri(C)), truncated at D
  CSetPtr base;  // C
  int D = 0;
  TriSet tri_part;
  QuadSet quad_part;
  // Unit C -> sharp(C); present when D >= C->dim.
  bool has_inclusion = false;
  CubicalFunction inclusion;
};

SharpSet sharp(const CSetPtr& C, int D, long long max_per_dim = 2'000'000,
               long long node_budget = 1'000'000'000, bool run_validate = true);

// sharp is functorial. Requires equal truncations of A and B and equal D.
CubicalFunction sharp_function(const CubicalFunction& f, const SharpSet& SA, const SharpSet& SB);

// sharp(C) together with sharp(sharp C) and the counit-induced retraction
// sharp(sharp C) -> sharp(C), a retraction of sharp(C)'s own inclusion.
struct SharpSharp {
  SharpSet first;
  SharpSet second;  // sharp of first.set
  CubicalFunction retraction;
};

SharpSharp sharp_retraction(const CSetPtr& C, long long max_per_dim = 2'000'000,
                            long long node_budget = 1'000'000'000);

enum class Decision { yes, no, indeterminate };

struct SharpDecision {
  Decision decision = Decision::indeterminate;
  bool has_witness = false;
  CubicalFunction witness;  // a retraction sharp(C) -> C when decision == yes
  long long nodes = 0;
};

// Does the inclusion C -> sharp(C) admit a retraction? Backtracking search
// with the inclusion pinned; budget exhaustion reports indeterminate.
SharpDecision is_sharp(const CSetPtr& C, long long node_budget = 1'000'000'000,
                       long long max_per_dim = 2'000'000);

}  // namespace cubetop
