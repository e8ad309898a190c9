#pragma once

// Cubical subdivision sd, the endpoint-collapse maps gamma, and the right
// adjoint Ex, all dimension-truncated.
//
// sd box^1 is the directed two-edge chain on the interval's three
// sub-intervals, [0,0] -> [0,1] -> [1,1], and sd box^n is its n-fold tensor
// power. Every vertex of sd box^n carries the interval tuple it denotes,
// stored as a pair of corner bitmasks lo <= hi. A site morphism f: box^m ->
// box^n acts on vertices by [lo, hi] |-> [f(lo), f(hi)]; this vertex rule
// extends to exactly one cubical function sd box^m -> sd box^n, and the
// extension is found by exhaustive search with the uniqueness asserted, not
// assumed.
//
// For a general cubical set, sd(C) is the colimit of the subdivided cells of
// C glued along subdivided faces (each face factored through its degeneracy
// root), with the per-cell maps kappa_c retained for later bookkeeping. The
// collapse maps gamma^- (send [lo, hi] to lo) and gamma^+ (to hi) are natural
// in C, and Ex enumerates (Ex C)_n = cubical functions sd box^n -> C with
// actions by precomposition.

#include <map>
#include <vector>

#include "cubetop/builders.hpp"
#include "cubetop/colimit.hpp"
#include "cubetop/map_search.hpp"

namespace cubetop {

// sd box^n with vertex labels; truncated at D >= n.
struct SdRep {
  CSetPtr set;
  int n = 0;
  int D = 0;
  std::vector<std::array<std::uint32_t, 2>> corners;  // [vertex id] = (lo, hi)

  cube_id vertex_of(std::uint32_t lo, std::uint32_t hi) const;  // throws if absent

 private:
  friend struct SdCache;
  std::map<std::pair<std::uint32_t, std::uint32_t>, cube_id> index_;
};

SdRep sd_representable(int n, int D);

// The unique extension of the interval vertex rule of f, between sd
// representables truncated at D. Throws if the extension is not unique.
CubicalFunction sd_morphism(const BoxMorphism& f, int D);

// sd of a cubical set with its per-cell inclusions.
struct SdSet {
  CSetPtr set;   // sd(C), truncated at C->dim
  CSetPtr base;  // C
  // cell_map[p][j]: sd box^p -> sd(C) for the j-th nondegenerate p-cube.
  std::vector<std::vector<CubicalFunction>> cell_map;
  // nondeg_index[p][id] = j such that base->nondeg[p][j] == id, else -1.
  std::vector<std::vector<int>> nondeg_index;
};

SdSet sd(const CSetPtr& C, bool run_validate = true);

// sd is functorial: the induced map sd(A) -> sd(B) for f: A -> B.
CubicalFunction sd_function(const CubicalFunction& f, const SdSet& SA, const SdSet& SB);

// gamma on a representable: sd box^n -> rep(n); sign 0 sends a vertex to its
// lower corner, sign 1 to its upper corner. Unique extension, asserted.
CubicalFunction gamma_representable(int sign, int n, int D);

// The natural collapse sd(C) -> C.
CubicalFunction gamma(int sign, const SdSet& S);

// Right adjoint: (Ex C)_n = cubical functions sd box^n -> C for n <= D,
// with actions by precomposition. Requires D <= C->dim. Cube ids are assigned
// in lexicographic order of the map tables, so the construction is canonical.
struct ExSet {
  CSetPtr set;   // Ex(C) truncated at D
  CSetPtr base;  // C
  int D = 0;
  std::vector<SdRep> domains;  // domains[n] = sd box^n @ D
  // content[n][id] = value tables of the corresponding map sd box^n -> C.
  std::vector<std::vector<std::vector<std::vector<cube_id>>>> content;

  cube_id id_of(const std::vector<std::vector<cube_id>>& tables, int n) const;  // throws
  CubicalFunction member(int n, cube_id g) const;

 private:
  friend ExSet ex(const CSetPtr&, int, long long, long long, bool);
  std::vector<std::map<std::vector<std::vector<cube_id>>, cube_id>> index_;
};

ExSet ex(const CSetPtr& C, int D, long long max_per_dim = 2'000'000,
         long long node_budget = 1'000'000'000, bool run_validate = true);

// Ex is functorial: the induced map Ex(C) -> Ex(C') for f: C -> C'.
CubicalFunction ex_function(const CubicalFunction& f, const ExSet& EC, const ExSet& ED);

// The component-wise adjoint C -> Ex(C) of gamma: an n-cube c goes to the
// composite of gamma on sd box^n with the classifying map of c.
CubicalFunction gamma_hat(int sign, const ExSet& E);

// Unit C -> Ex(sd C) and counit sd(Ex C) -> C of sd -| Ex.
CubicalFunction sd_unit(const SdSet& S, const ExSet& E);     // E built on S.set
CubicalFunction sd_counit(const SdSet& SE, const ExSet& E);  // SE built on E.set

// The adjunction bijection on hom-sets, both directions.
CubicalFunction transpose_to_ex(const CubicalFunction& f, const SdSet& SB, const ExSet& EC);
CubicalFunction transpose_from_ex(const CubicalFunction& g, const SdSet& SB, const ExSet& EC);

}  // namespace cubetop
