#pragma once

// Classifying objects for degree-n cocycles, mapping telescopes over interval
// cylinders, word-length telescopes of group nerves, and the forced extension
// norm over the triangulated cube.
//
// The classifying object K(pi, n) is the cubical abelian group whose m-cubes
// are the degree-n cocycles of a domain complex attached to box^m: the
// representable at box^m for the plain flavor, the conical nerve of the box
// poset for the conical flavor, both truncated at n+1 (the cocycle condition
// lives on (n+1)-cubes and nothing above it matters). A site morphism
// u: box^a -> box^b acts by pulling cocycles back along the induced function
// between the domains, and a cubical function A -> K(pi, n) corresponds to a
// degree-n cocycle of A with values in pi.
//
// Cubes are numbered by their value tables in lexicographic order, so ids are
// deterministic. The pointwise abelian group structure is total for finite
// coefficients; under an integer value cap or a stage bound it is only
// subadditive (stage i plus stage j lands in stage i+j), and add() throws
// when a sum escapes the enumerated object.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "cubetop/builders.hpp"
#include "cubetop/cohomology.hpp"
#include "cubetop/cubical_set.hpp"

namespace cubetop {

struct ClassifyingOptions {
  bool conical = false;  // conical-nerve domains instead of representables
  // Required over the integers (the fibers are infinite otherwise); values
  // are restricted to |v| <= value_cap.
  std::optional<long long> value_cap;
  // Stage bound: keep only cocycles whose value seminorms are all <= stage.
  std::optional<mpq_class> stage;
  long long max_per_dim = 2'000'000;
};

struct ClassifyingObject {
  CSetPtr set;
  CoefficientGroup pi;
  int n = 0;
  int D = 0;
  ClassifyingOptions options;
  std::vector<CSetPtr> domain;                     // [m] = complex attached to box^m
  std::vector<IntegerChainComplex> domain_chains;  // chains(domain[m])
  // values[m][id] = the cocycle over the nondegenerate degree-n basis of
  // domain[m], in the id order of `set`.
  std::vector<std::vector<std::vector<mpq_class>>> values;

  cube_id id_of(const std::vector<mpq_class>& vals, int m) const;  // throws if absent
  cube_id zero(int m) const;
  cube_id neg(int m, cube_id a) const;
  // Pointwise sum; throws when the sum escapes the enumerated object (only
  // possible under a value cap or stage bound).
  cube_id add(int m, cube_id a, cube_id b) const;

 private:
  friend ClassifyingObject classifying_object(const CoefficientGroup&, int, int,
                                              const ClassifyingOptions&);
  std::vector<std::map<std::vector<mpq_class>, cube_id>> index_;
};

ClassifyingObject classifying_object(const CoefficientGroup& pi, int n, int D,
                                     const ClassifyingOptions& opt = {});

// Inclusion of a smaller enumeration (tighter stage or cap, same pi, n, D,
// flavor) into a larger one, matching cubes by value table.
CubicalFunction classifying_inclusion(const ClassifyingObject& small,
                                      const ClassifyingObject& big);

// The degree-n cocycle on A classified by f: A -> K.set (plain flavor): its
// value on a nondegenerate n-cube is the image cocycle's value on the top
// cell of the n-th domain. Requires A->dim >= n and K.D >= A->dim.
NormedCochain classified_cocycle(const ClassifyingObject& K, const CubicalFunction& f,
                                 const IntegerChainComplex& XA);

// The function A -> K.set classifying a degree-n cocycle on A (the inverse
// correspondence): an m-cube sigma maps to the pullback of the cocycle along
// the function rep(m) -> A that sigma classifies.
CubicalFunction classifying_function(const ClassifyingObject& K, const NormedCochain& c,
                                     const IntegerChainComplex& XA);

// ---------------------------------------------------------------------------
// Mapping telescopes.

struct TelescopeStages {
  std::vector<CSetPtr> objects;        // X_0, ..., X_N, equal truncation
  std::vector<CubicalFunction> steps;  // steps[i]: X_i -> X_{i+1}
};

struct Telescope {
  CSetPtr set;
  CSetPtr interval;  // conical nerve of the two-element chain
  // stage_map[i]: X_i -> telescope, through the start end of its cylinder
  // (the last object maps in directly).
  std::vector<CubicalFunction> stage_map;
  // vertex_stage[v] = the level of a telescope vertex: stage i vertices sit
  // at level i, and the gluing (x, 1)_i ~ (step_i x, 0)_{i+1} is level-safe.
  std::vector<int> vertex_stage;
};

// Coequalizer of the stage cylinders X_i (x) I along the steps: the end-1
// copy of X_i in its cylinder is glued to the end-0 copy inside the next
// cylinder through steps[i]; the last cylinder's end-1 is glued into X_N
// directly. With no steps the telescope is X_0 itself.
Telescope telescope(const TelescopeStages& stages);

// The semigroup product on telescope vertices: both factors are pushed to
// the larger of their two levels, where the stage must have a single vertex
// (as for classifying-object stages and group-nerve stages); the product is
// that vertex. Associativity on triples is the max-semilattice identity.
cube_id telescope_vertex_product(const Telescope& T, cube_id a, cube_id b);

// ---------------------------------------------------------------------------
// Word-length telescopes.

// Word-length axioms on a finite group: l(e) = 0, l(g) > 0 off the identity,
// l(g) = l(g^{-1}), and l(gh) <= l(g) + l(h).
void validate_word_length(const FiniteGroup& G, const std::vector<mpq_class>& length);

// Telescope of the length filtration of the conical group nerve: stage i
// keeps the cubes all of whose comparable vertex pairs x <= y carry ratios
// h(x)^{-1} h(y) of length <= beta[i]; steps are the stage inclusions.
// beta must be nonnegative and nondecreasing.
Telescope word_length_telescope(const FiniteGroup& G, const std::vector<mpq_class>& length,
                                const std::vector<mpq_class>& beta, int D,
                                long long max_cubes = 2'000'000);

// The integer analogue, built directly (the full nerve of Z is infinite):
// stage i has m-cubes the vertex tables h: vertices(box^m) -> Z with h(0) = 0
// and |h(y) - h(x)| <= beta[i] on comparable pairs; actions precompose with
// vertex evaluation and renormalize to h(0) = 0.
Telescope integer_word_telescope(const std::vector<long long>& beta, int D,
                                 long long max_cubes = 2'000'000);

// ---------------------------------------------------------------------------
// Forced extension norm.

// Over the 2-truncated sharp replacement of the n-cube, seed the value 1 on
// the images of the original edges and propagate the degree-1 cocycle
// condition across the nondegenerate 2-cubes until the value on the
// bottom-corner-to-top-corner edge is forced; returns that value (n, growing
// linearly in the family). Requires 1 <= n <= 6.
mpq_class forced_extension_norm(int n, long long max_per_dim = 2'000'000,
                                long long node_budget = 1'000'000'000);

}  // namespace cubetop
