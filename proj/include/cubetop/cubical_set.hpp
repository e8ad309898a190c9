#pragma once

// Dimension-truncated presheaves over the box site, stored as generator
// action tables.
//
// A presheaf C assigns a finite cube set C_n to every dimension n <= dim and a
// map C(f): C_n -> C_m to every site morphism f: box^m -> box^n. Only the
// generator actions are stored:
//
//   face[n][i-1][s] : C_n     -> C_{n-1}   (coface inserting constant s at slot i)
//   degen[n][i-1]   : C_{n-1} -> C_n       (collapse of coordinate i)
//   conn[n][i-1]    : C_{n-1} -> C_n       (connection merging coordinates i, i+1)
//
// General actions are evaluated by factoring the morphism into generator
// steps (box_site decompose) and applying the per-step tables; validate()
// checks that all within-truncation generator pairs compose consistently, so
// the evaluation is independent of the chosen factorization.
//
// A cube is degenerate when it is the image of some collapse or connection
// action. Every cube factors uniquely as act(sigma)(root) with sigma a
// surjective site morphism and root nondegenerate; finalize() computes this
// factorization bottom-up and it is what lets the rest of the engine restrict
// attention to nondegenerate cubes.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cubetop/box_site.hpp"
#include "cubetop/errors.hpp"

namespace cubetop {

using cube_id = std::int32_t;

// A cube addressed by (dimension, ordinal).
struct Cube {
  int dim = 0;
  cube_id id = 0;

  bool operator==(const Cube&) const = default;
  bool operator<(const Cube& o) const {
    if (dim != o.dim) return dim < o.dim;
    return id < o.id;
  }
};

struct CubicalSet {
  int dim = 0;
  std::vector<int> cube_count;  // size dim+1

  // Action tables; see the header comment for the indexing. face[0], degen[0]
  // and conn[0]/conn[1] are empty.
  std::vector<std::vector<std::array<std::vector<cube_id>, 2>>> face;
  std::vector<std::vector<std::vector<cube_id>>> degen;
  std::vector<std::vector<std::vector<cube_id>>> conn;

  // Derived by finalize():
  std::vector<std::vector<std::uint8_t>> degenerate;
  std::vector<std::vector<cube_id>> nondeg;
  std::vector<std::vector<BoxMorphism>> ez_sigma;  // box^n ->> box^{root dim}
  std::vector<std::vector<Cube>> ez_root;

  // Sizes the table skeleton for the given per-dimension cube counts.
  void allocate(int truncation_dim, const std::vector<int>& counts);

  int count(int n) const { return (n < 0 || n > dim) ? 0 : cube_count[n]; }
  bool degenerate_cube(const Cube& c) const { return degenerate[c.dim][c.id] != 0; }

  // Single-generator actions with range checks in debug builds.
  cube_id face_of(int n, int i, int sign, cube_id c) const { return face[n][i - 1][sign][c]; }
  cube_id degen_of(int n, int i, cube_id c) const { return degen[n][i - 1][c]; }
  cube_id conn_of(int n, int i, cube_id c) const { return conn[n][i - 1][c]; }
};

using CSetPtr = std::shared_ptr<const CubicalSet>;

// Applies the action of one generator step. The step is a site morphism
// box^{a} -> box^{b}; its action maps a cube of dimension b to dimension a.
Cube act_step(const CubicalSet& C, const GeneratorStep& step, Cube c);

// Action of an arbitrary site morphism f: box^m -> box^n on a cube of
// dimension n; returns a cube of dimension m. Using a precomputed
// factorization (act_word) avoids refactoring f in hot loops. The word is
// applied from its last step to its first (contravariance).
Cube act_word(const CubicalSet& C, const std::vector<GeneratorStep>& word, Cube c);
Cube act(const CubicalSet& C, const BoxMorphism& f, Cube c);

// Structural checks. validate_tables checks sizes/ranges; validate checks the
// cubical identities by sweeping every composable within-truncation generator
// pair (u: box^a -> box^b, v: box^b -> box^c) and comparing act(u) o act(v)
// with the action of the canonical recomposition of v o u. Throws
// ValidationError naming the failing identity, dimension and cube.
void validate_tables(const CubicalSet& C);
void validate(const CubicalSet& C);

// Computes degeneracy flags, nondegenerate lists and the (sigma, root)
// factorizations, then runs validate(). Call after filling the tables.
void finalize(CubicalSet& C, bool run_validate = true);

// Asserts that every choice of generator preimage yields the same (sigma,
// root) factorization for every degenerate cube (uniqueness audit; quadratic,
// test use only).
void check_ez_unique(const CubicalSet& C);

// A map of presheaves: per-dimension cube maps commuting with every generator
// action. src may have lower truncation than dst; maps exist for n <= src->dim.
struct CubicalFunction {
  CSetPtr src;
  CSetPtr dst;
  std::vector<std::vector<cube_id>> map;  // size src->dim + 1

  Cube operator()(const Cube& c) const { return Cube{c.dim, map[c.dim][c.id]}; }
};

void validate_function(const CubicalFunction& f);  // throws ValidationError
CubicalFunction identity_function(const CSetPtr& C);
CubicalFunction compose_functions(const CubicalFunction& g, const CubicalFunction& f);
bool functions_equal(const CubicalFunction& f, const CubicalFunction& g);

// Total cube count across dimensions (diagnostics).
long long total_cubes(const CubicalSet& C);

// Per-dimension nondegenerate counts, e.g. for isomorphism-by-counts tests.
std::vector<int> nondeg_counts(const CubicalSet& C);

}  // namespace cubetop
