#pragma once

// Dimension-truncated simplicial sets, used internally by the triangulation /
// quadrangulation pair behind sharp replacement. Only the generator actions
// are stored:
//
//   face[n][i]  : S_n     -> S_{n-1}   (omit vertex i, 0 <= i <= n)
//   degen[n][i] : S_{n-1} -> S_n       (repeat vertex i, 0 <= i <= n-1)
//
// validate_simplicial checks the simplicial identities on every simplex. A
// simplex is degenerate when it is the image of some degeneracy; the usual
// retraction d_i s_i = id makes the flag computable one dimension at a time.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "cubetop/builders.hpp"
#include "cubetop/errors.hpp"

namespace cubetop {

using simplex_id = std::int32_t;

struct Simplex {
  int dim = 0;
  simplex_id id = 0;

  bool operator==(const Simplex&) const = default;
};

struct SimplicialSet {
  int dim = 0;
  std::vector<int> simplex_count;  // size dim+1

  std::vector<std::vector<std::vector<simplex_id>>> face;   // [n][i], i = 0..n
  std::vector<std::vector<std::vector<simplex_id>>> degen;  // [n][i], i = 0..n-1

  // Derived by finalize_simplicial():
  std::vector<std::vector<std::uint8_t>> degenerate;
  std::vector<std::vector<simplex_id>> nondeg;

  void allocate(int truncation_dim, const std::vector<int>& counts);
  int count(int n) const { return (n < 0 || n > dim) ? 0 : simplex_count[n]; }
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

void validate_simplicial_tables(const SimplicialSet& S);
void validate_simplicial(const SimplicialSet& S);
void finalize_simplicial(SimplicialSet& S, bool run_validate = true);

// A simplicial map: per-dimension tables commuting with faces and
// degeneracies. src may be truncated lower than dst.
struct SimplicialFunction {
  SSetPtr src;
  SSetPtr dst;
  std::vector<std::vector<simplex_id>> map;  // size src->dim + 1

  Simplex operator()(const Simplex& x) const { return Simplex{x.dim, map[x.dim][x.id]}; }
};

void validate_simplicial_function(const SimplicialFunction& f);
SimplicialFunction identity_simplicial(const SSetPtr& S);
SimplicialFunction compose_simplicial(const SimplicialFunction& g, const SimplicialFunction& f);
bool simplicial_equal(const SimplicialFunction& f, const SimplicialFunction& g);

// Nerve of a finite poset: n-simplices are the weakly monotone chains of
// length n+1, ids in lexicographic chain order (so 0-simplices are the poset
// elements in their own order).
struct PosetNerve {
  SSetPtr set;
  FinitePoset poset;
  std::vector<std::vector<std::vector<int>>> chain;  // [n][id] = chain of n+1 elements

  simplex_id id_of(const std::vector<int>& c) const;  // throws if absent
};

PosetNerve nerve_poset(const FinitePoset& P, int D, bool run_validate = true);

// Gluing diagrams and colimits, mirroring the cubical ones: disjoint union
// with simplices identified per dimension by the relation pairs, classes
// numbered by smallest member in disjoint-union order.
struct SimplicialPair {
  SimplicialFunction left;
  int left_object = 0;
  SimplicialFunction right;
  int right_object = 0;
};

struct SimplicialDiagram {
  std::vector<SSetPtr> objects;
  std::vector<SimplicialPair> relations;
};

struct SimplicialColimit {
  SSetPtr set;
  std::vector<SimplicialFunction> legs;
};

SimplicialColimit simplicial_colimit(const SimplicialDiagram& D, bool run_validate = false);

// Backtracking enumeration of simplicial maps, the mirror of enumerate_maps:
// variables are the nondegenerate simplices in descending dimension,
// propagation forces the full face/degeneracy closure of every assignment.
struct SimplicialSearchOptions {
  long long node_budget = std::numeric_limits<long long>::max();
  long long max_results = std::numeric_limits<long long>::max();
  bool store = true;
  std::function<bool(const std::vector<std::vector<simplex_id>>&)> on_result;
};

struct SimplicialSearchResult {
  std::vector<SimplicialFunction> maps;
  long long count = 0;
  bool complete = true;
  bool budget_exhausted = false;
  long long nodes = 0;
};

using SimplexPins = std::vector<std::pair<Simplex, simplex_id>>;

SimplicialSearchResult enumerate_simplicial_maps(const SSetPtr& src, const SSetPtr& dst,
                                                 const SimplexPins& pins = {},
                                                 const SimplicialSearchOptions& opt = {});

}  // namespace cubetop
