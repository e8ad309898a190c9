#pragma once

// Monoidal product of cubical sets, built as a colimit of representable
// copies: one copy of rep(p+q) for every pair of nondegenerate cubes
// (a, b) in A_p x B_q, glued along the faces of a and b through their
// (sigma, root) factorizations. The colimit legs kappa_(a,b) are kept; they
// are the structure maps consumers use (end inclusions, vertex labels,
// cylinder bookkeeping).

#include <map>
#include <tuple>
#include <vector>

#include "cubetop/builders.hpp"
#include "cubetop/colimit.hpp"

namespace cubetop {

struct TensorPair {
  int p = 0;
  cube_id a = 0;
  int q = 0;
  cube_id b = 0;
};

struct TensorProduct {
  CSetPtr set;
  CSetPtr left, right;
  int D = 0;
  std::vector<TensorPair> pairs;
  std::vector<CubicalFunction> kappa;  // pairs[k]: rep(p+q) truncated at D -> set
  std::map<int, Representable> reps;   // shared rep(t, D) per total degree t

  int pair_index(int p, cube_id a, int q, cube_id b) const;  // throws if absent
  const CubicalFunction& kappa_of(int p, cube_id a, int q, cube_id b) const {
    return kappa[pair_index(p, a, q, b)];
  }

 private:
  friend TensorProduct tensor_product(const CSetPtr&, const CSetPtr&, int, bool);
  std::map<std::tuple<int, cube_id, int, cube_id>, int> index_;
};

TensorProduct tensor_product(const CSetPtr& A, const CSetPtr& B, int D, bool run_validate = true);

// A -> A (x) B with the right factor pinned at the vertex vb of B; requires
// A->dim <= D. Symmetrically for the left factor.
CubicalFunction tensor_end_left(const TensorProduct& T, cube_id vb);
CubicalFunction tensor_end_right(const TensorProduct& T, cube_id va);

CSetPtr torus(int D);

// Functoriality of the tensor product: given f : A -> A' and g : B -> B'
// together with tensor structures T on A (x) B and Tp on A' (x) B', produce
// the induced map f (x) g : T.set -> Tp.set.  A nondegenerate pair (a, b) of
// T is sent through the Eilenberg-Zilber spans of f(a) and g(b): its image is
// the Tp-leg of (root f(a), root g(b)) precomposed with sigma_a (x) sigma_b.
// Requires T.D <= Tp.D.
CubicalFunction tensor_function(const CubicalFunction& f, const CubicalFunction& g,
                                const TensorProduct& T, const TensorProduct& Tp);

}  // namespace cubetop
