#include "cubetop/tensor.hpp"

#include <algorithm>

namespace cubetop {

int TensorProduct::pair_index(int p, cube_id a, int q, cube_id b) const {
  auto it = index_.find({p, a, q, b});
  if (it == index_.end())
    throw ValidationError("tensor: no copy for the given pair (degenerate factor?)");
  return it->second;
}

TensorProduct tensor_product(const CSetPtr& A, const CSetPtr& B, int D, bool run_validate) {
  if (!A || !B || D < 0) throw ValidationError("tensor_product: bad arguments");
  // The product has nondegenerate cells up to the sum of the factors' top
  // nondegenerate dimensions; a smaller result truncation would drop them.
  auto top_nondeg = [](const CubicalSet& X) {
    for (int n = X.dim; n >= 0; --n)
      if (!X.nondeg[n].empty()) return n;
    return 0;
  };
  if (top_nondeg(*A) + top_nondeg(*B) > D)
    throw ValidationError("tensor_product: result truncation too small for the factors");
  TensorProduct T;
  T.left = A;
  T.right = B;
  T.D = D;
  for (int t = 0; t <= std::min(A->dim + B->dim, D); ++t)
    T.reps.emplace(t, representable(t, D, false));

  GluingDiagram G;
  for (int p = 0; p <= A->dim; ++p)
    for (cube_id a : A->nondeg[p])
      for (int q = 0; q <= B->dim; ++q)
        for (cube_id b : B->nondeg[q]) {
          T.index_[{p, a, q, b}] = static_cast<int>(T.pairs.size());
          T.pairs.push_back({p, a, q, b});
          G.objects.push_back(T.reps.at(p + q).set);
        }

  for (int k = 0; k < static_cast<int>(T.pairs.size()); ++k) {
    const TensorPair& pr = T.pairs[k];
    int p = pr.p, q = pr.q;
    for (int i = 1; i <= p; ++i)
      for (int s = 0; s <= 1; ++s) {
        BoxMorphism delta = face_morphism(p - 1, i, s);
        cube_id a1 = A->face[p][i - 1][s][pr.a];
        const BoxMorphism& sigma = A->ez_sigma[p - 1][a1];
        Cube root = A->ez_root[p - 1][a1];
        int other = T.pair_index(root.dim, root.id, q, pr.b);
        G.relations.push_back(
            {rep_postcompose(T.reps.at(p - 1 + q), T.reps.at(root.dim + q),
                             tensor(sigma, identity(q))),
             other,
             rep_postcompose(T.reps.at(p - 1 + q), T.reps.at(p + q), tensor(delta, identity(q))),
             k});
      }
    for (int i = 1; i <= q; ++i)
      for (int s = 0; s <= 1; ++s) {
        BoxMorphism delta = face_morphism(q - 1, i, s);
        cube_id b1 = B->face[q][i - 1][s][pr.b];
        const BoxMorphism& sigma = B->ez_sigma[q - 1][b1];
        Cube root = B->ez_root[q - 1][b1];
        int other = T.pair_index(p, pr.a, root.dim, root.id);
        G.relations.push_back(
            {rep_postcompose(T.reps.at(p + q - 1), T.reps.at(p + root.dim),
                             tensor(identity(p), sigma)),
             other,
             rep_postcompose(T.reps.at(p + q - 1), T.reps.at(p + q), tensor(identity(p), delta)),
             k});
      }
  }

  ColimitResult col = colimit(G, run_validate);
  T.set = col.set;
  T.kappa = std::move(col.legs);
  return T;
}

namespace {

CubicalFunction tensor_end(const TensorProduct& T, const CSetPtr& F, bool pin_right,
                           cube_id pinned_vertex) {
  if (F->dim > T.D) throw ValidationError("tensor end: factor truncation exceeds product");
  CubicalFunction f;
  f.src = F;
  f.dst = T.set;
  f.map.resize(F->dim + 1);
  for (int n = 0; n <= F->dim; ++n) {
    f.map[n].resize(F->cube_count[n]);
    for (cube_id c = 0; c < F->cube_count[n]; ++c) {
      if (!F->degenerate[n][c]) {
        const CubicalFunction& kap = pin_right ? T.kappa_of(n, c, 0, pinned_vertex)
                                               : T.kappa_of(0, pinned_vertex, n, c);
        f.map[n][c] = kap.map[n][T.reps.at(n).top().id];
      } else {
        Cube r = F->ez_root[n][c];
        f.map[n][c] = act(*T.set, F->ez_sigma[n][c], Cube{r.dim, f.map[r.dim][r.id]}).id;
      }
    }
  }
  return f;
}

}  // namespace

CubicalFunction tensor_end_left(const TensorProduct& T, cube_id vb) {
  return tensor_end(T, T.left, true, vb);
}

CubicalFunction tensor_end_right(const TensorProduct& T, cube_id va) {
  return tensor_end(T, T.right, false, va);
}

CSetPtr torus(int D) {
  if (D < 2) throw ValidationError("torus: need D >= 2");
  CSetPtr c1 = circle(1, D).set;
  CSetPtr c2 = circle(1, D).set;
  return tensor_product(c1, c2, D).set;
}

CubicalFunction tensor_function(const CubicalFunction& f, const CubicalFunction& g,
                                const TensorProduct& T, const TensorProduct& Tp) {
  if (f.src.get() != T.left.get() || g.src.get() != T.right.get() ||
      f.dst.get() != Tp.left.get() || g.dst.get() != Tp.right.get())
    throw ValidationError("tensor_function: factor endpoints mismatch");
  if (T.D > Tp.D) throw ValidationError("tensor_function: truncation mismatch");

  CubicalFunction out;
  out.src = T.set;
  out.dst = Tp.set;
  out.map.resize(T.set->dim + 1);
  for (int n = 0; n <= T.set->dim; ++n) out.map[n].assign(T.set->cube_count[n], -1);

  for (size_t k = 0; k < T.pairs.size(); ++k) {
    const TensorPair& pr = T.pairs[k];
    // Image pair, reduced to nondegenerate roots in the target factors.
    Cube fa{pr.p, f.map[pr.p][pr.a]};
    Cube gb{pr.q, g.map[pr.q][pr.b]};
    BoxMorphism sa = Tp.left->ez_sigma[fa.dim][fa.id];
    Cube ra = Tp.left->ez_root[fa.dim][fa.id];
    BoxMorphism sb = Tp.right->ez_sigma[gb.dim][gb.id];
    Cube rb = Tp.right->ez_root[gb.dim][gb.id];
    CubicalFunction route = compose_functions(
        Tp.kappa_of(ra.dim, ra.id, rb.dim, rb.id),
        rep_postcompose(T.reps.at(pr.p + pr.q), Tp.reps.at(ra.dim + rb.dim), tensor(sa, sb)));
    const CubicalFunction& kap = T.kappa[k];
    for (int d = 0; d < static_cast<int>(kap.map.size()); ++d) {
      for (cube_id x = 0; x < static_cast<cube_id>(kap.map[d].size()); ++x) {
        cube_id& slot = out.map[d][kap.map[d][x]];
        if (slot >= 0 && slot != route.map[d][x])
          throw ValidationError("tensor_function: images disagree on a glued cube");
        slot = route.map[d][x];
      }
    }
  }
  for (int n = 0; n <= T.set->dim; ++n)
    for (cube_id c = 0; c < T.set->cube_count[n]; ++c)
      if (out.map[n][c] < 0) throw ValidationError("tensor_function: cube not covered by any leg");
  validate_function(out);
  return out;
}

}  // namespace cubetop
