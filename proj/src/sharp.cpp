#include "cubetop/sharp.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace cubetop {

namespace {

// Shared nerve models of the box posets at one truncation, with memoized
// induced maps. Every canonical site morphism is monotone on vertices, so it
// acts on chains pointwise.
struct TriCache {
  int T;
  std::map<int, PosetNerve> nerves;
  std::map<std::string, SimplicialFunction> morphs;

  explicit TriCache(int truncation) : T(truncation) {}

  const PosetNerve& nerve(int n) {
    auto it = nerves.find(n);
    if (it == nerves.end())
      it = nerves.emplace(n, nerve_poset(box_poset(n), T, false)).first;
    return it->second;
  }

  const SimplicialFunction& morph(const BoxMorphism& u) {
    std::string key = std::to_string(u.dom) + "|" + to_text(u);
    auto it = morphs.find(key);
    if (it != morphs.end()) return it->second;
    const PosetNerve& from = nerve(u.dom);
    const PosetNerve& to = nerve(static_cast<int>(u.coords.size()));
    SimplicialFunction f;
    f.src = from.set;
    f.dst = to.set;
    f.map.resize(T + 1);
    std::vector<int> img;
    for (int d = 0; d <= T; ++d) {
      f.map[d].resize(from.set->simplex_count[d]);
      for (simplex_id x = 0; x < from.set->simplex_count[d]; ++x) {
        const std::vector<int>& c = from.chain[d][x];
        img.assign(c.size(), 0);
        for (size_t j = 0; j < c.size(); ++j)
          img[j] = static_cast<int>(evaluate(u, static_cast<std::uint32_t>(c[j])));
        f.map[d][x] = to.id_of(img);
      }
    }
    return morphs.emplace(key, std::move(f)).first->second;
  }
};

void put_value(std::vector<simplex_id>& table, simplex_id at, simplex_id value,
               const char* who) {
  if (table[at] >= 0 && table[at] != value)
    throw ValidationError(std::string(who) + ": images disagree on a glued simplex");
  table[at] = value;
}

}  // namespace

SimplicialFunction tri_morphism(const BoxMorphism& u, int T) {
  TriCache K(T);
  return K.morph(u);
}

TriSet tri(const CSetPtr& C, bool run_validate) {
  if (!C) throw ValidationError("tri: null cubical set");
  int D = C->dim;
  TriCache K(D);

  SimplicialDiagram dia;
  std::vector<std::vector<int>> obj(D + 1);
  for (int p = 0; p <= D; ++p) {
    obj[p].assign(C->cube_count[p], -1);
    for (cube_id c : C->nondeg[p]) {
      obj[p][c] = static_cast<int>(dia.objects.size());
      dia.objects.push_back(K.nerve(p).set);
    }
  }
  for (int p = 1; p <= D; ++p)
    for (cube_id c : C->nondeg[p])
      for (int i = 1; i <= p; ++i)
        for (int s = 0; s <= 1; ++s) {
          cube_id a = C->face[p][i - 1][s][c];
          Cube root = C->ez_root[p - 1][a];
          SimplicialPair pp;
          pp.left = K.morph(C->ez_sigma[p - 1][a]);
          pp.left_object = obj[root.dim][root.id];
          pp.right = K.morph(face_morphism(p - 1, i, s));
          pp.right_object = obj[p][c];
          dia.relations.push_back(std::move(pp));
        }

  SimplicialColimit col = simplicial_colimit(dia, run_validate);
  TriSet out;
  out.sset = col.set;
  out.base = C;
  out.cell_map.resize(D + 1);
  out.nondeg_index.assign(D + 1, {});
  for (int p = 0; p <= D; ++p) {
    out.nondeg_index[p].assign(C->cube_count[p], -1);
    for (size_t j = 0; j < C->nondeg[p].size(); ++j) {
      cube_id c = C->nondeg[p][j];
      out.nondeg_index[p][c] = static_cast<int>(j);
      out.cell_map[p].push_back(col.legs[obj[p][c]]);
    }
  }
  return out;
}

SimplicialFunction tri_function(const CubicalFunction& f, const TriSet& TA, const TriSet& TB) {
  if (f.src.get() != TA.base.get() || f.dst.get() != TB.base.get())
    throw ValidationError("tri_function: endpoints mismatch");
  const CubicalSet& A = *TA.base;
  const CubicalSet& B = *TB.base;
  TriCache K(A.dim);

  SimplicialFunction out;
  out.src = TA.sset;
  out.dst = TB.sset;
  out.map.resize(TA.sset->dim + 1);
  for (int n = 0; n <= TA.sset->dim; ++n) out.map[n].assign(TA.sset->simplex_count[n], -1);

  for (int p = 0; p <= A.dim; ++p)
    for (size_t j = 0; j < A.nondeg[p].size(); ++j) {
      cube_id a = A.nondeg[p][j];
      cube_id b = f.map[p][a];
      Cube root = B.ez_root[p][b];
      const SimplicialFunction& kb = TB.cell_map[root.dim][TB.nondeg_index[root.dim][root.id]];
      const SimplicialFunction& sigma = K.morph(B.ez_sigma[p][b]);
      const SimplicialFunction& ka = TA.cell_map[p][j];
      for (int d = 0; d <= TA.sset->dim; ++d)
        for (simplex_id x = 0; x < static_cast<simplex_id>(ka.map[d].size()); ++x)
          put_value(out.map[d], ka.map[d][x], kb.map[d][sigma.map[d][x]], "tri_function");
    }
  for (int n = 0; n <= TA.sset->dim; ++n)
    for (simplex_id x = 0; x < TA.sset->simplex_count[n]; ++x)
      if (out.map[n][x] < 0) throw ValidationError("tri_function: simplex not covered");
  validate_simplicial_function(out);
  return out;
}

// ---------------------------------------------------------------------------
// quad.

cube_id QuadSet::id_of(const std::vector<std::vector<simplex_id>>& tables, int m) const {
  if (m < 0 || m >= static_cast<int>(index_.size()))
    throw std::out_of_range("quad: dimension out of range");
  auto it = index_[m].find(tables);
  if (it == index_[m].end()) throw std::out_of_range("quad: tables do not name a cube");
  return it->second;
}

SimplicialFunction QuadSet::member(int m, cube_id g) const {
  SimplicialFunction f;
  f.src = domains[m].set;
  f.dst = base;
  f.map = content[m][g];
  return f;
}

QuadSet quad(const SSetPtr& Y, int D, long long max_per_dim, long long node_budget,
             bool run_validate) {
  if (!Y) throw ValidationError("quad: null simplicial set");
  if (D < 0) throw ValidationError("quad: negative truncation");
  int T = Y->dim;
  TriCache K(T);

  QuadSet Q;
  Q.base = Y;
  Q.D = D;
  Q.content.resize(D + 1);
  Q.index_.resize(D + 1);
  std::vector<int> counts(D + 1, 0);
  for (int m = 0; m <= D; ++m) {
    Q.domains.push_back(K.nerve(m));
    SimplicialSearchOptions opt;
    opt.node_budget = node_budget;
    SimplicialSearchResult res = enumerate_simplicial_maps(Q.domains[m].set, Y, {}, opt);
    if (res.budget_exhausted)
      throw CapExceeded("quad: node budget exhausted at dimension " + std::to_string(m));
    if (res.count > max_per_dim)
      throw CapExceeded("quad: more than " + std::to_string(max_per_dim) +
                        " cubes at dimension " + std::to_string(m));
    Q.content[m].reserve(res.maps.size());
    for (SimplicialFunction& f : res.maps) Q.content[m].push_back(std::move(f.map));
    // Lexicographic table order; the first row is the vertex table, so for
    // poset nerves this is the conical-nerve order.
    std::sort(Q.content[m].begin(), Q.content[m].end());
    for (cube_id g = 0; g < static_cast<cube_id>(Q.content[m].size()); ++g)
      Q.index_[m][Q.content[m][g]] = g;
    counts[m] = static_cast<int>(Q.content[m].size());
  }

  auto S = std::make_shared<CubicalSet>();
  S->allocate(D, counts);
  auto pulled = [&](const std::vector<std::vector<simplex_id>>& tables,
                    const SimplicialFunction& via) {
    std::vector<std::vector<simplex_id>> out(T + 1);
    for (int d = 0; d <= T; ++d) {
      out[d].resize(via.map[d].size());
      for (size_t x = 0; x < via.map[d].size(); ++x) out[d][x] = tables[d][via.map[d][x]];
    }
    return out;
  };
  for (int m = 1; m <= D; ++m) {
    for (int i = 1; i <= m; ++i)
      for (int s = 0; s <= 1; ++s) {
        const SimplicialFunction& via = K.morph(face_morphism(m - 1, i, s));
        for (cube_id g = 0; g < counts[m]; ++g)
          S->face[m][i - 1][s][g] = Q.id_of(pulled(Q.content[m][g], via), m - 1);
      }
    for (int i = 1; i <= m; ++i) {
      const SimplicialFunction& via = K.morph(collapse_morphism(m, i));
      for (cube_id g = 0; g < counts[m - 1]; ++g)
        S->degen[m][i - 1][g] = Q.id_of(pulled(Q.content[m - 1][g], via), m);
    }
    for (int i = 1; i <= m - 1; ++i) {
      const SimplicialFunction& via = K.morph(connection_morphism(m, i));
      for (cube_id g = 0; g < counts[m - 1]; ++g)
        S->conn[m][i - 1][g] = Q.id_of(pulled(Q.content[m - 1][g], via), m);
    }
  }
  finalize(*S, run_validate);
  Q.set = S;
  return Q;
}

CubicalFunction quad_function(const SimplicialFunction& f, const QuadSet& QY, const QuadSet& QZ) {
  if (f.src.get() != QY.base.get() || f.dst.get() != QZ.base.get())
    throw ValidationError("quad_function: endpoints mismatch");
  if (QY.D != QZ.D || QY.base->dim != QZ.base->dim)
    throw ValidationError("quad_function: truncation mismatch");
  CubicalFunction out;
  out.src = QY.set;
  out.dst = QZ.set;
  out.map.resize(QY.D + 1);
  int T = QY.base->dim;
  for (int m = 0; m <= QY.D; ++m) {
    out.map[m].resize(QY.set->cube_count[m]);
    for (cube_id g = 0; g < QY.set->cube_count[m]; ++g) {
      std::vector<std::vector<simplex_id>> t = QY.content[m][g];
      for (int d = 0; d <= T; ++d)
        for (simplex_id& v : t[d]) v = f.map[d][v];
      out.map[m][g] = QZ.id_of(t, m);
    }
  }
  validate_function(out);
  return out;
}

SimplicialFunction tri_counit(const TriSet& TQ, const QuadSet& QY) {
  if (TQ.base.get() != QY.set.get())
    throw ValidationError("tri_counit: tri must be built on the quad set");
  if (TQ.sset->dim > QY.base->dim)
    throw ValidationError("tri_counit: quad truncation exceeds the simplicial one");
  SimplicialFunction out;
  out.src = TQ.sset;
  out.dst = QY.base;
  out.map.resize(TQ.sset->dim + 1);
  for (int n = 0; n <= TQ.sset->dim; ++n) out.map[n].assign(TQ.sset->simplex_count[n], -1);
  const CubicalSet& Q = *QY.set;
  for (int m = 0; m <= Q.dim; ++m)
    for (size_t j = 0; j < Q.nondeg[m].size(); ++j) {
      cube_id g = Q.nondeg[m][j];
      const SimplicialFunction& kg = TQ.cell_map[m][j];
      for (int d = 0; d <= TQ.sset->dim; ++d)
        for (simplex_id x = 0; x < static_cast<simplex_id>(kg.map[d].size()); ++x)
          put_value(out.map[d], kg.map[d][x], QY.content[m][g][d][x], "tri_counit");
    }
  for (int n = 0; n <= TQ.sset->dim; ++n)
    for (simplex_id x = 0; x < TQ.sset->simplex_count[n]; ++x)
      if (out.map[n][x] < 0) throw ValidationError("tri_counit: simplex not covered");
  validate_simplicial_function(out);
  return out;
}

// ---------------------------------------------------------------------------
// sharp.

SharpSet sharp(const CSetPtr& C, int D, long long max_per_dim, long long node_budget,
               bool run_validate) {
  if (!C) throw ValidationError("sharp: null cubical set");
  SharpSet S;
  S.base = C;
  S.D = D;
  S.tri_part = tri(C, run_validate);
  S.quad_part = quad(S.tri_part.sset, D, max_per_dim, node_budget, run_validate);
  S.set = S.quad_part.set;
  if (D >= C->dim) {
    TriCache K(C->dim);
    S.inclusion.src = C;
    S.inclusion.dst = S.set;
    S.inclusion.map.resize(C->dim + 1);
    for (int m = 0; m <= C->dim; ++m) {
      S.inclusion.map[m].resize(C->cube_count[m]);
      for (cube_id c = 0; c < C->cube_count[m]; ++c) {
        Cube root = C->ez_root[m][c];
        const SimplicialFunction& kr =
            S.tri_part.cell_map[root.dim][S.tri_part.nondeg_index[root.dim][root.id]];
        const SimplicialFunction& sigma = K.morph(C->ez_sigma[m][c]);
        std::vector<std::vector<simplex_id>> t(C->dim + 1);
        for (int d = 0; d <= C->dim; ++d) {
          t[d].resize(sigma.map[d].size());
          for (size_t x = 0; x < sigma.map[d].size(); ++x) t[d][x] = kr.map[d][sigma.map[d][x]];
        }
        S.inclusion.map[m][c] = S.quad_part.id_of(t, m);
      }
    }
    validate_function(S.inclusion);
    S.has_inclusion = true;
  }
  return S;
}

CubicalFunction sharp_function(const CubicalFunction& f, const SharpSet& SA, const SharpSet& SB) {
  SimplicialFunction tf = tri_function(f, SA.tri_part, SB.tri_part);
  return quad_function(tf, SA.quad_part, SB.quad_part);
}

SharpSharp sharp_retraction(const CSetPtr& C, long long max_per_dim, long long node_budget) {
  SharpSharp out;
  out.first = sharp(C, C->dim, max_per_dim, node_budget);
  out.second = sharp(out.first.set, C->dim, max_per_dim, node_budget);
  SimplicialFunction eps = tri_counit(out.second.tri_part, out.first.quad_part);
  out.retraction = quad_function(eps, out.second.quad_part, out.first.quad_part);
  return out;
}

SharpDecision is_sharp(const CSetPtr& C, long long node_budget, long long max_per_dim) {
  // Whether the budget dies while building sharp(C) or while searching for
  // the retraction, the honest answer is the same: we could not decide.
  SharpSet S;
  try {
    S = sharp(C, C->dim, max_per_dim, node_budget);
  } catch (const CapExceeded&) {
    SharpDecision d;
    d.decision = Decision::indeterminate;
    return d;
  }
  MapPins pins;
  for (int m = 0; m <= C->dim; ++m)
    for (cube_id c : C->nondeg[m]) pins.push_back({Cube{m, S.inclusion.map[m][c]}, c});
  MapSearchOptions opt;
  opt.node_budget = node_budget;
  opt.max_results = 1;
  MapSearchResult res = enumerate_maps(S.set, C, pins, opt);
  SharpDecision d;
  d.nodes = res.nodes;
  if (res.count > 0) {
    d.decision = Decision::yes;
    d.has_witness = true;
    d.witness = std::move(res.maps[0]);
  } else if (res.budget_exhausted) {
    d.decision = Decision::indeterminate;
  } else {
    d.decision = Decision::no;
  }
  return d;
}

}  // namespace cubetop
