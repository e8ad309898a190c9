#include "cubetop/subdivision.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubetop/tensor.hpp"

namespace cubetop {

namespace {

BoxMorphism corner_morphism(int n, std::uint32_t mask) {
  BoxMorphism f;
  f.dom = 0;
  f.coords.resize(n);
  for (int i = 0; i < n; ++i) f.coords[i] = ((mask >> i) & 1u) ? const1() : const0();
  return f;
}

void put(std::vector<std::vector<cube_id>>& table, Cube at, cube_id value, const char* what) {
  cube_id& slot = table[at.dim][at.id];
  if (slot == -1)
    slot = value;
  else if (slot != value)
    throw ValidationError(std::string(what) + ": inconsistent cell assignments");
}

std::vector<std::vector<cube_id>> empty_tables(const CubicalSet& A) {
  std::vector<std::vector<cube_id>> t(A.dim + 1);
  for (int d = 0; d <= A.dim; ++d) t[d].assign(A.count(d), -1);
  return t;
}

void check_total(const std::vector<std::vector<cube_id>>& t, const char* what) {
  for (const auto& row : t)
    for (cube_id v : row)
      if (v == -1) throw ValidationError(std::string(what) + ": cell left unassigned");
}

// result[d][x] = c[d][m.map[d][x]] for x over the source of m; this is the
// precomposition of the value tables c with the function m.
std::vector<std::vector<cube_id>> pull_tables(const std::vector<std::vector<cube_id>>& c,
                                              const CubicalFunction& m) {
  const CubicalSet& S = *m.src;
  std::vector<std::vector<cube_id>> out(S.dim + 1);
  for (int d = 0; d <= S.dim; ++d) {
    out[d].resize(S.count(d));
    for (int x = 0; x < S.count(d); ++x) out[d][x] = c[d][m.map[d][x]];
  }
  return out;
}

}  // namespace

cube_id SdRep::vertex_of(std::uint32_t lo, std::uint32_t hi) const {
  auto it = index_.find({lo, hi});
  if (it == index_.end())
    throw std::out_of_range("sd representable: no vertex with the given corners");
  return it->second;
}

// Shared scratch for one construction: sd representables and unique vertex
// rule extensions, all at one truncation.
struct SdCache {
  int D;
  std::map<int, SdRep> reps;
  std::map<BoxMorphism, CubicalFunction> morphs;

  explicit SdCache(int D) : D(D) {}

  static void set_corner(SdRep& r, cube_id v, std::uint32_t lo, std::uint32_t hi) {
    r.corners[v] = {lo, hi};
    if (!r.index_.emplace(std::make_pair(lo, hi), v).second)
      throw ValidationError("sd representable: duplicate vertex label");
  }

  const SdRep& rep(int n) {
    auto it = reps.find(n);
    if (it != reps.end()) return it->second;
    return reps.emplace(n, build_rep(n)).first->second;
  }

  SdRep build_rep(int n) {
    if (n < 0 || n > D) throw ValidationError("sd representable: need 0 <= n <= truncation");
    SdRep r;
    r.n = n;
    r.D = D;
    if (n == 0) {
      r.set = representable(0, D, false).set;
      r.corners.assign(1, {0u, 0u});
      r.index_.emplace(std::make_pair(0u, 0u), 0);
      return r;
    }
    if (n == 1) {
      Representable R1 = representable(1, D, false);
      Representable R0 = representable(0, D, false);
      Cube v0{0, R1.set->face[1][0][0][R1.top().id]};
      Cube v1{0, R1.set->face[1][0][1][R1.top().id]};
      GluingDiagram dia;
      dia.objects = {R1.set, R1.set};
      ParallelPair pr;
      pr.left = yoneda_function(R0, R1.set, v1);
      pr.left_object = 0;
      pr.right = yoneda_function(R0, R1.set, v0);
      pr.right_object = 1;
      dia.relations.push_back(pr);
      ColimitResult col = colimit(dia, false);
      r.set = col.set;
      if (r.set->count(0) != 3) throw ValidationError("sd interval: expected three vertices");
      r.corners.assign(3, {0u, 0u});
      r.index_.clear();
      set_corner(r, col.legs[0].map[0][v0.id], 0u, 0u);
      set_corner(r, col.legs[0].map[0][v1.id], 0u, 1u);
      set_corner(r, col.legs[1].map[0][v1.id], 1u, 1u);
      return r;
    }
    const SdRep& prev = rep(n - 1);
    const SdRep& one = rep(1);
    TensorProduct T = tensor_product(prev.set, one.set, D, false);
    r.set = T.set;
    r.corners.assign(T.set->count(0), {0u, 0u});
    int labeled = 0;
    for (cube_id va = 0; va < prev.set->count(0); ++va)
      for (cube_id vb = 0; vb < one.set->count(0); ++vb) {
        cube_id v = T.kappa_of(0, va, 0, vb).map[0][0];
        std::uint32_t lo = prev.corners[va][0] | (one.corners[vb][0] << (n - 1));
        std::uint32_t hi = prev.corners[va][1] | (one.corners[vb][1] << (n - 1));
        set_corner(r, v, lo, hi);
        ++labeled;
      }
    if (labeled != r.set->count(0))
      throw ValidationError("sd representable: vertex labeling is not a bijection");
    return r;
  }

  const CubicalFunction& morph(const BoxMorphism& f) {
    auto it = morphs.find(f);
    if (it != morphs.end()) return it->second;
    const SdRep& A = rep(f.dom);
    const SdRep& B = rep(f.cod());
    MapPins pins;
    pins.reserve(A.corners.size());
    for (cube_id v = 0; v < A.set->count(0); ++v)
      pins.push_back({Cube{0, v}, B.vertex_of(evaluate(f, A.corners[v][0]),
                                              evaluate(f, A.corners[v][1]))});
    MapSearchResult res = enumerate_maps(A.set, B.set, pins);
    if (res.count != 1)
      throw ValidationError("subdivision: the vertex rule of " + to_text(f) +
                            " does not extend uniquely (found " + std::to_string(res.count) +
                            " extensions)");
    return morphs.emplace(f, std::move(res.maps[0])).first->second;
  }

  const CubicalFunction& gamma_rep(int sign, int n) {
    auto it = gammas.find({sign, n});
    if (it != gammas.end()) return it->second;
    const SdRep& A = rep(n);
    Representable R = representable(n, D, false);
    MapPins pins;
    for (cube_id v = 0; v < A.set->count(0); ++v)
      pins.push_back(
          {Cube{0, v}, R.id_of(corner_morphism(n, A.corners[v][sign ? 1 : 0]))});
    MapSearchResult res = enumerate_maps(A.set, R.set, pins);
    if (res.count != 1)
      throw ValidationError("collapse map: the corner rule does not extend uniquely");
    return gammas.emplace(std::make_pair(sign, n), std::move(res.maps[0])).first->second;
  }

  std::map<std::pair<int, int>, CubicalFunction> gammas;
};

SdRep sd_representable(int n, int D) {
  SdCache K(D);
  return K.rep(n);
}

CubicalFunction sd_morphism(const BoxMorphism& f, int D) {
  SdCache K(D);
  return K.morph(f);
}

CubicalFunction gamma_representable(int sign, int n, int D) {
  SdCache K(D);
  return K.gamma_rep(sign, n);
}

SdSet sd(const CSetPtr& C, bool run_validate) {
  int D = C->dim;
  SdCache K(D);
  SdSet S;
  S.base = C;
  S.cell_map.resize(D + 1);
  S.nondeg_index.resize(D + 1);

  GluingDiagram dia;
  std::vector<std::vector<int>> obj(D + 1);
  for (int p = 0; p <= D; ++p) {
    S.nondeg_index[p].assign(C->count(p), -1);
    obj[p].assign(C->count(p), -1);
    for (std::size_t j = 0; j < C->nondeg[p].size(); ++j) {
      cube_id c = C->nondeg[p][j];
      S.nondeg_index[p][c] = static_cast<int>(j);
      obj[p][c] = static_cast<int>(dia.objects.size());
      dia.objects.push_back(K.rep(p).set);
    }
  }
  for (int p = 1; p <= D; ++p)
    for (cube_id c : C->nondeg[p])
      for (int i = 1; i <= p; ++i)
        for (int s = 0; s < 2; ++s) {
          cube_id a = C->face[p][i - 1][s][c];
          const BoxMorphism& sigma = C->ez_sigma[p - 1][a];
          Cube root = C->ez_root[p - 1][a];
          ParallelPair pr;
          pr.left = K.morph(sigma);
          pr.left_object = obj[root.dim][root.id];
          pr.right = K.morph(face_morphism(p - 1, i, s));
          pr.right_object = obj[p][c];
          dia.relations.push_back(pr);
        }
  ColimitResult col = colimit(dia, run_validate);
  S.set = col.set;
  for (int p = 0; p <= D; ++p)
    for (cube_id c : C->nondeg[p]) S.cell_map[p].push_back(col.legs[obj[p][c]]);
  return S;
}

CubicalFunction sd_function(const CubicalFunction& f, const SdSet& SA, const SdSet& SB) {
  if (SA.base.get() != f.src.get() || SB.base.get() != f.dst.get())
    throw std::invalid_argument("sd_function: bookkeeping does not match the map");
  const CubicalSet& A = *SA.base;
  const CubicalSet& B = *SB.base;
  SdCache K(B.dim);
  auto val = empty_tables(*SA.set);
  for (int p = 0; p <= A.dim; ++p)
    for (std::size_t j = 0; j < A.nondeg[p].size(); ++j) {
      cube_id a = A.nondeg[p][j];
      cube_id b = f.map[p][a];
      const BoxMorphism& sigma = B.ez_sigma[p][b];
      Cube root = B.ez_root[p][b];
      const CubicalFunction& m = K.morph(sigma);
      const CubicalFunction& kb = SB.cell_map[root.dim][SB.nondeg_index[root.dim][root.id]];
      const CubicalFunction& ka = SA.cell_map[p][j];
      for (int d = 0; d <= ka.src->dim; ++d)
        for (int x = 0; x < ka.src->count(d); ++x)
          put(val, ka(Cube{d, x}), kb.map[d][m.map[d][x]], "sd_function");
    }
  check_total(val, "sd_function");
  CubicalFunction F{SA.set, SB.set, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction gamma(int sign, const SdSet& S) {
  const CSetPtr& C = S.base;
  int D = C->dim;
  SdCache K(D);
  auto val = empty_tables(*S.set);
  std::map<int, Representable> reps;
  for (int p = 0; p <= D; ++p) {
    if (S.cell_map[p].empty()) continue;
    const CubicalFunction& g = K.gamma_rep(sign, p);
    Representable& R = reps.emplace(p, representable(p, D, false)).first->second;
    for (std::size_t j = 0; j < C->nondeg[p].size(); ++j) {
      cube_id c = C->nondeg[p][j];
      CubicalFunction y = yoneda_function(R, C, Cube{p, c});
      const CubicalFunction& ka = S.cell_map[p][j];
      for (int d = 0; d <= ka.src->dim; ++d)
        for (int x = 0; x < ka.src->count(d); ++x)
          put(val, ka(Cube{d, x}), y.map[d][g.map[d][x]], "gamma");
    }
  }
  check_total(val, "gamma");
  CubicalFunction F{S.set, C, std::move(val)};
  validate_function(F);
  return F;
}

cube_id ExSet::id_of(const std::vector<std::vector<cube_id>>& tables, int n) const {
  auto it = index_[n].find(tables);
  if (it == index_[n].end())
    throw std::out_of_range("ex: the composite map was not enumerated (dimension " +
                            std::to_string(n) + ")");
  return it->second;
}

CubicalFunction ExSet::member(int n, cube_id g) const {
  return CubicalFunction{domains[n].set, base, content[n][g]};
}

ExSet ex(const CSetPtr& C, int D, long long max_per_dim, long long node_budget,
         bool run_validate) {
  if (D < 0 || D > C->dim)
    throw ValidationError("ex: result truncation must not exceed the target truncation");
  SdCache K(D);
  ExSet E;
  E.base = C;
  E.D = D;
  E.content.resize(D + 1);
  E.index_.resize(D + 1);
  for (int n = 0; n <= D; ++n) E.domains.push_back(K.rep(n));

  std::vector<int> counts(D + 1);
  for (int n = 0; n <= D; ++n) {
    MapSearchOptions opt;
    opt.node_budget = node_budget;
    opt.max_results = max_per_dim + 1;
    MapSearchResult res = enumerate_maps(E.domains[n].set, C, {}, opt);
    if (res.budget_exhausted)
      throw CapExceeded("ex: node budget exhausted at dimension " + std::to_string(n));
    if (res.count > max_per_dim)
      throw CapExceeded("ex: more than " + std::to_string(max_per_dim) +
                        " cubes at dimension " + std::to_string(n));
    std::vector<std::vector<std::vector<cube_id>>> maps;
    maps.reserve(res.maps.size());
    for (CubicalFunction& f : res.maps) maps.push_back(std::move(f.map));
    std::sort(maps.begin(), maps.end());
    E.content[n] = std::move(maps);
    counts[n] = static_cast<int>(E.content[n].size());
    for (cube_id g = 0; g < counts[n]; ++g) E.index_[n].emplace(E.content[n][g], g);
  }

  auto X = std::make_shared<CubicalSet>();
  X->allocate(D, counts);
  for (int n = 1; n <= D; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int s = 0; s < 2; ++s) {
        const CubicalFunction& m = K.morph(face_morphism(n - 1, i, s));
        for (cube_id g = 0; g < counts[n]; ++g)
          X->face[n][i - 1][s][g] = E.id_of(pull_tables(E.content[n][g], m), n - 1);
      }
      const CubicalFunction& md = K.morph(collapse_morphism(n, i));
      for (cube_id g = 0; g < counts[n - 1]; ++g)
        X->degen[n][i - 1][g] = E.id_of(pull_tables(E.content[n - 1][g], md), n);
      if (i < n) {
        const CubicalFunction& mc = K.morph(connection_morphism(n, i));
        for (cube_id g = 0; g < counts[n - 1]; ++g)
          X->conn[n][i - 1][g] = E.id_of(pull_tables(E.content[n - 1][g], mc), n);
      }
    }
  }
  finalize(*X, run_validate);
  E.set = X;
  return E;
}

CubicalFunction ex_function(const CubicalFunction& f, const ExSet& EC, const ExSet& ED) {
  if (EC.base.get() != f.src.get() || ED.base.get() != f.dst.get() || EC.D != ED.D)
    throw std::invalid_argument("ex_function: bookkeeping does not match the map");
  auto val = empty_tables(*EC.set);
  for (int n = 0; n <= EC.D; ++n)
    for (cube_id g = 0; g < EC.set->count(n); ++g) {
      std::vector<std::vector<cube_id>> out(EC.content[n][g]);
      for (std::size_t d = 0; d < out.size(); ++d)
        for (cube_id& v : out[d]) v = f.map[d][v];
      val[n][g] = ED.id_of(out, n);
    }
  CubicalFunction F{EC.set, ED.set, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction gamma_hat(int sign, const ExSet& E) {
  const CSetPtr& C = E.base;
  if (E.D != C->dim)
    throw ValidationError("gamma_hat: ex must be computed at the full truncation of the target");
  SdCache K(E.D);
  auto val = empty_tables(*C);
  std::map<int, Representable> reps;
  for (int n = 0; n <= C->dim; ++n) {
    const CubicalFunction& g = K.gamma_rep(sign, n);
    Representable& R = reps.emplace(n, representable(n, E.D, false)).first->second;
    for (cube_id c = 0; c < C->count(n); ++c) {
      CubicalFunction y = yoneda_function(R, C, Cube{n, c});
      val[n][c] = E.id_of(pull_tables(y.map, g), n);
    }
  }
  CubicalFunction F{C, E.set, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction sd_unit(const SdSet& S, const ExSet& E) {
  const CSetPtr& C = S.base;
  if (E.base.get() != S.set.get() || E.D != S.set->dim)
    throw std::invalid_argument("sd_unit: ex must be built on sd of the same set, full depth");
  SdCache K(E.D);
  auto val = empty_tables(*C);
  for (int n = 0; n <= C->dim; ++n)
    for (cube_id c = 0; c < C->count(n); ++c) {
      const BoxMorphism& sigma = C->ez_sigma[n][c];
      Cube root = C->ez_root[n][c];
      const CubicalFunction& kr = S.cell_map[root.dim][S.nondeg_index[root.dim][root.id]];
      if (C->degenerate_cube(Cube{n, c}))
        val[n][c] = E.id_of(pull_tables(kr.map, K.morph(sigma)), n);
      else
        val[n][c] = E.id_of(kr.map, n);
    }
  CubicalFunction F{C, E.set, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction sd_counit(const SdSet& SE, const ExSet& E) {
  if (SE.base.get() != E.set.get())
    throw std::invalid_argument("sd_counit: bookkeeping mismatch");
  auto val = empty_tables(*SE.set);
  const CubicalSet& X = *E.set;
  for (int p = 0; p <= X.dim; ++p)
    for (std::size_t j = 0; j < X.nondeg[p].size(); ++j) {
      cube_id g = X.nondeg[p][j];
      const CubicalFunction& kg = SE.cell_map[p][j];
      for (int d = 0; d <= kg.src->dim; ++d)
        for (int x = 0; x < kg.src->count(d); ++x)
          put(val, kg(Cube{d, x}), E.content[p][g][d][x], "sd_counit");
    }
  check_total(val, "sd_counit");
  CubicalFunction F{SE.set, E.base, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction transpose_to_ex(const CubicalFunction& f, const SdSet& SB, const ExSet& EC) {
  if (f.src.get() != SB.set.get() || f.dst.get() != EC.base.get() || EC.D != SB.base->dim)
    throw std::invalid_argument("transpose_to_ex: bookkeeping mismatch");
  const CubicalSet& B = *SB.base;
  SdCache K(EC.D);
  auto val = empty_tables(B);
  for (int n = 0; n <= B.dim; ++n)
    for (cube_id b = 0; b < B.count(n); ++b) {
      Cube root = B.ez_root[n][b];
      const CubicalFunction& kr = SB.cell_map[root.dim][SB.nondeg_index[root.dim][root.id]];
      std::vector<std::vector<cube_id>> through(kr.map);
      for (int d = 0; d < static_cast<int>(through.size()); ++d)
        for (std::size_t x = 0; x < through[d].size(); ++x)
          through[d][x] = f.map[d][through[d][x]];
      if (B.degenerate_cube(Cube{n, b}))
        val[n][b] = EC.id_of(pull_tables(through, K.morph(B.ez_sigma[n][b])), n);
      else
        val[n][b] = EC.id_of(through, n);
    }
  CubicalFunction F{SB.base, EC.set, std::move(val)};
  validate_function(F);
  return F;
}

CubicalFunction transpose_from_ex(const CubicalFunction& g, const SdSet& SB, const ExSet& EC) {
  if (g.src.get() != SB.base.get() || g.dst.get() != EC.set.get())
    throw std::invalid_argument("transpose_from_ex: bookkeeping mismatch");
  const CubicalSet& B = *SB.base;
  auto val = empty_tables(*SB.set);
  for (int n = 0; n <= B.dim; ++n)
    for (std::size_t j = 0; j < B.nondeg[n].size(); ++j) {
      cube_id b = B.nondeg[n][j];
      const std::vector<std::vector<cube_id>>& content = EC.content[n][g.map[n][b]];
      const CubicalFunction& kb = SB.cell_map[n][j];
      for (int d = 0; d <= kb.src->dim; ++d)
        for (int x = 0; x < kb.src->count(d); ++x)
          put(val, kb(Cube{d, x}), content[d][x], "transpose_from_ex");
    }
  check_total(val, "transpose_from_ex");
  CubicalFunction F{SB.set, EC.base, std::move(val)};
  validate_function(F);
  return F;
}

}  // namespace cubetop
