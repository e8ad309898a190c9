#include "cubetop/builders.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>

namespace cubetop {

cube_id Representable::id_of(const BoxMorphism& f) const {
  if (f.dom < 0 || f.dom >= static_cast<int>(index_.size()))
    throw ValidationError("representable: dimension outside truncation");
  auto it = index_[f.dom].find(f);
  if (it == index_[f.dom].end())
    throw ValidationError("representable: no cube for morphism " + to_text(f));
  return it->second;
}

Cube Representable::top() const { return cube_of(identity(n)); }

Representable representable(int n, int D, bool run_validate) {
  if (n < 0 || D < 0) throw ValidationError("representable: negative arity or truncation");
  Representable R;
  R.n = n;
  R.cube_morphism.resize(D + 1);
  R.index_.resize(D + 1);
  int cap = std::max({5, n, D});
  std::vector<int> counts(D + 1);
  for (int m = 0; m <= D; ++m) {
    R.cube_morphism[m] = enumerate_morphisms(m, n, cap);
    counts[m] = static_cast<int>(R.cube_morphism[m].size());
    for (cube_id x = 0; x < counts[m]; ++x) R.index_[m].emplace(R.cube_morphism[m][x], x);
  }
  auto S = std::make_shared<CubicalSet>();
  S->allocate(D, counts);
  for (int m = 1; m <= D; ++m) {
    for (cube_id x = 0; x < counts[m]; ++x) {
      const BoxMorphism& f = R.cube_morphism[m][x];
      for (int i = 1; i <= m; ++i)
        for (int s = 0; s <= 1; ++s)
          S->face[m][i - 1][s][x] = R.id_of(compose(f, face_morphism(m - 1, i, s)));
    }
    for (cube_id x = 0; x < counts[m - 1]; ++x) {
      const BoxMorphism& f = R.cube_morphism[m - 1][x];
      for (int i = 1; i <= m; ++i)
        S->degen[m][i - 1][x] = R.id_of(compose(f, collapse_morphism(m, i)));
      for (int i = 1; i <= m - 1; ++i)
        S->conn[m][i - 1][x] = R.id_of(compose(f, connection_morphism(m, i)));
    }
  }
  finalize(*S, run_validate);
  R.set = S;
  return R;
}

CubicalFunction yoneda_function(const Representable& R, const CSetPtr& C, Cube c) {
  if (c.dim != R.n) throw ValidationError("yoneda_function: cube dimension != represented arity");
  if (R.set->dim > C->dim) throw ValidationError("yoneda_function: truncation mismatch");
  CubicalFunction f;
  f.src = R.set;
  f.dst = C;
  f.map.resize(R.set->dim + 1);
  for (int m = 0; m <= R.set->dim; ++m) {
    f.map[m].resize(R.set->cube_count[m]);
    for (cube_id x = 0; x < R.set->cube_count[m]; ++x)
      f.map[m][x] = act(*C, R.cube_morphism[m][x], c).id;
  }
  return f;
}

CubicalFunction rep_postcompose(const Representable& from, const Representable& to,
                                const BoxMorphism& u) {
  if (u.dom != from.n || u.cod() != to.n)
    throw ValidationError("rep_postcompose: morphism endpoints mismatch");
  if (from.set->dim > to.set->dim) throw ValidationError("rep_postcompose: truncation mismatch");
  CubicalFunction f;
  f.src = from.set;
  f.dst = to.set;
  f.map.resize(from.set->dim + 1);
  for (int m = 0; m <= from.set->dim; ++m) {
    f.map[m].resize(from.set->cube_count[m]);
    for (cube_id x = 0; x < from.set->cube_count[m]; ++x)
      f.map[m][x] = to.id_of(compose(u, from.cube_morphism[m][x]));
  }
  return f;
}

CubicalFunction support_function(const CSetPtr& C, Cube c) {
  Cube r = C->ez_root[c.dim][c.id];
  return yoneda_function(representable(r.dim, C->dim, false), C, r);
}

RepPart boundary_set(int n, int D) {
  if (n < 1 || D < n) throw ValidationError("boundary_set: need D >= n >= 1");
  Representable R = representable(n, D);
  SubMask m = max_subpresheaf_excluding(*R.set, {R.top()});
  SubObject part = extract_subpresheaf(R.set, m);
  return RepPart{std::move(R), std::move(part)};
}

RepPart open_box_set(int n, int i, int sign, int D) {
  if (n < 1 || D < n) throw ValidationError("open_box_set: need D >= n >= 1");
  if (i < 1 || i > n || sign < 0 || sign > 1) throw ValidationError("open_box_set: bad face");
  Representable R = representable(n, D);
  Cube missing = R.cube_of(face_morphism(n - 1, i, sign));
  SubMask m = max_subpresheaf_excluding(*R.set, {R.top(), missing});
  SubObject part = extract_subpresheaf(R.set, m);
  return RepPart{std::move(R), std::move(part)};
}

CSetPtr point_set(int D) { return representable(0, D).set; }

ColimitResult disjoint_points(int N, int D) {
  if (N < 1) throw ValidationError("disjoint_points: need N >= 1");
  return disjoint_union(std::vector<CSetPtr>(N, point_set(D)));
}

ColimitResult circle(int k, int D) {
  if (k < 1 || D < 1) throw ValidationError("circle: need k >= 1, D >= 1");
  Representable R1 = representable(1, D);
  Representable R0 = representable(0, D);
  Cube v0 = R1.cube_of(BoxMorphism{0, {const0()}});
  Cube v1 = R1.cube_of(BoxMorphism{0, {const1()}});
  CubicalFunction at_v0 = yoneda_function(R0, R1.set, v0);
  CubicalFunction at_v1 = yoneda_function(R0, R1.set, v1);
  GluingDiagram D2;
  D2.objects.assign(k, R1.set);
  for (int j = 0; j < k; ++j) D2.relations.push_back({at_v1, j, at_v0, (j + 1) % k});
  return colimit(D2, true);
}

CSetPtr klein_bottle(int D, bool run_validate) {
  if (D < 2) throw ValidationError("klein_bottle: need D >= 2");
  Representable R2 = representable(2, D);
  Representable R1 = representable(1, D);
  auto edge = [&](int i, int s) {
    return yoneda_function(R1, R2.set, R2.cube_of(face_morphism(1, i, s)));
  };
  GluingDiagram G;
  G.objects = {R2.set, R2.set};
  // Horizontal edges crosswise, vertical edges straight.
  G.relations.push_back({edge(1, 0), 0, edge(1, 1), 1});
  G.relations.push_back({edge(1, 1), 0, edge(1, 0), 1});
  G.relations.push_back({edge(2, 0), 0, edge(2, 0), 1});
  G.relations.push_back({edge(2, 1), 0, edge(2, 1), 1});
  return colimit(G, run_validate).set;
}

ColimitResult glued_cube_wedge(const std::vector<int>& dims, int D) {
  Representable R0 = representable(0, D);
  std::map<int, Representable> reps;
  GluingDiagram G;
  G.objects.push_back(R0.set);
  for (std::size_t j = 0; j < dims.size(); ++j) {
    int n = dims[j];
    if (n < 0 || n > D) throw ValidationError("glued_cube_wedge: summand outside truncation");
    auto it = reps.find(n);
    if (it == reps.end()) it = reps.emplace(n, representable(n, D)).first;
    const Representable& R = it->second;
    G.objects.push_back(R.set);
    BoxMorphism lo{0, std::vector<BoxCoord>(n, const0())};
    BoxMorphism hi{0, std::vector<BoxCoord>(n, const1())};
    CubicalFunction base = identity_function(R0.set);
    int obj = static_cast<int>(j) + 1;
    G.relations.push_back({yoneda_function(R0, R.set, R.cube_of(lo)), obj, base, 0});
    G.relations.push_back({yoneda_function(R0, R.set, R.cube_of(hi)), obj, base, 0});
  }
  return colimit(G, true);
}

void validate_poset(const FinitePoset& P) {
  int N = P.size;
  if (static_cast<int>(P.leq.size()) != N) throw ValidationError("poset: leq size");
  for (int x = 0; x < N; ++x) {
    if (static_cast<int>(P.leq[x].size()) != N) throw ValidationError("poset: leq row size");
    if (!P.leq[x][x]) throw ValidationError("poset: not reflexive");
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      if (P.leq[x][y] && P.leq[y][x] && x != y) throw ValidationError("poset: not antisymmetric");
      if (!P.leq[x][y]) continue;
      for (int z = 0; z < N; ++z)
        if (P.leq[y][z] && !P.leq[x][z]) throw ValidationError("poset: not transitive");
    }
}

FinitePoset box_poset(int n) {
  FinitePoset P;
  P.size = 1 << n;
  P.leq.assign(P.size, std::vector<std::uint8_t>(P.size, 0));
  for (int x = 0; x < P.size; ++x)
    for (int y = 0; y < P.size; ++y) P.leq[x][y] = ((x & ~y) == 0);
  return P;
}

FinitePoset chain_poset(int k) {
  FinitePoset P;
  P.size = k;
  P.leq.assign(k, std::vector<std::uint8_t>(k, 0));
  for (int x = 0; x < k; ++x)
    for (int y = x; y < k; ++y) P.leq[x][y] = 1;
  return P;
}

namespace {

// All monotone vertex tables {0,1}^m -> P in lexicographic order.
std::vector<std::vector<int>> monotone_tables(const FinitePoset& P, int m) {
  int V = 1 << m;
  std::vector<std::vector<int>> out;
  std::vector<int> cur(V, 0);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == V) {
      out.push_back(cur);
      return;
    }
    for (int p = 0; p < P.size; ++p) {
      bool ok = true;
      for (int b = 0; b < m && ok; ++b)
        if (x & (1 << b)) ok = P.leq[cur[x ^ (1 << b)]][p] != 0;
      if (ok) {
        cur[x] = p;
        self(self, x + 1);
      }
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

cube_id CNervePoset::id_of(const std::vector<int>& values, int m) const {
  const auto& list = table[m];
  auto it = std::lower_bound(list.begin(), list.end(), values);
  if (it == list.end() || *it != values)
    throw ValidationError("cnerve_poset: vertex table is not a cube");
  return static_cast<cube_id>(it - list.begin());
}

CNervePoset cnerve_poset(const FinitePoset& P, int D, bool run_validate) {
  validate_poset(P);
  if (P.size == 0) throw ValidationError("cnerve_poset: empty poset");
  CNervePoset N;
  N.table.resize(D + 1);
  std::vector<int> counts(D + 1);
  for (int m = 0; m <= D; ++m) {
    N.table[m] = monotone_tables(P, m);
    counts[m] = static_cast<int>(N.table[m].size());
  }
  auto S = std::make_shared<CubicalSet>();
  S->allocate(D, counts);
  auto pulled = [&](const std::vector<int>& t, const BoxMorphism& u) {
    std::vector<int> r(std::size_t(1) << u.dom);
    for (std::uint32_t v = 0; v < r.size(); ++v) r[v] = t[evaluate(u, v)];
    return r;
  };
  for (int m = 1; m <= D; ++m) {
    for (int i = 1; i <= m; ++i)
      for (int s = 0; s <= 1; ++s) {
        BoxMorphism u = face_morphism(m - 1, i, s);
        for (cube_id x = 0; x < counts[m]; ++x)
          S->face[m][i - 1][s][x] = N.id_of(pulled(N.table[m][x], u), m - 1);
      }
    for (int i = 1; i <= m; ++i) {
      BoxMorphism u = collapse_morphism(m, i);
      for (cube_id x = 0; x < counts[m - 1]; ++x)
        S->degen[m][i - 1][x] = N.id_of(pulled(N.table[m - 1][x], u), m);
    }
    for (int i = 1; i <= m - 1; ++i) {
      BoxMorphism u = connection_morphism(m, i);
      for (cube_id x = 0; x < counts[m - 1]; ++x)
        S->conn[m][i - 1][x] = N.id_of(pulled(N.table[m - 1][x], u), m);
    }
  }
  finalize(*S, run_validate);
  N.set = S;
  return N;
}

void validate_group(const FiniteGroup& G) {
  int N = G.order;
  if (N <= 0 || static_cast<int>(G.mul.size()) != N || static_cast<int>(G.inv.size()) != N)
    throw ValidationError("group: table sizes");
  for (int a = 0; a < N; ++a) {
    if (static_cast<int>(G.mul[a].size()) != N) throw ValidationError("group: mul row size");
    if (G.mul[0][a] != a || G.mul[a][0] != a) throw ValidationError("group: element 0 not unit");
    if (G.mul[a][G.inv[a]] != 0 || G.mul[G.inv[a]][a] != 0)
      throw ValidationError("group: bad inverse");
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]])
          throw ValidationError("group: not associative");
}

FiniteGroup cyclic_group(int m) {
  if (m < 1) throw ValidationError("cyclic_group: order >= 1 required");
  FiniteGroup G;
  G.order = m;
  G.mul.assign(m, std::vector<int>(m));
  G.inv.resize(m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) G.mul[a][b] = (a + b) % m;
    G.inv[a] = (m - a) % m;
  }
  return G;
}

FiniteGroup symmetric_group_3() {
  // Permutations of {0,1,2} in lexicographic order; the identity is index 0.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return static_cast<int>(i);
    throw ValidationError("symmetric_group_3: lookup");
  };
  FiniteGroup G;
  G.order = 6;
  G.mul.assign(6, std::vector<int>(6));
  G.inv.resize(6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> q;
      for (int x = 0; x < 3; ++x) q[x] = perms[a][perms[b][x]];
      G.mul[a][b] = index_of(q);
    }
    std::array<int, 3> r{};
    for (int x = 0; x < 3; ++x) r[perms[a][x]] = x;
    G.inv[a] = index_of(r);
  }
  return G;
}

cube_id CNerveGroup::id_of(const std::vector<int>& values) const {
  long long id = 0;
  for (std::size_t x = 1; x < values.size(); ++x) id = id * group.order + values[x];
  return static_cast<cube_id>(id);
}

CNerveGroup cnerve_group(const FiniteGroup& G, int D, long long max_cubes, bool run_validate) {
  validate_group(G);
  CNerveGroup N;
  N.group = G;
  N.table.resize(D + 1);
  std::vector<int> counts(D + 1);
  for (int m = 0; m <= D; ++m) {
    long long cnt = 1;
    for (int x = 1; x < (1 << m); ++x) {
      cnt *= G.order;
      if (cnt > max_cubes)
        throw CapExceeded("cnerve_group: dimension " + std::to_string(m) + " exceeds cap of " +
                          std::to_string(max_cubes) + " cubes");
    }
    counts[m] = static_cast<int>(cnt);
    N.table[m].assign(cnt, std::vector<int>(std::size_t(1) << m, 0));
    for (long long id = 0; id < cnt; ++id) {
      long long rem = id;
      for (int x = (1 << m) - 1; x >= 1; --x) {
        N.table[m][id][x] = static_cast<int>(rem % G.order);
        rem /= G.order;
      }
    }
  }
  auto S = std::make_shared<CubicalSet>();
  S->allocate(D, counts);
  // Pull back along vertex evaluation, then left-translate so vertex 0 is e.
  auto pulled = [&](const std::vector<int>& t, const std::vector<std::uint32_t>& ev) {
    std::vector<int> r(ev.size());
    int g0inv = G.inv[t[ev[0]]];
    for (std::size_t v = 0; v < ev.size(); ++v) r[v] = G.mul[g0inv][t[ev[v]]];
    return r;
  };
  for (int m = 1; m <= D; ++m) {
    for (int i = 1; i <= m; ++i)
      for (int s = 0; s <= 1; ++s) {
        std::vector<std::uint32_t> ev = function_table(face_morphism(m - 1, i, s));
        for (cube_id x = 0; x < counts[m]; ++x)
          S->face[m][i - 1][s][x] = N.id_of(pulled(N.table[m][x], ev));
      }
    for (int i = 1; i <= m; ++i) {
      std::vector<std::uint32_t> ev = function_table(collapse_morphism(m, i));
      for (cube_id x = 0; x < counts[m - 1]; ++x)
        S->degen[m][i - 1][x] = N.id_of(pulled(N.table[m - 1][x], ev));
    }
    for (int i = 1; i <= m - 1; ++i) {
      std::vector<std::uint32_t> ev = function_table(connection_morphism(m, i));
      for (cube_id x = 0; x < counts[m - 1]; ++x)
        S->conn[m][i - 1][x] = N.id_of(pulled(N.table[m - 1][x], ev));
    }
  }
  finalize(*S, run_validate);
  N.set = S;
  return N;
}

CSetPtr random_cubical_set(std::uint64_t seed, int D, int n_objects, int n_relations) {
  if (D < 0 || n_objects < 1 || n_relations < 0)
    throw ValidationError("random_cubical_set: bad parameters");
  std::mt19937_64 gen(seed);
  auto pick = [&](int bound) { return static_cast<int>(gen() % static_cast<std::uint64_t>(bound)); };
  std::vector<Representable> reps;
  for (int d = 0; d <= D; ++d) reps.push_back(representable(d, D));
  GluingDiagram G;
  std::vector<int> obj_arity;
  for (int j = 0; j < n_objects; ++j) {
    int d = pick(D + 1);
    obj_arity.push_back(d);
    G.objects.push_back(reps[d].set);
  }
  for (int r = 0; r < n_relations; ++r) {
    int dr = pick(D + 1);
    int o1 = pick(n_objects), o2 = pick(n_objects);
    Cube c1{dr, pick(G.objects[o1]->cube_count[dr])};
    Cube c2{dr, pick(G.objects[o2]->cube_count[dr])};
    G.relations.push_back({yoneda_function(reps[dr], G.objects[o1], c1), o1,
                           yoneda_function(reps[dr], G.objects[o2], c2), o2});
  }
  return colimit(G, true).set;
}

}  // namespace cubetop
