#include "cubetop/classifying.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "cubetop/colimit.hpp"
#include "cubetop/errors.hpp"
#include "cubetop/sharp.hpp"
#include "cubetop/subpresheaf.hpp"
#include "cubetop/tensor.hpp"

namespace cubetop {

namespace {

// Least nonnegative residue of an integral rational.
mpq_class residue_mod(const mpq_class& v, long long m) {
  mpz_class r, mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), v.get_num().get_mpz_t(), mm.get_mpz_t());
  return mpq_class(r);
}

mpq_class group_reduce(const CoefficientGroup& pi, const mpq_class& v) {
  if (pi.kind == CoefficientGroup::Kind::mod_m) return residue_mod(v, pi.modulus);
  return v;
}

// Allowed values for one cochain slot, ascending.
std::vector<long long> slot_values(const CoefficientGroup& pi, const ClassifyingOptions& opt) {
  std::vector<long long> out;
  if (pi.kind == CoefficientGroup::Kind::mod_m) {
    for (long long v = 0; v < pi.modulus; ++v) out.push_back(v);
  } else {
    for (long long v = -*opt.value_cap; v <= *opt.value_cap; ++v) out.push_back(v);
  }
  if (opt.stage) {
    std::vector<long long> kept;
    for (long long v : out)
      if (value_seminorm(pi, mpq_class(static_cast<long>(v))) <= *opt.stage) kept.push_back(v);
    out = kept;
  }
  return out;
}

// All value tables over basis[n] of X satisfying the degree-n cocycle
// equations, in lexicographic order: slots are assigned left to right with
// values ascending, and an equation is checked as soon as its last
// participating slot is set.
std::vector<std::vector<long long>> enumerate_cocycles(const IntegerChainComplex& X,
                                                       const CoefficientGroup& pi, int n,
                                                       const std::vector<long long>& vals,
                                                       long long max_per_dim) {
  int b = static_cast<int>(X.basis[n].size());
  std::vector<std::vector<const std::vector<std::pair<int, int>>*>> by_last(b);
  if (n + 1 <= X.base->dim)
    for (const auto& row : X.boundary[n + 1]) {
      if (row.empty()) continue;
      by_last[row.back().first].push_back(&row);
    }
  long long m = pi.modulus;
  bool modular = pi.kind == CoefficientGroup::Kind::mod_m;
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur(b, 0);
  auto rec = [&](auto&& self, int p) -> void {
    if (p == b) {
      if (static_cast<long long>(out.size()) >= max_per_dim)
        throw CapExceeded("classifying object: more than " + std::to_string(max_per_dim) +
                          " cubes in one dimension");
      out.push_back(cur);
      return;
    }
    for (long long v : vals) {
      cur[p] = v;
      bool ok = true;
      for (const auto* row : by_last[p]) {
        long long s = 0;
        for (const auto& [pos, coef] : *row) s += coef * cur[pos];
        if (modular ? s % m != 0 : s != 0) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, p + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Position in XB's degree-n basis of the image under F of each degree-n
// basis cube of XA, or -1 when the image is degenerate.
std::vector<int> transport_positions(const CubicalFunction& F, const IntegerChainComplex& XA,
                                     const IntegerChainComplex& XB, int n) {
  std::vector<int> out;
  out.reserve(XA.basis[n].size());
  for (cube_id c : XA.basis[n]) out.push_back(XB.pos[n][F.map[n][c]]);
  return out;
}

}  // namespace

cube_id ClassifyingObject::id_of(const std::vector<mpq_class>& vals, int m) const {
  if (m < 0 || m > D) throw ValidationError("classifying object: dimension out of range");
  auto it = index_[m].find(vals);
  if (it == index_[m].end())
    throw ValidationError("classifying object: no cube with the given value table in dimension " +
                          std::to_string(m));
  return it->second;
}

cube_id ClassifyingObject::zero(int m) const {
  if (m < 0 || m > D) throw ValidationError("classifying object: dimension out of range");
  return id_of(std::vector<mpq_class>(domain_chains[m].basis[n].size()), m);
}

cube_id ClassifyingObject::neg(int m, cube_id a) const {
  if (m < 0 || m > D || a < 0 || a >= static_cast<cube_id>(values[m].size()))
    throw ValidationError("classifying object: cube out of range");
  std::vector<mpq_class> w;
  w.reserve(values[m][a].size());
  for (const mpq_class& v : values[m][a]) w.push_back(group_reduce(pi, -v));
  return id_of(w, m);
}

cube_id ClassifyingObject::add(int m, cube_id a, cube_id b) const {
  if (m < 0 || m > D || a < 0 || b < 0 || a >= static_cast<cube_id>(values[m].size()) ||
      b >= static_cast<cube_id>(values[m].size()))
    throw ValidationError("classifying object: cube out of range");
  std::vector<mpq_class> w(values[m][a].size());
  for (size_t j = 0; j < w.size(); ++j)
    w[j] = group_reduce(pi, values[m][a][j] + values[m][b][j]);
  try {
    return id_of(w, m);
  } catch (const ValidationError&) {
    throw ValidationError(
        "classifying object: sum escapes the enumerated object (value cap or stage bound)");
  }
}

ClassifyingObject classifying_object(const CoefficientGroup& pi, int n, int D,
                                     const ClassifyingOptions& opt) {
  validate_coefficients(pi);
  if (n < 1) throw ValidationError("classifying object: degree must be at least 1");
  if (D < 0) throw ValidationError("classifying object: negative truncation");
  if (opt.max_per_dim < 1) throw ValidationError("classifying object: max_per_dim must be positive");
  if (pi.kind == CoefficientGroup::Kind::rationals)
    throw ValidationError(
        "classifying object: rational coefficients give infinitely many cocycles per cube");
  if (pi.kind == CoefficientGroup::Kind::integers) {
    if (!opt.value_cap)
      throw ValidationError(
          "classifying object: integer coefficients need a value cap, the enumeration is "
          "infinite without one");
    if (*opt.value_cap < 0) throw ValidationError("classifying object: negative value cap");
  }
  if (opt.stage && *opt.stage < 0)
    throw ValidationError("classifying object: negative stage bound");

  ClassifyingObject K;
  K.pi = pi;
  K.n = n;
  K.D = D;
  K.options = opt;

  std::vector<Representable> reps;
  std::vector<CNervePoset> nerves;
  for (int m = 0; m <= D; ++m) {
    if (opt.conical) {
      nerves.push_back(cnerve_poset(box_poset(m), n + 1, false));
      K.domain.push_back(nerves.back().set);
    } else {
      reps.push_back(representable(m, n + 1, false));
      K.domain.push_back(reps.back().set);
    }
    K.domain_chains.push_back(chains(K.domain.back()));
  }

  std::vector<long long> vals = slot_values(pi, opt);
  std::vector<int> counts(D + 1);
  K.values.resize(D + 1);
  K.index_.resize(D + 1);
  for (int m = 0; m <= D; ++m) {
    auto tables = enumerate_cocycles(K.domain_chains[m], pi, n, vals, opt.max_per_dim);
    counts[m] = static_cast<int>(tables.size());
    for (cube_id id = 0; id < counts[m]; ++id) {
      std::vector<mpq_class> row;
      row.reserve(tables[id].size());
      for (long long v : tables[id]) row.emplace_back(static_cast<long>(v));
      K.index_[m][row] = id;
      K.values[m].push_back(std::move(row));
    }
  }

  // The induced function domain[a] -> domain[b] of a site morphism
  // u: box^a -> box^b: postcomposition for representables, vertex evaluation
  // for conical nerves.
  auto induced = [&](const BoxMorphism& u) -> CubicalFunction {
    int a = u.dom, b = u.cod();
    if (!opt.conical) return rep_postcompose(reps[a], reps[b], u);
    CubicalFunction F;
    F.src = nerves[a].set;
    F.dst = nerves[b].set;
    F.map.resize(nerves[a].set->dim + 1);
    for (int k = 0; k <= nerves[a].set->dim; ++k) {
      F.map[k].resize(nerves[a].set->cube_count[k]);
      for (cube_id c = 0; c < nerves[a].set->cube_count[k]; ++c) {
        std::vector<int> w;
        w.reserve(nerves[a].table[k][c].size());
        for (int x : nerves[a].table[k][c])
          w.push_back(static_cast<int>(evaluate(u, static_cast<std::uint32_t>(x))));
        F.map[k][c] = nerves[b].id_of(w, k);
      }
    }
    return F;
  };

  auto C = std::make_shared<CubicalSet>();
  C->allocate(D, counts);

  // The contravariant action of u on cocycle tables: relocate values along
  // the induced function (degenerate images contribute zero). Cocycles pull
  // back to cocycles and the value set only shrinks, so the lookup is total.
  auto fill = [&](std::vector<cube_id>& table, const BoxMorphism& u) {
    int a = u.dom, b = u.cod();
    CubicalFunction F = induced(u);
    std::vector<int> tpos = transport_positions(F, K.domain_chains[a], K.domain_chains[b], n);
    table.resize(counts[b]);
    for (cube_id id = 0; id < counts[b]; ++id) {
      std::vector<mpq_class> w(tpos.size());
      for (size_t j = 0; j < tpos.size(); ++j)
        if (tpos[j] >= 0) w[j] = K.values[b][id][tpos[j]];
      table[id] = K.id_of(w, a);
    }
  };

  for (int m = 1; m <= D; ++m) {
    for (int i = 1; i <= m; ++i)
      for (int s = 0; s < 2; ++s) fill(C->face[m][i - 1][s], face_morphism(m - 1, i, s));
    for (int i = 1; i <= m; ++i) fill(C->degen[m][i - 1], collapse_morphism(m, i));
    for (int i = 1; i + 1 <= m; ++i) fill(C->conn[m][i - 1], connection_morphism(m, i));
  }
  finalize(*C, true);
  K.set = C;
  return K;
}

CubicalFunction classifying_inclusion(const ClassifyingObject& small, const ClassifyingObject& big) {
  if (small.n != big.n || small.D != big.D || small.options.conical != big.options.conical)
    throw ValidationError("classifying inclusion: mismatched degree, truncation or flavor");
  if (small.pi.kind != big.pi.kind || small.pi.modulus != big.pi.modulus)
    throw ValidationError("classifying inclusion: mismatched coefficients");
  CubicalFunction F;
  F.src = small.set;
  F.dst = big.set;
  F.map.resize(small.D + 1);
  for (int m = 0; m <= small.D; ++m) {
    F.map[m].resize(small.set->cube_count[m]);
    for (cube_id id = 0; id < small.set->cube_count[m]; ++id)
      F.map[m][id] = big.id_of(small.values[m][id], m);
  }
  validate_function(F);
  return F;
}

NormedCochain classified_cocycle(const ClassifyingObject& K, const CubicalFunction& f,
                                 const IntegerChainComplex& XA) {
  if (K.options.conical)
    throw ValidationError("classified cocycle: available for the representable-domain flavor only");
  if (f.dst != K.set)
    throw ValidationError("classified cocycle: the function does not land in the classifying object");
  if (f.src != XA.base)
    throw ValidationError("classified cocycle: the chain complex does not match the function source");
  if (K.n > XA.base->dim)
    throw ValidationError("classified cocycle: degree exceeds the source truncation");
  Representable R = representable(K.n, K.n + 1, false);
  if (R.set->cube_count != K.domain[K.n]->cube_count)
    throw ValidationError("classified cocycle: domain complex mismatch");
  int tpos = K.domain_chains[K.n].pos[K.n][R.top().id];
  if (tpos < 0) throw ValidationError("classified cocycle: degenerate top cell");
  NormedCochain c = zero_cochain(XA, K.pi, K.n);
  const auto& bas = XA.basis[K.n];
  for (size_t j = 0; j < bas.size(); ++j) c.values[j] = K.values[K.n][f.map[K.n][bas[j]]][tpos];
  if (!is_cocycle(c, XA))
    throw ValidationError("classified cocycle: the classified values fail the cocycle equations");
  return c;
}

CubicalFunction classifying_function(const ClassifyingObject& K, const NormedCochain& c,
                                     const IntegerChainComplex& XA) {
  if (K.options.conical)
    throw ValidationError("classifying function: available for the representable-domain flavor only");
  validate_cochain(XA, c);
  if (c.degree != K.n)
    throw ValidationError("classifying function: cochain degree does not match the classifying object");
  if (c.coeff.kind != K.pi.kind || c.coeff.modulus != K.pi.modulus)
    throw ValidationError("classifying function: coefficient mismatch");
  if (XA.base->dim > K.D)
    throw ValidationError("classifying function: source truncation exceeds the classifying object's");
  if (!is_cocycle(c, XA)) throw ValidationError("classifying function: only cocycles classify");
  const CubicalSet& A = *XA.base;
  CubicalFunction F;
  F.src = XA.base;
  F.dst = K.set;
  F.map.resize(A.dim + 1);
  for (int m = 0; m <= A.dim; ++m) {
    Representable R = representable(m, K.n + 1, false);
    if (R.set->cube_count != K.domain[m]->cube_count)
      throw ValidationError("classifying function: domain complex mismatch");
    // An m-cube sigma goes to the pullback of c along the function that
    // sigma classifies; its table entry at a basis cube x of rep(m) is the
    // value of c on the cube x-acts-on-sigma.
    std::vector<std::vector<GeneratorStep>> words;
    for (cube_id x : K.domain_chains[m].basis[K.n]) words.push_back(decompose(R.cube_morphism[K.n][x]));
    F.map[m].resize(A.cube_count[m]);
    for (cube_id sig = 0; sig < A.cube_count[m]; ++sig) {
      std::vector<mpq_class> w(words.size());
      for (size_t j = 0; j < words.size(); ++j)
        w[j] = cochain_value(XA, c, act_word(A, words[j], Cube{m, sig}).id);
      F.map[m][sig] = K.id_of(w, m);
    }
  }
  validate_function(F);
  return F;
}

// ---------------------------------------------------------------------------
// Mapping telescopes.

Telescope telescope(const TelescopeStages& stages) {
  if (stages.objects.empty()) throw ValidationError("telescope: no stages");
  int D = stages.objects[0]->dim;
  for (const auto& X : stages.objects)
    if (X->dim != D) throw ValidationError("telescope: stages must share one truncation");
  if (stages.steps.size() + 1 != stages.objects.size())
    throw ValidationError("telescope: need exactly one step between consecutive stages");
  for (size_t i = 0; i < stages.steps.size(); ++i) {
    if (stages.steps[i].src != stages.objects[i] || stages.steps[i].dst != stages.objects[i + 1])
      throw ValidationError("telescope: step " + std::to_string(i) +
                            " does not join its stages");
    validate_function(stages.steps[i]);
  }
  int N = static_cast<int>(stages.objects.size()) - 1;
  CNervePoset I = cnerve_poset(chain_poset(2), D, false);
  Telescope T;
  T.interval = I.set;
  if (N == 0) {
    T.set = stages.objects[0];
    T.stage_map = {identity_function(stages.objects[0])};
    T.vertex_stage.assign(stages.objects[0]->cube_count[0], 0);
    return T;
  }
  cube_id v0 = I.id_of({0}, 0);
  cube_id v1 = I.id_of({1}, 0);
  std::vector<TensorProduct> cyl;
  cyl.reserve(N);
  for (int i = 0; i < N; ++i) cyl.push_back(tensor_product(stages.objects[i], I.set, D, false));
  GluingDiagram G;
  for (int i = 0; i < N; ++i) G.objects.push_back(cyl[i].set);
  G.objects.push_back(stages.objects[N]);
  // End 1 of cylinder i meets the next stage at end 0 of cylinder i+1 (or
  // directly, for the final stage).
  for (int i = 0; i + 1 < N; ++i)
    G.relations.push_back(
        ParallelPair{tensor_end_left(cyl[i], v1), i,
                     compose_functions(tensor_end_left(cyl[i + 1], v0), stages.steps[i]), i + 1});
  G.relations.push_back(ParallelPair{tensor_end_left(cyl[N - 1], v1), N - 1, stages.steps[N - 1], N});
  ColimitResult col = colimit(G, false);
  T.set = col.set;
  for (int i = 0; i < N; ++i)
    T.stage_map.push_back(compose_functions(col.legs[i], tensor_end_left(cyl[i], v0)));
  T.stage_map.push_back(col.legs[N]);

  // Every telescope vertex lies at one well-defined level: the interval has
  // no interior vertices and the gluing only matches end 1 of level i with
  // end 0 of level i+1.
  T.vertex_stage.assign(T.set->cube_count[0], -1);
  for (int i = 0; i <= N; ++i)
    for (cube_id v = 0; v < stages.objects[i]->cube_count[0]; ++v) {
      cube_id w = T.stage_map[i].map[0][v];
      if (T.vertex_stage[w] >= 0 && T.vertex_stage[w] != i)
        throw ValidationError("telescope: vertex level conflict");
      T.vertex_stage[w] = i;
    }
  for (int s : T.vertex_stage)
    if (s < 0) throw ValidationError("telescope: vertex missed by every stage");
  return T;
}

cube_id telescope_vertex_product(const Telescope& T, cube_id a, cube_id b) {
  if (a < 0 || b < 0 || a >= static_cast<cube_id>(T.vertex_stage.size()) ||
      b >= static_cast<cube_id>(T.vertex_stage.size()))
    throw ValidationError("telescope vertex product: vertex out of range");
  int level = std::max(T.vertex_stage[a], T.vertex_stage[b]);
  const CubicalFunction& leg = T.stage_map[level];
  if (leg.src->cube_count[0] != 1)
    throw ValidationError("telescope vertex product: stage " + std::to_string(level) +
                          " has more than one vertex");
  return leg.map[0][0];
}

// ---------------------------------------------------------------------------
// Word-length telescopes.

void validate_word_length(const FiniteGroup& G, const std::vector<mpq_class>& length) {
  validate_group(G);
  if (static_cast<int>(length.size()) != G.order)
    throw ValidationError("word length: table size must match the group order");
  if (length[0] != 0) throw ValidationError("word length: the identity must have length zero");
  for (int g = 1; g < G.order; ++g)
    if (length[g] <= 0) throw ValidationError("word length: positive length required off the identity");
  for (int g = 0; g < G.order; ++g)
    if (length[g] != length[G.inv[g]])
      throw ValidationError("word length: length must be inverse-invariant");
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h)
      if (length[G.mul[g][h]] > length[g] + length[h])
        throw ValidationError("word length: subadditivity fails at a product");
}

namespace {

void validate_bounds_shape(bool empty, bool negative, bool decreasing, const char* who) {
  if (empty) throw ValidationError(std::string(who) + ": need at least one stage");
  if (negative) throw ValidationError(std::string(who) + ": negative bound");
  if (decreasing) throw ValidationError(std::string(who) + ": bounds must be nondecreasing");
}

}  // namespace

Telescope word_length_telescope(const FiniteGroup& G, const std::vector<mpq_class>& length,
                                const std::vector<mpq_class>& beta, int D, long long max_cubes) {
  validate_word_length(G, length);
  bool negative = false, decreasing = false;
  for (size_t i = 0; i < beta.size(); ++i) {
    negative |= beta[i] < 0;
    decreasing |= i + 1 < beta.size() && beta[i] > beta[i + 1];
  }
  validate_bounds_shape(beta.empty(), negative, decreasing, "word-length telescope");
  if (D < 0) throw ValidationError("word-length telescope: negative truncation");

  CNerveGroup NG = cnerve_group(G, D, max_cubes, false);
  TelescopeStages stages;
  std::vector<SubObject> subs;
  for (const mpq_class& bound : beta) {
    // Keep the cubes all of whose comparable vertex pairs carry ratios of
    // length within the bound. Comparable pairs (not just cover edges)
    // because connections surface diagonal ratios; the mask is then closed
    // under every generator action, since actions precompose with monotone
    // vertex maps and so only reuse existing comparable-pair ratios.
    SubMask mask = SubMask::none(*NG.set);
    for (int m = 0; m <= D; ++m) {
      int V = 1 << m;
      for (cube_id id = 0; id < NG.set->cube_count[m]; ++id) {
        const std::vector<int>& h = NG.table[m][id];
        bool keep = true;
        for (int x = 0; x < V && keep; ++x)
          for (int y = 0; y < V; ++y) {
            if ((x & y) != x) continue;
            if (length[G.mul[G.inv[h[x]]][h[y]]] > bound) {
              keep = false;
              break;
            }
          }
        if (keep) mask.add(Cube{m, id});
      }
    }
    if (!is_action_closed(*NG.set, mask))
      throw ValidationError("word-length telescope: stage mask is not action closed");
    subs.push_back(extract_subpresheaf(NG.set, mask, false));
    stages.objects.push_back(subs.back().set);
  }
  for (size_t i = 0; i + 1 < subs.size(); ++i)
    stages.steps.push_back(corestrict(subs[i].inclusion, subs[i + 1]));
  return telescope(stages);
}

Telescope integer_word_telescope(const std::vector<long long>& beta, int D, long long max_cubes) {
  bool negative = false, decreasing = false;
  for (size_t i = 0; i < beta.size(); ++i) {
    negative |= beta[i] < 0;
    decreasing |= i + 1 < beta.size() && beta[i] > beta[i + 1];
  }
  validate_bounds_shape(beta.empty(), negative, decreasing, "integer word telescope");
  if (D < 0) throw ValidationError("integer word telescope: negative truncation");

  // Stage tables per dimension: h over the vertices of box^m with h(0) = 0
  // and |h(y) - h(x)| <= bound on comparable pairs, in lexicographic order.
  auto stage_tables = [&](long long bound, int m) {
    int V = 1 << m;
    std::vector<std::vector<long long>> out;
    std::vector<long long> h(V, 0);
    auto rec = [&](auto&& self, int v) -> void {
      if (v == V) {
        if (static_cast<long long>(out.size()) >= max_cubes)
          throw CapExceeded("integer word telescope: more than " + std::to_string(max_cubes) +
                            " cubes in one dimension");
        out.push_back(h);
        return;
      }
      for (long long g = -bound; g <= bound; ++g) {
        h[v] = g;
        bool ok = true;
        for (int x = 0; x < v; ++x)
          if ((x & v) == x && std::llabs(h[v] - h[x]) > bound) {
            ok = false;
            break;
          }
        if (ok) self(self, v + 1);
      }
    };
    h[0] = 0;
    rec(rec, 1);
    return out;
  };

  TelescopeStages stages;
  std::vector<std::vector<std::map<std::vector<long long>, cube_id>>> index(beta.size());
  std::vector<std::vector<std::vector<std::vector<long long>>>> tables(beta.size());
  for (size_t s = 0; s < beta.size(); ++s) {
    tables[s].resize(D + 1);
    index[s].resize(D + 1);
    std::vector<int> counts(D + 1);
    for (int m = 0; m <= D; ++m) {
      tables[s][m] = stage_tables(beta[s], m);
      counts[m] = static_cast<int>(tables[s][m].size());
      for (cube_id id = 0; id < counts[m]; ++id) index[s][m][tables[s][m][id]] = id;
    }
    auto C = std::make_shared<CubicalSet>();
    C->allocate(D, counts);
    // Action of u: box^a -> box^b on a dimension-b table: precompose with
    // vertex evaluation and renormalize to h(0) = 0; ratios are reused
    // comparable-pair ratios, so the stage is closed.
    auto fill = [&](std::vector<cube_id>& table, const BoxMorphism& u) {
      int a = u.dom, b = u.cod();
      int Va = 1 << a;
      table.resize(counts[b]);
      for (cube_id id = 0; id < counts[b]; ++id) {
        const auto& h = tables[s][b][id];
        std::vector<long long> w(Va);
        long long base = h[evaluate(u, 0)];
        for (int v = 0; v < Va; ++v)
          w[v] = h[evaluate(u, static_cast<std::uint32_t>(v))] - base;
        table[id] = index[s][a].at(w);
      }
    };
    for (int m = 1; m <= D; ++m) {
      for (int i = 1; i <= m; ++i)
        for (int sg = 0; sg < 2; ++sg) fill(C->face[m][i - 1][sg], face_morphism(m - 1, i, sg));
      for (int i = 1; i <= m; ++i) fill(C->degen[m][i - 1], collapse_morphism(m, i));
      for (int i = 1; i + 1 <= m; ++i) fill(C->conn[m][i - 1], connection_morphism(m, i));
    }
    finalize(*C, true);
    stages.objects.push_back(C);
  }
  for (size_t s = 0; s + 1 < beta.size(); ++s) {
    CubicalFunction step;
    step.src = stages.objects[s];
    step.dst = stages.objects[s + 1];
    step.map.resize(D + 1);
    for (int m = 0; m <= D; ++m) {
      step.map[m].resize(stages.objects[s]->cube_count[m]);
      for (cube_id id = 0; id < stages.objects[s]->cube_count[m]; ++id)
        step.map[m][id] = index[s + 1][m].at(tables[s][m][id]);
    }
    validate_function(step);
    stages.steps.push_back(step);
  }
  return telescope(stages);
}

// ---------------------------------------------------------------------------
// Forced extension norm.

mpq_class forced_extension_norm(int n, long long max_per_dim, long long node_budget) {
  if (n < 1 || n > 6)
    throw ValidationError("forced extension norm: supported for 1 <= n <= 6");
  Representable R = representable(n, n, false);
  SharpSet S = sharp(R.set, 2, max_per_dim, node_budget, false);
  const CubicalSet& Q = *S.set;

  // The triangulated representable is the nerve of the corner poset: label
  // each of its vertices with the corner bitmask.
  std::vector<int> mask_of(S.tri_part.sset->simplex_count[0], -1);
  for (cube_id v = 0; v < R.set->cube_count[0]; ++v)
    mask_of[S.tri_part.cell_map[0][v].map[0][0]] =
        static_cast<int>(evaluate(R.cube_morphism[0][v], 0));
  for (int mv : mask_of)
    if (mv < 0) throw ValidationError("forced extension norm: unlabeled vertex");

  // Seed value 1 on the images of the original edges (the cover pairs of the
  // corner poset) and locate the bottom-to-top diagonal edge.
  int full = (1 << n) - 1;
  std::vector<mpq_class> val(Q.cube_count[1], 0);
  std::vector<char> known(Q.cube_count[1], 0);
  long long long_edge = -1;
  for (cube_id e = 0; e < Q.cube_count[1]; ++e) {
    if (Q.degenerate[1][e]) {
      known[e] = 1;  // normalized cochains vanish on degenerate cubes
      continue;
    }
    const auto& row = S.quad_part.content[1][e][0];  // endpoint vertex pair
    int mx = mask_of[row[0]], my = mask_of[row[1]];
    if ((mx & my) != mx) throw ValidationError("forced extension norm: non-monotone edge");
    if (mx == 0 && my == full) {
      if (long_edge >= 0) throw ValidationError("forced extension norm: long edge not unique");
      long_edge = e;
    }
    int diff = mx ^ my;
    if (diff != 0 && (diff & (diff - 1)) == 0) {
      val[e] = 1;
      known[e] = 1;
    }
  }
  if (long_edge < 0) throw ValidationError("forced extension norm: long edge missing");

  // One linear equation per nondegenerate 2-cube, from the degree-1 cocycle
  // condition -(c(d+1) - c(d-1)) + (c(d+2) - c(d-2)) = 0.
  struct Term {
    int coef;
    cube_id edge;
  };
  std::vector<std::vector<Term>> eqs;
  std::vector<std::vector<int>> eqs_of_edge(Q.cube_count[1]);
  for (cube_id q = 0; q < Q.cube_count[2]; ++q) {
    if (Q.degenerate[2][q]) continue;
    std::vector<Term> t{{+1, Q.face_of(2, 1, 0, q)},
                        {-1, Q.face_of(2, 1, 1, q)},
                        {-1, Q.face_of(2, 2, 0, q)},
                        {+1, Q.face_of(2, 2, 1, q)}};
    int idx = static_cast<int>(eqs.size());
    for (const Term& tt : t) eqs_of_edge[tt.edge].push_back(idx);
    eqs.push_back(std::move(t));
  }

  // Worklist propagation: an equation whose terms are all known is a
  // consistency check, one with a single unknown forces it.
  std::deque<int> work;
  std::vector<char> queued(eqs.size(), 1);
  for (int i = 0; i < static_cast<int>(eqs.size()); ++i) work.push_back(i);
  while (!work.empty()) {
    int ei = work.front();
    work.pop_front();
    queued[ei] = 0;
    int unknowns = 0, slot = -1;
    mpq_class sum = 0;
    for (size_t k = 0; k < eqs[ei].size(); ++k) {
      const Term& t = eqs[ei][k];
      if (known[t.edge])
        sum += t.coef * val[t.edge];
      else {
        ++unknowns;
        slot = static_cast<int>(k);
      }
    }
    if (unknowns == 0) {
      if (sum != 0)
        throw ValidationError("forced extension norm: inconsistent cocycle system");
      continue;
    }
    if (unknowns > 1) continue;
    const Term& t = eqs[ei][slot];
    val[t.edge] = -sum / t.coef;
    known[t.edge] = 1;
    for (int ej : eqs_of_edge[t.edge])
      if (!queued[ej]) {
        queued[ej] = 1;
        work.push_back(ej);
      }
  }
  if (!known[long_edge])
    throw ValidationError("forced extension norm: the long edge was not forced");
  return val[long_edge];
}

}  // namespace cubetop
