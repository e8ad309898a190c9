#include "cubetop/cubical_set.hpp"

#include <algorithm>
#include <sstream>

namespace cubetop {

void CubicalSet::allocate(int truncation_dim, const std::vector<int>& counts) {
  if (truncation_dim < 0) throw ValidationError("allocate: negative truncation");
  if (static_cast<int>(counts.size()) != truncation_dim + 1)
    throw ValidationError("allocate: counts size mismatch");
  dim = truncation_dim;
  cube_count = counts;
  face.assign(dim + 1, {});
  degen.assign(dim + 1, {});
  conn.assign(dim + 1, {});
  for (int n = 1; n <= dim; ++n) {
    face[n].assign(n, {std::vector<cube_id>(cube_count[n], -1),
                       std::vector<cube_id>(cube_count[n], -1)});
    degen[n].assign(n, std::vector<cube_id>(cube_count[n - 1], -1));
    conn[n].assign(n - 1, std::vector<cube_id>(cube_count[n - 1], -1));
  }
  degenerate.assign(dim + 1, {});
  nondeg.assign(dim + 1, {});
  ez_sigma.assign(dim + 1, {});
  ez_root.assign(dim + 1, {});
}

Cube act_step(const CubicalSet& C, const GeneratorStep& step, Cube c) {
  switch (step.kind) {
    case GeneratorStep::Kind::Face:
      return Cube{step.arity, C.face[step.arity + 1][step.index - 1][step.sign][c.id]};
    case GeneratorStep::Kind::Collapse:
      return Cube{step.arity, C.degen[step.arity][step.index - 1][c.id]};
    case GeneratorStep::Kind::Connection:
      return Cube{step.arity, C.conn[step.arity][step.index - 1][c.id]};
  }
  throw ValidationError("act_step: bad kind");
}

Cube act_word(const CubicalSet& C, const std::vector<GeneratorStep>& word, Cube c) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) c = act_step(C, *it, c);
  return c;
}

Cube act(const CubicalSet& C, const BoxMorphism& f, Cube c) {
  if (c.dim != f.cod()) throw ValidationError("act: cube dimension != codomain arity");
  return act_word(C, decompose(f), c);
}

void validate_tables(const CubicalSet& C) {
  auto bad = [](const std::string& msg) { return ValidationError("cubical set tables: " + msg); };
  if (C.dim < 0) throw bad("negative dimension");
  if (static_cast<int>(C.cube_count.size()) != C.dim + 1) throw bad("cube_count size");
  auto check_map = [&](const std::vector<cube_id>& t, int from, int to, const std::string& what) {
    if (static_cast<int>(t.size()) != C.cube_count[from])
      throw bad(what + ": table length != |C_" + std::to_string(from) + "|");
    for (cube_id v : t)
      if (v < 0 || v >= C.cube_count[to])
        throw bad(what + ": value out of range in C_" + std::to_string(to));
  };
  for (int n = 1; n <= C.dim; ++n) {
    if (static_cast<int>(C.face[n].size()) != n) throw bad("face arity at dim " + std::to_string(n));
    if (static_cast<int>(C.degen[n].size()) != n) throw bad("degen arity at dim " + std::to_string(n));
    if (static_cast<int>(C.conn[n].size()) != n - 1) throw bad("conn arity at dim " + std::to_string(n));
    for (int i = 1; i <= n; ++i) {
      check_map(C.face[n][i - 1][0], n, n - 1, "face(-," + std::to_string(i) + ")");
      check_map(C.face[n][i - 1][1], n, n - 1, "face(+," + std::to_string(i) + ")");
      check_map(C.degen[n][i - 1], n - 1, n, "degen(" + std::to_string(i) + ")");
    }
    for (int i = 1; i <= n - 1; ++i)
      check_map(C.conn[n][i - 1], n - 1, n, "conn(" + std::to_string(i) + ")");
  }
}

namespace {

// Every generator step whose domain and codomain arity both stay <= dim.
std::vector<GeneratorStep> all_steps(int dim) {
  std::vector<GeneratorStep> out;
  for (int a = 0; a < dim; ++a)
    for (int i = 1; i <= a + 1; ++i)
      for (int s = 0; s <= 1; ++s) out.push_back({GeneratorStep::Kind::Face, a, i, s});
  for (int a = 1; a <= dim; ++a)
    for (int i = 1; i <= a; ++i) out.push_back({GeneratorStep::Kind::Collapse, a, i, 0});
  for (int a = 2; a <= dim; ++a)
    for (int i = 1; i <= a - 1; ++i) out.push_back({GeneratorStep::Kind::Connection, a, i, 0});
  return out;
}

int step_cod(const GeneratorStep& s) {
  return s.kind == GeneratorStep::Kind::Face ? s.arity + 1 : s.arity - 1;
}

}  // namespace

void validate(const CubicalSet& C) {
  validate_tables(C);
  // Check act(u) o act(v) = act(v o u) for every composable generator pair
  // u: box^a -> box^b, v: box^b -> box^c within the truncation. All defining
  // relations of the site are coincidences of such pairs, so this pins the
  // action of every morphism independently of its factorization.
  std::vector<GeneratorStep> steps = all_steps(C.dim);
  for (const GeneratorStep& u : steps)
    for (const GeneratorStep& v : steps) {
      if (step_cod(u) != v.arity) continue;
      BoxMorphism vu = compose(step_morphism(v), step_morphism(u));
      std::vector<GeneratorStep> word = decompose(vu);
      int cdim = step_cod(v);
      for (cube_id z = 0; z < C.cube_count[cdim]; ++z) {
        Cube lhs = act_step(C, u, act_step(C, v, Cube{cdim, z}));
        Cube rhs = act_word(C, word, Cube{cdim, z});
        if (lhs != rhs) {
          std::ostringstream os;
          os << "cubical identity violated: act(" << to_text(step_morphism(u)) << ") o act("
             << to_text(step_morphism(v)) << ") != act(" << to_text(vu) << ") on cube " << z
             << " of dimension " << cdim;
          throw ValidationError(os.str());
        }
      }
    }
}

void finalize(CubicalSet& C, bool run_validate) {
  validate_tables(C);
  C.degenerate.assign(C.dim + 1, {});
  C.nondeg.assign(C.dim + 1, {});
  C.ez_sigma.assign(C.dim + 1, {});
  C.ez_root.assign(C.dim + 1, {});
  for (int n = 0; n <= C.dim; ++n) {
    int cnt = C.cube_count[n];
    C.degenerate[n].assign(cnt, 0);
    C.ez_sigma[n].resize(cnt);
    C.ez_root[n].resize(cnt);
    // First generator preimage found for each degenerate cube; the (sigma,
    // root) factorization is independent of this choice (check_ez_unique).
    struct Pre {
      bool is_conn;
      int i;
      cube_id p;
    };
    std::vector<Pre> pre(cnt);
    if (n >= 1) {
      for (int i = 1; i <= n; ++i)
        for (cube_id p = 0; p < C.cube_count[n - 1]; ++p) {
          cube_id c = C.degen[n][i - 1][p];
          if (!C.degenerate[n][c]) {
            C.degenerate[n][c] = 1;
            pre[c] = {false, i, p};
          }
        }
      for (int i = 1; i <= n - 1; ++i)
        for (cube_id p = 0; p < C.cube_count[n - 1]; ++p) {
          cube_id c = C.conn[n][i - 1][p];
          if (!C.degenerate[n][c]) {
            C.degenerate[n][c] = 1;
            pre[c] = {true, i, p};
          }
        }
    }
    for (cube_id c = 0; c < cnt; ++c) {
      if (!C.degenerate[n][c]) {
        C.nondeg[n].push_back(c);
        C.ez_sigma[n][c] = identity(n);
        C.ez_root[n][c] = Cube{n, c};
      } else {
        const Pre& pr = pre[c];
        BoxMorphism g = pr.is_conn ? connection_morphism(n, pr.i) : collapse_morphism(n, pr.i);
        C.ez_sigma[n][c] = compose(C.ez_sigma[n - 1][pr.p], g);
        C.ez_root[n][c] = C.ez_root[n - 1][pr.p];
      }
    }
  }
  if (run_validate) validate(C);
}

void check_ez_unique(const CubicalSet& C) {
  for (int n = 1; n <= C.dim; ++n) {
    auto check = [&](const BoxMorphism& g, cube_id p, cube_id c) {
      BoxMorphism sigma = compose(C.ez_sigma[n - 1][p], g);
      if (sigma != C.ez_sigma[n][c] || C.ez_root[n - 1][p] != C.ez_root[n][c])
        throw ValidationError("EZ factorization not unique at dimension " + std::to_string(n) +
                              ", cube " + std::to_string(c));
    };
    for (int i = 1; i <= n; ++i)
      for (cube_id p = 0; p < C.cube_count[n - 1]; ++p)
        check(collapse_morphism(n, i), p, C.degen[n][i - 1][p]);
    for (int i = 1; i <= n - 1; ++i)
      for (cube_id p = 0; p < C.cube_count[n - 1]; ++p)
        check(connection_morphism(n, i), p, C.conn[n][i - 1][p]);
  }
}

void validate_function(const CubicalFunction& f) {
  if (!f.src || !f.dst) throw ValidationError("cubical function: null endpoints");
  const CubicalSet& A = *f.src;
  const CubicalSet& B = *f.dst;
  if (A.dim > B.dim) throw ValidationError("cubical function: source truncation exceeds target");
  if (static_cast<int>(f.map.size()) != A.dim + 1)
    throw ValidationError("cubical function: map size != source dim + 1");
  for (int n = 0; n <= A.dim; ++n) {
    if (static_cast<int>(f.map[n].size()) != A.cube_count[n])
      throw ValidationError("cubical function: map length at dim " + std::to_string(n));
    for (cube_id v : f.map[n])
      if (v < 0 || v >= B.cube_count[n])
        throw ValidationError("cubical function: value out of range at dim " + std::to_string(n));
  }
  auto fail = [](int n, const char* what, cube_id c) {
    return ValidationError(std::string("cubical function does not commute with ") + what +
                           " at dim " + std::to_string(n) + ", cube " + std::to_string(c));
  };
  for (int n = 1; n <= A.dim; ++n) {
    for (cube_id c = 0; c < A.cube_count[n]; ++c)
      for (int i = 1; i <= n; ++i)
        for (int s = 0; s <= 1; ++s)
          if (f.map[n - 1][A.face[n][i - 1][s][c]] != B.face[n][i - 1][s][f.map[n][c]])
            throw fail(n, "a face", c);
    for (cube_id c = 0; c < A.cube_count[n - 1]; ++c) {
      for (int i = 1; i <= n; ++i)
        if (f.map[n][A.degen[n][i - 1][c]] != B.degen[n][i - 1][f.map[n - 1][c]])
          throw fail(n, "a degeneracy", c);
      for (int i = 1; i <= n - 1; ++i)
        if (f.map[n][A.conn[n][i - 1][c]] != B.conn[n][i - 1][f.map[n - 1][c]])
          throw fail(n, "a connection", c);
    }
  }
}

CubicalFunction identity_function(const CSetPtr& C) {
  CubicalFunction f;
  f.src = f.dst = C;
  f.map.resize(C->dim + 1);
  for (int n = 0; n <= C->dim; ++n) {
    f.map[n].resize(C->cube_count[n]);
    for (cube_id c = 0; c < C->cube_count[n]; ++c) f.map[n][c] = c;
  }
  return f;
}

CubicalFunction compose_functions(const CubicalFunction& g, const CubicalFunction& f) {
  if (f.dst.get() != g.src.get())
    throw ValidationError("compose_functions: middle objects differ");
  CubicalFunction r;
  r.src = f.src;
  r.dst = g.dst;
  r.map.resize(f.src->dim + 1);
  for (int n = 0; n <= f.src->dim; ++n) {
    r.map[n].resize(f.map[n].size());
    for (std::size_t c = 0; c < f.map[n].size(); ++c) r.map[n][c] = g.map[n][f.map[n][c]];
  }
  return r;
}

bool functions_equal(const CubicalFunction& f, const CubicalFunction& g) {
  return f.src.get() == g.src.get() && f.dst.get() == g.dst.get() && f.map == g.map;
}

long long total_cubes(const CubicalSet& C) {
  long long t = 0;
  for (int n = 0; n <= C.dim; ++n) t += C.cube_count[n];
  return t;
}

std::vector<int> nondeg_counts(const CubicalSet& C) {
  std::vector<int> out(C.dim + 1);
  for (int n = 0; n <= C.dim; ++n) out[n] = static_cast<int>(C.nondeg[n].size());
  return out;
}

}  // namespace cubetop
