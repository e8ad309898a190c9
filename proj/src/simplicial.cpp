#include "cubetop/simplicial.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cubetop/union_find.hpp"

namespace cubetop {

void SimplicialSet::allocate(int truncation_dim, const std::vector<int>& counts) {
  if (truncation_dim < 0) throw ValidationError("simplicial: negative truncation");
  if (static_cast<int>(counts.size()) != truncation_dim + 1)
    throw ValidationError("simplicial: count vector size mismatch");
  dim = truncation_dim;
  simplex_count = counts;
  face.assign(dim + 1, {});
  degen.assign(dim + 1, {});
  for (int n = 1; n <= dim; ++n) {
    face[n].assign(n + 1, std::vector<simplex_id>(counts[n], -1));
    degen[n].assign(n, std::vector<simplex_id>(counts[n - 1], -1));
  }
}

void validate_simplicial_tables(const SimplicialSet& S) {
  if (static_cast<int>(S.simplex_count.size()) != S.dim + 1)
    throw ValidationError("simplicial: count vector size mismatch");
  for (int n = 1; n <= S.dim; ++n) {
    if (static_cast<int>(S.face[n].size()) != n + 1 || static_cast<int>(S.degen[n].size()) != n)
      throw ValidationError("simplicial: table arity mismatch at dimension " + std::to_string(n));
    for (int i = 0; i <= n; ++i) {
      if (static_cast<int>(S.face[n][i].size()) != S.simplex_count[n])
        throw ValidationError("simplicial: face table size");
      for (simplex_id x : S.face[n][i])
        if (x < 0 || x >= S.simplex_count[n - 1]) throw ValidationError("simplicial: face range");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(S.degen[n][i].size()) != S.simplex_count[n - 1])
        throw ValidationError("simplicial: degeneracy table size");
      for (simplex_id x : S.degen[n][i])
        if (x < 0 || x >= S.simplex_count[n])
          throw ValidationError("simplicial: degeneracy range");
    }
  }
}

void validate_simplicial(const SimplicialSet& S) {
  validate_simplicial_tables(S);
  auto fail = [](const char* which, int n, simplex_id x) {
    throw ValidationError(std::string("simplicial identity ") + which + " fails at dimension " +
                          std::to_string(n) + ", simplex " + std::to_string(x));
  };
  // d_i d_j = d_{j-1} d_i for i < j.
  for (int n = 2; n <= S.dim; ++n)
    for (simplex_id x = 0; x < S.simplex_count[n]; ++x)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (S.face[n - 1][i][S.face[n][j][x]] != S.face[n - 1][j - 1][S.face[n][i][x]])
            fail("d_i d_j", n, x);
  // d_i s_j on S_{n-1}, with s_j landing in S_n.
  for (int n = 1; n <= S.dim; ++n)
    for (simplex_id y = 0; y < S.simplex_count[n - 1]; ++y)
      for (int j = 0; j < n; ++j) {
        simplex_id sy = S.degen[n][j][y];
        for (int i = 0; i <= n; ++i) {
          simplex_id got = S.face[n][i][sy];
          if (i == j || i == j + 1) {
            if (got != y) fail("d_i s_i = id", n, y);
          } else if (i < j) {
            if (got != S.degen[n - 1][j - 1][S.face[n - 1][i][y]]) fail("d_i s_j (i<j)", n, y);
          } else {
            if (got != S.degen[n - 1][j][S.face[n - 1][i - 1][y]]) fail("d_i s_j (i>j+1)", n, y);
          }
        }
      }
  // s_i s_j = s_{j+1} s_i for i <= j.
  for (int n = 2; n <= S.dim; ++n)
    for (simplex_id y = 0; y < S.simplex_count[n - 2]; ++y)
      for (int j = 0; j <= n - 2; ++j)
        for (int i = 0; i <= j; ++i)
          if (S.degen[n][i][S.degen[n - 1][j][y]] != S.degen[n][j + 1][S.degen[n - 1][i][y]])
            fail("s_i s_j", n, y);
}

void finalize_simplicial(SimplicialSet& S, bool run_validate) {
  S.degenerate.assign(S.dim + 1, {});
  S.nondeg.assign(S.dim + 1, {});
  for (int n = 0; n <= S.dim; ++n) {
    S.degenerate[n].assign(S.simplex_count[n], 0);
    for (simplex_id x = 0; x < S.simplex_count[n]; ++x) {
      for (int i = 0; i < n && !S.degenerate[n][x]; ++i)
        if (S.degen[n][i][S.face[n][i][x]] == x) S.degenerate[n][x] = 1;
      if (!S.degenerate[n][x]) S.nondeg[n].push_back(x);
    }
  }
  if (run_validate) validate_simplicial(S);
}

void validate_simplicial_function(const SimplicialFunction& f) {
  if (!f.src || !f.dst) throw ValidationError("simplicial function: null endpoint");
  const SimplicialSet& A = *f.src;
  const SimplicialSet& B = *f.dst;
  if (A.dim > B.dim) throw ValidationError("simplicial function: source truncation exceeds dst");
  if (static_cast<int>(f.map.size()) != A.dim + 1)
    throw ValidationError("simplicial function: table count mismatch");
  for (int n = 0; n <= A.dim; ++n) {
    if (static_cast<int>(f.map[n].size()) != A.simplex_count[n])
      throw ValidationError("simplicial function: table size at dimension " + std::to_string(n));
    for (simplex_id y : f.map[n])
      if (y < 0 || y >= B.simplex_count[n])
        throw ValidationError("simplicial function: value out of range");
  }
  for (int n = 1; n <= A.dim; ++n)
    for (simplex_id x = 0; x < A.simplex_count[n]; ++x)
      for (int i = 0; i <= n; ++i)
        if (f.map[n - 1][A.face[n][i][x]] != B.face[n][i][f.map[n][x]])
          throw ValidationError("simplicial function: does not commute with face " +
                                std::to_string(i) + " at dimension " + std::to_string(n));
  for (int n = 1; n <= A.dim; ++n)
    for (simplex_id y = 0; y < A.simplex_count[n - 1]; ++y)
      for (int i = 0; i < n; ++i)
        if (f.map[n][A.degen[n][i][y]] != B.degen[n][i][f.map[n - 1][y]])
          throw ValidationError("simplicial function: does not commute with degeneracy " +
                                std::to_string(i) + " at dimension " + std::to_string(n));
}

SimplicialFunction identity_simplicial(const SSetPtr& S) {
  SimplicialFunction f;
  f.src = S;
  f.dst = S;
  f.map.resize(S->dim + 1);
  for (int n = 0; n <= S->dim; ++n) {
    f.map[n].resize(S->simplex_count[n]);
    for (simplex_id x = 0; x < S->simplex_count[n]; ++x) f.map[n][x] = x;
  }
  return f;
}

SimplicialFunction compose_simplicial(const SimplicialFunction& g, const SimplicialFunction& f) {
  if (f.dst.get() != g.src.get())
    throw ValidationError("compose_simplicial: middle objects differ");
  SimplicialFunction h;
  h.src = f.src;
  h.dst = g.dst;
  h.map.resize(f.map.size());
  for (size_t n = 0; n < f.map.size(); ++n) {
    h.map[n].resize(f.map[n].size());
    for (size_t x = 0; x < f.map[n].size(); ++x) h.map[n][x] = g.map[n][f.map[n][x]];
  }
  return h;
}

bool simplicial_equal(const SimplicialFunction& f, const SimplicialFunction& g) {
  return f.src.get() == g.src.get() && f.dst.get() == g.dst.get() && f.map == g.map;
}

// ---------------------------------------------------------------------------
// Poset nerve.

namespace {

// All weakly monotone chains of length n+1, in lexicographic order.
std::vector<std::vector<int>> monotone_chains(const FinitePoset& P, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n + 1);
  auto rec = [&](auto&& self, int at) -> void {
    if (at == n + 1) {
      out.push_back(cur);
      return;
    }
    for (int p = 0; p < P.size; ++p) {
      if (at > 0 && !P.leq[cur[at - 1]][p]) continue;
      cur[at] = p;
      self(self, at + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

simplex_id PosetNerve::id_of(const std::vector<int>& c) const {
  int n = static_cast<int>(c.size()) - 1;
  if (n < 0 || n >= static_cast<int>(chain.size()))
    throw ValidationError("nerve_poset: chain length out of range");
  const auto& list = chain[n];
  auto it = std::lower_bound(list.begin(), list.end(), c);
  if (it == list.end() || *it != c) throw ValidationError("nerve_poset: not a monotone chain");
  return static_cast<simplex_id>(it - list.begin());
}

PosetNerve nerve_poset(const FinitePoset& P, int D, bool run_validate) {
  validate_poset(P);
  if (P.size == 0) throw ValidationError("nerve_poset: empty poset");
  PosetNerve N;
  N.poset = P;
  N.chain.resize(D + 1);
  std::vector<int> counts(D + 1);
  for (int n = 0; n <= D; ++n) {
    N.chain[n] = monotone_chains(P, n);
    counts[n] = static_cast<int>(N.chain[n].size());
  }
  auto S = std::make_shared<SimplicialSet>();
  S->allocate(D, counts);
  for (int n = 1; n <= D; ++n) {
    for (simplex_id x = 0; x < counts[n]; ++x) {
      const std::vector<int>& c = N.chain[n][x];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> dropped;
        dropped.reserve(n);
        for (int j = 0; j <= n; ++j)
          if (j != i) dropped.push_back(c[j]);
        S->face[n][i][x] = N.id_of(dropped);
      }
    }
    for (simplex_id y = 0; y < counts[n - 1]; ++y) {
      const std::vector<int>& c = N.chain[n - 1][y];
      for (int i = 0; i < n; ++i) {
        std::vector<int> doubled;
        doubled.reserve(n + 1);
        for (int j = 0; j < n; ++j) {
          doubled.push_back(c[j]);
          if (j == i) doubled.push_back(c[j]);
        }
        S->degen[n][i][y] = N.id_of(doubled);
      }
    }
  }
  finalize_simplicial(*S, run_validate);
  N.set = S;
  return N;
}

// ---------------------------------------------------------------------------
// Colimits.

SimplicialColimit simplicial_colimit(const SimplicialDiagram& D, bool run_validate) {
  if (D.objects.empty()) throw ValidationError("simplicial_colimit: empty diagram");
  int dim = D.objects[0]->dim;
  for (const SSetPtr& X : D.objects)
    if (!X || X->dim != dim)
      throw ValidationError("simplicial_colimit: objects must share truncation");
  int k = static_cast<int>(D.objects.size());

  std::vector<std::vector<int>> off(k, std::vector<int>(dim + 1, 0));
  std::vector<int> total(dim + 1, 0);
  for (int j = 0; j < k; ++j)
    for (int n = 0; n <= dim; ++n) {
      off[j][n] = total[n];
      total[n] += D.objects[j]->simplex_count[n];
    }

  std::vector<UnionFind> uf;
  uf.reserve(dim + 1);
  for (int n = 0; n <= dim; ++n) uf.emplace_back(total[n]);

  for (const SimplicialPair& r : D.relations) {
    if (r.left_object < 0 || r.left_object >= k || r.right_object < 0 || r.right_object >= k)
      throw ValidationError("simplicial_colimit: relation object index out of range");
    if (r.left.src.get() != r.right.src.get())
      throw ValidationError("simplicial_colimit: relation legs have different sources");
    if (r.left.dst.get() != D.objects[r.left_object].get() ||
        r.right.dst.get() != D.objects[r.right_object].get())
      throw ValidationError("simplicial_colimit: relation leg target mismatch");
    for (int n = 0; n <= r.left.src->dim; ++n)
      for (simplex_id x = 0; x < r.left.src->simplex_count[n]; ++x)
        uf[n].unite(off[r.left_object][n] + r.left.map[n][x],
                    off[r.right_object][n] + r.right.map[n][x]);
  }

  std::vector<std::vector<simplex_id>> cls(dim + 1);
  std::vector<int> counts(dim + 1, 0);
  for (int n = 0; n <= dim; ++n) {
    cls[n].assign(total[n], -1);
    for (int g = 0; g < total[n]; ++g) {
      int r = uf[n].find(g);
      if (cls[n][r] < 0) cls[n][r] = counts[n]++;
      cls[n][g] = cls[n][r];
    }
  }

  auto S = std::make_shared<SimplicialSet>();
  S->allocate(dim, counts);
  auto put = [](std::vector<simplex_id>& table, simplex_id at, simplex_id value) {
    if (table[at] >= 0 && table[at] != value)
      throw ValidationError("simplicial_colimit: actions do not descend to the quotient");
    table[at] = value;
  };
  for (int j = 0; j < k; ++j) {
    const SimplicialSet& X = *D.objects[j];
    for (int n = 1; n <= dim; ++n) {
      for (simplex_id x = 0; x < X.simplex_count[n]; ++x)
        for (int i = 0; i <= n; ++i)
          put(S->face[n][i], cls[n][off[j][n] + x], cls[n - 1][off[j][n - 1] + X.face[n][i][x]]);
      for (simplex_id y = 0; y < X.simplex_count[n - 1]; ++y)
        for (int i = 0; i < n; ++i)
          put(S->degen[n][i], cls[n - 1][off[j][n - 1] + y],
              cls[n][off[j][n] + X.degen[n][i][y]]);
    }
  }
  finalize_simplicial(*S, run_validate);

  SimplicialColimit out;
  out.set = S;
  out.legs.resize(k);
  for (int j = 0; j < k; ++j) {
    out.legs[j].src = D.objects[j];
    out.legs[j].dst = S;
    out.legs[j].map.resize(dim + 1);
    for (int n = 0; n <= dim; ++n) {
      out.legs[j].map[n].resize(D.objects[j]->simplex_count[n]);
      for (simplex_id x = 0; x < D.objects[j]->simplex_count[n]; ++x)
        out.legs[j].map[n][x] = cls[n][off[j][n] + x];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Map search; the design mirrors the cubical enumerate_maps.

namespace {

struct SimplicialReverseFaceIndex {
  // [n][i], i = 0..n.
  std::vector<std::vector<std::vector<int>>> start;
  std::vector<std::vector<std::vector<simplex_id>>> data;

  explicit SimplicialReverseFaceIndex(const SimplicialSet& B) {
    start.resize(B.dim + 1);
    data.resize(B.dim + 1);
    for (int n = 1; n <= B.dim; ++n) {
      start[n].assign(n + 1, {});
      data[n].assign(n + 1, {});
      int below = B.count(n - 1);
      int here = B.count(n);
      for (int i = 0; i <= n; ++i) {
        const std::vector<simplex_id>& fc = B.face[n][i];
        std::vector<int>& st = start[n][i];
        std::vector<simplex_id>& dt = data[n][i];
        st.assign(below + 1, 0);
        for (int x = 0; x < here; ++x) st[fc[x] + 1]++;
        for (int v = 0; v < below; ++v) st[v + 1] += st[v];
        dt.resize(here);
        std::vector<int> cursor(st.begin(), st.end() - 1);
        for (int x = 0; x < here; ++x) dt[cursor[fc[x]]++] = x;
      }
    }
  }
};

struct SimplicialSearcher {
  const SimplicialSet& A;
  const SimplicialSet& B;
  const SSetPtr& src_ptr;
  const SSetPtr& dst_ptr;
  const SimplicialSearchOptions& opt;
  SimplicialReverseFaceIndex rev;
  SimplicialSearchResult out;

  std::vector<std::vector<simplex_id>> val;
  std::vector<Simplex> order;
  std::vector<Simplex> trail;
  std::vector<Simplex> queue;
  bool stop = false;

  SimplicialSearcher(const SSetPtr& a, const SSetPtr& b, const SimplicialSearchOptions& o)
      : A(*a), B(*b), src_ptr(a), dst_ptr(b), opt(o), rev(*b) {
    val.resize(A.dim + 1);
    for (int n = 0; n <= A.dim; ++n) val[n].assign(A.count(n), -1);
    build_order();
  }

  void mark_reached(Simplex c, std::vector<std::vector<char>>& reached) {
    std::vector<Simplex> stack{c};
    while (!stack.empty()) {
      Simplex x = stack.back();
      stack.pop_back();
      char& r = reached[x.dim][x.id];
      if (r) continue;
      r = 1;
      for (int i = 0; i <= x.dim && x.dim > 0; ++i)
        stack.push_back(Simplex{x.dim - 1, A.face[x.dim][i][x.id]});
    }
  }

  void build_order() {
    std::vector<std::vector<char>> reached(A.dim + 1);
    for (int n = 0; n <= A.dim; ++n) reached[n].assign(A.count(n), 0);
    for (int n = A.dim; n >= 0; --n) {
      std::vector<simplex_id> rest(A.nondeg[n]);
      if (rest.size() > 4096) {
        for (simplex_id c : rest) order.push_back(Simplex{n, c});
        continue;
      }
      while (!rest.empty()) {
        std::size_t pick = 0;
        int best = -1;
        for (std::size_t j = 0; j < rest.size(); ++j) {
          int score = 0;
          for (int i = 0; i <= n && n > 0; ++i) score += reached[n - 1][A.face[n][i][rest[j]]];
          if (score > best) {
            best = score;
            pick = j;
          }
        }
        Simplex c{n, rest[pick]};
        rest.erase(rest.begin() + pick);
        order.push_back(c);
        mark_reached(c, reached);
      }
    }
  }

  bool set(Simplex y, simplex_id w) {
    simplex_id& slot = val[y.dim][y.id];
    if (slot == w) return true;
    if (slot != -1) return false;
    slot = w;
    trail.push_back(y);
    queue.push_back(y);
    return true;
  }

  bool propagate() {
    while (!queue.empty()) {
      Simplex x = queue.back();
      queue.pop_back();
      simplex_id w = val[x.dim][x.id];
      int n = x.dim;
      for (int i = 0; i <= n && n > 0; ++i)
        if (!set(Simplex{n - 1, A.face[n][i][x.id]}, B.face[n][i][w])) return false;
      if (n + 1 <= A.dim)
        for (int i = 0; i <= n; ++i)
          if (!set(Simplex{n + 1, A.degen[n + 1][i][x.id]}, B.degen[n + 1][i][w])) return false;
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail.size() > mark) {
      Simplex y = trail.back();
      trail.pop_back();
      val[y.dim][y.id] = -1;
    }
    queue.clear();
  }

  std::pair<const simplex_id*, const simplex_id*> candidates(Simplex c,
                                                             std::vector<simplex_id>& scratch) {
    int n = c.dim;
    int best = -1, best_size = -1;
    simplex_id best_value = -1;
    for (int i = 0; i <= n && n > 0; ++i) {
      simplex_id fv = val[n - 1][A.face[n][i][c.id]];
      if (fv < 0) continue;
      int size = rev.start[n][i][fv + 1] - rev.start[n][i][fv];
      if (best < 0 || size < best_size) {
        best = i;
        best_size = size;
        best_value = fv;
      }
    }
    if (best >= 0) {
      const std::vector<simplex_id>& dt = rev.data[n][best];
      const std::vector<int>& st = rev.start[n][best];
      return {dt.data() + st[best_value], dt.data() + st[best_value + 1]};
    }
    scratch.resize(B.count(n));
    for (int w = 0; w < B.count(n); ++w) scratch[w] = w;
    return {scratch.data(), scratch.data() + scratch.size()};
  }

  void emit() {
    out.count++;
    if (opt.store) {
      SimplicialFunction f;
      f.src = src_ptr;
      f.dst = dst_ptr;
      f.map = val;
      out.maps.push_back(std::move(f));
    }
    if (opt.on_result && !opt.on_result(val)) {
      stop = true;
      out.complete = false;
    }
    if (out.count >= opt.max_results) {
      stop = true;
      out.complete = false;
    }
  }

  // One backtracking choice point. Candidate pointers stay valid across
  // frame moves: they address the reverse index or the frame's own scratch
  // buffer, and vector moves do not relocate heap storage.
  struct Frame {
    std::size_t var = 0;
    const simplex_id* p = nullptr;
    const simplex_id* hi = nullptr;
    std::size_t cur_mark = 0;
    bool active = false;  // a candidate of this frame is currently applied
    std::vector<simplex_id> scratch;
  };

  // Opens the next unassigned variable at or after var; emits when none is
  // left. Returns false on a leaf.
  bool open_frame(std::vector<Frame>& stack, std::size_t var) {
    while (var < order.size() && val[order[var].dim][order[var].id] != -1) ++var;
    if (var == order.size()) {
      emit();
      return false;
    }
    Frame f;
    f.var = var;
    auto [lo, hi] = candidates(order[var], f.scratch);
    f.p = lo;
    f.hi = hi;
    stack.push_back(std::move(f));
    return true;
  }

  // Depth-first search with an explicit stack; the depth equals the number
  // of variables, which can be far beyond the call-stack limit.
  void search() {
    std::vector<Frame> stack;
    open_frame(stack, 0);
    while (!stack.empty() && !stop) {
      Frame& f = stack.back();
      if (f.active) {
        undo_to(f.cur_mark);
        f.active = false;
      }
      if (f.p == f.hi) {
        stack.pop_back();
        continue;
      }
      simplex_id w = *f.p++;
      if (out.nodes >= opt.node_budget) {
        stop = true;
        out.complete = false;
        out.budget_exhausted = true;
        return;
      }
      out.nodes++;
      f.cur_mark = trail.size();
      f.active = true;
      std::size_t next = f.var + 1;
      if (set(order[f.var], w) && propagate()) open_frame(stack, next);
    }
  }
};

}  // namespace

SimplicialSearchResult enumerate_simplicial_maps(const SSetPtr& src, const SSetPtr& dst,
                                                 const SimplexPins& pins,
                                                 const SimplicialSearchOptions& opt) {
  if (!src || !dst) throw std::invalid_argument("enumerate_simplicial_maps: null simplicial set");
  if (src->dim > dst->dim)
    throw ValidationError(
        "enumerate_simplicial_maps: source truncation exceeds destination truncation");
  SimplicialSearcher s(src, dst, opt);
  bool ok = true;
  for (const auto& [c, w] : pins) {
    if (c.dim < 0 || c.dim > src->dim || c.id < 0 || c.id >= src->count(c.dim))
      throw std::out_of_range("enumerate_simplicial_maps: pinned simplex out of range");
    if (w < 0 || w >= dst->count(c.dim))
      throw std::out_of_range("enumerate_simplicial_maps: pinned value out of range");
    if (!s.set(c, w)) {
      ok = false;
      break;
    }
  }
  if (ok) ok = s.propagate();
  if (ok) s.search();
  return std::move(s.out);
}

}  // namespace cubetop
