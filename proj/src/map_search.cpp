#include "cubetop/map_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubetop {

namespace {

// Reverse face index of the destination: for each dimension n >= 1 and face
// slot (i, s), the n-cubes grouped by the id of that face. Stored CSR-style:
// start[v]..start[v+1] indexes into data, cubes in ascending id order.
struct ReverseFaceIndex {
  // [n][slot] with slot = (i - 1) * 2 + s, i = 1..n.
  std::vector<std::vector<std::vector<int>>> start;
  std::vector<std::vector<std::vector<cube_id>>> data;

  explicit ReverseFaceIndex(const CubicalSet& B) {
    start.resize(B.dim + 1);
    data.resize(B.dim + 1);
    for (int n = 1; n <= B.dim; ++n) {
      int slots = 2 * n;
      start[n].assign(slots, {});
      data[n].assign(slots, {});
      int below = B.count(n - 1);
      int here = B.count(n);
      for (int i = 1; i <= n; ++i) {
        for (int s = 0; s < 2; ++s) {
          int slot = (i - 1) * 2 + s;
          const std::vector<cube_id>& fc = B.face[n][i - 1][s];
          std::vector<int>& st = start[n][slot];
          std::vector<cube_id>& dt = data[n][slot];
          st.assign(below + 1, 0);
          for (int x = 0; x < here; ++x) st[fc[x] + 1]++;
          for (int v = 0; v < below; ++v) st[v + 1] += st[v];
          dt.resize(here);
          std::vector<int> cursor(st.begin(), st.end() - 1);
          for (int x = 0; x < here; ++x) dt[cursor[fc[x]]++] = x;
        }
      }
    }
  }
};

struct Searcher {
  const CubicalSet& A;
  const CubicalSet& B;
  const CSetPtr& src_ptr;
  const CSetPtr& dst_ptr;
  const MapSearchOptions& opt;
  ReverseFaceIndex rev;
  MapSearchResult out;

  // Current partial assignment, -1 where unset.
  std::vector<std::vector<cube_id>> val;
  // Nondegenerate cubes of A, descending dimension then ascending id.
  std::vector<Cube> order;
  // Undo trail of cubes set since the enclosing choice point.
  std::vector<Cube> trail;
  std::vector<Cube> queue;
  bool stop = false;

  Searcher(const CSetPtr& a, const CSetPtr& b, const MapSearchOptions& o)
      : A(*a), B(*b), src_ptr(a), dst_ptr(b), opt(o), rev(*b) {
    val.resize(A.dim + 1);
    for (int n = 0; n <= A.dim; ++n) val[n].assign(A.count(n), -1);
    build_order();
  }

  // Marks the iterated face closure of a cube; cubes in the closure are
  // forced once the cube is assigned, so later variables touching them start
  // out constrained.
  void mark_reached(Cube c, std::vector<std::vector<char>>& reached) {
    std::vector<Cube> stack{c};
    while (!stack.empty()) {
      Cube x = stack.back();
      stack.pop_back();
      char& r = reached[x.dim][x.id];
      if (r) continue;
      r = 1;
      for (int i = 1; i <= x.dim; ++i)
        for (int s = 0; s < 2; ++s) stack.push_back(Cube{x.dim - 1, A.face[x.dim][i - 1][s][x.id]});
    }
  }

  // Variables are the nondegenerate cubes, top dimension first (high cells
  // force their whole span). Within a dimension, pick greedily the cube with
  // the most faces already reachable from earlier variables, so its candidate
  // list is filtered by the reverse index instead of spanning all of dst.
  void build_order() {
    std::vector<std::vector<char>> reached(A.dim + 1);
    for (int n = 0; n <= A.dim; ++n) reached[n].assign(A.count(n), 0);
    for (int n = A.dim; n >= 0; --n) {
      std::vector<cube_id> rest(A.nondeg[n]);
      if (rest.size() > 4096) {
        for (cube_id c : rest) order.push_back(Cube{n, c});
        continue;
      }
      while (!rest.empty()) {
        std::size_t pick = 0;
        int best = -1;
        for (std::size_t j = 0; j < rest.size(); ++j) {
          int score = 0;
          for (int i = 1; i <= n; ++i)
            for (int s = 0; s < 2; ++s) score += reached[n - 1][A.face[n][i - 1][s][rest[j]]];
          if (score > best) {
            best = score;
            pick = j;
          }
        }
        Cube c{n, rest[pick]};
        rest.erase(rest.begin() + pick);
        order.push_back(c);
        mark_reached(c, reached);
      }
    }
  }

  // Set val at cube y, or detect a clash with an earlier forced value.
  bool set(Cube y, cube_id w) {
    cube_id& slot = val[y.dim][y.id];
    if (slot == w) return true;
    if (slot != -1) return false;
    slot = w;
    trail.push_back(y);
    queue.push_back(y);
    return true;
  }

  // Force everything reachable from the queued cubes through the generator
  // actions, checking every action edge out of each forced cube exactly once.
  bool propagate() {
    while (!queue.empty()) {
      Cube x = queue.back();
      queue.pop_back();
      cube_id w = val[x.dim][x.id];
      int n = x.dim;
      for (int i = 1; i <= n; ++i)
        for (int s = 0; s < 2; ++s)
          if (!set(Cube{n - 1, A.face[n][i - 1][s][x.id]}, B.face[n][i - 1][s][w])) return false;
      if (n + 1 <= A.dim) {
        for (int i = 1; i <= n + 1; ++i)
          if (!set(Cube{n + 1, A.degen[n + 1][i - 1][x.id]}, B.degen[n + 1][i - 1][w]))
            return false;
        for (int i = 1; i <= n; ++i)
          if (!set(Cube{n + 1, A.conn[n + 1][i - 1][x.id]}, B.conn[n + 1][i - 1][w])) return false;
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail.size() > mark) {
      Cube y = trail.back();
      trail.pop_back();
      val[y.dim][y.id] = -1;
    }
    queue.clear();
  }

  // Candidate images for an unassigned nondegenerate cube: the reverse-index
  // list of the already-forced face with the fewest matches, or every
  // dst cube of that dimension when no face is forced yet.
  std::pair<const cube_id*, const cube_id*> candidates(Cube c, std::vector<cube_id>& scratch) {
    int n = c.dim;
    int best = -1, best_size = -1;
    cube_id best_value = -1;
    for (int i = 1; i <= n; ++i) {
      for (int s = 0; s < 2; ++s) {
        cube_id fv = val[n - 1][A.face[n][i - 1][s][c.id]];
        if (fv < 0) continue;
        int slot = (i - 1) * 2 + s;
        int size = rev.start[n][slot][fv + 1] - rev.start[n][slot][fv];
        if (best < 0 || size < best_size) {
          best = slot;
          best_size = size;
          best_value = fv;
        }
      }
    }
    if (best >= 0) {
      const std::vector<cube_id>& dt = rev.data[n][best];
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
      CubicalFunction f;
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
    const cube_id* p = nullptr;
    const cube_id* hi = nullptr;
    std::size_t cur_mark = 0;
    bool active = false;  // a candidate of this frame is currently applied
    std::vector<cube_id> scratch;
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
      cube_id w = *f.p++;
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

MapSearchResult enumerate_maps(const CSetPtr& src, const CSetPtr& dst, const MapPins& pins,
                               const MapSearchOptions& opt) {
  if (!src || !dst) throw std::invalid_argument("enumerate_maps: null cubical set");
  if (src->dim > dst->dim)
    throw ValidationError("enumerate_maps: source truncation exceeds destination truncation");
  Searcher s(src, dst, opt);
  bool ok = true;
  for (const auto& [c, w] : pins) {
    if (c.dim < 0 || c.dim > src->dim || c.id < 0 || c.id >= src->count(c.dim))
      throw std::out_of_range("enumerate_maps: pinned cube out of range");
    if (w < 0 || w >= dst->count(c.dim))
      throw std::out_of_range("enumerate_maps: pinned value out of range");
    if (!s.set(c, w)) {
      ok = false;
      break;
    }
  }
  if (ok) ok = s.propagate();
  // Contradictory pins just mean there is no map extending them.
  if (ok) s.search();
  return std::move(s.out);
}

long long count_maps(const CSetPtr& src, const CSetPtr& dst, const MapPins& pins) {
  MapSearchOptions opt;
  opt.store = false;
  MapSearchResult r = enumerate_maps(src, dst, pins, opt);
  if (!r.complete) throw CapExceeded("count_maps: search stopped before exhausting the space");
  return r.count;
}

}  // namespace cubetop
