#include "cubetop/subpresheaf.hpp"

#include <algorithm>
#include <deque>

namespace cubetop {

SubMask SubMask::none(const CubicalSet& C) {
  SubMask m;
  m.member.resize(C.dim + 1);
  for (int n = 0; n <= C.dim; ++n) m.member[n].assign(C.cube_count[n], 0);
  return m;
}

SubMask SubMask::all(const CubicalSet& C) {
  SubMask m;
  m.member.resize(C.dim + 1);
  for (int n = 0; n <= C.dim; ++n) m.member[n].assign(C.cube_count[n], 1);
  return m;
}

long long SubMask::size() const {
  long long t = 0;
  for (const auto& row : member)
    for (std::uint8_t b : row) t += b;
  return t;
}

SubMask mask_union(const SubMask& a, const SubMask& b) {
  SubMask r = a;
  for (std::size_t n = 0; n < r.member.size(); ++n)
    for (std::size_t c = 0; c < r.member[n].size(); ++c) r.member[n][c] |= b.member[n][c];
  return r;
}

SubMask mask_intersection(const SubMask& a, const SubMask& b) {
  SubMask r = a;
  for (std::size_t n = 0; n < r.member.size(); ++n)
    for (std::size_t c = 0; c < r.member[n].size(); ++c) r.member[n][c] &= b.member[n][c];
  return r;
}

bool mask_subset(const SubMask& a, const SubMask& b) {
  for (std::size_t n = 0; n < a.member.size(); ++n)
    for (std::size_t c = 0; c < a.member[n].size(); ++c)
      if (a.member[n][c] && !b.member[n][c]) return false;
  return true;
}

namespace {

// Calls fn(src, dst) for every generator action edge src |-> dst of C.
template <typename F>
void for_each_action_edge(const CubicalSet& C, F&& fn) {
  for (int n = 1; n <= C.dim; ++n) {
    for (cube_id c = 0; c < C.cube_count[n]; ++c)
      for (int i = 1; i <= n; ++i)
        for (int s = 0; s <= 1; ++s) fn(Cube{n, c}, Cube{n - 1, C.face[n][i - 1][s][c]});
    for (cube_id c = 0; c < C.cube_count[n - 1]; ++c) {
      for (int i = 1; i <= n; ++i) fn(Cube{n - 1, c}, Cube{n, C.degen[n][i - 1][c]});
      for (int i = 1; i <= n - 1; ++i) fn(Cube{n - 1, c}, Cube{n, C.conn[n][i - 1][c]});
    }
  }
}

// Calls fn(dst_list) for the images of one cube under all generator actions.
template <typename F>
void for_each_image(const CubicalSet& C, Cube c, F&& fn) {
  int n = c.dim;
  if (n >= 1)
    for (int i = 1; i <= n; ++i)
      for (int s = 0; s <= 1; ++s) fn(Cube{n - 1, C.face[n][i - 1][s][c.id]});
  if (n + 1 <= C.dim) {
    for (int i = 1; i <= n + 1; ++i) fn(Cube{n + 1, C.degen[n + 1][i - 1][c.id]});
    for (int i = 1; i <= n; ++i) fn(Cube{n + 1, C.conn[n + 1][i - 1][c.id]});
  }
}

}  // namespace

bool is_action_closed(const CubicalSet& C, const SubMask& m) {
  bool ok = true;
  for_each_action_edge(C, [&](Cube src, Cube dst) {
    if (m.member[src.dim][src.id] && !m.member[dst.dim][dst.id]) ok = false;
  });
  return ok;
}

SubMask span_of(const CubicalSet& C, const std::vector<Cube>& seeds) {
  SubMask m = SubMask::none(C);
  std::deque<Cube> work;
  for (const Cube& c : seeds)
    if (!m.contains(c)) {
      m.add(c);
      work.push_back(c);
    }
  while (!work.empty()) {
    Cube c = work.front();
    work.pop_front();
    for_each_image(C, c, [&](Cube d) {
      if (!m.contains(d)) {
        m.add(d);
        work.push_back(d);
      }
    });
  }
  return m;
}

SubMask reverse_reachable(const CubicalSet& C, const std::vector<Cube>& targets) {
  // Adjacency reversed: pred[dst] lists the sources of action edges into dst.
  std::vector<std::vector<std::vector<Cube>>> pred(C.dim + 1);
  for (int n = 0; n <= C.dim; ++n) pred[n].resize(C.cube_count[n]);
  for_each_action_edge(C, [&](Cube src, Cube dst) { pred[dst.dim][dst.id].push_back(src); });
  SubMask m = SubMask::none(C);
  std::deque<Cube> work;
  for (const Cube& c : targets)
    if (!m.contains(c)) {
      m.add(c);
      work.push_back(c);
    }
  while (!work.empty()) {
    Cube c = work.front();
    work.pop_front();
    for (const Cube& p : pred[c.dim][c.id])
      if (!m.contains(p)) {
        m.add(p);
        work.push_back(p);
      }
  }
  return m;
}

SubMask max_subpresheaf_excluding(const CubicalSet& C, const std::vector<Cube>& excluded) {
  SubMask bad = reverse_reachable(C, excluded);
  SubMask m = SubMask::all(C);
  for (int n = 0; n <= C.dim; ++n)
    for (cube_id c = 0; c < C.cube_count[n]; ++c)
      if (bad.member[n][c]) m.member[n][c] = 0;
  return m;
}

SubMask image_mask(const CubicalFunction& f) {
  SubMask m = SubMask::none(*f.dst);
  for (int n = 0; n < static_cast<int>(f.map.size()); ++n)
    for (cube_id v : f.map[n]) m.member[n][v] = 1;
  return m;
}

SubMask equalizer_mask(const CubicalFunction& f, const CubicalFunction& g) {
  if (f.src.get() != g.src.get() || f.dst.get() != g.dst.get())
    throw ValidationError("equalizer_mask: functions not parallel");
  SubMask m = SubMask::none(*f.src);
  for (int n = 0; n < static_cast<int>(f.map.size()); ++n)
    for (cube_id c = 0; c < static_cast<int>(f.map[n].size()); ++c)
      if (f.map[n][c] == g.map[n][c]) m.member[n][c] = 1;
  return m;
}

SubMask closed_star(const CubicalSet& C, cube_id v) {
  SubMask star = SubMask::none(C);
  // Nondegenerate cubes in descending dimension: once a cube already lies in
  // the accumulated star its span was covered by an earlier contributor.
  for (int n = C.dim; n >= 0; --n)
    for (cube_id c : C.nondeg[n]) {
      if (star.member[n][c]) continue;
      SubMask sp = span_of(C, {Cube{n, c}});
      if (sp.member[0][v]) star = mask_union(star, sp);
    }
  return star;
}

SubObject extract_subpresheaf(const CSetPtr& C, const SubMask& m, bool run_validate) {
  if (!is_action_closed(*C, m))
    throw ValidationError("extract_subpresheaf: mask not closed under actions");
  SubObject sub;
  sub.to_sub.resize(C->dim + 1);
  std::vector<int> counts(C->dim + 1, 0);
  std::vector<std::vector<cube_id>> to_ambient(C->dim + 1);
  for (int n = 0; n <= C->dim; ++n) {
    sub.to_sub[n].assign(C->cube_count[n], -1);
    for (cube_id c = 0; c < C->cube_count[n]; ++c)
      if (m.member[n][c]) {
        sub.to_sub[n][c] = counts[n]++;
        to_ambient[n].push_back(c);
      }
  }
  auto S = std::make_shared<CubicalSet>();
  S->allocate(C->dim, counts);
  for (int n = 1; n <= C->dim; ++n) {
    for (cube_id c = 0; c < counts[n]; ++c) {
      cube_id a = to_ambient[n][c];
      for (int i = 1; i <= n; ++i)
        for (int s = 0; s <= 1; ++s)
          S->face[n][i - 1][s][c] = sub.to_sub[n - 1][C->face[n][i - 1][s][a]];
    }
    for (cube_id c = 0; c < counts[n - 1]; ++c) {
      cube_id a = to_ambient[n - 1][c];
      for (int i = 1; i <= n; ++i) S->degen[n][i - 1][c] = sub.to_sub[n][C->degen[n][i - 1][a]];
      for (int i = 1; i <= n - 1; ++i) S->conn[n][i - 1][c] = sub.to_sub[n][C->conn[n][i - 1][a]];
    }
  }
  finalize(*S, run_validate);
  sub.set = S;
  sub.inclusion.src = S;
  sub.inclusion.dst = C;
  sub.inclusion.map = to_ambient;
  return sub;
}

CubicalFunction corestrict(const CubicalFunction& f, const SubObject& sub) {
  if (f.dst.get() != sub.inclusion.dst.get())
    throw ValidationError("corestrict: subobject not inside the target");
  CubicalFunction r;
  r.src = f.src;
  r.dst = sub.set;
  r.map.resize(f.map.size());
  for (std::size_t n = 0; n < f.map.size(); ++n) {
    r.map[n].resize(f.map[n].size());
    for (std::size_t c = 0; c < f.map[n].size(); ++c) {
      cube_id v = sub.to_sub[n][f.map[n][c]];
      if (v < 0) throw ValidationError("corestrict: image leaves the subobject");
      r.map[n][c] = v;
    }
  }
  return r;
}

}  // namespace cubetop
