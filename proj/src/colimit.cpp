#include "cubetop/colimit.hpp"

#include <string>

#include "cubetop/union_find.hpp"

namespace cubetop {

ColimitResult colimit(const GluingDiagram& D, bool run_validate) {
  if (D.objects.empty()) throw ValidationError("colimit: empty diagram");
  int dim = D.objects[0]->dim;
  for (const CSetPtr& X : D.objects)
    if (!X || X->dim != dim) throw ValidationError("colimit: objects must share truncation");
  int k = static_cast<int>(D.objects.size());

  // Disjoint-union offsets per object and dimension.
  std::vector<std::vector<int>> off(k, std::vector<int>(dim + 1, 0));
  std::vector<int> total(dim + 1, 0);
  for (int j = 0; j < k; ++j)
    for (int n = 0; n <= dim; ++n) {
      off[j][n] = total[n];
      total[n] += D.objects[j]->cube_count[n];
    }

  std::vector<UnionFind> uf;
  uf.reserve(dim + 1);
  for (int n = 0; n <= dim; ++n) uf.emplace_back(total[n]);

  for (const ParallelPair& r : D.relations) {
    if (r.left_object < 0 || r.left_object >= k || r.right_object < 0 || r.right_object >= k)
      throw ValidationError("colimit: relation object index out of range");
    if (r.left.src.get() != r.right.src.get())
      throw ValidationError("colimit: relation legs have different sources");
    if (r.left.dst.get() != D.objects[r.left_object].get() ||
        r.right.dst.get() != D.objects[r.right_object].get())
      throw ValidationError("colimit: relation leg target mismatch");
    for (int n = 0; n <= r.left.src->dim; ++n)
      for (cube_id c = 0; c < r.left.src->cube_count[n]; ++c)
        uf[n].unite(off[r.left_object][n] + r.left.map[n][c],
                    off[r.right_object][n] + r.right.map[n][c]);
  }

  // Number the classes by smallest global member.
  std::vector<std::vector<cube_id>> cls(dim + 1);
  std::vector<int> counts(dim + 1, 0);
  for (int n = 0; n <= dim; ++n) {
    cls[n].assign(total[n], -1);
    for (int g = 0; g < total[n]; ++g) {
      int r = uf[n].find(g);
      if (cls[n][r] < 0) cls[n][r] = counts[n]++;
      cls[n][g] = cls[n][r];
    }
  }

  auto S = std::make_shared<CubicalSet>();
  S->allocate(dim, counts);
  // Fill a class-level table entry from every member; identified cubes must
  // agree because the relations come from presheaf maps.
  auto put = [](std::vector<cube_id>& table, cube_id at, cube_id value) {
    if (table[at] >= 0 && table[at] != value)
      throw ValidationError("colimit: actions do not descend to the quotient");
    table[at] = value;
  };
  for (int j = 0; j < k; ++j) {
    const CubicalSet& X = *D.objects[j];
    for (int n = 1; n <= dim; ++n) {
      for (cube_id c = 0; c < X.cube_count[n]; ++c)
        for (int i = 1; i <= n; ++i)
          for (int s = 0; s <= 1; ++s)
            put(S->face[n][i - 1][s], cls[n][off[j][n] + c],
                cls[n - 1][off[j][n - 1] + X.face[n][i - 1][s][c]]);
      for (cube_id c = 0; c < X.cube_count[n - 1]; ++c) {
        for (int i = 1; i <= n; ++i)
          put(S->degen[n][i - 1], cls[n - 1][off[j][n - 1] + c],
              cls[n][off[j][n] + X.degen[n][i - 1][c]]);
        for (int i = 1; i <= n - 1; ++i)
          put(S->conn[n][i - 1], cls[n - 1][off[j][n - 1] + c],
              cls[n][off[j][n] + X.conn[n][i - 1][c]]);
      }
    }
  }
  finalize(*S, run_validate);

  ColimitResult out;
  out.set = S;
  out.legs.resize(k);
  for (int j = 0; j < k; ++j) {
    out.legs[j].src = D.objects[j];
    out.legs[j].dst = S;
    out.legs[j].map.resize(dim + 1);
    for (int n = 0; n <= dim; ++n) {
      out.legs[j].map[n].resize(D.objects[j]->cube_count[n]);
      for (cube_id c = 0; c < D.objects[j]->cube_count[n]; ++c)
        out.legs[j].map[n][c] = cls[n][off[j][n] + c];
    }
  }
  return out;
}

ColimitResult disjoint_union(const std::vector<CSetPtr>& objects) {
  GluingDiagram D;
  D.objects = objects;
  return colimit(D);
}

std::vector<int> pi0_labels(const CubicalSet& C) {
  UnionFind uf(C.cube_count[0]);
  if (C.dim >= 1)
    for (cube_id e = 0; e < C.cube_count[1]; ++e)
      uf.unite(C.face[1][0][0][e], C.face[1][0][1][e]);
  std::vector<int> label(C.cube_count[0], -1);
  int next = 0;
  for (cube_id v = 0; v < C.cube_count[0]; ++v) {
    int r = uf.find(v);
    if (label[r] < 0) label[r] = next++;
    label[v] = label[r];
  }
  return label;
}

int pi0_count(const CubicalSet& C) {
  if (C.cube_count[0] == 0) return 0;
  std::vector<int> l = pi0_labels(C);
  int m = 0;
  for (int x : l) m = std::max(m, x + 1);
  return m;
}

}  // namespace cubetop
