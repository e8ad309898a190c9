#include "cubetop/homotopy.hpp"

#include <unordered_map>

namespace cubetop {

namespace {

std::uint64_t hash_ids(const std::vector<cube_id>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (cube_id x : v) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

KanReport is_kan(const CSetPtr& C, int up_to, long long node_budget) {
  if (up_to < 0 || up_to > C->dim)
    throw ValidationError("is_kan: requested dimension exceeds the truncation");
  KanReport report;
  for (int n = 1; n <= up_to && report.kan; ++n) {
    for (int i = 1; i <= n && report.kan; ++i) {
      for (int s = 0; s < 2 && report.kan; ++s) {
        RepPart ob = open_box_set(n, i, s, n);
        const CubicalSet& O = *ob.part.set;

        // The nondegenerate cubes of the open box, as site morphisms into
        // box^n, with their factorizations precomputed. A horn map is
        // determined by the images of these cubes.
        std::vector<std::pair<Cube, std::vector<GeneratorStep>>> probes;
        for (int m = 0; m <= O.dim; ++m)
          for (cube_id x : O.nondeg[m]) {
            cube_id ambient = ob.part.inclusion.map[m][x];
            probes.push_back({Cube{m, x}, decompose(ob.rep.cube_morphism[m][ambient])});
          }

        // Boundary dictionary: restriction of every n-cube of C (degenerate
        // fillers count) to the probe cubes, keyed by hash with exact
        // verification on lookup.
        std::unordered_map<std::uint64_t, std::vector<cube_id>> dict;
        auto restrict_cube = [&](cube_id w) {
          std::vector<cube_id> key(probes.size());
          for (std::size_t t = 0; t < probes.size(); ++t)
            key[t] = act_word(*C, probes[t].second, Cube{n, w}).id;
          return key;
        };
        for (cube_id w = 0; w < C->count(n); ++w) dict[hash_ids(restrict_cube(w))].push_back(w);

        MapSearchOptions opt;
        opt.store = false;
        opt.node_budget = node_budget;
        std::vector<cube_id> horn_key(probes.size());
        opt.on_result = [&](const std::vector<std::vector<cube_id>>& val) {
          for (std::size_t t = 0; t < probes.size(); ++t)
            horn_key[t] = val[probes[t].first.dim][probes[t].first.id];
          auto it = dict.find(hash_ids(horn_key));
          if (it != dict.end())
            for (cube_id w : it->second)
              if (restrict_cube(w) == horn_key) return true;
          HornWitness wit;
          wit.n = n;
          wit.i = i;
          wit.sign = s;
          wit.domain = ob.part.set;
          wit.horn.src = ob.part.set;
          wit.horn.dst = C;
          wit.horn.map = val;
          report.witness = std::move(wit);
          report.kan = false;
          return false;
        };
        MapSearchResult r = enumerate_maps(ob.part.set, C, {}, opt);
        report.horns += r.count;
        if (r.budget_exhausted) report.complete = false;
      }
    }
  }
  return report;
}

}  // namespace cubetop
