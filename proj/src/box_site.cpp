#include "cubetop/box_site.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cubetop {

BoxCoord const0() { return BoxCoord{CoordKind::Const0, {}}; }
BoxCoord const1() { return BoxCoord{CoordKind::Const1, {}}; }

BoxCoord join_of(std::vector<int> indices) {
  if (indices.empty()) throw ValidationError("join_of: empty index set");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return BoxCoord{CoordKind::Join, std::move(indices)};
}

bool is_valid(const BoxMorphism& f, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (f.dom < 0) return fail("negative domain arity");
  int prev_max = 0;  // all indices of later blocks must exceed this
  for (int j = 0; j < f.cod(); ++j) {
    const BoxCoord& c = f.coords[j];
    if (c.kind != CoordKind::Join) {
      if (!c.join.empty()) return fail("constant coordinate carries indices");
      continue;
    }
    if (c.join.empty()) return fail("empty Join set");
    int last = 0;
    for (int idx : c.join) {
      if (idx < 1 || idx > f.dom) return fail("Join index out of range");
      if (idx <= last) return fail("Join indices not strictly ascending");
      last = idx;
    }
    // Disjointness and block-ordering collapse to one condition: every index
    // of this block exceeds every index of any earlier block.
    if (c.join.front() <= prev_max) return fail("Join blocks not block-ordered/disjoint");
    prev_max = c.join.back();
  }
  return true;
}

void require_valid(const BoxMorphism& f) {
  std::string why;
  if (!is_valid(f, &why)) throw ValidationError("invalid box morphism: " + why);
}

std::uint32_t evaluate(const BoxMorphism& f, std::uint32_t x) {
  std::uint32_t y = 0;
  for (int j = 0; j < f.cod(); ++j) {
    const BoxCoord& c = f.coords[j];
    std::uint32_t bit = 0;
    switch (c.kind) {
      case CoordKind::Const0: bit = 0; break;
      case CoordKind::Const1: bit = 1; break;
      case CoordKind::Join:
        for (int idx : c.join) bit |= (x >> (idx - 1)) & 1u;
        break;
    }
    y |= bit << j;
  }
  return y;
}

std::vector<std::uint32_t> function_table(const BoxMorphism& f) {
  std::vector<std::uint32_t> table(std::size_t{1} << f.dom);
  for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = evaluate(f, x);
  return table;
}

BoxMorphism identity(int n) {
  BoxMorphism f;
  f.dom = n;
  f.coords.reserve(n);
  for (int i = 1; i <= n; ++i) f.coords.push_back(join_of({i}));
  return f;
}

BoxMorphism face_morphism(int n, int i, int sign) {
  if (i < 1 || i > n + 1) throw ValidationError("face_morphism: index out of range");
  BoxMorphism f;
  f.dom = n;
  f.coords.reserve(n + 1);
  for (int j = 1; j < i; ++j) f.coords.push_back(join_of({j}));
  f.coords.push_back(sign ? const1() : const0());
  for (int j = i; j <= n; ++j) f.coords.push_back(join_of({j}));
  return f;
}

BoxMorphism collapse_morphism(int n, int i) {
  if (i < 1 || i > n) throw ValidationError("collapse_morphism: index out of range");
  BoxMorphism f;
  f.dom = n;
  f.coords.reserve(n - 1);
  for (int j = 1; j <= n; ++j)
    if (j != i) f.coords.push_back(join_of({j}));
  return f;
}

BoxMorphism connection_morphism(int n, int i) {
  if (i < 1 || i > n - 1) throw ValidationError("connection_morphism: index out of range");
  BoxMorphism f;
  f.dom = n;
  f.coords.reserve(n - 1);
  for (int j = 1; j < i; ++j) f.coords.push_back(join_of({j}));
  f.coords.push_back(join_of({i, i + 1}));
  for (int j = i + 2; j <= n; ++j) f.coords.push_back(join_of({j}));
  return f;
}

BoxMorphism compose(const BoxMorphism& g, const BoxMorphism& f) {
  if (f.cod() != g.dom)
    throw ValidationError("compose: arity mismatch (" + to_text(g) + " after " + to_text(f) + ")");
  BoxMorphism r;
  r.dom = f.dom;
  r.coords.reserve(g.cod());
  for (const BoxCoord& gc : g.coords) {
    if (gc.kind != CoordKind::Join) {
      r.coords.push_back(gc);
      continue;
    }
    // Coordinate value is sup over gc.join of f's coordinates: a Const1 factor
    // absorbs everything, Const0 factors drop out, and Join factors merge.
    // Because f's blocks are block-ordered and gc.join ascends, the merged
    // index list is already sorted; block-ordering of the result follows the
    // same way, since distinct Join coordinates of g use disjoint ordered
    // blocks of f's coordinates.
    bool has_one = false;
    std::vector<int> merged;
    for (int j : gc.join) {
      const BoxCoord& fc = f.coords[j - 1];
      if (fc.kind == CoordKind::Const1) {
        has_one = true;
        break;
      }
      if (fc.kind == CoordKind::Join)
        merged.insert(merged.end(), fc.join.begin(), fc.join.end());
    }
    if (has_one)
      r.coords.push_back(const1());
    else if (merged.empty())
      r.coords.push_back(const0());
    else
      r.coords.push_back(BoxCoord{CoordKind::Join, std::move(merged)});
  }
  return r;
}

BoxMorphism tensor(const BoxMorphism& f, const BoxMorphism& g) {
  BoxMorphism r;
  r.dom = f.dom + g.dom;
  r.coords = f.coords;
  r.coords.reserve(f.cod() + g.cod());
  for (BoxCoord c : g.coords) {
    for (int& idx : c.join) idx += f.dom;
    r.coords.push_back(std::move(c));
  }
  return r;
}

namespace {

void enumerate_rec(int m, int n, int pos, int lo, BoxMorphism& partial,
                   std::vector<BoxMorphism>& out) {
  if (pos == n) {
    out.push_back(partial);
    return;
  }
  partial.coords[pos] = const0();
  enumerate_rec(m, n, pos + 1, lo, partial, out);
  partial.coords[pos] = const1();
  enumerate_rec(m, n, pos + 1, lo, partial, out);
  // Join over any non-empty subset of {lo..m}; the next block must start
  // above this block's maximum (block-ordering).
  int avail = m - lo + 1;
  if (avail > 0) {
    for (std::uint32_t mask = 1; mask < (1u << avail); ++mask) {
      std::vector<int> s;
      int hi = lo - 1;
      for (int b = 0; b < avail; ++b)
        if (mask & (1u << b)) {
          s.push_back(lo + b);
          hi = lo + b;
        }
      partial.coords[pos] = BoxCoord{CoordKind::Join, std::move(s)};
      enumerate_rec(m, n, pos + 1, hi + 1, partial, out);
    }
  }
  partial.coords[pos] = const0();
}

}  // namespace

std::vector<BoxMorphism> enumerate_morphisms(int m, int n, int cap) {
  if (m < 0 || n < 0) throw ValidationError("enumerate_morphisms: negative arity");
  if (m > cap || n > cap)
    throw CapExceeded("enumerate_morphisms: arity " + std::to_string(std::max(m, n)) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<BoxMorphism> out;
  BoxMorphism partial;
  partial.dom = m;
  partial.coords.assign(n, const0());
  enumerate_rec(m, n, 0, 1, partial, out);
  std::sort(out.begin(), out.end(), [](const BoxMorphism& a, const BoxMorphism& b) {
    return to_text(a) < to_text(b);
  });
  return out;
}

bool is_surjective(const BoxMorphism& f) {
  for (const BoxCoord& c : f.coords)
    if (c.kind != CoordKind::Join) return false;
  return true;
}

bool is_injective(const BoxMorphism& f) {
  int used = 0;
  for (const BoxCoord& c : f.coords) {
    if (c.kind != CoordKind::Join) continue;
    if (c.join.size() != 1) return false;
    ++used;
  }
  return used == f.dom;
}

BoxMorphism section_of_surjection(const BoxMorphism& f) {
  if (!is_surjective(f)) throw ValidationError("section_of_surjection: not surjective");
  BoxMorphism s;
  s.dom = f.cod();
  s.coords.assign(f.dom, const0());
  for (int j = 0; j < f.cod(); ++j) {
    int rep = f.coords[j].join.front();  // minimum index of block j+1
    s.coords[rep - 1] = join_of({j + 1});
  }
  return s;
}

BoxMorphism step_morphism(const GeneratorStep& s) {
  switch (s.kind) {
    case GeneratorStep::Kind::Face: return face_morphism(s.arity, s.index, s.sign);
    case GeneratorStep::Kind::Collapse: return collapse_morphism(s.arity, s.index);
    case GeneratorStep::Kind::Connection: return connection_morphism(s.arity, s.index);
  }
  throw ValidationError("step_morphism: bad kind");
}

std::vector<GeneratorStep> decompose(const BoxMorphism& f) {
  require_valid(f);
  std::vector<GeneratorStep> word;

  // Stage 1: collapse unused domain coordinates, descending so the indices of
  // the remaining unused coordinates are unaffected.
  std::vector<bool> used(f.dom + 1, false);
  for (const BoxCoord& c : f.coords)
    for (int idx : c.join) used[idx] = true;
  int arity = f.dom;
  for (int i = f.dom; i >= 1; --i) {
    if (used[i]) continue;
    word.push_back({GeneratorStep::Kind::Collapse, arity, i, 0});
    --arity;
  }

  // After stage 1 the used indices are renumbered 1..arity in order, and
  // block-ordering makes each Join block a contiguous run in that numbering.
  // Stage 2: merge each run to one coordinate with connections, processing
  // later blocks first so earlier block positions stay put.
  struct Block {
    int start;  // renumbered start position
    int size;
  };
  std::vector<Block> blocks;
  int covered = 0;
  for (const BoxCoord& c : f.coords)
    if (c.kind == CoordKind::Join) {
      blocks.push_back({covered + 1, static_cast<int>(c.join.size())});
      covered += static_cast<int>(c.join.size());
    }
  for (int b = static_cast<int>(blocks.size()) - 1; b >= 0; --b)
    for (int t = 0; t < blocks[b].size - 1; ++t) {
      word.push_back({GeneratorStep::Kind::Connection, arity, blocks[b].start, 0});
      --arity;
    }

  // Stage 3: insert the constant coordinates in ascending codomain position.
  for (int j = 0; j < f.cod(); ++j) {
    const BoxCoord& c = f.coords[j];
    if (c.kind == CoordKind::Join) continue;
    word.push_back({GeneratorStep::Kind::Face, arity, j + 1,
                    c.kind == CoordKind::Const1 ? 1 : 0});
    ++arity;
  }
  return word;
}

BoxMorphism compose_word(const std::vector<GeneratorStep>& steps, int dom) {
  BoxMorphism acc = identity(dom);
  for (const GeneratorStep& s : steps) acc = compose(step_morphism(s), acc);
  return acc;
}

std::string to_text(const BoxMorphism& f) {
  std::ostringstream os;
  os << f.dom << '>' << f.cod() << ":[";
  for (int j = 0; j < f.cod(); ++j) {
    if (j) os << ',';
    const BoxCoord& c = f.coords[j];
    switch (c.kind) {
      case CoordKind::Const0: os << '0'; break;
      case CoordKind::Const1: os << '1'; break;
      case CoordKind::Join: {
        os << '{';
        for (std::size_t t = 0; t < c.join.size(); ++t) {
          if (t) os << ',';
          os << c.join[t];
        }
        os << '}';
        break;
      }
    }
  }
  os << ']';
  return os.str();
}

BoxMorphism from_text(const std::string& text) {
  std::size_t p = 0;
  auto fail = [&]() -> ValidationError {
    return ValidationError("from_text: malformed morphism '" + text + "'");
  };
  auto read_int = [&]() {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == start) throw fail();
    return std::stoi(text.substr(start, p - start));
  };
  auto expect = [&](char c) {
    if (p >= text.size() || text[p] != c) throw fail();
    ++p;
  };
  BoxMorphism f;
  f.dom = read_int();
  expect('>');
  int n = read_int();
  expect(':');
  expect('[');
  for (int j = 0; j < n; ++j) {
    if (j) expect(',');
    if (p >= text.size()) throw fail();
    if (text[p] == '0') {
      f.coords.push_back(const0());
      ++p;
    } else if (text[p] == '1') {
      f.coords.push_back(const1());
      ++p;
    } else if (text[p] == '{') {
      ++p;
      std::vector<int> s;
      s.push_back(read_int());
      while (p < text.size() && text[p] == ',') {
        ++p;
        s.push_back(read_int());
      }
      expect('}');
      f.coords.push_back(BoxCoord{CoordKind::Join, std::move(s)});
    } else {
      throw fail();
    }
  }
  expect(']');
  if (p != text.size()) throw fail();
  require_valid(f);
  return f;
}

}  // namespace cubetop
