#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubetop/box_site.hpp"
#include "oracles.hpp"

using namespace cubetop;

namespace {

oracle::FnTable as_table(const BoxMorphism& f) {
  return oracle::FnTable{f.dom, f.cod(), function_table(f)};
}

std::vector<BoxMorphism> all_up_to(int max_arity) {
  std::vector<BoxMorphism> out;
  for (int m = 0; m <= max_arity; ++m)
    for (int n = 0; n <= max_arity; ++n)
      for (BoxMorphism& f : enumerate_morphisms(m, n)) out.push_back(std::move(f));
  return out;
}

}  // namespace

TEST_CASE("identity basics") {
  CHECK(identity(0).coords.empty());
  CHECK(identity(1).coords == std::vector<BoxCoord>{join_of({1})});
  // identity(2) evaluated at (1,0): bit 0 = first coordinate.
  CHECK(evaluate(identity(2), 0b01u) == 0b01u);
  for (int n = 0; n <= 4; ++n) CHECK(is_valid(identity(n)));
}

TEST_CASE("generator morphisms match extensional tables") {
  for (int a = 0; a <= 3; ++a)
    for (int i = 1; i <= a + 1; ++i)
      for (int s = 0; s <= 1; ++s)
        CHECK(as_table(face_morphism(a, i, s)) == oracle::fn_face(a, i, s));
  for (int a = 1; a <= 4; ++a)
    for (int i = 1; i <= a; ++i)
      CHECK(as_table(collapse_morphism(a, i)) == oracle::fn_collapse(a, i));
  for (int a = 2; a <= 4; ++a)
    for (int i = 1; i < a; ++i)
      CHECK(as_table(connection_morphism(a, i)) == oracle::fn_connection(a, i));
}

TEST_CASE("compose examples") {
  // vee after (delta_minus tensor id): x |-> 0 v x = x.
  BoxMorphism dm_id = tensor(face_morphism(0, 1, 0), identity(1));
  CHECK(compose(connection_morphism(2, 1), dm_id) == identity(1));
  // delta_plus after the collapse: the constant-1 endomorphism of the interval.
  BoxMorphism c = compose(face_morphism(0, 1, 1), collapse_morphism(1, 1));
  CHECK(c.dom == 1);
  CHECK(c.coords == std::vector<BoxCoord>{const1()});
  // Identity laws.
  for (const BoxMorphism& f : enumerate_morphisms(1, 2)) CHECK(compose(identity(2), f) == f);
  for (const BoxMorphism& f : enumerate_morphisms(2, 2)) {
    CHECK(compose(identity(2), f) == f);
    CHECK(compose(f, identity(2)) == f);
  }
  CHECK_THROWS_AS(compose(connection_morphism(2, 1), identity(1)), ValidationError);
}

TEST_CASE("tensor examples") {
  BoxMorphism t = tensor(face_morphism(0, 1, 0), face_morphism(0, 1, 1));
  CHECK(t.dom == 0);
  CHECK(t.coords == std::vector<BoxCoord>{const0(), const1()});
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q)
      CHECK(tensor(identity(p), identity(q)) == identity(p + q));
  for (const BoxMorphism& f : enumerate_morphisms(2, 2)) {
    CHECK(tensor(f, identity(0)) == f);
    CHECK(tensor(identity(0), f) == f);
  }
}

TEST_CASE("enumerate counts and canonical validity") {
  CHECK(enumerate_morphisms(1, 1).size() == 3);
  CHECK(enumerate_morphisms(2, 1).size() == 5);
  CHECK(enumerate_morphisms(1, 2).size() == 8);
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto fs = enumerate_morphisms(m, n);
      CHECK(static_cast<long long>(fs.size()) == oracle::morphism_count(m, n));
      for (const BoxMorphism& f : fs) {
        std::string why;
        CHECK_MESSAGE(is_valid(f, &why), why);
      }
      // Output order is strictly increasing in the textual form.
      for (std::size_t i = 1; i < fs.size(); ++i)
        CHECK(to_text(fs[i - 1]) < to_text(fs[i]));
    }
  CHECK(oracle::morphism_count(4, 4) == 961);
  CHECK_THROWS_AS(enumerate_morphisms(6, 1), CapExceeded);
  CHECK(enumerate_morphisms(6, 0, 6).size() == 1);
}

TEST_CASE("closure soundness and completeness against the brute-force oracle") {
  auto hom = oracle::generator_closure(3);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      std::set<oracle::FnTable> ours;
      for (const BoxMorphism& f : enumerate_morphisms(m, n)) ours.insert(as_table(f));
      // Distinct canonical forms induce distinct functions.
      CHECK(ours.size() == enumerate_morphisms(m, n).size());
      CHECK(ours == hom[{m, n}]);
    }
}

TEST_CASE("associativity on all composable triples of arity <= 3") {
  std::vector<std::vector<std::vector<BoxMorphism>>> hom(4);
  for (int a = 0; a <= 3; ++a) {
    hom[a].resize(4);
    for (int b = 0; b <= 3; ++b) hom[a][b] = enumerate_morphisms(a, b);
  }
  long long checked = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (const BoxMorphism& f : hom[a][b])
            for (const BoxMorphism& g : hom[b][c]) {
              BoxMorphism gf = compose(g, f);
              for (const BoxMorphism& h : hom[c][d]) {
                CHECK(compose(h, gf) == compose(compose(h, g), f));
                ++checked;
              }
            }
  CHECK(checked > 0);
}

TEST_CASE("interchange of tensor and composition") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c)
        for (int a2 = 0; a2 <= 2; ++a2)
          for (int b2 = 0; b2 <= 2; ++b2)
            for (int c2 = 0; c2 <= 2; ++c2)
              for (const BoxMorphism& f : enumerate_morphisms(a, b))
                for (const BoxMorphism& g : enumerate_morphisms(b, c))
                  for (const BoxMorphism& f2 : enumerate_morphisms(a2, b2))
                    for (const BoxMorphism& g2 : enumerate_morphisms(b2, c2))
                      CHECK(tensor(compose(g, f), compose(g2, f2)) ==
                            compose(tensor(g, g2), tensor(f, f2)));
}

TEST_CASE("every morphism preserves binary suprema") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const BoxMorphism& f : enumerate_morphisms(m, n)) {
        auto table = function_table(f);
        for (std::uint32_t x = 0; x < table.size(); ++x)
          for (std::uint32_t y = 0; y < table.size(); ++y)
            CHECK(table[x | y] == (table[x] | table[y]));
      }
}

TEST_CASE("surjections, injections, sections") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const BoxMorphism& f : enumerate_morphisms(m, n)) {
        // Extensional surjectivity/injectivity agree with the canonical-form tests.
        auto table = function_table(f);
        std::set<std::uint32_t> image(table.begin(), table.end());
        CHECK(is_surjective(f) == (image.size() == (std::size_t{1} << n)));
        CHECK(is_injective(f) == (image.size() == table.size()));
        if (is_surjective(f)) {
          BoxMorphism s = section_of_surjection(f);
          CHECK(compose(f, s) == identity(n));
        }
      }
}

TEST_CASE("decompose produces short words on the generator examples") {
  BoxMorphism dm = face_morphism(0, 1, 0);  // [Const0] from arity 0
  CHECK(decompose(dm).size() == 1);
  BoxMorphism vee = connection_morphism(2, 1);  // [Join({1,2})]
  CHECK(decompose(vee).size() == 1);
  BoxMorphism f;  // x |-> (x, 1)
  f.dom = 1;
  f.coords = {join_of({1}), const1()};
  auto word = decompose(f);
  CHECK(word.size() == 1);
  CHECK(compose_word(word, f.dom) == f);
  auto table = function_table(compose_word(word, f.dom));
  CHECK(table == std::vector<std::uint32_t>{0b10u, 0b11u});
}

TEST_CASE("decompose totality and round trip up to arity 4") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const BoxMorphism& f : enumerate_morphisms(m, n)) {
        auto word = decompose(f);
        BoxMorphism back = compose_word(word, f.dom);
        CHECK(back == f);
        CHECK(function_table(back) == function_table(f));
      }
}

TEST_CASE("textual form round trip and format") {
  CHECK(to_text(connection_morphism(2, 1)) == "2>1:[{1,2}]");
  CHECK(to_text(face_morphism(1, 1, 0)) == "1>2:[0,{1}]");
  CHECK(to_text(identity(0)) == "0>0:[]");
  for (const BoxMorphism& f : all_up_to(3)) CHECK(from_text(to_text(f)) == f);
  CHECK_THROWS_AS(from_text("1>1:[{}]"), ValidationError);
  CHECK_THROWS_AS(from_text("1>1:[2]"), ValidationError);
  CHECK_THROWS_AS(from_text("banana"), ValidationError);
}

TEST_CASE("invalid canonical forms are rejected") {
  BoxMorphism f;
  f.dom = 2;
  f.coords = {BoxCoord{CoordKind::Join, {}}};
  CHECK(!is_valid(f));  // empty Join
  f.coords = {BoxCoord{CoordKind::Join, {3}}};
  CHECK(!is_valid(f));  // out of range
  f.coords = {BoxCoord{CoordKind::Join, {1}}, BoxCoord{CoordKind::Join, {1}}};
  CHECK(!is_valid(f));  // not disjoint
  f.coords = {BoxCoord{CoordKind::Join, {2}}, BoxCoord{CoordKind::Join, {1}}};
  CHECK(!is_valid(f));  // not block-ordered
  f.coords = {BoxCoord{CoordKind::Const0, {1}}};
  CHECK(!is_valid(f));  // constant carrying indices
  CHECK_THROWS_AS(require_valid(f), ValidationError);
}
