#pragma once

// Executable model of the monoidal cube category with max-connections.
//
// Objects are the finite powers box^n of the ordered pair {0,1}; morphisms are
// generated by the coface inclusions delta^{+-} (insert a constant
// coordinate), the collapse epsilon (drop a coordinate) and the connection vee
// (merge two adjacent coordinates by binary supremum). There are no symmetry
// or diagonal generators.
//
// A morphism box^m -> box^n is stored in a canonical coordinate form: a list
// of n entries, each Const0, Const1 or Join(S) with S a non-empty set of
// domain coordinates. The Join sets are pairwise disjoint and block-ordered:
// every index of an earlier Join entry is strictly smaller than every index of
// a later one. Composition and tensor are closed over this normal form
// (block-ordering survives both, see compose()), which gives O(n) storage and
// O(n) structural equality. The unit tests verify the normal form against a
// brute-force generator-closure oracle at small arity.

#include <cstdint>
#include <string>
#include <vector>

#include "cubetop/errors.hpp"

namespace cubetop {

enum class CoordKind : std::uint8_t { Const0, Const1, Join };

struct BoxCoord {
  CoordKind kind = CoordKind::Const0;
  // 1-based domain indices, strictly ascending; non-empty iff kind == Join.
  std::vector<int> join;

  bool operator==(const BoxCoord&) const = default;
  bool operator<(const BoxCoord& o) const {
    if (kind != o.kind) return kind < o.kind;
    return join < o.join;
  }
};

struct BoxMorphism {
  int dom = 0;                   // domain arity m (the object box^m)
  std::vector<BoxCoord> coords;  // one entry per codomain coordinate

  int cod() const { return static_cast<int>(coords.size()); }
  bool operator==(const BoxMorphism&) const = default;
  bool operator<(const BoxMorphism& o) const {
    if (dom != o.dom) return dom < o.dom;
    return coords < o.coords;
  }
};

BoxCoord const0();
BoxCoord const1();
BoxCoord join_of(std::vector<int> indices);  // sorts and checks non-empty

// True iff the coordinate lists satisfy all the canonical-form invariants
// (ranges, disjointness, block-ordering). On failure an explanation is written
// to *why when provided.
bool is_valid(const BoxMorphism& f, std::string* why = nullptr);
void require_valid(const BoxMorphism& f);  // throws ValidationError

// Evaluate on a vertex of box^m packed as a bitmask (bit i-1 = coordinate i).
std::uint32_t evaluate(const BoxMorphism& f, std::uint32_t x);

// Full function table: entry x (0 <= x < 2^m) is evaluate(f, x).
std::vector<std::uint32_t> function_table(const BoxMorphism& f);

BoxMorphism identity(int n);

// delta_{sign,i}: box^n -> box^{n+1}, insert Const(sign) at slot i, 1 <= i <= n+1.
// sign: 0 = lower endpoint (Const0), 1 = upper endpoint (Const1).
BoxMorphism face_morphism(int n, int i, int sign);

// epsilon_i: box^n -> box^{n-1}, drop coordinate i, 1 <= i <= n.
BoxMorphism collapse_morphism(int n, int i);

// vee_i: box^n -> box^{n-1}, merge coordinates i and i+1 by sup, 1 <= i <= n-1.
BoxMorphism connection_morphism(int n, int i);

// g after f (f applied first). Requires f.cod() == g.dom.
BoxMorphism compose(const BoxMorphism& g, const BoxMorphism& f);

// Coordinates of f followed by coordinates of g with g's domain indices
// shifted by f.dom.
BoxMorphism tensor(const BoxMorphism& f, const BoxMorphism& g);

// All morphisms box^m -> box^n in canonical form, ordered lexicographically by
// their textual form (deterministic). Throws CapExceeded when m or n exceeds
// the cap (default 5).
std::vector<BoxMorphism> enumerate_morphisms(int m, int n, int cap = 5);

// Surjective as a function iff every coordinate is a Join.
bool is_surjective(const BoxMorphism& f);

// Injective as a function iff every domain index is used and every Join block
// is a singleton.
bool is_injective(const BoxMorphism& f);

// For surjective f: a canonical section s (f o s = identity), picking the
// minimum index of each block and padding unused coordinates with Const0.
BoxMorphism section_of_surjection(const BoxMorphism& f);

// Canonical factorization f = mono o epi: the epi keeps the Join blocks (one
// output per block, in block order), the mono re-places them among the
// constant coordinates. The epi is surjective, the mono injective, and both
// are in canonical form.
struct EpiMono {
  BoxMorphism epi;
  BoxMorphism mono;
};
EpiMono epi_mono_split(const BoxMorphism& f);

// One tensor-padded generator. As a morphism: Face goes box^arity ->
// box^{arity+1} (index in 1..arity+1, sign in {0,1}), Collapse and Connection
// go box^arity -> box^{arity-1} (index in 1..arity resp. 1..arity-1).
struct GeneratorStep {
  enum class Kind : std::uint8_t { Face, Collapse, Connection };
  Kind kind = Kind::Face;
  int arity = 0;  // arity of the step's domain object
  int index = 1;
  int sign = 0;  // Face only

  bool operator==(const GeneratorStep&) const = default;
};

BoxMorphism step_morphism(const GeneratorStep& s);

// Factor f into generator steps; steps[0] is applied first, so
// f = step[last] o ... o step[0]. The factorization is staged: collapses for
// unused domain coordinates (descending index), then connections merging each
// Join block to a single coordinate (later blocks first), then faces inserting
// the constants (ascending position). Total for every valid morphism.
std::vector<GeneratorStep> decompose(const BoxMorphism& f);

// Compose a word of steps starting from identity(dom); steps[0] applied first.
BoxMorphism compose_word(const std::vector<GeneratorStep>& steps, int dom);

// Canonical textual form "m>n:[c1,...,cn]" with c = 0 | 1 | {i,...}.
std::string to_text(const BoxMorphism& f);
// Inverse of to_text; throws ValidationError on malformed input.
BoxMorphism from_text(const std::string& text);

}  // namespace cubetop
