#pragma once

// Normalized integer chains of a cubical set, seminormed cochains, cohomology
// by Smith normal form, the comparison map with minimal-norm representative
// search, and the subdivision-invariance check.
//
// The boundary of a nondegenerate n-cube is
//
//   boundary(sigma) = sum_{i=1..n} (-1)^i (d_{+i} sigma - d_{-i} sigma)
//
// with degenerate faces dropped (normalization), and the coboundary of a
// degree-n cochain evaluates on a nondegenerate (n+1)-cube sigma as
//
//   (delta c)(sigma) = sum_{i=1..n+1} (-1)^i (c(d_{+i} sigma) - c(d_{-i} sigma)),
//
// the bilinear transpose of the boundary one degree up. Cochains are stored
// on the nondegenerate basis only, which realizes the normalized complex:
// their value on every degenerate cube is identically zero, and evaluating
// the coboundary formula on a degenerate cube returns zero on its own.
//
// On a complex that is finite in every dimension each cochain has finite
// l_p norm for every p, so the l_p cochain complexes all coincide with the
// plain one; cohomology() therefore computes every l_p variant at once and
// the comparison map to ordinary cohomology is the identity on
// representatives, with norm data reported alongside.

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "cubetop/cubical_set.hpp"
#include "cubetop/smith.hpp"

namespace cubetop {

struct IntegerChainComplex {
  CSetPtr base;
  std::vector<std::vector<cube_id>> basis;  // [n] = nondegenerate n-cubes, ascending
  std::vector<std::vector<int>> pos;        // [n][cube] = basis position, or -1
  // boundary[n][j] = boundary of the j-th basis n-cube, as sorted
  // (position in basis[n-1], coefficient) pairs; boundary[0] is all empty.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> boundary;
};

// Builds the complex and checks boundary-of-boundary = 0.
IntegerChainComplex chains(const CSetPtr& C);

// Dense boundary matrix of degree n (rows = basis[n-1], cols = basis[n]) and
// its transpose, the coboundary matrix from degree n to n+1 (rows =
// basis[n+1], cols = basis[n]).
IntMat boundary_matrix(const IntegerChainComplex& X, int n);
IntMat coboundary_matrix(const IntegerChainComplex& X, int n);

struct CoefficientGroup {
  enum class Kind { integers, mod_m, rationals };
  enum class Seminorm { trivial, absolute, table };

  Kind kind = Kind::integers;
  long long modulus = 0;  // for mod_m; at least 2
  Seminorm seminorm = Seminorm::absolute;
  std::vector<mpq_class> table;  // size modulus, for Seminorm::table on mod_m
};

CoefficientGroup integer_coefficients();
CoefficientGroup rational_coefficients();
// Z/m with the representative-distance seminorm |k| = min(k, m - k).
CoefficientGroup mod_coefficients(long long m);

// Seminorm axioms: |0| = 0, |g| = |-g|, |g + h| <= |g| + |h|, entries
// nonnegative; verified entry-by-entry for tables, structural otherwise.
void validate_coefficients(const CoefficientGroup& pi);

// Seminorm of one coefficient value (of its residue class for mod_m).
mpq_class value_seminorm(const CoefficientGroup& pi, const mpq_class& v);

struct NormedCochain {
  int degree = 0;
  int p = 0;  // l_p exponent; 0 encodes the sup norm (p = infinity)
  CoefficientGroup coeff;
  std::vector<mpq_class> values;  // over basis[degree] of the chain complex
};

// Shape and value-range checks: integer values for Z, residues in [0, m) for
// Z/m, any rational for Q.
void validate_cochain(const IntegerChainComplex& X, const NormedCochain& c);

NormedCochain zero_cochain(const IntegerChainComplex& X, const CoefficientGroup& pi,
                           int degree, int p = 0);

// Value on an arbitrary cube of the cochain's degree; 0 on degenerate cubes.
mpq_class cochain_value(const IntegerChainComplex& X, const NormedCochain& c, cube_id cube);

NormedCochain coboundary(const NormedCochain& c, const IntegerChainComplex& X);
bool is_cocycle(const NormedCochain& c, const IntegerChainComplex& X);

// Exact l_p data: sup of value seminorms for p = 0, their sum for p = 1, and
// the unrooted p-th power sum for p >= 2.
mpq_class lp_norm(const NormedCochain& c);

// Pullback f^*(c) along f: A.base -> B.base of a degree-n cochain on B:
// value on a nondegenerate cube sigma of A.base is c(f(sigma)).
NormedCochain pullback_cochain(const CubicalFunction& f, const NormedCochain& c,
                               const IntegerChainComplex& A, const IntegerChainComplex& B);

struct CohomologyResult {
  int degree = 0;
  long long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
  // Representative cocycles for the torsion summands (matching `torsion`)
  // and for a basis of the free part, with their sup norms.
  std::vector<NormedCochain> torsion_reps;
  std::vector<NormedCochain> free_reps;
  std::vector<mpq_class> torsion_rep_norms;
  std::vector<mpq_class> free_rep_norms;
};

// H^degree(C; pi). The cocycle condition lives on (degree+1)-cubes, so the
// truncation must reach degree + 1; otherwise a ValidationError names the
// required dimension.
CohomologyResult cohomology(const CSetPtr& C, const CoefficientGroup& pi, int degree);

// Coordinates of a cocycle's class in the decomposition cohomology() reports:
// one coordinate per torsion factor (reduced into [0, factor)) followed by
// the free coordinates. For rational coefficients the free coordinates are
// rational and torsion is empty.
struct ClassCoordinates {
  std::vector<Int> torsion;
  std::vector<mpq_class> free_part;
  bool zero = true;
};

ClassCoordinates class_coordinates(const CSetPtr& C, const NormedCochain& c);

struct ComparisonResult {
  ClassCoordinates ordinary;  // the class, coordinates as in `groups`
  CohomologyResult groups;
  mpq_class linf;      // sup norm of the representative as given
  mpq_class min_linf;  // least sup norm found among class representatives
  NormedCochain minimizer;
  // True when the translate search space was fully enumerated: all residue
  // translates for finite coefficients (the minimum is then exact), the
  // integer box [-radius, radius]^{b_{n-1}} of coboundary coefficients for
  // Z and Q (the minimum is then exact within that box).
  bool search_complete = false;
};

// The comparison from l_p cohomology to ordinary cohomology applied to the
// class of c: on finite complexes the two complexes coincide, the map is the
// identity on representatives and an isomorphism; computed are the underlying
// class and the minimal-norm data recorded alongside.
ComparisonResult comparison_map(const CSetPtr& C, const NormedCochain& c, int radius = 2,
                                long long box_cap = 4'000'000);

struct SdInvarianceReport {
  CohomologyResult base;     // H^n(C)
  CohomologyResult subdiv;   // H^n(sd C)
  bool groups_match = false; // same free rank and invariant factors
  bool iso_minus = false;    // pullback along the lower-corner collapse
  bool iso_plus = false;     // pullback along the upper-corner collapse
  bool isomorphism = false;  // all of the above
};

// Checks that both collapse maps sd(C) -> C induce isomorphisms
// H^n(C; pi) -> H^n(sd C; pi), via generator images in SNF coordinates.
SdInvarianceReport sd_invariance_check(const CSetPtr& C, const CoefficientGroup& pi, int degree);

}  // namespace cubetop
