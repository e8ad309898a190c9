#pragma once

// Smith normal form over the integers with transform bookkeeping.
//
// smith(A) drives A to a diagonal matrix diag(d_1, ..., d_r, 0, ...) with
// d_1 | d_2 | ... | d_r >= 1 by unimodular row and column operations. The
// transforms U, V and their inverses are accumulated on request, maintaining
//
//   U * A * V = diag      and      Uinv * diag * Vinv = A
//
// exactly, so callers can read a kernel basis off the trailing columns of V
// and change coordinates with Vinv without solving any system. The pivot is
// always a smallest-magnitude nonzero entry of the remaining block, which
// keeps entry growth tame at desk scale. Arithmetic is arbitrary-precision
// throughout; there is no overflow regime.

#include <gmpxx.h>

#include <vector>

namespace cubetop {

using Int = mpz_class;

// Dense row-major matrix with explicit shape (a 0 x n and an m x 0 matrix
// are different objects; both occur as boundary matrices of edge degrees).
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const IntMat&) const = default;
};

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat& A, const IntMat& B);
IntMat mat_transpose(const IntMat& A);

struct SmithOptions {
  bool want_row_ops = true;  // accumulate U and Uinv
  bool want_col_ops = true;  // accumulate V and Vinv
  // With both transform pairs tracked, re-multiply and compare U A V against
  // the diagonal and Uinv diag Vinv against A before returning.
  bool self_check = true;
};

struct SmithResult {
  std::vector<Int> diag;  // length min(rows, cols); nonnegative; d_i | d_{i+1}
  int rank = 0;           // number of nonzero diagonal entries
  IntMat U, Uinv;         // rows x rows; empty when row ops are not tracked
  IntMat V, Vinv;         // cols x cols; empty when col ops are not tracked
};

SmithResult smith(IntMat A, const SmithOptions& opt = {});

// Rank over the rationals = number of nonzero invariant factors.
int int_rank(IntMat A);

}  // namespace cubetop
