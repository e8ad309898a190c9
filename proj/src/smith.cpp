#include "cubetop/smith.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "cubetop/errors.hpp"

namespace cubetop {

IntMat identity_mat(int n) {
  IntMat I(n, n);
  for (int i = 0; i < n; i++) I.at(i, i) = 1;
  return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
  if (A.cols != B.rows) throw ValidationError("mat_mul: shape mismatch");
  IntMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; i++)
    for (int k = 0; k < A.cols; k++) {
      const Int& aik = A.at(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < B.cols; j++) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

IntMat mat_transpose(const IntMat& A) {
  IntMat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; i++)
    for (int j = 0; j < A.cols; j++) T.at(j, i) = A.at(i, j);
  return T;
}

namespace {

// Elementary operations applied to the working matrix with the transforms
// mirrored so that U * A_original * V = A_working stays true throughout:
// a row operation E on the left updates U <- E U and Uinv <- Uinv E^{-1},
// a column operation E on the right updates V <- V E and Vinv <- E^{-1} Vinv.
struct Worker {
  IntMat A;
  bool track_rows = false, track_cols = false;
  IntMat U, Uinv, V, Vinv;

  void swap_rows(int r, int s) {
    if (r == s) return;
    for (int j = 0; j < A.cols; j++) std::swap(A.at(r, j), A.at(s, j));
    if (!track_rows) return;
    for (int j = 0; j < U.cols; j++) std::swap(U.at(r, j), U.at(s, j));
    for (int i = 0; i < Uinv.rows; i++) std::swap(Uinv.at(i, r), Uinv.at(i, s));
  }

  void swap_cols(int c, int d) {
    if (c == d) return;
    for (int i = 0; i < A.rows; i++) std::swap(A.at(i, c), A.at(i, d));
    if (!track_cols) return;
    for (int i = 0; i < V.rows; i++) std::swap(V.at(i, c), V.at(i, d));
    for (int j = 0; j < Vinv.cols; j++) std::swap(Vinv.at(c, j), Vinv.at(d, j));
  }

  // row r += q * row s
  void add_row(int r, int s, const Int& q) {
    if (sgn(q) == 0) return;
    for (int j = 0; j < A.cols; j++) A.at(r, j) += q * A.at(s, j);
    if (!track_rows) return;
    for (int j = 0; j < U.cols; j++) U.at(r, j) += q * U.at(s, j);
    for (int i = 0; i < Uinv.rows; i++) Uinv.at(i, s) -= q * Uinv.at(i, r);
  }

  // col c += q * col d
  void add_col(int c, int d, const Int& q) {
    if (sgn(q) == 0) return;
    for (int i = 0; i < A.rows; i++) A.at(i, c) += q * A.at(i, d);
    if (!track_cols) return;
    for (int i = 0; i < V.rows; i++) V.at(i, c) += q * V.at(i, d);
    for (int j = 0; j < Vinv.cols; j++) Vinv.at(d, j) -= q * Vinv.at(c, j);
  }

  void negate_row(int r) {
    for (int j = 0; j < A.cols; j++) A.at(r, j) = -A.at(r, j);
    if (!track_rows) return;
    for (int j = 0; j < U.cols; j++) U.at(r, j) = -U.at(r, j);
    for (int i = 0; i < Uinv.rows; i++) Uinv.at(i, r) = -Uinv.at(i, r);
  }
};

// Round-to-nearest quotient, so one reduction step at least halves the
// remainder against the pivot. Floor division leaves a remainder on the
// divisor's side of zero, and raising the quotient by one flips it across,
// to |b| - |r| < |b| / 2; the same adjustment works for either sign of b.
Int near_quot(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

}  // namespace

SmithResult smith(IntMat A0, const SmithOptions& opt) {
  const int rows = A0.rows, cols = A0.cols, n = std::min(rows, cols);
  const bool check = opt.want_row_ops && opt.want_col_ops && opt.self_check;
  IntMat original;
  if (check) original = A0;
  Worker w;
  w.A = std::move(A0);
  w.track_rows = opt.want_row_ops;
  w.track_cols = opt.want_col_ops;
  if (w.track_rows) w.U = w.Uinv = identity_mat(rows);
  if (w.track_cols) w.V = w.Vinv = identity_mat(cols);
  IntMat& A = w.A;

  // One pass per diagonal position. Each position ends only when its pivot
  // divides every entry of the trailing block, so the divisibility chain
  // holds by construction and no global fix-up pass is needed.
  for (int t = 0; t < n; t++) {
    while (true) {
      // Move a smallest-magnitude nonzero entry of the trailing block to
      // (t, t); if the block is zero we are diagonal from here on.
      int pr = -1, pc = -1;
      for (int i = t; i < rows; i++)
        for (int j = t; j < cols; j++) {
          if (sgn(A.at(i, j)) == 0) continue;
          if (pr < 0 || mpz_cmpabs(A.at(i, j).get_mpz_t(), A.at(pr, pc).get_mpz_t()) < 0)
            pr = i, pc = j;
        }
      if (pr < 0) { t = n; break; }
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      // Alternately clear column t and row t; every nonzero remainder is
      // smaller than the current pivot, so re-pivoting makes progress.
      while (true) {
        bool dirty = false;
        for (int i = t + 1; i < rows; i++) {
          if (sgn(A.at(i, t)) == 0) continue;
          w.add_row(i, t, -near_quot(A.at(i, t), A.at(t, t)));
          if (sgn(A.at(i, t)) != 0) { w.swap_rows(t, i); dirty = true; }
        }
        for (int j = t + 1; j < cols; j++) {
          if (sgn(A.at(t, j)) == 0) continue;
          w.add_col(j, t, -near_quot(A.at(t, j), A.at(t, t)));
          if (sgn(A.at(t, j)) != 0) { w.swap_cols(t, j); dirty = true; }
        }
        if (!dirty) break;
      }
      // If the pivot misses some trailing entry, fold that row in and redo;
      // the Euclidean clearing then strictly shrinks the pivot.
      int br = -1;
      for (int i = t + 1; i < rows && br < 0; i++)
        for (int j = t + 1; j < cols && br < 0; j++)
          if (!mpz_divisible_p(A.at(i, j).get_mpz_t(), A.at(t, t).get_mpz_t())) br = i;
      if (br < 0) break;
      w.add_row(t, br, 1);
    }
    if (t >= n) break;
    if (sgn(A.at(t, t)) < 0) w.negate_row(t);
  }

  SmithResult out;
  out.diag.resize(n);
  for (int t = 0; t < n; t++) {
    out.diag[t] = A.at(t, t);
    if (sgn(out.diag[t]) != 0) out.rank++;
  }
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);

  if (check) {
    IntMat D(rows, cols);
    for (int t = 0; t < n; t++) D.at(t, t) = out.diag[t];
    if (A != D) throw ValidationError("smith: result is not diagonal");
    if (mat_mul(mat_mul(out.U, original), out.V) != D)
      throw ValidationError("smith: U A V does not recompose to the diagonal");
    if (mat_mul(mat_mul(out.Uinv, D), out.Vinv) != original)
      throw ValidationError("smith: Uinv diag Vinv does not recompose to the input");
  }

  return out;
}

int int_rank(IntMat A) {
  SmithOptions opt;
  opt.want_row_ops = opt.want_col_ops = opt.self_check = false;
  return smith(std::move(A), opt).rank;
}

}  // namespace cubetop
