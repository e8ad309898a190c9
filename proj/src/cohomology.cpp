#include "cubetop/cohomology.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>

#include "cubetop/subdivision.hpp"

namespace cubetop {

IntegerChainComplex chains(const CSetPtr& C) {
  IntegerChainComplex X;
  X.base = C;
  X.basis.resize(C->dim + 1);
  X.pos.resize(C->dim + 1);
  X.boundary.resize(C->dim + 1);
  for (int n = 0; n <= C->dim; n++) {
    X.basis[n] = C->nondeg[n];
    X.pos[n].assign(C->cube_count[n], -1);
    for (std::size_t j = 0; j < X.basis[n].size(); j++) X.pos[n][X.basis[n][j]] = static_cast<int>(j);
  }
  for (int n = 1; n <= C->dim; n++) {
    X.boundary[n].resize(X.basis[n].size());
    for (std::size_t j = 0; j < X.basis[n].size(); j++) {
      const cube_id s = X.basis[n][j];
      std::map<int, int> acc;
      int sign = -1;  // (-1)^i, starting at i = 1
      for (int i = 1; i <= n; i++, sign = -sign) {
        if (int p = X.pos[n - 1][C->face[n][i - 1][1][s]]; p >= 0) acc[p] += sign;
        if (int p = X.pos[n - 1][C->face[n][i - 1][0][s]]; p >= 0) acc[p] -= sign;
      }
      for (const auto& [p, coef] : acc)
        if (coef != 0) X.boundary[n][j].push_back({p, coef});
    }
  }
  // boundary o boundary = 0, composed sparsely one basis cube at a time.
  for (int n = 2; n <= C->dim; n++)
    for (std::size_t j = 0; j < X.basis[n].size(); j++) {
      std::map<int, int> acc;
      for (const auto& [p, c] : X.boundary[n][j])
        for (const auto& [q, d] : X.boundary[n - 1][p]) acc[q] += c * d;
      for (const auto& [q, v] : acc)
        if (v != 0)
          throw ValidationError("chains: boundary of boundary is nonzero in degree " +
                                std::to_string(n));
    }
  return X;
}

IntMat boundary_matrix(const IntegerChainComplex& X, int n) {
  if (n < 1 || n > X.base->dim) throw ValidationError("boundary_matrix: degree out of range");
  IntMat M(static_cast<int>(X.basis[n - 1].size()), static_cast<int>(X.basis[n].size()));
  for (int j = 0; j < M.cols; j++)
    for (const auto& [p, coef] : X.boundary[n][j]) M.at(p, j) = coef;
  return M;
}

IntMat coboundary_matrix(const IntegerChainComplex& X, int n) {
  const int b_n = static_cast<int>(X.basis[n].size());
  if (n + 1 > X.base->dim) return IntMat(0, b_n);
  return mat_transpose(boundary_matrix(X, n + 1));
}

CoefficientGroup integer_coefficients() { return CoefficientGroup{}; }

CoefficientGroup rational_coefficients() {
  CoefficientGroup pi;
  pi.kind = CoefficientGroup::Kind::rationals;
  return pi;
}

CoefficientGroup mod_coefficients(long long m) {
  CoefficientGroup pi;
  pi.kind = CoefficientGroup::Kind::mod_m;
  pi.modulus = m;
  return pi;
}

void validate_coefficients(const CoefficientGroup& pi) {
  using K = CoefficientGroup::Kind;
  using S = CoefficientGroup::Seminorm;
  if (pi.kind == K::mod_m) {
    if (pi.modulus < 2) throw ValidationError("coefficients: modulus must be at least 2");
  } else {
    if (pi.modulus != 0) throw ValidationError("coefficients: modulus only applies to Z/m");
    if (pi.seminorm == S::table)
      throw ValidationError("coefficients: seminorm tables only apply to Z/m");
  }
  if (pi.seminorm != S::table) {
    if (!pi.table.empty()) throw ValidationError("coefficients: unexpected seminorm table");
    return;
  }
  const long long m = pi.modulus;
  if (static_cast<long long>(pi.table.size()) != m)
    throw ValidationError("coefficients: seminorm table must have one entry per residue");
  if (pi.table[0] != 0) throw ValidationError("coefficients: seminorm of 0 must be 0");
  for (long long g = 0; g < m; g++) {
    if (pi.table[g] < 0) throw ValidationError("coefficients: seminorm entries must be nonnegative");
    if (pi.table[g] != pi.table[(m - g) % m])
      throw ValidationError("coefficients: seminorm must be symmetric under negation");
    for (long long h = 0; h < m; h++)
      if (pi.table[(g + h) % m] > pi.table[g] + pi.table[h])
        throw ValidationError("coefficients: seminorm violates the triangle inequality");
  }
}

namespace {

// Residue of an integer-valued rational in [0, m).
Int residue(const mpq_class& v, long long m) {
  if (v.get_den() != 1) throw ValidationError("coefficients: residue of a non-integer");
  Int r;
  Int mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), v.get_num().get_mpz_t(), mm.get_mpz_t());
  return r;
}

}  // namespace

mpq_class value_seminorm(const CoefficientGroup& pi, const mpq_class& v) {
  using K = CoefficientGroup::Kind;
  using S = CoefficientGroup::Seminorm;
  switch (pi.seminorm) {
    case S::trivial:
      return 0;
    case S::absolute:
      if (pi.kind == K::mod_m) {
        Int r = residue(v, pi.modulus);
        Int other = Int(static_cast<long>(pi.modulus)) - r;
        return mpq_class(r < other ? r : other);
      }
      return abs(v);
    case S::table: {
      Int r = residue(v, pi.modulus);
      return pi.table[r.get_ui()];
    }
  }
  throw ValidationError("coefficients: unknown seminorm");
}

void validate_cochain(const IntegerChainComplex& X, const NormedCochain& c) {
  validate_coefficients(c.coeff);
  if (c.degree < 0 || c.degree > X.base->dim)
    throw ValidationError("cochain: degree outside the truncation");
  if (c.p < 0) throw ValidationError("cochain: negative norm exponent");
  if (c.values.size() != X.basis[c.degree].size())
    throw ValidationError("cochain: values must cover the nondegenerate basis");
  using K = CoefficientGroup::Kind;
  for (const mpq_class& v : c.values) {
    if (c.coeff.kind == K::rationals) continue;
    if (v.get_den() != 1) throw ValidationError("cochain: values must be integers");
    if (c.coeff.kind == K::mod_m &&
        (v < 0 || v >= mpq_class(static_cast<long>(c.coeff.modulus))))
      throw ValidationError("cochain: values must be residues in [0, m)");
  }
}

NormedCochain zero_cochain(const IntegerChainComplex& X, const CoefficientGroup& pi, int degree,
                           int p) {
  NormedCochain c;
  c.degree = degree;
  c.p = p;
  c.coeff = pi;
  c.values.assign(X.basis[degree].size(), mpq_class(0));
  validate_cochain(X, c);
  return c;
}

mpq_class cochain_value(const IntegerChainComplex& X, const NormedCochain& c, cube_id cube) {
  const int p = X.pos[c.degree][cube];
  return p < 0 ? mpq_class(0) : c.values[p];
}

NormedCochain coboundary(const NormedCochain& c, const IntegerChainComplex& X) {
  validate_cochain(X, c);
  const int n = c.degree;
  if (n + 1 > X.base->dim)
    throw ValidationError("coboundary: needs truncation dimension " + std::to_string(n + 1) +
                          ", the set is truncated at " + std::to_string(X.base->dim));
  NormedCochain d;
  d.degree = n + 1;
  d.p = c.p;
  d.coeff = c.coeff;
  d.values.assign(X.basis[n + 1].size(), mpq_class(0));
  for (std::size_t t = 0; t < d.values.size(); t++) {
    mpq_class v = 0;
    for (const auto& [p, coef] : X.boundary[n + 1][t]) v += coef * c.values[p];
    if (c.coeff.kind == CoefficientGroup::Kind::mod_m) v = mpq_class(residue(v, c.coeff.modulus));
    d.values[t] = v;
  }
  return d;
}

bool is_cocycle(const NormedCochain& c, const IntegerChainComplex& X) {
  validate_cochain(X, c);
  if (c.degree + 1 > X.base->dim) return true;  // no condition within the truncation
  NormedCochain d = coboundary(c, X);
  for (const mpq_class& v : d.values)
    if (v != 0) return false;
  return true;
}

mpq_class lp_norm(const NormedCochain& c) {
  mpq_class out = 0;
  for (const mpq_class& v : c.values) {
    mpq_class s = value_seminorm(c.coeff, v);
    if (c.p == 0) {
      if (s > out) out = s;
    } else if (c.p == 1) {
      out += s;
    } else {
      // p-th power sum, reported unrooted
      mpq_class pw = 1;
      for (int i = 0; i < c.p; i++) pw *= s;
      out += pw;
    }
  }
  return out;
}

NormedCochain pullback_cochain(const CubicalFunction& f, const NormedCochain& c,
                               const IntegerChainComplex& A, const IntegerChainComplex& B) {
  if (f.src != A.base || f.dst != B.base)
    throw ValidationError("pullback_cochain: function endpoints do not match the complexes");
  validate_cochain(B, c);
  const int n = c.degree;
  if (n > A.base->dim) throw ValidationError("pullback_cochain: degree above the source truncation");
  NormedCochain out;
  out.degree = n;
  out.p = c.p;
  out.coeff = c.coeff;
  out.values.resize(A.basis[n].size());
  for (std::size_t j = 0; j < A.basis[n].size(); j++)
    out.values[j] = cochain_value(B, c, f.map[n][A.basis[n][j]]);
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology by Smith normal form.
//
// Write D_n for the coboundary matrix out of degree n and D_{n-1} for the one
// in. Column-reducing D_n (U D_n V = diag(d)) makes the trailing columns of V
// a kernel basis; the image of D_{n-1} lies in that kernel, and its
// coordinates there present H^n as a cokernel whose own Smith form lists the
// invariant factors. Over Z/m the kernel of D_n mod m is the lattice spanned
// by V * diag(s) with s_i = m / gcd(d_i, m), and H^n is that lattice modulo
// the image of D_{n-1} together with m times the standard lattice.

namespace {

struct DegreeAnalysis {
  CoefficientGroup pi;
  int n = 0;
  IntegerChainComplex X;
  int b_n = 0, b_prev = 0;
  SmithResult out;  // deduplicated D_n, column transforms only
  int kernel = 0;   // b_n - out.rank

  // integers / rationals
  SmithResult quo;  // K = trailing rows of Vinv * D_{n-1}, full transforms

  // mod m
  std::vector<Int> scale;  // s_i, size b_n
  SmithResult quo_m;       // presentation of the quotient, row transforms
};

// Coboundary rows with zero rows and exact repeats dropped: the row lattice,
// and with it the kernel, rank and invariant factors, is unchanged, and the
// group-nerve matrices shrink by an order of magnitude.
IntMat dedup_coboundary(const IntegerChainComplex& X, int n) {
  const int b_n = static_cast<int>(X.basis[n].size());
  std::set<std::vector<int>> rows;
  if (n + 1 <= X.base->dim)
    for (const auto& sparse : X.boundary[n + 1]) {
      if (sparse.empty()) continue;
      std::vector<int> row(b_n, 0);
      for (const auto& [p, coef] : sparse) row[p] = coef;
      rows.insert(std::move(row));
    }
  IntMat M(static_cast<int>(rows.size()), b_n);
  int r = 0;
  for (const auto& row : rows) {
    for (int j = 0; j < b_n; j++) M.at(r, j) = row[j];
    r++;
  }
  return M;
}

std::vector<Int> mat_vec(const IntMat& A, const std::vector<Int>& x) {
  std::vector<Int> y(A.rows);
  for (int i = 0; i < A.rows; i++)
    for (int j = 0; j < A.cols; j++)
      if (sgn(A.at(i, j)) != 0 && sgn(x[j]) != 0) y[i] += A.at(i, j) * x[j];
  return y;
}

DegreeAnalysis analyze(const CSetPtr& C, const CoefficientGroup& pi, int n) {
  validate_coefficients(pi);
  if (n < 0) throw ValidationError("cohomology: negative degree");
  if (C->dim < n + 1)
    throw ValidationError("cohomology: degree " + std::to_string(n) +
                          " needs truncation dimension " + std::to_string(n + 1) +
                          ", the set is truncated at " + std::to_string(C->dim));
  DegreeAnalysis d;
  d.pi = pi;
  d.n = n;
  d.X = chains(C);
  d.b_n = static_cast<int>(d.X.basis[n].size());
  d.b_prev = n == 0 ? 0 : static_cast<int>(d.X.basis[n - 1].size());

  SmithOptions colside;
  colside.want_row_ops = false;
  colside.self_check = false;
  d.out = smith(dedup_coboundary(d.X, n), colside);
  d.kernel = d.b_n - d.out.rank;

  IntMat Dprev = n == 0 ? IntMat(d.b_n, 0) : coboundary_matrix(d.X, n - 1);
  IntMat VinvD = mat_mul(d.out.Vinv, Dprev);

  using K = CoefficientGroup::Kind;
  if (pi.kind != K::mod_m) {
    // Rows under the rank must vanish: the image of D_{n-1} is made of
    // cocycles, so its pivot coordinates against D_n are zero.
    for (int i = 0; i < d.out.rank; i++)
      for (int j = 0; j < VinvD.cols; j++)
        if (sgn(VinvD.at(i, j)) != 0)
          throw ValidationError("cohomology: incoming coboundary is not a cocycle");
    IntMat Kmat(d.kernel, d.b_prev);
    for (int i = 0; i < d.kernel; i++)
      for (int j = 0; j < d.b_prev; j++) Kmat.at(i, j) = VinvD.at(d.out.rank + i, j);
    d.quo = smith(std::move(Kmat));
    return d;
  }

  const Int m(static_cast<long>(pi.modulus));
  d.scale.assign(d.b_n, Int(1));
  for (int i = 0; i < d.b_n; i++) {
    Int di = i < static_cast<int>(d.out.diag.size()) ? d.out.diag[i] : Int(0);
    Int g = gcd(di, m);
    d.scale[i] = m / g;
  }
  // Presentation of (kernel of D_n mod m) / (image of D_{n-1} + m Z^{b_n}) in
  // the coordinates of the kernel lattice basis V * diag(s).
  IntMat Z(d.b_n, d.b_prev + d.b_n);
  for (int j = 0; j < d.b_prev; j++)
    for (int i = 0; i < d.b_n; i++) {
      if (!mpz_divisible_p(VinvD.at(i, j).get_mpz_t(), d.scale[i].get_mpz_t()))
        throw ValidationError("cohomology: incoming coboundary escapes the mod-m kernel lattice");
      Z.at(i, j) = VinvD.at(i, j) / d.scale[i];
    }
  for (int j = 0; j < d.b_n; j++)
    for (int i = 0; i < d.b_n; i++) {
      Int v = m * d.out.Vinv.at(i, j);
      Z.at(i, d.b_prev + j) = v / d.scale[i];  // s_i | m, so this is exact
    }
  SmithOptions rowside;
  rowside.want_col_ops = false;
  rowside.self_check = false;
  d.quo_m = smith(std::move(Z), rowside);
  if (d.quo_m.rank != d.b_n)
    throw ValidationError("cohomology: mod-m quotient failed to be finite");
  for (const Int& e : d.quo_m.diag)
    if (sgn(e) != 0 && !mpz_divisible_p(m.get_mpz_t(), e.get_mpz_t()))
      throw ValidationError("cohomology: mod-m invariant factor does not divide the modulus");
  return d;
}

NormedCochain package_rep(const DegreeAnalysis& d, const std::vector<Int>& x) {
  NormedCochain c;
  c.degree = d.n;
  c.p = 0;
  c.coeff = d.pi;
  c.values.resize(x.size());
  const bool modm = d.pi.kind == CoefficientGroup::Kind::mod_m;
  for (std::size_t i = 0; i < x.size(); i++)
    c.values[i] = modm ? mpq_class(residue(mpq_class(x[i]), d.pi.modulus)) : mpq_class(x[i]);
  return c;
}

CohomologyResult package(const DegreeAnalysis& d) {
  CohomologyResult out;
  out.degree = d.n;
  using K = CoefficientGroup::Kind;

  auto add_rep = [&](bool torsion_rep, const std::vector<Int>& coords, const IntMat& basis_mat) {
    NormedCochain c = package_rep(d, mat_vec(basis_mat, coords));
    if (torsion_rep) {
      out.torsion_reps.push_back(c);
      out.torsion_rep_norms.push_back(lp_norm(c));
    } else {
      out.free_reps.push_back(c);
      out.free_rep_norms.push_back(lp_norm(c));
    }
  };

  if (d.pi.kind == K::mod_m) {
    // Generators of the finite quotient: columns of Uinv against factors > 1.
    IntMat L(d.b_n, d.b_n);  // kernel lattice basis V * diag(s)
    for (int i = 0; i < d.b_n; i++)
      for (int j = 0; j < d.b_n; j++) L.at(i, j) = d.out.V.at(i, j) * d.scale[j];
    for (int i = 0; i < d.b_n; i++) {
      const Int& e = d.quo_m.diag[i];
      if (e == 1) continue;
      out.torsion.push_back(e);
      std::vector<Int> coords(d.b_n);
      for (int r = 0; r < d.b_n; r++) coords[r] = d.quo_m.Uinv.at(r, i);
      add_rep(true, coords, L);
    }
    return out;
  }

  IntMat Bker(d.b_n, d.kernel);
  for (int i = 0; i < d.b_n; i++)
    for (int g = 0; g < d.kernel; g++) Bker.at(i, g) = d.out.V.at(i, d.out.rank + g);

  auto uinv_col = [&](int i) {
    std::vector<Int> z(d.kernel);
    for (int r = 0; r < d.kernel; r++) z[r] = d.quo.Uinv.at(r, i);
    return z;
  };
  out.free_rank = d.kernel - d.quo.rank;
  if (d.pi.kind == K::integers)
    for (int i = 0; i < d.quo.rank; i++)
      if (d.quo.diag[i] > 1) {
        out.torsion.push_back(d.quo.diag[i]);
        add_rep(true, uinv_col(i), Bker);
      }
  for (int i = d.quo.rank; i < d.kernel; i++) add_rep(false, uinv_col(i), Bker);
  return out;
}

// Integer coordinates of a cocycle in the quotient presentation; the caller
// scales rational inputs beforehand.
std::vector<Int> raw_coords(const DegreeAnalysis& d, const std::vector<Int>& x) {
  std::vector<Int> y = mat_vec(d.out.Vinv, x);
  if (d.pi.kind == CoefficientGroup::Kind::mod_m) {
    std::vector<Int> z(d.b_n);
    for (int i = 0; i < d.b_n; i++) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), d.scale[i].get_mpz_t()))
        throw ValidationError("class_coordinates: cocycle escapes the mod-m kernel lattice");
      z[i] = y[i] / d.scale[i];
    }
    return mat_vec(d.quo_m.U, z);
  }
  for (int i = 0; i < d.out.rank; i++)
    if (sgn(y[i]) != 0) throw ValidationError("class_coordinates: not a cocycle");
  std::vector<Int> z(y.begin() + d.out.rank, y.end());
  return mat_vec(d.quo.U, z);
}

ClassCoordinates coords_of(const DegreeAnalysis& d, const NormedCochain& c) {
  validate_cochain(d.X, c);
  if (c.degree != d.n) throw ValidationError("class_coordinates: degree mismatch");
  if (!is_cocycle(c, d.X)) throw ValidationError("class_coordinates: not a cocycle");
  using K = CoefficientGroup::Kind;

  ClassCoordinates out;
  Int scale = 1;  // common denominator for rational inputs
  if (d.pi.kind == K::rationals)
    for (const mpq_class& v : c.values) scale = lcm(scale, Int(v.get_den()));
  std::vector<Int> x(c.values.size());
  for (std::size_t i = 0; i < c.values.size(); i++) {
    mpq_class v = c.values[i] * mpq_class(scale);
    x[i] = v.get_num();
  }
  std::vector<Int> w = raw_coords(d, x);

  if (d.pi.kind == K::mod_m) {
    for (int i = 0; i < d.b_n; i++) {
      const Int& e = d.quo_m.diag[i];
      if (e == 1) continue;
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), w[i].get_mpz_t(), e.get_mpz_t());
      out.torsion.push_back(r);
      if (sgn(r) != 0) out.zero = false;
    }
    return out;
  }

  for (int i = 0; i < d.quo.rank; i++) {
    if (d.pi.kind == K::rationals) continue;  // torsion dies rationally
    if (d.quo.diag[i] > 1) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), w[i].get_mpz_t(), d.quo.diag[i].get_mpz_t());
      out.torsion.push_back(r);
      if (sgn(r) != 0) out.zero = false;
    }
  }
  for (int i = d.quo.rank; i < d.kernel; i++) {
    mpq_class f = mpq_class(w[i]) / mpq_class(scale);
    f.canonicalize();
    out.free_part.push_back(f);
    if (f != 0) out.zero = false;
  }
  return out;
}

}  // namespace

CohomologyResult cohomology(const CSetPtr& C, const CoefficientGroup& pi, int degree) {
  return package(analyze(C, pi, degree));
}

ClassCoordinates class_coordinates(const CSetPtr& C, const NormedCochain& c) {
  return coords_of(analyze(C, c.coeff, c.degree), c);
}

ComparisonResult comparison_map(const CSetPtr& C, const NormedCochain& c, int radius,
                                long long box_cap) {
  if (radius < 0) throw ValidationError("comparison_map: negative search radius");
  if (box_cap < 1) throw ValidationError("comparison_map: search cap must be positive");
  DegreeAnalysis d = analyze(C, c.coeff, c.degree);
  ComparisonResult out;
  out.ordinary = coords_of(d, c);
  out.groups = package(d);

  NormedCochain sup = c;
  sup.p = 0;
  out.linf = lp_norm(sup);
  out.min_linf = out.linf;
  out.minimizer = sup;

  if (d.n == 0 || d.b_prev == 0) {
    out.search_complete = true;  // no coboundaries to translate by
    return out;
  }

  // Translate search over the coboundary lattice: z runs over degree-(n-1)
  // cochains, the candidate is c + coboundary(z). For finite coefficients
  // every residue vector is tried, so the minimum is exact; over Z and Q the
  // z-entries run over an integer box.
  const bool modm = c.coeff.kind == CoefficientGroup::Kind::mod_m;
  const long long span = modm ? c.coeff.modulus : 2LL * radius + 1;
  long long total = 1;
  for (int i = 0; i < d.b_prev; i++) {
    if (total > box_cap / span) {
      out.search_complete = false;
      return out;
    }
    total *= span;
  }

  NormedCochain zc = zero_cochain(d.X, c.coeff, d.n - 1, 0);
  for (long long step = 0; step < total; step++) {
    long long rem = step;
    for (int i = 0; i < d.b_prev; i++) {
      long long digit = rem % span;
      rem /= span;
      zc.values[i] = mpq_class(static_cast<long>(modm ? digit : digit - radius));
    }
    NormedCochain t = coboundary(zc, d.X);
    NormedCochain cand = sup;
    for (std::size_t i = 0; i < cand.values.size(); i++) {
      cand.values[i] += t.values[i];
      if (modm) cand.values[i] = mpq_class(residue(cand.values[i], c.coeff.modulus));
    }
    mpq_class norm = lp_norm(cand);
    if (norm < out.min_linf) {
      out.min_linf = norm;
      out.minimizer = cand;
    }
  }
  out.search_complete = true;
  return out;
}

SdInvarianceReport sd_invariance_check(const CSetPtr& C, const CoefficientGroup& pi, int degree) {
  SdInvarianceReport rep;
  DegreeAnalysis base = analyze(C, pi, degree);
  rep.base = package(base);

  SdSet S = sd(C);
  DegreeAnalysis fine = analyze(S.set, pi, degree);
  rep.subdiv = package(fine);

  rep.groups_match = rep.base.free_rank == rep.subdiv.free_rank &&
                     rep.base.torsion == rep.subdiv.torsion;

  const int t = static_cast<int>(rep.subdiv.torsion.size());
  const int f = static_cast<int>(rep.subdiv.free_rank);
  auto surjective = [&](const CubicalFunction& g) {
    std::vector<const NormedCochain*> gens;
    for (const auto& r : rep.base.torsion_reps) gens.push_back(&r);
    for (const auto& r : rep.base.free_reps) gens.push_back(&r);
    const int gcount = static_cast<int>(gens.size());
    std::vector<ClassCoordinates> img;
    for (const NormedCochain* gen : gens) {
      NormedCochain pulled = pullback_cochain(g, *gen, fine.X, base.X);
      if (!is_cocycle(pulled, fine.X))
        throw ValidationError("sd_invariance_check: pullback of a cocycle failed to be one");
      img.push_back(coords_of(fine, pulled));
    }
    if (pi.kind == CoefficientGroup::Kind::rationals) {
      // Over Q surjectivity is a rank condition; clearing each column's
      // denominators rescales columns and leaves the rank alone.
      IntMat R(f, gcount);
      for (int j = 0; j < gcount; j++) {
        Int lam = 1;
        for (int i = 0; i < f; i++) lam = lcm(lam, Int(img[j].free_part[i].get_den()));
        for (int i = 0; i < f; i++) {
          mpq_class v = img[j].free_part[i] * mpq_class(lam);
          v.canonicalize();
          R.at(i, j) = v.get_num();
        }
      }
      return int_rank(std::move(R)) == f;
    }
    // Images in SNF coordinates of H^degree(sd C), as columns, next to the
    // relations of the torsion coordinates; the span is everything exactly
    // when every invariant factor of the stacked matrix is 1. A surjective
    // endomorphism of a finitely generated abelian group onto an isomorphic
    // copy is an isomorphism, so this settles injectivity too.
    IntMat M(t + f, gcount + t);
    for (int j = 0; j < gcount; j++) {
      for (int i = 0; i < t; i++) M.at(i, j) = img[j].torsion[i];
      for (int i = 0; i < f; i++) M.at(t + i, j) = Int(img[j].free_part[i].get_num());
    }
    for (int i = 0; i < t; i++) M.at(i, gcount + i) = rep.subdiv.torsion[i];
    SmithOptions fast;
    fast.want_row_ops = fast.want_col_ops = fast.self_check = false;
    SmithResult s = smith(std::move(M), fast);
    if (s.rank != t + f) return false;
    for (int i = 0; i < s.rank; i++)
      if (s.diag[i] != 1) return false;
    return true;
  };

  rep.iso_minus = surjective(gamma(0, S));
  rep.iso_plus = surjective(gamma(1, S));
  rep.isomorphism = rep.groups_match && rep.iso_minus && rep.iso_plus;
  return rep;
}

}  // namespace cubetop
