#pragma once

// Independent oracles for the test suites. Everything in this header works on
// raw function tables, bitmasks and small integer matrices, and deliberately
// shares no code with the library's canonical-form algebra or its action
// machinery: when a test compares library output against an oracle here, the
// two sides were computed by genuinely different routes.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// A morphism {0,1}^m -> {0,1}^n recorded extensionally: values[x] is the
// image bitmask of vertex bitmask x.
struct FnTable {
  int m = 0;
  int n = 0;
  std::vector<std::uint32_t> values;

  bool operator<(const FnTable& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return values < o.values;
  }
  bool operator==(const FnTable& o) const = default;
};

inline FnTable fn_identity(int m) {
  FnTable t{m, m, {}};
  t.values.resize(std::size_t{1} << m);
  for (std::uint32_t x = 0; x < t.values.size(); ++x) t.values[x] = x;
  return t;
}

// Insert a constant bit (value sign) at 1-based position i: {0,1}^n -> {0,1}^{n+1}.
inline FnTable fn_face(int n, int i, int sign) {
  FnTable t{n, n + 1, {}};
  t.values.resize(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < t.values.size(); ++x) {
    std::uint32_t low = x & ((1u << (i - 1)) - 1u);
    std::uint32_t high = x >> (i - 1);
    t.values[x] = low | (static_cast<std::uint32_t>(sign) << (i - 1)) | (high << i);
  }
  return t;
}

// Drop bit i: {0,1}^n -> {0,1}^{n-1}.
inline FnTable fn_collapse(int n, int i) {
  FnTable t{n, n - 1, {}};
  t.values.resize(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < t.values.size(); ++x) {
    std::uint32_t low = x & ((1u << (i - 1)) - 1u);
    std::uint32_t high = x >> i;
    t.values[x] = low | (high << (i - 1));
  }
  return t;
}

// OR bits i and i+1 into one bit: {0,1}^n -> {0,1}^{n-1}.
inline FnTable fn_connection(int n, int i) {
  FnTable t{n, n - 1, {}};
  t.values.resize(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < t.values.size(); ++x) {
    std::uint32_t b = ((x >> (i - 1)) | (x >> i)) & 1u;
    std::uint32_t low = x & ((1u << (i - 1)) - 1u);
    std::uint32_t high = x >> (i + 1);
    t.values[x] = low | (b << (i - 1)) | (high << i);
  }
  return t;
}

inline FnTable fn_compose(const FnTable& g, const FnTable& f) {
  FnTable t{f.m, g.n, {}};
  t.values.resize(f.values.size());
  for (std::size_t x = 0; x < f.values.size(); ++x) t.values[x] = g.values[f.values[x]];
  return t;
}

inline FnTable fn_tensor(const FnTable& f, const FnTable& g) {
  FnTable t{f.m + g.m, f.n + g.n, {}};
  t.values.resize(std::size_t{1} << t.m);
  for (std::uint32_t x = 0; x < t.values.size(); ++x) {
    std::uint32_t xf = x & ((1u << f.m) - 1u);
    std::uint32_t xg = x >> f.m;
    t.values[x] = f.values[xf] | (g.values[xg] << f.n);
  }
  return t;
}

// Brute-force closure of {identities, faces, collapses, connections} under
// composition and tensor, over objects of arity <= max_arity. Returns the
// reachable hom-sets keyed by (m, n).
inline std::map<std::pair<int, int>, std::set<FnTable>> generator_closure(int max_arity) {
  std::map<std::pair<int, int>, std::set<FnTable>> hom;
  auto add = [&](const FnTable& t) { return hom[{t.m, t.n}].insert(t).second; };
  for (int a = 0; a <= max_arity; ++a) add(fn_identity(a));
  for (int a = 0; a < max_arity; ++a)
    for (int i = 1; i <= a + 1; ++i)
      for (int sign = 0; sign <= 1; ++sign) add(fn_face(a, i, sign));
  for (int a = 1; a <= max_arity; ++a)
    for (int i = 1; i <= a; ++i) add(fn_collapse(a, i));
  for (int a = 2; a <= max_arity; ++a)
    for (int i = 1; i < a; ++i) add(fn_connection(a, i));

  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = hom;  // iterate a stable copy while inserting into hom
    for (const auto& [ab, fs] : snapshot)
      for (const auto& [cd, gs] : snapshot) {
        if (ab.second == cd.first)
          for (const FnTable& f : fs)
            for (const FnTable& g : gs)
              if (add(fn_compose(g, f))) changed = true;
        if (ab.first + cd.first <= max_arity && ab.second + cd.second <= max_arity)
          for (const FnTable& f : fs)
            for (const FnTable& g : gs)
              if (add(fn_tensor(f, g))) changed = true;
      }
  }
  return hom;
}

// Closed-form morphism count: choose which k of the n output coordinates are
// sups, signs for the rest, then a used subset of the m inputs split into k
// order-respecting blocks.
inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

inline long long morphism_count(int m, int n) {
  long long total = 0;
  for (int k = 0; k <= n; ++k) {
    long long inner = 0;
    if (k == 0)
      inner = 1;
    else
      for (int u = k; u <= m; ++u) inner += binomial(m, u) * binomial(u - 1, k - 1);
    long long signs = 1;
    for (int t = 0; t < n - k; ++t) signs *= 2;
    total += binomial(n, k) * signs * inner;
  }
  return total;
}

}  // namespace oracle
