#pragma once

// Brute-force reference implementation. Plain int tables, definitions
// written out literally, no pruning; only used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "obci/structure.hpp"

namespace oracle {

struct Alg {
  int n = 0;
  int unit = 0;
  std::vector<int> op;    // op[x * n + y] = x -> y
  std::vector<char> leq;  // leq[x * n + y] = x <= y

  int f(int x, int y) const { return op[x * n + y]; }
  bool le(int x, int y) const { return leq[x * n + y] != 0; }
  bool pos(int z) const { return le(unit, z); }

  friend bool operator==(const Alg&, const Alg&) = default;
  friend auto operator<=>(const Alg& a, const Alg& b) {
    if (auto c = a.op <=> b.op; c != 0) return c;
    return a.leq <=> b.leq;
  }
};

inline Alg from(const obci::RawStructure& s) {
  Alg a;
  a.n = static_cast<int>(s.size());
  a.unit = s.unit();
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      a.op.push_back(s.op(static_cast<obci::Elem>(x), static_cast<obci::Elem>(y)));
      a.leq.push_back(s.leq(static_cast<obci::Elem>(x), static_cast<obci::Elem>(y)) ? 1 : 0);
    }
  }
  return a;
}

inline bool axiom1(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      for (int z = 0; z < a.n; ++z)
        if (!a.pos(a.f(a.f(x, y), a.f(a.f(y, z), a.f(x, z))))) return false;
  return true;
}

inline bool axiom2(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (!a.pos(a.f(x, a.f(a.f(x, y), y)))) return false;
  return true;
}

inline bool axiom3(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    if (!a.pos(a.f(x, x))) return false;
  return true;
}

inline bool axiom4(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.pos(a.f(x, y)) && a.pos(a.f(y, x)) && x != y) return false;
  return true;
}

inline bool axiom5(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.le(x, y) != a.pos(a.f(x, y))) return false;
  return true;
}

inline bool axiom6(const Alg& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.pos(x) && a.le(x, y) && !a.pos(y)) return false;
  return true;
}

inline bool is_obci(const Alg& a) {
  return axiom5(a) && axiom1(a) && axiom2(a) && axiom3(a) && axiom4(a) && axiom6(a);
}

/// Every op table and every relation on {0..n-1}, unit 0, kept when all six
/// axioms hold. Sorted.
inline std::vector<Alg> naive_enumerate(int n) {
  const int cells = n * n;
  std::int64_t tables = 1;
  for (int i = 0; i < cells; ++i) tables *= n;
  std::vector<Alg> out;
  Alg a;
  a.n = n;
  a.op.assign(cells, 0);
  a.leq.assign(cells, 0);
  for (std::int64_t t = 0; t < tables; ++t) {
    std::int64_t r = t;
    for (int i = 0; i < cells; ++i) {
      a.op[i] = static_cast<int>(r % n);
      r /= n;
    }
    for (std::uint32_t rel = 0; rel < (1U << cells); ++rel) {
      for (int i = 0; i < cells; ++i) a.leq[i] = (rel >> i) & 1U;
      if (is_obci(a)) out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest relabeled (op, leq) over all permutations fixing the unit.
inline Alg canonical(const Alg& a) {
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  Alg best = a;
  do {
    if (perm[a.unit] != a.unit) continue;
    Alg b = a;
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y) {
        b.op[perm[x] * a.n + perm[y]] = perm[a.f(x, y)];
        b.leq[perm[x] * a.n + perm[y]] = a.leq[x * a.n + y];
      }
    best = std::min(best, b);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::size_t count_classes(const std::vector<Alg>& algs) {
  std::vector<Alg> reps;
  for (const Alg& a : algs) reps.push_back(canonical(a));
  std::sort(reps.begin(), reps.end());
  return static_cast<std::size_t>(std::unique(reps.begin(), reps.end()) - reps.begin());
}

using Map = std::vector<int>;

inline std::vector<Map> all_maps(int nx, int ny) {
  std::vector<Map> out;
  Map m(nx, 0);
  while (true) {
    out.push_back(m);
    int i = nx - 1;
    while (i >= 0 && ++m[i] == ny) m[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline bool hom(const Alg& x, const Alg& y, const Map& k) {
  for (int a = 0; a < x.n; ++a)
    for (int b = 0; b < x.n; ++b)
      if (k[x.f(a, b)] != y.f(k[a], k[b])) return false;
  return true;
}

inline bool omap(const Alg& x, const Alg& y, const Map& k) {
  for (int a = 0; a < x.n; ++a)
    for (int b = 0; b < x.n; ++b)
      if (x.pos(x.f(a, b)) && !y.pos(y.f(k[a], k[b]))) return false;
  return true;
}

using Set = std::uint64_t;

inline bool has(Set s, int x) { return (s >> x) & 1U; }

inline Set kernel(const Alg& y, const Map& k) {
  Set s = 0;
  for (int a = 0; a < static_cast<int>(k.size()); ++a)
    if (y.pos(k[a])) s |= Set{1} << a;
  return s;
}

inline Set kernel_alt(const Alg& y, const Map& k) {
  Set s = 0;
  const int n = static_cast<int>(k.size());
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      if (y.pos(k[a]) && y.pos(y.f(k[a], k[b]))) s |= Set{1} << b;
  return s;
}

inline bool subalgebra(const Alg& a, Set s) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (has(s, x) && has(s, y) && !has(s, a.f(x, y))) return false;
  return true;
}

inline bool ordered_subalgebra(const Alg& a, Set s) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (has(s, x) && has(s, y) && a.pos(x) && a.pos(y) && !has(s, a.f(x, y))) return false;
  return true;
}

inline bool filter(const Alg& a, Set s) {
  if (!has(s, a.unit)) return false;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (has(s, x) && has(s, a.f(x, y)) && !has(s, y)) return false;
  return true;
}

inline bool ordered_filter(const Alg& a, Set s) {
  if (!has(s, a.unit)) return false;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (has(s, x) && a.pos(a.f(x, y)) && !has(s, y)) return false;
  return true;
}

inline bool in_cone(const Alg& a, Set s) {
  for (int x = 0; x < a.n; ++x)
    if (has(s, x) && !a.pos(x)) return false;
  return true;
}

inline Set image(const Map& k, Set s) {
  Set out = 0;
  for (int a = 0; a < static_cast<int>(k.size()); ++a)
    if (has(s, a)) out |= Set{1} << k[a];
  return out;
}

inline Set preimage(const Map& k, Set t) {
  Set out = 0;
  for (int a = 0; a < static_cast<int>(k.size()); ++a)
    if (has(t, k[a])) out |= Set{1} << a;
  return out;
}

/// Whether F |-> k(F) is a bijection between the (ordered) filters of X
/// containing ker k (in the cone, for the ordered version) and the (ordered)
/// filters of Y, with G |-> k^-1(G) as its inverse.
inline bool filter_correspondence(const Alg& x, const Alg& y, const Map& k, bool ordered) {
  auto is_f = [&](const Alg& a, Set s) { return ordered ? ordered_filter(a, s) : filter(a, s); };
  const Set ker = kernel(y, k);
  std::vector<Set> src;
  std::vector<Set> dst;
  for (Set s = 0; s < (Set{1} << x.n); ++s)
    if (is_f(x, s) && (s & ker) == ker && (!ordered || in_cone(x, s))) src.push_back(s);
  for (Set t = 0; t < (Set{1} << y.n); ++t)
    if (is_f(y, t)) dst.push_back(t);
  auto member = [](const std::vector<Set>& v, Set s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (src.size() != dst.size()) return false;
  for (Set s : src)
    if (!member(dst, image(k, s)) || preimage(k, image(k, s)) != s) return false;
  for (Set t : dst)
    if (!member(src, preimage(k, t)) || image(k, preimage(k, t)) != t) return false;
  return true;
}

inline bool surjective(const Map& k, int ny) {
  Set hit = 0;
  for (int v : k) hit |= Set{1} << v;
  return hit == (Set{1} << ny) - 1;
}

}  // namespace oracle
