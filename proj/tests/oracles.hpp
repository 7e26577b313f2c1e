// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond plain integer types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

/// Finite abelian group Z_{m0} + ... + Z_{mk} with plain tuple arithmetic.
struct FiniteGroup {
  std::vector<long> moduli;

  long order() const {
    long o = 1;
    for (long m : moduli) o *= m;
    return o;
  }
  Vec element(long idx) const {
    Vec v(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
      v[i] = idx % moduli[i];
      idx /= moduli[i];
    }
    return v;
  }
  long index(const Vec& v) const {
    long idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) idx = idx * moduli[i] + ((v[i] % moduli[i]) + moduli[i]) % moduli[i];
    return idx;
  }
  long add(long a, long b) const {
    Vec x = element(a), y = element(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return index(x);
  }
  long element_order(long a) const {
    long n = 1;
    for (long c = a; c != 0; c = add(c, a)) ++n;
    return n;
  }
};

using Subset = std::vector<bool>;

/// Closure of a set under addition (finite group: this is the generated subgroup).
inline Subset closure(const FiniteGroup& G, Subset s) {
  s[0] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (long a = 0; a < G.order(); ++a)
      if (s[a])
        for (long b = 0; b < G.order(); ++b)
          if (s[b] && !s[G.add(a, b)]) {
            s[G.add(a, b)] = true;
            grew = true;
          }
  }
  return s;
}

/// <S, g> for a subgroup S: the union of the cosets S + k g.
inline Subset adjoin(const FiniteGroup& G, const Subset& S, long g) {
  Subset t = S;
  for (long kg = g; kg != 0; kg = G.add(kg, g))
    for (long a = 0; a < G.order(); ++a)
      if (S[a]) t[G.add(a, kg)] = true;
  return t;
}

/// All subgroups, by repeatedly adjoining single elements to known subgroups.
inline std::set<Subset> all_subgroups(const FiniteGroup& G) {
  const long n = G.order();
  Subset trivial(n, false);
  trivial[0] = true;
  std::set<Subset> found{trivial};
  std::vector<Subset> todo{trivial};
  while (!todo.empty()) {
    Subset s = todo.back();
    todo.pop_back();
    for (long g = 0; g < n; ++g) {
      if (s[g]) continue;
      Subset t = adjoin(G, s, g);
      if (found.insert(t).second) todo.push_back(t);
    }
  }
  return found;
}

/// Every subset of a small group closed under addition (literal definition).
inline std::set<Subset> closed_subsets(const FiniteGroup& G) {
  const long n = G.order();
  std::set<Subset> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Subset s(n);
    for (long i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
    bool closed = true;
    for (long a = 0; a < n && closed; ++a)
      for (long b = 0; b < n && closed; ++b)
        if (s[a] && s[b] && !s[G.add(a, b)]) closed = false;
    if (closed) out.insert(s);
  }
  return out;
}

inline long count(const Subset& s) { return std::count(s.begin(), s.end(), true); }

/// A finite abelian group is cyclic iff it has an element whose order is its size.
inline bool is_cyclic_subgroup(const FiniteGroup& G, const Subset& s) {
  const long n = count(s);
  for (long a = 0; a < G.order(); ++a)
    if (s[a] && G.element_order(a) == n) return true;
  return false;
}

/// All invariant-factor chains d1 | d2 | ... with product <= max_order (d_i >= 2).
inline std::vector<std::vector<long>> abelian_groups_up_to(long max_order) {
  std::vector<std::vector<long>> out{{}};
  std::function<void(std::vector<long>, long)> rec = [&](std::vector<long> chain, long prod) {
    const long step = chain.empty() ? 1 : chain.back();
    for (long d = chain.empty() ? 2 : step; prod * d <= max_order; d += step) {
      auto next = chain;
      next.push_back(d);
      out.push_back(next);
      rec(next, prod * d);
    }
  };
  rec({}, 1);
  return out;
}

/// Number of index-n sublattices of Z^k: sum over d1...dk = n of d2 d3^2 ... dk^(k-1).
inline long sublattice_count(long n, int k) {
  if (k == 1) return 1;
  long total = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long w = 1;
      for (int i = 1; i < k; ++i) w *= d;
      total += w * sublattice_count(n / d, k - 1);
    }
  return total;
}

inline long gcd_all(const std::vector<long>& xs) {
  long g = 0;
  for (long x : xs) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

/// d1 = gcd of entries, d1 d2 = gcd of 2x2 minors (for matrices with >= 2 rows and columns).
inline std::pair<long, long> minor_gcds(const std::vector<std::vector<long>>& M) {
  std::vector<long> entries, minors;
  const std::size_t r = M.size(), c = M[0].size();
  for (const auto& row : M) entries.insert(entries.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t a = 0; a < c; ++a)
        for (std::size_t b = a + 1; b < c; ++b) minors.push_back(M[i][a] * M[j][b] - M[i][b] * M[j][a]);
  return {gcd_all(entries), gcd_all(minors)};
}

/// Squarefree products of the given primes, up to limit.
inline std::set<long> squarefree_products(const std::vector<long>& primes, long limit) {
  std::set<long> out{1};
  for (long p : primes) {
    std::set<long> next = out;
    for (long x : out)
      if (x * p <= limit) next.insert(x * p);
    out = next;
  }
  return out;
}

/// Subgroup of R/Z generated by rationals, by closure of numerators over the lcm denominator.
inline long rational_subgroup_order(const std::vector<std::pair<long, long>>& gens) {
  long den = 1;
  for (auto [p, q] : gens) den = std::lcm(den, q);
  std::set<long> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<long> next = s;
    for (long x : s)
      for (auto [p, q] : gens) {
        long y = ((x + p * (den / q)) % den + den) % den;
        if (next.insert(y).second) grew = true;
      }
    s = next;
  }
  return static_cast<long>(s.size());
}

}  // namespace oracle
