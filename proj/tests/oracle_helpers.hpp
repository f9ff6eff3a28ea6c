#pragma once
// Brute-force reference computations used by the tests. Nothing here calls the routine it checks.

#include "hm/group.hpp"
#include "hm/braid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using hm::BigInt;
using hm::FiniteGroup;
using hm::Rational;

// Conjugacy classes by conjugating every element by every element.
inline std::vector<std::set<int>> classes(const FiniteGroup& G) {
  std::vector<std::set<int>> out;
  std::vector<char> done(G.n, 0);
  for (int g = 0; g < G.n; ++g) {
    if (done[g]) continue;
    std::set<int> c;
    for (int h = 0; h < G.n; ++h) c.insert(G.mul(G.mul(h, g), G.inv(h)));
    for (int x : c) done[x] = 1;
    out.push_back(c);
  }
  return out;
}

inline std::vector<size_t> class_sizes(const FiniteGroup& G) {
  std::vector<size_t> s;
  for (auto& c : classes(G)) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

// Closure of a generating set under multiplication.
inline std::set<int> closure(const FiniteGroup& G, std::set<int> S) {
  S.insert(G.id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> v(S.begin(), S.end());
    for (int a : v)
      for (int b : v)
        if (S.insert(G.mul(a, b)).second) grew = true;
  }
  return S;
}

inline std::set<int> commutator_subgroup(const FiniteGroup& G) {
  std::set<int> c;
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) c.insert(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
  return closure(G, c);
}

// For each k, the number of elements x of G/N with x^k in N. Determines an abelian quotient up to isomorphism.
inline std::vector<long long> quotient_power_profile(const FiniteGroup& G, const std::set<int>& N) {
  int m = G.n / (int)N.size();
  std::vector<long long> prof;
  for (int k = 1; k <= m; ++k) {
    long long cnt = 0;
    for (int g = 0; g < G.n; ++g)
      if (N.count(G.pow(g, k))) ++cnt;
    prof.push_back(cnt / (long long)N.size());
  }
  return prof;
}

// Same profile for Z/d1 x ... x Z/dk.
inline std::vector<long long> abelian_power_profile(const std::vector<long long>& d) {
  long long m = 1;
  for (auto x : d) m *= x;
  std::vector<long long> prof;
  for (long long k = 1; k <= m; ++k) {
    long long cnt = 1;
    for (auto x : d) cnt *= std::gcd(k, x);
    prof.push_back(cnt);
  }
  return prof;
}

// Every subgroup: grow from the trivial one by adjoining single elements until nothing new appears.
inline std::set<std::set<int>> all_subgroups(const FiniteGroup& G) {
  std::set<std::set<int>> out{{G.id}};
  std::vector<std::set<int>> frontier{{G.id}};
  while (!frontier.empty()) {
    std::vector<std::set<int>> next;
    for (auto& H : frontier)
      for (int g = 0; g < G.n; ++g) {
        if (H.count(g)) continue;
        auto S = H;
        S.insert(g);
        auto K = closure(G, S);
        if (out.insert(K).second) next.push_back(K);
      }
    frontier = std::move(next);
  }
  return out;
}

// Product of cyclic groups as an explicit table.
inline FiniteGroup abelian_table(const std::vector<long long>& d) {
  long long n = 1;
  for (auto x : d) n *= x;
  auto dec = [&](long long i) {
    std::vector<long long> v;
    for (auto x : d) { v.push_back(i % x); i /= x; }
    return v;
  };
  auto enc = [&](const std::vector<long long>& v) {
    long long i = 0;
    for (size_t k = d.size(); k-- > 0;) i = i * d[k] + v[k];
    return i;
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long long a = 0; a < n; ++a)
    for (long long b = 0; b < n; ++b) {
      auto va = dec(a), vb = dec(b);
      for (size_t k = 0; k < d.size(); ++k) va[k] = (va[k] + vb[k]) % d[k];
      t[a][b] = (int)enc(va);
    }
  return FiniteGroup::from_table(t, "A");
}

// mu((Z/p)^k) = (-1)^k p^{k(k-1)/2}, zero off elementary abelian p-parts, multiplicative over primes.
inline long long moebius_closed_form(const std::vector<long long>& d) {
  long long mu = 1;
  std::map<long long, int> rank;
  for (auto x : d) {
    if (x == 1) continue;
    long long y = x;
    for (long long p = 2; p <= y; ++p) {
      if (y % p) continue;
      int e = 0;
      while (y % p == 0) { y /= p; ++e; }
      if (e > 1) return 0;
      ++rank[p];
    }
  }
  for (auto [p, k] : rank) {
    mu *= (k % 2 ? -1 : 1);
    for (int i = 0; i < k * (k - 1) / 2; ++i) mu *= p;
  }
  return mu;
}

// Braid orbits by union-find over every tuple in C^n with the given class multiplicities.
inline long long union_find_orbits(const FiniteGroup& G, const hm::ConjugacyTable& T, const std::vector<int>& cls,
                                   const std::vector<long long>& nbar, int gamma, bool connected) {
  std::vector<int> letters;
  for (int c : cls)
    for (int x : T.classes[c]) letters.push_back(x);
  int n = 0;
  for (auto v : nbar) n += (int)v;
  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<long long> cnt(cls.size(), 0);
      for (int x : cur)
        for (size_t k = 0; k < cls.size(); ++k)
          if (T.class_of[x] == cls[k]) ++cnt[k];
      if (cnt != nbar) return;
      int p = G.id;
      for (int x : cur) p = G.mul(p, x);
      if (G.inv(p) != gamma) return;
      if (connected) {
        std::set<int> s(cur.begin(), cur.end());
        if ((int)closure(G, s).size() != G.n) return;
      }
      id[cur] = (int)tuples.size();
      tuples.push_back(cur);
      return;
    }
    for (int x : letters) {
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<int> par(tuples.size());
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  for (size_t t = 0; t < tuples.size(); ++t)
    for (int i = 0; i + 1 < n; ++i) {
      auto u = tuples[t];
      int g = u[i], h = u[i + 1];
      u[i] = G.mul(G.mul(g, h), G.inv(g));
      u[i + 1] = g;
      par[find((int)t)] = find(id.at(u));
    }
  long long roots = 0;
  for (size_t t = 0; t < tuples.size(); ++t)
    if (find((int)t) == (int)t) ++roots;
  return roots;
}

// Power series of P(X)/Q(X) by long division, Q(0) = 1.
inline std::vector<Rational> series_divide(const std::vector<Rational>& P, const std::vector<Rational>& Q, int N) {
  std::vector<Rational> out(N + 1, 0);
  for (int n = 0; n <= N; ++n) {
    Rational s = n < (int)P.size() ? P[n] : Rational(0);
    for (int k = 1; k < (int)Q.size() && k <= n; ++k) s -= Q[k] * out[n - k];
    out[n] = s / Q[0];
  }
  return out;
}

// Polynomials over F_p, coefficient vectors low to high.
namespace fp {
using Poly = std::vector<int>;
inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int inv(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}
inline Poly rem(Poly a, const Poly& b, int p) {
  trim(a);
  int ib = inv(b.back(), p);
  while (a.size() >= b.size()) {
    int c = a.back() * ib % p, s = (int)(a.size() - b.size());
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = ((a[s + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}
inline Poly gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = b;
    b = r;
  }
  return a;
}
// Squarefree iff gcd(f, f') = 1 (f' = 0 means f is a p-th power).
inline bool squarefree(const Poly& f, int p) {
  Poly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back((int)(i % p) * f[i] % p);
  trim(d);
  if (d.empty()) return f.size() <= 1;
  return gcd(f, d, p).size() == 1;
}
}  // namespace fp

// Number of monic squarefree polynomials of degree n over F_p.
inline long long squarefree_count(int p, int n) {
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  long long cnt = 0;
  for (long long code = 0; code < total; ++code) {
    fp::Poly f(n + 1, 0);
    long long c = code;
    for (int i = 0; i < n; ++i) { f[i] = (int)(c % p); c /= p; }
    f[n] = 1;
    if (fp::squarefree(f, p)) ++cnt;
  }
  return cnt;
}

// Quadratic covers y^2 = c F of height d with every weight 1: F squarefree, one extra unit at infinity for odd deg F.
inline BigInt quadratic_count_by_squarefree(int p, int d) {
  BigInt s = 0;
  for (int n = 1; n <= d; ++n) {
    int h = n + (n % 2);
    if (h == d) s += 2 * squarefree_count(p, n);
  }
  return s;
}

}  // namespace oracle
