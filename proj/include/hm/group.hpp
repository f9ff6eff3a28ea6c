#pragma once

#include "hm/abelian.hpp"
#include "hm/common.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace hm {

using Perm = std::vector<int>;

struct FiniteGroup {
  int n = 0;
  std::vector<int> tab;  // tab[a*n+b] = a*b
  std::vector<int> inverse;
  int id = 0;
  std::string name;
  std::vector<Perm> perms;  // permutation realization, if any

  int order() const { return n; }
  int mul(int a, int b) const { return tab[a * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int conj(int h, int g) const { return mul(mul(h, g), inverse[h]); }  // h g h^-1
  int pow(int g, long long k) const {
    long long o = order_of(g);
    k = mod(k, o);
    int r = id;
    for (long long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }
  int order_of(int g) const {
    int o = 1, x = g;
    while (x != id) { x = mul(x, g); ++o; }
    return o;
  }
  long long exponent() const {
    long long e = 1;
    for (int g = 0; g < n; ++g) e = lcmll(e, order_of(g));
    return e;
  }
  int product(const std::vector<int>& w) const {
    int r = id;
    for (int x : w) r = mul(r, x);
    return r;
  }

  // Membership bitmap of the subgroup generated by gens.
  std::vector<char> generated(const std::vector<int>& gens) const {
    std::vector<char> in(n, 0);
    std::vector<int> list{id};
    in[id] = 1;
    for (size_t i = 0; i < list.size(); ++i)
      for (int g : gens) {
        int h = mul(list[i], g);
        if (!in[h]) { in[h] = 1; list.push_back(h); }
      }
    return in;
  }
  bool generates(const std::vector<int>& gens) const {
    auto in = generated(gens);
    return std::count(in.begin(), in.end(), 1) == n;
  }

  static FiniteGroup from_table(const std::vector<std::vector<int>>& t, const std::string& name = "") {
    FiniteGroup G;
    G.name = name;
    G.n = static_cast<int>(t.size());
    require(G.n > 0, ErrorCode::InvalidGroup, "empty multiplication table");
    G.tab.resize(G.n * G.n);
    for (int a = 0; a < G.n; ++a) {
      require((int)t[a].size() == G.n, ErrorCode::InvalidGroup, "row " + std::to_string(a) + " has wrong length");
      for (int b = 0; b < G.n; ++b) {
        require(t[a][b] >= 0 && t[a][b] < G.n, ErrorCode::InvalidGroup, "table entry out of range");
        G.tab[a * G.n + b] = t[a][b];
      }
    }
    G.id = -1;
    for (int e = 0; e < G.n && G.id < 0; ++e) {
      bool ok = true;
      for (int g = 0; g < G.n && ok; ++g) ok = G.mul(e, g) == g && G.mul(g, e) == g;
      if (ok) G.id = e;
    }
    require(G.id >= 0, ErrorCode::InvalidGroup, "no identity element");
    G.inverse.assign(G.n, -1);
    for (int g = 0; g < G.n; ++g)
      for (int h = 0; h < G.n; ++h)
        if (G.mul(g, h) == G.id) { G.inverse[g] = h; break; }
    for (int g = 0; g < G.n; ++g)
      require(G.inverse[g] >= 0 && G.mul(G.inverse[g], g) == G.id, ErrorCode::InvalidGroup,
              "element " + std::to_string(g) + " has no inverse");
    for (int a = 0; a < G.n; ++a)
      for (int b = 0; b < G.n; ++b)
        for (int c = 0; c < G.n; ++c)
          require(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)), ErrorCode::InvalidGroup, "table is not associative");
    return G;
  }

  // Elements are ordered lexicographically by their image lists, so the identity is 0.
  static FiniteGroup from_perms(const std::vector<Perm>& gens, const std::string& name = "") {
    require(!gens.empty(), ErrorCode::InvalidGroup, "no generators");
    const size_t deg = gens[0].size();
    for (auto& g : gens) {
      require(g.size() == deg, ErrorCode::InvalidGroup, "generators act on different point sets");
      std::vector<char> seen(deg, 0);
      for (int x : g) {
        require(x >= 0 && (size_t)x < deg && !seen[x], ErrorCode::InvalidGroup, "generator is not a permutation");
        seen[x] = 1;
      }
    }
    auto compose = [&](const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
      Perm r(deg);
      for (size_t x = 0; x < deg; ++x) r[x] = a[b[x]];
      return r;
    };
    Perm e(deg);
    for (size_t i = 0; i < deg; ++i) e[i] = (int)i;
    std::map<Perm, int> seen{{e, 0}};
    std::vector<Perm> elems{e};
    for (size_t i = 0; i < elems.size(); ++i)
      for (auto& g : gens) {
        Perm h = compose(elems[i], g);
        if (!seen.count(h)) {
          seen[h] = 0;
          elems.push_back(h);
          require(elems.size() <= 100000, ErrorCode::InvalidGroup, "group too large");
        }
      }
    std::sort(elems.begin(), elems.end());
    for (size_t i = 0; i < elems.size(); ++i) seen[elems[i]] = (int)i;
    FiniteGroup G;
    G.name = name;
    G.n = (int)elems.size();
    G.id = 0;
    G.perms = elems;
    G.tab.resize(G.n * G.n);
    G.inverse.resize(G.n);
    for (int a = 0; a < G.n; ++a)
      for (int b = 0; b < G.n; ++b) {
        int c = seen[compose(elems[a], elems[b])];
        G.tab[a * G.n + b] = c;
        if (c == 0) G.inverse[a] = b;
      }
    return G;
  }
};

struct ConjugacyTable {
  std::vector<int> class_of;               // element -> class label
  std::vector<std::vector<int>> classes;   // label -> sorted elements; labels ordered by minimal element
  std::vector<long long> centralizer_order;  // per class
  int identity_class = 0;
  int num_classes() const { return (int)classes.size(); }
};

inline ConjugacyTable conjugacy_classes(const FiniteGroup& G) {
  ConjugacyTable T;
  T.class_of.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g) {
    if (T.class_of[g] >= 0) continue;
    int label = (int)T.classes.size();
    std::vector<int> cls;
    for (int h = 0; h < G.n; ++h) {
      int x = G.conj(h, g);
      if (T.class_of[x] < 0) { T.class_of[x] = label; cls.push_back(x); }
    }
    std::sort(cls.begin(), cls.end());
    T.classes.push_back(cls);
    T.centralizer_order.push_back(G.n / (long long)cls.size());
  }
  T.identity_class = T.class_of[G.id];
  return T;
}

inline std::vector<int> center(const FiniteGroup& G) {
  std::vector<int> z;
  for (int g = 0; g < G.n; ++g) {
    bool c = true;
    for (int h = 0; h < G.n && c; ++h) c = G.mul(g, h) == G.mul(h, g);
    if (c) z.push_back(g);
  }
  return z;
}

// Frobenius acting on G(-1), optionally twisted by an inner automorphism: g -> sigma g^r sigma^-1, r = q^-1 mod exp(G).
struct FrobeniusStructure {
  long long q = 0;
  long long r = 0;
  int sigma = 0;
  std::vector<int> action;                // element -> image
  std::vector<int> class_perm;            // class -> class
  std::vector<std::vector<int>> orbits;   // orbits of non-identity classes, sorted by min label
  std::vector<int> orbit_of_class;        // -1 for identity class
  std::vector<int> class_degree;          // orbit size of the class

  int degree_of_orbit(int o) const { return (int)orbits[o].size(); }
};

inline FrobeniusStructure frobenius_structure(const FiniteGroup& G, const ConjugacyTable& T, long long q, int sigma = -1) {
  require(q >= 2, ErrorCode::NonCoprimeOrder, "q must be a prime power");
  require(gcdll(q, G.n) == 1, ErrorCode::NonCoprimeOrder,
          "q=" + std::to_string(q) + " is not coprime to |G|=" + std::to_string(G.n));
  FrobeniusStructure F;
  F.q = q;
  long long e = G.exponent();
  F.r = modinv(q % e, e);
  F.sigma = sigma < 0 ? G.id : sigma;
  require(F.sigma < G.n, ErrorCode::IndexOutOfRange, "twist element out of range");
  F.action.resize(G.n);
  for (int g = 0; g < G.n; ++g) F.action[g] = G.conj(F.sigma, G.pow(g, F.r));
  int k = T.num_classes();
  F.class_perm.resize(k);
  for (int c = 0; c < k; ++c) F.class_perm[c] = T.class_of[F.action[T.classes[c][0]]];
  F.orbit_of_class.assign(k, -1);
  F.class_degree.assign(k, 1);
  for (int c = 0; c < k; ++c) {
    if (c == T.identity_class || F.orbit_of_class[c] >= 0) continue;
    std::vector<int> orb;
    int x = c;
    do {
      orb.push_back(x);
      x = F.class_perm[x];
    } while (x != c);
    std::sort(orb.begin(), orb.end());
    int o = (int)F.orbits.size();
    for (int y : orb) {
      F.orbit_of_class[y] = o;
      F.class_degree[y] = (int)orb.size();
    }
    F.orbits.push_back(orb);
  }
  return F;
}

inline long long class_points(int deg, long long d) { return d % deg == 0 ? deg : 0; }

inline bool is_normal(const FiniteGroup& G, const std::vector<char>& N) {
  for (int x = 0; x < G.n; ++x)
    if (N[x])
      for (int h = 0; h < G.n; ++h)
        if (!N[G.conj(h, x)]) return false;
  return true;
}

inline bool is_subgroup(const FiniteGroup& G, const std::vector<char>& N) {
  if (!N[G.id]) return false;
  for (int a = 0; a < G.n; ++a)
    if (N[a])
      for (int b = 0; b < G.n; ++b)
        if (N[b] && !N[G.mul(a, G.inv(b))]) return false;
  return true;
}

inline std::vector<char> derived_subgroup(const FiniteGroup& G) {
  std::vector<int> comms;
  std::vector<char> seen(G.n, 0);
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) {
      int c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
      if (!seen[c]) { seen[c] = 1; comms.push_back(c); }
    }
  return G.generated(comms);
}

struct Quotient {
  FiniteGroup Q;
  std::vector<int> proj;  // element of G -> coset index
};

inline Quotient quotient(const FiniteGroup& G, const std::vector<char>& N) {
  require(is_subgroup(G, N), ErrorCode::InvalidGroup, "not a subgroup");
  require(is_normal(G, N), ErrorCode::NotNormal, "subgroup is not normal");
  Quotient R;
  R.proj.assign(G.n, -1);
  std::vector<int> reps;
  for (int g = 0; g < G.n; ++g) {
    if (R.proj[g] >= 0) continue;
    int c = (int)reps.size();
    reps.push_back(g);
    for (int x = 0; x < G.n; ++x)
      if (N[x]) R.proj[G.mul(g, x)] = c;
  }
  int m = (int)reps.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = R.proj[G.mul(reps[a], reps[b])];
  R.Q = FiniteGroup::from_table(t, G.name + "/N");
  return R;
}

inline bool is_abelian(const FiniteGroup& G) {
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < a; ++b)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

inline AbelianGroup abelian_type(const FiniteGroup& A) {
  require(is_abelian(A), ErrorCode::QuotientNotAbelian, "group is not abelian");
  return abelian_invariants_from_orders(A.n, [&](long long i) { return (long long)A.order_of((int)i); });
}

inline AbelianGroup abelianization(const FiniteGroup& G) { return abelian_type(quotient(G, derived_subgroup(G)).Q); }

// Number of points of the (-1)-twist of a constant abelian group: #{x : q^-1 x = x} = |A[q-1]|.
inline long long twisted_fixed_count(const AbelianGroup& A, long long q) {
  long long c = 1;
  for (long long di : A.d) c *= gcdll(di, q - 1);
  return c;
}

// Same count on G^ab computed directly on cosets of [G,G]: cosets with g^r [G,G] = g [G,G].
inline long long gab_twisted_fixed_count(const FiniteGroup& G, long long q) {
  auto Qt = quotient(G, derived_subgroup(G));
  long long e = Qt.Q.exponent();
  long long r = modinv(q % e, e);
  long long cnt = 0;
  for (int x = 0; x < Qt.Q.n; ++x)
    if (Qt.Q.pow(x, r) == x) ++cnt;
  return cnt;
}

// Subgroups L with M <= L <= G, for M normal with G/M abelian; sorted by order then membership.
inline std::vector<std::vector<char>> subgroup_interval(const FiniteGroup& G, const std::vector<char>& M) {
  auto Qt = quotient(G, M);
  require(is_abelian(Qt.Q), ErrorCode::QuotientNotAbelian, "G/M is not abelian");
  // enumerate subgroups of the quotient by closure
  int m = Qt.Q.n;
  std::vector<std::vector<char>> subs;
  std::map<std::vector<char>, int> seen;
  std::vector<char> triv(m, 0);
  triv[Qt.Q.id] = 1;
  subs.push_back(triv);
  seen[triv] = 0;
  for (size_t h = 0; h < subs.size(); ++h)
    for (int x = 0; x < m; ++x) {
      if (subs[h][x]) continue;
      std::vector<int> gens{x};
      for (int y = 0; y < m; ++y)
        if (subs[h][y]) gens.push_back(y);
      auto s = Qt.Q.generated(gens);
      if (!seen.count(s)) {
        seen[s] = 1;
        subs.push_back(s);
      }
    }
  std::vector<std::vector<char>> out;
  for (auto& s : subs) {
    std::vector<char> L(G.n, 0);
    for (int g = 0; g < G.n; ++g) L[g] = s[Qt.proj[g]];
    out.push_back(L);
  }
  std::sort(out.begin(), out.end(), [](const std::vector<char>& a, const std::vector<char>& b) {
    auto ca = std::count(a.begin(), a.end(), 1), cb = std::count(b.begin(), b.end(), 1);
    if (ca != cb) return ca < cb;
    return a > b;
  });
  return out;
}

// Height weights on conjugacy classes; constant on Frobenius orbits.
struct WeightFunction {
  std::vector<int> f;            // per class label; identity class ignored
  int fmin = 0;
  Rational a;                    // 1/fmin
  std::vector<int> Cf_orbits;    // orbits where f is minimal
  int b = 0;
  std::vector<int> Cf_elements;  // elements in classes of minimal weight

  bool in_Cf(int cls) const {
    return f[cls] == fmin;
  }
};

inline WeightFunction make_weight(const FiniteGroup& G, const ConjugacyTable& T, const FrobeniusStructure& F,
                                  const std::vector<int>& f) {
  require((int)f.size() == T.num_classes(), ErrorCode::ConfigError, "weight table has wrong length");
  WeightFunction W;
  W.f = f;
  W.f[T.identity_class] = 0;
  W.fmin = 0;
  for (int c = 0; c < T.num_classes(); ++c) {
    if (c == T.identity_class) continue;
    require(f[c] >= 1, ErrorCode::ConfigError, "weights must be positive");
    require(f[F.class_perm[c]] == f[c], ErrorCode::NonInvariantInput, "weights are not Frobenius invariant");
    if (W.fmin == 0 || f[c] < W.fmin) W.fmin = f[c];
  }
  require(W.fmin > 0, ErrorCode::ConfigError, "trivial group has no weights");
  W.a = Rational(1, W.fmin);
  for (int o = 0; o < (int)F.orbits.size(); ++o)
    if (W.f[F.orbits[o][0]] == W.fmin) W.Cf_orbits.push_back(o);
  W.b = (int)W.Cf_orbits.size();
  for (int g = 0; g < G.n; ++g)
    if (g != G.id && W.f[T.class_of[g]] == W.fmin) W.Cf_elements.push_back(g);
  return W;
}

}  // namespace hm
