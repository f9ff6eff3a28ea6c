#pragma once

#include "hm/common.hpp"
#include "hm/group.hpp"
#include "hm/snf.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace hm {

// Element of A = ker(U -> G) in Smith coordinates: free coordinates first, then torsion reduced mod d.
using AElem = std::vector<long long>;

struct UElem {
  int g = 0;    // image in G
  AElem a;      // u = a * s(g)
  bool operator==(const UElem& o) const { return g == o.g && a == o.a; }
  bool operator<(const UElem& o) const { return g != o.g ? g < o.g : a < o.a; }
};

// Words over C: letter x (index into C) encoded as +(x+1), its inverse as -(x+1).
using Word = std::vector<int>;

// U(G,C) = F(C) / <<[h][g][h]^-1 [hgh^-1]^-1>> via Reidemeister-Schreier on the kernel of F(C) -> G
// and the Smith normal form of the rewritten relators.
class LiftingData {
 public:
  FiniteGroup G;
  ConjugacyTable T;
  std::vector<int> C;            // sorted elements
  std::vector<int> letter_of;    // element -> letter or -1
  std::vector<int> classes;      // class labels meeting C, sorted
  std::vector<int> class_pos;    // class label -> position in classes, or -1
  std::vector<int> letter_class; // letter -> position in classes

  std::vector<std::vector<int>> sword;  // transversal words, positive letters
  std::vector<int> gen_index;           // g*|C|+x -> Schreier generator index, -1 on tree edges
  std::vector<std::pair<int, int>> gen_of;
  int rank = 0;
  long long relator_rows = 0;

  std::vector<BigInt> snf_diag;
  std::vector<int> kept;           // Smith coordinate of each A coordinate
  std::vector<long long> modulus;  // per A coordinate: 0 free, d > 1 torsion
  int nfree = 0;
  std::vector<long long> torsion;  // invariant factors of H2(G,C)
  IntMat P, Pinv;

  std::vector<std::vector<long long>> Rgen;  // R of Schreier generators
  std::vector<std::vector<long long>> RA;    // R of A basis vectors
  std::vector<std::vector<long long>> Rs;    // R(s(g))
  std::vector<AElem> cocycle;                // c(g,h), s(g)s(h) = c(g,h) s(gh)
  std::vector<AElem> gen_elem;               // [x] = (x, gen_elem[x])

  LiftingData(const FiniteGroup& G_, const std::vector<int>& Cset, double budget = default_budget()) : G(G_) {
    T = conjugacy_classes(G);
    C = Cset;
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    require(!C.empty(), ErrorCode::NotGenerating, "empty marking set");
    letter_of.assign(G.n, -1);
    for (size_t i = 0; i < C.size(); ++i) {
      require(C[i] != G.id, ErrorCode::ConfigError, "identity in marking set");
      letter_of[C[i]] = (int)i;
    }
    for (int x : C)
      for (int h = 0; h < G.n; ++h)
        require(letter_of[G.conj(h, x)] >= 0, ErrorCode::NonInvariantInput, "marking set is not conjugation invariant");
    require(G.generates(C), ErrorCode::NotGenerating, "marking set does not generate G");
    class_pos.assign(T.num_classes(), -1);
    for (int x : C)
      if (class_pos[T.class_of[x]] < 0) {
        class_pos[T.class_of[x]] = 0;
        classes.push_back(T.class_of[x]);
      }
    std::sort(classes.begin(), classes.end());
    for (size_t i = 0; i < classes.size(); ++i) class_pos[classes[i]] = (int)i;
    for (int x : C) letter_class.push_back(class_pos[T.class_of[x]]);

    const int nC = (int)C.size(), n = G.n, ncl = (int)classes.size();
    rank = (nC - 1) * n + 1;
    relator_rows = (long long)n * nC * nC;
    double attempted = (double)relator_rows * rank;
    if (attempted > budget) throw BudgetError("relator matrix for U(G,C)", attempted, budget);

    // shortlex transversal by breadth-first search
    sword.assign(n, {});
    std::vector<char> seen(n, 0);
    std::vector<char> tree(n * nC, 0);
    std::vector<int> queue{G.id};
    seen[G.id] = 1;
    for (size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int x = 0; x < nC; ++x) {
        int h = G.mul(g, C[x]);
        if (seen[h]) continue;
        seen[h] = 1;
        sword[h] = sword[g];
        sword[h].push_back(x);
        tree[g * nC + x] = 1;
        queue.push_back(h);
      }
    }
    gen_index.assign(n * nC, -1);
    for (int g = 0; g < n; ++g)
      for (int x = 0; x < nC; ++x)
        if (!tree[g * nC + x]) {
          gen_index[g * nC + x] = (int)gen_of.size();
          gen_of.push_back({g, x});
        }
    require((int)gen_of.size() == rank, ErrorCode::Internal, "Schreier rank mismatch");

    Rs.assign(n, std::vector<long long>(ncl, 0));
    for (int g = 0; g < n; ++g)
      for (int x : sword[g]) Rs[g][letter_class[x]] += 1;
    Rgen.assign(rank, std::vector<long long>(ncl, 0));
    for (int j = 0; j < rank; ++j) {
      auto [g, x] = gen_of[j];
      int h = G.mul(g, C[x]);
      for (int c = 0; c < ncl; ++c) Rgen[j][c] = Rs[g][c] - Rs[h][c];
      Rgen[j][letter_class[x]] += 1;
    }

    // relators conjugated by every transversal element
    IntMat L;
    L.reserve(relator_rows);
    for (int t = 0; t < n; ++t)
      for (int hi = 0; hi < nC; ++hi)
        for (int gi = 0; gi < nC; ++gi) {
          int h = C[hi], g = C[gi];
          int k = letter_of[G.conj(h, g)];
          Word rel{hi + 1, gi + 1, -(hi + 1), -(k + 1)};
          auto v = rewrite(rel, t);
          std::vector<BigInt> row(rank);
          bool nz = false;
          for (int j = 0; j < rank; ++j) {
            row[j] = v[j];
            nz = nz || v[j] != 0;
          }
          if (nz) L.push_back(std::move(row));
        }
    SmithForm S = smith_form(std::move(L), rank);
    snf_diag = S.diag;
    P = std::move(S.P);
    Pinv = std::move(S.Pinv);
    for (int i = 0; i < rank; ++i)
      if (snf_diag[i] == 0) { kept.push_back(i); modulus.push_back(0); }
    nfree = (int)kept.size();
    for (int i = 0; i < rank; ++i)
      if (snf_diag[i] > 1) {
        kept.push_back(i);
        modulus.push_back(snf_diag[i].convert_to<long long>());
        torsion.push_back(modulus.back());
      }

    const int K = (int)kept.size();
    RA.assign(K, std::vector<long long>(ncl, 0));
    for (int k = 0; k < K; ++k)
      for (int c = 0; c < ncl; ++c) {
        BigInt s = 0;
        for (int i = 0; i < rank; ++i)
          if (Pinv[kept[k]][i] != 0) s += Pinv[kept[k]][i] * Rgen[i][c];
        RA[k][c] = s.convert_to<long long>();
      }
    for (int k = nfree; k < K; ++k)
      for (int c = 0; c < ncl; ++c) require(RA[k][c] == 0, ErrorCode::Internal, "torsion with nonzero multidegree");

    cocycle.resize((size_t)n * n);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        Word w;
        for (int x : sword[g]) w.push_back(x + 1);
        for (int x : sword[h]) w.push_back(x + 1);
        auto& s = sword[G.mul(g, h)];
        for (auto it = s.rbegin(); it != s.rend(); ++it) w.push_back(-(*it + 1));
        cocycle[(size_t)g * n + h] = to_A(rewrite(w, G.id));
      }
    for (int x = 0; x < nC; ++x) {
      Word w{x + 1};
      auto& s = sword[C[x]];
      for (auto it = s.rbegin(); it != s.rend(); ++it) w.push_back(-(*it + 1));
      gen_elem.push_back(to_A(rewrite(w, G.id)));
    }
  }

  int num_classes() const { return (int)classes.size(); }
  int dimA() const { return (int)kept.size(); }
  long long torsion_order() const {
    long long t = 1;
    for (auto d : torsion) t *= d;
    return t;
  }

  // Schreier rewriting of a word read from the given coset.
  std::vector<long long> rewrite(const Word& w, int start) const {
    std::vector<long long> v(rank, 0);
    const int nC = (int)C.size();
    int g = start;
    for (int l : w) {
      if (l > 0) {
        int x = l - 1;
        int j = gen_index[g * nC + x];
        if (j >= 0) v[j] += 1;
        g = G.mul(g, C[x]);
      } else {
        int x = -l - 1;
        int gp = G.mul(g, G.inv(C[x]));
        int j = gen_index[gp * nC + x];
        if (j >= 0) v[j] -= 1;
        g = gp;
      }
    }
    return v;
  }

  Word schreier_word(int j) const {
    auto [g, x] = gen_of[j];
    Word w;
    for (int y : sword[g]) w.push_back(y + 1);
    w.push_back(x + 1);
    auto& s = sword[G.mul(g, C[x])];
    for (auto it = s.rbegin(); it != s.rend(); ++it) w.push_back(-(*it + 1));
    return w;
  }

  template <class V>
  AElem to_A(const V& a) const {
    const int K = (int)kept.size();
    AElem r(K, 0);
    for (int k = 0; k < K; ++k) {
      BigInt s = 0;
      for (int i = 0; i < rank; ++i)
        if (a[i] != 0 && P[i][kept[k]] != 0) s += BigInt(a[i]) * P[i][kept[k]];
      if (modulus[k] > 0) {
        BigInt m = s % modulus[k];
        if (m < 0) m += modulus[k];
        r[k] = m.convert_to<long long>();
      } else {
        r[k] = s.convert_to<long long>();
      }
    }
    return r;
  }

  // Integer lift of A basis vector k as a combination of Schreier generators.
  const std::vector<BigInt>& lift_basis(int k) const { return Pinv[kept[k]]; }

  // ---- arithmetic in A and U ----
  AElem zeroA() const { return AElem(kept.size(), 0); }
  AElem addA(const AElem& x, const AElem& y) const {
    AElem r(x.size());
    for (size_t k = 0; k < x.size(); ++k) r[k] = modulus[k] ? mod(x[k] + y[k], modulus[k]) : x[k] + y[k];
    return r;
  }
  AElem negA(const AElem& x) const {
    AElem r(x.size());
    for (size_t k = 0; k < x.size(); ++k) r[k] = modulus[k] ? mod(-x[k], modulus[k]) : -x[k];
    return r;
  }
  AElem scaleA(const AElem& x, long long s) const {
    AElem r(x.size());
    for (size_t k = 0; k < x.size(); ++k) r[k] = modulus[k] ? mod((x[k] % modulus[k]) * mod(s, modulus[k]), modulus[k]) : x[k] * s;
    return r;
  }
  bool is_torsion(const AElem& x) const {
    for (int k = 0; k < nfree; ++k)
      if (x[k]) return false;
    return true;
  }

  UElem one() const { return {G.id, zeroA()}; }
  UElem gen(int x) const { return {C[x], gen_elem[x]}; }
  UElem section(int g) const { return {g, zeroA()}; }
  UElem mul(const UElem& u, const UElem& v) const {
    return {G.mul(u.g, v.g), addA(addA(u.a, v.a), cocycle[(size_t)u.g * G.n + v.g])};
  }
  UElem inv(const UElem& u) const {
    int gi = G.inv(u.g);
    return {gi, negA(addA(u.a, cocycle[(size_t)u.g * G.n + gi]))};
  }
  UElem pow(const UElem& u, long long k) const {
    UElem base = k >= 0 ? u : inv(u);
    unsigned long long e = k >= 0 ? k : -k;
    UElem r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  UElem conj(const UElem& h, const UElem& u) const { return mul(mul(h, u), inv(h)); }
  UElem from_word(const Word& w) const {
    UElem r = one();
    for (int l : w) r = mul(r, l > 0 ? gen(l - 1) : inv(gen(-l - 1)));
    return r;
  }
  UElem lifting_invariant(const std::vector<int>& tuple) const {
    UElem r = one();
    for (int g : tuple) {
      require(g >= 0 && g < G.n && letter_of[g] >= 0, ErrorCode::ClassOutsideC, "tuple entry outside C");
      r = mul(r, gen(letter_of[g]));
    }
    return r;
  }
  std::vector<long long> R(const UElem& u) const {
    std::vector<long long> v = Rs[u.g];
    for (int k = 0; k < nfree; ++k)
      if (u.a[k])
        for (size_t c = 0; c < v.size(); ++c) v[c] += u.a[k] * RA[k][c];
    return v;
  }

  // Element of the fiber over (nbar, gamma): image gamma^-1 and multidegree nbar (per class of C).
  std::optional<UElem> fiber_base(const std::vector<long long>& nbar, int gamma) const {
    const int ncl = num_classes();
    require((int)nbar.size() == ncl, ErrorCode::ConfigError, "multidegree has wrong length");
    int g = G.inv(gamma);
    std::vector<Rational> target(ncl);
    for (int c = 0; c < ncl; ++c) target[c] = nbar[c] - Rs[g][c];
    if (nfree == 0) {
      for (auto& t : target)
        if (t != 0) return std::nullopt;
      return section(g);
    }
    std::vector<std::vector<Rational>> M(nfree, std::vector<Rational>(ncl));
    for (int k = 0; k < nfree; ++k)
      for (int c = 0; c < ncl; ++c) M[k][c] = RA[k][c];
    require(nfree == ncl, ErrorCode::Internal, "free rank differs from class count");
    auto f = solve_left(M, target);
    require(f.has_value(), ErrorCode::Internal, "multidegree map is singular");
    UElem u = section(g);
    for (int k = 0; k < nfree; ++k) {
      if (denominator((*f)[k]) != 1) return std::nullopt;
      u.a[k] = numerator((*f)[k]).convert_to<long long>();
    }
    return u;
  }

  // All torsion elements, enumerated in mixed radix.
  std::vector<AElem> torsion_elements() const {
    std::vector<AElem> out;
    long long n = torsion_order();
    for (long long idx = 0; idx < n; ++idx) {
      AElem a = zeroA();
      long long t = idx;
      for (size_t k = nfree; k < kept.size(); ++k) {
        a[k] = t % modulus[k];
        t /= modulus[k];
      }
      out.push_back(a);
    }
    return out;
  }
};

// Frobenius on U: Phi([g]) = [g^r]^q on U(1); the action on U is Psi(u) = Phi(u)^{1/q},
// with Psi([g]) = [g^r]; Psi_sigma is Psi followed by conjugation with a lift of sigma.
class UFrobenius {
 public:
  const LiftingData& L;
  long long q, r;
  int sigma;
  std::vector<AElem> phiA, psiA;   // images of A basis vectors
  std::vector<AElem> phi_s;        // Phi(s(g)) = (g, phi_s[g])
  std::vector<int> class_perm;     // permutation of classes of C: c -> class of sigma c^r sigma^-1

  UFrobenius(const LiftingData& Ld, long long q_, int sigma_ = -1) : L(Ld), q(q_) {
    const FiniteGroup& G = L.G;
    require(gcdll(q, G.n) == 1, ErrorCode::NonCoprimeOrder, "q not coprime to |G|");
    long long e = G.exponent();
    r = modinv(q % e, e);
    sigma = sigma_ < 0 ? G.id : sigma_;
    for (int x : L.C)
      require(L.letter_of[G.pow(x, r)] >= 0, ErrorCode::NonInvariantInput, "C is not stable under Frobenius");
    class_perm.resize(L.num_classes());
    for (int c = 0; c < L.num_classes(); ++c) {
      int x = L.T.classes[L.classes[c]][0];
      class_perm[c] = L.class_pos[L.T.class_of[G.pow(x, r)]];
    }
    // Phi on Schreier generators
    std::vector<std::vector<BigInt>> phigen(L.rank);
    for (int j = 0; j < L.rank; ++j) {
      Word w;
      for (int l : L.schreier_word(j)) {
        int x = std::abs(l) - 1;
        int y = L.letter_of[G.pow(L.C[x], r)] + 1;
        for (long long t = 0; t < q; ++t) w.push_back(l > 0 ? y : -y);
      }
      auto v = L.rewrite(w, G.id);
      phigen[j].assign(v.begin(), v.end());
    }
    const int K = L.dimA();
    for (int k = 0; k < K; ++k) {
      std::vector<BigInt> v(L.rank, 0);
      const auto& lift = L.lift_basis(k);
      for (int i = 0; i < L.rank; ++i)
        if (lift[i] != 0)
          for (int j = 0; j < L.rank; ++j)
            if (phigen[i][j] != 0) v[j] += lift[i] * phigen[i][j];
      phiA.push_back(L.to_A(v));
    }
    long long qinv_cache = 0;
    (void)qinv_cache;
    for (int k = 0; k < K; ++k) {
      AElem y = phiA[k], z(K, 0);
      for (int t = 0; t < K; ++t) {
        if (L.modulus[t] == 0) {
          require(y[t] % q == 0, ErrorCode::Internal, "Frobenius on A is not divisible by q");
          z[t] = y[t] / q;
        } else {
          z[t] = mod(y[t] * modinv(q % L.modulus[t], L.modulus[t]), L.modulus[t]);
        }
      }
      psiA.push_back(z);
    }
    phi_s.resize(G.n);
    for (int g = 0; g < G.n; ++g) {
      UElem u = L.one();
      for (int x : L.sword[g]) {
        int y = L.letter_of[G.pow(L.C[x], r)];
        u = L.mul(u, L.pow(L.gen(y), q));
      }
      require(u.g == g, ErrorCode::Internal, "Phi does not preserve the image in G");
      phi_s[g] = u.a;
    }
  }

  AElem applyA(const std::vector<AElem>& images, const AElem& a) const {
    AElem r = L.zeroA();
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k]) r = L.addA(r, L.scaleA(images[k], a[k]));
    return r;
  }
  AElem phi_A(const AElem& a) const { return applyA(phiA, a); }
  AElem psi_A(const AElem& a) const { return applyA(psiA, a); }

  UElem Phi(const UElem& u) const { return {u.g, L.addA(phi_s[u.g], phi_A(u.a))}; }

  // q-th root of Phi(u) inside the procyclic group it generates
  UElem Psi(const UElem& u) const {
    UElem y = Phi(u);
    long long e = L.G.order_of(y.g);
    long long rp = modinv(q % e, e);
    UElem yr = L.pow(y, rp);
    UElem z = L.pow(y, e);
    long long num_fac = 1 - q * rp;  // divisible by e
    UElem out = yr;
    for (size_t k = 0; k < out.a.size(); ++k) {
      if (L.modulus[k] == 0) {
        long long num = yr.a[k] * q * e + z.a[k] * num_fac;
        require(num % (q * e) == 0, ErrorCode::Internal, "non-integral Frobenius root");
        out.a[k] = num / (q * e);
      } else {
        long long d = L.modulus[k];
        long long s = mod((num_fac / e) % d * modinv(q % d, d), d);
        out.a[k] = mod(yr.a[k] + mod(z.a[k] * s, d), d);
      }
    }
    return out;
  }
  UElem Psi_twisted(const UElem& u, int s) const {
    UElem p = Psi(u);
    if (s == L.G.id) return p;
    return L.conj(L.section(s), p);
  }
  UElem Psi_sigma(const UElem& u) const { return Psi_twisted(u, sigma); }

  // Matrix of Phi on the abelianization Hom(classes, Z): q times the class permutation.
  std::vector<std::vector<long long>> frob_u1() const {
    int k = L.num_classes();
    std::vector<std::vector<long long>> M(k, std::vector<long long>(k, 0));
    for (int c = 0; c < k; ++c) M[c][class_perm[c]] = q;
    return M;
  }

  // Psi on A as an integer matrix (rows = images of basis vectors).
  std::vector<std::vector<long long>> frob_matrix() const { return psiA; }

  std::vector<long long> permute_classes(const std::vector<long long>& v) const {
    std::vector<long long> w(v.size(), 0);
    for (size_t c = 0; c < v.size(); ++c) w[class_perm[c]] += v[c];
    return w;
  }
};

// Number of Frobenius-fixed points of the fiber over (nbar, gamma) for the twist sigma.
inline long long torsor_fixed_count(const UFrobenius& F, const std::vector<long long>& nbar, int gamma, int sigma) {
  const LiftingData& L = F.L;
  const FiniteGroup& G = L.G;
  require(F.permute_classes(nbar) == nbar, ErrorCode::NonInvariantInput, "multidegree is not Frobenius invariant");
  require(G.conj(sigma, G.pow(gamma, F.r)) == gamma, ErrorCode::NonInvariantInput,
          "gamma is not fixed by the twisted Frobenius");
  auto u0 = L.fiber_base(nbar, gamma);
  if (!u0) return 0;
  UElem pu = F.Psi_twisted(*u0, sigma);
  require(pu.g == u0->g, ErrorCode::Internal, "Frobenius moved the fiber");
  AElem delta = L.mul(pu, L.inv(*u0)).a;  // Psi(u0) u0^-1, central
  require(L.is_torsion(delta), ErrorCode::Internal, "Frobenius moved the multidegree");
  long long cnt = 0;
  for (auto& t : L.torsion_elements()) {
    // Psi(u0 t) = Psi(u0) Psi(t) = u0 t  <=>  delta + Psi(t) - t = 0
    AElem lhs = L.addA(L.addA(delta, F.psi_A(t)), L.negA(t));
    if (std::all_of(lhs.begin(), lhs.end(), [](long long x) { return x == 0; })) ++cnt;
  }
  return cnt;
}

inline long long torsor_fixed_count(const UFrobenius& F, const std::vector<long long>& nbar, int gamma) {
  return torsor_fixed_count(F, nbar, gamma, F.sigma);
}

// Size of the Frobenius invariants of H2(G,C).
inline long long h2_fixed_count(const UFrobenius& F) {
  long long cnt = 0;
  for (auto& t : F.L.torsion_elements())
    if (F.psi_A(t) == t) ++cnt;
  return cnt;
}

}  // namespace hm
