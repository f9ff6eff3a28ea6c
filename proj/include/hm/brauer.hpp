#pragma once

#include "hm/common.hpp"
#include "hm/lifting.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hm {

// (alpha, psi): alpha a character of A (values mod 1 per A coordinate), psi = psi(Frob) on the classes of C.
struct BrauerElement {
  std::vector<Rational> alpha;
  std::vector<Rational> psi;
  bool operator<(const BrauerElement& o) const { return alpha != o.alpha ? alpha < o.alpha : psi < o.psi; }
  bool operator==(const BrauerElement& o) const { return alpha == o.alpha && psi == o.psi; }
};

inline std::vector<Rational> frac_vec(std::vector<Rational> v) {
  for (auto& x : v) x = frac(x);
  return v;
}

class BrauerGroup {
 public:
  const LiftingData& L;
  const UFrobenius& F;
  std::vector<std::vector<int>> orbits;  // Frobenius orbits of classes of C (positions), sorted by min
  std::vector<int> orbit_of;
  std::vector<std::vector<Rational>> D;  // characters of Z^classes killing R(A)
  std::vector<std::vector<Rational>> H;  // delta - delta o pi^-1
  std::vector<BrauerElement> elems;      // canonical representatives, elems[0] = 0

  BrauerGroup(const LiftingData& Ld, const UFrobenius& Fr, double budget = default_budget()) : L(Ld), F(Fr) {
    const int ncl = L.num_classes();
    orbit_of.assign(ncl, -1);
    for (int c = 0; c < ncl; ++c) {
      if (orbit_of[c] >= 0) continue;
      std::vector<int> o;
      int x = c;
      do {
        o.push_back(x);
        x = F.class_perm[x];
      } while (x != c);
      std::sort(o.begin(), o.end());
      for (int y : o) orbit_of[y] = (int)orbits.size();
      orbits.push_back(o);
    }
    build_D(budget);
    for (auto& d : D) {
      std::vector<Rational> h(ncl);
      for (int c = 0; c < ncl; ++c) h[c] = frac(d[c] - d[pi_inv(c)]);
      H.push_back(h);
    }
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());

    // Psi-invariant characters of the torsion part
    std::vector<BrauerElement> found;
    const int K = L.dimA();
    long long nT = L.torsion_order();
    for (long long idx = 0; idx < nT; ++idx) {
      std::vector<Rational> alpha(K, Rational(0));
      long long t = idx;
      for (int k = L.nfree; k < K; ++k) {
        alpha[k] = Rational(t % L.modulus[k], L.modulus[k]);
        t /= L.modulus[k];
      }
      bool inv = true;
      for (int k = L.nfree; k < K && inv; ++k) {
        AElem e = L.zeroA();
        e[k] = 1;
        inv = frac(eval_alpha(alpha, F.psi_A(e)) - alpha[k]) == 0;
      }
      if (!inv) continue;
      auto psi0 = solve_psi(alpha);
      for (auto& d : D) {
        std::vector<Rational> psi(ncl);
        for (int c = 0; c < ncl; ++c) psi[c] = psi0[c] + d[c];
        found.push_back(canonical({alpha, psi}));
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    // zero first, then the rest in canonical order
    BrauerElement zero{std::vector<Rational>(K, Rational(0)), std::vector<Rational>(ncl, Rational(0))};
    elems.push_back(zero);
    for (auto& b : found)
      if (!(b == zero)) elems.push_back(b);
    for (size_t i = 0; i < elems.size(); ++i) index_[elems[i]] = (int)i;
  }

  int size() const { return (int)elems.size(); }
  int pi_inv(int c) const {
    for (int x = 0; x < L.num_classes(); ++x)
      if (F.class_perm[x] == c) return x;
    return -1;
  }

  Rational eval_alpha(const std::vector<Rational>& alpha, const AElem& a) const {
    Rational s = 0;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k]) s += alpha[k] * a[k];
    return frac(s);
  }
  Rational eval_psi(const std::vector<Rational>& psi, const std::vector<long long>& v) const {
    Rational s = 0;
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c]) s += psi[c] * v[c];
    return frac(s);
  }

  // alpha(Psi a) - alpha(a) = psi(R(Psi a)) on every basis vector of A
  bool compatible(const BrauerElement& b) const {
    for (int k = 0; k < L.dimA(); ++k) {
      AElem e = L.zeroA();
      e[k] = 1;
      AElem pe = F.psi_A(e);
      std::vector<long long> R(L.num_classes(), 0);
      for (int j = 0; j < L.nfree; ++j)
        for (int c = 0; c < L.num_classes(); ++c) R[c] += pe[j] * L.RA[j][c];
      if (frac(eval_alpha(b.alpha, pe) - b.alpha[k] - eval_psi(b.psi, R)) != 0) return false;
    }
    return true;
  }

  // Remove the free part of alpha with a coboundary, then pick the least psi in its H-coset.
  BrauerElement canonical(BrauerElement b) const {
    const int ncl = L.num_classes();
    b.alpha = frac_vec(b.alpha);
    bool has_free = false;
    for (int k = 0; k < L.nfree; ++k) has_free = has_free || b.alpha[k] != 0;
    if (has_free) {
      std::vector<std::vector<Rational>> M(L.nfree, std::vector<Rational>(ncl));
      for (int j = 0; j < L.nfree; ++j)
        for (int c = 0; c < ncl; ++c) M[j][c] = L.RA[j][c];
      std::vector<Rational> rhs(b.alpha.begin(), b.alpha.begin() + L.nfree);
      auto chi = solve_right(M, rhs);
      require(chi.has_value(), ErrorCode::Internal, "multidegree map is singular");
      for (int k = 0; k < L.nfree; ++k) b.alpha[k] = 0;
      for (int c = 0; c < ncl; ++c) b.psi[c] -= (*chi)[c] - (*chi)[pi_inv(c)];
    }
    b.psi = frac_vec(b.psi);
    std::vector<Rational> best;
    for (auto& h : H) {
      std::vector<Rational> p(ncl);
      for (int c = 0; c < ncl; ++c) p[c] = frac(b.psi[c] + h[c]);
      if (best.empty() || p < best) best = p;
    }
    b.psi = best;
    return b;
  }

  int index_of(const BrauerElement& b) const {
    auto it = index_.find(canonical(b));
    return it == index_.end() ? -1 : it->second;
  }
  int add(int i, int j) const {
    BrauerElement s = elems[i];
    for (size_t k = 0; k < s.alpha.size(); ++k) s.alpha[k] += elems[j].alpha[k];
    for (size_t c = 0; c < s.psi.size(); ++c) s.psi[c] += elems[j].psi[c];
    return index_of(s);
  }

  // Corestricted residue at a Frobenius orbit of classes: sum of psi over the orbit.
  Rational residue(int b, int orbit) const {
    require(orbit >= 0 && orbit < (int)orbits.size(), ErrorCode::ClassOutsideC, "orbit outside C");
    Rational s = 0;
    for (int c : orbits[orbit]) s += elems[b].psi[c];
    return frac(s);
  }
  int orbit_degree(int orbit) const { return (int)orbits[orbit].size(); }
  int orbit_of_class_label(int cls) const {
    int p = cls >= 0 && cls < (int)L.class_pos.size() ? L.class_pos[cls] : -1;
    require(p >= 0, ErrorCode::ClassOutsideC, "class outside C");
    return orbit_of[p];
  }

  // Residue at infinity for the boundary (sigma, gamma) with sigma gamma^r sigma^-1 = gamma, using the lift (gamma, a).
  Rational residue_at_infinity(int b, int sigma, int gamma, const AElem& lift) const {
    const FiniteGroup& G = L.G;
    require(G.conj(sigma, G.pow(gamma, F.r)) == gamma, ErrorCode::NonInvariantInput,
            "gamma is not fixed by the twisted Frobenius");
    UElem gt{gamma, lift};
    UElem p = F.Psi(gt);
    if (sigma != G.id) p = L.conj(L.section(sigma), p);
    UElem eta = L.mul(p, L.inv(gt));
    require(eta.g == G.id, ErrorCode::Internal, "twisted Frobenius moved gamma");
    return frac(eval_psi(elems[b].psi, L.R(p)) - eval_alpha(elems[b].alpha, eta.a));
  }
  Rational residue_at_infinity(int b, int sigma, int gamma) const { return residue_at_infinity(b, sigma, gamma, L.zeroA()); }

  // nbar per class of C (Frobenius invariant)
  Rational obstruction(int b, const std::vector<long long>& nbar, int gamma, int sigma) const {
    return frac(residue_at_infinity(b, sigma, gamma) + eval_psi(elems[b].psi, nbar));
  }
  bool obstruction_vanishes(int b, const std::vector<long long>& nbar, int gamma, int sigma) const {
    return obstruction(b, nbar, gamma, sigma) == 0;
  }
  bool criterion_all(const std::vector<long long>& nbar, int gamma, int sigma) const {
    require(F.permute_classes(nbar) == nbar, ErrorCode::NonInvariantInput, "multidegree is not Frobenius invariant");
    for (int b = 0; b < size(); ++b)
      if (!obstruction_vanishes(b, nbar, gamma, sigma)) return false;
    return true;
  }

  // Elements whose corestricted residue on each listed orbit equals deg(orbit) * ell.
  std::vector<char> subset_mask(const std::vector<int>& orbit_list, const Rational& ell) const {
    std::vector<char> m(size(), 0);
    for (int b = 0; b < size(); ++b) {
      bool ok = true;
      for (int o : orbit_list) ok = ok && frac(residue(b, o) - ell * orbit_degree(o)) == 0;
      m[b] = ok;
    }
    return m;
  }
  std::vector<char> unramified_mask() const {
    std::vector<int> all;
    for (int o = 0; o < (int)orbits.size(); ++o) all.push_back(o);
    return subset_mask(all, Rational(0));
  }

 private:
  std::map<BrauerElement, int> index_;

  void build_D(double budget) {
    const int ncl = L.num_classes();
    std::vector<std::vector<Rational>> M(L.nfree, std::vector<Rational>(ncl));
    for (int j = 0; j < L.nfree; ++j)
      for (int c = 0; c < ncl; ++c) M[j][c] = L.RA[j][c];
    // |det| of the multidegree lattice bounds the denominators
    Rational det = 1;
    {
      auto A = M;
      for (int c = 0; c < ncl; ++c) {
        int p = -1;
        for (int r = c; r < ncl; ++r)
          if (A[r][c] != 0) { p = r; break; }
        require(p >= 0, ErrorCode::Internal, "multidegree map is singular");
        std::swap(A[c], A[p]);
        det *= A[c][c];
        for (int r = c + 1; r < ncl; ++r) {
          Rational f = A[r][c] / A[c][c];
          for (int j = c; j < ncl; ++j) A[r][j] -= f * A[c][j];
        }
      }
    }
    long long N = abs(numerator(det)).convert_to<long long>();
    double total = std::pow((double)N, ncl);
    if (total > budget) throw BudgetError("character enumeration for Brauer coboundaries", total, budget);
    std::vector<long long> v(ncl, 0);
    while (true) {
      bool ok = true;
      for (int j = 0; j < L.nfree && ok; ++j) {
        long long s = 0;
        for (int c = 0; c < ncl; ++c) s += v[c] * L.RA[j][c];
        ok = s % N == 0;
      }
      if (ok) {
        std::vector<Rational> chi(ncl);
        for (int c = 0; c < ncl; ++c) chi[c] = Rational(v[c], N);
        D.push_back(chi);
      }
      int i = 0;
      while (i < ncl && v[i] == N - 1) v[i++] = 0;
      if (i == ncl) break;
      ++v[i];
    }
  }

  std::vector<Rational> solve_psi(const std::vector<Rational>& alpha) const {
    const int ncl = L.num_classes();
    std::vector<std::vector<Rational>> W(L.nfree, std::vector<Rational>(ncl, Rational(0)));
    std::vector<Rational> rhs(L.nfree);
    for (int j = 0; j < L.nfree; ++j) {
      AElem e = L.zeroA();
      e[j] = 1;
      AElem pe = F.psi_A(e);
      for (int i = 0; i < L.nfree; ++i)
        for (int c = 0; c < ncl; ++c) W[j][c] += pe[i] * L.RA[i][c];
      rhs[j] = eval_alpha(alpha, pe) - alpha[j];
    }
    auto psi = solve_right(W, rhs);
    require(psi.has_value(), ErrorCode::Internal, "Frobenius on multidegrees is singular");
    return *psi;
  }
};

// Restriction of A_small = A(G, C_small) into A_big = A(G, C_big) for C_small a subset of C_big.
inline std::vector<AElem> restriction_map(const LiftingData& small, const LiftingData& big) {
  std::vector<AElem> gen_img(small.rank);
  for (int j = 0; j < small.rank; ++j) {
    Word w;
    for (int l : small.schreier_word(j)) {
      int x = big.letter_of[small.C[std::abs(l) - 1]];
      require(x >= 0, ErrorCode::Internal, "marking set is not contained in the larger one");
      w.push_back(l > 0 ? x + 1 : -(x + 1));
    }
    gen_img[j] = big.to_A(big.rewrite(w, big.G.id));
  }
  std::vector<AElem> out;
  for (int k = 0; k < small.dimA(); ++k) {
    const auto& lift = small.lift_basis(k);
    std::vector<BigInt> acc(big.dimA(), 0);
    for (int j = 0; j < small.rank; ++j)
      if (lift[j] != 0)
        for (int t = 0; t < big.dimA(); ++t) acc[t] += lift[j] * gen_img[j][t];
    AElem a(big.dimA());
    for (int t = 0; t < big.dimA(); ++t) {
      BigInt v = acc[t];
      if (big.modulus[t]) {
        v %= big.modulus[t];
        if (v < 0) v += big.modulus[t];
      }
      a[t] = v.convert_to<long long>();
    }
    out.push_back(a);
  }
  return out;
}

// Pull an element of the larger model back to the smaller one (index in Bs), or -1.
inline int pull_back(const BrauerGroup& Bs, const BrauerGroup& Bb, const std::vector<AElem>& iota, int b) {
  const auto& e = Bb.elems[b];
  BrauerElement r;
  for (auto& img : iota) r.alpha.push_back(Bb.eval_alpha(e.alpha, img));
  for (int cls : Bs.L.classes) r.psi.push_back(e.psi[Bb.L.class_pos[cls]]);
  require(Bs.compatible(r), ErrorCode::Internal, "restricted Brauer pair is not compatible");
  return Bs.index_of(r);
}

}  // namespace hm
