#pragma once

#include "hm/conf.hpp"
#include "hm/ffield.hpp"

#include <functional>
#include <map>
#include <vector>

namespace hm {

// Height data for Z/l covers y^l = c F: f_by_exp[e] is the weight of the class g^e (e = 1..l-1).
struct KummerHeight {
  std::vector<int> f_by_exp;  // size l, entry 0 unused
  bool hinf_f = true;
  // (j, e): Frobenius at infinity g^j, inertia g^e; empty means all
  std::vector<std::pair<int, int>> omega;
};

struct KummerCounts {
  std::vector<BigInt> by_height;  // index d
  // refined counts: key = (number of geometric points with exponent e, e = 1..l-1), value summed over c
  std::map<std::vector<int>, BigInt> by_multidegree;
};

// Enumerates c in F_q^x / l-th powers and monic l-free F = prod P^{e_P} over sieved irreducibles;
// each nontrivial class with F != 1 is one geometrically connected G-cover.
class KummerOracle {
 public:
  KummerOracle(int l, int q, int dmax, double budget = default_budget()) : l_(l), q_(q), dmax_(dmax) {
    require(l >= 2 && (q - 1) % l == 0, ErrorCode::InvalidKummer, "l must divide q-1");
    require(prime_factors(l).size() == 1 && prime_factors(l)[0] == l, ErrorCode::InvalidKummer, "l must be prime");
    GF F = GF::make(q);
    auto S = IrreducibleSieve::run(F, std::max(dmax, 1), budget);
    for (int n = 1; n <= dmax; ++n)
      for (size_t i = 0; i < S.codes[n].size(); ++i) degs_.push_back(n);
  }

  // Counts up to dmax. Ramification at infinity is g^{-deg F}; Frobenius there is the class of c.
  KummerCounts count(const KummerHeight& H, bool refine = false) const {
    KummerCounts K;
    K.by_height.assign(dmax_ + 1, 0);
    int fmin = 1 << 30;
    for (int e = 1; e < l_; ++e) fmin = std::min(fmin, H.f_by_exp[e]);
    std::vector<int> npts(l_, 0);
    // DFS over irreducibles in order, each used with exponent 1..l-1
    std::function<void(size_t, int, long long)> rec = [&](size_t start, int h, long long degF) {
      if (degF > 0) leaf(H, h, degF, npts, refine, K);
      for (size_t i = start; i < degs_.size(); ++i) {
        int n = degs_[i];
        if (h + n * fmin > dmax_) break;  // degs_ is sorted
        for (int e = 1; e < l_; ++e) {
          int h2 = h + n * H.f_by_exp[e];
          if (h2 > dmax_) continue;
          npts[e] += n;
          rec(i + 1, h2, degF + (long long)n * e);
          npts[e] -= n;
        }
      }
    };
    rec(0, 0, 0);
    return K;
  }

  int l() const { return l_; }
  int q() const { return q_; }

 private:
  void leaf(const KummerHeight& H, int h, long long degF, const std::vector<int>& npts, bool refine,
            KummerCounts& K) const {
    int einf = (int)mod(-degF, l_);
    int hinf = (H.hinf_f && einf) ? H.f_by_exp[einf] : 0;
    int d = h + hinf;
    if (d > dmax_) return;
    long long covers = 0;
    if (H.omega.empty()) {
      covers = l_;
    } else {
      // class of c runs over the l cosets; its Frobenius index j is the coset index
      for (int j = 0; j < l_; ++j)
        for (auto& [oj, oe] : H.omega)
          if (oj == j && oe == einf) { ++covers; break; }
    }
    if (!covers) return;
    K.by_height[d] += covers;
    if (refine) K.by_multidegree[std::vector<int>(npts.begin() + 1, npts.end())] += covers;
  }

  int l_, q_, dmax_;
  std::vector<int> degs_;
};

inline BigInt kummer_count(int l, int q, int d, const KummerHeight& H, double budget = default_budget()) {
  KummerOracle K(l, q, d, budget);
  return K.count(H).by_height[d];
}

// 2 q^d (1 - q^-2)
inline Rational quadratic_closed_form(long long q, int d) { return Rational(2) * rpow(Rational(q), d) * (Rational(1) - Rational(1, q * q)); }

// Independent check for small cases: factor every monic polynomial and classify y^l = c F directly.
inline std::vector<BigInt> kummer_count_by_factoring(int l, int q, int dmax, const KummerHeight& H) {
  require((q - 1) % l == 0, ErrorCode::InvalidKummer, "l must divide q-1");
  GF F = GF::make(q);
  auto S = IrreducibleSieve::run(F, std::max(1, dmax * (l - 1)));
  std::vector<BigInt> out(dmax + 1, 0);
  for (int n = 1; n <= dmax * (l - 1); ++n) {
    long long cnt = 1;
    for (int i = 0; i < n; ++i) cnt *= q;
    for (long long code = 0; code < cnt; ++code) {
      auto fac = fp_factor(F, S, fp_from_code(q, n, code));
      bool free = true;
      int h = 0;
      for (auto& [P, e] : fac) {
        if (e >= l) free = false;
        else h += ((int)P.size() - 1) * H.f_by_exp[e];
      }
      if (!free) continue;
      int einf = (int)mod(-n, l);
      if (H.hinf_f && einf) h += H.f_by_exp[einf];
      if (h <= dmax) out[h] += l;
    }
  }
  return out;
}

}  // namespace hm
