#pragma once

#include "hm/common.hpp"
#include "hm/ffield.hpp"
#include "hm/series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace hm {

// Number of closed points of degree n on the affine line over F_q (necklace formula).
inline BigInt closed_points(long long q, int n) {
  require(n >= 1, ErrorCode::ConfigError, "degree must be positive");
  BigInt s = 0;
  for (long long d : divisors(n)) {
    int mu = mobius_int(d);
    if (mu) s += mu * ipow(BigInt(q), (unsigned)(n / d));
  }
  return s / n;
}

inline long double closed_points_ld(long long q, int n) { return closed_points(q, n).convert_to<long double>(); }

// Color c is a Frobenius orbit of degree deg[c]; it has deg[c] points over F_{q^n} when deg[c] | n, else none.
struct ColorSpec {
  std::vector<int> deg;
  long long points(size_t c, long long n) const { return n % deg[c] == 0 ? deg[c] : 0; }
  size_t size() const { return deg.size(); }
};

inline BigInt binom_big(const BigInt& n, int k) {
  if (k < 0 || n < k) return 0;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Generating series prod_P (1 + sum_c |c(F_q(P))| T_c^{deg P}) truncated at the exponent bounds.
inline Series<BigInt> conf_series(long long q, const ColorSpec& C, const std::vector<int>& bound) {
  require(bound.size() == C.size(), ErrorCode::ConfigError, "multidegree length differs from color count");
  int total = 0;
  for (int b : bound) total += b;
  Series<BigInt> F = Series<BigInt>::constant(bound, BigInt(1));
  for (int k = 1; k <= total; ++k) {
    Series<BigInt> S(bound);  // sum_c pts * T_c^k
    bool any = false;
    for (size_t c = 0; c < C.size(); ++c) {
      long long pts = C.points(c, k);
      if (pts == 0 || k > bound[c]) continue;
      std::vector<int> e(C.size(), 0);
      e[c] = k;
      S.at(e) = pts;
      any = true;
    }
    if (!any) continue;
    BigInt N = closed_points(q, k);
    Series<BigInt> term = Series<BigInt>::constant(bound, BigInt(1));
    Series<BigInt> power = Series<BigInt>::constant(bound, BigInt(1));
    for (int j = 1; j * k <= total; ++j) {
      power = power * S;
      BigInt bin = binom_big(N, j);
      if (bin == 0) break;
      term = term + power.scaled(bin);
    }
    F = F * term;
  }
  return F;
}

// |Conf_{C, nbar}(F_q)|: nbar[c] is the total degree of the points colored c.
inline BigInt conf_count(long long q, const ColorSpec& C, const std::vector<int>& nbar) {
  for (int x : nbar) require(x >= 0, ErrorCode::ConfigError, "negative multidegree");
  return conf_series(q, C, nbar).at(nbar);
}

inline bool conf_bound_check(long long q, const ColorSpec& C, const std::vector<int>& nbar) {
  int tot = 0;
  for (int x : nbar) tot += x;
  return conf_count(q, C, nbar) <= ipow(BigInt(q), (unsigned)tot);
}

// Coefficients of prod_{k <= N} (1 - X^k)^{-N_k} up to X^N; equals q^n for the affine line.
inline std::vector<BigInt> zeta_A1_partial(long long q, int N) {
  std::vector<BigInt> f(N + 1, 0);
  f[0] = 1;
  for (int k = 1; k <= N; ++k) {
    BigInt Nk = closed_points(q, k);
    // multiply by (1 - X^k)^{-Nk} = sum_j binom(Nk + j - 1, j) X^{jk}
    std::vector<BigInt> g(N + 1, 0);
    for (int i = 0; i <= N; ++i) {
      if (f[i] == 0) continue;
      for (int j = 0; i + j * k <= N; ++j) g[i + j * k] += f[i] * binom_big(Nk + j - 1, j);
    }
    f = g;
  }
  return f;
}

// Brute force: enumerate squarefree monic polynomials over GF(q), factor them and count colorings.
class BruteConf {
 public:
  explicit BruteConf(int q, int maxdeg) : F_(GF::make(q)), S_(IrreducibleSieve::run(F_, maxdeg)), maxdeg_(maxdeg) {
    // factorization shape (multiset of irreducible degrees) for every squarefree monic polynomial
    for (int n = 0; n <= maxdeg; ++n) {
      long long cnt = 1;
      for (int i = 0; i < n; ++i) cnt *= q;
      auto& shapes = shapes_[n];
      for (long long c = 0; c < cnt; ++c) {
        FPoly f = fp_from_code(q, n, c);
        auto fac = fp_factor(F_, S_, f);
        bool sqfree = true;
        std::vector<int> degs;
        for (auto& [P, e] : fac) {
          if (e > 1) sqfree = false;
          degs.push_back((int)P.size() - 1);
        }
        if (!sqfree) continue;
        std::sort(degs.begin(), degs.end());
        shapes[degs] += 1;
      }
    }
  }

  BigInt count(const ColorSpec& C, const std::vector<int>& nbar) const {
    int n = 0;
    for (int x : nbar) n += x;
    require(n <= maxdeg_, ErrorCode::ConfigError, "multidegree exceeds brute-force range");
    BigInt total = 0;
    auto it = shapes_.find(n);
    if (it == shapes_.end()) return 0;
    for (auto& [degs, mult] : it->second) {
      // count colorings: each point of degree k gets color c with deg_c | k, in deg_c ways
      std::vector<int> acc(C.size(), 0);
      BigInt ways = 0;
      std::function<void(size_t, BigInt)> rec = [&](size_t i, BigInt w) {
        if (i == degs.size()) {
          if (acc == nbar) ways += w;
          return;
        }
        for (size_t c = 0; c < C.size(); ++c) {
          long long pts = C.points(c, degs[i]);
          if (!pts || acc[c] + degs[i] > nbar[c]) continue;
          acc[c] += degs[i];
          rec(i + 1, w * pts);
          acc[c] -= degs[i];
        }
      };
      rec(0, BigInt(1));
      total += ways * mult;
    }
    return total;
  }

  const GF& field() const { return F_; }

 private:
  GF F_;
  IrreducibleSieve S_;
  int maxdeg_;
  std::map<int, std::map<std::vector<int>, long long>> shapes_;
};

inline BigInt brute_conf(int q, const ColorSpec& C, const std::vector<int>& nbar) {
  int n = 0;
  for (int x : nbar) n += x;
  BruteConf B(q, std::max(n, 1));
  return B.count(C, nbar);
}

}  // namespace hm
