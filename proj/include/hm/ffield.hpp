#pragma once

#include "hm/common.hpp"

#include <vector>

namespace hm {

// Finite field GF(p^k) with elements 0..q-1 encoding polynomials over F_p in base p.
struct GF {
  int p = 0, k = 0, q = 0;
  std::vector<int> addt, mult, negt, invt;

  int add(int a, int b) const { return addt[a * q + b]; }
  int mul(int a, int b) const { return mult[a * q + b]; }
  int neg(int a) const { return negt[a]; }
  int sub(int a, int b) const { return add(a, negt[b]); }
  int inv(int a) const { return invt[a]; }

  static GF make(int q) {
    long long p;
    int k;
    require(is_prime_power(q, &p, &k), ErrorCode::ConfigError, "q=" + std::to_string(q) + " is not a prime power");
    require(q <= 1024, ErrorCode::ConfigError, "field too large for table arithmetic");
    GF F;
    F.p = (int)p;
    F.k = k;
    F.q = q;
    auto digits = [&](int a) {
      std::vector<int> d(k);
      for (int i = 0; i < k; ++i) { d[i] = a % F.p; a /= F.p; }
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int a = 0;
      for (int i = k - 1; i >= 0; --i) a = a * F.p + d[i];
      return a;
    };
    // monic irreducible modulus of degree k over F_p: first one without roots/factors (brute force)
    std::vector<int> modulus;
    if (k > 1) {
      int total = 1;
      for (int i = 0; i < k; ++i) total *= F.p;
      for (int c = 0; c < total && modulus.empty(); ++c) {
        std::vector<int> f = digits(c);
        f.push_back(1);
        // irreducible iff no monic factor of degree 1..k/2
        bool irr = true;
        for (int dg = 1; dg <= k / 2 && irr; ++dg) {
          int cnt = 1;
          for (int i = 0; i < dg; ++i) cnt *= F.p;
          for (int g = 0; g < cnt && irr; ++g) {
            std::vector<int> h(dg + 1);
            int t = g;
            for (int i = 0; i < dg; ++i) { h[i] = t % F.p; t /= F.p; }
            h[dg] = 1;
            std::vector<int> r = f;
            for (int i = (int)r.size() - 1; i >= dg; --i) {
              int co = r[i];
              if (!co) continue;
              for (int j = 0; j <= dg; ++j) r[i - dg + j] = (int)mod(r[i - dg + j] - co * h[j], F.p);
            }
            bool zero = true;
            for (int i = 0; i < dg; ++i) zero = zero && r[i] == 0;
            if (zero) irr = false;
          }
        }
        if (irr) modulus = f;
      }
    }
    F.addt.resize(q * q);
    F.mult.resize(q * q);
    F.negt.resize(q);
    F.invt.assign(q, 0);
    for (int a = 0; a < q; ++a) {
      auto da = digits(a);
      std::vector<int> dn(k);
      for (int i = 0; i < k; ++i) dn[i] = (int)mod(-da[i], F.p);
      F.negt[a] = encode(dn);
      for (int b = 0; b < q; ++b) {
        auto db = digits(b);
        std::vector<int> s(k);
        for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % F.p;
        F.addt[a * q + b] = encode(s);
        std::vector<int> prod(2 * k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % F.p;
        if (k > 1)
          for (int i = 2 * k - 1; i >= k; --i) {
            int co = prod[i];
            if (!co) continue;
            for (int j = 0; j <= k; ++j) prod[i - k + j] = (int)mod(prod[i - k + j] - co * modulus[j], F.p);
          }
        prod.resize(k);
        F.mult[a * q + b] = encode(prod);
      }
    }
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (F.mul(a, b) == 1) F.invt[a] = b;
    return F;
  }

  // Smallest generator of the multiplicative group.
  int primitive_element() const {
    for (int g = 1; g < q; ++g) {
      int x = g, o = 1;
      while (x != 1) { x = mul(x, g); ++o; }
      if (o == q - 1) return g;
    }
    return 1;
  }
};

// Polynomials over GF(q), coefficients low degree first, no trailing zeros (zero polynomial is empty).
using FPoly = std::vector<int>;

inline void fp_trim(FPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FPoly fp_mul(const GF& F, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  fp_trim(r);
  return r;
}

// a = quo * b + rem
inline void fp_divmod(const GF& F, FPoly a, const FPoly& b, FPoly& quo, FPoly& rem) {
  fp_trim(a);
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  int lead_inv = F.inv(b.back());
  for (int i = (int)a.size() - 1; i >= (int)b.size() - 1; --i) {
    int co = F.mul(a[i], lead_inv);
    if (!co) continue;
    int shift = i - ((int)b.size() - 1);
    quo[shift] = co;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(co, b[j]));
  }
  fp_trim(a);
  rem = a;
  fp_trim(quo);
}

// Monic polynomial of degree n from a code in [0, q^n): lower coefficients in base q.
inline FPoly fp_from_code(int q, int n, long long code) {
  FPoly a(n + 1);
  for (int i = 0; i < n; ++i) { a[i] = (int)(code % q); code /= q; }
  a[n] = 1;
  return a;
}

inline long long fp_code(int q, const FPoly& a) {
  long long c = 0;
  for (int i = (int)a.size() - 2; i >= 0; --i) c = c * q + a[i];
  return c;
}

// Monic irreducibles of each degree up to D, found by sieving out all products.
struct IrreducibleSieve {
  int q = 0, D = 0;
  std::vector<std::vector<long long>> codes;  // codes[n] = irreducible codes of degree n

  static IrreducibleSieve run(const GF& F, int D, double budget = default_budget()) {
    IrreducibleSieve S;
    S.q = F.q;
    S.D = D;
    S.codes.resize(D + 1);
    double total = 0, pw = 1;
    for (int n = 1; n <= D; ++n) { pw *= F.q; total += pw * (n / 2 + 1); }
    if (total > 40 * budget) throw BudgetError("irreducible sieve", total, 40 * budget);
    for (int n = 1; n <= D; ++n) {
      long long cnt = 1;
      for (int i = 0; i < n; ++i) cnt *= F.q;
      std::vector<bool> reducible(cnt, false);
      for (int i = 1; i <= n / 2; ++i) {
        int j = n - i;
        long long cntj = 1;
        for (int t = 0; t < j; ++t) cntj *= F.q;
        for (long long a : S.codes[i]) {
          FPoly A = fp_from_code(F.q, i, a);
          FPoly B(j + 1, 0);
          B[j] = 1;
          for (long long b = 0; b < cntj; ++b) {
            // B walks through all monic polynomials of degree j in code order
            if (b) {
              int t = 0;
              while (true) {
                B[t] = B[t] + 1;
                if (B[t] == F.q) { B[t] = 0; ++t; } else break;
              }
            }
            // product code, coefficients below the leading one
            long long code = 0;
            for (int k = n - 1; k >= 0; --k) {
              int s = 0;
              int lo = std::max(0, k - j), hi = std::min(i, k);
              for (int u = lo; u <= hi; ++u) s = F.add(s, F.mul(A[u], B[k - u]));
              code = code * F.q + s;
            }
            reducible[code] = true;
          }
        }
      }
      for (long long c = 0; c < cnt; ++c)
        if (!reducible[c]) S.codes[n].push_back(c);
    }
    return S;
  }
};

// Factorization into monic irreducibles with multiplicities, by trial division against the sieve.
inline std::vector<std::pair<FPoly, int>> fp_factor(const GF& F, const IrreducibleSieve& S, FPoly a) {
  std::vector<std::pair<FPoly, int>> out;
  fp_trim(a);
  for (int n = 1; n <= S.D && (int)a.size() - 1 >= n; ++n) {
    for (long long c : S.codes[n]) {
      if ((int)a.size() - 1 < n) break;
      FPoly P = fp_from_code(F.q, n, c);
      int e = 0;
      while (true) {
        FPoly quo, rem;
        fp_divmod(F, a, P, quo, rem);
        if (!rem.empty()) break;
        a = quo;
        ++e;
      }
      if (e) out.push_back({P, e});
    }
  }
  require(a.size() <= 1, ErrorCode::Internal, "factorization exceeded sieve degree");
  return out;
}

}  // namespace hm
