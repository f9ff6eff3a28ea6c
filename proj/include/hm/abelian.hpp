#pragma once

#include "hm/common.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

namespace hm {

// Finite abelian group in invariant-factor form: Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and d_i > 1.
struct AbelianGroup {
  std::vector<long long> d;

  long long order() const {
    long long n = 1;
    for (auto x : d) n *= x;
    return n;
  }
  bool trivial() const { return d.empty(); }

  std::vector<long long> element(long long idx) const {
    std::vector<long long> v(d.size());
    for (size_t i = 0; i < d.size(); ++i) {
      v[i] = idx % d[i];
      idx /= d[i];
    }
    return v;
  }
  long long index(const std::vector<long long>& v) const {
    long long idx = 0;
    for (size_t i = d.size(); i-- > 0;) idx = idx * d[i] + mod(v[i], d[i]);
    return idx;
  }
  std::vector<long long> add(const std::vector<long long>& a, const std::vector<long long>& b) const {
    std::vector<long long> r(d.size());
    for (size_t i = 0; i < d.size(); ++i) r[i] = mod(a[i] + b[i], d[i]);
    return r;
  }
  std::string str() const {
    if (d.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "+" : "") + std::string("Z/") + std::to_string(d[i]);
    return s;
  }
  bool operator==(const AbelianGroup& o) const { return d == o.d; }
};

// Invariant factors from the counts |A[p^j]|, given an element-order oracle over n elements.
template <class OrderFn>
AbelianGroup abelian_invariants_from_orders(long long n, OrderFn elem_order) {
  std::vector<long long> orders(n);
  for (long long i = 0; i < n; ++i) orders[i] = elem_order(i);
  std::map<long long, std::vector<long long>> pparts;  // p -> list of exponents' prime-power cyclic orders
  for (long long p : prime_factors(n)) {
    std::vector<int> logs;  // log_p |A[p^j]|
    long long pj = 1;
    int prev = -1;
    for (int j = 0;; ++j) {
      long long cnt = 0;
      for (auto o : orders)
        if (pj % o == 0) ++cnt;
      int lg = 0;
      while (cnt > 1) { cnt /= p; ++lg; }
      logs.push_back(lg);
      if (lg == prev) break;
      prev = lg;
      pj *= p;
    }
    // number of cyclic factors of order >= p^j is logs[j]-logs[j-1]
    std::vector<long long> cyc;
    int J = static_cast<int>(logs.size());
    for (int j = 1; j < J; ++j) {
      int ge_j = logs[j] - logs[j - 1];
      int ge_next = (j + 1 < J) ? logs[j + 1] - logs[j] : 0;
      long long pw = 1;
      for (int t = 0; t < j; ++t) pw *= p;
      for (int t = 0; t < ge_j - ge_next; ++t) cyc.push_back(pw);
    }
    std::sort(cyc.begin(), cyc.end(), std::greater<>());
    pparts[p] = cyc;
  }
  size_t k = 0;
  for (auto& [p, c] : pparts) k = std::max(k, c.size());
  std::vector<long long> inv(k, 1);
  for (auto& [p, c] : pparts)
    for (size_t i = 0; i < c.size(); ++i) inv[i] *= c[i];
  std::reverse(inv.begin(), inv.end());
  return AbelianGroup{inv};
}

inline long long abelian_elem_order(const AbelianGroup& A, const std::vector<long long>& v) {
  long long o = 1;
  for (size_t i = 0; i < A.d.size(); ++i) o = lcmll(o, A.d[i] / gcdll(A.d[i], v[i]));
  return o;
}

// Subgroups as membership bitmaps over element indices.
inline std::vector<std::vector<char>> abelian_subgroups(const AbelianGroup& A) {
  const long long n = A.order();
  std::vector<std::vector<long long>> el(n);
  for (long long i = 0; i < n; ++i) el[i] = A.element(i);
  std::vector<int> add(n * n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) add[i * n + j] = (int)A.index(A.add(el[i], el[j]));
  auto key = [](const std::vector<char>& m) { return std::string(m.begin(), m.end()); };
  std::vector<std::vector<char>> subs;
  std::unordered_set<std::string> seen;
  std::vector<char> triv(n, 0);
  triv[0] = 1;
  subs.push_back(triv);
  seen.insert(key(triv));
  for (size_t h = 0; h < subs.size(); ++h) {
    std::vector<int> hs;
    for (long long i = 0; i < n; ++i)
      if (subs[h][i]) hs.push_back((int)i);
    for (long long x = 0; x < n; ++x) {
      if (subs[h][x]) continue;
      std::vector<char> m = subs[h];
      int kx = (int)x;
      while (!subs[h][kx]) {
        for (int hi : hs) m[add[hi * n + kx]] = 1;
        kx = add[kx * n + x];
      }
      auto k = key(m);
      if (seen.insert(k).second) subs.push_back(std::move(m));
    }
  }
  return subs;
}

inline AbelianGroup abelian_subgroup_type(const AbelianGroup& A, const std::vector<char>& m) {
  std::vector<long long> idx;
  for (long long i = 0; i < (long long)m.size(); ++i)
    if (m[i]) idx.push_back(i);
  return abelian_invariants_from_orders((long long)idx.size(),
                                        [&](long long i) { return abelian_elem_order(A, A.element(idx[i])); });
}

// Moebius function of the subgroup lattice, mu(A) = mu(0, A), via the recursion sum_{B <= A} mu(B) = [A = 0].
class MoebiusAbelian {
 public:
  long long operator()(const AbelianGroup& A) {
    auto it = memo_.find(A.d);
    if (it != memo_.end()) return it->second;
    long long val;
    if (A.trivial()) {
      val = 1;
    } else {
      long long s = 0;
      for (auto& m : abelian_subgroups(A)) {
        long long sz = std::count(m.begin(), m.end(), 1);
        if (sz == A.order()) continue;
        s += (*this)(abelian_subgroup_type(A, m));
      }
      val = -s;
    }
    memo_[A.d] = val;
    return val;
  }

 private:
  std::map<std::vector<long long>, long long> memo_;
};

inline long long moebius_abelian(const AbelianGroup& A) {
  static MoebiusAbelian m;
  return m(A);
}

// All abelian groups of order n, as invariant-factor lists.
inline std::vector<AbelianGroup> abelian_groups_of_order(long long n) {
  // partitions for each prime exponent, combined
  std::vector<std::vector<std::vector<long long>>> per_prime;
  long long t = n;
  for (long long p : prime_factors(n)) {
    int e = 0;
    while (t % p == 0) { t /= p; ++e; }
    std::vector<std::vector<long long>> opts;
    std::vector<int> part;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
      if (rem == 0) {
        std::vector<long long> c;
        for (int x : part) {
          long long pw = 1;
          for (int i = 0; i < x; ++i) pw *= p;
          c.push_back(pw);
        }
        opts.push_back(c);
        return;
      }
      for (int x = std::min(rem, maxp); x >= 1; --x) {
        part.push_back(x);
        rec(rem - x, x);
        part.pop_back();
      }
    };
    rec(e, e);
    per_prime.push_back(opts);
  }
  std::vector<AbelianGroup> out;
  std::vector<size_t> choice(per_prime.size(), 0);
  while (true) {
    size_t k = 0;
    for (size_t i = 0; i < per_prime.size(); ++i) k = std::max(k, per_prime[i][choice[i]].size());
    std::vector<long long> inv(k, 1);
    for (size_t i = 0; i < per_prime.size(); ++i) {
      auto& c = per_prime[i][choice[i]];  // descending
      for (size_t j = 0; j < c.size(); ++j) inv[j] *= c[j];
    }
    std::reverse(inv.begin(), inv.end());
    out.push_back(AbelianGroup{inv});
    size_t i = 0;
    while (i < per_prime.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == per_prime.size()) break;
  }
  return out;
}

}  // namespace hm
