#pragma once

#include "hm/common.hpp"
#include "hm/group.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace hm {

using Tuple = std::vector<int>;  // element indices

enum class BraidDir { Left, Right };

// i is 1-based: acts on the pair (t_i, t_{i+1}).
// Left: (g, h) -> (g h g^-1, g).  Right: (g, h) -> (h, h^-1 g h).
inline Tuple braid_move(const FiniteGroup& G, Tuple t, int i, BraidDir dir) {
  require(i >= 1 && i < (int)t.size(), ErrorCode::IndexOutOfRange, "braid index out of range");
  int& a = t[i - 1];
  int& b = t[i];
  int g = a, h = b;
  if (dir == BraidDir::Left) {
    a = G.conj(g, h);
    b = g;
  } else {
    a = h;
    b = G.conj(G.inv(h), g);
  }
  return t;
}

struct Orbit {
  Tuple rep;  // lexicographically least (by letter order, i.e. element index order) member
  long long size = 0;
};

struct OrbitCatalog {
  std::vector<long long> nbar;
  int gamma = 0;
  bool connected = true;
  long long admissible = 0;  // number of tuples satisfying the constraints
  std::vector<Orbit> orbits;
};

// Tuples over C with nbar[c] entries in class_list[c] and (t_1 ... t_n)^-1 = gamma.
class BraidEnumerator {
 public:
  BraidEnumerator(const FiniteGroup& G, const ConjugacyTable& T, std::vector<int> class_list, double budget = default_budget())
      : G_(G), T_(T), cls_(std::move(class_list)), budget_(budget) {
    std::sort(cls_.begin(), cls_.end());
    for (size_t c = 0; c < cls_.size(); ++c)
      for (int x : T.classes[cls_[c]]) {
        letters_.push_back(x);
        letter_cls_.push_back((int)c);
      }
    // letters sorted by element index so that key order is tuple order
    std::vector<size_t> idx(letters_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return letters_[a] < letters_[b]; });
    std::vector<int> l2, c2;
    for (auto i : idx) { l2.push_back(letters_[i]); c2.push_back(letter_cls_[i]); }
    letters_ = l2;
    letter_cls_ = c2;
    letter_of_.assign(G.n, -1);
    for (size_t i = 0; i < letters_.size(); ++i) letter_of_[letters_[i]] = (int)i;
    bits_ = 1;
    while ((1u << bits_) < letters_.size()) ++bits_;
  }

  const std::vector<int>& classes() const { return cls_; }

  OrbitCatalog enumerate(const std::vector<long long>& nbar, int gamma, bool connected) {
    require(nbar.size() == cls_.size(), ErrorCode::ConfigError, "multidegree length differs from class count");
    int n = 0;
    double states = 1;
    for (size_t c = 0; c < nbar.size(); ++c) {
      require(nbar[c] >= 0, ErrorCode::ConfigError, "negative multidegree");
      for (long long k = 0; k < nbar[c]; ++k) {
        ++n;
        states = states * n / (k + 1) * T_.classes[cls_[c]].size();
      }
    }
    if (states > budget_) throw BudgetError("braid orbit enumeration (tuples of the given multidegree)", states, budget_);
    require(n * bits_ <= 128, ErrorCode::BudgetExceeded, "tuple too long for packed keys");
    n_ = n;
    OrbitCatalog cat;
    cat.nbar = nbar;
    cat.gamma = gamma;
    cat.connected = connected;

    keys_.clear();
    std::vector<long long> rem = nbar;
    std::vector<int> cur(n);
    int target = G_.inv(gamma);
    dfs(0, G_.id, rem, cur, target, connected);
    cat.admissible = (long long)keys_.size();

    std::vector<char> seen(keys_.size(), 0);
    std::vector<size_t> queue;
    std::vector<int> t(n);
    for (size_t s = 0; s < keys_.size(); ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      queue.assign(1, s);
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        decode(keys_[queue[qi]], t);
        for (int i = 0; i + 1 < n; ++i) {
          int g = letters_[t[i]], h = letters_[t[i + 1]];
          int a = t[i], b = t[i + 1];
          t[i] = letter_of_[G_.conj(g, h)];
          t[i + 1] = a;
          size_t j = find(encode(t));
          if (!seen[j]) {
            seen[j] = 1;
            queue.push_back(j);
          }
          t[i] = a;
          t[i + 1] = b;
        }
      }
      Orbit o;
      decode(keys_[s], t);
      for (int x : t) o.rep.push_back(letters_[x]);
      o.size = (long long)queue.size();
      cat.orbits.push_back(std::move(o));
    }
    return cat;
  }

 private:
  using Key = unsigned __int128;

  Key encode(const std::vector<int>& t) const {
    Key k = 0;
    for (int x : t) k = (k << bits_) | (Key)x;
    return k;
  }
  void decode(Key k, std::vector<int>& t) const {
    Key mask = ((Key)1 << bits_) - 1;
    for (int i = n_ - 1; i >= 0; --i) {
      t[i] = (int)(k & mask);
      k >>= bits_;
    }
  }
  size_t find(Key k) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    require(it != keys_.end() && *it == k, ErrorCode::Internal, "braid move left the admissible set");
    return (size_t)(it - keys_.begin());
  }
  bool generates_memo(const std::vector<int>& cur) {
    unsigned long long sig = 0;
    std::vector<int> gens;
    for (int x : cur) {
      if (x < 64) sig |= 1ull << x;
      gens.push_back(letters_[x]);
    }
    if (letters_.size() <= 64) {
      auto it = gen_memo_.find(sig);
      if (it != gen_memo_.end()) return it->second;
      bool r = G_.generates(gens);
      gen_memo_[sig] = r;
      return r;
    }
    return G_.generates(gens);
  }
  // letters are visited in increasing order, so keys come out sorted
  void dfs(int pos, int prod, std::vector<long long>& rem, std::vector<int>& cur, int target, bool connected) {
    if (pos == n_) {
      if (prod != target) return;
      if (connected && !generates_memo(cur)) return;
      keys_.push_back(encode(cur));
      return;
    }
    for (size_t x = 0; x < letters_.size(); ++x) {
      int c = letter_cls_[x];
      if (!rem[c]) continue;
      --rem[c];
      cur[pos] = (int)x;
      dfs(pos + 1, G_.mul(prod, letters_[x]), rem, cur, target, connected);
      ++rem[c];
    }
  }

  const FiniteGroup& G_;
  const ConjugacyTable& T_;
  std::vector<int> cls_;
  double budget_;
  std::vector<int> letters_, letter_cls_, letter_of_;
  int bits_ = 1;
  int n_ = 0;
  std::vector<Key> keys_;
  std::map<unsigned long long, bool> gen_memo_;
};

inline OrbitCatalog orbit_enumerate(const FiniteGroup& G, const ConjugacyTable& T, const std::vector<int>& class_list,
                                    const std::vector<long long>& nbar, int gamma, bool connected,
                                    double budget = default_budget()) {
  BraidEnumerator E(G, T, class_list, budget);
  return E.enumerate(nbar, gamma, connected);
}

struct ScanRow {
  std::vector<long long> nbar;
  int gamma = 0;
  long long orbits = 0;
  long long admissible = 0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  // least N such that every scanned row with min(nbar) >= N has orbit count in {0, target}; empirical only
  int observed_N = -1;
};

// Connected orbit counts for every nbar with lo <= n_c <= hi and every gamma (or only the given one).
// target_of(nbar, gamma) gives the expected stable count.
template <class Target>
ScanResult stabilization_scan(const FiniteGroup& G, const ConjugacyTable& T, const std::vector<int>& class_list, int lo,
                              int hi, int gamma_only, Target target_of, double budget = default_budget()) {
  BraidEnumerator E(G, T, class_list, budget);
  ScanResult R;
  const size_t k = E.classes().size();
  std::vector<long long> nbar(k, lo);
  while (true) {
    for (int g = 0; g < G.n; ++g) {
      if (gamma_only >= 0 && g != gamma_only) continue;
      auto cat = E.enumerate(nbar, g, true);
      R.rows.push_back({nbar, g, (long long)cat.orbits.size(), cat.admissible});
    }
    size_t i = 0;
    while (i < k && nbar[i] == hi) nbar[i++] = lo;
    if (i == k) break;
    ++nbar[i];
  }
  for (int N = hi; N >= lo; --N) {
    bool ok = true;
    for (auto& r : R.rows) {
      long long m = *std::min_element(r.nbar.begin(), r.nbar.end());
      if (m >= N && r.orbits != target_of(r.nbar, r.gamma)) ok = false;
    }
    if (!ok) break;
    R.observed_N = N;
  }
  return R;
}

}  // namespace hm
