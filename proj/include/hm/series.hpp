#pragma once

#include "hm/common.hpp"

#include <vector>

namespace hm {

// Multivariate power series truncated at per-variable exponent bounds (inclusive). T() must be zero.
template <class T>
struct Series {
  std::vector<int> bound;
  std::vector<T> c;

  Series() = default;
  explicit Series(std::vector<int> b) : bound(std::move(b)) {
    size_t n = 1;
    for (int x : bound) n *= (size_t)(x + 1);
    c.assign(n, T());
  }

  size_t size() const { return c.size(); }
  size_t index(const std::vector<int>& e) const {
    size_t idx = 0;
    for (size_t i = bound.size(); i-- > 0;) idx = idx * (bound[i] + 1) + e[i];
    return idx;
  }
  std::vector<int> exps(size_t idx) const {
    std::vector<int> e(bound.size());
    for (size_t i = 0; i < bound.size(); ++i) {
      e[i] = (int)(idx % (bound[i] + 1));
      idx /= (bound[i] + 1);
    }
    return e;
  }
  bool fits(const std::vector<int>& e) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > bound[i]) return false;
    return true;
  }
  T& at(const std::vector<int>& e) { return c[index(e)]; }
  const T& at(const std::vector<int>& e) const { return c[index(e)]; }

  static Series constant(std::vector<int> b, const T& v) {
    Series s(std::move(b));
    s.c[0] = v;
    return s;
  }

  Series operator*(const Series& o) const {
    Series r(bound);
    std::vector<std::vector<int>> ea(size()), eb(o.size());
    for (size_t i = 0; i < size(); ++i) ea[i] = exps(i);
    for (size_t j = 0; j < o.size(); ++j) eb[j] = o.exps(j);
    std::vector<int> e(bound.size());
    for (size_t i = 0; i < size(); ++i) {
      if (c[i] == T()) continue;
      for (size_t j = 0; j < o.size(); ++j) {
        if (o.c[j] == T()) continue;
        bool ok = true;
        for (size_t v = 0; v < bound.size() && ok; ++v) {
          e[v] = ea[i][v] + eb[j][v];
          ok = e[v] <= bound[v];
        }
        if (ok) r.c[r.index(e)] += c[i] * o.c[j];
      }
    }
    return r;
  }
  Series operator+(const Series& o) const {
    Series r = *this;
    for (size_t i = 0; i < size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  Series scaled(const T& s) const {
    Series r = *this;
    for (auto& x : r.c) x = x * s;
    return r;
  }
};

}  // namespace hm
