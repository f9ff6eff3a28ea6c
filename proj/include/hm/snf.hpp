#pragma once

#include "hm/common.hpp"

#include <algorithm>
#include <optional>

namespace hm {

using IntMat = std::vector<std::vector<BigInt>>;

// Smith normal form of the row lattice of L (m x n). Produces unimodular P (n x n) and its inverse
// such that rowspace(L) * P = rowspace(diag(d)), with d_1 | d_2 | ... and trailing zeros for free coordinates.
struct SmithForm {
  int n = 0;
  std::vector<BigInt> diag;  // length n; 0 marks a free coordinate
  IntMat P, Pinv;
};

namespace detail {

inline void col_addmul(IntMat& M, int dst, int src, const BigInt& k, int rows) {  // col dst += k * col src
  for (int i = 0; i < rows; ++i)
    if (M[i][src] != 0) M[i][dst] += k * M[i][src];
}
inline void row_addmul(IntMat& M, int dst, int src, const BigInt& k) {  // row dst += k * row src
  auto& d = M[dst];
  auto& s = M[src];
  for (size_t j = 0; j < s.size(); ++j)
    if (s[j] != 0) d[j] += k * s[j];
}

}  // namespace detail

inline SmithForm smith_form(IntMat L, int n) {
  // drop zero and duplicate rows first; they do not change the row lattice
  L.erase(std::remove_if(L.begin(), L.end(),
                         [](const std::vector<BigInt>& r) { return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; }); }),
          L.end());
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());
  int m = (int)L.size();
  SmithForm S;
  S.n = n;
  S.P.assign(n, std::vector<BigInt>(n, 0));
  S.Pinv.assign(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) S.P[i][i] = S.Pinv[i][i] = 1;

  // column op "col dst += k col src" on L and P is matched by "row src -= k row dst" on Pinv
  auto col_op = [&](int dst, int src, const BigInt& k) {
    detail::col_addmul(L, dst, src, k, m);
    detail::col_addmul(S.P, dst, src, k, n);
    detail::row_addmul(S.Pinv, src, dst, -k);
  };
  auto col_swap = [&](int a, int b) {
    for (auto& r : L) std::swap(r[a], r[b]);
    for (auto& r : S.P) std::swap(r[a], r[b]);
    std::swap(S.Pinv[a], S.Pinv[b]);
  };
  auto col_neg = [&](int a) {
    for (auto& r : L) r[a] = -r[a];
    for (auto& r : S.P) r[a] = -r[a];
    for (auto& x : S.Pinv[a]) x = -x;
  };

  int t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      // pivot: smallest nonzero |entry| in the remaining block
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (L[i][j] != 0) {
            BigInt a = abs(L[i][j]);
            if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
          }
      if (pi < 0) goto done;
      std::swap(L[t], L[pi]);
      if (pj != t) col_swap(t, pj);
      if (L[t][t] < 0) col_neg(t);
      bool clean = true;
      for (int i = t + 1; i < m; ++i)
        if (L[i][t] != 0) {
          BigInt qq = L[i][t] / L[t][t];
          detail::row_addmul(L, i, t, -qq);
          if (L[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (L[t][j] != 0) {
          BigInt qq = L[t][j] / L[t][t];
          col_op(j, t, -qq);
          if (L[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility of the remaining block
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n; ++j)
          if (L[i][j] % L[t][t] != 0) {
            detail::row_addmul(L, t, i, BigInt(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
done:
  S.diag.assign(n, 0);
  for (int i = 0; i < t && i < m; ++i) S.diag[i] = L[i][i];
  return S;
}

// Solve x * M = b over Q for square nonsingular M (row-vector convention). Returns nullopt if singular.
inline std::optional<std::vector<Rational>> solve_left(const std::vector<std::vector<Rational>>& M, const std::vector<Rational>& b) {
  int k = (int)M.size();
  // x M = b  <=>  M^T x^T = b^T
  std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) A[i][j] = M[j][i];
    A[i][k] = b[i];
  }
  for (int c = 0; c < k; ++c) {
    int p = -1;
    for (int r = c; r < k; ++r)
      if (A[r][c] != 0) { p = r; break; }
    if (p < 0) return std::nullopt;
    std::swap(A[c], A[p]);
    for (int r = 0; r < k; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (int j = c; j <= k; ++j) A[r][j] -= f * A[c][j];
    }
  }
  std::vector<Rational> x(k);
  for (int i = 0; i < k; ++i) x[i] = A[i][k] / A[i][i];
  return x;
}

// Solve M * x = b over Q (column convention).
inline std::optional<std::vector<Rational>> solve_right(const std::vector<std::vector<Rational>>& M, const std::vector<Rational>& b) {
  int k = (int)M.size();
  std::vector<std::vector<Rational>> T(k, std::vector<Rational>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) T[i][j] = M[j][i];
  return solve_left(T, b);
}

}  // namespace hm
