#pragma once

#include "hm/common.hpp"
#include "hm/snf.hpp"

#include <complex>
#include <map>
#include <mutex>

namespace hm {

using Complex = std::complex<long double>;

inline Complex expi(const Rational& x) {  // e(x) = exp(2 pi i x)
  const long double two_pi = 6.283185307179586476925286766559L;
  long double t = to_ld(frac(x));
  return Complex(std::cos(two_pi * t), std::sin(two_pi * t));
}

// Integer coefficients of the m-th cyclotomic polynomial, low degree first.
inline const std::vector<long long>& cyclotomic_poly(int m) {
  static std::map<int, std::vector<long long>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Phi_m = prod_{d|m} (x^d - 1)^{mu(m/d)}
  std::vector<long long> p{1};
  auto mulpoly = [](const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  auto divpoly = [](std::vector<long long> a, const std::vector<long long>& b) {  // exact division, b monic
    std::vector<long long> q(a.size() - b.size() + 1, 0);
    for (size_t i = q.size(); i-- > 0;) {
      q[i] = a[i + b.size() - 1];
      for (size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
    }
    return q;
  };
  std::vector<std::vector<long long>> dens;
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    int mu = mobius_int(m / d);
    std::vector<long long> f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    if (mu == 1) p = mulpoly(p, f);
    else if (mu == -1) dens.push_back(f);
  }
  for (auto& f : dens) p = divpoly(p, f);
  // normalize sign so the polynomial is monic
  if (p.back() < 0)
    for (auto& c : p) c = -c;
  cache[m] = p;
  return cache[m];
}

inline int euler_phi(int m) {
  int r = m;
  for (long long p : prime_factors(m)) r = r / (int)p * ((int)p - 1);
  return r;
}

// Element of Q(zeta_m), stored in the power basis 1, z, ..., z^{phi(m)-1}.
class Cyc {
 public:
  Cyc() : m_(1), c_(1, Rational(0)) {}
  explicit Cyc(int m) : m_(m), c_(euler_phi(m), Rational(0)) {}
  Cyc(int m, const Rational& r) : Cyc(m) { c_[0] = r; }

  static Cyc zeta(int m, long long k) {
    Cyc z(m);
    std::vector<Rational> poly(m, Rational(0));
    poly[mod(k, m)] = 1;
    z.assign_reduced(poly);
    return z;
  }
  // e(x) for x with denominator dividing m
  static Cyc phase(int m, const Rational& x) {
    Rational y = frac(x) * m;
    require(denominator(y) == 1, ErrorCode::Internal, "phase denominator does not divide the conductor");
    return zeta(m, static_cast<long long>(numerator(y)));
  }

  int conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyc promote(int M) const {
    if (M == m_) return *this;
    require(M % m_ == 0, ErrorCode::Internal, "bad cyclotomic promotion");
    int s = M / m_;
    std::vector<Rational> poly(M, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) poly[(k * s) % M] += c_[k];
    Cyc r(M);
    r.assign_reduced(poly);
    return r;
  }

  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  Rational rational_part() const { return c_[0]; }

  Complex to_complex() const {
    Complex s = 0;
    for (size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) s += to_ld(c_[k]) * expi(Rational((long long)k, m_));
    return s;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    int M = (int)lcmll(a.m_, b.m_);
    Cyc x = a.promote(M), y = b.promote(M);
    for (size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
    return x;
  }
  friend Cyc operator-(const Cyc& a) {
    Cyc x = a;
    for (auto& v : x.c_) v = -v;
    return x;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    int M = (int)lcmll(a.m_, b.m_);
    Cyc x = a.promote(M), y = b.promote(M);
    std::vector<Rational> poly(2 * x.c_.size(), Rational(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) poly[i + j] += x.c_[i] * y.c_[j];
    }
    Cyc r(M);
    r.assign_reduced(poly);
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Rational& s) {
    Cyc x = a;
    for (auto& v : x.c_) v *= s;
    return x;
  }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    int M = (int)lcmll(a.m_, b.m_);
    return a.promote(M).c_ == b.promote(M).c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc inverse() const {
    require(!is_zero(), ErrorCode::Internal, "inverse of zero");
    int k = (int)c_.size();
    // rows: basis element z^i times *this
    std::vector<std::vector<Rational>> M(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i) {
      Cyc zi = zeta(m_, i);
      Cyc p = zi * *this;
      for (int j = 0; j < k; ++j) M[i][j] = p.c_[j];
    }
    std::vector<Rational> one(k, Rational(0));
    one[0] = 1;
    auto x = solve_left(M, one);
    require(x.has_value(), ErrorCode::Internal, "singular cyclotomic element");
    Cyc r(m_);
    r.c_ = *x;
    return r;
  }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  std::string str() const {
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + to_string(c_[k]) + ")";
      if (k) s += "*z" + std::to_string(m_) + "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void assign_reduced(std::vector<Rational> poly) {
    const auto& phi = cyclotomic_poly(m_);
    int deg = (int)phi.size() - 1;
    for (int i = (int)poly.size() - 1; i >= deg; --i) {
      if (poly[i] == 0) continue;
      Rational t = poly[i];
      for (int j = 0; j <= deg; ++j) poly[i - deg + j] -= t * phi[j];
    }
    c_.assign(poly.begin(), poly.begin() + std::min<size_t>(deg, poly.size()));
    c_.resize(deg, Rational(0));
  }

  int m_;
  std::vector<Rational> c_;
};

}  // namespace hm
