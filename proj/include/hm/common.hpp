#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  InvalidGroup,
  NonCoprimeOrder,
  NotNormal,
  QuotientNotAbelian,
  IndexOutOfRange,
  BudgetExceeded,
  NotGenerating,
  NonInvariantInput,
  ClassOutsideC,
  NotInSubset,
  NonAlgebraicResidue,
  UnbalancedInput,
  LatticeViolation,
  InvalidKummer,
  ConfigError,
  Internal,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::NonCoprimeOrder: return "NonCoprimeOrder";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::QuotientNotAbelian: return "QuotientNotAbelian";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::NonInvariantInput: return "NonInvariantInput";
    case ErrorCode::ClassOutsideC: return "ClassOutsideC";
    case ErrorCode::NotInSubset: return "NotInSubset";
    case ErrorCode::NonAlgebraicResidue: return "NonAlgebraicResidue";
    case ErrorCode::UnbalancedInput: return "UnbalancedInput";
    case ErrorCode::LatticeViolation: return "LatticeViolation";
    case ErrorCode::InvalidKummer: return "InvalidKummer";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double attempted, double budget)
      : Error(ErrorCode::BudgetExceeded,
              what + " (attempted " + std::to_string(attempted) + ", budget " +
                  std::to_string(budget) + ")"),
        attempted_(attempted), budget_(budget) {}
  double attempted() const { return attempted_; }
  double budget() const { return budget_; }

 private:
  double attempted_, budget_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// Global state budget; HM_BUDGET overrides the default.
inline double default_budget() {
  if (const char* env = std::getenv("HM_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e8;
}

inline long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long gcdll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline long long lcmll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcdll(a, b) * b;
}

inline long long modinv(long long a, long long m) {
  if (m == 1) return 0;
  long long g = m, x = 0, x1 = 1, b = mod(a, m);
  long long a0 = b;
  while (a0 != 0) {
    long long t = g / a0;
    long long tmp = g - t * a0; g = a0; a0 = tmp;
    tmp = x - t * x1; x = x1; x1 = tmp;
  }
  if (g != 1) throw Error(ErrorCode::NonCoprimeOrder, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod(x, m);
}

inline int mobius_int(long long n) {
  int mu = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::vector<long long> divisors(long long n) {
  std::vector<long long> d;
  for (long long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> ps;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline bool is_prime_power(long long q, long long* p_out = nullptr, int* k_out = nullptr) {
  if (q < 2) return false;
  auto ps = prime_factors(q);
  if (ps.size() != 1) return false;
  int k = 0;
  long long t = q;
  while (t > 1) { t /= ps[0]; ++k; }
  if (p_out) *p_out = ps[0];
  if (k_out) *k_out = k;
  return true;
}

inline BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r = 1, x = b;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Representative of x mod 1 in [0,1).
inline Rational frac(const Rational& x) {
  BigInt n = numerator(x), d = denominator(x);
  BigInt r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

inline Rational rpow(const Rational& b, long long e) {
  Rational r = 1;
  Rational x = e >= 0 ? b : Rational(1) / b;
  unsigned long long k = e >= 0 ? e : -e;
  while (k) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline long double to_ld(const Rational& r) {
  return static_cast<long double>(numerator(r).convert_to<long double>() /
                                  denominator(r).convert_to<long double>());
}

}  // namespace hm
