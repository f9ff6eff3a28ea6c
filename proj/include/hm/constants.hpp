#pragma once

#include "hm/brauer.hpp"
#include "hm/conf.hpp"
#include "hm/corpus.hpp"
#include "hm/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>

namespace hm {

// ---------------------------------------------------------------- local points at infinity

// A pair (sigma, gamma) with sigma gamma^r sigma^-1 = gamma, up to simultaneous conjugation.
struct LocalPoint {
  int sigma = 0, gamma = 0;
  long long aut_order = 0;  // order of the simultaneous centralizer
};

inline std::vector<LocalPoint> local_points(const FiniteGroup& G, long long r) {
  std::vector<std::vector<char>> seen(G.n, std::vector<char>(G.n, 0));
  std::vector<LocalPoint> out;
  for (int s = 0; s < G.n; ++s)
    for (int g = 0; g < G.n; ++g) {
      if (seen[s][g] || G.conj(s, G.pow(g, r)) != g) continue;
      long long orbit = 0;
      for (int h = 0; h < G.n; ++h) {
        int s2 = G.conj(h, s), g2 = G.conj(h, g);
        if (!seen[s2][g2]) { seen[s2][g2] = 1; ++orbit; }
      }
      out.push_back({s, g, G.n / orbit});
    }
  return out;
}

inline int local_point_index(const FiniteGroup& G, const std::vector<LocalPoint>& pts, int sigma, int gamma) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (int h = 0; h < G.n; ++h)
      if (G.conj(h, pts[i].sigma) == sigma && G.conj(h, pts[i].gamma) == gamma) return (int)i;
  return -1;
}

enum class HInf { F, Zero };

struct HeightSpec {
  std::vector<int> f;  // per conjugacy class label
  HInf hinf = HInf::F;
  bool omega_all = true;
  std::vector<std::pair<int, int>> omega;  // (sigma, gamma) pairs, matched up to simultaneous conjugation
};

inline int hinf_value(const HeightSpec& H, const ConjugacyTable& T, int gamma, int id) {
  if (H.hinf == HInf::Zero || gamma == id) return 0;
  return H.f[T.class_of[gamma]];
}

// ---------------------------------------------------------------- Euler factors

// A Frobenius orbit of classes entering an Euler product: degree m, weight f, corestricted residue rho.
struct OrbitTerm {
  int m = 1;
  int f = 1;
  Rational rho = 0;
};

struct ExactValue {
  Complex value;
  std::optional<Cyc> exact;
};

inline int conductor_of(const std::vector<Rational>& xs) {
  long long m = 1;
  for (auto& x : xs) m = lcmll(m, denominator(frac(x)).convert_to<long long>());
  return (int)m;
}

inline std::optional<Rational> integral_q_power(long long q, const Rational& e) {
  if (denominator(e) != 1) return std::nullopt;
  return rpow(Rational(q), numerator(e).convert_to<long long>());
}

inline long double q_power_ld(long long q, const Rational& e) { return std::pow((long double)q, to_ld(e)); }

// 1 + sum over orbits with m | k of m e((k/m) rho - k f alpha) q^{-k a f}
inline ExactValue euler_factor(const std::vector<OrbitTerm>& terms, const Rational& alpha, const Rational& a, long long q,
                               int k) {
  ExactValue v{Complex(1), Cyc(1, Rational(1))};
  for (auto& t : terms) {
    if (k % t.m) continue;
    Rational phase = Rational(k / t.m) * t.rho - Rational(k) * t.f * alpha;
    Rational expo = -Rational(k) * a * t.f;
    v.value += (long double)t.m * expi(phase) * q_power_ld(q, expo);
    auto qp = integral_q_power(q, expo);
    if (v.exact && qp) *v.exact += Cyc::phase(conductor_of({phase}), phase) * (*qp * t.m);
    else v.exact.reset();
  }
  return v;
}

// Coefficients of F_beta(X) = prod_P (1 + sum_c e(cor d_c) X^{deg P f(c)}) up to X^N.
inline std::vector<Cyc> F_series(const std::vector<OrbitTerm>& terms, long long q, int N) {
  std::vector<Rational> phases;
  for (auto& t : terms) phases.push_back(t.rho);
  int cond = 1;
  for (auto& t : terms) cond = (int)lcmll(cond, (long long)conductor_of({t.rho}) * t.m);
  std::vector<Cyc> F(N + 1, Cyc(cond));
  F[0] = Cyc(cond, Rational(1));
  for (int k = 1; k <= N; ++k) {
    std::vector<Cyc> P(N + 1, Cyc(cond));
    bool any = false;
    for (auto& t : terms) {
      if (k % t.m || (long long)k * t.f > N) continue;
      P[k * t.f] += Cyc::phase(cond, Rational(k / t.m) * t.rho) * Rational(t.m);
      any = true;
    }
    if (!any) continue;
    BigInt Nk = closed_points(q, k);
    // (1 + P)^Nk = sum_j binom(Nk, j) P^j
    std::vector<Cyc> term(N + 1, Cyc(cond)), pw(N + 1, Cyc(cond));
    term[0] = pw[0] = Cyc(cond, Rational(1));
    for (int j = 1; j * k <= N; ++j) {
      std::vector<Cyc> nx(N + 1, Cyc(cond));
      for (int i = 0; i <= N; ++i) {
        if (pw[i].is_zero()) continue;
        for (int s = 1; i + s <= N; ++s)
          if (!P[s].is_zero()) nx[i + s] += pw[i] * P[s];
      }
      pw = nx;
      BigInt bin = binom_big(Nk, j);
      if (bin == 0) break;
      for (int i = 0; i <= N; ++i)
        if (!pw[i].is_zero()) term[i] += pw[i] * Rational(bin);
    }
    std::vector<Cyc> nf(N + 1, Cyc(cond));
    for (int i = 0; i <= N; ++i) {
      if (F[i].is_zero()) continue;
      for (int s = 0; i + s <= N; ++s)
        if (!term[s].is_zero()) nf[i + s] += F[i] * term[s];
    }
    F = nf;
  }
  return F;
}

// ---------------------------------------------------------------- regularized products

namespace detail {

inline Complex clog1p(const Complex& w) {
  long double re = w.real(), im = w.imag();
  if (std::abs(w) < 0.5L) {
    long double mag = 0.5L * std::log1p(2 * re + re * re + im * im);
    return Complex(mag, std::atan2(im, 1 + re));
  }
  return std::log(Complex(1) + w);
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

using MultiIndex = std::vector<int>;
using Poly = std::map<MultiIndex, BigInt>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      MultiIndex e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

}  // namespace detail

struct TauValue {
  Complex value;              // includes a^b
  long double bound = 0;      // rigorous bound on |value - true limit|
  std::optional<Cyc> exact;   // when the factorization is finite and all q-powers are rational
  int poles = 0;
  int cutoff = 0;
};

// lim_{X -> e(-alpha) q^-a} (1 - e(alpha) q^a X)^b F_beta(X), via the factorization
// 1 + sum y_i = prod_mu (1 - y^mu)^{-e_mu} and prod_P (1 - T^{deg P})^{-1} = 1/(1 - qT).
inline TauValue regularized_tau(const std::vector<OrbitTerm>& terms, const Rational& alpha, int fmin, int b, long long q,
                                int D) {
  using detail::MultiIndex;
  const Rational a(1, fmin);
  const long double ald = to_ld(a);
  std::vector<Rational> theta;
  std::vector<int> wt;
  for (auto& t : terms)
    for (int j = 0; j < t.m; ++j) {
      theta.push_back(frac((Rational(j) + t.rho) / t.m - Rational(t.f) * alpha));
      wt.push_back(t.f);
    }
  const int V = (int)theta.size();
  std::vector<char> pole(V, 0);
  int npoles = 0;
  for (int i = 0; i < V; ++i)
    if (wt[i] == fmin && theta[i] == 0) { pole[i] = 1; ++npoles; }
  require(npoles <= b, ErrorCode::Internal, "more poles than orbits of minimal weight");
  if (npoles < b) throw Error(ErrorCode::NotInSubset, "Brauer element is not in the subset for this character");

  // log(1 + sum y) coefficients c_mu and exponents e_mu for weighted degree <= B
  const int B = 2 * fmin;
  std::map<MultiIndex, Rational> c, e;
  {
    MultiIndex mu(V, 0);
    std::function<void(int, int)> rec = [&](int i, int w) {
      if (i == V) {
        int n = 0;
        for (int x : mu) n += x;
        if (!n) return;
        BigInt den = 1;
        for (int x : mu) den *= detail::factorial(x);
        Rational v(detail::factorial(n - 1), den);
        c[mu] = n % 2 ? v : -v;
        return;
      }
      for (int x = 0; w + x * wt[i] <= B; ++x) {
        mu[i] = x;
        rec(i + 1, w + x * wt[i]);
      }
      mu[i] = 0;
    };
    rec(0, 0);
  }
  for (auto& [mu, cmu] : c) {
    int g = 0;
    for (int x : mu) g = std::gcd(g, x);
    Rational s = 0;
    for (int k = 1; k <= g; ++k) {
      if (g % k) continue;
      int mk = mobius_int(k);
      if (!mk) continue;
      MultiIndex sub(mu);
      for (auto& x : sub) x /= k;
      s += Rational(mk, k) * c.at(sub);
    }
    require(denominator(s) == 1, ErrorCode::Internal, "non-integral exponent in zeta factorization");
    if (s != 0) e[mu] = s;
  }
  auto wdeg = [&](const MultiIndex& mu) {
    int w = 0;
    for (int i = 0; i < V; ++i) w += mu[i] * wt[i];
    return w;
  };
  auto phase_of = [&](const MultiIndex& mu) {
    Rational s = 0;
    for (int i = 0; i < V; ++i) s += theta[i] * mu[i];
    return frac(s);
  };
  auto is_pole = [&](const MultiIndex& mu) {
    int n = 0, idx = -1;
    for (int i = 0; i < V; ++i)
      if (mu[i]) { n += mu[i]; idx = i; }
    return n == 1 && pole[idx];
  };

  TauValue out;
  out.poles = npoles;
  out.cutoff = D;
  // closed-form zeta limits
  Complex closed = std::pow((Complex)ald, b);
  for (auto& [mu, emu] : e) {
    if (is_pole(mu)) continue;
    int w = wdeg(mu);
    Complex qz = expi(phase_of(mu)) * q_power_ld(q, Rational(1) - a * w);
    long long ei = numerator(emu).convert_to<long long>();
    closed *= std::pow(Complex(1) - qz, (long double)-ei);
  }
  // absolutely convergent remainder prod_{k <= D} g_k^{N_k}
  Complex logG = 0;
  for (int k = 1; k <= D; ++k) {
    long double Nk = closed_points_ld(q, k);
    Complex s = 0;
    for (int i = 0; i < V; ++i) s += expi(theta[i] * k) * q_power_ld(q, -a * wt[i] * k);
    Complex lg = detail::clog1p(s);
    for (auto& [mu, emu] : e) {
      Complex z = expi(phase_of(mu) * k) * q_power_ld(q, -a * wdeg(mu) * k);
      lg += to_ld(emu) * detail::clog1p(-z);
    }
    logG += Nk * lg;
  }
  out.value = closed * std::exp(logG);

  // tail bound: |log g_k| <= sum_{w > B} M_w q^{-a w k}, M = -log(1 - S) - sum |e_mu| log(1 - x^{w_mu})
  {
    int wmax = 0;
    for (int w : wt) wmax = std::max(wmax, w);
    const int K = B + 6 * fmin + wmax;
    std::vector<long double> s(K + 1, 0), p(K + 1, 0), M(K + 1, 0);
    for (int w : wt) s[w] += 1;
    p[0] = 1;
    for (int w = 1; w <= K; ++w)
      for (int j = 1; j <= w; ++j) p[w] += s[j] * p[w - j];
    for (int w = 1; w <= K; ++w) {
      long double acc = 0;
      for (int j = 1; j <= w; ++j) acc += j * s[j] * p[w - j];
      M[w] = acc / w;
    }
    for (auto& [mu, emu] : e) {
      int w = wdeg(mu);
      long double ae = std::fabs(to_ld(emu));
      for (int k = 1; k * w <= K; ++k) M[k * w] += ae / k;
    }
    const long double lq = std::log((long double)q);
    const long double x = std::exp(lq * (1 - ald * (B + 1)));
    long double sum = 0;
    for (int w = B + 1; w <= K; ++w) sum += M[w] * std::exp(lq * (D + 1) * (1 - ald * w));
    const long double rho1 = std::exp(-lq * ald * (D + 1) / 2);
    long double S1 = 0;
    for (int w : wt) S1 += std::pow(rho1, (long double)w);
    long double T;
    if (S1 >= 1) {
      T = INFINITY;
    } else {
      long double Mr = -std::log1p(-S1);
      for (auto& [mu, emu] : e) Mr -= std::fabs(to_ld(emu)) * std::log1p(-std::pow(rho1, (long double)wdeg(mu)));
      long double tail = Mr / (1 - rho1) * std::exp(lq * (D + 1) * (1 - ald * (K + 1) / 2));
      T = (sum + tail) / ((D + 1) * (1 - x));
    }
    long double mag = std::abs(out.value);
    out.bound = mag * std::expm1(T) + 1e-15L * std::max(mag, (long double)1);
  }

  // exact value when (1 + sum y) prod_{e>0} (1 - y^mu)^e == prod_{e<0} (1 - y^mu)^{-e}
  if (V <= 3) {
    long long tot = 0;
    for (auto& [mu, emu] : e) tot += abs(numerator(emu)).convert_to<long long>();
    if (tot <= 24) {
      detail::Poly lhs, rhs;
      lhs[MultiIndex(V, 0)] = 1;
      for (int i = 0; i < V; ++i) {
        MultiIndex u(V, 0);
        u[i] = 1;
        lhs[u] += 1;
      }
      rhs[MultiIndex(V, 0)] = 1;
      for (auto& [mu, emu] : e) {
        detail::Poly f;
        f[MultiIndex(V, 0)] = 1;
        f[mu] = -1;
        long long ei = numerator(emu).convert_to<long long>();
        for (long long t = 0; t < std::abs(ei); ++t) (ei > 0 ? lhs : rhs) = detail::poly_mul(ei > 0 ? lhs : rhs, f);
      }
      bool finite = lhs == rhs;
      std::vector<Rational> ph;
      for (auto& [mu, emu] : e) {
        ph.push_back(phase_of(mu));
        if (!is_pole(mu) && denominator(Rational(a * wdeg(mu))) != 1) finite = false;
      }
      if (finite) {
        int cond = conductor_of(ph);
        Cyc v(cond, rpow(a, b));
        for (auto& [mu, emu] : e) {
          if (is_pole(mu)) continue;
          Cyc f = Cyc(cond, Rational(1)) - Cyc::phase(cond, phase_of(mu)) * *integral_q_power(q, Rational(1) - a * wdeg(mu));
          long long ei = numerator(emu).convert_to<long long>();
          for (long long t = 0; t < std::abs(ei); ++t) v = ei > 0 ? v / f : v * f;
        }
        out.exact = v;
        out.value = v.to_complex();
        out.bound = 0;
      }
    }
  }
  return out;
}

// Naive partial product prod_{deg P <= D} (1 - q^-deg P)^b tau_P, kept only as a convergence diagnostic.
inline Complex naive_partial_product(const std::vector<OrbitTerm>& terms, const Rational& alpha, int fmin, int b,
                                     long long q, int D) {
  Rational a(1, fmin);
  Complex logp = 0;
  for (int k = 1; k <= D; ++k) {
    Complex w = 0;  // factor minus one, kept separate to avoid cancellation
    for (auto& t : terms)
      if (k % t.m == 0)
        w += (long double)t.m * expi(Rational(k / t.m) * t.rho - Rational(k) * t.f * alpha) * q_power_ld(q, -Rational(k) * a * t.f);
    Complex lg = detail::clog1p(w) + (long double)b * std::log1p(-std::pow((long double)q, (long double)-k));
    logp += closed_points_ld(q, k) * lg;
  }
  return std::exp(logp) * std::pow((Complex)to_ld(a), b);
}

// ---------------------------------------------------------------- Tauberian extraction

// F(X) = sum over poles lambda^-1 of sum_j coef[j-1] (1 - lambda X)^{-j}; lambda rational.
struct Pole {
  Rational lambda;
  std::vector<Rational> coef;  // coefficient of (1 - lambda X)^{-j}, j = 1..order
  int order() const { return (int)coef.size(); }
};

using PoleData = std::vector<Pole>;

// Exact coefficient of X^n contributed by the principal parts.
inline Rational tauberian_full(const PoleData& P, long long n) {
  Rational s = 0;
  for (auto& p : P)
    for (int j = 1; j <= p.order(); ++j) s += p.coef[j - 1] * Rational(binom_big(BigInt(n + j - 1), j - 1)) * rpow(p.lambda, n);
  return s;
}

// Main term n^{b-1}/(b-1)! sum_{order b} c_b lambda^n, b the maximal order.
inline Rational tauberian(const PoleData& P, long long n) {
  int b = 0;
  for (auto& p : P) b = std::max(b, p.order());
  Rational s = 0;
  for (auto& p : P)
    if (p.order() == b) s += p.coef[b - 1] * rpow(p.lambda, n);
  return s * rpow(Rational(n), b - 1) / Rational(detail::factorial(b - 1));
}

// ---------------------------------------------------------------- prediction

struct TermRecord {
  int L = 0;  // index into the subgroup interval
  long long mu = 1;
  Rational alpha;
  int beta = 0;
  ExactValue tau_inf;
  TauValue rt;               // includes a^b
  Complex value;             // tau_inf * rt
  std::optional<Cyc> exact;  // same, exactly
  long double bound = 0;
};

struct PredictionRecord {
  long long q = 0;
  int d = 0;
  Rational prefactor;  // |Z(G)| / (|G^ab(-1)(F_q)| (b-1)!)
  Complex c_H;
  std::optional<Cyc> c_H_exact;
  long double c_H_bound = 0;
  Complex main_term;
  std::optional<Cyc> main_exact;
  long long period = 0;        // least period of the formal expansion of c_H in d
  long long period_bound = 0;  // fmin |G|^2
  // c_H = sum_i formal[i] * terms[i].value, with formal[i] = prefactor mu_L e(d alpha_i)
  std::vector<Cyc> formal;
};

class Predictor {
 public:
  const FiniteGroup& G;
  long long q;
  HeightSpec H;
  ConjugacyTable T;
  FrobeniusStructure Fs;
  WeightFunction W;
  bool balanced = true;
  std::vector<int> model_classes;
  std::unique_ptr<LiftingData> L;
  std::unique_ptr<UFrobenius> UF;
  std::unique_ptr<BrauerGroup> B;
  std::vector<LocalPoint> points;
  std::vector<char> in_omega;
  std::vector<std::vector<std::optional<Rational>>> rho;  // [beta][Frobenius orbit]
  std::vector<std::vector<Rational>> inf_res;             // [beta][local point]

  Predictor(const FiniteGroup& G_, long long q_, HeightSpec H_, double budget = default_budget())
      : G(G_), q(q_), H(std::move(H_)), T(conjugacy_classes(G_)), Fs(frobenius_structure(G_, T, q_)) {
    W = make_weight(G, T, Fs, H.f);
    balanced = G.generates(W.Cf_elements);
    for (int c = 0; c < T.num_classes(); ++c)
      if (c != T.identity_class && (!balanced || W.in_Cf(c))) model_classes.push_back(c);
    L = std::make_unique<LiftingData>(G, elements_of_classes(T, model_classes), budget);
    UF = std::make_unique<UFrobenius>(*L, q);
    B = std::make_unique<BrauerGroup>(*L, *UF, budget);

    points = local_points(G, Fs.r);
    in_omega.assign(points.size(), H.omega_all ? 1 : 0);
    for (auto& [s, g] : H.omega) {
      int i = local_point_index(G, points, s, g);
      require(i >= 0, ErrorCode::NonInvariantInput, "boundary pair is not fixed by Frobenius");
      in_omega[i] = 1;
    }
    inf_res.assign(B->size(), {});
    for (int b = 0; b < B->size(); ++b)
      for (auto& p : points) inf_res[b].push_back(B->residue_at_infinity(b, p.sigma, p.gamma));

    const int no = (int)Fs.orbits.size();
    rho.assign(B->size(), std::vector<std::optional<Rational>>(no));
    for (int o = 0; o < no; ++o) {
      int cls = Fs.orbits[o][0];
      if (L->class_pos[cls] >= 0) {
        int bo = B->orbit_of_class_label(cls);
        for (int b = 0; b < B->size(); ++b) rho[b][o] = B->residue(b, bo);
        continue;
      }
      // residue outside the model: the element must come from the model enlarged by this orbit
      std::vector<int> S = model_classes;
      for (int c : Fs.orbits[o]) S.push_back(c);
      std::sort(S.begin(), S.end());
      LiftingData LS(G, elements_of_classes(T, S), budget);
      UFrobenius FS(LS, q);
      BrauerGroup BS(LS, FS, budget);
      auto iota = restriction_map(*L, LS);
      int so = BS.orbit_of_class_label(cls);
      for (int bs = 0; bs < BS.size(); ++bs) {
        int idx = pull_back(*B, BS, iota, bs);
        if (idx < 0) continue;
        Rational r = BS.residue(bs, so);
        require(!rho[idx][o] || *rho[idx][o] == r, ErrorCode::Internal, "ambiguous residue outside the marking set");
        rho[idx][o] = r;
      }
    }
  }

  long long center_order() const { return (long long)center(G).size(); }
  int b() const { return W.b; }
  int fmin() const { return W.fmin; }
  long long period_bound() const { return (long long)W.fmin * G.n * G.n; }

  // Orbits in C_beta (restricted to the subgroup mask when given).
  std::vector<OrbitTerm> orbit_terms(int beta, const std::vector<char>* Lmask = nullptr) const {
    std::vector<OrbitTerm> out;
    for (int o = 0; o < (int)Fs.orbits.size(); ++o) {
      if (!rho[beta][o]) continue;
      int x = T.classes[Fs.orbits[o][0]][0];
      if (Lmask && !(*Lmask)[x]) continue;
      out.push_back({(int)Fs.orbits[o].size(), W.f[Fs.orbits[o][0]], *rho[beta][o]});
    }
    return out;
  }

  // Elements of Br_{C_f, ell} with ell = alpha / a.
  std::vector<char> subset_mask(const Rational& alpha) const {
    std::vector<int> ol;
    for (int o : W.Cf_orbits) ol.push_back(B->orbit_of_class_label(Fs.orbits[o][0]));
    return B->subset_mask(ol, alpha * W.fmin);
  }

  ExactValue tau_infinity(int beta, const Rational& alpha) const {
    const Rational a(1, W.fmin);
    ExactValue v{Complex(0), Cyc(1)};
    for (size_t i = 0; i < points.size(); ++i) {
      if (!in_omega[i]) continue;
      int h = hinf_value(H, T, points[i].gamma, G.id);
      Rational ph = frac(inf_res[beta][i] - alpha * h);
      Rational w(1, points[i].aut_order);
      v.value += to_ld(w) * expi(ph) * q_power_ld(q, -a * h);
      auto qp = integral_q_power(q, -a * h);
      if (v.exact && qp) *v.exact += Cyc::phase(conductor_of({ph}), ph) * (*qp * w);
      else v.exact.reset();
    }
    return v;
  }

  // Terms for every (L, alpha, beta) with beta in Br_{C_f, alpha/a}.
  const std::vector<TermRecord>& terms(int D, const std::vector<char>* M = nullptr) {
    auto key = std::make_pair(D, M ? std::vector<char>(*M) : std::vector<char>());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<TermRecord> out;
    std::vector<std::vector<char>> Ls;
    std::vector<long long> mus;
    if (!M) {
      Ls.push_back(std::vector<char>(G.n, 1));
      mus.push_back(1);
    } else {
      Ls = subgroup_interval(G, *M);
      for (auto& Lm : Ls) mus.push_back(moebius_abelian(abelian_type(quotient(G, Lm).Q)));
    }
    const long long P0 = period_bound();
    for (size_t li = 0; li < Ls.size(); ++li) {
      if (mus[li] == 0) continue;
      for (long long k = 0; k < P0; ++k) {
        Rational alpha(k, P0);
        auto mask = subset_mask(alpha);
        for (int beta = 0; beta < B->size(); ++beta) {
          if (!mask[beta]) continue;
          TermRecord t;
          t.L = (int)li;
          t.mu = mus[li];
          t.alpha = alpha;
          t.beta = beta;
          t.tau_inf = tau_infinity(beta, alpha);
          t.rt = regularized_tau(orbit_terms(beta, M ? &Ls[li] : nullptr), alpha, W.fmin, W.b, q, D);
          t.value = t.tau_inf.value * t.rt.value;
          if (t.tau_inf.exact && t.rt.exact) t.exact = *t.tau_inf.exact * *t.rt.exact;
          t.bound = std::abs(t.tau_inf.value) * t.rt.bound;
          out.push_back(std::move(t));
        }
      }
    }
    return cache_[key] = std::move(out);
  }

  Rational prefactor() const {
    return Rational(center_order()) / Rational(gab_twisted_fixed_count(G, q) * detail::factorial(W.b - 1));
  }

  PredictionRecord predict(int d, int D = 20) {
    require(balanced, ErrorCode::UnbalancedInput, "classes of minimal weight do not generate G");
    return assemble(terms(D), d);
  }

  // Moebius sum over M <= L <= G; requires the minimal classes to generate M and M Z(G) = G.
  PredictionRecord predict_unbalanced(const std::vector<char>& M, int d, int D = 20) {
    require(is_subgroup(G, M) && is_normal(G, M), ErrorCode::LatticeViolation, "M is not a normal subgroup");
    auto gen = G.generated(W.Cf_elements);
    require(gen == M, ErrorCode::LatticeViolation, "classes of minimal weight do not generate M");
    std::vector<int> mz;
    for (int g = 0; g < G.n; ++g)
      if (M[g]) mz.push_back(g);
    for (int z : center(G)) mz.push_back(z);
    require(G.generates(mz), ErrorCode::LatticeViolation, "M Z(G) is not G");
    return assemble(terms(D, &M), d);
  }

 private:
  std::map<std::pair<int, std::vector<char>>, std::vector<TermRecord>> cache_;

  PredictionRecord assemble(const std::vector<TermRecord>& ts, int d) {
    PredictionRecord R;
    R.q = q;
    R.d = d;
    R.prefactor = prefactor();
    R.period_bound = period_bound();
    R.c_H = 0;
    R.c_H_exact = Cyc(1);
    long long per = 1;
    for (auto& t : ts) {
      Cyc coef = Cyc::phase(conductor_of({t.alpha * d}), t.alpha * d) * (R.prefactor * t.mu);
      R.formal.push_back(coef);
      R.c_H += coef.to_complex() * t.value;
      R.c_H_bound += to_ld(abs(R.prefactor * t.mu)) * t.bound;
      if (R.c_H_exact && t.exact) *R.c_H_exact += coef * *t.exact;
      else R.c_H_exact.reset();
      per = lcmll(per, denominator(t.alpha).convert_to<long long>());
    }
    R.period = per;
    const Rational ad = Rational(d, W.fmin);
    Rational scale = rpow(Rational(d), W.b - 1);
    R.main_term = R.c_H * to_ld(scale) * q_power_ld(q, ad);
    if (R.c_H_exact) {
      auto qp = integral_q_power(q, ad);
      if (qp) R.main_exact = *R.c_H_exact * (scale * *qp);
    }
    return R;
  }
};

}  // namespace hm
