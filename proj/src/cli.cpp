#include "hm/cli.hpp"

#include "hm/braid.hpp"
#include "hm/brauer.hpp"
#include "hm/conf.hpp"
#include "hm/constants.hpp"
#include "hm/corpus.hpp"
#include "hm/lifting.hpp"
#include "hm/oracles.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hm {

using json = nlohmann::ordered_json;

namespace {

std::vector<long long> parse_ll_list(const std::string& s) {
  std::vector<long long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) v.push_back(std::stoll(tok));
  return v;
}

std::string cyc_str(const Cyc& c) { return c.is_rational() ? to_string(c.rational_part()) : c.str(); }

json complex_json(const Complex& z) { return json::array({(double)z.real(), (double)z.imag()}); }

json conventions() {
  return {{"frobenius", "g -> sigma g^r sigma^-1, r = q^-1 mod exp(G)"},
          {"boundary", "gamma = (g_1 ... g_n)^-1"},
          {"local_points", "pairs (sigma, gamma) with sigma gamma^r sigma^-1 = gamma, up to simultaneous conjugation"},
          {"braid_left", "(g,h) -> (g h g^-1, g)"},
          {"transversal", "shortlex breadth-first words in the letters of C"},
          {"brauer_basis", "A coordinates in Smith form, free part first"},
          {"kummer", "G-covers counted without the y -> y^u identification; trivial and disconnected covers excluded"}};
}

json provenance(std::vector<std::string> exact, std::vector<std::string> flt) {
  return {{"exact", exact}, {"float", flt}};
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    require((bool)f, ErrorCode::ConfigError, "cannot open output file '" + path + "'");
    f << j.dump(2) << "\n";
  }
}

void emit_csv(const std::vector<std::vector<std::string>>& rows, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  require((bool)f, ErrorCode::ConfigError, "cannot open csv file '" + path + "'");
  for (auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
    f << "\n";
  }
}

json group_summary(const FiniteGroup& G, const ConjugacyTable& T) {
  json cls = json::array();
  for (int c = 0; c < T.num_classes(); ++c)
    cls.push_back({{"label", c},
                   {"size", T.classes[c].size()},
                   {"representative", T.classes[c][0]},
                   {"element_order", G.order_of(T.classes[c][0])},
                   {"centralizer_order", T.centralizer_order[c]}});
  return {{"name", G.name}, {"order", G.n}, {"classes", cls}, {"center_order", center(G).size()},
          {"abelianization", abelianization(G).d}};
}

}  // namespace

FiniteGroup load_group(const std::string& spec) {
  if (!std::filesystem::exists(spec)) return corpus_group(spec);
  std::ifstream f(spec);
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ConfigError, spec + ": " + e.what());
  }
  std::string name = j.value("name", std::filesystem::path(spec).stem().string());
  if (j.contains("perm_generators")) return FiniteGroup::from_perms(j["perm_generators"].get<std::vector<Perm>>(), name);
  if (j.contains("table")) return FiniteGroup::from_table(j["table"].get<std::vector<std::vector<int>>>(), name);
  throw Error(ErrorCode::ConfigError, spec + ": needs 'perm_generators' or 'table'");
}

std::vector<int> parse_weights(const FiniteGroup& G, const ConjugacyTable& T, const std::string& spec) {
  std::vector<int> f(T.num_classes(), 1);
  f[T.identity_class] = 0;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto colon = tok.find(':');
    require(colon != std::string::npos, ErrorCode::ConfigError, "weight entry '" + tok + "' lacks ':'");
    std::string sel = tok.substr(0, colon);
    int w = std::stoi(tok.substr(colon + 1));
    std::vector<int> cls;
    if (sel == "threecycles") sel = "order:3";
    else if (sel.rfind("order", 0) == 0 && sel.size() > 5 && sel[5] != ':') sel = "order:" + sel.substr(5);
    else if (sel.rfind("class", 0) == 0 && sel.size() > 5 && sel[5] != ':' && sel[5] != 'e') sel = "classes:" + sel.substr(5);
    cls = select_classes(G, T, sel);
    for (int c : cls) f[c] = w;
  }
  return f;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto p = s.find("..");
  if (p == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  int lo = std::stoi(s.substr(0, p)), hi = std::stoi(s.substr(p + 2));
  require(lo <= hi, ErrorCode::ConfigError, "empty range '" + s + "'");
  return {lo, hi};
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hurwitz-space component counts, Brauer obstructions and leading constants"};
  app.require_subcommand(1);
  std::string group = "Z2", C = "all", out_path, csv_path, fspec, nbar_s, degrees_s = "1", d_range = "3..9",
              omega_s = "all", hinf_s = "f", M_s, scan_s;
  long long q = 3;
  int gamma = -1, sigma = -1, D = 20, ell = 2, order = 0;
  bool check = false, no_connected = false, brute = false;
  double budget = default_budget();

  auto common = [&](CLI::App* s) {
    s->add_option("--out", out_path, "JSON report path (default stdout)");
    s->add_option("--budget", budget, "state budget (HM_BUDGET overrides the default)");
    s->add_flag("--check", check, "nonzero exit when a built-in consistency check fails");
  };
  auto grp = [&](CLI::App* s) {
    s->add_option("--group", group, "group spec JSON file or corpus name");
  };

  auto* s_group = app.add_subcommand("group", "conjugacy data, abelianization and Frobenius orbits");
  grp(s_group);
  s_group->add_option("--q", q);
  common(s_group);

  auto* s_orbits = app.add_subcommand("orbits", "braid orbits on tuples of given multidegree and boundary");
  grp(s_orbits);
  s_orbits->add_option("--C", C);
  s_orbits->add_option("--nbar", nbar_s, "entries per class of C");
  s_orbits->add_option("--gamma", gamma, "boundary element index (default identity)");
  s_orbits->add_flag("--all-tuples", no_connected, "do not require the tuple to generate G");
  s_orbits->add_option("--scan", scan_s, "stabilization scan over lo..hi");
  common(s_orbits);

  auto* s_h2 = app.add_subcommand("h2", "H2(G,C) from the Smith form of the relator lattice");
  grp(s_h2);
  s_h2->add_option("--C", C);
  common(s_h2);

  auto* s_lift = app.add_subcommand("lifting", "kernel A, Frobenius matrix and torsor fixed counts");
  grp(s_lift);
  s_lift->add_option("--C", C);
  s_lift->add_option("--q", q);
  s_lift->add_option("--sigma", sigma);
  s_lift->add_option("--nbar", nbar_s);
  s_lift->add_option("--gamma", gamma);
  common(s_lift);

  auto* s_br = app.add_subcommand("brauer", "Brauer pairs, residues and subset masks");
  grp(s_br);
  s_br->add_option("--C", C);
  s_br->add_option("--q", q);
  common(s_br);

  auto* s_conf = app.add_subcommand("conf", "configuration-space point counts");
  s_conf->add_option("--q", q);
  s_conf->add_option("--degrees", degrees_s, "orbit degree of each color");
  s_conf->add_option("--nbar", nbar_s, "total degree per color");
  s_conf->add_flag("--brute", brute, "also count by enumerating polynomials");
  common(s_conf);

  auto* s_const = app.add_subcommand("constant", "regularized Euler products and local factors per (alpha, beta)");
  auto* s_pred = app.add_subcommand("predict", "leading constants and main terms");
  for (auto* s : {s_const, s_pred}) {
    grp(s);
    s->add_option("--q", q);
    s->add_option("--f", fspec, "weights, e.g. transpositions:1,threecycles:2");
    s->add_option("--D", D, "Euler product cutoff");
    s->add_option("--hinf", hinf_s, "f or zero");
    s->add_option("--omega", omega_s, "all or sigma:gamma;sigma:gamma");
    s->add_option("--M", M_s, "class selector generating M (unbalanced Moebius sum)");
    common(s);
  }
  s_pred->add_option("--d", d_range);
  s_pred->add_option("--csv", csv_path);

  auto* s_cmp = app.add_subcommand("compare-oracle", "prediction against the Kummer count for Z/l");
  s_cmp->add_option("--l", ell, "prime order of the cyclic group");
  s_cmp->add_option("--group", group, "cyclic group of prime order (overrides --l)");
  s_cmp->add_option("--q", q);
  s_cmp->add_option("--d", d_range);
  s_cmp->add_option("--D", D);
  s_cmp->add_option("--csv", csv_path);
  common(s_cmp);

  auto* s_mob = app.add_subcommand("mobius", "Moebius function of abelian groups or of a subgroup interval");
  s_mob->add_option("--order", order, "all abelian groups of this order");
  s_mob->add_option("--group", group);
  s_mob->add_option("--M", M_s);
  common(s_mob);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    json rep;
    rep["budget"] = budget;
    rep["conventions"] = conventions();
    bool ok = true;

    if (*s_group) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      rep["subcommand"] = "group";
      rep["group"] = group_summary(G, T);
      if (gcdll(q, G.n) == 1) {
        auto F = frobenius_structure(G, T, q);
        rep["q"] = q;
        rep["r"] = F.r;
        rep["class_orbits"] = F.orbits;
        rep["gab_twisted_fixed_count"] = gab_twisted_fixed_count(G, q);
      }
      long long s = 0;
      for (auto& c : T.classes) s += (long long)c.size();
      ok = s == G.n;
      rep["provenance"] = provenance({"group", "class_orbits", "gab_twisted_fixed_count"}, {});
    } else if (*s_orbits) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      auto cls = select_classes(G, T, C);
      rep["subcommand"] = "orbits";
      rep["classes"] = cls;
      if (!scan_s.empty()) {
        auto [lo, hi] = parse_range(scan_s);
        LiftingData L(G, elements_of_classes(T, cls), budget);
        long long h2 = L.torsion_order();
        auto R = stabilization_scan(G, T, cls, lo, hi, gamma, [&](const std::vector<long long>& nb, int g) {
          return L.fiber_base(nb, g) ? h2 : 0LL;
        }, budget);
        json rows = json::array();
        for (auto& r : R.rows) rows.push_back({{"nbar", r.nbar}, {"gamma", r.gamma}, {"orbits", r.orbits}, {"admissible", r.admissible}});
        rep["rows"] = rows;
        rep["h2_order"] = h2;
        rep["observed_N"] = R.observed_N;
        rep["note"] = "stabilization is empirical: least scanned N beyond which counts equal |H2| or 0";
        ok = R.observed_N >= 0;
      } else {
        std::vector<long long> nb = parse_ll_list(nbar_s);
        if (nb.empty()) nb.assign(cls.size(), 1);
        auto cat = orbit_enumerate(G, T, cls, nb, gamma < 0 ? G.id : gamma, !no_connected, budget);
        json orbs = json::array();
        long long tot = 0;
        for (auto& o : cat.orbits) {
          orbs.push_back({{"rep", o.rep}, {"size", o.size}});
          tot += o.size;
        }
        rep["nbar"] = nb;
        rep["gamma"] = cat.gamma;
        rep["connected"] = cat.connected;
        rep["admissible"] = cat.admissible;
        rep["orbits"] = orbs;
        ok = tot == cat.admissible;
      }
      rep["provenance"] = provenance({"orbits"}, {});
    } else if (*s_h2) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      auto cls = select_classes(G, T, C);
      LiftingData L(G, elements_of_classes(T, cls), budget);
      rep["subcommand"] = "h2";
      rep["classes"] = cls;
      rep["h2"] = L.torsion;
      rep["h2_order"] = L.torsion_order();
      rep["free_rank"] = L.nfree;
      rep["schreier_rank"] = L.rank;
      rep["relators"] = L.relator_rows;
      std::vector<std::string> diag;
      for (auto& d : L.snf_diag) diag.push_back(d.str());
      rep["snf_certificate"] = {{"diagonal", diag}, {"note", "relator lattice in Schreier coordinates, unimodular column transform tracked"}};
      ok = L.nfree == L.num_classes();
      rep["provenance"] = provenance({"h2", "free_rank", "snf_certificate"}, {});
    } else if (*s_lift) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      auto cls = select_classes(G, T, C);
      LiftingData L(G, elements_of_classes(T, cls), budget);
      UFrobenius F(L, q, sigma);
      rep["subcommand"] = "lifting";
      rep["classes"] = cls;
      rep["A_modulus"] = L.modulus;
      rep["R_of_A_basis"] = L.RA;
      rep["frob_matrix"] = F.psiA;
      rep["frob_on_abelianization"] = F.frob_u1();
      rep["class_perm"] = F.class_perm;
      rep["h2_fixed_count"] = h2_fixed_count(F);
      if (!nbar_s.empty()) {
        auto nb = parse_ll_list(nbar_s);
        rep["torsor_fixed_count"] = torsor_fixed_count(F, nb, gamma < 0 ? G.id : gamma);
      }
      rep["provenance"] = provenance({"frob_matrix", "h2_fixed_count", "torsor_fixed_count"}, {});
    } else if (*s_br) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      auto cls = select_classes(G, T, C);
      LiftingData L(G, elements_of_classes(T, cls), budget);
      UFrobenius F(L, q);
      BrauerGroup B(L, F, budget);
      rep["subcommand"] = "brauer";
      rep["classes"] = cls;
      rep["size"] = B.size();
      long long expect = gab_twisted_fixed_count(G, q) * h2_fixed_count(F);
      rep["size_identity"] = {{"gab_twisted", gab_twisted_fixed_count(G, q)}, {"h2_fixed", h2_fixed_count(F)}, {"holds", B.size() == expect}};
      ok = B.size() == expect;
      json orbs = json::array();
      for (auto& o : B.orbits) {
        std::vector<int> labels;
        for (int p : o) labels.push_back(L.classes[p]);
        orbs.push_back(labels);
      }
      rep["class_orbits"] = orbs;
      json res = json::array();
      for (int b = 0; b < B.size(); ++b) {
        std::vector<std::string> r;
        for (int o = 0; o < (int)B.orbits.size(); ++o) r.push_back(to_string(B.residue(b, o)));
        std::vector<std::string> al, ps;
        for (auto& x : B.elems[b].alpha) al.push_back(to_string(x));
        for (auto& x : B.elems[b].psi) ps.push_back(to_string(x));
        res.push_back({{"alpha", al}, {"psi", ps}, {"residues", r}});
      }
      rep["elements"] = res;
      auto un = B.unramified_mask();
      rep["unramified_mask"] = std::vector<int>(un.begin(), un.end());
      std::vector<int> all;
      for (int o = 0; o < (int)B.orbits.size(); ++o) all.push_back(o);
      json masks = json::array();
      long long n2 = (long long)G.n * G.n;
      for (long long k = 0; k < n2; ++k) {
        auto m = B.subset_mask(all, Rational(k, n2));
        if (std::count(m.begin(), m.end(), 1))
          masks.push_back({{"ell", to_string(Rational(k, n2))}, {"mask", std::vector<int>(m.begin(), m.end())}});
      }
      rep["subset_masks"] = masks;
      rep["provenance"] = provenance({"elements", "subset_masks", "size"}, {});
    } else if (*s_conf) {
      ColorSpec cs;
      for (auto x : parse_ll_list(degrees_s)) cs.deg.push_back((int)x);
      std::vector<int> nb;
      for (auto x : parse_ll_list(nbar_s)) nb.push_back((int)x);
      if (nb.empty()) nb.assign(cs.deg.size(), 1);
      BigInt c = conf_count(q, cs, nb);
      rep["subcommand"] = "conf";
      rep["q"] = q;
      rep["degrees"] = cs.deg;
      rep["nbar"] = nb;
      rep["count"] = c.str();
      int tot = 0;
      for (int x : nb) tot += x;
      rep["bound"] = ipow(BigInt(q), tot).str();
      ok = conf_bound_check(q, cs, nb);
      if (brute) {
        BigInt bc = brute_conf((int)q, cs, nb);
        rep["brute"] = bc.str();
        ok = ok && bc == c;
      }
      rep["provenance"] = provenance({"count", "brute"}, {});
    } else if (*s_const || *s_pred) {
      FiniteGroup G = load_group(group);
      auto T = conjugacy_classes(G);
      HeightSpec H;
      H.f = parse_weights(G, T, fspec);
      require(hinf_s == "f" || hinf_s == "zero", ErrorCode::ConfigError, "--hinf must be f or zero");
      H.hinf = hinf_s == "f" ? HInf::F : HInf::Zero;
      if (omega_s != "all") {
        H.omega_all = false;
        std::stringstream ss(omega_s);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
          auto c = tok.find(':');
          require(c != std::string::npos, ErrorCode::ConfigError, "omega entry '" + tok + "' must be sigma:gamma");
          H.omega.push_back({std::stoi(tok.substr(0, c)), std::stoi(tok.substr(c + 1))});
        }
      }
      Predictor P(G, q, H, budget);
      std::vector<char> M;
      if (!M_s.empty()) {
        auto mcls = select_classes(G, T, M_s);
        M = G.generated(elements_of_classes(T, mcls));
      }
      rep["group"] = G.name;
      rep["q"] = q;
      rep["f"] = H.f;
      rep["a"] = to_string(P.W.a);
      rep["b"] = P.W.b;
      rep["balanced"] = P.balanced;
      rep["brauer_size"] = P.B->size();
      rep["cutoff_D"] = D;
      const auto& ts = M.empty() ? P.terms(D) : P.terms(D, &M);
      json terms = json::array();
      for (auto& t : ts) {
        json jt = {{"L", t.L}, {"mu", t.mu}, {"alpha", to_string(t.alpha)}, {"beta", t.beta},
                   {"tau_inf", complex_json(t.tau_inf.value)}, {"euler_product", complex_json(t.rt.value)},
                   {"value", complex_json(t.value)}, {"bound", (double)t.bound}};
        if (t.exact) jt["exact"] = cyc_str(*t.exact);
        terms.push_back(jt);
      }
      if (*s_const) {
        rep["subcommand"] = "constant";
        rep["terms"] = terms;
        rep["prefactor"] = to_string(P.prefactor());
      } else {
        rep["subcommand"] = "predict";
        auto [lo, hi] = parse_range(d_range);
        json rows = json::array();
        std::vector<std::vector<std::string>> csv{{"d", "c_H_re", "c_H_im", "main_term", "period", "exact"}};
        for (int d = lo; d <= hi; ++d) {
          auto R = M.empty() ? P.predict(d, D) : P.predict_unbalanced(M, d, D);
          json r = {{"d", d}, {"c_H", complex_json(R.c_H)}, {"c_H_bound", (double)R.c_H_bound},
                    {"main_term", complex_json(R.main_term)}, {"period", R.period}, {"period_bound", R.period_bound}};
          if (R.c_H_exact) r["c_H_exact"] = cyc_str(*R.c_H_exact);
          if (R.main_exact) r["main_term_exact"] = cyc_str(*R.main_exact);
          ok = ok && R.period_bound % R.period == 0;
          rows.push_back(r);
          csv.push_back({std::to_string(d), std::to_string((double)R.c_H.real()), std::to_string((double)R.c_H.imag()),
                         R.main_exact ? cyc_str(*R.main_exact) : std::to_string((double)R.main_term.real()),
                         std::to_string(R.period), R.main_exact ? "1" : "0"});
        }
        rep["predictions"] = rows;
        rep["terms"] = terms;
        emit_csv(csv, csv_path);
      }
      rep["provenance"] = provenance({"c_H_exact", "main_term_exact", "exact", "period"},
                                     {"c_H", "main_term", "tau_inf", "euler_product", "value", "bound"});
    } else if (*s_cmp) {
      if (s_cmp->count("--group")) {
        FiniteGroup Gin = load_group(group);
        require(is_abelian(Gin) && abelian_type(Gin).d == std::vector<long long>{Gin.n} && prime_factors(Gin.n).size() == 1 &&
                    prime_factors(Gin.n)[0] == Gin.n,
                ErrorCode::InvalidKummer, "compare-oracle needs a cyclic group of prime order");
        ell = Gin.n;
      }
      FiniteGroup G = cyclic_group(ell);
      auto T = conjugacy_classes(G);
      HeightSpec H;
      H.f.assign(T.num_classes(), 1);
      Predictor P(G, q, H, budget);
      auto [lo, hi] = parse_range(d_range);
      KummerOracle K(ell, (int)q, hi, budget);
      KummerHeight KH;
      KH.f_by_exp.assign(ell, 1);
      auto cnt = K.count(KH);
      json rows = json::array();
      std::vector<std::vector<std::string>> csv{{"d", "predicted", "oracle", "abs_dev", "rel_dev"}};
      for (int d = lo; d <= hi; ++d) {
        auto R = P.predict(d, D);
        long double oracle = cnt.by_height[d].convert_to<long double>();
        long double pred = R.main_term.real();
        long double dev = oracle - pred;
        if (R.main_exact && R.main_exact->is_rational()) {
          Rational e = Rational(cnt.by_height[d]) - R.main_exact->rational_part();
          dev = numerator(e).convert_to<long double>() / denominator(e).convert_to<long double>();
        }
        json r = {{"d", d}, {"oracle", cnt.by_height[d].str()}, {"predicted", (double)pred}, {"abs_dev", (double)dev},
                  {"rel_dev", oracle != 0 ? (double)(dev / oracle) : (double)dev}};
        if (R.main_exact) {
          r["predicted_exact"] = cyc_str(*R.main_exact);
          bool eq = R.main_exact->is_rational() && R.main_exact->rational_part() == Rational(cnt.by_height[d]);
          r["exact_match"] = eq;
          ok = ok && eq;
        } else {
          ok = false;
        }
        rows.push_back(r);
        csv.push_back({std::to_string(d), R.main_exact ? cyc_str(*R.main_exact) : std::to_string((double)pred),
                       cnt.by_height[d].str(), std::to_string((double)dev), r["rel_dev"].dump()});
      }
      rep["subcommand"] = "compare-oracle";
      rep["l"] = ell;
      rep["q"] = q;
      rep["rows"] = rows;
      emit_csv(csv, csv_path);
      rep["provenance"] = provenance({"oracle", "predicted_exact"}, {"predicted", "abs_dev", "rel_dev"});
    } else if (*s_mob) {
      rep["subcommand"] = "mobius";
      json rows = json::array();
      if (order > 0) {
        for (auto& A : abelian_groups_of_order(order)) rows.push_back({{"group", A.str()}, {"mu", moebius_abelian(A)}});
      } else {
        FiniteGroup G = load_group(group);
        auto T = conjugacy_classes(G);
        std::vector<char> M(G.n, 0);
        M[G.id] = 1;
        if (!M_s.empty()) M = G.generated(elements_of_classes(T, select_classes(G, T, M_s)));
        for (auto& Lm : subgroup_interval(G, M)) {
          auto Q = abelian_type(quotient(G, Lm).Q);
          rows.push_back({{"order", std::count(Lm.begin(), Lm.end(), 1)}, {"quotient", Q.str()}, {"mu", moebius_abelian(Q)}});
        }
      }
      rep["rows"] = rows;
      rep["provenance"] = provenance({"mu"}, {});
    }
    emit(rep, out_path, out);
    if (check && !ok) {
      err << "check failed\n";
      return 2;
    }
    return 0;
  } catch (const BudgetError& e) {
    json j = {{"error", "BudgetExceeded"}, {"message", e.what()}, {"attempted", e.attempted()}, {"budget", e.budget()}};
    err << j.dump() << "\n";
    return 3;
  } catch (const Error& e) {
    json j = {{"error", error_name(e.code())}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j = {{"error", "ConfigError"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  }
}

}  // namespace hm
