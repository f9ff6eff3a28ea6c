#pragma once

#include "hm/group.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace hm {

inline FiniteGroup cyclic_group(int n) {
  require(n >= 1, ErrorCode::InvalidGroup, "cyclic group order must be positive");
  Perm g(n);
  for (int i = 0; i < n; ++i) g[i] = (i + 1) % n;
  return FiniteGroup::from_perms({g}, "Z/" + std::to_string(n));
}

inline FiniteGroup klein_four() { return FiniteGroup::from_perms({{1, 0, 3, 2}, {2, 3, 0, 1}}, "V4"); }

inline FiniteGroup symmetric3() { return FiniteGroup::from_perms({{1, 0, 2}, {1, 2, 0}}, "S3"); }

inline FiniteGroup alternating4() { return FiniteGroup::from_perms({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"); }

inline FiniteGroup dihedral8() { return FiniteGroup::from_perms({{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4"); }

inline FiniteGroup quaternion8() {
  // element 4*s + u stands for (-1)^s * u with u in {1, i, j, k}
  static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a % 4, ub = b % 4;
      int s = (a / 4 + b / 4 + sgn[ua][ub]) % 2;
      t[a][b] = 4 * s + unit[ua][ub];
    }
  return FiniteGroup::from_table(t, "Q8");
}

// PSL(2,7) acting on the projective line over F_7; point 7 is infinity.
inline FiniteGroup psl27() {
  Perm shift(8), inv(8);
  for (int x = 0; x < 7; ++x) shift[x] = (x + 1) % 7;
  shift[7] = 7;
  inv[0] = 7;
  inv[7] = 0;
  for (int x = 1; x < 7; ++x)
    for (int y = 1; y < 7; ++y)
      if ((x * y) % 7 == 6) inv[x] = y;  // x -> -1/x
  return FiniteGroup::from_perms({shift, inv}, "PSL(2,7)");
}

inline FiniteGroup corpus_group(const std::string& name) {
  if (name == "V4" || name == "Z2xZ2") return klein_four();
  if (name == "S3") return symmetric3();
  if (name == "D4") return dihedral8();
  if (name == "A4") return alternating4();
  if (name == "Q8") return quaternion8();
  if (name == "PSL27" || name == "PSL(2,7)") return psl27();
  if (name.rfind("Z/", 0) == 0) return cyclic_group(std::stoi(name.substr(2)));
  if (name.rfind("Z", 0) == 0 && name.size() > 1) return cyclic_group(std::stoi(name.substr(1)));
  throw Error(ErrorCode::ConfigError, "unknown corpus group '" + name + "'");
}

inline std::vector<int> elements_of_classes(const ConjugacyTable& T, const std::vector<int>& cls) {
  std::vector<int> out;
  for (int c : cls) out.insert(out.end(), T.classes[c].begin(), T.classes[c].end());
  std::sort(out.begin(), out.end());
  return out;
}

// Marking-set selector: "all", "order:k[,k...]", "classes:i[,j...]", "involutions", "transpositions".
inline std::vector<int> select_classes(const FiniteGroup& G, const ConjugacyTable& T, const std::string& sel) {
  std::vector<int> cls;
  auto parse_list = [](const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) v.push_back(std::stoi(tok));
    return v;
  };
  if (sel == "all") {
    for (int c = 0; c < T.num_classes(); ++c)
      if (c != T.identity_class) cls.push_back(c);
  } else if (sel == "involutions" || sel == "transpositions" || sel == "reflections") {
    // noncentral involutions (all involutions when G is abelian)
    bool ab = is_abelian(G);
    for (int c = 0; c < T.num_classes(); ++c) {
      int x = T.classes[c][0];
      if (c != T.identity_class && G.order_of(x) == 2 && (ab || T.classes[c].size() > 1)) cls.push_back(c);
    }
  } else if (sel.rfind("order:", 0) == 0) {
    auto ords = parse_list(sel.substr(6));
    for (int c = 0; c < T.num_classes(); ++c)
      if (c != T.identity_class && std::count(ords.begin(), ords.end(), G.order_of(T.classes[c][0]))) cls.push_back(c);
  } else if (sel.rfind("classes:", 0) == 0) {
    for (int c : parse_list(sel.substr(8))) {
      require(c >= 0 && c < T.num_classes() && c != T.identity_class, ErrorCode::ClassOutsideC, "bad class label");
      cls.push_back(c);
    }
  } else {
    throw Error(ErrorCode::ConfigError, "unknown class selector '" + sel + "'");
  }
  std::sort(cls.begin(), cls.end());
  cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  require(!cls.empty(), ErrorCode::ConfigError, "class selector '" + sel + "' is empty");
  return cls;
}

}  // namespace hm
