#pragma once

#include "hm/group.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hm {

// Group from a JSON spec file ({"perm_generators": ...} or {"table": ...}) or a corpus name.
FiniteGroup load_group(const std::string& spec);

// "transpositions:1,order3:2" -> weight per class label; unnamed classes get weight 1.
std::vector<int> parse_weights(const FiniteGroup& G, const ConjugacyTable& T, const std::string& spec);

// "3..9" or "5" -> inclusive range
std::pair<int, int> parse_range(const std::string& s);

// Runs one subcommand; returns the process exit status.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hm
