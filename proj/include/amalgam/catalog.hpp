#pragma once

#include <string>
#include <vector>

#include "amalgam/diagram.hpp"
#include "amalgam/finite_group.hpp"

namespace amalgam {

// Candidate universe for the bounded property checkers: an
// isomorphism-reduced list of groups, with a content fingerprint so
// Unknown verdicts are reproducible.
struct Catalog {
  std::vector<GroupRef> groups;
  std::string variety_name = "group";
  int order_bound = 0;

  std::string fingerprint() const;
  bool contains_isomorphic(GroupRef g) const;
};

// Direct sums of seeds (all products staying within the bound), then
// closure under subgroup and quotient, isomorphism-reduced and filtered
// by the variety laws.
Catalog pool_build(const std::vector<GroupRef>& seeds, int order_bound, const VarietySpec& variety);

// Seed lists.
std::vector<GroupRef> standard_seeds(int order_bound);  // cyclic + small nonabelian
Catalog abelian_pool(int order_bound);                  // all abelian groups of order <= bound
Catalog nil2_pool(int p, int order_bound);              // seeds: C_p and the Heisenberg group over F_p

// One file per group plus an index carrying metadata and the fingerprint.
void catalog_save(const Catalog& c, const std::string& dir);
Catalog catalog_load(const std::string& dir);

std::string group_to_text(const FiniteGroup& g);
FiniteGroup parse_group(const std::string& content);

}  // namespace amalgam
