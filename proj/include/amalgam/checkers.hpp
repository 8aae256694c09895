#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "amalgam/abelian.hpp"
#include "amalgam/catalog.hpp"
#include "amalgam/completion.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/nil2.hpp"

namespace amalgam {

enum class Property { JEP, AP, CAP, WAP, TIsolation, GammaStable, NonWapPattern };
enum class CheckStatus { Witnessed, CounterexampleAtBound, Unknown };

const char* property_name(Property p);
const char* status_name(CheckStatus s);

struct CheckBounds {
  int order_bound = 0;
  int word_length = 0;
  std::string pool_fingerprint;
};

// Outcome of a bounded check.  Witnessed reports carry a replay section
// that re-verifies from scratch, independent of the search that found the
// witnesses.
struct PropertyReport {
  Property property = Property::JEP;
  CheckStatus status = CheckStatus::Unknown;
  CheckBounds bounds;
  std::string detail;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json replay = nlohmann::json::array();

  int exit_code() const;
};

// JEP over a pool: every pair joins into the diagram of its direct sum.
PropertyReport check_jep_at(const VarietySpec& v, const Catalog& pool);

// One amalgamation instance.  Full-table triples go through the variety's
// amalgam engine; a bound-exceeding canonical amalgam reports Unknown.
PropertyReport check_ap_instance(const Diagram& d0, const Diagram& d1, const Diagram& d2,
                                 const VarietySpec& v, int order_bound);

enum class WapMode { WAP, CAP };

// WAP/CAP witness check: enumerate extension pairs of d0p realizable
// within the bound (pool embeddings for full tables, single-cell
// extensions otherwise) and amalgamate each pair fixing Dom(d0) (WAP) or
// Dom(d0p) (CAP).
PropertyReport check_wap_witness(const Diagram& d0, const Diagram& d0p, const VarietySpec& v,
                                 const Catalog& pool, int order_bound, WapMode mode);

// Word-equality theory of the tuple across every completion at the bound.
PropertyReport t_isolation_check(const Diagram& d, const std::vector<Label>& tuple,
                                 const VarietySpec& v, int order_bound, int word_length);

// Group-level WAP mechanism: abelian takes G1 = G0, nil-2 embeds G0 into
// an amalgamation base, then amalgamates every pool extension pair.
PropertyReport wap_via_groups(GroupRef g0, const VarietySpec& v, const Catalog& pool, int order_bound);

// Stabilizing extension search: grow G1 maximizing |Gamma_{k+1} cap G0|
// over the pool, then re-verify stability against every pool extension.
PropertyReport gamma_stabilizer_search(GroupRef g0, const VarietySpec& v, const Catalog& pool,
                                       int order_bound);

// The non-amalgamation pattern: both the atom and its fresh-label
// negation extend d within the bound, so d fails to decide the atom and
// the two extensions conflict over its domain.
PropertyReport non_wap_pattern_check(const Diagram& dp, const Cell& atom, const VarietySpec& v,
                                     int order_bound);

// Group words over k letters (values 1..k with signs), lengths 0..max_len
// in length-then-lex order; index 0 is the empty word.
std::vector<GroupWord> enumerate_words(int letters, int max_len);

// Partition of the word list by value equality at the tuple; entry i is
// the least word index with the same value.
std::vector<int> word_theory(const FiniteGroup& g, const std::vector<Elt>& tuple,
                             const std::vector<GroupWord>& words);

}  // namespace amalgam
