#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "amalgam/checkers.hpp"

namespace amalgam {

// Canonical JSON rendering (keys sorted, two-space indent); identical
// inputs give byte-identical reports.
nlohmann::json report_to_json(const PropertyReport& r);
std::string report_to_text(const PropertyReport& r);

// Re-verify every witness in a serialized report without re-searching.
// Returns the list of failed checks; empty means the report replays.
std::vector<std::string> replay_verify(const nlohmann::json& report);

// Replay item builders shared by the checkers.
nlohmann::json json_group(const std::string& id, const FiniteGroup& g);
nlohmann::json json_group_table_or_hash(const std::string& id, const FiniteGroup& g, int full_cap);
nlohmann::json json_direct_sum(const std::string& id, const std::string& a, const std::string& b,
                               const FiniteGroup& result);
nlohmann::json json_abelian_construct(const std::string& id, const std::vector<unsigned long>& factors);
nlohmann::json json_baer_construct(const std::string& id, const Nil2Presentation& pres);
nlohmann::json json_variety_member(const std::string& group, const std::string& variety);
nlohmann::json json_morphism(const std::string& id, const std::string& src, const std::string& dst,
                             const std::vector<Elt>& map, bool require_injective);
nlohmann::json json_square(const std::vector<std::string>& left, const std::vector<std::string>& right);
nlohmann::json json_order_equation(const std::string& a0, const std::string& a1, const std::string& a2,
                                   const std::string& a3);
nlohmann::json json_diagram(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);
nlohmann::json json_extends(const Diagram& d1, const Diagram& d2);
nlohmann::json json_satisfies(const Diagram& d, const std::string& group, const std::vector<Label>& labels);
nlohmann::json json_word_separation(const std::string& g1, const std::string& g2,
                                    const std::vector<Elt>& t1, const std::vector<Elt>& t2,
                                    const GroupWord& w1, const GroupWord& w2);
nlohmann::json json_theories_equal(const std::vector<std::string>& groups,
                                   const std::vector<std::vector<Elt>>& tuples, int word_length);

}  // namespace amalgam
