#pragma once

#include <string>
#include <vector>

#include "amalgam/algebras.hpp"
#include "amalgam/completion.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/finite_group.hpp"

namespace amalgam {

// Presentation by generators and relations.  Words are 1-indexed signed
// generator lists (sign = inversion, group kind only); ring relations are
// polynomial identities summed to zero.
struct Presentation {
  struct PolyTerm {
    long coef = 1;
    std::vector<int> monomial;  // 1-indexed generators
  };
  struct Relation {
    std::vector<int> lhs, rhs;    // group/semigroup word equation
    std::vector<PolyTerm> poly;   // ring identity (= 0); empty otherwise
  };

  AlgebraKind kind = AlgebraKind::group;
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  std::string str() const;
  static Presentation parse(const std::string& content);
};

// Cor-style rewriting: 2n+1 generators (originals, formal inverses, unit
// symbol e1) and 6n+1+|R| relations: unit laws, inverse pairings, then
// every relator rewritten positively.
Presentation group_to_semigroup_presentation(const Presentation& p);

// Presentation of a finite group on all its elements with one length-3
// relator per table cell.
Presentation presentation_of_group_table(const FiniteGroup& g);

// Diagram of a semigroup presentation under an evaluation of its
// generators: labels are the touched element values (element e gets label
// e+1), with one cell per prefix step of every relation side.
Diagram presentation_diagram(const Presentation& p, const std::vector<Elt>& gen_values, const Semigroup& s);

// Rewrite the full-table presentation of G, evaluate it back over G,
// complete the resulting semigroup diagram at `bound` and confirm the
// unique completion is semigroup-isomorphic to G.
bool rewrite_correctness_check(const FiniteGroup& g, int bound);

struct AlgebraCompletions {
  std::vector<Completion> groups;
  std::vector<SemigroupCompletion> semigroups;
  std::vector<RingCompletion> rings;
  std::size_t size() const { return groups.size() + semigroups.size() + rings.size(); }
};
AlgebraCompletions algebra_complete_within(const Diagram& d, AlgebraKind kind, int order_bound);

}  // namespace amalgam
