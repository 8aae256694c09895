#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amalgam/algebras.hpp"
#include "amalgam/basics.hpp"
#include "amalgam/finite_group.hpp"

namespace amalgam {

enum class AlgebraKind { group, semigroup, ring };

const char* kind_name(AlgebraKind k);
AlgebraKind kind_from_name(const std::string& s);

// Cells are atomic facts about the partial operations.  Inv and Neg leave
// the second operand unused (zero).
enum class CellOp : std::uint8_t { Mul, Inv, Add, Neg };

struct Cell {
  CellOp op;
  Label a = 0, b = 0, value = 0;
  auto operator<=>(const Cell&) const = default;
  std::string str() const;
};

inline Cell mul_cell(Label a, Label b, Label v) { return {CellOp::Mul, a, b, v}; }
inline Cell inv_cell(Label a, Label v) { return {CellOp::Inv, a, 0, v}; }
inline Cell add_cell(Label a, Label b, Label v) { return {CellOp::Add, a, b, v}; }
inline Cell neg_cell(Label a, Label v) { return {CellOp::Neg, a, 0, v}; }

// A finite partial algebra on distinct natural-number labels.  Distinct
// labels denote distinct elements; cells are kept sorted and unique, so
// the representation is the canonical form.
class Diagram {
 public:
  AlgebraKind kind = AlgebraKind::group;
  std::vector<Label> domain;        // sorted, distinct
  std::vector<Cell> cells;          // sorted, unique; may hold conflicting values
  std::optional<Label> unit;        // group kind
  std::optional<Label> zero;        // ring kind
  std::vector<Label> marked_tuple;  // distinguished generating tuple, optional

  static Diagram group(std::vector<Label> domain, Label unit = 1);
  static Diagram semigroup(std::vector<Label> domain);
  static Diagram ring(std::vector<Label> domain, Label zero = 0);

  bool in_domain(Label l) const;
  void add(Cell c);
  bool has(const Cell& c) const;
  std::optional<Label> lookup(CellOp op, Label a, Label b = 0) const;
  std::optional<Label> mul(Label a, Label b) const { return lookup(CellOp::Mul, a, b); }

  std::size_t cell_count() const { return cells.size(); }
  // Every pair has a product and (groups) every label an inverse.
  bool is_total() const;

  std::string canonical_str() const;
  bool operator==(const Diagram&) const = default;
};

struct ConsistencyReport {
  bool ok = true;
  std::string violation;  // first violated defined instance, empty when ok
};

// Local law instances over defined cells only (unit, inverse,
// associativity, ring laws).  Throws MalformedDiagram when a cell or
// constant references a label outside the domain.
ConsistencyReport check_partial_consistency(const Diagram& d);

// D <= D2 in the extension order: domain and cells contained, constants
// agree.  Throws KindMismatch.
bool extends(const Diagram& d, const Diagram& d2);

// Finitely supported permutation of labels; identity off the map.
using Relabeling = std::map<Label, Label>;

Label apply_relabeling(const Relabeling& alpha, Label l);
// Throws ConstantMoved if a designated constant moves; PreconditionFailed
// if alpha is not injective on the labels it touches.
Diagram relabel(const Diagram& d, const Relabeling& alpha);

// Equationally-defined class of groups.  The standard shapes (abelian,
// bounded exponent, bounded nilpotency class) are recognized structurally
// so law checking stays cheap on big groups; anything else in `extra`
// falls back to substitution search.
struct VarietySpec {
  std::string name = "group";
  bool abelian = false;
  int exponent = 0;   // 0 = unconstrained
  int nil_class = 0;  // 0 = unconstrained
  std::vector<GroupWord> extra;

  // Laws as group words required to equal 1 (for reporting and the
  // substitution-check property test).
  std::vector<GroupWord> laws() const;
  bool satisfied_by(const FiniteGroup& g) const;

  static VarietySpec group();
  static VarietySpec abel();
  static VarietySpec exp(int n);
  static VarietySpec nil(int c);
  static VarietySpec nil_exp(int c, int p);  // the class-c exponent-p variety
  static VarietySpec from_name(const std::string& s);
};

bool word_holds_everywhere(const FiniteGroup& g, const GroupWord& w);

// Full multiplication/inversion table of F as a diagram; unit gets label
// 1, other elements 2..n in element order.  `tuple` (element indices) is
// recorded as the distinguished generating tuple.
Diagram diagram_of(const FiniteGroup& f, const std::vector<Elt>& tuple = {});
Diagram diagram_of_semigroup(const Semigroup& s);

// A finite stand-in for a point of the logic space: a total algebra with
// an injective labeling into the naturals.
struct EnumeratedApprox {
  std::variant<GroupRef, Semigroup, Ring> algebra;
  std::vector<Label> labels;  // element i carries labels[i]

  static EnumeratedApprox of_group(GroupRef g);  // canonical labels (unit -> 1)
  std::optional<Elt> element_of(Label l) const;
  AlgebraKind kind() const;
};

// Membership of E in the basic clopen set [D]: every defined cell of D
// holds in E under the labeling.  Throws LabelMissing.
bool satisfies(const EnumeratedApprox& e, const Diagram& d);

// Tuples over labels; used by the logic metric.
using LabelTuple = std::vector<Label>;
std::vector<LabelTuple> default_tuple_enum(Label max_label, int max_len = 3);

// d(E1,E2) = sum of 2^-n over tuple indices n < cutoff where the
// operations disagree on tuple n.
Rational logic_metric(const EnumeratedApprox& e1, const EnumeratedApprox& e2,
                      const std::vector<LabelTuple>& tuple_enum, int cutoff);

// Text and JSON formats (accepted interchangeably; JSON when the first
// non-space byte is '{').
std::string diagram_to_text(const Diagram& d);
std::string diagram_to_json(const Diagram& d);
Diagram parse_diagram(const std::string& content);

}  // namespace amalgam
