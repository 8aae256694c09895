#pragma once

#include <vector>

#include "amalgam/algebras.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/finite_group.hpp"

namespace amalgam {

// A total algebra of order <= bound extending the diagram.  Element i
// carries labels[i]; the diagram's labels come first (unit label at the
// unit element), fresh elements get the smallest unused naturals.
struct Completion {
  GroupRef group;
  std::vector<Label> labels;

  EnumeratedApprox approx() const;
  Diagram full_diagram() const;  // keeps the completion's labels
};

// All completions of D of order <= order_bound satisfying the variety, up
// to isomorphism fixing the labeled part pointwise.  Deterministic
// canonical order.  Empty means "none at this bound", never inconsistency.
std::vector<Completion> complete_within(const Diagram& d, const VarietySpec& v, int order_bound);

struct SemigroupCompletion {
  Semigroup semigroup;
  std::vector<Label> labels;
};
std::vector<SemigroupCompletion> complete_semigroup_within(const Diagram& d, int order_bound);

struct RingCompletion {
  Ring ring;
  std::vector<Label> labels;
};
std::vector<RingCompletion> complete_ring_within(const Diagram& d, int order_bound);

// Bijection fixing 0..base-1 pointwise carrying one table to the other.
bool base_fixing_isomorphic(const FiniteGroup& a, const FiniteGroup& b, int base);

// diagram_of with a caller-chosen labeling (labels[i] for element i).
Diagram diagram_of_labeled(const FiniteGroup& f, const std::vector<Label>& labels);

}  // namespace amalgam
