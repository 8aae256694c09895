#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/basics.hpp"

namespace amalgam {

// Group word over variables 1..k: entry +i means x_i, -i means x_i^{-1}.
using GroupWord = std::vector<int>;

// Total finite group by multiplication table.  Validation happens in the
// constructor (Latin square, unit, inverses, associativity via Light's
// test on a generating set); structural caches are computed eagerly so
// instances are immutable and freely shareable.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<Elt> table, int order, Elt unit);

  static FiniteGroup from_rows(const std::vector<std::vector<int>>& rows, int unit);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);     // order 2n
  static FiniteGroup dicyclic(int n);     // order 4n; n=2 is Q8
  static FiniteGroup symmetric3();
  static FiniteGroup quaternion8();
  static FiniteGroup alternating4();

  int order() const { return n_; }
  Elt unit() const { return unit_; }
  Elt mul(Elt a, Elt b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elt inv(Elt a) const { return inverse_[a]; }
  Elt conj(Elt a, Elt g) const { return mul(mul(inv(g), a), g); }
  Elt comm(Elt a, Elt b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Elt pow(Elt a, long k) const;

  int element_order(Elt a) const { return orders_[a]; }
  unsigned long exponent() const { return exponent_; }
  bool abelian() const { return abelian_; }
  const std::vector<Elt>& generators() const { return generators_; }
  const std::vector<Elt>& center() const { return center_; }
  const std::vector<Elt>& derived() const;
  // Lower central series G = G_1 >= G_2 >= ... listed until it stabilizes
  // (last entry repeated once it stops shrinking is not stored).
  const std::vector<std::vector<Elt>>& lower_series() const { return lower_; }
  // Upper central series 1 = Z_0 <= Z_1 <= ... until stabilization.
  const std::vector<std::vector<Elt>>& upper_series() const { return upper_; }
  std::optional<int> nilpotency_class() const { return nil_class_; }

  std::vector<Elt> subgroup_generated(std::vector<Elt> seed) const;
  bool is_subgroup(const std::vector<Elt>& sorted_elts) const;
  bool is_normal(const std::vector<Elt>& sorted_elts) const;

  Elt eval_word(const GroupWord& w, const std::vector<Elt>& assignment) const;

  // Same group with elements renamed by `perm` (new index of old i is perm[i]).
  FiniteGroup renumbered(const std::vector<Elt>& perm) const;

  const std::vector<Elt>& table() const { return table_; }
  std::string table_str() const;
  // Cheap isomorphism invariant: order, order profile, |Z|, |G'|, exponent.
  const std::string& canonical_key() const { return key_; }

 private:
  int n_ = 1;
  Elt unit_ = 0;
  std::vector<Elt> table_;
  std::vector<Elt> inverse_;
  std::vector<int> orders_;
  std::vector<Elt> generators_;
  std::vector<Elt> center_;
  std::vector<std::vector<Elt>> lower_;
  std::vector<std::vector<Elt>> upper_;
  std::optional<int> nil_class_;
  unsigned long exponent_ = 1;
  bool abelian_ = true;
  std::string key_;

  void validate() const;
  void compute_caches();
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

inline GroupRef make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

// Verified map between finite groups.  The constructor re-checks the
// homomorphism condition on all pairs, so a Morphism in hand is a
// certificate.
class Morphism {
 public:
  Morphism(GroupRef source, GroupRef target, std::vector<Elt> map);

  static Morphism identity(GroupRef g);

  const FiniteGroup& source() const { return *src_; }
  const FiniteGroup& target() const { return *dst_; }
  GroupRef source_ref() const { return src_; }
  GroupRef target_ref() const { return dst_; }
  Elt operator()(Elt x) const { return map_[x]; }
  const std::vector<Elt>& map() const { return map_; }
  bool injective() const { return injective_; }
  bool surjective() const { return surjective_; }

  Morphism then(const Morphism& next) const;  // this followed by next

 private:
  GroupRef src_, dst_;
  std::vector<Elt> map_;
  bool injective_ = false, surjective_ = false;
};

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows, int unit);

std::vector<Elt> subgroup_generated(const FiniteGroup& g, const std::vector<Elt>& seed);

struct StructureReport {
  std::vector<Elt> center;
  std::vector<Elt> derived;
  std::vector<std::vector<Elt>> lower_series;
  std::vector<std::vector<Elt>> upper_series;
  unsigned long exponent = 1;
  std::optional<int> nilpotency_class;
};
StructureReport structure_report(const FiniteGroup& g);

struct DirectSum {
  GroupRef sum;
  Morphism left, right;  // canonical injections
};
DirectSum direct_sum(GroupRef g, GroupRef h);

struct Quotient {
  GroupRef group;
  Morphism projection;
};
Quotient quotient(GroupRef g, const std::vector<Elt>& normal_subgroup);

// Up to `limit` injective morphisms G -> H, generator-image backtracking,
// deterministic order.  limit == 0 means no cap.
std::vector<Morphism> find_embeddings(GroupRef g, GroupRef h, std::size_t limit);

bool isomorphic(GroupRef g, GroupRef h);

// Every subgroup, as sorted element lists (sorted lexicographically).
std::vector<std::vector<Elt>> all_subgroups(const FiniteGroup& g);

// Subgroup as its own FiniteGroup plus the inclusion morphism.
struct SubgroupView {
  GroupRef group;
  Morphism inclusion;
};
SubgroupView subgroup_view(GroupRef g, const std::vector<Elt>& elts);

}  // namespace amalgam
