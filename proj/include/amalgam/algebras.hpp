#pragma once

#include <string>
#include <vector>

#include "amalgam/basics.hpp"

namespace amalgam {

// Total finite semigroup by table; associativity checked on construction.
class Semigroup {
 public:
  Semigroup(std::vector<Elt> table, int order);
  static Semigroup from_rows(const std::vector<std::vector<int>>& rows);

  int order() const { return n_; }
  Elt mul(Elt a, Elt b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<Elt>& table() const { return table_; }
  std::string table_str() const;

 private:
  int n_;
  std::vector<Elt> table_;
};

bool semigroup_isomorphic(const Semigroup& a, const Semigroup& b);

// Associative ring without unit: abelian (R,+,0,-) plus associative
// multiplication distributing over addition.
class Ring {
 public:
  Ring(std::vector<Elt> add, std::vector<Elt> mul, int order, Elt zero);

  int order() const { return n_; }
  Elt zero() const { return zero_; }
  Elt add(Elt a, Elt b) const { return add_[static_cast<std::size_t>(a) * n_ + b]; }
  Elt mul(Elt a, Elt b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  Elt neg(Elt a) const { return neg_[a]; }

 private:
  int n_;
  Elt zero_;
  std::vector<Elt> add_, mul_, neg_;
};

}  // namespace amalgam
