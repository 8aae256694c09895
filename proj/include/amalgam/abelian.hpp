#pragma once

#include <string>
#include <vector>

#include "amalgam/completion.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/finite_group.hpp"
#include "amalgam/int_matrix.hpp"

namespace amalgam {

// Finitely generated abelian group in normal form.
struct AbelianGroup {
  std::vector<unsigned long> invariant_factors;  // d1 | d2 | ..., each >= 2
  int free_rank = 0;

  bool finite() const { return free_rank == 0; }
  unsigned long order() const;  // finite only
  std::string str() const;      // Z/d1 + Z/d2 + ... + Z^r
};

// Cokernel of the relation matrix acting on Z^gen_count.
AbelianGroup abelian_from_relations(int gen_count, const IntMatrix& relations);

// Addition table of the product of cyclic groups (mixed-radix encoding,
// zero element at index 0).
FiniteGroup abelian_group_of(const std::vector<unsigned long>& factors);

// Invariant-factor coordinates of a finite abelian group given by table:
// an isomorphism G -> Z/d1 + ... + Z/dk, tabulated per element.
struct AbelianCoords {
  std::vector<unsigned long> factors;
  std::vector<std::vector<long>> coord;  // order x k
  std::vector<Elt> basis;                // basis[j] has coordinate e_j
};
AbelianCoords abelian_coords(const FiniteGroup& g);  // throws NotAbelian

// Lightweight pushout in coordinates, used by the exhaustive cospan suite.
// rel0 rows are (coord1(i1 x) | -coord2(i2 x)) for x ranging over A0.
struct CoordAmalgam {
  std::vector<unsigned long> factors;           // of A3
  std::vector<std::vector<long>> gen_img;       // (k1+k2) x k3
  unsigned long order = 1;
};
CoordAmalgam abelian_pushout_coords(const AbelianCoords& c1, const AbelianCoords& c2,
                                    const std::vector<std::vector<long>>& rel0);

struct AbelianAmalgam {
  GroupRef a3;
  Morphism j1, j2;
  AbelianGroup shape;
};
// (A1 + A2) / <(i1(x), -i2(x)) : x in A0> with verified injective legs.
AbelianAmalgam abelian_amalgam(const Morphism& i1, const Morphism& i2);

// Full-table diagram of a finite abelian group generated by the domain of
// D, satisfying all of D's cells and keeping distinct labels distinct.
// Search order: group order ascending, then invariant factors
// lexicographically, then assignment scan order.
Diagram abelian_t_isolating_extension(const Diagram& d);

// All abelian groups of order <= bound (invariant-factor enumeration).
std::vector<std::vector<unsigned long>> invariant_factor_chains(unsigned long order);

}  // namespace amalgam
