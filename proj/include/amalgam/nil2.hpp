#pragma once

#include <string>
#include <vector>

#include "amalgam/finite_group.hpp"
#include "amalgam/fp_linalg.hpp"

namespace amalgam {

// Presentation of a finite class-<=2 exponent-p group (p odd) as an
// alternating bilinear map beta : V x V -> W over F_p, together with a
// designated predicate subspace im(beta) <= P <= W.
struct Nil2Presentation {
  int p = 3;
  int dim_v = 0, dim_w = 0;
  // beta[i][j] for i < j; extended antisymmetrically, zero on the diagonal.
  std::vector<std::vector<FpVec>> beta_basis;
  FpMat pred;  // rows span P inside W

  FpVec beta(const FpVec& u, const FpVec& v) const;
  unsigned long order() const;
  void validate() const;  // p odd prime, shapes, im(beta) <= P
  FpMat image_span() const;

  std::string str() const;
  static Nil2Presentation parse(const std::string& content);
};

// Group on V x W with (v,w)(v',w') = (v+v', w+w'+ t*beta(v,v')), t the
// inverse of 2 mod p.  Mixed-radix encoding, v digits first; unit is 0.
FiniteGroup baer_group(const Nil2Presentation& pres, unsigned long table_cap = 6561);

// Baer coordinates of a concrete group with a designated central part:
// the isomorphism G <-> baer_group(pres) tabulated both ways.
struct Nil2Coords {
  Nil2Presentation pres;
  GroupRef group;
  std::vector<FpVec> v_of, w_of;  // per element of G
  std::vector<Elt> elem_at;       // baer index -> element of G

  Elt baer_index(const FpVec& v, const FpVec& w) const;
};

// W must satisfy derived(G) <= W <= Z(G); throws WrongVariety when G is
// not exponent-p class-<=2 for odd prime p.
Nil2Coords presentation_with_center(GroupRef g, int p, const std::vector<Elt>& w_subgroup);
// The minimal choice W = derived(G), predicate P = W.
Nil2Coords presentation_of(GroupRef g, int p);

// Relatively free rank-k object: V = F_p^k, W = wedge^2 V.
Nil2Presentation free_nil2_expp(int k, int p);

// Elements (0, w) for w in the row space of `rows`.
std::vector<Elt> predicate_subgroup(const Nil2Coords& c, const FpMat& rows);

// G' = Z(G) test (the sufficiency direction of the amalgamation-base
// criterion).  Trivial groups count as bases.
bool is_amalgamation_base(const FiniteGroup& g);

struct BaseEmbedding {
  GroupRef base;       // G1 with G1' = Z(G1)
  Morphism embedding;  // verified G0 -> G1
};
BaseEmbedding embed_into_amalg_base(GroupRef g0, unsigned long table_cap = 6561);

struct Nil2Amalgam {
  GroupRef g3;
  Morphism j1, j2;
  Nil2Presentation pres3;
};
// Amalgam of e1 : G0 -> G1 and e2 : G0 -> G2 over G0, built on
// presentations: V and W pushouts, zero cross commutators, predicate
// span(P1 u P2).  pred_i are the predicate subgroups of G_i, with
// G_i' <= pred_i <= Z(G_i) and e1^-1(pred1) = e2^-1(pred2).
Nil2Amalgam nil2_amalgam(const Morphism& e1, const Morphism& e2, const std::vector<Elt>& pred1,
                         const std::vector<Elt>& pred2, unsigned long table_cap = 6561);

bool is_odd_prime(int p);

}  // namespace amalgam
