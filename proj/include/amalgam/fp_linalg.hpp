#pragma once

#include <cstdint>
#include <vector>

#include "amalgam/basics.hpp"

namespace amalgam {

// Dense row-major matrix over F_p, p a small odd prime.  Row-vector
// convention throughout: a map V -> W is a dimV x dimW matrix acting by
// v * M.
class FpMat {
 public:
  FpMat() = default;
  FpMat(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  static FpMat identity(int n, int p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int p() const { return p_; }

  std::uint8_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::uint8_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<std::uint8_t> row(int r) const;
  void set_row(int r, const std::vector<std::uint8_t>& v);

  FpMat operator*(const FpMat& o) const;
  bool operator==(const FpMat& o) const = default;

  FpMat transpose() const;
  std::string str() const;

 private:
  int rows_ = 0, cols_ = 0, p_ = 2;
  std::vector<std::uint8_t> a_;
};

using FpVec = std::vector<std::uint8_t>;

int fp_inv(int a, int p);

FpVec fp_add(const FpVec& a, const FpVec& b, int p);
FpVec fp_sub(const FpVec& a, const FpVec& b, int p);
FpVec fp_scale(int c, const FpVec& a, int p);
FpVec fp_apply(const FpVec& v, const FpMat& m);  // v * m

// Row-reduce a copy of m; returns rank.  If pivots != nullptr the pivot
// column of each nonzero row of the echelon form is appended.
FpMat fp_rref(const FpMat& m, int* rank_out, std::vector<int>* pivots = nullptr);

int fp_rank(const FpMat& m);

// Basis of { v : v * m = 0 }, one row per basis vector.
FpMat fp_kernel(const FpMat& m);

// Solve x * m = rhs; returns false if inconsistent.
bool fp_solve(const FpMat& m, const FpVec& rhs, FpVec& x);

// Rows of `m` reduced to an independent spanning subset (echelon basis).
FpMat fp_row_basis(const FpMat& m);

bool fp_in_rowspace(const FpMat& basis, const FpVec& v);

// Extend the (independent) rows of `basis` to a basis of F_p^n using
// standard basis vectors; returns the appended complement rows.
FpMat fp_extend_basis(const FpMat& basis, int n, int p);

// Pushout of injective linear maps f1 : V0 -> V1, f2 : V0 -> V2.
// Produces dim3 = d1 + d2 - d0 together with legs g1 : V1 -> V3 and
// g2 : V2 -> V3 satisfying f1*g1 = f2*g2, both injective.  leg1 is the
// identity block [I|0]; the fresh block of V3 is spanned by the images of
// comp2, a complement of im(f2) in V2.
struct FpPushout {
  int dim3 = 0;
  FpMat leg1, leg2;
  FpMat comp2;
};
FpPushout fp_pushout(const FpMat& f1, const FpMat& f2);

}  // namespace amalgam
