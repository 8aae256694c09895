#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "amalgam/basics.hpp"

namespace amalgam {

// Arbitrary-precision integer matrix.  SNF intermediates can outgrow any
// fixed width, so entries are mpz throughout; hot paths with provably tiny
// inputs use the int64 variant below.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpz_class& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  mpz_class determinant() const;  // Bareiss, square only
  std::string str() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

// U * M * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... ,
// diagonal entries nonnegative.  Pivoting: smallest nonzero absolute
// value, then position order, so the triple is reproducible.
struct SmithResult {
  IntMatrix u, s, v;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Invariant factors (diagonal of S restricted to entries >= 2) plus the
// number of zero diagonal entries (free rank) for the cokernel of M seen
// as relations on `cols` generators.
struct SmithInvariants {
  std::vector<unsigned long> factors;
  int free_rank = 0;
};
SmithInvariants cokernel_invariants(const IntMatrix& relations, int generators);

// int64 fast-path SNF used by the amalgam loops (tiny matrices, entries
// bounded by small group orders).  Falls back to nullopt on overflow risk.
struct SmithI64 {
  std::vector<std::vector<long long>> v;      // cols x cols, unimodular
  std::vector<long long> diag;                // min(rows, cols)
};
std::optional<SmithI64> smith_i64(std::vector<std::vector<long long>> m, int cols);

}  // namespace amalgam
