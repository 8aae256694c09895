#include "amalgam/fp_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace amalgam {

FpMat FpMat::identity(int n, int p) {
  FpMat m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<std::uint8_t> FpMat::row(int r) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
          a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_};
}

void FpMat::set_row(int r, const std::vector<std::uint8_t>& v) {
  std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_);
}

FpMat FpMat::operator*(const FpMat& o) const {
  FpMat out(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      int v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.cols_; ++j)
        out.at(i, j) = static_cast<std::uint8_t>((out.at(i, j) + v * o.at(k, j)) % p_);
    }
  return out;
}

FpMat FpMat::transpose() const {
  FpMat out(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

std::string FpMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) os << int(at(i, j)) << (j + 1 == cols_ ? "" : " ");
    os << "\n";
  }
  return os.str();
}

int fp_inv(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  int r = 1, e = p - 2;  // Fermat
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

FpVec fp_add(const FpVec& a, const FpVec& b, int p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((a[i] + b[i]) % p);
  return r;
}

FpVec fp_sub(const FpVec& a, const FpVec& b, int p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((a[i] + p - b[i]) % p);
  return r;
}

FpVec fp_scale(int c, const FpVec& a, int p) {
  c %= p;
  if (c < 0) c += p;
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>(c * a[i] % p);
  return r;
}

FpVec fp_apply(const FpVec& v, const FpMat& m) {
  FpVec r(static_cast<std::size_t>(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i) {
    if (!v[static_cast<std::size_t>(i)]) continue;
    int c = v[static_cast<std::size_t>(i)];
    for (int j = 0; j < m.cols(); ++j)
      r[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((r[static_cast<std::size_t>(j)] + c * m.at(i, j)) % m.p());
  }
  return r;
}

FpMat fp_rref(const FpMat& m, int* rank_out, std::vector<int>* pivots) {
  FpMat a = m;
  int p = a.p();
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
    int inv = fp_inv(a.at(r, c), p);
    for (int j = 0; j < a.cols(); ++j) a.at(r, j) = static_cast<std::uint8_t>(a.at(r, j) * inv % p);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || !a.at(i, c)) continue;
      int f = a.at(i, c);
      for (int j = 0; j < a.cols(); ++j)
        a.at(i, j) = static_cast<std::uint8_t>((a.at(i, j) + (p - f) * a.at(r, j)) % p);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  if (rank_out) *rank_out = r;
  return a;
}

int fp_rank(const FpMat& m) {
  int r = 0;
  fp_rref(m, &r);
  return r;
}

FpMat fp_kernel(const FpMat& m) {
  int rank = 0;
  std::vector<int> piv;
  FpMat e = fp_rref(m.transpose(), &rank, &piv);
  // Kernel of v*m equals kernel of m^T acting on column vectors; read free
  // variables off the echelon form.
  int n = m.rows(), p = m.p();
  std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
  for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  FpMat ker(n - rank, n, p);
  int k = 0;
  for (int c = 0; c < n; ++c) {
    if (is_piv[static_cast<std::size_t>(c)]) continue;
    ker.at(k, c) = 1;
    for (int r = 0; r < rank; ++r) {
      int pc = piv[static_cast<std::size_t>(r)];
      ker.at(k, pc) = static_cast<std::uint8_t>((p - e.at(r, c)) % p);
    }
    ++k;
  }
  return ker;
}

bool fp_solve(const FpMat& m, const FpVec& rhs, FpVec& x) {
  // Solve x*m = rhs: row-reduce [m | e_i] pattern via augmented transpose.
  int p = m.p();
  FpMat aug(m.rows() + 1, m.cols(), p);
  for (int i = 0; i < m.rows(); ++i) aug.set_row(i, m.row(i));
  aug.set_row(m.rows(), rhs);
  // Track coefficients while eliminating: carry an identity block.
  FpMat coef = FpMat::identity(m.rows() + 1, p);
  int r = 0;
  for (int c = 0; c < aug.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (aug.at(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j < aug.cols(); ++j) std::swap(aug.at(piv, j), aug.at(r, j));
    for (int j = 0; j < coef.cols(); ++j) std::swap(coef.at(piv, j), coef.at(r, j));
    int inv = fp_inv(aug.at(r, c), p);
    for (int j = 0; j < aug.cols(); ++j) aug.at(r, j) = static_cast<std::uint8_t>(aug.at(r, j) * inv % p);
    for (int j = 0; j < coef.cols(); ++j) coef.at(r, j) = static_cast<std::uint8_t>(coef.at(r, j) * inv % p);
    for (int i = 0; i <= m.rows(); ++i) {
      if (i == r || !aug.at(i, c)) continue;
      int f = aug.at(i, c);
      for (int j = 0; j < aug.cols(); ++j)
        aug.at(i, j) = static_cast<std::uint8_t>((aug.at(i, j) + (p - f) * aug.at(r, j)) % p);
      for (int j = 0; j < coef.cols(); ++j)
        coef.at(i, j) = static_cast<std::uint8_t>((coef.at(i, j) + (p - f) * coef.at(r, j)) % p);
    }
    ++r;
  }
  for (int j = 0; j < aug.cols(); ++j)
    if (aug.at(m.rows(), j)) return false;  // rhs not in row space
  // Last row of coef expresses 0 = rhs + sum c_i row_i; negate.
  x.assign(static_cast<std::size_t>(m.rows()), 0);
  int scale = coef.at(m.rows(), m.rows());  // coefficient of rhs itself
  int inv = fp_inv(scale, p);
  for (int i = 0; i < m.rows(); ++i)
    x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((p - coef.at(m.rows(), i)) * inv % p);
  return true;
}

FpMat fp_row_basis(const FpMat& m) {
  int rank = 0;
  FpMat e = fp_rref(m, &rank);
  FpMat b(rank, m.cols(), m.p());
  for (int i = 0; i < rank; ++i) b.set_row(i, e.row(i));
  return b;
}

bool fp_in_rowspace(const FpMat& basis, const FpVec& v) {
  FpVec x;
  if (basis.rows() == 0) {
    for (auto c : v)
      if (c) return false;
    return true;
  }
  return fp_solve(basis, v, x);
}

FpMat fp_extend_basis(const FpMat& basis, int n, int p) {
  FpMat cur = basis;
  FpMat extra(0, n, p);
  for (int j = 0; j < n; ++j) {
    FpVec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    if (fp_in_rowspace(cur, e)) continue;
    FpMat nxt(cur.rows() + 1, n, p);
    for (int i = 0; i < cur.rows(); ++i) nxt.set_row(i, cur.row(i));
    nxt.set_row(cur.rows(), e);
    cur = nxt;
    FpMat ex(extra.rows() + 1, n, p);
    for (int i = 0; i < extra.rows(); ++i) ex.set_row(i, extra.row(i));
    ex.set_row(extra.rows(), e);
    extra = ex;
  }
  return extra;
}

FpPushout fp_pushout(const FpMat& f1, const FpMat& f2) {
  int p = f1.p();
  int d0 = f1.rows(), d1 = f1.cols(), d2 = f2.cols();
  if (fp_rank(f1) != d0 || fp_rank(f2) != d0) fail(Errc::NotInjective, "pushout legs must be injective");
  FpPushout out;
  out.dim3 = d1 + d2 - d0;
  // V3 basis: all of V1, then a complement of im(f2) in V2.
  FpMat im2 = fp_row_basis(f2);
  FpMat comp2 = fp_extend_basis(im2, d2, p);
  out.comp2 = comp2;
  out.leg1 = FpMat(d1, out.dim3, p);
  for (int i = 0; i < d1; ++i) out.leg1.at(i, i) = 1;
  // g2(e_j): decompose e_j over rows of f2 and comp2, send the f2 part
  // through f1*g1 and the complement part to the fresh block.
  FpMat dec(d0 + comp2.rows(), d2, p);
  for (int i = 0; i < d0; ++i) dec.set_row(i, f2.row(i));
  for (int i = 0; i < comp2.rows(); ++i) dec.set_row(d0 + i, comp2.row(i));
  out.leg2 = FpMat(d2, out.dim3, p);
  for (int j = 0; j < d2; ++j) {
    FpVec e(static_cast<std::size_t>(d2), 0);
    e[static_cast<std::size_t>(j)] = 1;
    FpVec x;
    if (!fp_solve(dec, e, x)) fail(Errc::PreconditionFailed, "pushout decomposition failed");
    FpVec img(static_cast<std::size_t>(out.dim3), 0);
    for (int i = 0; i < d0; ++i) {
      if (!x[static_cast<std::size_t>(i)]) continue;
      FpVec via = fp_apply(f1.row(i), out.leg1);
      img = fp_add(img, fp_scale(x[static_cast<std::size_t>(i)], via, p), p);
    }
    for (int i = 0; i < comp2.rows(); ++i) {
      int c = x[static_cast<std::size_t>(d0 + i)];
      if (!c) continue;
      img[static_cast<std::size_t>(d1 + i)] = static_cast<std::uint8_t>((img[static_cast<std::size_t>(d1 + i)] + c) % p);
    }
    out.leg2.set_row(j, img);
  }
  return out;
}

}  // namespace amalgam
