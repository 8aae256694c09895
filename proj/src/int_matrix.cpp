#include "amalgam/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace amalgam {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  IntMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

mpz_class IntMatrix::determinant() const {
  // Bareiss fraction-free elimination.
  int n = rows_;
  IntMatrix a = *this;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { sw = i; break; }
      if (sw < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = num / prev;  // exact by Bareiss
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) os << at(i, j).get_str() << (j + 1 == cols_ ? "" : " ");
    os << "\n";
  }
  return os.str();
}

namespace {

struct SnfWork {
  IntMatrix s, u, v;

  void row_swap(int i, int j) {
    for (int c = 0; c < s.cols(); ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(int i, int j) {
    for (int r = 0; r < s.rows(); ++r) std::swap(s.at(r, i), s.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  void row_addmul(int dst, int src, const mpz_class& f) {
    for (int c = 0; c < s.cols(); ++c) s.at(dst, c) += f * s.at(src, c);
    for (int c = 0; c < u.cols(); ++c) u.at(dst, c) += f * u.at(src, c);
  }
  void col_addmul(int dst, int src, const mpz_class& f) {
    for (int r = 0; r < s.rows(); ++r) s.at(r, dst) += f * s.at(r, src);
    for (int r = 0; r < v.rows(); ++r) v.at(r, dst) += f * v.at(r, src);
  }
  void row_negate(int i) {
    for (int c = 0; c < s.cols(); ++c) s.at(i, c) = -s.at(i, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SnfWork w;
  w.s = m;
  w.u = IntMatrix::identity(m.rows());
  w.v = IntMatrix::identity(m.cols());
  int n = std::min(m.rows(), m.cols());

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block, position order.
      int pr = -1, pc = -1;
      mpz_class best;
      for (int i = t; i < w.s.rows(); ++i)
        for (int j = t; j < w.s.cols(); ++j) {
          if (w.s.at(i, j) == 0) continue;
          mpz_class a = abs(w.s.at(i, j));
          if (pr < 0 || a < best) { best = a; pr = i; pc = j; }
        }
      if (pr < 0) break;  // trailing block zero
      if (pr != t) w.row_swap(t, pr);
      if (pc != t) w.col_swap(t, pc);
      if (w.s.at(t, t) < 0) w.row_negate(t);

      bool clean = true;
      for (int i = t + 1; i < w.s.rows(); ++i) {
        if (w.s.at(i, t) == 0) continue;
        mpz_class q = w.s.at(i, t) / w.s.at(t, t);  // truncated is fine; loop repeats
        if (q != 0) w.row_addmul(i, t, -q);
        if (w.s.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < w.s.cols(); ++j) {
        if (w.s.at(t, j) == 0) continue;
        mpz_class q = w.s.at(t, j) / w.s.at(t, t);
        if (q != 0) w.col_addmul(j, t, -q);
        if (w.s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: pivot must divide the whole trailing block.
      bool divides = true;
      for (int i = t + 1; i < w.s.rows() && divides; ++i)
        for (int j = t + 1; j < w.s.cols(); ++j)
          if (w.s.at(i, j) % w.s.at(t, t) != 0) {
            w.row_addmul(t, i, 1);  // pull the bad row up and restart
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  return {w.u, w.s, w.v};
}

SmithInvariants cokernel_invariants(const IntMatrix& relations, int generators) {
  if (relations.cols() != generators)
    fail(Errc::PreconditionFailed, "relation matrix width != generator count");
  SmithResult r = smith_normal_form(relations);
  SmithInvariants inv;
  int n = std::min(r.s.rows(), r.s.cols());
  int nonzero = 0;
  for (int i = 0; i < n; ++i) {
    if (r.s.at(i, i) == 0) continue;
    ++nonzero;
    if (r.s.at(i, i) > 1) inv.factors.push_back(r.s.at(i, i).get_ui());
  }
  inv.free_rank = generators - nonzero;
  return inv;
}

std::optional<SmithI64> smith_i64(std::vector<std::vector<long long>> m, int cols) {
  const long long CAP = 1LL << 40;
  int rows = static_cast<int>(m.size());
  SmithI64 out;
  out.v.assign(static_cast<std::size_t>(cols), std::vector<long long>(static_cast<std::size_t>(cols), 0));
  for (int i = 0; i < cols; ++i) out.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  int n = std::min(rows, cols);
  auto guard = [&](long long x) { return x > CAP || x < -CAP; };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pr = -1, pc = -1;
      long long best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          long long a = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (!a) continue;
          if (a < 0) a = -a;
          if (pr < 0 || a < best) { best = a; pr = i; pc = j; }
        }
      if (pr < 0) break;
      if (pr != t) std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(pr)]);
      if (pc != t) {
        for (auto& row : m) std::swap(row[static_cast<std::size_t>(t)], row[static_cast<std::size_t>(pc)]);
        for (auto& row : out.v) std::swap(row[static_cast<std::size_t>(t)], row[static_cast<std::size_t>(pc)]);
      }
      if (m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0)
        for (int j = 0; j < cols; ++j) m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] *= -1;

      long long piv = m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long long q = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] / piv;
        if (q) {
          for (int j = 0; j < cols; ++j) {
            long long& x = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            x -= q * m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
            if (guard(x)) return std::nullopt;
          }
        }
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        long long q = m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] / piv;
        if (q) {
          for (int i = 0; i < rows; ++i) {
            long long& x = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            x -= q * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
            if (guard(x)) return std::nullopt;
          }
          for (int i = 0; i < cols; ++i) {
            long long& x = out.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            x -= q * out.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
            if (guard(x)) return std::nullopt;
          }
        }
        if (m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (int i = t + 1; i < rows && divides; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % piv != 0) {
            for (int c = 0; c < cols; ++c) {
              long long& x = m[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
              x += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
              if (guard(x)) return std::nullopt;
            }
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  out.diag.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.diag[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  return out;
}

}  // namespace amalgam
