#include "amalgam/algebras.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace amalgam {

Semigroup::Semigroup(std::vector<Elt> table, int order) : n_(order), table_(std::move(table)) {
  if (n_ <= 0 || table_.size() != static_cast<std::size_t>(n_) * n_)
    fail(Errc::MalformedDiagram, "semigroup table size mismatch");
  for (Elt v : table_)
    if (v >= n_) fail(Errc::MalformedDiagram, "semigroup entry out of range");
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(static_cast<Elt>(a), static_cast<Elt>(b)), static_cast<Elt>(c)) !=
            mul(static_cast<Elt>(a), mul(static_cast<Elt>(b), static_cast<Elt>(c))))
          fail(Errc::NotAssociative, "semigroup fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
}

Semigroup Semigroup::from_rows(const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  std::vector<Elt> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i) * n + j] = static_cast<Elt>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return Semigroup(std::move(t), n);
}

std::string Semigroup::table_str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) os << mul(static_cast<Elt>(i), static_cast<Elt>(j)) << (j + 1 == n_ ? "" : " ");
    os << "\n";
  }
  return os.str();
}

namespace {

// Per-element profile invariant for pruning the bijection search.
std::vector<long> sg_profile(const Semigroup& s) {
  std::vector<long> prof(static_cast<std::size_t>(s.order()), 0);
  for (int a = 0; a < s.order(); ++a) {
    long p = 0;
    if (s.mul(static_cast<Elt>(a), static_cast<Elt>(a)) == a) p += 1;  // idempotent
    for (int b = 0; b < s.order(); ++b) {
      if (s.mul(static_cast<Elt>(a), static_cast<Elt>(b)) == b) p += 100;   // left identity hits
      if (s.mul(static_cast<Elt>(b), static_cast<Elt>(a)) == b) p += 10000; // right identity hits
    }
    prof[static_cast<std::size_t>(a)] = p;
  }
  return prof;
}

bool sg_iso_search(const Semigroup& a, const Semigroup& b, const std::vector<long>& pa,
                   const std::vector<long>& pb, std::vector<int>& map, std::vector<char>& used, int k) {
  int n = a.order();
  if (k == n) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (map[a.mul(static_cast<Elt>(x), static_cast<Elt>(y))] !=
            b.mul(static_cast<Elt>(map[static_cast<std::size_t>(x)]), static_cast<Elt>(map[static_cast<std::size_t>(y)])))
          return false;
    return true;
  }
  for (int cand = 0; cand < n; ++cand) {
    if (used[static_cast<std::size_t>(cand)]) continue;
    if (pa[static_cast<std::size_t>(k)] != pb[static_cast<std::size_t>(cand)]) continue;
    map[static_cast<std::size_t>(k)] = cand;
    used[static_cast<std::size_t>(cand)] = 1;
    bool ok = true;
    for (int x = 0; x <= k && ok; ++x) {
      Elt pxy = a.mul(static_cast<Elt>(x), static_cast<Elt>(k));
      Elt pyx = a.mul(static_cast<Elt>(k), static_cast<Elt>(x));
      if (pxy <= k && map[pxy] != b.mul(static_cast<Elt>(map[static_cast<std::size_t>(x)]), static_cast<Elt>(cand))) ok = false;
      if (ok && pyx <= k && map[pyx] != b.mul(static_cast<Elt>(cand), static_cast<Elt>(map[static_cast<std::size_t>(x)]))) ok = false;
    }
    if (ok && sg_iso_search(a, b, pa, pb, map, used, k + 1)) return true;
    used[static_cast<std::size_t>(cand)] = 0;
  }
  return false;
}

}  // namespace

bool semigroup_isomorphic(const Semigroup& a, const Semigroup& b) {
  if (a.order() != b.order()) return false;
  std::vector<long> pa = sg_profile(a), pb = sg_profile(b);
  std::vector<long> sa = pa, sb = pb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<int> map(static_cast<std::size_t>(a.order()), -1);
  std::vector<char> used(static_cast<std::size_t>(a.order()), 0);
  return sg_iso_search(a, b, pa, pb, map, used, 0);
}

Ring::Ring(std::vector<Elt> add, std::vector<Elt> mul, int order, Elt zero)
    : n_(order), zero_(zero), add_(std::move(add)), mul_(std::move(mul)) {
  if (add_.size() != static_cast<std::size_t>(n_) * n_ || mul_.size() != add_.size())
    fail(Errc::MalformedDiagram, "ring table size mismatch");
  auto A = [&](int a, int b) { return add_[static_cast<std::size_t>(a) * n_ + b]; };
  auto M = [&](int a, int b) { return mul_[static_cast<std::size_t>(a) * n_ + b]; };
  neg_.assign(static_cast<std::size_t>(n_), 0);
  for (int a = 0; a < n_; ++a) {
    if (A(zero_, a) != a || A(a, zero_) != a) fail(Errc::MalformedDiagram, "zero fails");
    int found = -1;
    for (int b = 0; b < n_; ++b)
      if (A(a, b) == zero_) { found = b; break; }
    if (found < 0) fail(Errc::MalformedDiagram, "no additive inverse for " + std::to_string(a));
    neg_[static_cast<std::size_t>(a)] = static_cast<Elt>(found);
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (A(a, b) != A(b, a)) fail(Errc::MalformedDiagram, "addition not commutative");
      for (int c = 0; c < n_; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) fail(Errc::NotAssociative, "addition fails associativity");
        if (M(M(a, b), c) != M(a, M(b, c))) fail(Errc::NotAssociative, "multiplication fails associativity");
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) fail(Errc::MalformedDiagram, "left distributivity fails");
        if (M(A(a, b), c) != A(M(a, c), M(b, c))) fail(Errc::MalformedDiagram, "right distributivity fails");
      }
    }
}

}  // namespace amalgam
