#include "amalgam/completion.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>

namespace amalgam {

namespace {

constexpr int UNDEF = -1;

// Labels for fresh elements: smallest naturals >= 1 not in the domain.
std::vector<Label> fresh_labels(const std::vector<Label>& domain, int count) {
  std::vector<Label> out;
  Label next = 1;
  while (static_cast<int>(out.size()) < count) {
    if (!std::binary_search(domain.begin(), domain.end(), next)) out.push_back(next);
    ++next;
  }
  return out;
}

struct TableState {
  int m = 0;
  std::vector<int> t;            // m*m, UNDEF where open
  std::vector<std::uint32_t> rowmask, colmask;
  bool mirror = false;           // abelian: keep table symmetric

  int get(int a, int b) const { return t[static_cast<std::size_t>(a) * m + b]; }

  bool assign(int a, int b, int c, std::vector<std::array<int, 3>>& queue);
};

bool TableState::assign(int a, int b, int c, std::vector<std::array<int, 3>>& queue) {
  int cur = get(a, b);
  if (cur != UNDEF) return cur == c;
  std::uint32_t bit = 1u << c;
  if ((rowmask[static_cast<std::size_t>(a)] & bit) || (colmask[static_cast<std::size_t>(b)] & bit)) return false;
  t[static_cast<std::size_t>(a) * m + b] = c;
  rowmask[static_cast<std::size_t>(a)] |= bit;
  colmask[static_cast<std::size_t>(b)] |= bit;
  queue.push_back({a, b, c});
  if (mirror && a != b) return assign(b, a, c, queue);
  return true;
}

// Sound (not complete) associativity propagation; missed instances are
// caught by full validation at the leaf.
bool propagate(TableState& s, std::vector<std::array<int, 3>>& queue) {
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [a, b, c] = queue[qi];
    for (int x = 0; x < s.m; ++x) {
      // (x*a)*b = x*(a*b)
      int xa = s.get(x, a);
      if (xa != UNDEF) {
        int xab = s.get(xa, b), xc = s.get(x, c);
        if (xab != UNDEF && xc != UNDEF) {
          if (xab != xc) return false;
        } else if (xab != UNDEF) {
          if (!s.assign(x, c, xab, queue)) return false;
        } else if (xc != UNDEF) {
          if (!s.assign(xa, b, xc, queue)) return false;
        }
      }
      // (a*b)*x = a*(b*x)
      int bx = s.get(b, x);
      if (bx != UNDEF) {
        int cx = s.get(c, x), abx = s.get(a, bx);
        if (cx != UNDEF && abx != UNDEF) {
          if (cx != abx) return false;
        } else if (cx != UNDEF) {
          if (!s.assign(a, bx, cx, queue)) return false;
        } else if (abx != UNDEF) {
          if (!s.assign(c, x, abx, queue)) return false;
        }
      }
    }
  }
  return true;
}

struct GroupSearch {
  int m, base;
  Elt unit;
  const VarietySpec* variety;
  std::vector<FiniteGroup> found;

  void dfs(TableState s) {
    int open = -1;
    for (int i = 0; i < m * m; ++i)
      if (s.t[static_cast<std::size_t>(i)] == UNDEF) { open = i; break; }
    if (open < 0) {
      std::vector<Elt> table(static_cast<std::size_t>(m) * m);
      for (int i = 0; i < m * m; ++i) table[static_cast<std::size_t>(i)] = static_cast<Elt>(s.t[static_cast<std::size_t>(i)]);
      try {
        FiniteGroup g(std::move(table), m, unit);
        if (variety->satisfied_by(g)) found.push_back(std::move(g));
      } catch (const Error&) {
        // propagation is incomplete; an invalid leaf is just a dead branch
      }
      return;
    }
    int a = open / m, b = open % m;
    for (int c = 0; c < m; ++c) {
      TableState next = s;
      std::vector<std::array<int, 3>> queue;
      if (!next.assign(a, b, c, queue)) continue;
      if (!propagate(next, queue)) continue;
      dfs(std::move(next));
    }
  }
};

}  // namespace

bool base_fixing_isomorphic(const FiniteGroup& a, const FiniteGroup& b, int base) {
  if (a.order() != b.order()) return false;
  int m = a.order();
  std::vector<int> map(static_cast<std::size_t>(m), UNDEF);
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < base; ++i) {
    map[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(i)] = 1;
  }
  // DFS over images of the fresh part.
  std::vector<int> order;
  for (int i = base; i < m; ++i) order.push_back(i);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == order.size()) {
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
          if (map[a.mul(static_cast<Elt>(x), static_cast<Elt>(y))] !=
              b.mul(static_cast<Elt>(map[static_cast<std::size_t>(x)]), static_cast<Elt>(map[static_cast<std::size_t>(y)])))
            return false;
      return true;
    }
    int x = order[k];
    for (int cand = base; cand < m; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      if (a.element_order(static_cast<Elt>(x)) != b.element_order(static_cast<Elt>(cand))) continue;
      map[static_cast<std::size_t>(x)] = cand;
      used[static_cast<std::size_t>(cand)] = 1;
      bool ok = true;
      for (int y = 0; y < m && ok; ++y) {
        if (map[static_cast<std::size_t>(y)] == UNDEF) continue;
        int p1 = map[a.mul(static_cast<Elt>(x), static_cast<Elt>(y))];
        if (p1 != UNDEF && p1 != b.mul(static_cast<Elt>(cand), static_cast<Elt>(map[static_cast<std::size_t>(y)]))) ok = false;
        int p2 = map[a.mul(static_cast<Elt>(y), static_cast<Elt>(x))];
        if (ok && p2 != UNDEF && p2 != b.mul(static_cast<Elt>(map[static_cast<std::size_t>(y)]), static_cast<Elt>(cand))) ok = false;
      }
      if (ok && rec(k + 1)) return true;
      map[static_cast<std::size_t>(x)] = UNDEF;
      used[static_cast<std::size_t>(cand)] = 0;
    }
    return false;
  };
  return rec(0);
}

EnumeratedApprox Completion::approx() const { return {group, labels}; }

Diagram Completion::full_diagram() const { return diagram_of_labeled(*group, labels); }

Diagram diagram_of_labeled(const FiniteGroup& f, const std::vector<Label>& labels) {
  Diagram d = Diagram::group(labels, labels[f.unit()]);
  for (int a = 0; a < f.order(); ++a) {
    d.add(inv_cell(labels[static_cast<std::size_t>(a)], labels[f.inv(static_cast<Elt>(a))]));
    for (int b = 0; b < f.order(); ++b)
      d.add(mul_cell(labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)],
                     labels[f.mul(static_cast<Elt>(a), static_cast<Elt>(b))]));
  }
  return d;
}

std::vector<Completion> complete_within(const Diagram& d, const VarietySpec& v, int order_bound) {
  if (d.kind != AlgebraKind::group) fail(Errc::KindMismatch, "complete_within wants a group diagram");
  ConsistencyReport rep = check_partial_consistency(d);
  if (!rep.ok) fail(Errc::PreconditionFailed, "inconsistent diagram: " + rep.violation);
  int k = static_cast<int>(d.domain.size());
  if (order_bound < std::max(k, 1)) fail(Errc::BoundTooSmall, "order bound below domain size");
  if (order_bound > 31) fail(Errc::BoundExceeded, "completion search capped at order 31");

  // Element numbering: unit first, then remaining domain labels in order.
  std::vector<Label> elt_label;
  elt_label.push_back(*d.unit);
  for (Label l : d.domain)
    if (l != *d.unit) elt_label.push_back(l);
  std::map<Label, int> elt_of;
  for (std::size_t i = 0; i < elt_label.size(); ++i) elt_of[elt_label[i]] = static_cast<int>(i);

  bool closed = d.is_total();  // full subgroup table: Lagrange applies
  std::vector<Completion> out;

  for (int m = std::max(k, 1); m <= order_bound; ++m) {
    if (closed && k > 0 && m % k != 0) continue;
    TableState s;
    s.m = m;
    s.t.assign(static_cast<std::size_t>(m) * m, UNDEF);
    s.rowmask.assign(static_cast<std::size_t>(m), 0);
    s.colmask.assign(static_cast<std::size_t>(m), 0);
    s.mirror = v.abelian;
    std::vector<std::array<int, 3>> queue;
    bool seeded = true;
    for (int x = 0; x < m && seeded; ++x)
      seeded = s.assign(0, x, x, queue) && s.assign(x, 0, x, queue);
    for (const Cell& c : d.cells) {
      if (!seeded) break;
      if (c.op == CellOp::Mul)
        seeded = s.assign(elt_of[c.a], elt_of[c.b], elt_of[c.value], queue);
      else if (c.op == CellOp::Inv)
        seeded = s.assign(elt_of[c.a], elt_of[c.value], 0, queue) && s.assign(elt_of[c.value], elt_of[c.a], 0, queue);
    }
    if (!seeded || !propagate(s, queue)) continue;

    GroupSearch search{m, k, 0, &v, {}};
    search.dfs(std::move(s));

    // Reduce up to isomorphism fixing the labeled part pointwise.
    std::vector<FiniteGroup> reps;
    for (FiniteGroup& g : search.found) {
      bool dup = false;
      for (const FiniteGroup& r : reps)
        if (r.canonical_key() == g.canonical_key() && base_fixing_isomorphic(g, r, k)) { dup = true; break; }
      if (!dup) reps.push_back(std::move(g));
    }
    std::vector<Label> fresh = fresh_labels(d.domain, m - k);
    std::vector<Label> labels = elt_label;
    labels.insert(labels.end(), fresh.begin(), fresh.end());
    for (FiniteGroup& g : reps) out.push_back({make_group(std::move(g)), labels});
  }
  return out;
}

namespace {

struct SgSearch {
  int m;
  std::vector<Semigroup> found;

  void dfs(TableState s) {
    int open = -1;
    for (int i = 0; i < m * m; ++i)
      if (s.t[static_cast<std::size_t>(i)] == UNDEF) { open = i; break; }
    if (open < 0) {
      std::vector<Elt> table(static_cast<std::size_t>(m) * m);
      for (int i = 0; i < m * m; ++i) table[static_cast<std::size_t>(i)] = static_cast<Elt>(s.t[static_cast<std::size_t>(i)]);
      try {
        found.emplace_back(std::move(table), m);
      } catch (const Error&) {
      }
      return;
    }
    int a = open / m, b = open % m;
    for (int c = 0; c < m; ++c) {
      TableState next = s;
      std::vector<std::array<int, 3>> queue;
      // No Latin constraint for semigroups.
      if (sg_set(next, a, b, c, queue) && sg_propagate(next, queue)) dfs(std::move(next));
    }
  }

  static bool sg_propagate(TableState& s, std::vector<std::array<int, 3>>& queue) {
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [a, b, c] = queue[qi];
      for (int x = 0; x < s.m; ++x) {
        int xa = s.get(x, a);
        if (xa != UNDEF) {
          int xab = s.get(xa, b), xc = s.get(x, c);
          if (xab != UNDEF && xc != UNDEF) {
            if (xab != xc) return false;
          } else if (xab != UNDEF) {
            if (!sg_set(s, x, c, xab, queue)) return false;
          } else if (xc != UNDEF) {
            if (!sg_set(s, xa, b, xc, queue)) return false;
          }
        }
        int bx = s.get(b, x);
        if (bx != UNDEF) {
          int cx = s.get(c, x), abx = s.get(a, bx);
          if (cx != UNDEF && abx != UNDEF) {
            if (cx != abx) return false;
          } else if (cx != UNDEF) {
            if (!sg_set(s, a, bx, cx, queue)) return false;
          } else if (abx != UNDEF) {
            if (!sg_set(s, c, x, abx, queue)) return false;
          }
        }
      }
    }
    return true;
  }

  static bool sg_set(TableState& s, int a, int b, int c, std::vector<std::array<int, 3>>& queue) {
    int cur = s.get(a, b);
    if (cur != UNDEF) return cur == c;
    s.t[static_cast<std::size_t>(a) * s.m + b] = c;
    queue.push_back({a, b, c});
    return true;
  }
};

bool semigroup_base_iso(const Semigroup& a, const Semigroup& b, int base) {
  int m = a.order();
  std::vector<int> map(static_cast<std::size_t>(m), UNDEF);
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < base; ++i) {
    map[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(i)] = 1;
  }
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == m) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (map[a.mul(static_cast<Elt>(i), static_cast<Elt>(j))] !=
              b.mul(static_cast<Elt>(map[static_cast<std::size_t>(i)]), static_cast<Elt>(map[static_cast<std::size_t>(j)])))
            return false;
      return true;
    }
    if (map[static_cast<std::size_t>(x)] != UNDEF) return rec(x + 1);
    for (int cand = base; cand < m; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      map[static_cast<std::size_t>(x)] = cand;
      used[static_cast<std::size_t>(cand)] = 1;
      if (rec(x + 1)) return true;
      map[static_cast<std::size_t>(x)] = UNDEF;
      used[static_cast<std::size_t>(cand)] = 0;
    }
    return false;
  };
  return rec(base);
}

}  // namespace

std::vector<SemigroupCompletion> complete_semigroup_within(const Diagram& d, int order_bound) {
  if (d.kind != AlgebraKind::semigroup) fail(Errc::KindMismatch, "expected a semigroup diagram");
  ConsistencyReport rep = check_partial_consistency(d);
  if (!rep.ok) fail(Errc::PreconditionFailed, "inconsistent diagram: " + rep.violation);
  int k = static_cast<int>(d.domain.size());
  if (order_bound < std::max(k, 1)) fail(Errc::BoundTooSmall, "order bound below domain size");
  if (order_bound > 12) fail(Errc::BoundExceeded, "semigroup completion capped at order 12");

  std::map<Label, int> elt_of;
  for (std::size_t i = 0; i < d.domain.size(); ++i) elt_of[d.domain[i]] = static_cast<int>(i);
  std::vector<SemigroupCompletion> out;
  for (int m = std::max(k, 1); m <= order_bound; ++m) {
    TableState s;
    s.m = m;
    s.t.assign(static_cast<std::size_t>(m) * m, UNDEF);
    s.rowmask.assign(static_cast<std::size_t>(m), 0);
    s.colmask.assign(static_cast<std::size_t>(m), 0);
    std::vector<std::array<int, 3>> queue;
    bool seeded = true;
    for (const Cell& c : d.cells)
      if (!(seeded = SgSearch::sg_set(s, elt_of[c.a], elt_of[c.b], elt_of[c.value], queue))) break;
    if (!seeded || !SgSearch::sg_propagate(s, queue)) continue;
    SgSearch search{m, {}};
    search.dfs(std::move(s));
    std::vector<Semigroup> reps;
    for (Semigroup& g : search.found) {
      bool dup = false;
      for (const Semigroup& r : reps)
        if (semigroup_base_iso(g, r, k)) { dup = true; break; }
      if (!dup) reps.push_back(std::move(g));
    }
    std::vector<Label> fresh = fresh_labels(d.domain, m - k);
    std::vector<Label> labels = d.domain;
    labels.insert(labels.end(), fresh.begin(), fresh.end());
    for (Semigroup& g : reps) out.push_back({std::move(g), labels});
  }
  return out;
}

namespace {

// Ring completion: backtrack the addition table (abelian group with the
// designated zero), then the multiplication table; orders stay tiny.
struct RingSearch {
  int m, base;
  Elt zero;
  const Diagram* d;
  const std::map<Label, int>* elt_of;
  std::vector<Ring> found;

  void run() {
    TableState add;
    add.m = m;
    add.t.assign(static_cast<std::size_t>(m) * m, UNDEF);
    add.rowmask.assign(static_cast<std::size_t>(m), 0);
    add.colmask.assign(static_cast<std::size_t>(m), 0);
    add.mirror = true;
    std::vector<std::array<int, 3>> queue;
    bool ok = true;
    for (int x = 0; x < m && ok; ++x) ok = add.assign(zero, x, x, queue) && add.assign(x, zero, x, queue);
    for (const Cell& c : d->cells) {
      if (!ok) break;
      if (c.op == CellOp::Add) ok = add.assign(elt_at(c.a), elt_at(c.b), elt_at(c.value), queue);
      if (c.op == CellOp::Neg) ok = ok && add.assign(elt_at(c.a), elt_at(c.value), zero, queue) &&
                                    add.assign(elt_at(c.value), elt_at(c.a), zero, queue);
    }
    if (ok && propagate(add, queue)) dfs_add(std::move(add));
  }

  int elt_at(Label l) const { return elt_of->at(l); }

  void dfs_add(TableState s) {
    int open = -1;
    for (int i = 0; i < m * m; ++i)
      if (s.t[static_cast<std::size_t>(i)] == UNDEF) { open = i; break; }
    if (open < 0) {
      dfs_mul_start(s);
      return;
    }
    int a = open / m, b = open % m;
    for (int c = 0; c < m; ++c) {
      TableState next = s;
      std::vector<std::array<int, 3>> queue;
      if (!next.assign(a, b, c, queue)) continue;
      if (propagate(next, queue)) dfs_add(std::move(next));
    }
  }

  void dfs_mul_start(const TableState& add) {
    std::vector<int> mul(static_cast<std::size_t>(m) * m, UNDEF);
    for (const Cell& c : d->cells)
      if (c.op == CellOp::Mul) {
        int& cell = mul[static_cast<std::size_t>(elt_at(c.a)) * m + elt_at(c.b)];
        if (cell != UNDEF && cell != elt_at(c.value)) return;
        cell = elt_at(c.value);
      }
    dfs_mul(add, mul, 0);
  }

  void dfs_mul(const TableState& add, std::vector<int>& mul, int pos) {
    if (pos == m * m) {
      std::vector<Elt> at(static_cast<std::size_t>(m) * m), mt(static_cast<std::size_t>(m) * m);
      for (int i = 0; i < m * m; ++i) {
        at[static_cast<std::size_t>(i)] = static_cast<Elt>(add.t[static_cast<std::size_t>(i)]);
        mt[static_cast<std::size_t>(i)] = static_cast<Elt>(mul[static_cast<std::size_t>(i)]);
      }
      try {
        found.emplace_back(std::move(at), std::move(mt), m, zero);
      } catch (const Error&) {
      }
      return;
    }
    if (mul[static_cast<std::size_t>(pos)] != UNDEF) {
      if (mul_ok(add, mul, pos)) dfs_mul(add, mul, pos + 1);
      return;
    }
    for (int c = 0; c < m; ++c) {
      mul[static_cast<std::size_t>(pos)] = c;
      if (mul_ok(add, mul, pos)) dfs_mul(add, mul, pos + 1);
      mul[static_cast<std::size_t>(pos)] = UNDEF;
    }
  }

  // Check every associativity/distributivity instance whose cells are all
  // defined and involve the cell at `pos`.
  bool mul_ok(const TableState& add, const std::vector<int>& mul, int pos) {
    auto M = [&](int a, int b) { return mul[static_cast<std::size_t>(a) * m + b]; };
    auto A = [&](int a, int b) { return add.get(a, b); };
    int pa = pos / m, pb = pos % m;
    for (int x = 0; x < m; ++x) {
      // associativity triples touching (pa,pb)
      for (auto [a, b, c] : {std::array<int, 3>{pa, pb, x}, {x, pa, pb}}) {
        int ab = M(a, b);
        if (ab == UNDEF) continue;
        int bc = M(b, c);
        if (bc == UNDEF) continue;
        int l = M(ab, c), r = M(a, bc);
        if (l != UNDEF && r != UNDEF && l != r) return false;
      }
      // z*(pa+pb) and (pa+pb)*z against the sums
      int s = A(pa, pb);
      int xz = M(x, s);
      if (xz != UNDEF) {
        int u = M(x, pa), v = M(x, pb);
        if (u != UNDEF && v != UNDEF && A(u, v) != xz) return false;
      }
      int zx = M(s, x);
      if (zx != UNDEF) {
        int u = M(pa, x), v = M(pb, x);
        if (u != UNDEF && v != UNDEF && A(u, v) != zx) return false;
      }
      // the new cell as a distributivity component: x = b + c patterns
      for (int y = 0; y < m; ++y) {
        if (A(x, y) == pb) {
          int u = M(pa, x), v = M(pa, y), w = M(pa, pb);
          if (u != UNDEF && v != UNDEF && w != UNDEF && A(u, v) != w) return false;
        }
        if (A(x, y) == pa) {
          int u = M(x, pb), v = M(y, pb), w = M(pa, pb);
          if (u != UNDEF && v != UNDEF && w != UNDEF && A(u, v) != w) return false;
        }
      }
    }
    return true;
  }
};

bool ring_base_iso(const Ring& a, const Ring& b, int base) {
  int m = a.order();
  std::vector<int> map(static_cast<std::size_t>(m), UNDEF);
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < base; ++i) {
    map[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(i)] = 1;
  }
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == m) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (map[a.add(static_cast<Elt>(i), static_cast<Elt>(j))] !=
              b.add(static_cast<Elt>(map[static_cast<std::size_t>(i)]), static_cast<Elt>(map[static_cast<std::size_t>(j)])))
            return false;
          if (map[a.mul(static_cast<Elt>(i), static_cast<Elt>(j))] !=
              b.mul(static_cast<Elt>(map[static_cast<std::size_t>(i)]), static_cast<Elt>(map[static_cast<std::size_t>(j)])))
            return false;
        }
      return true;
    }
    if (map[static_cast<std::size_t>(x)] != UNDEF) return rec(x + 1);
    for (int cand = base; cand < m; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      map[static_cast<std::size_t>(x)] = cand;
      used[static_cast<std::size_t>(cand)] = 1;
      if (rec(x + 1)) return true;
      map[static_cast<std::size_t>(x)] = UNDEF;
      used[static_cast<std::size_t>(cand)] = 0;
    }
    return false;
  };
  return rec(base);
}

}  // namespace

std::vector<RingCompletion> complete_ring_within(const Diagram& d, int order_bound) {
  if (d.kind != AlgebraKind::ring) fail(Errc::KindMismatch, "expected a ring diagram");
  ConsistencyReport rep = check_partial_consistency(d);
  if (!rep.ok) fail(Errc::PreconditionFailed, "inconsistent diagram: " + rep.violation);
  int k = static_cast<int>(d.domain.size());
  if (order_bound < std::max(k, 1)) fail(Errc::BoundTooSmall, "order bound below domain size");
  if (order_bound > 6) fail(Errc::BoundExceeded, "ring completion capped at order 6");

  // zero first, then remaining domain labels.
  std::vector<Label> elt_label{*d.zero};
  for (Label l : d.domain)
    if (l != *d.zero) elt_label.push_back(l);
  std::map<Label, int> elt_of;
  for (std::size_t i = 0; i < elt_label.size(); ++i) elt_of[elt_label[i]] = static_cast<int>(i);

  std::vector<RingCompletion> out;
  for (int m = std::max(k, 1); m <= order_bound; ++m) {
    RingSearch search{m, k, 0, &d, &elt_of, {}};
    search.run();
    std::vector<Ring> reps;
    for (Ring& g : search.found) {
      bool dup = false;
      for (const Ring& r : reps)
        if (ring_base_iso(g, r, k)) { dup = true; break; }
      if (!dup) reps.push_back(std::move(g));
    }
    std::vector<Label> fresh = fresh_labels(d.domain, m - k);
    std::vector<Label> labels = elt_label;
    labels.insert(labels.end(), fresh.begin(), fresh.end());
    for (Ring& g : reps) out.push_back({std::move(g), labels});
  }
  return out;
}

}  // namespace amalgam
