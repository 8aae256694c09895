#include "amalgam/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace amalgam {

unsigned long AbelianGroup::order() const {
  if (!finite()) fail(Errc::PreconditionFailed, "infinite abelian group has no order");
  unsigned long o = 1;
  for (unsigned long d : invariant_factors) o *= d;
  return o;
}

std::string AbelianGroup::str() const {
  if (invariant_factors.empty() && free_rank == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (unsigned long d : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) os << (first ? "" : " + ") << "Z^" << free_rank;
  return os.str();
}

AbelianGroup abelian_from_relations(int gen_count, const IntMatrix& relations) {
  SmithInvariants inv = cokernel_invariants(relations, gen_count);
  return {inv.factors, inv.free_rank};
}

FiniteGroup abelian_group_of(const std::vector<unsigned long>& factors) {
  unsigned long n = 1;
  for (unsigned long d : factors) n *= d;
  if (n > 40000) fail(Errc::TableCapExceeded, "abelian table too large");
  int k = static_cast<int>(factors.size());
  auto decode = [&](unsigned long x, std::vector<unsigned long>& v) {
    for (int j = 0; j < k; ++j) {
      v[static_cast<std::size_t>(j)] = x % factors[static_cast<std::size_t>(j)];
      x /= factors[static_cast<std::size_t>(j)];
    }
  };
  std::vector<Elt> t(static_cast<std::size_t>(n) * n);
  std::vector<unsigned long> va(static_cast<std::size_t>(k)), vb(static_cast<std::size_t>(k));
  for (unsigned long a = 0; a < n; ++a) {
    decode(a, va);
    for (unsigned long b = 0; b < n; ++b) {
      decode(b, vb);
      unsigned long idx = 0, stride = 1;
      for (int j = 0; j < k; ++j) {
        idx += ((va[static_cast<std::size_t>(j)] + vb[static_cast<std::size_t>(j)]) % factors[static_cast<std::size_t>(j)]) * stride;
        stride *= factors[static_cast<std::size_t>(j)];
      }
      t[a * n + b] = static_cast<Elt>(idx);
    }
  }
  return FiniteGroup(std::move(t), static_cast<int>(n), 0);
}

AbelianCoords abelian_coords(const FiniteGroup& g) {
  if (!g.abelian()) fail(Errc::NotAbelian, "group is not abelian");
  int n = g.order();
  // Present with all elements as generators; x_a + x_b - x_{ab} = 0 plus
  // x_unit = 0.  The SNF transform V carries generators to coordinates.
  std::vector<std::vector<long long>> rows;
  rows.reserve(static_cast<std::size_t>(n) * n + 1);
  {
    std::vector<long long> r(static_cast<std::size_t>(n), 0);
    r[g.unit()] = 1;
    rows.push_back(r);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<long long> r(static_cast<std::size_t>(n), 0);
      r[static_cast<std::size_t>(a)] += 1;
      r[static_cast<std::size_t>(b)] += 1;
      r[g.mul(static_cast<Elt>(a), static_cast<Elt>(b))] -= 1;
      rows.push_back(r);
    }
  auto snf = smith_i64(rows, n);
  std::vector<std::vector<long>> vmat;
  std::vector<long long> diag;
  if (snf) {
    diag = snf->diag;
    vmat.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vmat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long>(snf->v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  } else {
    IntMatrix m(static_cast<int>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = static_cast<long>(rows[i][static_cast<std::size_t>(j)]);
    SmithResult r = smith_normal_form(m);
    for (int i = 0; i < std::min(r.s.rows(), r.s.cols()); ++i) diag.push_back(r.s.at(i, i).get_si());
    vmat.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vmat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long>(r.v.at(i, j).get_si());
  }
  AbelianCoords out;
  std::vector<int> keep;
  for (std::size_t j = 0; j < diag.size(); ++j)
    if (diag[j] >= 2) {
      out.factors.push_back(static_cast<unsigned long>(diag[j]));
      keep.push_back(static_cast<int>(j));
    }
  unsigned long prod = 1;
  for (unsigned long d : out.factors) prod *= d;
  if (prod != static_cast<unsigned long>(n)) fail(Errc::PreconditionFailed, "abelian coordinates inconsistent");
  int k = static_cast<int>(keep.size());
  out.coord.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(k), 0));
  for (int e = 0; e < n; ++e)
    for (int j = 0; j < k; ++j) {
      long d = static_cast<long>(out.factors[static_cast<std::size_t>(j)]);
      long v = vmat[static_cast<std::size_t>(e)][static_cast<std::size_t>(keep[static_cast<std::size_t>(j)])] % d;
      if (v < 0) v += d;
      out.coord[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] = v;
    }
  // The coordinate map must be an isomorphism; find the basis elements.
  out.basis.assign(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < k; ++j) {
    bool hit = false;
    for (int e = 0; e < n && !hit; ++e) {
      bool is_ej = true;
      for (int t = 0; t < k; ++t)
        if (out.coord[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)] != (t == j ? 1 : 0)) { is_ej = false; break; }
      if (is_ej) {
        out.basis[static_cast<std::size_t>(j)] = static_cast<Elt>(e);
        hit = true;
      }
    }
    if (!hit) fail(Errc::PreconditionFailed, "abelian basis element missing");
  }
  return out;
}

CoordAmalgam abelian_pushout_coords(const AbelianCoords& c1, const AbelianCoords& c2,
                                    const std::vector<std::vector<long>>& rel0) {
  int k1 = static_cast<int>(c1.factors.size());
  int k2 = static_cast<int>(c2.factors.size());
  int cols = k1 + k2;
  std::vector<std::vector<long long>> rows;
  for (int j = 0; j < k1; ++j) {
    std::vector<long long> r(static_cast<std::size_t>(cols), 0);
    r[static_cast<std::size_t>(j)] = static_cast<long long>(c1.factors[static_cast<std::size_t>(j)]);
    rows.push_back(r);
  }
  for (int j = 0; j < k2; ++j) {
    std::vector<long long> r(static_cast<std::size_t>(cols), 0);
    r[static_cast<std::size_t>(k1 + j)] = static_cast<long long>(c2.factors[static_cast<std::size_t>(j)]);
    rows.push_back(r);
  }
  for (const auto& r0 : rel0) rows.emplace_back(r0.begin(), r0.end());

  CoordAmalgam out;
  std::vector<long long> diag;
  std::vector<std::vector<long long>> v;
  if (auto snf = smith_i64(rows, cols)) {
    diag = snf->diag;
    v = std::move(snf->v);
  } else {
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = static_cast<long>(rows[i][static_cast<std::size_t>(j)]);
    SmithResult r = smith_normal_form(m);
    for (int i = 0; i < std::min(r.s.rows(), r.s.cols()); ++i) diag.push_back(r.s.at(i, i).get_si());
    v.assign(static_cast<std::size_t>(cols), std::vector<long long>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < cols; ++i)
      for (int j = 0; j < cols; ++j) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r.v.at(i, j).get_si();
  }
  std::vector<int> keep;
  for (std::size_t j = 0; j < diag.size(); ++j)
    if (diag[j] >= 2 || diag[j] == 0) {
      if (diag[j] == 0) fail(Errc::PreconditionFailed, "pushout of finite groups came out infinite");
      out.factors.push_back(static_cast<unsigned long>(diag[j]));
      keep.push_back(static_cast<int>(j));
    }
  for (unsigned long d : out.factors) out.order *= d;
  int k3 = static_cast<int>(keep.size());
  out.gen_img.assign(static_cast<std::size_t>(cols), std::vector<long>(static_cast<std::size_t>(k3), 0));
  for (int g = 0; g < cols; ++g)
    for (int j = 0; j < k3; ++j) {
      long d = static_cast<long>(out.factors[static_cast<std::size_t>(j)]);
      long val = static_cast<long>(v[static_cast<std::size_t>(g)][static_cast<std::size_t>(keep[static_cast<std::size_t>(j)])] % d);
      if (val < 0) val += d;
      out.gen_img[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)] = val;
    }
  return out;
}

namespace {

// Index of a coordinate vector in the mixed-radix encoding of
// abelian_group_of(factors).
Elt coord_index(const std::vector<unsigned long>& factors, const std::vector<long>& c) {
  unsigned long idx = 0, stride = 1;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    unsigned long v = static_cast<unsigned long>(c[j]) % factors[j];
    idx += v * stride;
    stride *= factors[j];
  }
  return static_cast<Elt>(idx);
}

std::vector<long> map_coords(const std::vector<long>& src, const std::vector<std::vector<long>>& gen_img,
                             int offset, const std::vector<unsigned long>& factors3) {
  std::vector<long> out(factors3.size(), 0);
  for (std::size_t t = 0; t < src.size(); ++t) {
    long c = src[t];
    if (!c) continue;
    const std::vector<long>& row = gen_img[static_cast<std::size_t>(offset) + t];
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = (out[j] + c * row[j]) % static_cast<long>(factors3[j]);
  }
  return out;
}

}  // namespace

AbelianAmalgam abelian_amalgam(const Morphism& i1, const Morphism& i2) {
  if (i1.source().table() != i2.source().table())
    fail(Errc::PreconditionFailed, "the two embeddings must share A0");
  if (!i1.injective() || !i2.injective()) fail(Errc::NotInjective, "amalgam needs injective embeddings");
  const FiniteGroup& a0 = i1.source();
  GroupRef a1 = i1.target_ref(), a2 = i2.target_ref();
  if (!a0.abelian() || !a1->abelian() || !a2->abelian()) fail(Errc::NotAbelian, "abelian amalgam on nonabelian input");

  AbelianCoords c1 = abelian_coords(*a1), c2 = abelian_coords(*a2);
  std::vector<std::vector<long>> rel0;
  for (int x = 0; x < a0.order(); ++x) {
    std::vector<long> r;
    const std::vector<long>& u = c1.coord[i1(static_cast<Elt>(x))];
    const std::vector<long>& w = c2.coord[i2(static_cast<Elt>(x))];
    r.insert(r.end(), u.begin(), u.end());
    for (long v : w) r.push_back(-v);
    rel0.push_back(std::move(r));
  }
  CoordAmalgam ca = abelian_pushout_coords(c1, c2, rel0);

  GroupRef a3 = make_group(abelian_group_of(ca.factors));
  int k1 = static_cast<int>(c1.factors.size());
  std::vector<Elt> m1(static_cast<std::size_t>(a1->order())), m2(static_cast<std::size_t>(a2->order()));
  for (int x = 0; x < a1->order(); ++x)
    m1[static_cast<std::size_t>(x)] =
        coord_index(ca.factors, map_coords(c1.coord[static_cast<std::size_t>(x)], ca.gen_img, 0, ca.factors));
  for (int x = 0; x < a2->order(); ++x)
    m2[static_cast<std::size_t>(x)] =
        coord_index(ca.factors, map_coords(c2.coord[static_cast<std::size_t>(x)], ca.gen_img, k1, ca.factors));
  Morphism j1(a1, a3, std::move(m1)), j2(a2, a3, std::move(m2));
  if (!j1.injective() || !j2.injective()) fail(Errc::PreconditionFailed, "pushout legs failed injectivity");
  for (int x = 0; x < a0.order(); ++x)
    if (j1(i1(static_cast<Elt>(x))) != j2(i2(static_cast<Elt>(x))))
      fail(Errc::PreconditionFailed, "pushout square does not commute");
  if (static_cast<unsigned long>(a3->order()) * a0.order() !=
      static_cast<unsigned long>(a1->order()) * a2->order())
    fail(Errc::PreconditionFailed, "pushout order equation violated");
  AbelianGroup shape{ca.factors, 0};
  return {a3, std::move(j1), std::move(j2), shape};
}

std::vector<std::vector<unsigned long>> invariant_factor_chains(unsigned long order) {
  std::vector<std::vector<unsigned long>> out;
  std::vector<unsigned long> cur;
  std::function<void(unsigned long, unsigned long)> rec = [&](unsigned long rem, unsigned long prev) {
    if (rem == 1) {
      out.push_back(cur);
      return;
    }
    for (unsigned long d = std::max(prev, 2ul); d <= rem; ++d) {
      if (rem % d != 0 || d % prev != 0) continue;
      cur.push_back(d);
      rec(rem / d, d);
      cur.pop_back();
    }
  };
  rec(order, 1);
  return out;
}

namespace {

struct LabelAssign {
  const Diagram* d;
  const FiniteGroup* f;
  std::vector<Label> dom_order;       // unit first
  std::vector<int> assign;            // label idx -> element, -1 open
  std::vector<char> used;

  bool consistent_so_far(int upto) const {
    auto elt = [&](Label l) -> int {
      for (std::size_t i = 0; i < dom_order.size(); ++i)
        if (dom_order[i] == l) return assign[i];
      return -1;
    };
    (void)upto;
    for (const Cell& c : d->cells) {
      int a = elt(c.a), v = elt(c.value);
      if (c.op == CellOp::Mul) {
        int b = elt(c.b);
        if (a < 0 || b < 0 || v < 0) continue;
        if (f->mul(static_cast<Elt>(a), static_cast<Elt>(b)) != v) return false;
      } else if (c.op == CellOp::Inv) {
        if (a < 0 || v < 0) continue;
        if (f->inv(static_cast<Elt>(a)) != v) return false;
      }
    }
    return true;
  }

  bool search(std::size_t k, std::vector<Elt>& out) {
    if (k == dom_order.size()) {
      std::vector<Elt> gens;
      for (int e : assign) gens.push_back(static_cast<Elt>(e));
      if (f->subgroup_generated(gens).size() != static_cast<std::size_t>(f->order())) return false;
      out.assign(assign.begin(), assign.end());
      return true;
    }
    for (int e = 0; e < f->order(); ++e) {
      if (used[static_cast<std::size_t>(e)]) continue;
      assign[k] = e;
      used[static_cast<std::size_t>(e)] = 1;
      if (consistent_so_far(static_cast<int>(k)) && search(k + 1, out)) return true;
      assign[k] = -1;
      used[static_cast<std::size_t>(e)] = 0;
    }
    return false;
  }
};

}  // namespace

Diagram abelian_t_isolating_extension(const Diagram& d) {
  if (d.kind != AlgebraKind::group) fail(Errc::KindMismatch, "abelian extension wants a group diagram");
  ConsistencyReport rep = check_partial_consistency(d);
  if (!rep.ok) fail(Errc::PreconditionFailed, "inconsistent diagram: " + rep.violation);

  // Present <domain | cells> as an abelian group; certify that distinct
  // labels stay distinct in some finite quotient (residual finiteness) or
  // produce the collapsing pair.
  std::vector<Label> gens_labels;
  for (Label l : d.domain)
    if (l != *d.unit) gens_labels.push_back(l);
  int k = static_cast<int>(gens_labels.size());
  auto gen_idx = [&](Label l) -> int {
    for (int i = 0; i < k; ++i)
      if (gens_labels[static_cast<std::size_t>(i)] == l) return i;
    return -1;  // unit contributes nothing
  };
  std::vector<std::vector<long long>> rows;
  for (const Cell& c : d.cells) {
    std::vector<long long> r(static_cast<std::size_t>(k), 0);
    auto bump = [&](Label l, long long s) {
      int i = gen_idx(l);
      if (i >= 0) r[static_cast<std::size_t>(i)] += s;
    };
    if (c.op == CellOp::Mul) {
      bump(c.a, 1);
      bump(c.b, 1);
      bump(c.value, -1);
    } else if (c.op == CellOp::Inv) {
      bump(c.a, 1);
      bump(c.value, 1);
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) rows.push_back(std::vector<long long>(static_cast<std::size_t>(k), 0));
  IntMatrix m(static_cast<int>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k; ++j) m.at(static_cast<int>(i), j) = static_cast<long>(rows[i][static_cast<std::size_t>(j)]);
  SmithResult snf = smith_normal_form(m);
  // Coordinates of generator g in the cokernel: row g of V; columns with
  // diagonal 1 vanish, diagonal d >= 2 are torsion, beyond the diagonal
  // are free.
  int diag_len = std::min(snf.s.rows(), snf.s.cols());
  std::vector<long> dvec(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < diag_len; ++j) dvec[static_cast<std::size_t>(j)] = static_cast<long>(snf.s.at(j, j).get_si());
  auto coords_of = [&](int g) {  // g == -1 encodes the unit (zero vector)
    std::vector<long> c(static_cast<std::size_t>(k), 0);
    if (g < 0) return c;
    for (int j = 0; j < k; ++j) {
      long v = static_cast<long>(snf.v.at(g, j).get_si());
      long dj = dvec[static_cast<std::size_t>(j)];
      if (dj == 1) v = 0;
      else if (dj > 1) { v %= dj; if (v < 0) v += dj; }
      c[static_cast<std::size_t>(j)] = v;
    }
    return c;
  };
  std::vector<std::vector<long>> label_coords;
  std::vector<Label> all_labels;
  all_labels.push_back(*d.unit);
  label_coords.push_back(coords_of(-1));
  for (int i = 0; i < k; ++i) {
    all_labels.push_back(gens_labels[static_cast<std::size_t>(i)]);
    label_coords.push_back(coords_of(i));
  }
  for (std::size_t i = 0; i < all_labels.size(); ++i)
    for (std::size_t j = i + 1; j < all_labels.size(); ++j)
      if (label_coords[i] == label_coords[j])
        fail(Errc::NoFiniteWitness, "cells force labels " + std::to_string(all_labels[i]) + " and " +
                                        std::to_string(all_labels[j]) + " equal in every abelian completion");

  // Bound on the search: the separating quotient obtained by killing N
  // times the free part.
  unsigned long bound = 1;
  {
    long maxfree = 1;
    for (const auto& c : label_coords)
      for (int j = diag_len; j < k; ++j) maxfree = std::max(maxfree, std::abs(c[static_cast<std::size_t>(j)]));
    for (const auto& c : label_coords)
      for (int j = 0; j < diag_len; ++j)
        if (dvec[static_cast<std::size_t>(j)] == 0) maxfree = std::max(maxfree, std::abs(c[static_cast<std::size_t>(j)]));
    unsigned long ncap = static_cast<unsigned long>(2 * maxfree + 1);
    for (int j = 0; j < diag_len; ++j)
      if (dvec[static_cast<std::size_t>(j)] > 1) bound *= static_cast<unsigned long>(dvec[static_cast<std::size_t>(j)]);
    int free_rank = 0;
    for (int j = 0; j < k; ++j)
      if (j >= diag_len || dvec[static_cast<std::size_t>(j)] == 0) ++free_rank;
    for (int j = 0; j < free_rank; ++j) bound *= ncap;
    bound = std::max(bound, static_cast<unsigned long>(d.domain.size()));
  }

  // Smallest witness wins: order ascending, invariant factors lex,
  // assignments in scan order.
  for (unsigned long order = std::max<unsigned long>(1, d.domain.size()); order <= bound; ++order) {
    for (const auto& chain : invariant_factor_chains(order)) {
      FiniteGroup f = abelian_group_of(chain);
      LabelAssign la;
      la.d = &d;
      la.f = &f;
      la.dom_order.push_back(*d.unit);
      for (Label l : d.domain)
        if (l != *d.unit) la.dom_order.push_back(l);
      la.assign.assign(la.dom_order.size(), -1);
      la.used.assign(static_cast<std::size_t>(f.order()), 0);
      la.assign[0] = f.unit();
      la.used[f.unit()] = 1;
      std::vector<Elt> assignment;
      if (!la.search(1, assignment)) continue;
      // Build the full table with the original labels on assigned elements.
      std::vector<Label> labels(static_cast<std::size_t>(f.order()), 0);
      std::vector<char> taken(static_cast<std::size_t>(f.order()), 0);
      for (std::size_t i = 0; i < la.dom_order.size(); ++i) {
        labels[assignment[i]] = la.dom_order[i];
        taken[assignment[i]] = 1;
      }
      Label next = 1;
      for (int e = 0; e < f.order(); ++e) {
        if (taken[static_cast<std::size_t>(e)]) continue;
        while (d.in_domain(next)) ++next;
        labels[static_cast<std::size_t>(e)] = next++;
      }
      Diagram out = diagram_of_labeled(f, labels);
      out.marked_tuple = d.domain;
      if (!extends(d, out)) fail(Errc::PreconditionFailed, "t-isolating extension failed to extend its input");
      return out;
    }
  }
  fail(Errc::NoFiniteWitness, "no separating finite abelian witness within the certified bound");
}

}  // namespace amalgam
