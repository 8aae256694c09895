#include "amalgam/finite_group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace amalgam {

FiniteGroup::FiniteGroup(std::vector<Elt> table, int order, Elt unit)
    : n_(order), unit_(unit), table_(std::move(table)) {
  if (n_ <= 0 || table_.size() != static_cast<std::size_t>(n_) * n_)
    fail(Errc::MalformedDiagram, "table size does not match order");
  if (unit_ >= n_) fail(Errc::NoUnit, "unit index out of range");
  validate();
  compute_caches();
}

FiniteGroup FiniteGroup::from_rows(const std::vector<std::vector<int>>& rows, int unit) {
  int n = static_cast<int>(rows.size());
  std::vector<Elt> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      fail(Errc::MalformedDiagram, "ragged table row");
    for (int j = 0; j < n; ++j) {
      int v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0 || v >= n) fail(Errc::MalformedDiagram, "table entry out of range");
      t[static_cast<std::size_t>(i) * n + j] = static_cast<Elt>(v);
    }
  }
  return FiniteGroup(std::move(t), n, static_cast<Elt>(unit));
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<Elt> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i) * n + j] = static_cast<Elt>((i + j) % n);
  return FiniteGroup(std::move(t), n, 0);
}

FiniteGroup FiniteGroup::dihedral(int n) {
  // Elements r^i s^j encoded as i + n*j.
  int m = 2 * n;
  auto enc = [&](int i, int j) { return static_cast<Elt>(i + n * j); };
  std::vector<Elt> t(static_cast<std::size_t>(m) * m);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
          int i = j1 ? (i1 - i2 % n + n) % n : (i1 + i2) % n;
          int j = (j1 + j2) % 2;
          t[static_cast<std::size_t>(enc(i1, j1)) * m + enc(i2, j2)] = enc(i, j);
        }
  return FiniteGroup(std::move(t), m, 0);
}

FiniteGroup FiniteGroup::symmetric3() { return dihedral(3); }

FiniteGroup FiniteGroup::dicyclic(int n) {
  // <a,b | a^(2n)=1, b^2=a^n, b^-1 a b = a^-1>, elements a^i b^j.
  int m = 4 * n, two_n = 2 * n;
  auto enc = [&](int i, int j) { return static_cast<Elt>(i + two_n * j); };
  std::vector<Elt> t(static_cast<std::size_t>(m) * m);
  for (int i1 = 0; i1 < two_n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < two_n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i, j;
          if (j1 == 0) { i = (i1 + i2) % two_n; j = j2; }
          else if (j2 == 0) { i = ((i1 - i2) % two_n + two_n) % two_n; j = 1; }
          else { i = ((i1 - i2 + n) % two_n + two_n) % two_n; j = 0; }
          t[static_cast<std::size_t>(enc(i1, j1)) * m + enc(i2, j2)] = enc(i, j);
        }
  return FiniteGroup(std::move(t), m, 0);
}

FiniteGroup FiniteGroup::quaternion8() { return dicyclic(2); }

FiniteGroup FiniteGroup::alternating4() {
  // Even permutations of 4 points in lexicographic order, composed left
  // to right (apply a, then b).
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int invs = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++invs;
    if (invs % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int m = static_cast<int>(perms.size());
  std::vector<Elt> t(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::array<int, 4> c;
      for (int x = 0; x < 4; ++x)
        c[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)])];
      int idx = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      t[static_cast<std::size_t>(a) * m + b] = static_cast<Elt>(idx);
    }
  return FiniteGroup(std::move(t), m, 0);
}

Elt FiniteGroup::pow(Elt a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  Elt r = unit_, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

void FiniteGroup::validate() const {
  // Latin square.
  std::vector<char> seen(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n_; ++j) {
      Elt v = mul(static_cast<Elt>(i), static_cast<Elt>(j));
      if (v >= n_) fail(Errc::MalformedDiagram, "entry out of range");
      if (seen[v]) fail(Errc::NotLatin, "row " + std::to_string(i) + " repeats value " + std::to_string(v));
      seen[v] = 1;
    }
  }
  for (int j = 0; j < n_; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < n_; ++i) {
      Elt v = mul(static_cast<Elt>(i), static_cast<Elt>(j));
      if (seen[v]) fail(Errc::NotLatin, "column " + std::to_string(j) + " repeats value " + std::to_string(v));
      seen[v] = 1;
    }
  }
  // Unit.
  for (int i = 0; i < n_; ++i) {
    if (mul(unit_, static_cast<Elt>(i)) != i || mul(static_cast<Elt>(i), unit_) != i)
      fail(Errc::NoUnit, "designated unit fails at " + std::to_string(i));
  }
  // Two-sided inverses (existence; uniqueness is Latin).
  for (int i = 0; i < n_; ++i) {
    int b = -1;
    for (int j = 0; j < n_; ++j)
      if (mul(static_cast<Elt>(i), static_cast<Elt>(j)) == unit_) { b = j; break; }
    if (b < 0 || mul(static_cast<Elt>(b), static_cast<Elt>(i)) != unit_)
      fail(Errc::NoInverse, "no two-sided inverse for " + std::to_string(i));
  }
  // Light's associativity test over a generating set.
  std::vector<char> in(static_cast<std::size_t>(n_), 0);
  in[unit_] = 1;
  std::vector<Elt> members{unit_};
  std::vector<Elt> gens;
  for (int cand = 0; cand < n_; ++cand) {
    if (in[static_cast<std::size_t>(cand)]) continue;
    gens.push_back(static_cast<Elt>(cand));
    std::vector<Elt> queue{static_cast<Elt>(cand)};
    in[static_cast<std::size_t>(cand)] = 1;
    members.push_back(static_cast<Elt>(cand));
    while (!queue.empty()) {
      Elt x = queue.back();
      queue.pop_back();
      std::size_t before = members.size();
      for (std::size_t idx = 0; idx < before; ++idx) {
        Elt y = members[idx];
        for (Elt z : {mul(x, y), mul(y, x)}) {
          if (!in[z]) {
            in[z] = 1;
            members.push_back(z);
            queue.push_back(z);
          }
        }
      }
    }
  }
  for (Elt g : gens)
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        Elt left = mul(mul(static_cast<Elt>(a), g), static_cast<Elt>(b));
        Elt right = mul(static_cast<Elt>(a), mul(g, static_cast<Elt>(b)));
        if (left != right)
          fail(Errc::NotAssociative,
               "(" + std::to_string(a) + "*" + std::to_string(g) + ")*" + std::to_string(b) + " != " +
                   std::to_string(a) + "*(" + std::to_string(g) + "*" + std::to_string(b) + ")");
      }
}

namespace {

std::vector<Elt> closure(const FiniteGroup& g, std::vector<Elt> seed) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<Elt> members;
  auto push = [&](Elt x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  push(g.unit());
  for (Elt s : seed) {
    if (s >= g.order()) fail(Errc::PreconditionFailed, "element out of range");
    push(s);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    push(g.inv(members[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      push(g.mul(members[i], members[j]));
      push(g.mul(members[j], members[i]));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

// Subgroup generated by `seed`, then closed under conjugation by the
// whole group (normal closure).
std::vector<Elt> normal_closure(const FiniteGroup& g, const std::vector<Elt>& seed) {
  std::vector<Elt> cur = closure(g, seed);
  for (;;) {
    std::vector<Elt> extra;
    for (Elt h : cur)
      for (Elt x : g.generators()) {
        Elt c = g.conj(h, x);
        if (!std::binary_search(cur.begin(), cur.end(), c)) extra.push_back(c);
      }
    if (extra.empty()) return cur;
    extra.insert(extra.end(), cur.begin(), cur.end());
    cur = closure(g, extra);
  }
}

}  // namespace

void FiniteGroup::compute_caches() {
  inverse_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (mul(static_cast<Elt>(i), static_cast<Elt>(j)) == unit_) {
        inverse_[static_cast<std::size_t>(i)] = static_cast<Elt>(j);
        break;
      }
  orders_.resize(static_cast<std::size_t>(n_));
  exponent_ = 1;
  for (int i = 0; i < n_; ++i) {
    int k = 1;
    Elt x = static_cast<Elt>(i);
    while (x != unit_) {
      x = mul(x, static_cast<Elt>(i));
      ++k;
    }
    orders_[static_cast<std::size_t>(i)] = k;
    exponent_ = std::lcm(exponent_, static_cast<unsigned long>(k));
  }
  abelian_ = true;
  for (int i = 0; i < n_ && abelian_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (mul(static_cast<Elt>(i), static_cast<Elt>(j)) != mul(static_cast<Elt>(j), static_cast<Elt>(i))) {
        abelian_ = false;
        break;
      }
  // Greedy canonical generating sequence.
  {
    std::vector<char> in(static_cast<std::size_t>(n_), 0);
    in[unit_] = 1;
    int covered = 1;
    while (covered < n_) {
      for (int cand = 0; cand < n_; ++cand) {
        if (in[static_cast<std::size_t>(cand)]) continue;
        generators_.push_back(static_cast<Elt>(cand));
        break;
      }
      std::vector<Elt> cl = closure(*this, generators_);
      std::fill(in.begin(), in.end(), 0);
      for (Elt x : cl) in[x] = 1;
      covered = static_cast<int>(cl.size());
    }
    if (generators_.empty()) generators_.push_back(unit_);
  }
  // Center.
  for (int x = 0; x < n_; ++x) {
    bool central = true;
    for (Elt g : generators_)
      if (mul(static_cast<Elt>(x), g) != mul(g, static_cast<Elt>(x))) {
        central = false;
        break;
      }
    if (central) center_.push_back(static_cast<Elt>(x));
  }
  // Lower central series until stabilization.
  {
    std::vector<Elt> whole(static_cast<std::size_t>(n_));
    std::iota(whole.begin(), whole.end(), 0);
    lower_.push_back(whole);
    for (;;) {
      const std::vector<Elt>& prev = lower_.back();
      std::vector<Elt> comms;
      for (Elt h : prev)
        for (Elt g : generators_) comms.push_back(comm(h, g));
      std::vector<Elt> next = normal_closure(*this, comms);
      if (next == prev) break;
      lower_.push_back(next);
      if (next.size() == 1) break;
    }
    if (lower_.back().size() == 1)
      nil_class_ = static_cast<int>(lower_.size()) - 1;
    else
      nil_class_ = std::nullopt;
  }
  // Upper central series until stabilization.
  {
    upper_.push_back({unit_});
    for (;;) {
      const std::vector<Elt>& prev = upper_.back();
      std::vector<Elt> next;
      for (int x = 0; x < n_; ++x) {
        bool ok = true;
        for (Elt g : generators_)
          if (!std::binary_search(prev.begin(), prev.end(), comm(static_cast<Elt>(x), g))) {
            ok = false;
            break;
          }
        if (ok) next.push_back(static_cast<Elt>(x));
      }
      if (next == prev) break;
      upper_.push_back(next);
      if (static_cast<int>(next.size()) == n_) break;
    }
  }
  // Isomorphism-invariant bucket key.
  {
    std::map<int, int> profile;
    for (int o : orders_) ++profile[o];
    std::ostringstream os;
    os << "n" << n_ << ";e" << exponent_ << ";z" << center_.size() << ";d" << derived().size() << ";c";
    if (nil_class_) os << *nil_class_;
    else os << "-";
    os << ";o";
    for (auto& [o, c] : profile) os << o << ":" << c << ",";
    key_ = os.str();
  }
}

const std::vector<Elt>& FiniteGroup::derived() const {
  // Gamma_2 when the series has length >= 2; trivial group otherwise.
  static const std::vector<Elt> unit_only{0};
  if (lower_.size() >= 2) return lower_[1];
  return unit_only;
}

std::vector<Elt> FiniteGroup::subgroup_generated(std::vector<Elt> seed) const {
  return closure(*this, std::move(seed));
}

bool FiniteGroup::is_subgroup(const std::vector<Elt>& s) const {
  if (s.empty() || !std::binary_search(s.begin(), s.end(), unit_)) return false;
  for (Elt a : s) {
    if (!std::binary_search(s.begin(), s.end(), inv(a))) return false;
    for (Elt b : s)
      if (!std::binary_search(s.begin(), s.end(), mul(a, b))) return false;
  }
  return true;
}

bool FiniteGroup::is_normal(const std::vector<Elt>& s) const {
  for (Elt a : s)
    for (Elt g : generators_)
      if (!std::binary_search(s.begin(), s.end(), conj(a, g))) return false;
  return true;
}

Elt FiniteGroup::eval_word(const GroupWord& w, const std::vector<Elt>& assignment) const {
  Elt r = unit_;
  for (int v : w) {
    int idx = v > 0 ? v - 1 : -v - 1;
    if (idx >= static_cast<int>(assignment.size())) fail(Errc::PreconditionFailed, "word variable unassigned");
    Elt x = assignment[static_cast<std::size_t>(idx)];
    r = mul(r, v > 0 ? x : inv(x));
  }
  return r;
}

FiniteGroup FiniteGroup::renumbered(const std::vector<Elt>& perm) const {
  std::vector<Elt> t(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      t[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]) * n_ + perm[static_cast<std::size_t>(j)]] =
          perm[mul(static_cast<Elt>(i), static_cast<Elt>(j))];
  return FiniteGroup(std::move(t), n_, perm[unit_]);
}

std::string FiniteGroup::table_str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) os << mul(static_cast<Elt>(i), static_cast<Elt>(j)) << (j + 1 == n_ ? "" : " ");
    os << "\n";
  }
  return os.str();
}

Morphism::Morphism(GroupRef source, GroupRef target, std::vector<Elt> map)
    : src_(std::move(source)), dst_(std::move(target)), map_(std::move(map)) {
  const FiniteGroup& g = *src_;
  const FiniteGroup& h = *dst_;
  if (map_.size() != static_cast<std::size_t>(g.order())) fail(Errc::PreconditionFailed, "map size mismatch");
  for (Elt v : map_)
    if (v >= h.order()) fail(Errc::PreconditionFailed, "map value out of range");
  if (map_[g.unit()] != h.unit()) fail(Errc::PreconditionFailed, "unit not preserved");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (map_[g.mul(static_cast<Elt>(a), static_cast<Elt>(b))] != h.mul(map_[static_cast<std::size_t>(a)], map_[static_cast<std::size_t>(b)]))
        fail(Errc::PreconditionFailed,
             "not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  std::vector<char> hit(static_cast<std::size_t>(h.order()), 0);
  injective_ = true;
  for (Elt v : map_) {
    if (hit[v]) injective_ = false;
    hit[v] = 1;
  }
  surjective_ = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

Morphism Morphism::identity(GroupRef g) {
  std::vector<Elt> m(static_cast<std::size_t>(g->order()));
  std::iota(m.begin(), m.end(), 0);
  return Morphism(g, g, std::move(m));
}

Morphism Morphism::then(const Morphism& next) const {
  std::vector<Elt> m(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) m[i] = next.map_[map_[i]];
  return Morphism(src_, next.dst_, std::move(m));
}

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows, int unit) {
  return FiniteGroup::from_rows(rows, unit);
}

std::vector<Elt> subgroup_generated(const FiniteGroup& g, const std::vector<Elt>& seed) {
  return g.subgroup_generated(seed);
}

StructureReport structure_report(const FiniteGroup& g) {
  return {g.center(), g.derived(), g.lower_series(), g.upper_series(), g.exponent(), g.nilpotency_class()};
}

DirectSum direct_sum(GroupRef g, GroupRef h) {
  int n = g->order(), m = h->order();
  int nm = n * m;
  std::vector<Elt> t(static_cast<std::size_t>(nm) * nm);
  auto enc = [&](int a, int b) { return static_cast<Elt>(a * m + b); };
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < m; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < m; ++b2)
          t[static_cast<std::size_t>(enc(a1, b1)) * nm + enc(a2, b2)] =
              enc(g->mul(static_cast<Elt>(a1), static_cast<Elt>(a2)), h->mul(static_cast<Elt>(b1), static_cast<Elt>(b2)));
  GroupRef sum = make_group(FiniteGroup(std::move(t), nm, enc(g->unit(), h->unit())));
  std::vector<Elt> li(static_cast<std::size_t>(n)), ri(static_cast<std::size_t>(m));
  for (int a = 0; a < n; ++a) li[static_cast<std::size_t>(a)] = enc(a, h->unit());
  for (int b = 0; b < m; ++b) ri[static_cast<std::size_t>(b)] = enc(g->unit(), b);
  return {sum, Morphism(g, sum, std::move(li)), Morphism(h, sum, std::move(ri))};
}

Quotient quotient(GroupRef g, const std::vector<Elt>& nsub) {
  std::vector<Elt> n = nsub;
  std::sort(n.begin(), n.end());
  if (!g->is_subgroup(n)) fail(Errc::NotSubgroup, "not a subgroup");
  if (!g->is_normal(n)) fail(Errc::NotNormal, "subgroup is not normal");
  int ord = g->order();
  // Coset of x keyed by the minimal element of xN.
  std::vector<Elt> coset_min(static_cast<std::size_t>(ord));
  for (int x = 0; x < ord; ++x) {
    Elt mn = static_cast<Elt>(ord);
    for (Elt h : n) mn = std::min(mn, g->mul(static_cast<Elt>(x), h));
    coset_min[static_cast<std::size_t>(x)] = mn;
  }
  std::vector<Elt> reps;
  for (int x = 0; x < ord; ++x)
    if (coset_min[static_cast<std::size_t>(x)] == x) reps.push_back(static_cast<Elt>(x));
  std::vector<Elt> rep_index(static_cast<std::size_t>(ord));
  for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<Elt>(i);
  int q = static_cast<int>(reps.size());
  std::vector<Elt> t(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      t[static_cast<std::size_t>(i) * q + j] = rep_index[coset_min[g->mul(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)])]];
  GroupRef qg = make_group(FiniteGroup(std::move(t), q, rep_index[coset_min[g->unit()]]));
  std::vector<Elt> proj(static_cast<std::size_t>(ord));
  for (int x = 0; x < ord; ++x) proj[static_cast<std::size_t>(x)] = rep_index[coset_min[static_cast<std::size_t>(x)]];
  return {qg, Morphism(g, qg, std::move(proj))};
}

namespace {

struct EmbedSearch {
  const FiniteGroup& g;
  const FiniteGroup& h;
  GroupRef gref, href;
  std::size_t limit;
  std::vector<Morphism> found;

  // Elements of the closure of the first k generators, with derivations.
  bool extend(std::vector<Elt>& img, std::size_t k) {
    if (limit && found.size() >= limit) return true;
    const std::vector<Elt>& gens = g.generators();
    if (k == gens.size()) {
      // Images of all generators chosen; derive the full map by closure.
      std::vector<Elt> map(static_cast<std::size_t>(g.order()), static_cast<Elt>(h.order()));
      map[g.unit()] = h.unit();
      std::vector<Elt> frontier{g.unit()};
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (map[gens[i]] != h.order() && map[gens[i]] != img[i]) return false;
        map[gens[i]] = img[i];
        frontier.push_back(gens[i]);
      }
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (std::size_t j = 0; j < frontier.size(); ++j) {
          Elt x = frontier[i], y = frontier[j];
          Elt p = g.mul(x, y);
          Elt v = h.mul(map[x], map[y]);
          if (map[p] == h.order()) {
            map[p] = v;
            frontier.push_back(p);
          } else if (map[p] != v) {
            return false;
          }
        }
      // Injectivity then full verification through the constructor.
      std::vector<char> hit(static_cast<std::size_t>(h.order()), 0);
      for (Elt v : map) {
        if (v == h.order()) return false;  // gens did not generate (cannot happen)
        if (hit[v]) return false;
        hit[v] = 1;
      }
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
          if (map[g.mul(static_cast<Elt>(a), static_cast<Elt>(b))] !=
              h.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
            return false;
      found.emplace_back(gref, href, map);
      return limit && found.size() >= limit;
    }
    Elt gen = gens[k];
    int want = g.element_order(gen);
    for (int cand = 0; cand < h.order(); ++cand) {
      if (h.element_order(static_cast<Elt>(cand)) != want) continue;
      img.push_back(static_cast<Elt>(cand));
      // Quick partial consistency: products of chosen generator images
      // must respect orders of the corresponding products in g.
      bool ok = true;
      for (std::size_t i = 0; i + 1 <= k && ok; ++i) {
        Elt pg = g.mul(gens[i], gen);
        Elt ph = h.mul(img[i], static_cast<Elt>(cand));
        if (h.element_order(ph) != g.element_order(pg)) ok = false;
      }
      if (ok && extend(img, k + 1)) {
        img.pop_back();
        return true;
      }
      img.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<Morphism> find_embeddings(GroupRef g, GroupRef h, std::size_t limit) {
  if (h->order() % g->order() != 0) return {};  // Lagrange
  EmbedSearch s{*g, *h, g, h, limit, {}};
  std::vector<Elt> img;
  s.extend(img, 0);
  return std::move(s.found);
}

bool isomorphic(GroupRef g, GroupRef h) {
  if (g->order() != h->order()) return false;
  if (g->canonical_key() != h->canonical_key()) return false;
  return !find_embeddings(g, h, 1).empty();
}

std::vector<std::vector<Elt>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Elt>> out;
  std::vector<std::vector<Elt>> frontier{{g.unit()}};
  out.insert({g.unit()});
  while (!frontier.empty()) {
    std::vector<std::vector<Elt>> next;
    for (const auto& s : frontier)
      for (int x = 0; x < g.order(); ++x) {
        if (std::binary_search(s.begin(), s.end(), static_cast<Elt>(x))) continue;
        std::vector<Elt> seed = s;
        seed.push_back(static_cast<Elt>(x));
        std::vector<Elt> bigger = g.subgroup_generated(seed);
        if (out.insert(bigger).second) next.push_back(bigger);
      }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

SubgroupView subgroup_view(GroupRef g, const std::vector<Elt>& elts) {
  std::vector<Elt> s = elts;
  std::sort(s.begin(), s.end());
  if (!g->is_subgroup(s)) fail(Errc::NotSubgroup, "not a subgroup");
  int k = static_cast<int>(s.size());
  std::vector<Elt> index(static_cast<std::size_t>(g->order()));
  for (int i = 0; i < k; ++i) index[s[static_cast<std::size_t>(i)]] = static_cast<Elt>(i);
  std::vector<Elt> t(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t[static_cast<std::size_t>(i) * k + j] = index[g->mul(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)])];
  GroupRef sub = make_group(FiniteGroup(std::move(t), k, index[g->unit()]));
  return {sub, Morphism(sub, g, s)};
}

}  // namespace amalgam
