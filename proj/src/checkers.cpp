#include "amalgam/checkers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amalgam/report.hpp"

namespace amalgam {

std::vector<GroupWord> enumerate_words(int letters, int max_len) {
  std::vector<GroupWord> out{{}};
  std::vector<int> alphabet;
  for (int i = 1; i <= letters; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<GroupWord> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<GroupWord> next;
    for (const GroupWord& w : layer)
      for (int a : alphabet) {
        GroupWord nw = w;
        nw.push_back(a);
        next.push_back(nw);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<int> word_theory(const FiniteGroup& g, const std::vector<Elt>& tuple,
                             const std::vector<GroupWord>& words) {
  std::vector<Elt> values(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) values[i] = g.eval_word(words[i], tuple);
  std::vector<int> part(words.size());
  std::map<Elt, int> first;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [it, fresh] = first.emplace(values[i], static_cast<int>(i));
    part[i] = it->second;
    (void)fresh;
  }
  return part;
}

namespace {

struct LabeledGroup {
  GroupRef g;
  std::vector<Label> labels;  // element -> label

  std::optional<Elt> element_of(Label l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return static_cast<Elt>(i);
    return std::nullopt;
  }
};

LabeledGroup group_of_total_diagram(const Diagram& d) {
  if (d.kind != AlgebraKind::group) fail(Errc::KindMismatch, "expected a group diagram");
  if (!d.is_total()) fail(Errc::PreconditionFailed, "diagram is not a full table");
  int n = static_cast<int>(d.domain.size());
  std::map<Label, int> idx;
  for (int i = 0; i < n; ++i) idx[d.domain[static_cast<std::size_t>(i)]] = i;
  std::vector<Elt> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[static_cast<std::size_t>(i) * n + j] =
          static_cast<Elt>(idx.at(*d.mul(d.domain[static_cast<std::size_t>(i)], d.domain[static_cast<std::size_t>(j)])));
  FiniteGroup g(std::move(t), n, static_cast<Elt>(idx.at(*d.unit)));
  return {make_group(std::move(g)), d.domain};
}

// Labels for an overgroup: keep `inner` labels on the image of phi, fresh
// naturals elsewhere (skipping every label in `avoid`).
std::vector<Label> overgroup_labels(const LabeledGroup& inner, const Morphism& phi,
                                    const std::vector<Label>& avoid) {
  const FiniteGroup& h = phi.target();
  std::vector<Label> labels(static_cast<std::size_t>(h.order()), 0);
  std::vector<char> set(static_cast<std::size_t>(h.order()), 0);
  std::set<Label> used(avoid.begin(), avoid.end());
  for (int x = 0; x < phi.source().order(); ++x) {
    labels[phi(static_cast<Elt>(x))] = inner.labels[static_cast<std::size_t>(x)];
    set[phi(static_cast<Elt>(x))] = 1;
    used.insert(inner.labels[static_cast<std::size_t>(x)]);
  }
  Label next = 1;
  for (int x = 0; x < h.order(); ++x) {
    if (set[static_cast<std::size_t>(x)]) continue;
    while (used.count(next)) ++next;
    labels[static_cast<std::size_t>(x)] = next;
    used.insert(next);
  }
  return labels;
}

bool has_engine(const VarietySpec& v) {
  return v.abelian || (v.nil_class == 2 && is_odd_prime(v.exponent));
}

// One extension instance of a full-table base inside a pool member.
struct Extension {
  std::size_t pool_index = 0;
  Morphism phi;            // base group -> pool member
  std::vector<Label> labels;
  Diagram diagram;
};

std::vector<Extension> pool_extensions(const LabeledGroup& base, const Catalog& pool, int order_bound) {
  std::vector<Extension> out;
  for (std::size_t pi = 0; pi < pool.groups.size(); ++pi) {
    GroupRef h = pool.groups[pi];
    if (h->order() > order_bound) continue;
    std::set<std::vector<Elt>> images_seen;
    for (Morphism& phi : find_embeddings(base.g, h, 0)) {
      // Embeddings with the same image differ by a relabeling of the
      // fresh part; one representative per image subgroup suffices for
      // the engine, whose success depends only on the image.
      std::vector<Elt> image;
      for (int x = 0; x < base.g->order(); ++x) image.push_back(phi(static_cast<Elt>(x)));
      std::sort(image.begin(), image.end());
      if (!images_seen.insert(image).second) continue;
      std::vector<Label> labels = overgroup_labels(base, phi, base.labels);
      Diagram diag = diagram_of_labeled(*h, labels);
      out.push_back({pi, std::move(phi), std::move(labels), std::move(diag)});
    }
  }
  return out;
}

struct PairOutcome {
  enum Kind { Found, Impossible, DontKnow } kind = DontKnow;
  std::string why;
  std::vector<nlohmann::json> items;
};

// Amalgamate two pool extensions of a common full-table base through the
// variety engine; fixes every base label, which covers both WAP and CAP.
PairOutcome amalgamate_pool_pair(const LabeledGroup& base, const Extension& e1, const Extension& e2,
                                 const VarietySpec& v, const std::string& tag) {
  PairOutcome out;
  try {
    GroupRef g3;
    Morphism j1 = Morphism::identity(base.g), j2 = Morphism::identity(base.g);  // placeholders
    std::string gid1 = tag + ".h1", gid2 = tag + ".h2", gid0 = tag + ".s", gid3 = tag + ".a3";
    if (v.abelian) {
      AbelianAmalgam am = abelian_amalgam(e1.phi, e2.phi);
      g3 = am.a3;
      j1 = am.j1;
      j2 = am.j2;
      out.items.push_back(json_abelian_construct(gid3, am.shape.invariant_factors));
    } else {
      Nil2Amalgam am = nil2_amalgam(e1.phi, e2.phi, e1.phi.target().derived(), e2.phi.target().derived());
      g3 = am.g3;
      j1 = am.j1;
      j2 = am.j2;
      out.items.push_back(json_baer_construct(gid3, am.pres3));
    }
    // Witness diagram and relabeling.
    LabeledGroup lg3{g3, overgroup_labels({e1.phi.target_ref(), e1.labels}, j1, e2.labels)};
    Diagram d3 = diagram_of_labeled(*g3, lg3.labels);
    Relabeling alpha;
    for (int x = 0; x < e2.phi.target().order(); ++x) {
      Label from = e2.labels[static_cast<std::size_t>(x)];
      Label to = lg3.labels[j2(static_cast<Elt>(x))];
      if (from != to) alpha[from] = to;
    }
    for (Label l : base.labels)
      if (alpha.count(l)) fail(Errc::PreconditionFailed, "relabeling moves a fixed label");
    if (!extends(e1.diagram, d3) || !extends(relabel(e2.diagram, alpha), d3))
      fail(Errc::PreconditionFailed, "amalgam fails the extension checks");
    if (!v.satisfied_by(*g3)) fail(Errc::PreconditionFailed, "amalgam leaves the variety");
    out.kind = PairOutcome::Found;
    out.items.push_back(json_group(gid0, *base.g));
    out.items.push_back(json_group(gid1, e1.phi.target()));
    out.items.push_back(json_group(gid2, e2.phi.target()));
    out.items.push_back(json_morphism(tag + ".e1", gid0, gid1, e1.phi.map(), true));
    out.items.push_back(json_morphism(tag + ".e2", gid0, gid2, e2.phi.map(), true));
    out.items.push_back(json_morphism(tag + ".j1", gid1, gid3, j1.map(), true));
    out.items.push_back(json_morphism(tag + ".j2", gid2, gid3, j2.map(), true));
    out.items.push_back(json_square({tag + ".e1", tag + ".j1"}, {tag + ".e2", tag + ".j2"}));
    if (v.abelian) out.items.push_back(json_order_equation(gid0, gid1, gid2, gid3));
    out.items.push_back(json_variety_member(gid3, v.name));
  } catch (const Error& e) {
    out.kind = PairOutcome::DontKnow;
    out.why = e.what();
    out.items.clear();
  }
  return out;
}

std::vector<Label> fresh_labels_avoiding(const std::vector<Label>& avoid, int count) {
  std::set<Label> used(avoid.begin(), avoid.end());
  std::vector<Label> out;
  Label next = 1;
  while (static_cast<int>(out.size()) < count) {
    while (used.count(next)) ++next;
    out.push_back(next);
    used.insert(next);
  }
  return out;
}

// Single-cell extensions of a partial diagram realizable at the bound.
std::vector<Diagram> one_cell_extensions(const Diagram& d, const VarietySpec& v, int order_bound) {
  std::vector<Diagram> out;
  std::vector<Label> fresh = fresh_labels_avoiding(d.domain, 1);
  std::vector<Label> alphabet = d.domain;
  alphabet.push_back(fresh[0]);
  auto realizable = [&](const Diagram& cand) {
    if (!check_partial_consistency(cand).ok) return false;
    try {
      return !complete_within(cand, v, order_bound).empty();
    } catch (const Error&) {
      return false;
    }
  };
  for (CellOp op : {CellOp::Mul, CellOp::Inv}) {
    for (Label a : alphabet) {
      for (Label b : op == CellOp::Mul ? alphabet : std::vector<Label>{0}) {
        if (d.lookup(op, a, op == CellOp::Mul ? b : 0)) continue;
        for (Label val : alphabet) {
          Cell c{op, a, op == CellOp::Mul ? b : 0, val};
          Diagram cand = d;
          bool uses_fresh = a == fresh[0] || (op == CellOp::Mul && b == fresh[0]) || val == fresh[0];
          if (uses_fresh) {
            cand.domain.push_back(fresh[0]);
            std::sort(cand.domain.begin(), cand.domain.end());
          }
          cand.add(c);
          if (realizable(cand)) out.push_back(std::move(cand));
        }
      }
    }
  }
  return out;
}

// Conflict that no relabeling fixing `fixed` can repair: the same cell key
// over fixed operands decided with incompatible values.
std::optional<Cell> decided_conflict(const Diagram& d1, const Diagram& d2, const std::vector<Label>& fixed) {
  auto is_fixed = [&](Label l) { return std::binary_search(fixed.begin(), fixed.end(), l); };
  for (const Cell& c : d2.cells) {
    if (!is_fixed(c.a)) continue;
    if (c.op == CellOp::Mul && !is_fixed(c.b)) continue;
    auto other = d1.lookup(c.op, c.a, c.b);
    if (!other) continue;
    if (*other == c.value) continue;
    // Values differ; a fixed-label value on either side cannot be matched
    // by any injective relabeling that fixes `fixed` pointwise.
    if (is_fixed(c.value) || is_fixed(*other)) return c;
  }
  return std::nullopt;
}

PairOutcome amalgamate_partial_pair(const std::vector<Label>& fixed, const Diagram& d1, const Diagram& d2,
                                    const VarietySpec& v, int order_bound) {
  PairOutcome out;
  if (auto c = decided_conflict(d1, d2, fixed)) {
    out.kind = PairOutcome::Impossible;
    out.why = "cell " + c->str() + " conflicts over the fixed domain";
    nlohmann::json item = {{"type", "conflicting-cell"},
                           {"d1", json_diagram(d1)},
                           {"d2", json_diagram(d2)},
                           {"op", static_cast<int>(c->op)},
                           {"a", c->a},
                           {"b", c->b},
                           {"fixed", fixed}};
    out.items.push_back(item);
    return out;
  }
  // Free labels of d2 may land on free labels of d1 or fresh ones.
  std::vector<Label> free2;
  for (Label l : d2.domain)
    if (!std::binary_search(fixed.begin(), fixed.end(), l)) free2.push_back(l);
  if (free2.size() > 4) {
    out.kind = PairOutcome::DontKnow;
    out.why = "free part too large for the bounded relabeling search";
    return out;
  }
  std::vector<Label> targets;
  for (Label l : d1.domain)
    if (!std::binary_search(fixed.begin(), fixed.end(), l)) targets.push_back(l);
  std::vector<Label> all_avoid = d1.domain;
  all_avoid.insert(all_avoid.end(), d2.domain.begin(), d2.domain.end());
  std::vector<Label> fresh = fresh_labels_avoiding(all_avoid, static_cast<int>(free2.size()));
  targets.insert(targets.end(), fresh.begin(), fresh.end());

  std::vector<int> choice(free2.size(), -1);
  std::vector<char> used(targets.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == free2.size()) {
      Relabeling alpha;
      for (std::size_t i = 0; i < free2.size(); ++i)
        if (free2[i] != targets[static_cast<std::size_t>(choice[i])])
          alpha[free2[i]] = targets[static_cast<std::size_t>(choice[i])];
      Diagram moved = relabel(d2, alpha);
      Diagram whole = d1;
      for (Label l : moved.domain)
        if (!whole.in_domain(l)) whole.domain.insert(std::lower_bound(whole.domain.begin(), whole.domain.end(), l), l);
      for (const Cell& c : moved.cells) whole.add(c);
      if (!check_partial_consistency(whole).ok) return false;
      std::vector<Completion> comps;
      try {
        comps = complete_within(whole, v, order_bound);
      } catch (const Error&) {
        return false;
      }
      if (comps.empty()) return false;
      Diagram d3 = comps.front().full_diagram();
      out.kind = PairOutcome::Found;
      out.items.push_back(json_extends(d1, d3));
      out.items.push_back(json_extends(moved, d3));
      std::string gid = "pp.g3";
      out.items.push_back(json_group(gid, *comps.front().group));
      out.items.push_back(json_variety_member(gid, v.name));
      out.items.push_back(json_satisfies(whole, gid, comps.front().labels));
      return true;
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (used[t]) continue;
      choice[k] = static_cast<int>(t);
      used[t] = 1;
      if (rec(k + 1)) return true;
      used[t] = 0;
    }
    return false;
  };
  if (rec(0)) return out;
  out.kind = PairOutcome::DontKnow;
  out.why = "no amalgam found within the bound";
  return out;
}

}  // namespace

PropertyReport check_jep_at(const VarietySpec& v, const Catalog& pool) {
  PropertyReport r;
  r.property = Property::JEP;
  r.bounds.order_bound = pool.order_bound;
  r.bounds.pool_fingerprint = pool.fingerprint();
  r.inputs["variety"] = v.name;
  for (const GroupRef& g : pool.groups)
    if (!v.satisfied_by(*g)) fail(Errc::PreconditionFailed, "pool member violates the variety");

  std::set<std::string> emitted;
  auto emit_group = [&](const std::string& id, const FiniteGroup& g) {
    if (emitted.insert(id).second) r.replay.push_back(json_group(id, g));
  };
  for (std::size_t i = 0; i < pool.groups.size(); ++i)
    for (std::size_t j = i; j < pool.groups.size(); ++j) {
      GroupRef g1 = pool.groups[i], g2 = pool.groups[j];
      DirectSum sum = direct_sum(g1, g2);
      Diagram d1 = diagram_of(*g1), d2 = diagram_of(*g2);
      // Left copy keeps d1's labels; the right copy is relabeled in.
      EnumeratedApprox e1 = EnumeratedApprox::of_group(g1);
      EnumeratedApprox e2 = EnumeratedApprox::of_group(g2);
      LabeledGroup inner1{g1, e1.labels};
      std::vector<Label> sum_labels = overgroup_labels(inner1, sum.left, e1.labels);
      Diagram d3 = diagram_of_labeled(*sum.sum, sum_labels);
      Relabeling alpha;
      for (int x = 0; x < g2->order(); ++x) {
        Label from = e2.labels[static_cast<std::size_t>(x)];
        Label to = sum_labels[sum.right(static_cast<Elt>(x))];
        if (from != to) alpha[from] = to;
      }
      Diagram moved = relabel(d2, alpha);
      if (!extends(d1, d3) || !extends(moved, d3))
        fail(Errc::PreconditionFailed, "direct sum failed to join the pair");
      if (!v.satisfied_by(*sum.sum)) fail(Errc::PreconditionFailed, "direct sum left the variety");
      std::string id1 = "g" + std::to_string(i), id2 = "g" + std::to_string(j);
      std::string sid = "sum" + std::to_string(i) + "_" + std::to_string(j);
      emit_group(id1, *g1);
      emit_group(id2, *g2);
      r.replay.push_back(json_direct_sum(sid, id1, id2, *sum.sum));
      r.replay.push_back(json_variety_member(sid, v.name));
      r.replay.push_back(json_satisfies(d1, sid, sum_labels));
      std::vector<Label> right_labels(static_cast<std::size_t>(sum.sum->order()), 0);
      // Labeling that places d2's labels on the right copy.
      {
        LabeledGroup inner2{g2, e2.labels};
        right_labels = overgroup_labels(inner2, sum.right, e2.labels);
      }
      r.replay.push_back(json_satisfies(d2, sid, right_labels));
    }
  r.status = CheckStatus::Witnessed;
  r.detail = "every pool pair joins into the diagram of its direct sum";
  return r;
}

PropertyReport check_ap_instance(const Diagram& d0, const Diagram& d1, const Diagram& d2,
                                 const VarietySpec& v, int order_bound) {
  if (!extends(d0, d1) || !extends(d0, d2))
    fail(Errc::PreconditionFailed, "d0 must extend into both d1 and d2");
  PropertyReport r;
  r.property = Property::AP;
  r.bounds.order_bound = order_bound;
  r.inputs["variety"] = v.name;
  r.inputs["d0"] = json_diagram(d0);
  r.inputs["d1"] = json_diagram(d1);
  r.inputs["d2"] = json_diagram(d2);

  auto subsumption = [&](const Diagram& small, const Diagram& big) -> bool {
    if (!extends(small, big)) return false;
    try {
      if (complete_within(big, v, order_bound).empty()) return false;
    } catch (const Error&) {
      return false;
    }
    return true;
  };
  if (subsumption(d2, d1) || subsumption(d1, d2)) {
    const Diagram& d3 = extends(d2, d1) ? d1 : d2;
    r.status = CheckStatus::Witnessed;
    r.detail = "one extension subsumes the other";
    r.replay.push_back(json_extends(d1, d3));
    r.replay.push_back(json_extends(d2, d3));
    return r;
  }
  if (d0.is_total() && d1.is_total() && d2.is_total() && has_engine(v)) {
    try {
      LabeledGroup g0 = group_of_total_diagram(d0);
      LabeledGroup g1 = group_of_total_diagram(d1);
      LabeledGroup g2 = group_of_total_diagram(d2);
      auto embed = [&](const LabeledGroup& inner, const LabeledGroup& outer) {
        std::vector<Elt> map(static_cast<std::size_t>(inner.g->order()));
        for (int x = 0; x < inner.g->order(); ++x)
          map[static_cast<std::size_t>(x)] = *outer.element_of(inner.labels[static_cast<std::size_t>(x)]);
        return Morphism(inner.g, outer.g, std::move(map));
      };
      Morphism e1 = embed(g0, g1), e2 = embed(g0, g2);
      Extension x1{0, e1, g1.labels, d1}, x2{0, e2, g2.labels, d2};
      PairOutcome po = amalgamate_pool_pair(g0, x1, x2, v, "ap");
      if (po.kind == PairOutcome::Found) {
        // Bound gate: the canonical amalgam must fit the order bound.
        long amalgam_order = static_cast<long>(g1.g->order()) * g2.g->order() / g0.g->order();
        if (amalgam_order > order_bound) {
          r.status = CheckStatus::Unknown;
          r.detail = "canonical amalgam has order " + std::to_string(amalgam_order) +
                     ", above the bound " + std::to_string(order_bound);
          return r;
        }
        r.status = CheckStatus::Witnessed;
        r.detail = "amalgamated through the " + std::string(v.abelian ? "abelian" : "nil-2") + " engine";
        for (auto& item : po.items) r.replay.push_back(item);
        return r;
      }
      r.status = CheckStatus::Unknown;
      r.detail = po.why;
      return r;
    } catch (const Error& e) {
      r.status = CheckStatus::Unknown;
      r.detail = e.what();
      return r;
    }
  }
  r.status = CheckStatus::Unknown;
  r.detail = "no amalgamation route for this instance at the bound";
  return r;
}

PropertyReport check_wap_witness(const Diagram& d0, const Diagram& d0p, const VarietySpec& v,
                                 const Catalog& pool, int order_bound, WapMode mode) {
  if (!extends(d0, d0p)) fail(Errc::PreconditionFailed, "d0p must extend d0");
  PropertyReport r;
  r.property = mode == WapMode::WAP ? Property::WAP : Property::CAP;
  r.bounds.order_bound = order_bound;
  r.bounds.pool_fingerprint = pool.fingerprint();
  r.inputs["variety"] = v.name;
  r.inputs["d0"] = json_diagram(d0);
  r.inputs["d0p"] = json_diagram(d0p);
  std::vector<Label> fixed = mode == WapMode::WAP ? d0.domain : d0p.domain;

  if (d0p.is_total() && has_engine(v)) {
    LabeledGroup base = group_of_total_diagram(d0p);
    std::vector<Extension> exts = pool_extensions(base, pool, order_bound);
    r.inputs["extensions"] = exts.size();
    std::size_t pair_no = 0;
    for (std::size_t i = 0; i < exts.size(); ++i)
      for (std::size_t j = i; j < exts.size(); ++j) {
        PairOutcome po =
            amalgamate_pool_pair(base, exts[i], exts[j], v, "p" + std::to_string(pair_no));
        if (po.kind != PairOutcome::Found) {
          r.status = CheckStatus::CounterexampleAtBound;
          r.detail = "extension pair (" + std::to_string(i) + "," + std::to_string(j) +
                     ") did not amalgamate: " + po.why;
          r.replay = nlohmann::json::array();
          for (auto& item : po.items) r.replay.push_back(item);
          return r;
        }
        for (auto& item : po.items) r.replay.push_back(item);
        ++pair_no;
      }
    r.status = CheckStatus::Witnessed;
    r.detail = "all " + std::to_string(pair_no) + " pool extension pairs amalgamate over the base";
    return r;
  }

  // Partial witness candidate: single-cell extensions at the bound.
  std::vector<Diagram> exts = one_cell_extensions(d0p, v, order_bound);
  r.inputs["extensions"] = exts.size();
  for (std::size_t i = 0; i < exts.size(); ++i)
    for (std::size_t j = i; j < exts.size(); ++j) {
      PairOutcome po = amalgamate_partial_pair(fixed, exts[i], exts[j], v, order_bound);
      if (po.kind == PairOutcome::Found) continue;
      r.status = CheckStatus::CounterexampleAtBound;
      r.detail = "single-cell extensions " + std::to_string(i) + " and " + std::to_string(j) +
                 (po.kind == PairOutcome::Impossible ? " cannot amalgamate: " : " found no amalgam: ") + po.why;
      r.replay = nlohmann::json::array();
      for (auto& item : po.items) r.replay.push_back(item);
      return r;
    }
  r.status = CheckStatus::Witnessed;
  r.detail = "all single-cell extension pairs amalgamate at the bound";
  nlohmann::json note = {{"type", "note"},
                         {"text", "witness established by exhaustive single-cell pair amalgamation"}};
  (void)note;
  return r;
}

PropertyReport t_isolation_check(const Diagram& d, const std::vector<Label>& tuple, const VarietySpec& v,
                                 int order_bound, int word_length) {
  for (Label l : tuple)
    if (!d.in_domain(l)) fail(Errc::PreconditionFailed, "tuple label outside the domain");
  PropertyReport r;
  r.property = Property::TIsolation;
  r.bounds.order_bound = order_bound;
  r.bounds.word_length = word_length;
  r.inputs["d"] = json_diagram(d);
  r.inputs["tuple"] = tuple;
  r.inputs["variety"] = v.name;

  std::vector<Completion> comps = complete_within(d, v, order_bound);
  if (comps.empty()) fail(Errc::NoCompletionAtBound, "diagram has no completion at the bound");
  std::vector<GroupWord> words = enumerate_words(static_cast<int>(tuple.size()), word_length);

  auto tuple_elements = [&](const Completion& c) {
    std::vector<Elt> out;
    for (Label l : tuple) {
      EnumeratedApprox e = c.approx();
      out.push_back(*e.element_of(l));
    }
    return out;
  };
  std::vector<std::vector<int>> theories;
  for (const Completion& c : comps) theories.push_back(word_theory(*c.group, tuple_elements(c), words));

  for (std::size_t i = 1; i < theories.size(); ++i) {
    if (theories[i] == theories[0]) continue;
    // Separating word pair: first index where the partitions disagree.
    std::size_t w = 0;
    while (theories[i][w] == theories[0][w]) ++w;
    std::size_t w1 = w, w2 = static_cast<std::size_t>(std::min(theories[i][w], theories[0][w]));
    r.status = CheckStatus::CounterexampleAtBound;
    r.detail = "completions disagree on a word equality over the tuple";
    std::string ga = "comp0", gb = "comp" + std::to_string(i);
    r.replay.push_back(json_group(ga, *comps[0].group));
    r.replay.push_back(json_group(gb, *comps[i].group));
    r.replay.push_back(json_satisfies(d, ga, comps[0].labels));
    r.replay.push_back(json_satisfies(d, gb, comps[i].labels));
    const Completion& sep_in = theories[0][w] == static_cast<int>(w2) ? comps[0] : comps[i];
    const Completion& sep_out = theories[0][w] == static_cast<int>(w2) ? comps[i] : comps[0];
    r.replay.push_back(json_word_separation(
        theories[0][w] == static_cast<int>(w2) ? ga : gb, theories[0][w] == static_cast<int>(w2) ? gb : ga,
        tuple_elements(sep_in), tuple_elements(sep_out), words[w1], words[w2]));
    return r;
  }
  r.status = CheckStatus::Witnessed;
  r.detail = "word theory of the tuple is the same in all " + std::to_string(comps.size()) +
             " completions at the bound";
  std::vector<std::string> ids;
  std::vector<std::vector<Elt>> tuples;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string id = "comp" + std::to_string(i);
    ids.push_back(id);
    tuples.push_back(tuple_elements(comps[i]));
    r.replay.push_back(json_group(id, *comps[i].group));
    r.replay.push_back(json_satisfies(d, id, comps[i].labels));
  }
  r.replay.push_back(json_theories_equal(ids, tuples, word_length));
  return r;
}

PropertyReport wap_via_groups(GroupRef g0, const VarietySpec& v, const Catalog& pool, int order_bound) {
  if (!v.satisfied_by(*g0)) fail(Errc::UnsupportedVariety, "G0 violates the variety laws");
  if (!has_engine(v)) fail(Errc::UnsupportedVariety, "no amalgamation engine for " + v.name);
  PropertyReport r;
  r.property = Property::WAP;
  r.bounds.order_bound = order_bound;
  r.bounds.pool_fingerprint = pool.fingerprint();
  r.inputs["variety"] = v.name;
  r.inputs["g0_order"] = g0->order();

  GroupRef g1 = g0;
  Morphism into_base = Morphism::identity(g0);
  if (!v.abelian) {
    BaseEmbedding be = embed_into_amalg_base(g0);
    g1 = be.base;
    into_base = be.embedding;
  }
  r.inputs["g1_order"] = g1->order();
  r.replay.push_back(json_group("g0", *g0));
  r.replay.push_back(json_group("g1", *g1));
  r.replay.push_back(json_morphism("e", "g0", "g1", into_base.map(), true));

  LabeledGroup base{g1, EnumeratedApprox::of_group(g1).labels};
  std::vector<Extension> exts = pool_extensions(base, pool, order_bound);
  r.inputs["extensions"] = exts.size();
  std::size_t pair_no = 0;
  for (std::size_t i = 0; i < exts.size(); ++i)
    for (std::size_t j = i; j < exts.size(); ++j) {
      PairOutcome po = amalgamate_pool_pair(base, exts[i], exts[j], v, "w" + std::to_string(pair_no));
      if (po.kind != PairOutcome::Found) {
        r.status = CheckStatus::CounterexampleAtBound;
        r.detail = "pool extension pair failed: " + po.why;
        return r;
      }
      for (auto& item : po.items) r.replay.push_back(item);
      ++pair_no;
    }
  r.status = CheckStatus::Witnessed;
  r.detail = "G1 admits amalgamation of all " + std::to_string(pair_no) + " pool extension pairs over G0";
  return r;
}

namespace {

const std::vector<Elt>& gamma_i(const FiniteGroup& g, int i) {
  const auto& chain = g.lower_series();
  std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(i) - 1, chain.size() - 1);
  return chain[idx];
}

std::vector<Elt> image_set(const Morphism& m) {
  std::vector<Elt> out;
  for (int x = 0; x < m.source().order(); ++x) out.push_back(m(static_cast<Elt>(x)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elt> intersect_sorted(const std::vector<Elt>& a, const std::vector<Elt>& b) {
  std::vector<Elt> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PropertyReport gamma_stabilizer_search(GroupRef g0, const VarietySpec& v, const Catalog& pool,
                                       int order_bound) {
  int cls = v.abelian ? 1 : v.nil_class;
  if (cls <= 0) fail(Errc::UnsupportedVariety, "variety has no bounded nilpotency class");
  if (!v.satisfied_by(*g0)) fail(Errc::UnsupportedVariety, "G0 violates the variety laws");
  PropertyReport r;
  r.property = Property::GammaStable;
  r.bounds.order_bound = order_bound;
  r.bounds.pool_fingerprint = pool.fingerprint();
  r.inputs["variety"] = v.name;
  r.inputs["g0_order"] = g0->order();

  // Lemma's induction: grow the current extension maximizing the next
  // lower-series intersection with G0; class 1 keeps G1 = G0.
  GroupRef h = g0;
  Morphism g0_into = Morphism::identity(g0);
  for (int k = 1; k < cls; ++k) {
    GroupRef best = h;
    Morphism best_embed = g0_into;
    std::size_t best_score = intersect_sorted(gamma_i(*h, k + 1), image_set(g0_into)).size();
    for (const GroupRef& c : pool.groups) {
      if (c->order() > order_bound) continue;
      for (const Morphism& phi : find_embeddings(h, c, 0)) {
        Morphism comp = g0_into.then(phi);
        std::size_t score = intersect_sorted(gamma_i(*c, k + 1), image_set(comp)).size();
        if (score > best_score) {
          best_score = score;
          best = c;
          best_embed = comp;
        }
      }
    }
    h = best;
    g0_into = best_embed;
  }
  GroupRef g1 = h;
  r.inputs["g1_order"] = g1->order();
  r.replay.push_back(json_group("g0", *g0));
  r.replay.push_back(json_group("g1", *g1));
  r.replay.push_back(json_morphism("e", "g0", "g1", g0_into.map(), true));

  // Re-verify stability against every pool extension.
  std::vector<Elt> im0 = image_set(g0_into);
  for (std::size_t pi = 0; pi < pool.groups.size(); ++pi) {
    GroupRef c = pool.groups[pi];
    if (c->order() > order_bound) continue;
    for (const Morphism& psi : find_embeddings(g1, c, 0)) {
      for (int i = 1; i <= cls; ++i) {
        std::vector<Elt> lhs = intersect_sorted(gamma_i(*g1, i), im0);
        std::vector<Elt> lhs_mapped;
        for (Elt x : lhs) lhs_mapped.push_back(psi(x));
        std::sort(lhs_mapped.begin(), lhs_mapped.end());
        std::vector<Elt> im0_c;
        for (Elt x : im0) im0_c.push_back(psi(x));
        std::sort(im0_c.begin(), im0_c.end());
        std::vector<Elt> rhs = intersect_sorted(gamma_i(*c, i), im0_c);
        if (lhs_mapped != rhs) {
          r.status = CheckStatus::CounterexampleAtBound;
          r.detail = "pool member " + std::to_string(pi) + " destabilizes the series at depth " +
                     std::to_string(i);
          return r;
        }
      }
    }
  }
  r.status = CheckStatus::Witnessed;
  r.detail = "series intersections with G0 are stable against every pool extension";
  return r;
}

PropertyReport non_wap_pattern_check(const Diagram& dp, const Cell& atom, const VarietySpec& v,
                                     int order_bound) {
  if (!dp.in_domain(atom.a) || (atom.op == CellOp::Mul && !dp.in_domain(atom.b)) || !dp.in_domain(atom.value))
    fail(Errc::PreconditionFailed, "atom must lie over the diagram's domain");
  PropertyReport r;
  r.property = Property::NonWapPattern;
  r.bounds.order_bound = order_bound;
  r.inputs["d"] = json_diagram(dp);
  r.inputs["atom"] = atom.str();
  r.inputs["variety"] = v.name;

  if (dp.lookup(atom.op, atom.a, atom.op == CellOp::Mul ? atom.b : 0)) {
    r.status = CheckStatus::Unknown;
    r.detail = "atom already decided by the diagram";
    return r;
  }
  Diagram dplus = dp;
  dplus.add(atom);
  Label fresh = fresh_labels_avoiding(dp.domain, 1)[0];
  Diagram dminus = dp;
  dminus.domain.insert(std::lower_bound(dminus.domain.begin(), dminus.domain.end(), fresh), fresh);
  dminus.add({atom.op, atom.a, atom.b, fresh});

  auto first_completion = [&](const Diagram& d) -> std::optional<Completion> {
    if (!check_partial_consistency(d).ok) return std::nullopt;
    std::vector<Completion> comps = complete_within(d, v, order_bound);
    if (comps.empty()) return std::nullopt;
    return comps.front();
  };
  std::optional<Completion> plus = first_completion(dplus);
  std::optional<Completion> minus = first_completion(dminus);
  if (!plus || !minus) {
    r.status = CheckStatus::Unknown;
    r.detail = std::string("the ") + (!plus ? "asserted" : "negated") +
               " side has no completion at the bound; the pattern is not exhibited";
    return r;
  }
  r.status = CheckStatus::Witnessed;
  r.detail = "both the atom and its fresh-label negation are realizable; the two extensions "
             "conflict over the base domain";
  r.replay.push_back(json_extends(dp, dplus));
  r.replay.push_back(json_extends(dp, dminus));
  r.replay.push_back(json_group("plus", *plus->group));
  r.replay.push_back(json_group("minus", *minus->group));
  r.replay.push_back(json_variety_member("plus", v.name));
  r.replay.push_back(json_variety_member("minus", v.name));
  r.replay.push_back(json_satisfies(dplus, "plus", plus->labels));
  r.replay.push_back(json_satisfies(dminus, "minus", minus->labels));
  nlohmann::json conflict = {{"type", "conflicting-cell"},
                             {"d1", json_diagram(dplus)},
                             {"d2", json_diagram(dminus)},
                             {"op", static_cast<int>(atom.op)},
                             {"a", atom.a},
                             {"b", atom.b},
                             {"fixed", dp.domain}};
  r.replay.push_back(conflict);
  return r;
}

}  // namespace amalgam
