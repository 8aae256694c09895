#include "amalgam/report.hpp"

#include <algorithm>
#include <map>

namespace amalgam {

const char* property_name(Property p) {
  switch (p) {
    case Property::JEP: return "JEP";
    case Property::AP: return "AP";
    case Property::CAP: return "CAP";
    case Property::WAP: return "WAP";
    case Property::TIsolation: return "TIsolation";
    case Property::GammaStable: return "GammaStable";
    case Property::NonWapPattern: return "NonWapPattern";
  }
  return "?";
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Witnessed: return "Witnessed";
    case CheckStatus::CounterexampleAtBound: return "CounterexampleAtBound";
    case CheckStatus::Unknown: return "Unknown";
  }
  return "?";
}

int PropertyReport::exit_code() const {
  switch (status) {
    case CheckStatus::Witnessed: return 0;
    case CheckStatus::CounterexampleAtBound: return 2;
    case CheckStatus::Unknown: return 3;
  }
  return 1;
}

nlohmann::json report_to_json(const PropertyReport& r) {
  nlohmann::json j;
  j["tool"] = "amalgam";
  j["property"] = property_name(r.property);
  j["status"] = status_name(r.status);
  j["detail"] = r.detail;
  j["bounds"] = {{"order_bound", r.bounds.order_bound},
                 {"word_length", r.bounds.word_length},
                 {"pool_fingerprint", r.bounds.pool_fingerprint}};
  j["inputs"] = r.inputs;
  j["replay"] = r.replay;
  return j;
}

std::string report_to_text(const PropertyReport& r) {
  std::string s;
  s += std::string(property_name(r.property)) + ": " + status_name(r.status) + "\n";
  if (!r.detail.empty()) s += "detail: " + r.detail + "\n";
  s += "order_bound: " + std::to_string(r.bounds.order_bound) + "\n";
  if (r.bounds.word_length) s += "word_length: " + std::to_string(r.bounds.word_length) + "\n";
  if (!r.bounds.pool_fingerprint.empty()) s += "pool: " + r.bounds.pool_fingerprint + "\n";
  s += "replay_items: " + std::to_string(r.replay.size()) + "\n";
  return s;
}

nlohmann::json json_group(const std::string& id, const FiniteGroup& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < g.order(); ++j) row.push_back(g.mul(static_cast<Elt>(i), static_cast<Elt>(j)));
    rows.push_back(row);
  }
  return {{"type", "group"}, {"id", id}, {"order", g.order()}, {"unit", g.unit()}, {"table", rows}};
}

nlohmann::json json_group_table_or_hash(const std::string& id, const FiniteGroup& g, int full_cap) {
  if (g.order() <= full_cap) return json_group(id, g);
  return {{"type", "group-hash"}, {"id", id}, {"order", g.order()}, {"unit", g.unit()},
          {"fnv", hex64(fnv1a(g.table_str()))}};
}

nlohmann::json json_direct_sum(const std::string& id, const std::string& a, const std::string& b,
                               const FiniteGroup& result) {
  return {{"type", "group-construct"}, {"id", id}, {"kind", "direct-sum"}, {"args", {a, b}},
          {"fnv", hex64(fnv1a(result.table_str()))}};
}

nlohmann::json json_abelian_construct(const std::string& id, const std::vector<unsigned long>& factors) {
  return {{"type", "group-construct"}, {"id", id}, {"kind", "abelian"}, {"factors", factors}};
}

nlohmann::json json_baer_construct(const std::string& id, const Nil2Presentation& pres) {
  nlohmann::json beta = nlohmann::json::array();
  for (int i = 0; i < pres.dim_v; ++i)
    for (int j = i + 1; j < pres.dim_v; ++j) {
      const FpVec& b = pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      beta.push_back({{"i", i}, {"j", j}, {"w", std::vector<int>(b.begin(), b.end())}});
    }
  nlohmann::json pred = nlohmann::json::array();
  for (int i = 0; i < pres.pred.rows(); ++i) {
    FpVec r = pres.pred.row(i);
    pred.push_back(std::vector<int>(r.begin(), r.end()));
  }
  return {{"type", "group-construct"}, {"id", id}, {"kind", "baer"},
          {"p", pres.p}, {"dimv", pres.dim_v}, {"dimw", pres.dim_w}, {"beta", beta}, {"pred", pred}};
}

nlohmann::json json_variety_member(const std::string& group, const std::string& variety) {
  return {{"type", "variety-member"}, {"group", group}, {"variety", variety}};
}

nlohmann::json json_morphism(const std::string& id, const std::string& src, const std::string& dst,
                             const std::vector<Elt>& map, bool require_injective) {
  return {{"type", "morphism"}, {"id", id}, {"source", src}, {"target", dst},
          {"map", std::vector<int>(map.begin(), map.end())}, {"injective", require_injective}};
}

nlohmann::json json_square(const std::vector<std::string>& left, const std::vector<std::string>& right) {
  return {{"type", "square"}, {"left", left}, {"right", right}};
}

nlohmann::json json_order_equation(const std::string& a0, const std::string& a1, const std::string& a2,
                                   const std::string& a3) {
  return {{"type", "order-equation"}, {"a0", a0}, {"a1", a1}, {"a2", a2}, {"a3", a3}};
}

nlohmann::json json_diagram(const Diagram& d) { return nlohmann::json::parse(diagram_to_json(d)); }

Diagram diagram_from_json(const nlohmann::json& j) { return parse_diagram(j.dump()); }

nlohmann::json json_extends(const Diagram& d1, const Diagram& d2) {
  return {{"type", "extends"}, {"d1", json_diagram(d1)}, {"d2", json_diagram(d2)}};
}

nlohmann::json json_satisfies(const Diagram& d, const std::string& group, const std::vector<Label>& labels) {
  return {{"type", "satisfies"}, {"d", json_diagram(d)}, {"group", group}, {"labels", labels}};
}

nlohmann::json json_word_separation(const std::string& g1, const std::string& g2,
                                    const std::vector<Elt>& t1, const std::vector<Elt>& t2,
                                    const GroupWord& w1, const GroupWord& w2) {
  return {{"type", "word-separation"}, {"g1", g1}, {"g2", g2},
          {"t1", std::vector<int>(t1.begin(), t1.end())}, {"t2", std::vector<int>(t2.begin(), t2.end())},
          {"w1", w1}, {"w2", w2}};
}

nlohmann::json json_theories_equal(const std::vector<std::string>& groups,
                                   const std::vector<std::vector<Elt>>& tuples, int word_length) {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : tuples) ts.push_back(std::vector<int>(t.begin(), t.end()));
  return {{"type", "theories-equal"}, {"groups", groups}, {"tuples", ts}, {"word_length", word_length}};
}

namespace {

struct ReplayCtx {
  std::map<std::string, GroupRef> groups;
  std::map<std::string, Morphism> morphisms;
  std::vector<std::string> failures;

  void fail_item(const std::string& what) { failures.push_back(what); }

  GroupRef group(const nlohmann::json& j, const std::string& key) {
    auto it = groups.find(j.at(key).get<std::string>());
    if (it == groups.end()) throw Error(Errc::CorruptReport, "unknown group id " + j.at(key).get<std::string>());
    return it->second;
  }
};

void replay_item(ReplayCtx& ctx, const nlohmann::json& item) {
  std::string type = item.at("type").get<std::string>();
  if (type == "group") {
    std::vector<std::vector<int>> rows = item.at("table").get<std::vector<std::vector<int>>>();
    FiniteGroup g = FiniteGroup::from_rows(rows, item.at("unit").get<int>());
    if (g.order() != item.at("order").get<int>()) throw Error(Errc::CorruptReport, "group order mismatch");
    ctx.groups[item.at("id").get<std::string>()] = make_group(std::move(g));
  } else if (type == "group-hash") {
    // Integrity-only placeholder: nothing to rebuild, nothing to verify.
  } else if (type == "group-construct") {
    std::string kind = item.at("kind").get<std::string>();
    std::string id = item.at("id").get<std::string>();
    if (kind == "direct-sum") {
      GroupRef a = ctx.groups.at(item.at("args").at(0).get<std::string>());
      GroupRef b = ctx.groups.at(item.at("args").at(1).get<std::string>());
      GroupRef sum = direct_sum(a, b).sum;
      if (hex64(fnv1a(sum->table_str())) != item.at("fnv").get<std::string>())
        throw Error(Errc::CorruptReport, "direct sum hash mismatch for " + id);
      ctx.groups[id] = sum;
    } else if (kind == "abelian") {
      ctx.groups[id] = make_group(abelian_group_of(item.at("factors").get<std::vector<unsigned long>>()));
    } else if (kind == "baer") {
      Nil2Presentation pres;
      pres.p = item.at("p").get<int>();
      pres.dim_v = item.at("dimv").get<int>();
      pres.dim_w = item.at("dimw").get<int>();
      pres.beta_basis.assign(static_cast<std::size_t>(pres.dim_v),
                             std::vector<FpVec>(static_cast<std::size_t>(pres.dim_v),
                                                FpVec(static_cast<std::size_t>(pres.dim_w), 0)));
      for (const auto& e : item.at("beta")) {
        std::vector<int> w = e.at("w").get<std::vector<int>>();
        pres.beta_basis[e.at("i").get<std::size_t>()][e.at("j").get<std::size_t>()] = FpVec(w.begin(), w.end());
      }
      std::vector<std::vector<int>> pred = item.at("pred").get<std::vector<std::vector<int>>>();
      pres.pred = FpMat(static_cast<int>(pred.size()), pres.dim_w, pres.p);
      for (std::size_t i = 0; i < pred.size(); ++i)
        for (int j = 0; j < pres.dim_w; ++j)
          pres.pred.at(static_cast<int>(i), j) = static_cast<std::uint8_t>(pred[i][static_cast<std::size_t>(j)]);
      ctx.groups[id] = make_group(baer_group(pres, 1u << 20));
    } else {
      throw Error(Errc::CorruptReport, "unknown construct kind " + kind);
    }
  } else if (type == "variety-member") {
    GroupRef g = ctx.group(item, "group");
    VarietySpec v = VarietySpec::from_name(item.at("variety").get<std::string>());
    if (!v.satisfied_by(*g)) throw Error(Errc::CorruptReport, "variety membership fails");
  } else if (type == "morphism") {
    GroupRef s = ctx.group(item, "source"), t = ctx.group(item, "target");
    std::vector<int> raw = item.at("map").get<std::vector<int>>();
    Morphism m(s, t, std::vector<Elt>(raw.begin(), raw.end()));
    if (item.at("injective").get<bool>() && !m.injective())
      throw Error(Errc::CorruptReport, "morphism not injective");
    ctx.morphisms.emplace(item.at("id").get<std::string>(), std::move(m));
  } else if (type == "square") {
    std::vector<std::string> lids = item.at("left").get<std::vector<std::string>>();
    std::vector<std::string> rids = item.at("right").get<std::vector<std::string>>();
    auto chain = [&](const std::vector<std::string>& ids, Elt x) {
      for (const std::string& id : ids) x = ctx.morphisms.at(id)(x);
      return x;
    };
    const Morphism& first_l = ctx.morphisms.at(lids.at(0));
    for (int x = 0; x < first_l.source().order(); ++x)
      if (chain(lids, static_cast<Elt>(x)) != chain(rids, static_cast<Elt>(x)))
        throw Error(Errc::CorruptReport, "square does not commute");
  } else if (type == "order-equation") {
    long a0 = ctx.group(item, "a0")->order(), a1 = ctx.group(item, "a1")->order();
    long a2 = ctx.group(item, "a2")->order(), a3 = ctx.group(item, "a3")->order();
    if (a3 * a0 != a1 * a2) throw Error(Errc::CorruptReport, "order equation fails");
  } else if (type == "extends") {
    Diagram d1 = diagram_from_json(item.at("d1"));
    Diagram d2 = diagram_from_json(item.at("d2"));
    if (!extends(d1, d2)) throw Error(Errc::CorruptReport, "extension relation fails");
  } else if (type == "satisfies") {
    Diagram d = diagram_from_json(item.at("d"));
    GroupRef g = ctx.group(item, "group");
    EnumeratedApprox e{g, item.at("labels").get<std::vector<Label>>()};
    if (!satisfies(e, d)) throw Error(Errc::CorruptReport, "satisfaction fails");
  } else if (type == "word-separation") {
    GroupRef g1 = ctx.group(item, "g1"), g2 = ctx.group(item, "g2");
    std::vector<int> t1 = item.at("t1").get<std::vector<int>>();
    std::vector<int> t2 = item.at("t2").get<std::vector<int>>();
    GroupWord w1 = item.at("w1").get<GroupWord>(), w2 = item.at("w2").get<GroupWord>();
    std::vector<Elt> e1(t1.begin(), t1.end()), e2(t2.begin(), t2.end());
    if (g1->eval_word(w1, e1) != g1->eval_word(w2, e1))
      throw Error(Errc::CorruptReport, "separating words disagree in the first completion");
    if (g2->eval_word(w1, e2) == g2->eval_word(w2, e2))
      throw Error(Errc::CorruptReport, "separating words agree in the second completion");
  } else if (type == "conflicting-cell") {
    Diagram d1 = diagram_from_json(item.at("d1"));
    Diagram d2 = diagram_from_json(item.at("d2"));
    CellOp op = static_cast<CellOp>(item.at("op").get<int>());
    Label a = item.at("a").get<Label>(), b = item.at("b").get<Label>();
    std::vector<Label> fixed = item.at("fixed").get<std::vector<Label>>();
    std::sort(fixed.begin(), fixed.end());
    auto v1 = d1.lookup(op, a, b), v2 = d2.lookup(op, a, b);
    auto is_fixed = [&](Label l) { return std::binary_search(fixed.begin(), fixed.end(), l); };
    bool proves = v1 && v2 && *v1 != *v2 && is_fixed(a) && (op != CellOp::Mul || is_fixed(b)) &&
                  (is_fixed(*v1) || is_fixed(*v2));
    if (!proves) throw Error(Errc::CorruptReport, "claimed cell conflict does not hold");
  } else if (type == "theories-equal") {
    std::vector<std::string> ids = item.at("groups").get<std::vector<std::string>>();
    std::vector<std::vector<int>> ts = item.at("tuples").get<std::vector<std::vector<int>>>();
    int wl = item.at("word_length").get<int>();
    std::vector<int> ref;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      GroupRef g = ctx.groups.at(ids[i]);
      std::vector<Elt> tuple(ts[i].begin(), ts[i].end());
      std::vector<int> th = word_theory(*g, tuple, enumerate_words(static_cast<int>(tuple.size()), wl));
      if (i == 0) ref = th;
      else if (th != ref) throw Error(Errc::CorruptReport, "word theories differ");
    }
  } else {
    throw Error(Errc::CorruptReport, "unknown replay item type " + type);
  }
}

}  // namespace

std::vector<std::string> replay_verify(const nlohmann::json& report) {
  std::vector<std::string> failures;
  if (!report.contains("replay")) return {"report has no replay section"};
  ReplayCtx ctx;
  std::size_t idx = 0;
  for (const auto& item : report.at("replay")) {
    try {
      replay_item(ctx, item);
    } catch (const std::exception& e) {
      failures.push_back("item " + std::to_string(idx) + ": " + e.what());
    }
    ++idx;
  }
  return failures;
}

}  // namespace amalgam
