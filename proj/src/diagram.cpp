#include "amalgam/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace amalgam {

const char* kind_name(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::group: return "group";
    case AlgebraKind::semigroup: return "semigroup";
    case AlgebraKind::ring: return "ring";
  }
  return "?";
}

AlgebraKind kind_from_name(const std::string& s) {
  if (s == "group") return AlgebraKind::group;
  if (s == "semigroup") return AlgebraKind::semigroup;
  if (s == "ring") return AlgebraKind::ring;
  fail(Errc::ParseError, "unknown algebra kind '" + s + "'");
}

std::string Cell::str() const {
  std::ostringstream os;
  switch (op) {
    case CellOp::Mul: os << a << "*" << b << "=" << value; break;
    case CellOp::Inv: os << a << "^-1=" << value; break;
    case CellOp::Add: os << a << "+" << b << "=" << value; break;
    case CellOp::Neg: os << "-" << a << "=" << value; break;
  }
  return os.str();
}

Diagram Diagram::group(std::vector<Label> domain, Label unit) {
  Diagram d;
  d.kind = AlgebraKind::group;
  d.domain = std::move(domain);
  std::sort(d.domain.begin(), d.domain.end());
  d.unit = unit;
  return d;
}

Diagram Diagram::semigroup(std::vector<Label> domain) {
  Diagram d;
  d.kind = AlgebraKind::semigroup;
  d.domain = std::move(domain);
  std::sort(d.domain.begin(), d.domain.end());
  return d;
}

Diagram Diagram::ring(std::vector<Label> domain, Label zero) {
  Diagram d;
  d.kind = AlgebraKind::ring;
  d.domain = std::move(domain);
  std::sort(d.domain.begin(), d.domain.end());
  d.zero = zero;
  return d;
}

bool Diagram::in_domain(Label l) const { return std::binary_search(domain.begin(), domain.end(), l); }

void Diagram::add(Cell c) {
  auto it = std::lower_bound(cells.begin(), cells.end(), c);
  if (it != cells.end() && *it == c) return;
  cells.insert(it, c);
}

bool Diagram::has(const Cell& c) const { return std::binary_search(cells.begin(), cells.end(), c); }

std::optional<Label> Diagram::lookup(CellOp op, Label a, Label b) const {
  Cell probe{op, a, b, 0};
  auto it = std::lower_bound(cells.begin(), cells.end(), probe);
  if (it != cells.end() && it->op == op && it->a == a && it->b == b) return it->value;
  return std::nullopt;
}

bool Diagram::is_total() const {
  for (Label a : domain) {
    if (kind == AlgebraKind::group && !lookup(CellOp::Inv, a)) return false;
    if (kind == AlgebraKind::ring && !lookup(CellOp::Neg, a)) return false;
    for (Label b : domain) {
      if (!lookup(CellOp::Mul, a, b)) return false;
      if (kind == AlgebraKind::ring && !lookup(CellOp::Add, a, b)) return false;
    }
  }
  return true;
}

std::string Diagram::canonical_str() const {
  std::ostringstream os;
  os << kind_name(kind) << "|d:";
  for (Label l : domain) os << l << ",";
  if (unit) os << "|u:" << *unit;
  if (zero) os << "|z:" << *zero;
  if (!marked_tuple.empty()) {
    os << "|t:";
    for (Label l : marked_tuple) os << l << ",";
  }
  os << "|c:";
  for (const Cell& c : cells) os << c.str() << ";";
  return os.str();
}

namespace {

void check_wellformed(const Diagram& d) {
  for (std::size_t i = 1; i < d.domain.size(); ++i)
    if (d.domain[i] == d.domain[i - 1]) fail(Errc::MalformedDiagram, "duplicate domain label");
  auto need = [&](Label l) {
    if (!d.in_domain(l)) fail(Errc::MalformedDiagram, "label " + std::to_string(l) + " outside domain");
  };
  if (d.kind == AlgebraKind::group) {
    if (!d.unit) fail(Errc::MalformedDiagram, "group diagram needs a unit label");
    need(*d.unit);
  }
  if (d.kind == AlgebraKind::ring) {
    if (!d.zero) fail(Errc::MalformedDiagram, "ring diagram needs a zero label");
    need(*d.zero);
  }
  for (const Cell& c : d.cells) {
    bool ok_op = false;
    switch (d.kind) {
      case AlgebraKind::group: ok_op = c.op == CellOp::Mul || c.op == CellOp::Inv; break;
      case AlgebraKind::semigroup: ok_op = c.op == CellOp::Mul; break;
      case AlgebraKind::ring: ok_op = c.op == CellOp::Mul || c.op == CellOp::Add || c.op == CellOp::Neg; break;
    }
    if (!ok_op) fail(Errc::MalformedDiagram, "cell " + c.str() + " uses an operation foreign to " + kind_name(d.kind));
    need(c.a);
    if (c.op == CellOp::Mul || c.op == CellOp::Add) need(c.b);
    need(c.value);
  }
  for (Label l : d.marked_tuple) need(l);
}

}  // namespace

ConsistencyReport check_partial_consistency(const Diagram& d) {
  check_wellformed(d);
  // Functionality first.
  for (std::size_t i = 1; i < d.cells.size(); ++i) {
    const Cell& x = d.cells[i - 1];
    const Cell& y = d.cells[i];
    if (x.op == y.op && x.a == y.a && x.b == y.b)
      return {false, "double-valued cell: " + x.str() + " vs " + y.str()};
  }
  auto bad = [](const std::string& what) { return ConsistencyReport{false, what}; };

  if (d.kind == AlgebraKind::group) {
    Label u = *d.unit;
    for (const Cell& c : d.cells) {
      if (c.op != CellOp::Mul) continue;
      if (c.a == u && c.value != c.b) return bad("unit law: " + c.str());
      if (c.b == u && c.value != c.a) return bad("unit law: " + c.str());
    }
    for (const Cell& c : d.cells) {
      if (c.op != CellOp::Inv) continue;
      if (auto p = d.mul(c.a, c.value); p && *p != u)
        return bad("inverse law: " + c.str() + " with " + mul_cell(c.a, c.value, *p).str());
      if (auto p = d.mul(c.value, c.a); p && *p != u)
        return bad("inverse law: " + c.str() + " with " + mul_cell(c.value, c.a, *p).str());
    }
  }
  // Associativity instances of * (all kinds).
  for (const Cell& c : d.cells) {
    if (c.op != CellOp::Mul) continue;
    for (Label z : d.domain) {
      auto ab_c = d.mul(c.value, z);
      if (!ab_c) continue;
      auto bc = d.mul(c.b, z);
      if (!bc) continue;
      auto a_bc = d.mul(c.a, *bc);
      if (a_bc && *a_bc != *ab_c)
        return bad("associativity: (" + std::to_string(c.a) + "*" + std::to_string(c.b) + ")*" + std::to_string(z) +
                   "=" + std::to_string(*ab_c) + " but " + std::to_string(c.a) + "*(" + std::to_string(c.b) + "*" +
                   std::to_string(z) + ")=" + std::to_string(*a_bc));
    }
  }
  if (d.kind == AlgebraKind::ring) {
    Label z0 = *d.zero;
    for (const Cell& c : d.cells) {
      if (c.op == CellOp::Add) {
        if (c.a == z0 && c.value != c.b) return bad("zero law: " + c.str());
        if (c.b == z0 && c.value != c.a) return bad("zero law: " + c.str());
        if (auto sym = d.lookup(CellOp::Add, c.b, c.a); sym && *sym != c.value)
          return bad("addition commutativity: " + c.str());
        for (Label w : d.domain) {
          auto ab_c = d.lookup(CellOp::Add, c.value, w);
          if (!ab_c) continue;
          auto bc = d.lookup(CellOp::Add, c.b, w);
          if (!bc) continue;
          auto a_bc = d.lookup(CellOp::Add, c.a, *bc);
          if (a_bc && *a_bc != *ab_c) return bad("addition associativity at " + c.str());
        }
      }
      if (c.op == CellOp::Neg) {
        if (auto s = d.lookup(CellOp::Add, c.a, c.value); s && *s != z0) return bad("negation law: " + c.str());
        if (auto s = d.lookup(CellOp::Add, c.value, c.a); s && *s != z0) return bad("negation law: " + c.str());
      }
    }
    // Distributivity instances.
    for (const Cell& c : d.cells) {
      if (c.op != CellOp::Add) continue;
      for (Label a : d.domain) {
        auto as = d.mul(a, c.value);
        auto ab = d.mul(a, c.a), ac = d.mul(a, c.b);
        if (as && ab && ac) {
          auto sum = d.lookup(CellOp::Add, *ab, *ac);
          if (sum && *sum != *as) return bad("left distributivity over " + c.str());
        }
        auto sa = d.mul(c.value, a);
        auto ba = d.mul(c.a, a), ca = d.mul(c.b, a);
        if (sa && ba && ca) {
          auto sum = d.lookup(CellOp::Add, *ba, *ca);
          if (sum && *sum != *sa) return bad("right distributivity over " + c.str());
        }
      }
    }
  }
  return {};
}

bool extends(const Diagram& d, const Diagram& d2) {
  if (d.kind != d2.kind) fail(Errc::KindMismatch, "extension compares different kinds");
  if (d.unit != d2.unit || d.zero != d2.zero) return false;
  if (!std::includes(d2.domain.begin(), d2.domain.end(), d.domain.begin(), d.domain.end())) return false;
  return std::includes(d2.cells.begin(), d2.cells.end(), d.cells.begin(), d.cells.end());
}

Label apply_relabeling(const Relabeling& alpha, Label l) {
  auto it = alpha.find(l);
  return it == alpha.end() ? l : it->second;
}

Diagram relabel(const Diagram& d, const Relabeling& alpha) {
  if (d.unit && apply_relabeling(alpha, *d.unit) != *d.unit)
    fail(Errc::ConstantMoved, "unit label " + std::to_string(*d.unit) + " moved");
  if (d.zero && apply_relabeling(alpha, *d.zero) != *d.zero)
    fail(Errc::ConstantMoved, "zero label " + std::to_string(*d.zero) + " moved");
  Diagram out;
  out.kind = d.kind;
  out.unit = d.unit;
  out.zero = d.zero;
  out.domain.reserve(d.domain.size());
  for (Label l : d.domain) out.domain.push_back(apply_relabeling(alpha, l));
  std::sort(out.domain.begin(), out.domain.end());
  // Any map injective on the diagram's labels extends to a permutation of
  // omega, which is all the relabeling semantics needs.
  if (std::adjacent_find(out.domain.begin(), out.domain.end()) != out.domain.end())
    fail(Errc::PreconditionFailed, "relabeling not injective on the domain");
  for (const Cell& c : d.cells) {
    Cell m = c;
    m.a = apply_relabeling(alpha, c.a);
    if (c.op == CellOp::Mul || c.op == CellOp::Add) m.b = apply_relabeling(alpha, c.b);
    m.value = apply_relabeling(alpha, c.value);
    out.add(m);
  }
  for (Label l : d.marked_tuple) out.marked_tuple.push_back(apply_relabeling(alpha, l));
  return out;
}

std::vector<GroupWord> VarietySpec::laws() const {
  std::vector<GroupWord> out;
  if (abelian) out.push_back({-1, -2, 1, 2});
  if (exponent > 0) out.push_back(GroupWord(static_cast<std::size_t>(exponent), 1));
  if (nil_class > 0) {
    // Iterated commutator of weight nil_class + 1.
    GroupWord w{1};
    for (int v = 2; v <= nil_class + 1; ++v) {
      GroupWord inv_w(w.rbegin(), w.rend());
      for (int& x : inv_w) x = -x;
      GroupWord next = inv_w;
      next.push_back(-v);
      next.insert(next.end(), w.begin(), w.end());
      next.push_back(v);
      w = std::move(next);
    }
    out.push_back(w);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

bool word_holds_everywhere(const FiniteGroup& g, const GroupWord& w) {
  int vars = 0;
  for (int v : w) vars = std::max(vars, v > 0 ? v : -v);
  std::vector<Elt> assign(static_cast<std::size_t>(vars), g.unit());
  double combos = 1;
  for (int i = 0; i < vars; ++i) combos *= g.order();
  if (combos > 2e7) fail(Errc::PreconditionFailed, "substitution space too large for brute-force law check");
  for (;;) {
    if (g.eval_word(w, assign) != g.unit()) return false;
    int i = 0;
    while (i < vars) {
      if (++assign[static_cast<std::size_t>(i)] < g.order()) break;
      assign[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == vars) return true;
  }
}

bool VarietySpec::satisfied_by(const FiniteGroup& g) const {
  if (abelian && !g.abelian()) return false;
  if (exponent > 0) {
    for (int i = 0; i < g.order(); ++i)
      if (exponent % g.element_order(static_cast<Elt>(i)) != 0) return false;
  }
  if (nil_class > 0) {
    auto c = g.nilpotency_class();
    if (!c || *c > nil_class) return false;
  }
  for (const GroupWord& w : extra)
    if (!word_holds_everywhere(g, w)) return false;
  return true;
}

VarietySpec VarietySpec::group() { return {}; }
VarietySpec VarietySpec::abel() { return {"abel", true, 0, 0, {}}; }
VarietySpec VarietySpec::exp(int n) { return {"exp" + std::to_string(n), false, n, 0, {}}; }
VarietySpec VarietySpec::nil(int c) { return {"nil" + std::to_string(c), false, 0, c, {}}; }
VarietySpec VarietySpec::nil_exp(int c, int p) {
  return {"nil" + std::to_string(c) + "-exp" + std::to_string(p), false, p, c, {}};
}

VarietySpec VarietySpec::from_name(const std::string& s) {
  VarietySpec v;
  v.name = s;
  if (s.empty() || s == "group") return VarietySpec::group();
  std::stringstream ss(s);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '-')) {
    if (part == "abel") { v.abelian = true; any = true; }
    else if (part.rfind("exp", 0) == 0) { v.exponent = std::stoi(part.substr(3)); any = true; }
    else if (part.rfind("nil", 0) == 0) { v.nil_class = std::stoi(part.substr(3)); any = true; }
    else {
      // compact form like 2nil3
      std::size_t pos = part.find("nil");
      if (pos != std::string::npos && pos > 0) {
        v.nil_class = std::stoi(part.substr(0, pos));
        v.exponent = std::stoi(part.substr(pos + 3));
        any = true;
      } else {
        fail(Errc::ParseError, "unknown variety '" + s + "'");
      }
    }
  }
  if (!any) fail(Errc::ParseError, "unknown variety '" + s + "'");
  return v;
}

namespace {

std::vector<Label> canonical_group_labels(const FiniteGroup& g) {
  std::vector<Label> lab(static_cast<std::size_t>(g.order()));
  lab[g.unit()] = 1;
  Label next = 2;
  for (int i = 0; i < g.order(); ++i)
    if (i != g.unit()) lab[static_cast<std::size_t>(i)] = next++;
  return lab;
}

}  // namespace

Diagram diagram_of(const FiniteGroup& f, const std::vector<Elt>& tuple) {
  std::vector<Label> lab = canonical_group_labels(f);
  Diagram d = Diagram::group(lab, 1);
  for (int a = 0; a < f.order(); ++a) {
    d.add(inv_cell(lab[static_cast<std::size_t>(a)], lab[f.inv(static_cast<Elt>(a))]));
    for (int b = 0; b < f.order(); ++b)
      d.add(mul_cell(lab[static_cast<std::size_t>(a)], lab[static_cast<std::size_t>(b)],
                     lab[f.mul(static_cast<Elt>(a), static_cast<Elt>(b))]));
  }
  for (Elt e : tuple) {
    if (e >= f.order()) fail(Errc::PreconditionFailed, "tuple element out of range");
    d.marked_tuple.push_back(lab[e]);
  }
  return d;
}

Diagram diagram_of_semigroup(const Semigroup& s) {
  std::vector<Label> dom(static_cast<std::size_t>(s.order()));
  for (int i = 0; i < s.order(); ++i) dom[static_cast<std::size_t>(i)] = static_cast<Label>(i + 1);
  Diagram d = Diagram::semigroup(dom);
  for (int a = 0; a < s.order(); ++a)
    for (int b = 0; b < s.order(); ++b)
      d.add(mul_cell(static_cast<Label>(a + 1), static_cast<Label>(b + 1),
                     static_cast<Label>(s.mul(static_cast<Elt>(a), static_cast<Elt>(b)) + 1)));
  return d;
}

EnumeratedApprox EnumeratedApprox::of_group(GroupRef g) {
  EnumeratedApprox e;
  e.labels = canonical_group_labels(*g);
  e.algebra = std::move(g);
  return e;
}

std::optional<Elt> EnumeratedApprox::element_of(Label l) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<Elt>(i);
  return std::nullopt;
}

AlgebraKind EnumeratedApprox::kind() const {
  if (std::holds_alternative<GroupRef>(algebra)) return AlgebraKind::group;
  if (std::holds_alternative<Semigroup>(algebra)) return AlgebraKind::semigroup;
  return AlgebraKind::ring;
}

bool satisfies(const EnumeratedApprox& e, const Diagram& d) {
  if (e.kind() != d.kind) fail(Errc::KindMismatch, "approximation kind differs from diagram kind");
  auto elem = [&](Label l) {
    auto x = e.element_of(l);
    if (!x) fail(Errc::LabelMissing, "label " + std::to_string(l) + " not in the enumeration");
    return *x;
  };
  for (Label l : d.domain) elem(l);
  if (d.kind == AlgebraKind::group) {
    const FiniteGroup& g = *std::get<GroupRef>(e.algebra);
    if (d.unit && elem(*d.unit) != g.unit()) return false;
    for (const Cell& c : d.cells) {
      if (c.op == CellOp::Mul && g.mul(elem(c.a), elem(c.b)) != elem(c.value)) return false;
      if (c.op == CellOp::Inv && g.inv(elem(c.a)) != elem(c.value)) return false;
    }
    return true;
  }
  if (d.kind == AlgebraKind::semigroup) {
    const Semigroup& s = std::get<Semigroup>(e.algebra);
    for (const Cell& c : d.cells)
      if (s.mul(elem(c.a), elem(c.b)) != elem(c.value)) return false;
    return true;
  }
  const Ring& r = std::get<Ring>(e.algebra);
  if (d.zero && elem(*d.zero) != r.zero()) return false;
  for (const Cell& c : d.cells) {
    switch (c.op) {
      case CellOp::Mul: if (r.mul(elem(c.a), elem(c.b)) != elem(c.value)) return false; break;
      case CellOp::Add: if (r.add(elem(c.a), elem(c.b)) != elem(c.value)) return false; break;
      case CellOp::Neg: if (r.neg(elem(c.a)) != elem(c.value)) return false; break;
      default: fail(Errc::MalformedDiagram, "inv cell in ring diagram");
    }
  }
  return true;
}

std::vector<LabelTuple> default_tuple_enum(Label max_label, int max_len) {
  std::vector<LabelTuple> out;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Label> t(static_cast<std::size_t>(len), 1);
    for (;;) {
      out.push_back(t);
      int i = len - 1;
      while (i >= 0) {
        if (++t[static_cast<std::size_t>(i)] <= max_label) break;
        t[static_cast<std::size_t>(i)] = 1;
        --i;
      }
      if (i < 0) break;
    }
  }
  return out;
}

Rational logic_metric(const EnumeratedApprox& e1, const EnumeratedApprox& e2,
                      const std::vector<LabelTuple>& tuple_enum, int cutoff) {
  if (e1.kind() != e2.kind()) fail(Errc::KindMismatch, "metric between different kinds");
  if (cutoff > 60) fail(Errc::BoundExceeded, "cutoff too large for exact dyadic arithmetic");
  auto value_label = [](const EnumeratedApprox& e, CellOp op, Label a, Label b) -> Label {
    auto ea = e.element_of(a);
    auto eb = (op == CellOp::Inv || op == CellOp::Neg) ? std::optional<Elt>(0) : e.element_of(b);
    if (!ea || !eb) fail(Errc::InsufficientDomain, "tuple label missing from an approximation");
    Elt v = 0;
    if (const GroupRef* g = std::get_if<GroupRef>(&e.algebra)) {
      v = op == CellOp::Inv ? (*g)->inv(*ea) : (*g)->mul(*ea, *eb);
    } else if (const Semigroup* s = std::get_if<Semigroup>(&e.algebra)) {
      if (op == CellOp::Inv) fail(Errc::KindMismatch, "no inversion on semigroups");
      v = s->mul(*ea, *eb);
    } else {
      const Ring& r = std::get<Ring>(e.algebra);
      v = op == CellOp::Neg ? r.neg(*ea) : (op == CellOp::Add ? r.add(*ea, *eb) : r.mul(*ea, *eb));
    }
    return e.labels[v];
  };
  Rational sum;
  int n = std::min<int>(cutoff, static_cast<int>(tuple_enum.size()));
  for (int i = 0; i < n; ++i) {
    const LabelTuple& t = tuple_enum[static_cast<std::size_t>(i)];
    bool disagree = false;
    AlgebraKind k = e1.kind();
    if (t.size() == 1) {
      if (k == AlgebraKind::group)
        disagree = value_label(e1, CellOp::Inv, t[0], 0) != value_label(e2, CellOp::Inv, t[0], 0);
      else if (k == AlgebraKind::ring)
        disagree = value_label(e1, CellOp::Neg, t[0], 0) != value_label(e2, CellOp::Neg, t[0], 0);
    } else if (t.size() == 2) {
      disagree = value_label(e1, CellOp::Mul, t[0], t[1]) != value_label(e2, CellOp::Mul, t[0], t[1]);
      if (!disagree && k == AlgebraKind::ring)
        disagree = value_label(e1, CellOp::Add, t[0], t[1]) != value_label(e2, CellOp::Add, t[0], t[1]);
    }
    // Longer tuples have no operation of matching arity; they always agree.
    if (disagree) sum = sum + Rational{1, 1LL << i};
  }
  return sum;
}

std::string diagram_to_text(const Diagram& d) {
  std::ostringstream os;
  os << "kind: " << kind_name(d.kind) << "\n";
  os << "domain: [";
  for (std::size_t i = 0; i < d.domain.size(); ++i) os << (i ? "," : "") << d.domain[i];
  os << "]\n";
  if (d.unit) os << "unit: " << *d.unit << "\n";
  if (d.zero) os << "zero: " << *d.zero << "\n";
  if (!d.marked_tuple.empty()) {
    os << "tuple: [";
    for (std::size_t i = 0; i < d.marked_tuple.size(); ++i) os << (i ? "," : "") << d.marked_tuple[i];
    os << "]\n";
  }
  for (const Cell& c : d.cells) {
    switch (c.op) {
      case CellOp::Mul: os << "mul: "; break;
      case CellOp::Inv: os << "inv: "; break;
      case CellOp::Add: os << "add: "; break;
      case CellOp::Neg: os << "neg: "; break;
    }
    os << c.str() << "\n";
  }
  return os.str();
}

std::string diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["kind"] = kind_name(d.kind);
  j["domain"] = d.domain;
  if (d.unit) j["unit"] = *d.unit;
  if (d.zero) j["zero"] = *d.zero;
  if (!d.marked_tuple.empty()) j["tuple"] = d.marked_tuple;
  nlohmann::json mul = nlohmann::json::array(), inv = nlohmann::json::array();
  nlohmann::json add = nlohmann::json::array(), neg = nlohmann::json::array();
  for (const Cell& c : d.cells) {
    switch (c.op) {
      case CellOp::Mul: mul.push_back({c.a, c.b, c.value}); break;
      case CellOp::Inv: inv.push_back({c.a, c.value}); break;
      case CellOp::Add: add.push_back({c.a, c.b, c.value}); break;
      case CellOp::Neg: neg.push_back({c.a, c.value}); break;
    }
  }
  if (!mul.empty()) j["mul"] = mul;
  if (!inv.empty()) j["inv"] = inv;
  if (!add.empty()) j["add"] = add;
  if (!neg.empty()) j["neg"] = neg;
  return j.dump(2);
}

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<Label> parse_label_list(std::string s) {
  std::vector<Label> out;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream is(s);
  unsigned long v;
  while (is >> v) out.push_back(static_cast<Label>(v));
  return out;
}

Diagram parse_diagram_json(const std::string& content) {
  nlohmann::json j = nlohmann::json::parse(content);
  Diagram d;
  d.kind = kind_from_name(j.at("kind").get<std::string>());
  d.domain = j.at("domain").get<std::vector<Label>>();
  std::sort(d.domain.begin(), d.domain.end());
  if (j.contains("unit")) d.unit = j["unit"].get<Label>();
  else if (d.kind == AlgebraKind::group) d.unit = 1;
  if (j.contains("zero")) d.zero = j["zero"].get<Label>();
  else if (d.kind == AlgebraKind::ring) d.zero = 0;
  if (j.contains("tuple")) d.marked_tuple = j["tuple"].get<std::vector<Label>>();
  if (j.contains("mul"))
    for (auto& t : j["mul"]) d.add(mul_cell(t.at(0).get<Label>(), t.at(1).get<Label>(), t.at(2).get<Label>()));
  if (j.contains("inv"))
    for (auto& t : j["inv"]) d.add(inv_cell(t.at(0).get<Label>(), t.at(1).get<Label>()));
  if (j.contains("add"))
    for (auto& t : j["add"]) d.add(add_cell(t.at(0).get<Label>(), t.at(1).get<Label>(), t.at(2).get<Label>()));
  if (j.contains("neg"))
    for (auto& t : j["neg"]) d.add(neg_cell(t.at(0).get<Label>(), t.at(1).get<Label>()));
  return d;
}

}  // namespace

Diagram parse_diagram(const std::string& content) {
  std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    try {
      return parse_diagram_json(content);
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::ParseError, std::string("diagram JSON: ") + e.what());
    }
  }
  Diagram d;
  bool saw_kind = false, saw_unit = false, saw_zero = false;
  std::istringstream is(content);
  std::string line;
  auto parse_nat = [](const std::string& s) -> Label {
    try {
      return static_cast<Label>(std::stoul(trimmed(s)));
    } catch (...) {
      fail(Errc::ParseError, "expected a natural number, got '" + s + "'");
    }
  };
  while (std::getline(is, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail(Errc::ParseError, "expected 'key: value' in '" + line + "'");
    std::string key = trimmed(line.substr(0, colon));
    std::string val = trimmed(line.substr(colon + 1));
    if (key == "kind") { d.kind = kind_from_name(val); saw_kind = true; }
    else if (key == "domain") { d.domain = parse_label_list(val); std::sort(d.domain.begin(), d.domain.end()); }
    else if (key == "unit") { d.unit = parse_nat(val); saw_unit = true; }
    else if (key == "zero") { d.zero = parse_nat(val); saw_zero = true; }
    else if (key == "tuple") { d.marked_tuple = parse_label_list(val); }
    else if (key == "mul" || key == "add") {
      char opch = key == "mul" ? '*' : '+';
      std::size_t star = val.find(opch), eq = val.find('=');
      if (star == std::string::npos || eq == std::string::npos || eq < star)
        fail(Errc::ParseError, "bad cell '" + line + "'");
      Label a = parse_nat(val.substr(0, star));
      Label b = parse_nat(val.substr(star + 1, eq - star - 1));
      Label v = parse_nat(val.substr(eq + 1));
      d.add(key == "mul" ? mul_cell(a, b, v) : add_cell(a, b, v));
    } else if (key == "inv") {
      std::size_t caret = val.find("^-1"), eq = val.find('=');
      if (caret == std::string::npos || eq == std::string::npos)
        fail(Errc::ParseError, "bad inv cell '" + line + "'");
      d.add(inv_cell(parse_nat(val.substr(0, caret)), parse_nat(val.substr(eq + 1))));
    } else if (key == "neg") {
      std::size_t dash = val.find('-'), eq = val.find('=');
      if (dash == std::string::npos || eq == std::string::npos)
        fail(Errc::ParseError, "bad neg cell '" + line + "'");
      d.add(neg_cell(parse_nat(val.substr(dash + 1, eq - dash - 1)), parse_nat(val.substr(eq + 1))));
    } else {
      fail(Errc::ParseError, "unknown diagram key '" + key + "'");
    }
  }
  if (!saw_kind) fail(Errc::ParseError, "diagram lacks a kind line");
  if (d.kind == AlgebraKind::group && !saw_unit) d.unit = 1;
  if (d.kind == AlgebraKind::ring && !saw_zero) d.zero = 0;
  return d;
}

}  // namespace amalgam
