#include "amalgam/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace amalgam {

namespace {

std::string word_str(const std::vector<int>& w, const std::vector<std::string>& gens) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int v = w[i];
    if (i) s += "*";
    s += gens.at(static_cast<std::size_t>(std::abs(v)) - 1);
    if (v < 0) s += "^-1";
  }
  return s;
}

}  // namespace

std::string Presentation::str() const {
  std::ostringstream os;
  os << "kind: " << kind_name(kind) << "\n";
  os << "gens:";
  for (const std::string& g : generators) os << " " << g;
  os << "\n";
  for (const Relation& r : relations) {
    if (kind == AlgebraKind::ring) {
      os << "rel: ";
      for (std::size_t t = 0; t < r.poly.size(); ++t) {
        const PolyTerm& term = r.poly[t];
        long c = term.coef;
        if (t) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        long a = std::abs(c);
        if (a != 1 || term.monomial.empty()) os << a << (term.monomial.empty() ? "" : "*");
        for (std::size_t m = 0; m < term.monomial.size(); ++m)
          os << (m ? "*" : "") << generators.at(static_cast<std::size_t>(term.monomial[m]) - 1);
      }
      os << " = 0\n";
    } else {
      os << "rel: " << word_str(r.lhs, generators) << " = " << word_str(r.rhs, generators) << "\n";
    }
  }
  return os.str();
}

namespace {

std::vector<int> parse_word(const std::string& text, const std::map<std::string, int>& index) {
  std::vector<int> out;
  std::string t = text;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t == "1") return out;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, '*')) {
    int exp = 1;
    std::size_t caret = part.find('^');
    std::string name = part;
    if (caret != std::string::npos) {
      name = part.substr(0, caret);
      exp = std::stoi(part.substr(caret + 1));
    }
    auto it = index.find(name);
    if (it == index.end()) fail(Errc::ParseError, "unknown generator '" + name + "'");
    int g = it->second;
    int sign = exp < 0 ? -1 : 1;
    for (int i = 0; i < std::abs(exp); ++i) out.push_back(sign * g);
  }
  return out;
}

}  // namespace

Presentation Presentation::parse(const std::string& content) {
  Presentation p;
  std::istringstream is(content);
  std::string line;
  std::map<std::string, int> index;
  while (std::getline(is, line)) {
    std::size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("kind:", 0) == 0) {
      std::string k = line.substr(5);
      k.erase(std::remove(k.begin(), k.end(), ' '), k.end());
      p.kind = kind_from_name(k);
    } else if (line.rfind("gens:", 0) == 0) {
      std::istringstream gs(line.substr(5));
      std::string g;
      while (gs >> g) {
        p.generators.push_back(g);
        index[g] = static_cast<int>(p.generators.size());
      }
    } else if (line.rfind("rel:", 0) == 0) {
      std::string body = line.substr(4);
      std::size_t eq = body.find('=');
      if (eq == std::string::npos) fail(Errc::ParseError, "relation needs '='");
      Relation r;
      if (p.kind == AlgebraKind::ring) {
        std::string rhs = body.substr(eq + 1);
        rhs.erase(std::remove(rhs.begin(), rhs.end(), ' '), rhs.end());
        if (rhs != "0") fail(Errc::ParseError, "ring relations are written '<poly> = 0'");
        std::string lhs = body.substr(0, eq);
        std::string cur;
        int sign = 1;
        auto flush = [&]() {
          std::string t = cur;
          t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
          if (t.empty()) return;
          PolyTerm term;
          term.coef = sign;
          std::stringstream ts(t);
          std::string fac;
          while (std::getline(ts, fac, '*')) {
            if (!fac.empty() && (std::isdigit(fac[0]) != 0)) term.coef *= std::stol(fac);
            else {
              auto it = index.find(fac);
              if (it == index.end()) fail(Errc::ParseError, "unknown generator '" + fac + "'");
              term.monomial.push_back(it->second);
            }
          }
          r.poly.push_back(std::move(term));
          cur.clear();
        };
        for (char c : lhs) {
          if (c == '+' || c == '-') {
            flush();
            sign = c == '-' ? -1 : 1;
          } else {
            cur += c;
          }
        }
        flush();
      } else {
        r.lhs = parse_word(body.substr(0, eq), index);
        r.rhs = parse_word(body.substr(eq + 1), index);
        if (p.kind == AlgebraKind::semigroup)
          for (int v : r.lhs)
            if (v < 0) fail(Errc::ParseError, "semigroup words must be positive");
      }
      p.relations.push_back(std::move(r));
    } else {
      fail(Errc::ParseError, "unknown presentation line: " + line);
    }
  }
  return p;
}

Presentation group_to_semigroup_presentation(const Presentation& p) {
  if (p.kind != AlgebraKind::group) fail(Errc::NotAGroupPresentation, "rewriting needs a group presentation");
  int n = static_cast<int>(p.generators.size());
  Presentation out;
  out.kind = AlgebraKind::semigroup;
  out.generators = p.generators;
  for (const std::string& g : p.generators) out.generators.push_back(g + "_inv");
  out.generators.push_back("e1");
  int unit = 2 * n + 1;

  // Unit laws for all 2n letters, then 1*1 = 1.
  for (int i = 1; i <= 2 * n; ++i) {
    out.relations.push_back({{i, unit}, {i}, {}});
    out.relations.push_back({{unit, i}, {i}, {}});
  }
  out.relations.push_back({{unit, unit}, {unit}, {}});
  // Inverse pairings.
  for (int i = 1; i <= n; ++i) {
    out.relations.push_back({{i, n + i}, {unit}, {}});
    out.relations.push_back({{n + i, i}, {unit}, {}});
  }
  // Relators rewritten positively: c_i^-1 becomes c_{n+i}.
  for (const Presentation::Relation& r : p.relations) {
    std::vector<int> word;
    for (int v : r.lhs) word.push_back(v > 0 ? v : n - v);
    for (auto it = r.rhs.rbegin(); it != r.rhs.rend(); ++it) {
      int v = -*it;
      word.push_back(v > 0 ? v : n - v);
    }
    if (word.empty()) word.push_back(unit);
    out.relations.push_back({word, {unit}, {}});
  }
  return out;
}

Presentation presentation_of_group_table(const FiniteGroup& g) {
  Presentation p;
  p.kind = AlgebraKind::group;
  for (int i = 0; i < g.order(); ++i) p.generators.push_back("x" + std::to_string(i));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      int c = g.mul(static_cast<Elt>(a), static_cast<Elt>(b));
      p.relations.push_back({{a + 1, b + 1, -(c + 1)}, {}, {}});
    }
  return p;
}

Diagram presentation_diagram(const Presentation& p, const std::vector<Elt>& gen_values, const Semigroup& s) {
  if (p.kind != AlgebraKind::semigroup) fail(Errc::KindMismatch, "expected a semigroup presentation");
  if (gen_values.size() != p.generators.size())
    fail(Errc::PreconditionFailed, "one value per generator required");
  std::set<Label> touched;
  std::vector<Cell> cells;
  auto walk = [&](const std::vector<int>& word) -> std::optional<Elt> {
    if (word.empty()) return std::nullopt;
    Elt acc = gen_values.at(static_cast<std::size_t>(word[0]) - 1);
    touched.insert(static_cast<Label>(acc + 1));
    for (std::size_t i = 1; i < word.size(); ++i) {
      Elt nxt = gen_values.at(static_cast<std::size_t>(word[i]) - 1);
      Elt prod = s.mul(acc, nxt);
      touched.insert(static_cast<Label>(nxt + 1));
      touched.insert(static_cast<Label>(prod + 1));
      cells.push_back(mul_cell(static_cast<Label>(acc + 1), static_cast<Label>(nxt + 1), static_cast<Label>(prod + 1)));
      acc = prod;
    }
    return acc;
  };
  for (const Presentation::Relation& r : p.relations) {
    auto l = walk(r.lhs), rr = walk(r.rhs);
    if (l && rr && *l != *rr)
      fail(Errc::PreconditionFailed, "relation fails under the evaluation");
  }
  Diagram d = Diagram::semigroup(std::vector<Label>(touched.begin(), touched.end()));
  for (const Cell& c : cells) d.add(c);
  return d;
}

bool rewrite_correctness_check(const FiniteGroup& g, int bound) {
  Presentation p = presentation_of_group_table(g);
  Presentation sg = group_to_semigroup_presentation(p);
  int n = g.order();
  // Exact size accounting for the rewriting.
  if (static_cast<int>(sg.generators.size()) != 2 * n + 1) return false;
  if (sg.relations.size() != 6 * static_cast<std::size_t>(n) + 1 + p.relations.size()) return false;

  std::vector<Elt> values;
  for (int i = 0; i < n; ++i) values.push_back(static_cast<Elt>(i));
  for (int i = 0; i < n; ++i) values.push_back(g.inv(static_cast<Elt>(i)));
  values.push_back(g.unit());
  Semigroup s(std::vector<Elt>(g.table()), n);
  Diagram d = presentation_diagram(sg, values, s);

  std::vector<SemigroupCompletion> comps = complete_semigroup_within(d, bound);
  if (comps.size() != 1) return false;
  return semigroup_isomorphic(comps.front().semigroup, s);
}

AlgebraCompletions algebra_complete_within(const Diagram& d, AlgebraKind kind, int order_bound) {
  if (d.kind != kind) fail(Errc::KindMismatch, "diagram kind does not match the requested kind");
  AlgebraCompletions out;
  switch (kind) {
    case AlgebraKind::group: out.groups = complete_within(d, VarietySpec::group(), order_bound); break;
    case AlgebraKind::semigroup: out.semigroups = complete_semigroup_within(d, order_bound); break;
    case AlgebraKind::ring: out.rings = complete_ring_within(d, order_bound); break;
  }
  return out;
}

}  // namespace amalgam
