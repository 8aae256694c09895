#include "amalgam/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amalgam/nil2.hpp"

namespace amalgam {

std::string Catalog::fingerprint() const {
  std::uint64_t h = fnv1a(variety_name + "#" + std::to_string(order_bound));
  for (const GroupRef& g : groups) h = fnv1a(std::to_string(g->order()) + ":" + g->table_str(), h);
  return hex64(h);
}

bool Catalog::contains_isomorphic(GroupRef g) const {
  for (const GroupRef& h : groups)
    if (isomorphic(g, h)) return true;
  return false;
}

namespace {

void insert_reduced(std::vector<GroupRef>& pool, GroupRef g, const VarietySpec& variety, int bound) {
  if (g->order() > bound) return;
  if (!variety.satisfied_by(*g)) return;
  for (const GroupRef& h : pool)
    if (isomorphic(g, h)) return;
  pool.push_back(std::move(g));
}

}  // namespace

Catalog pool_build(const std::vector<GroupRef>& seeds, int order_bound, const VarietySpec& variety) {
  if (order_bound < 1) fail(Errc::BoundTooSmall, "order bound must be positive");
  std::vector<GroupRef> pool;
  insert_reduced(pool, make_group(FiniteGroup::trivial()), variety, order_bound);
  // Direct sums of seeds, every product staying within the bound.
  std::vector<GroupRef> products{make_group(FiniteGroup::trivial())};
  for (std::size_t i = 0; i < products.size(); ++i) {
    GroupRef cur = products[i];
    for (const GroupRef& s : seeds) {
      if (static_cast<long>(cur->order()) * s->order() > order_bound) continue;
      GroupRef prod = cur->order() == 1 ? s : direct_sum(cur, s).sum;
      bool fresh = true;
      for (const GroupRef& q : products)
        if (isomorphic(prod, q)) { fresh = false; break; }
      if (fresh) products.push_back(prod);
    }
  }
  for (const GroupRef& g : products) insert_reduced(pool, g, variety, order_bound);
  // Closure under subgroup and quotient.
  for (std::size_t i = 0; i < pool.size(); ++i) {
    GroupRef g = pool[i];
    for (const std::vector<Elt>& s : all_subgroups(*g)) {
      if (static_cast<int>(s.size()) == g->order()) continue;
      insert_reduced(pool, subgroup_view(g, s).group, variety, order_bound);
      if (g->is_normal(s) && s.size() > 1) insert_reduced(pool, quotient(g, s).group, variety, order_bound);
    }
  }
  std::sort(pool.begin(), pool.end(), [](const GroupRef& a, const GroupRef& b) {
    if (a->order() != b->order()) return a->order() < b->order();
    if (a->canonical_key() != b->canonical_key()) return a->canonical_key() < b->canonical_key();
    return a->table_str() < b->table_str();
  });
  Catalog c;
  c.groups = std::move(pool);
  c.variety_name = variety.name;
  c.order_bound = order_bound;
  return c;
}

std::vector<GroupRef> standard_seeds(int order_bound) {
  std::vector<GroupRef> seeds;
  for (int n = 2; n <= order_bound; ++n) seeds.push_back(make_group(FiniteGroup::cyclic(n)));
  if (order_bound >= 6) seeds.push_back(make_group(FiniteGroup::symmetric3()));
  if (order_bound >= 8) {
    seeds.push_back(make_group(FiniteGroup::dihedral(4)));
    seeds.push_back(make_group(FiniteGroup::quaternion8()));
  }
  if (order_bound >= 10) seeds.push_back(make_group(FiniteGroup::dihedral(5)));
  if (order_bound >= 12) {
    seeds.push_back(make_group(FiniteGroup::dihedral(6)));
    seeds.push_back(make_group(FiniteGroup::dicyclic(3)));
    seeds.push_back(make_group(FiniteGroup::alternating4()));
  }
  return seeds;
}

Catalog abelian_pool(int order_bound) {
  std::vector<GroupRef> seeds;
  for (int n = 2; n <= order_bound; ++n) seeds.push_back(make_group(FiniteGroup::cyclic(n)));
  Catalog c = pool_build(seeds, order_bound, VarietySpec::abel());
  return c;
}

Catalog nil2_pool(int p, int order_bound) {
  std::vector<GroupRef> seeds{make_group(FiniteGroup::cyclic(p)),
                              make_group(baer_group(free_nil2_expp(2, p)))};
  return pool_build(seeds, order_bound, VarietySpec::nil_exp(2, p));
}

std::string group_to_text(const FiniteGroup& g) {
  std::ostringstream os;
  os << "order: " << g.order() << "\n" << "unit: " << g.unit() << "\n" << g.table_str();
  return os.str();
}

FiniteGroup parse_group(const std::string& content) {
  std::istringstream is(content);
  std::string line;
  int order = -1, unit = -1;
  std::vector<std::vector<int>> rows;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("order:", 0) == 0) { order = std::stoi(line.substr(6)); continue; }
    if (line.rfind("unit:", 0) == 0) { unit = std::stoi(line.substr(5)); continue; }
    std::istringstream ls(line);
    std::vector<int> row;
    int x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (order < 0 || unit < 0) fail(Errc::ParseError, "group file needs order and unit lines");
  if (static_cast<int>(rows.size()) != order) fail(Errc::ParseError, "group file row count mismatch");
  return FiniteGroup::from_rows(rows, unit);
}

void catalog_save(const Catalog& c, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ostringstream index;
  index << "fingerprint: " << c.fingerprint() << "\n";
  index << "variety: " << c.variety_name << "\n";
  index << "order_bound: " << c.order_bound << "\n";
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    const FiniteGroup& g = *c.groups[i];
    std::ostringstream name;
    name << i;
    std::string file = std::string(3 - std::min<std::size_t>(3, name.str().size()), '0') + name.str() + ".grp";
    std::ofstream out(fs::path(dir) / file);
    out << group_to_text(g);
    index << file << " order=" << g.order() << " exponent=" << g.exponent() << " class=";
    if (g.nilpotency_class()) index << *g.nilpotency_class();
    else index << "-";
    index << " abelian=" << (g.abelian() ? 1 : 0) << "\n";
  }
  std::ofstream(fs::path(dir) / "index.txt") << index.str();
}

Catalog catalog_load(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream index(fs::path(dir) / "index.txt");
  if (!index) fail(Errc::ParseError, "no index.txt in " + dir);
  Catalog c;
  std::string line;
  while (std::getline(index, line)) {
    if (line.rfind("fingerprint:", 0) == 0) continue;
    if (line.rfind("variety:", 0) == 0) {
      c.variety_name = line.substr(8);
      c.variety_name.erase(0, c.variety_name.find_first_not_of(' '));
      continue;
    }
    if (line.rfind("order_bound:", 0) == 0) { c.order_bound = std::stoi(line.substr(12)); continue; }
    std::istringstream ls(line);
    std::string file;
    if (!(ls >> file)) continue;
    std::ifstream gf(fs::path(dir) / file);
    if (!gf) fail(Errc::ParseError, "missing group file " + file);
    std::stringstream buf;
    buf << gf.rdbuf();
    c.groups.push_back(make_group(parse_group(buf.str())));
  }
  return c;
}

}  // namespace amalgam
