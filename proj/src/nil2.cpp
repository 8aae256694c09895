#include "amalgam/nil2.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace amalgam {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

FpVec Nil2Presentation::beta(const FpVec& u, const FpVec& v) const {
  FpVec out(static_cast<std::size_t>(dim_w), 0);
  for (int i = 0; i < dim_v; ++i) {
    if (!u[static_cast<std::size_t>(i)] && !v[static_cast<std::size_t>(i)]) continue;
    for (int j = i + 1; j < dim_v; ++j) {
      int c = (u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
               u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)]) % p;
      if (c < 0) c += p;
      if (!c) continue;
      const FpVec& b = beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int w = 0; w < dim_w; ++w)
        out[static_cast<std::size_t>(w)] =
            static_cast<std::uint8_t>((out[static_cast<std::size_t>(w)] + c * b[static_cast<std::size_t>(w)]) % p);
    }
  }
  return out;
}

unsigned long Nil2Presentation::order() const {
  unsigned long n = 1;
  for (int i = 0; i < dim_v + dim_w; ++i) n *= static_cast<unsigned long>(p);
  return n;
}

void Nil2Presentation::validate() const {
  if (!is_odd_prime(p)) fail(p == 2 ? Errc::EvenPrime : Errc::WrongVariety, "p must be an odd prime");
  if (static_cast<int>(beta_basis.size()) != dim_v) fail(Errc::MalformedDiagram, "beta shape");
  for (const auto& row : beta_basis) {
    if (static_cast<int>(row.size()) != dim_v) fail(Errc::MalformedDiagram, "beta shape");
    for (const FpVec& v : row)
      if (static_cast<int>(v.size()) != dim_w) fail(Errc::MalformedDiagram, "beta entry dimension");
  }
  if (pred.cols() != dim_w || pred.p() != p) fail(Errc::MalformedDiagram, "predicate shape");
  FpMat im = image_span();
  for (int i = 0; i < im.rows(); ++i)
    if (!fp_in_rowspace(pred, im.row(i)))
      fail(Errc::IncompatiblePredicates, "predicate does not contain the commutator image");
}

FpMat Nil2Presentation::image_span() const {
  std::vector<FpVec> rows;
  for (int i = 0; i < dim_v; ++i)
    for (int j = i + 1; j < dim_v; ++j) rows.push_back(beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  FpMat m(static_cast<int>(rows.size()), dim_w, p);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return fp_row_basis(m);
}

std::string Nil2Presentation::str() const {
  std::ostringstream os;
  os << "p: " << p << "\n" << "dimV: " << dim_v << "\n" << "dimW: " << dim_w << "\n";
  for (int w = 0; w < dim_w; ++w) {
    os << "beta[" << w << "]:\n";
    for (int i = 0; i < dim_v; ++i) {
      for (int j = 0; j < dim_v; ++j) {
        int v = 0;
        if (i < j) v = beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(w)];
        else if (j < i) v = (p - beta_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(w)]) % p;
        os << v << (j + 1 == dim_v ? "" : " ");
      }
      os << "\n";
    }
  }
  os << "P:\n";
  for (int i = 0; i < pred.rows(); ++i) {
    for (int j = 0; j < pred.cols(); ++j) os << int(pred.at(i, j)) << (j + 1 == pred.cols() ? "" : " ");
    os << "\n";
  }
  return os.str();
}

Nil2Presentation Nil2Presentation::parse(const std::string& content) {
  std::istringstream is(content);
  std::string line;
  Nil2Presentation pres;
  std::vector<std::vector<std::vector<int>>> mats;  // dim_w matrices dim_v x dim_v
  std::vector<std::vector<int>> pred_rows;
  enum { HDR, BETA, PRED } state = HDR;
  int cur = -1;
  while (std::getline(is, line)) {
    std::size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("p:", 0) == 0) { pres.p = std::stoi(line.substr(2)); continue; }
    if (line.rfind("dimV:", 0) == 0) { pres.dim_v = std::stoi(line.substr(5)); continue; }
    if (line.rfind("dimW:", 0) == 0) { pres.dim_w = std::stoi(line.substr(5)); continue; }
    if (line.rfind("beta[", 0) == 0) { state = BETA; ++cur; mats.emplace_back(); continue; }
    if (line.rfind("P:", 0) == 0) { state = PRED; continue; }
    std::istringstream ls(line);
    std::vector<int> row;
    int x;
    while (ls >> x) row.push_back(x);
    if (state == BETA) mats[static_cast<std::size_t>(cur)].push_back(row);
    else if (state == PRED) pred_rows.push_back(row);
    else fail(Errc::ParseError, "unexpected line in presentation: " + line);
  }
  if (static_cast<int>(mats.size()) != pres.dim_w) fail(Errc::ParseError, "expected dimW beta matrices");
  pres.beta_basis.assign(static_cast<std::size_t>(pres.dim_v),
                         std::vector<FpVec>(static_cast<std::size_t>(pres.dim_v), FpVec(static_cast<std::size_t>(pres.dim_w), 0)));
  for (int w = 0; w < pres.dim_w; ++w)
    for (int i = 0; i < pres.dim_v; ++i)
      for (int j = i + 1; j < pres.dim_v; ++j) {
        int v = mats[static_cast<std::size_t>(w)].at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)) % pres.p;
        if (v < 0) v += pres.p;
        int sym = mats[static_cast<std::size_t>(w)].at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(i)) % pres.p;
        if (sym < 0) sym += pres.p;
        if ((v + sym) % pres.p != 0) fail(Errc::ParseError, "beta matrix not antisymmetric");
        pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(w)] =
            static_cast<std::uint8_t>(v);
      }
  pres.pred = FpMat(static_cast<int>(pred_rows.size()), pres.dim_w, pres.p);
  for (std::size_t i = 0; i < pred_rows.size(); ++i)
    for (int j = 0; j < pres.dim_w; ++j) {
      int v = pred_rows[i].at(static_cast<std::size_t>(j)) % pres.p;
      if (v < 0) v += pres.p;
      pres.pred.at(static_cast<int>(i), j) = static_cast<std::uint8_t>(v);
    }
  pres.pred = fp_row_basis(pres.pred);
  pres.validate();
  return pres;
}

namespace {

Elt mixed_index(const FpVec& v, const FpVec& w, int p) {
  unsigned long idx = 0, stride = 1;
  for (std::uint8_t d : v) {
    idx += d * stride;
    stride *= static_cast<unsigned long>(p);
  }
  for (std::uint8_t d : w) {
    idx += d * stride;
    stride *= static_cast<unsigned long>(p);
  }
  return static_cast<Elt>(idx);
}

void mixed_decode(unsigned long x, int p, int dv, int dw, FpVec& v, FpVec& w) {
  v.assign(static_cast<std::size_t>(dv), 0);
  w.assign(static_cast<std::size_t>(dw), 0);
  for (int i = 0; i < dv; ++i) { v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x % p); x /= static_cast<unsigned long>(p); }
  for (int i = 0; i < dw; ++i) { w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x % p); x /= static_cast<unsigned long>(p); }
}

}  // namespace

Elt Nil2Coords::baer_index(const FpVec& v, const FpVec& w) const { return mixed_index(v, w, pres.p); }

FiniteGroup baer_group(const Nil2Presentation& pres, unsigned long table_cap) {
  pres.validate();
  unsigned long n = pres.order();
  if (n > table_cap) fail(Errc::TableCapExceeded, "baer table order " + std::to_string(n) + " exceeds cap");
  int p = pres.p, dv = pres.dim_v, dw = pres.dim_w;
  int half = (p + 1) / 2;
  unsigned long nv = 1, nw = 1;
  for (int i = 0; i < dv; ++i) nv *= static_cast<unsigned long>(p);
  for (int i = 0; i < dw; ++i) nw *= static_cast<unsigned long>(p);

  // v-block sums and scaled commutator contributions, precomputed.
  std::vector<FpVec> vs(nv);
  for (unsigned long x = 0; x < nv; ++x) {
    FpVec v, w;
    mixed_decode(x, p, dv, 0, v, w);
    vs[x] = v;
  }
  std::vector<FpVec> ws(nw);
  for (unsigned long x = 0; x < nw; ++x) {
    FpVec v, w;
    mixed_decode(x, p, 0, dw, v, w);
    ws[x] = w;
  }
  std::vector<unsigned long> vadd(nv * nv), wadd(nw * nw), half_beta(nv * nv);
  for (unsigned long a = 0; a < nv; ++a)
    for (unsigned long b = 0; b < nv; ++b) {
      FpVec sum = fp_add(vs[a], vs[b], p);
      vadd[a * nv + b] = mixed_index(sum, {}, p);
      FpVec bb = fp_scale(half, pres.beta(vs[a], vs[b]), p);
      half_beta[a * nv + b] = mixed_index(bb, {}, p);
    }
  for (unsigned long a = 0; a < nw; ++a)
    for (unsigned long b = 0; b < nw; ++b) wadd[a * nw + b] = mixed_index(fp_add(ws[a], ws[b], p), {}, p);

  std::vector<Elt> t(n * n);
  for (unsigned long x = 0; x < n; ++x) {
    unsigned long xv = x % nv, xw = x / nv;
    for (unsigned long y = 0; y < n; ++y) {
      unsigned long yv = y % nv, yw = y / nv;
      unsigned long rv = vadd[xv * nv + yv];
      unsigned long rw = wadd[wadd[xw * nw + yw] * nw + half_beta[xv * nv + yv]];
      t[x * n + y] = static_cast<Elt>(rv + nv * rw);
    }
  }
  return FiniteGroup(std::move(t), static_cast<int>(n), 0);
}

Nil2Presentation free_nil2_expp(int k, int p) {
  if (!is_odd_prime(p)) fail(p == 2 ? Errc::EvenPrime : Errc::WrongVariety, "p must be an odd prime");
  if (k < 1) fail(Errc::PreconditionFailed, "rank must be positive");
  Nil2Presentation pres;
  pres.p = p;
  pres.dim_v = k;
  pres.dim_w = k * (k - 1) / 2;
  pres.beta_basis.assign(static_cast<std::size_t>(k),
                         std::vector<FpVec>(static_cast<std::size_t>(k), FpVec(static_cast<std::size_t>(pres.dim_w), 0)));
  int idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(idx++)] = 1;
  pres.pred = FpMat::identity(pres.dim_w, p);
  return pres;
}

namespace {

void require_variety(const FiniteGroup& g, int p) {
  if (!is_odd_prime(p)) fail(p == 2 ? Errc::EvenPrime : Errc::WrongVariety, "p must be an odd prime");
  unsigned long e = g.exponent();
  if (e != 1 && e != static_cast<unsigned long>(p))
    fail(Errc::WrongVariety, "exponent " + std::to_string(e) + " is not " + std::to_string(p));
  auto c = g.nilpotency_class();
  if (!c || *c > 2) fail(Errc::WrongVariety, "group is not nilpotent of class <= 2");
}

// F_p-basis of an elementary abelian subgroup (given as sorted elements).
std::vector<Elt> fp_basis_of_subgroup(const FiniteGroup& g, const std::vector<Elt>& sub) {
  std::vector<Elt> basis;
  std::vector<Elt> span{g.unit()};
  for (Elt x : sub) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    basis.push_back(x);
    std::vector<Elt> seed = span;
    seed.push_back(x);
    span = g.subgroup_generated(seed);
  }
  return basis;
}

}  // namespace

Nil2Coords presentation_with_center(GroupRef gref, int p, const std::vector<Elt>& w_subgroup) {
  const FiniteGroup& g = *gref;
  require_variety(g, p);
  std::vector<Elt> w_sub = w_subgroup;
  std::sort(w_sub.begin(), w_sub.end());
  if (!g.is_subgroup(w_sub)) fail(Errc::NotSubgroup, "designated W is not a subgroup");
  const std::vector<Elt>& der = g.derived();
  const std::vector<Elt>& cen = g.center();
  if (!std::includes(w_sub.begin(), w_sub.end(), der.begin(), der.end()))
    fail(Errc::PreconditionFailed, "designated W must contain the derived subgroup");
  if (!std::includes(cen.begin(), cen.end(), w_sub.begin(), w_sub.end()))
    fail(Errc::PreconditionFailed, "designated W must be central");

  Nil2Coords out;
  out.group = gref;
  Nil2Presentation& pres = out.pres;
  pres.p = p;

  // W basis and coordinates.
  std::vector<Elt> w_basis = fp_basis_of_subgroup(g, w_sub);
  int dw = static_cast<int>(w_basis.size());
  pres.dim_w = dw;
  std::map<Elt, FpVec> w_coord;
  {
    FpVec c(static_cast<std::size_t>(dw), 0);
    std::function<void(int, Elt)> rec = [&](int i, Elt acc) {
      if (i == dw) {
        w_coord[acc] = c;
        return;
      }
      Elt cur = acc;
      for (int v = 0; v < p; ++v) {
        c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        rec(i + 1, cur);
        cur = g.mul(cur, w_basis[static_cast<std::size_t>(i)]);
      }
      c[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, g.unit());
    if (w_coord.size() != w_sub.size()) fail(Errc::PreconditionFailed, "W basis does not enumerate W");
  }

  // V basis: representatives with independent images in G/W.
  std::vector<Elt> v_basis;
  std::vector<Elt> span = w_sub;
  while (span.size() < static_cast<std::size_t>(g.order())) {
    Elt pick = 0;
    bool found = false;
    for (int x = 0; x < g.order() && !found; ++x)
      if (!std::binary_search(span.begin(), span.end(), static_cast<Elt>(x))) {
        pick = static_cast<Elt>(x);
        found = true;
      }
    v_basis.push_back(pick);
    std::vector<Elt> seed = span;
    seed.push_back(pick);
    span = g.subgroup_generated(seed);
  }
  int dv = static_cast<int>(v_basis.size());
  pres.dim_v = dv;

  // Commutator form on the representatives.
  pres.beta_basis.assign(static_cast<std::size_t>(dv),
                         std::vector<FpVec>(static_cast<std::size_t>(dv), FpVec(static_cast<std::size_t>(dw), 0)));
  for (int i = 0; i < dv; ++i)
    for (int j = i + 1; j < dv; ++j) {
      Elt c = g.comm(v_basis[static_cast<std::size_t>(i)], v_basis[static_cast<std::size_t>(j)]);
      auto it = w_coord.find(c);
      if (it == w_coord.end()) fail(Errc::PreconditionFailed, "commutator escapes W");
      pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
    }
  pres.pred = FpMat::identity(dw, p);

  // Sections and the exponential correction mu(v) = -(1/2) sum_{i<j}
  // v_i v_j [g_i, g_j]; with it, (v,w) -> s(v) h(w + mu(v)) is an
  // isomorphism from the Baer group.
  unsigned long nv = 1, nw = 1;
  for (int i = 0; i < dv; ++i) nv *= static_cast<unsigned long>(p);
  for (int i = 0; i < dw; ++i) nw *= static_cast<unsigned long>(p);
  if (nv * nw != static_cast<unsigned long>(g.order())) fail(Errc::PreconditionFailed, "V/W dimensions inconsistent");
  int half = (p + 1) / 2;

  out.elem_at.assign(nv * nw, 0);
  out.v_of.assign(static_cast<std::size_t>(g.order()), {});
  out.w_of.assign(static_cast<std::size_t>(g.order()), {});
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  FpVec v, w;
  for (unsigned long x = 0; x < nv * nw; ++x) {
    mixed_decode(x, p, dv, dw, v, w);
    // mu(v)
    FpVec mu(static_cast<std::size_t>(dw), 0);
    for (int i = 0; i < dv; ++i) {
      if (!v[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < dv; ++j) {
        int c = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] % p;
        if (!c) continue;
        c = c * half % p;
        const FpVec& b = pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        for (int t = 0; t < dw; ++t)
          mu[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(
              (mu[static_cast<std::size_t>(t)] + (p - 1) * c % p * b[static_cast<std::size_t>(t)]) % p);
      }
    }
    Elt e = g.unit();
    for (int i = 0; i < dv; ++i)
      e = g.mul(e, g.pow(v_basis[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]));
    FpVec wm = fp_add(w, mu, p);
    for (int i = 0; i < dw; ++i)
      e = g.mul(e, g.pow(w_basis[static_cast<std::size_t>(i)], wm[static_cast<std::size_t>(i)]));
    out.elem_at[x] = e;
    if (seen[e]) fail(Errc::PreconditionFailed, "Baer coordinatization is not bijective");
    seen[e] = 1;
    out.v_of[e] = v;
    out.w_of[e] = w;
  }
  return out;
}

Nil2Coords presentation_of(GroupRef g, int p) { return presentation_with_center(g, p, g->derived()); }

std::vector<Elt> predicate_subgroup(const Nil2Coords& c, const FpMat& rows) {
  FpMat basis = fp_row_basis(rows);
  int k = basis.rows(), p = c.pres.p;
  std::vector<Elt> out;
  FpVec zero_v(static_cast<std::size_t>(c.pres.dim_v), 0);
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  for (;;) {
    FpVec w(static_cast<std::size_t>(c.pres.dim_w), 0);
    for (int i = 0; i < k; ++i)
      if (digits[static_cast<std::size_t>(i)]) w = fp_add(w, fp_scale(digits[static_cast<std::size_t>(i)], basis.row(i), p), p);
    out.push_back(c.elem_at[c.baer_index(zero_v, w)]);
    int i = 0;
    while (i < k) {
      if (++digits[static_cast<std::size_t>(i)] < p) break;
      digits[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == k) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_amalgamation_base(const FiniteGroup& g) {
  if (g.order() == 1) return true;
  int p = static_cast<int>(g.exponent());
  require_variety(g, p);
  return g.derived() == g.center();
}

BaseEmbedding embed_into_amalg_base(GroupRef g0, unsigned long table_cap) {
  const FiniteGroup& g = *g0;
  if (g.order() == 1 || g.derived() == g.center()) return {g0, Morphism::identity(g0)};
  int p = static_cast<int>(g.exponent());
  require_variety(g, p);

  Nil2Coords c0 = presentation_with_center(g0, p, g.derived());
  int dv = c0.pres.dim_v, dw = c0.pres.dim_w;

  // Radical of beta0: the image of Z(G0) in V; its complement basis stays
  // untouched while each radical direction gets a fresh partner.
  FpMat pairing(dv, dv * std::max(dw, 1), p);
  for (int i = 0; i < dv; ++i)
    for (int j = 0; j < dv; ++j) {
      FpVec b(static_cast<std::size_t>(dw), 0);
      if (i < j) b = c0.pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      else if (j < i) b = fp_scale(p - 1, c0.pres.beta_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], p);
      for (int t = 0; t < dw; ++t) pairing.at(i, j * std::max(dw, 1) + t) = b[static_cast<std::size_t>(t)];
    }
  FpMat rad = dw == 0 ? FpMat::identity(dv, p) : fp_kernel(pairing);
  int k = rad.rows();
  if (k == 0) fail(Errc::PreconditionFailed, "nondegenerate form with G' != Z(G)");

  // Radical coordinates T : V -> F_p^k relative to rad + complement.
  FpMat comp = fp_extend_basis(rad, dv, p);
  FpMat basis_change(dv, dv, p);
  for (int i = 0; i < k; ++i) basis_change.set_row(i, rad.row(i));
  for (int i = 0; i < comp.rows(); ++i) basis_change.set_row(k + i, comp.row(i));
  std::vector<FpVec> rad_coord(static_cast<std::size_t>(dv));
  for (int a = 0; a < dv; ++a) {
    FpVec e(static_cast<std::size_t>(dv), 0);
    e[static_cast<std::size_t>(a)] = 1;
    FpVec x;
    if (!fp_solve(basis_change, e, x)) fail(Errc::PreconditionFailed, "basis change failed");
    rad_coord[static_cast<std::size_t>(a)] = FpVec(x.begin(), x.begin() + k);
  }

  Nil2Presentation pres3;
  pres3.p = p;
  pres3.dim_v = dv + k;
  pres3.dim_w = std::max(dw, 1);
  pres3.beta_basis.assign(static_cast<std::size_t>(pres3.dim_v),
                          std::vector<FpVec>(static_cast<std::size_t>(pres3.dim_v),
                                             FpVec(static_cast<std::size_t>(pres3.dim_w), 0)));
  for (int i = 0; i < dv; ++i)
    for (int j = i + 1; j < dv; ++j) {
      FpVec b = c0.pres.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      b.resize(static_cast<std::size_t>(pres3.dim_w), 0);
      pres3.beta_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b;
    }
  // beta3(e_a, f_j) = T(e_a)_j * u_j, u_j cycling over a basis of W3.
  for (int a = 0; a < dv; ++a)
    for (int j = 0; j < k; ++j) {
      int coef = rad_coord[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
      if (!coef) continue;
      FpVec u(static_cast<std::size_t>(pres3.dim_w), 0);
      u[static_cast<std::size_t>(j % pres3.dim_w)] = 1;
      pres3.beta_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(dv + j)] = fp_scale(coef, u, p);
    }
  pres3.pred = FpMat::identity(pres3.dim_w, p);

  GroupRef g1 = make_group(baer_group(pres3, table_cap));
  if (!is_amalgamation_base(*g1)) fail(Errc::PreconditionFailed, "constructed group is not a base");

  // Embedding: pad V coordinates, carry W coordinates over.
  std::vector<Elt> map(static_cast<std::size_t>(g.order()));
  for (int x = 0; x < g.order(); ++x) {
    FpVec v = c0.v_of[static_cast<std::size_t>(x)];
    v.resize(static_cast<std::size_t>(pres3.dim_v), 0);
    FpVec w = c0.w_of[static_cast<std::size_t>(x)];
    w.resize(static_cast<std::size_t>(pres3.dim_w), 0);
    map[static_cast<std::size_t>(x)] = mixed_index(v, w, p);
  }
  Morphism e(g0, g1, std::move(map));
  if (!e.injective()) fail(Errc::PreconditionFailed, "base embedding not injective");
  return {g1, std::move(e)};
}

namespace {

// Linear map V3 -> W3 given on the rows of `on` (image rows in `img`),
// zero on a complement; returns dimV3 x dimW3.
FpMat extend_linear(const FpMat& on, const FpMat& img, int dim_v, int dim_w, int p) {
  FpMat comp = fp_extend_basis(fp_row_basis(on), dim_v, p);
  FpMat full(on.rows() + comp.rows(), dim_v, p);
  for (int i = 0; i < on.rows(); ++i) full.set_row(i, on.row(i));
  for (int i = 0; i < comp.rows(); ++i) full.set_row(on.rows() + i, comp.row(i));
  FpMat out(dim_v, dim_w, p);
  for (int a = 0; a < dim_v; ++a) {
    FpVec e(static_cast<std::size_t>(dim_v), 0);
    e[static_cast<std::size_t>(a)] = 1;
    FpVec x;
    if (!fp_solve(full, e, x)) fail(Errc::PreconditionFailed, "linear extension failed");
    FpVec acc(static_cast<std::size_t>(dim_w), 0);
    for (int i = 0; i < on.rows(); ++i)
      if (x[static_cast<std::size_t>(i)]) acc = fp_add(acc, fp_scale(x[static_cast<std::size_t>(i)], img.row(i), p), p);
    out.set_row(a, acc);
  }
  return out;
}

}  // namespace

Nil2Amalgam nil2_amalgam(const Morphism& e1, const Morphism& e2, const std::vector<Elt>& pred1,
                         const std::vector<Elt>& pred2, unsigned long table_cap) {
  if (e1.source().table() != e2.source().table())
    fail(Errc::PreconditionFailed, "the two embeddings must share G0");
  if (!e1.injective() || !e2.injective()) fail(Errc::NotInjective, "amalgam needs injective embeddings");
  GroupRef g0 = e1.source_ref(), g1 = e1.target_ref(), g2 = e2.target_ref();
  int p = static_cast<int>(std::max({g0->exponent(), g1->exponent(), g2->exponent()}));
  require_variety(*g1, p);
  require_variety(*g2, p);
  if (g0->order() > 1) require_variety(*g0, p);

  auto check_pred = [&](const FiniteGroup& g, std::vector<Elt> pr) {
    std::sort(pr.begin(), pr.end());
    if (!g.is_subgroup(pr)) fail(Errc::PreconditionFailed, "predicate is not a subgroup");
    const std::vector<Elt>& der = g.derived();
    const std::vector<Elt>& cen = g.center();
    if (!std::includes(pr.begin(), pr.end(), der.begin(), der.end()) ||
        !std::includes(cen.begin(), cen.end(), pr.begin(), pr.end()))
      fail(Errc::PreconditionFailed, "predicate must sit between G' and Z(G)");
    return pr;
  };
  std::vector<Elt> p1 = check_pred(*g1, pred1);
  std::vector<Elt> p2 = check_pred(*g2, pred2);

  // Common preimage: the designated central part of G0.
  std::vector<Elt> w0a, w0b;
  for (int x = 0; x < g0->order(); ++x) {
    if (std::binary_search(p1.begin(), p1.end(), e1(static_cast<Elt>(x)))) w0a.push_back(static_cast<Elt>(x));
    if (std::binary_search(p2.begin(), p2.end(), e2(static_cast<Elt>(x)))) w0b.push_back(static_cast<Elt>(x));
  }
  if (w0a != w0b)
    fail(Errc::IncompatiblePredicates, "P(G1) and P(G2) restrict differently to G0");

  Nil2Coords c0 = presentation_with_center(g0, p, w0a);
  Nil2Coords c1 = presentation_with_center(g1, p, p1);
  Nil2Coords c2 = presentation_with_center(g2, p, p2);

  // Coordinate form of the embeddings.
  auto coord_maps = [&](const Morphism& e, const Nil2Coords& ct) {
    FpMat fv(c0.pres.dim_v, ct.pres.dim_v, p), fw(c0.pres.dim_w, ct.pres.dim_w, p);
    for (int i = 0; i < c0.pres.dim_v; ++i) {
      FpVec ei(static_cast<std::size_t>(c0.pres.dim_v), 0);
      ei[static_cast<std::size_t>(i)] = 1;
      FpVec z(static_cast<std::size_t>(c0.pres.dim_w), 0);
      Elt rep = c0.elem_at[c0.baer_index(ei, z)];
      fv.set_row(i, ct.v_of[e(rep)]);
    }
    for (int i = 0; i < c0.pres.dim_w; ++i) {
      FpVec z(static_cast<std::size_t>(c0.pres.dim_v), 0);
      FpVec ei(static_cast<std::size_t>(c0.pres.dim_w), 0);
      ei[static_cast<std::size_t>(i)] = 1;
      Elt rep = c0.elem_at[c0.baer_index(z, ei)];
      FpVec vpart = ct.v_of[e(rep)];
      for (std::uint8_t d : vpart)
        if (d) fail(Errc::IncompatiblePredicates, "central part of G0 escapes the predicate");
      fw.set_row(i, ct.w_of[e(rep)]);
    }
    if (fp_rank(fv) != c0.pres.dim_v || (c0.pres.dim_w && fp_rank(fw) != c0.pres.dim_w))
      fail(Errc::PreconditionFailed, "embedding does not split along the predicate");
    return std::pair<FpMat, FpMat>{fv, fw};
  };
  auto [fv1, fw1] = coord_maps(e1, c1);
  auto [fv2, fw2] = coord_maps(e2, c2);

  FpPushout pv = fp_pushout(fv1, fv2);
  FpPushout pw = fp_pushout(fw1, fw2);

  Nil2Presentation pres3;
  pres3.p = p;
  pres3.dim_v = pv.dim3;
  pres3.dim_w = pw.dim3;
  pres3.beta_basis.assign(static_cast<std::size_t>(pres3.dim_v),
                          std::vector<FpVec>(static_cast<std::size_t>(pres3.dim_v),
                                             FpVec(static_cast<std::size_t>(pres3.dim_w), 0)));
  int d1 = c1.pres.dim_v;
  // V3 basis: V1 block (leg1 is [I|0]), then the complement image of V2.
  const FpMat& comp2 = pv.comp2;
  for (int a = 0; a < d1; ++a)
    for (int b = a + 1; b < d1; ++b)
      pres3.beta_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          fp_apply(c1.pres.beta_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], pw.leg1);
  for (int i = 0; i < comp2.rows(); ++i)
    for (int j = i + 1; j < comp2.rows(); ++j)
      pres3.beta_basis[static_cast<std::size_t>(d1 + i)][static_cast<std::size_t>(d1 + j)] =
          fp_apply(c2.pres.beta(comp2.row(i), comp2.row(j)), pw.leg2);
  for (int a = 0; a < d1; ++a) {
    FpVec ea(static_cast<std::size_t>(d1), 0);
    ea[static_cast<std::size_t>(a)] = 1;
    FpVec u;
    if (!fp_solve(fv1, ea, u)) continue;  // outside the common image: cross pairs stay zero
    FpVec in2 = fp_apply(u, fv2);
    for (int i = 0; i < comp2.rows(); ++i)
      pres3.beta_basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(d1 + i)] =
          fp_apply(c2.pres.beta(in2, comp2.row(i)), pw.leg2);
  }
  // Predicate: span of both images.
  {
    FpMat pr(c1.pres.pred.rows() + c2.pres.pred.rows(), pres3.dim_w, p);
    for (int i = 0; i < c1.pres.pred.rows(); ++i) pr.set_row(i, fp_apply(c1.pres.pred.row(i), pw.leg1));
    for (int i = 0; i < c2.pres.pred.rows(); ++i)
      pr.set_row(c1.pres.pred.rows() + i, fp_apply(c2.pres.pred.row(i), pw.leg2));
    pres3.pred = fp_row_basis(pr);
  }
  pres3.validate();
  GroupRef g3 = make_group(baer_group(pres3, table_cap));

  auto leg = [&](const Nil2Coords& ct, const FpMat& gv, const FpMat& gw, GroupRef src) {
    std::vector<Elt> map(static_cast<std::size_t>(src->order()));
    for (int x = 0; x < src->order(); ++x)
      map[static_cast<std::size_t>(x)] =
          mixed_index(fp_apply(ct.v_of[static_cast<std::size_t>(x)], gv), fp_apply(ct.w_of[static_cast<std::size_t>(x)], gw), p);
    return Morphism(src, g3, std::move(map));
  };
  Morphism j1 = leg(c1, pv.leg1, pw.leg1, g1);
  Morphism j2 = leg(c2, pv.leg2, pw.leg2, g2);

  // Central twist aligning the two composites over G0.
  {
    FpMat on(c0.pres.dim_v, pres3.dim_v, p), img(c0.pres.dim_v, pres3.dim_w, p);
    bool need = false;
    for (int i = 0; i < c0.pres.dim_v; ++i) {
      FpVec ei(static_cast<std::size_t>(c0.pres.dim_v), 0);
      ei[static_cast<std::size_t>(i)] = 1;
      FpVec z(static_cast<std::size_t>(c0.pres.dim_w), 0);
      Elt rep = c0.elem_at[c0.baer_index(ei, z)];
      Elt a = j1(e1(rep)), b = j2(e2(rep));
      FpVec va, wa, vb, wb;
      mixed_decode(a, p, pres3.dim_v, pres3.dim_w, va, wa);
      mixed_decode(b, p, pres3.dim_v, pres3.dim_w, vb, wb);
      if (va != vb) fail(Errc::PreconditionFailed, "pushout V legs disagree");
      on.set_row(i, va);
      img.set_row(i, fp_sub(wa, wb, p));
      if (wa != wb) need = true;
    }
    if (need) {
      FpMat eps = extend_linear(on, img, pres3.dim_v, pres3.dim_w, p);
      std::vector<Elt> tw(static_cast<std::size_t>(g3->order()));
      for (int x = 0; x < g3->order(); ++x) {
        FpVec v, w;
        mixed_decode(static_cast<unsigned long>(x), p, pres3.dim_v, pres3.dim_w, v, w);
        tw[static_cast<std::size_t>(x)] = mixed_index(v, fp_add(w, fp_apply(v, eps), p), p);
      }
      Morphism tau(g3, g3, std::move(tw));
      j2 = j2.then(tau);
    }
  }
  for (int x = 0; x < g0->order(); ++x)
    if (j1(e1(static_cast<Elt>(x))) != j2(e2(static_cast<Elt>(x))))
      fail(Errc::PreconditionFailed, "amalgam square does not commute");
  if (!j1.injective() || !j2.injective()) fail(Errc::PreconditionFailed, "amalgam legs not injective");

  // Predicate restriction identity P(G0) = P(G3) ∩ j(G0); for a fresh
  // Baer group the element index is the coordinate index.
  {
    auto in_pred3 = [&](Elt x) {
      FpVec v, w;
      mixed_decode(x, p, pres3.dim_v, pres3.dim_w, v, w);
      for (std::uint8_t dgt : v)
        if (dgt) return false;
      return fp_in_rowspace(pres3.pred, w);
    };
    for (int x = 0; x < g0->order(); ++x) {
      bool in0 = std::binary_search(w0a.begin(), w0a.end(), static_cast<Elt>(x));
      if (in_pred3(j1(e1(static_cast<Elt>(x)))) != in0)
        fail(Errc::PreconditionFailed, "predicate restriction identity fails");
    }
  }
  return {g3, std::move(j1), std::move(j2), pres3};
}

}  // namespace amalgam
