#include "punip/extensions.hpp"

#include <algorithm>
#include <thread>

#include "punip/error.hpp"

namespace punip {

namespace {

std::vector<std::size_t> iota_map(std::size_t n, std::size_t shift = 0) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = shift + i;
  return m;
}

Presentation primed(const Presentation& G) {
  std::vector<std::string> vars;
  for (const auto& v : G.vars()) vars.push_back(v + "'");
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (const auto& l : G.leads()) leads.emplace_back(std::make_pair(l.var, l.power));
  return Presentation(G.name() + "'", G.field(), vars, G.relations(), leads);
}

// Every relation of `a` lies in the additive relation module of `b`.
bool relations_implied(const Presentation& a, const Presentation& b) {
  for (const auto& r : a.relations())
    if (!reduce(r.moved_to(b.field()), b).is_zero()) return false;
  return true;
}

}  // namespace

Presentation ConnectingExtension::fiber() const {
  return Presentation("ker", base.field(), fiber_vars, {fiber_relation});
}

ConnectingExtension delta_extension(const Presentation& G, const PPoly& F, const std::vector<std::string>& fiber_vars,
                                    const PPoly& chi, std::string name) {
  if (F.arity() != fiber_vars.size()) throw DomainError("arity mismatch: fiber relation vs fiber variables");
  if (chi.arity() != G.arity()) throw DomainError("arity mismatch: character vs base group");
  std::size_t m = fiber_vars.size();
  std::size_t n = m + G.arity();
  std::vector<std::string> vars = fiber_vars;
  vars.insert(vars.end(), G.vars().begin(), G.vars().end());
  auto mg = iota_map(G.arity(), m);
  std::vector<PPoly> rels;
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (std::size_t r = 0; r < G.relations().size(); ++r) {
    rels.push_back(G.relations()[r].remapped(mg, n));
    leads.emplace_back(std::make_pair(mg[G.leads()[r].var], G.leads()[r].power));
  }
  PPoly Fm = F.moved_to(G.field());
  rels.push_back(Fm.remapped(iota_map(m), n) - chi.moved_to(G.field()).remapped(mg, n));
  leads.emplace_back(std::nullopt);
  if (name.empty()) name = "delta_" + G.name();
  Presentation E(std::move(name), G.field(), vars, rels, leads);
  return ConnectingExtension{G, Fm, fiber_vars, chi, E};
}

std::vector<RatFunc> TwistedExtension::multiply(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) const {
  std::size_t m = fiber_arity(), k = base.arity();
  if (a.size() != m + k || b.size() != m + k) throw DomainError("point does not match the carrier");
  std::vector<RatFunc> gg(a.begin() + static_cast<std::ptrdiff_t>(m), a.end());
  gg.insert(gg.end(), b.begin() + static_cast<std::ptrdiff_t>(m), b.end());
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(a[i] + b[i] + cocycle[i].eval(gg));
  for (std::size_t i = m; i < m + k; ++i) out.push_back(a[i] + b[i]);
  return out;
}

std::vector<std::string> doubled_names(const Presentation& G) {
  std::vector<std::string> names = G.vars();
  for (const auto& v : G.vars()) names.push_back(v + "'");
  return names;
}

int map_image_residue(const Presentation& domain, const PolyMap& h, const Presentation& W, GPoly* residue) {
  if (h.size() != W.arity()) throw DomainError("map has " + std::to_string(h.size()) + " components, " + W.name() +
                                               " has " + std::to_string(W.arity()) + " variables");
  for (const auto& c : h)
    if (c.nvars() != domain.arity()) throw DomainError("map components must use the variables of " + domain.name());
  for (std::size_t r = 0; r < W.relations().size(); ++r) {
    GPoly img = GPoly::from_ppoly(W.relations()[r].moved_to(domain.field())).substitute(h);
    GPoly red = reduce(img, domain);
    if (!red.is_zero()) {
      if (residue) *residue = red;
      return static_cast<int>(r);
    }
  }
  return -1;
}

int cocycle_image_residue(const Presentation& G, const PolyMap& h, const Presentation& W, GPoly* residue) {
  return map_image_residue(product(G, primed(G)), h, W, residue);
}

TwistedExtension twisted_group(const Presentation& G, const PolyMap& h, const Presentation& W, std::string name) {
  std::size_t k = G.arity();
  if (!polymap_multiadditive_check(h, {iota_map(k), iota_map(k, k)}))
    throw DomainError("cocycle is not bi-additive");
  GPoly residue;
  int bad = cocycle_image_residue(G, h, W, &residue);
  if (bad >= 0)
    throw DomainError("cocycle does not land in " + W.name() + ": relation " + std::to_string(bad) + " leaves " +
                      residue.to_string(doubled_names(G)));
  Presentation carrier = product(W, G, name.empty() ? "X_h" : std::move(name));
  return TwistedExtension{carrier, G, W, h};
}

bool associativity_check(const TwistedExtension& t) {
  std::size_t k = t.base.arity();
  const Field& f = t.base.field();
  auto v = [&](std::size_t i) { return GPoly::var(f, 3 * k, i); };
  std::vector<GPoly> s12, s12_3, s1_23, s23;
  for (std::size_t i = 0; i < k; ++i) {
    s12.push_back(v(i));
    s12_3.push_back(v(i) + v(k + i));
    s1_23.push_back(v(i));
    s23.push_back(v(k + i));
  }
  for (std::size_t i = 0; i < k; ++i) {
    s12.push_back(v(k + i));
    s12_3.push_back(v(2 * k + i));
    s1_23.push_back(v(k + i) + v(2 * k + i));
    s23.push_back(v(2 * k + i));
  }
  for (const auto& h : t.cocycle) {
    GPoly lhs = h.substitute(s12) + h.substitute(s12_3);
    GPoly rhs = h.substitute(s1_23) + h.substitute(s23);
    if (!(lhs - rhs).is_zero()) return false;
  }
  return true;
}

CommutatorMap commutator_map(const TwistedExtension& t) {
  std::size_t k = t.base.arity();
  const Field& f = t.base.field();
  std::vector<GPoly> swap;
  for (std::size_t i = 0; i < 2 * k; ++i) swap.push_back(GPoly::var(f, 2 * k, (i + k) % (2 * k)));
  CommutatorMap c;
  for (const auto& h : t.cocycle) c.map.push_back(h - h.substitute(swap));
  return c;
}

bool vanishes_on_diagonal(const CommutatorMap& c) {
  for (const auto& comp : c.map) {
    std::size_t k = comp.nvars() / 2;
    std::vector<GPoly> diag;
    for (std::size_t i = 0; i < 2 * k; ++i) diag.push_back(GPoly::var(comp.field(), k, i % k));
    if (!comp.substitute(diag).is_zero()) return false;
  }
  return true;
}

PolyMap biadditive_b(const Field& f) {
  auto p = static_cast<std::size_t>(f->p);
  PolyMap b;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) b.push_back(GPoly::var(f, 2 * p, i) * GPoly::var(f, 2 * p, p + j));
  return b;
}

PolyMap cocycle_h0(const Presentation& G) {
  auto p = static_cast<std::size_t>(G.field()->p);
  if (G.arity() != 3 * p) throw DomainError("h0 expects a product of three V_1 groups");
  std::size_t k = G.arity();
  // b(v1, v2'): v1 = first block of g, v2' = second block of g'.
  std::vector<GPoly> subs;
  for (std::size_t i = 0; i < p; ++i) subs.push_back(GPoly::var(G.field(), 2 * k, i));
  for (std::size_t j = 0; j < p; ++j) subs.push_back(GPoly::var(G.field(), 2 * k, k + p + j));
  PolyMap h;
  for (const auto& c : biadditive_b(G.field())) h.push_back(c.substitute(subs));
  return h;
}

TwistedExtension baer_sum(const TwistedExtension& U1, const ConnectingExtension& U2, const Presentation& W) {
  const Presentation& G = U1.base;
  if (!(U2.base == G)) throw DomainError("shape mismatch: extensions of different base groups");
  if (U1.fiber.arity() != W.arity() || U2.fiber_vars.size() != W.arity())
    throw DomainError("shape mismatch: fiber arity");
  if (!(U1.carrier == product(U1.fiber, G))) throw DomainError("shape mismatch: first extension is not a trivial torsor");
  Presentation F2 = U2.fiber();
  Presentation Wr(W.name(), W.field(), F2.vars(), W.relations());
  if (!relations_implied(F2, Wr) || !relations_implied(Wr, F2))
    throw DomainError("shape mismatch: second extension has a different fiber");

  // Fiber product U1 x_G U2 in (w, z, g); the map (w, z, g) -> (w + z, g)
  // must land in U2's carrier.
  std::size_t m = W.arity(), k = G.arity(), n = 2 * m + k;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < m; ++i) vars.push_back("w" + std::to_string(i));
  for (std::size_t i = 0; i < m; ++i) vars.push_back("z" + std::to_string(i));
  vars.insert(vars.end(), G.vars().begin(), G.vars().end());
  auto mw = iota_map(m), mz = iota_map(m, m), mg = iota_map(k, 2 * m);
  std::vector<PPoly> rels;
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (std::size_t r = 0; r < W.relations().size(); ++r) {
    rels.push_back(W.relations()[r].remapped(mw, n));
    leads.emplace_back(std::make_pair(mw[W.leads()[r].var], W.leads()[r].power));
  }
  for (std::size_t r = 0; r < G.relations().size(); ++r) {
    rels.push_back(G.relations()[r].remapped(mg, n));
    leads.emplace_back(std::make_pair(mg[G.leads()[r].var], G.leads()[r].power));
  }
  rels.push_back(U2.fiber_relation.remapped(mz, n) - U2.chi.remapped(mg, n));
  leads.emplace_back(std::nullopt);
  Presentation fp("U1xU2", G.field(), vars, rels, leads);

  std::vector<PPoly> phi;
  for (std::size_t i = 0; i < m; ++i) phi.push_back(PPoly::var(G.field(), n, i) + PPoly::var(G.field(), n, m + i));
  for (std::size_t i = 0; i < k; ++i) phi.push_back(PPoly::var(G.field(), n, 2 * m + i));
  for (const auto& r : U2.result.relations())
    if (!reduce(ppoly_compose(r, phi), fp).is_zero())
      throw Error("the identification (w, z) -> w + z does not land in the second extension");

  Presentation carrier = U2.result.renamed("U");
  return TwistedExtension{carrier, G, W, U1.cocycle};
}

bool torsor_carrier_equal(const TwistedExtension& a, const ConnectingExtension& b) {
  if (a.carrier.arity() != b.result.arity()) return false;
  Presentation br(b.result.name(), b.result.field(), a.carrier.vars(), b.result.relations());
  return relations_implied(a.carrier, br) && relations_implied(br, a.carrier);
}

DerivedEvidence derived_contains_fiber_evidence(const TwistedExtension& t, const MonomialBasis& B,
                                                const MonomialBasis& Bprime, unsigned jobs) {
  DerivedEvidence ev;
  PointSpace gp = points(t.base, B);
  PointSpace wp = points(t.fiber, Bprime);
  ev.base_points = gp.dim();
  ev.fiber_points_dim = wp.dim();
  CommutatorMap c = commutator_map(t);
  const auto& pts = gp.basis_points;
  std::size_t np = pts.size();
  // The commutator is F_p-bilinear, so basis pairs span all values.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = i + 1; j < np; ++j) pairs.emplace_back(i, j);
  ev.pairs = pairs.size();

  std::size_t m = t.fiber_arity(), b = Bprime.size();
  std::vector<std::optional<FpVector>> values(pairs.size());
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t q = start; q < pairs.size(); q += stride) {
      std::vector<RatFunc> x = pts[pairs[q].first];
      x.insert(x.end(), pts[pairs[q].second].begin(), pts[pairs[q].second].end());
      FpVector v(m * b, 0);
      bool inside = true;
      for (std::size_t w = 0; w < m && inside; ++w) {
        auto e = expand_in_basis(c.map[w].eval(x), Bprime);
        if (!e) {
          inside = false;
          break;
        }
        std::copy(e->begin(), e->end(), v.begin() + static_cast<std::ptrdiff_t>(w * b));
      }
      if (inside) values[q] = std::move(v);
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s) pool.emplace_back(work, s, threads);
    for (auto& th : pool) th.join();
  }

  FpSystem span(t.base.field()->p, m * b);
  for (const auto& v : values) {
    if (!v) {
      ++ev.outside_truncation;
      continue;
    }
    std::vector<std::pair<std::uint32_t, int>> row;
    for (std::size_t i = 0; i < v->size(); ++i)
      if ((*v)[i]) row.emplace_back(static_cast<std::uint32_t>(i), (*v)[i]);
    span.add_row(row);
  }
  ev.span_dim = span.rank();
  return ev;
}

}  // namespace punip
