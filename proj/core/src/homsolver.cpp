#include "punip/homsolver.hpp"

#include <map>

#include "punip/error.hpp"

namespace punip {

std::string Ansatz::describe() const {
  return "powers <= p^" + std::to_string(max_power) + ", coefficients in span of " + coeff_basis.description;
}

namespace {

// Powers allowed for a source variable: below its designated power, and none
// at all for variables eliminated linearly.
int top_power(const Presentation& src, std::size_t v, int max_power) {
  auto d = src.lead_power(v);
  if (!d) return max_power;
  return std::min(max_power, *d - 1);
}

}  // namespace

HomTuple HomSpace::decode(const FpVector& v) const {
  HomTuple t = HomTuple::zero(src, tgt);
  std::size_t b = ansatz.coeff_basis.size();
  for (std::size_t k = 0; k < interpretation.size(); k += b) {
    const UnknownInfo& u = interpretation[k];
    RatFunc c = ansatz.coeff_basis.combine(v, k);
    if (!c.is_zero()) t.coords[u.tgt_coord].add_term(u.src_var, u.power, c);
  }
  return t;
}

std::optional<FpVector> HomSpace::encode(const HomTuple& t) const {
  if (t.coords.size() != tgt.arity()) return std::nullopt;
  std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> offset;
  std::size_t b = ansatz.coeff_basis.size();
  for (std::size_t k = 0; k < interpretation.size(); k += b) {
    const UnknownInfo& u = interpretation[k];
    offset[{u.tgt_coord, u.src_var, u.power}] = k;
  }
  FpVector v(interpretation.size(), 0);
  for (std::size_t j = 0; j < t.coords.size(); ++j) {
    PPoly c = reduce(t.coords[j].moved_to(src.field()), src);
    for (const auto& [key, coeff] : c.terms()) {
      auto it = offset.find({j, static_cast<std::size_t>(key.first), key.second});
      if (it == offset.end()) return std::nullopt;
      auto x = expand_in_basis(coeff, ansatz.coeff_basis);
      if (!x) return std::nullopt;
      std::copy(x->begin(), x->end(), v.begin() + static_cast<std::ptrdiff_t>(it->second));
    }
  }
  return v;
}

bool HomSpace::contains(const HomTuple& t) const {
  auto v = encode(t);
  return v && space.contains(*v);
}

bool HomSpace::saturates_boundary() const {
  if (!space.consistent()) return false;
  std::uint32_t top_deg = 0;
  for (const auto& m : ansatz.coeff_basis.monomials) top_deg = std::max(top_deg, m.degree);
  auto at_boundary = [&](std::size_t k) {
    const UnknownInfo& u = interpretation[k];
    return u.power == ansatz.max_power || ansatz.coeff_basis.monomials[u.monomial].degree == top_deg;
  };
  std::vector<const FpVector*> vecs{&*space.particular};
  for (const auto& b : space.basis) vecs.push_back(&b);
  for (const auto* v : vecs)
    for (std::size_t k = 0; k < v->size(); ++k)
      if ((*v)[k] && at_boundary(k)) return true;
  return false;
}

HomSpace hom_space(const Presentation& src, const Presentation& tgt_in, const Ansatz& a) {
  if (a.max_power < 0) throw DomainError("ansatz max power must be nonnegative");
  if (a.coeff_basis.size() == 0) throw DomainError("ansatz coefficient basis must be nonempty");
  const Field& f = src.field();
  Presentation tgt = tgt_in;
  std::size_t b = a.coeff_basis.size();

  HomSpace out{src, tgt, a, {}, {}};
  // blocks[j] lists (src var, power, group id) for target coordinate j.
  struct Block {
    std::size_t var;
    int power;
    std::size_t group;
  };
  std::vector<std::vector<Block>> blocks(tgt.arity());
  std::size_t groups = 0;
  for (std::size_t j = 0; j < tgt.arity(); ++j)
    for (std::size_t i = 0; i < src.arity(); ++i)
      for (int pw = 0; pw <= top_power(src, i, a.max_power); ++pw) {
        blocks[j].push_back(Block{i, pw, groups++});
        for (std::size_t m = 0; m < b; ++m) out.interpretation.push_back(UnknownInfo{j, i, pw, m});
      }

  FrobeniusLinearSystem sys(f, out.interpretation.size());
  for (std::size_t g = 0; g < groups; ++g) sys.add_group(a.coeff_basis, g * b);

  std::map<std::pair<std::size_t, int>, PPoly> normal;
  auto normal_form = [&](std::size_t i, int pw) -> const PPoly& {
    auto key = std::make_pair(i, pw);
    auto it = normal.find(key);
    if (it == normal.end()) it = normal.emplace(key, reduce(PPoly::var(f, src.arity(), i, pw), src)).first;
    return it->second;
  };

  for (const auto& rel_in : tgt.relations()) {
    PPoly rel = rel_in.moved_to(f);
    std::map<PPoly::Key, std::vector<FrobeniusLinearSystem::Contribution>> slots;
    for (const auto& [key, c] : rel.terms()) {
      auto j = static_cast<std::size_t>(key.first);
      int e = key.second;
      for (const auto& blk : blocks[j]) {
        for (const auto& [slot, r] : normal_form(blk.var, blk.power + e).terms())
          slots[slot].push_back({blk.group, e, c * r});
      }
    }
    for (const auto& [slot, contribs] : slots) sys.add_equation(contribs);
  }
  out.space = sys.solve();
  return out;
}

Presentation lift_target(const Presentation& tgt, const PPoly& f, const PPoly& F, const std::vector<std::string>& h_vars) {
  if (f.arity() != tgt.arity()) throw DomainError("character arity does not match the target");
  if (F.arity() != h_vars.size()) throw DomainError("fiber polynomial arity does not match its variables");
  std::vector<std::string> vars = tgt.vars();
  vars.insert(vars.end(), h_vars.begin(), h_vars.end());
  std::size_t n = vars.size();
  std::vector<std::size_t> mt(tgt.arity()), mh(h_vars.size());
  for (std::size_t i = 0; i < mt.size(); ++i) mt[i] = i;
  for (std::size_t i = 0; i < mh.size(); ++i) mh[i] = tgt.arity() + i;
  std::vector<PPoly> rels;
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (std::size_t r = 0; r < tgt.relations().size(); ++r) {
    rels.push_back(tgt.relations()[r].remapped(mt, n));
    leads.emplace_back(std::make_pair(tgt.leads()[r].var, tgt.leads()[r].power));
  }
  rels.push_back(f.remapped(mt, n) - F.moved_to(tgt.field()).remapped(mh, n));
  leads.emplace_back(std::nullopt);
  return Presentation("lift_" + tgt.name(), tgt.field(), vars, rels, leads);
}

HomSpace lift_space(const Presentation& src, const Presentation& tgt, const PPoly& f, const PPoly& F,
                    const std::vector<std::string>& h_vars, const Ansatz& a) {
  return hom_space(src, lift_target(tgt, f, F, h_vars), a);
}

std::vector<std::size_t> Functional::indices(const HomSpace& h) const {
  std::vector<std::size_t> out;
  if (!tgt_coord) return out;
  for (std::size_t k = 0; k < h.interpretation.size(); ++k) {
    const UnknownInfo& u = h.interpretation[k];
    if (u.tgt_coord != *tgt_coord) continue;
    if (src_var && u.src_var != *src_var) continue;
    if (power && u.power != *power) continue;
    out.push_back(k);
  }
  return out;
}

ForcedZeroResult functional_forced_zero(const HomSpace& h, const Functional& phi) {
  ForcedZeroResult out;
  auto idx = phi.indices(h);
  out.selected_unknowns = idx.size();
  if (!h.space.consistent()) {
    out.forced_zero = true;  // vacuous: no solutions at all
    return out;
  }
  auto touches = [&](const FpVector& v) {
    for (auto k : idx)
      if (v[k]) return true;
    return false;
  };
  if (touches(*h.space.particular)) {
    out.witness = h.decode(*h.space.particular);
    return out;
  }
  for (std::size_t k = 0; k < h.space.basis.size(); ++k) {
    if (!touches(h.space.basis[k])) continue;
    std::vector<int> coeffs(h.space.basis.size(), 0);
    coeffs[k] = 1;
    out.witness = h.decode(h.space.point(coeffs));
    return out;
  }
  out.forced_zero = true;
  return out;
}

StructureReport structure_check(const HomTuple& t, int n) {
  if (n < 1) throw DomainError("structure check needs n >= 1");
  if (t.tgt.relations().size() != 1) throw DomainError("structure check expects a single-relation target");
  StructureReport rep;
  std::size_t s = t.src.leads().empty() ? 0 : t.src.leads().front().var;
  std::size_t x = t.tgt.leads().front().var;
  rep.linear_in_S = true;
  rep.homogeneous = true;
  std::vector<PPoly> coords;
  for (const auto& c : t.coords) coords.push_back(reduce(c, t.src));
  for (const auto& c : coords) {
    for (const auto& [key, coeff] : c.terms()) {
      if (static_cast<std::size_t>(key.first) == s) {
        if (key.second != 0) rep.linear_in_S = false;
      } else if (key.second != n - 1) {
        rep.homogeneous = false;
      }
    }
  }
  const PPoly& cx = coords[x];
  if (cx.terms().size() == 1) {
    const auto& [key, coeff] = *cx.terms().begin();
    if (static_cast<std::size_t>(key.first) == s && key.second == 0) {
      rep.x_is_aS = true;
      rep.a = coeff;
    }
  }
  return rep;
}

}  // namespace punip
