#include "punip/presentation.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "punip/error.hpp"

namespace punip {

namespace {

constexpr int kRewriteLimit = 200000;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Presentation

Presentation::Presentation(std::string name, Field f, std::vector<std::string> vars, std::vector<PPoly> relations,
                           std::vector<std::optional<std::pair<std::size_t, int>>> leads)
    : name_(std::move(name)), field_(std::move(f)), vars_(std::move(vars)), relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) throw DomainError("empty variable name in group " + name_);
    if (!seen.insert(v).second) throw DomainError("duplicate variable '" + v + "' in group " + name_);
    if (field_->index_of(v) >= 0) throw DomainError("variable '" + v + "' clashes with a field indeterminate");
  }
  for (const auto& r : relations_) {
    if (r.arity() != vars_.size()) throw DomainError("relation arity does not match the variables of " + name_);
    if (r.is_zero()) throw DomainError("zero relation in group " + name_);
  }
  if (!leads.empty() && leads.size() != relations_.size())
    throw DomainError("lead designations must match the relations one to one");
  leads.resize(relations_.size());
  choose_leads(leads);
  validate();
}

void Presentation::choose_leads(const std::vector<std::optional<std::pair<std::size_t, int>>>& requests) {
  std::set<std::size_t> designated;
  for (const auto& req : requests)
    if (req) designated.insert(req->first);
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    const PPoly& rel = relations_[r];
    if (requests[r]) {
      auto [v, e] = *requests[r];
      if (v >= vars_.size()) throw DomainError("lead variable out of range");
      RatFunc c = rel.coeff(v, e);
      if (c.is_zero())
        throw DomainError("designated lead " + vars_[v] + "^" + std::to_string(ipow(static_cast<std::uint64_t>(field_->p), e)) +
                          " does not occur in its relation");
      leads_.push_back(Lead{v, e, c});
      continue;
    }
    std::optional<std::size_t> pick;
    // Plain elimination: a variable occurring only linearly.
    for (std::size_t v = 0; v < vars_.size() && !pick; ++v)
      if (!designated.count(v) && rel.max_power(v) == 0) pick = v;
    // Otherwise a variable with a linear term and the smallest top power,
    // then any variable with the smallest top power.
    if (!pick) {
      int best = -1;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (designated.count(v) || rel.coeff(v, 0).is_zero()) continue;
        int mp = rel.max_power(v);
        if (best < 0 || mp < best) {
          best = mp;
          pick = v;
        }
      }
    }
    if (!pick) {
      int best = -1;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (designated.count(v) || !rel.involves(v)) continue;
        int mp = rel.max_power(v);
        if (best < 0 || mp < best) {
          best = mp;
          pick = v;
        }
      }
    }
    if (!pick) throw DomainError("relation " + std::to_string(r + 1) + " of " + name_ + " has no undesignated variable");
    int e = rel.max_power(*pick);
    leads_.push_back(Lead{*pick, e, rel.coeff(*pick, e)});
    designated.insert(*pick);
  }
}

void Presentation::validate() const {
  std::set<std::size_t> used;
  for (std::size_t r = 0; r < leads_.size(); ++r) {
    const Lead& l = leads_[r];
    if (!used.insert(l.var).second) throw DomainError("variable " + vars_[l.var] + " is designated twice");
    if (relations_[r].max_power(l.var) != l.power)
      throw DomainError("lead of relation " + std::to_string(r + 1) + " is not the top power of " + vars_[l.var]);
  }
  // Relation r depends on s when it mentions the variable s designates.
  std::size_t n = relations_.size();
  std::vector<int> state(n, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t r) {
    state[r] = 1;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == r || !relations_[r].involves(leads_[s].var)) continue;
      if (state[s] == 1) throw DomainError("lead designations of " + name_ + " are cyclic");
      if (state[s] == 0) visit(s);
    }
    state[r] = 2;
  };
  for (std::size_t r = 0; r < n; ++r)
    if (state[r] == 0) visit(r);
}

int Presentation::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

std::optional<std::size_t> Presentation::relation_for(std::size_t v) const {
  for (std::size_t r = 0; r < leads_.size(); ++r)
    if (leads_[r].var == v) return r;
  return std::nullopt;
}

std::optional<int> Presentation::lead_power(std::size_t v) const {
  auto r = relation_for(v);
  if (!r) return std::nullopt;
  return leads_[*r].power;
}

Presentation Presentation::renamed(std::string name) const {
  Presentation r(*this);
  r.name_ = std::move(name);
  return r;
}

std::string Presentation::to_string() const {
  std::string s = "group " + name_ + " {\n  vars ";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? ", " : "") + vars_[i];
  s += ";\n";
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    s += "  rel " + relations_[r].to_string(vars_) + " = 0;\n";
    const Lead& l = leads_[r];
    s += "  lead " + vars_[l.var];
    if (l.power > 0) s += "^" + std::to_string(ipow(static_cast<std::uint64_t>(field_->p), l.power));
    s += ";\n";
  }
  return s + "}\n";
}

// ---------------------------------------------------------------- normal forms

PPoly reduce(const PPoly& f, const Presentation& P) {
  if (f.arity() != P.arity()) throw DomainError("polynomial arity does not match presentation " + P.name());
  std::vector<PPoly> rules;
  for (std::size_t r = 0; r < P.relations().size(); ++r)
    rules.push_back(P.relations()[r].scaled(P.leads()[r].coeff.inverse()));
  std::vector<int> rel_of(P.arity(), -1);
  for (std::size_t r = 0; r < P.leads().size(); ++r) rel_of[P.leads()[r].var] = static_cast<int>(r);

  PPoly cur = f;
  for (int guard = 0;; ++guard) {
    if (guard > kRewriteLimit) throw Error("normal form rewriting did not terminate in " + P.name());
    const std::pair<const PPoly::Key, RatFunc>* best = nullptr;
    for (const auto& kv : cur.terms()) {
      int r = rel_of[static_cast<std::size_t>(kv.first.first)];
      if (r < 0 || kv.first.second < P.leads()[static_cast<std::size_t>(r)].power) continue;
      if (!best || kv.first.second > best->first.second) best = &kv;
    }
    if (!best) break;
    auto r = static_cast<std::size_t>(rel_of[static_cast<std::size_t>(best->first.first)]);
    int k = best->first.second - P.leads()[r].power;
    RatFunc c = best->second;
    cur -= rules[r].twist(k).scaled(c);
  }
  return cur;
}

GPoly reduce(const GPoly& f, const Presentation& P) {
  if (f.nvars() != P.arity()) throw DomainError("polynomial arity does not match presentation " + P.name());
  auto p = static_cast<std::uint64_t>(P.field()->p);
  std::vector<GPoly> rules;
  std::vector<std::uint32_t> lead_exp;
  for (std::size_t r = 0; r < P.relations().size(); ++r) {
    rules.push_back(GPoly::from_ppoly(P.relations()[r]).scaled(P.leads()[r].coeff.inverse()));
    lead_exp.push_back(static_cast<std::uint32_t>(ipow(p, P.leads()[r].power)));
  }
  GPoly cur = f;
  for (int guard = 0;; ++guard) {
    if (guard > kRewriteLimit) throw Error("normal form rewriting did not terminate in " + P.name());
    bool changed = false;
    for (const auto& [ex, c] : cur.terms()) {
      for (std::size_t r = 0; r < rules.size(); ++r) {
        std::size_t v = P.leads()[r].var;
        if (ex[v] < lead_exp[r]) continue;
        ExpVec rest = ex;
        rest[v] -= lead_exp[r];
        GPoly mono(P.field(), P.arity());
        mono.add_term(rest, c);
        cur = cur - mono * rules[r];
        changed = true;
        break;
      }
      if (changed) break;
    }
    if (!changed) break;
  }
  return cur;
}

// ---------------------------------------------------------------- constructors

Presentation make_Vn_alpha(int n, const RatFunc& alpha, const std::string& letter) {
  if (n < 1) throw DomainError("V_{n,alpha} needs n >= 1");
  if (alpha.is_zero()) throw DomainError("V_{n,alpha} needs alpha != 0");
  const Field& f = alpha.field();
  int p = f->p;
  auto pn = static_cast<int>(ipow(static_cast<std::uint64_t>(p), n));
  std::vector<std::string> vars{letter};
  std::vector<int> js;
  for (int j = 0; j < pn; ++j)
    if (j % p != p - 1) {
      js.push_back(j);
      vars.push_back(letter + std::to_string(j));
    }
  PPoly rel(f, vars.size());
  rel.add_term(0, 0, RatFunc(f, -1));
  rel.add_term(0, 1, alpha.pow(p - 1));
  for (std::size_t k = 0; k < js.size(); ++k) rel.add_term(k + 1, n, alpha.pow(js[k]));
  std::string name = "V" + std::to_string(n) + "_" + alpha.to_string();
  Presentation P(name, f, vars, {rel}, {std::make_pair(std::size_t{0}, 1)});
  if (in_frobenius_image(alpha)) P.add_warning("alpha = " + alpha.to_string() + " lies in K^p");
  return P;
}

Presentation make_V1(const RatFunc& c, const std::string& letter) {
  if (c.is_zero()) throw DomainError("V_{1,c} needs c != 0");
  const Field& f = c.field();
  int p = f->p;
  std::vector<std::string> vars;
  for (int i = 0; i < p; ++i) vars.push_back(letter + std::to_string(i));
  PPoly rel(f, vars.size());
  rel.add_term(static_cast<std::size_t>(p - 1), 0, RatFunc(f, -1));
  for (int i = 0; i < p; ++i) rel.add_term(static_cast<std::size_t>(i), 1, c.pow(i));
  Presentation P("V1_" + c.to_string(), f, vars, {rel}, {std::make_pair(static_cast<std::size_t>(p - 1), 1)});
  if (in_frobenius_image(c)) P.add_warning(c.to_string() + " lies in K^p");
  return P;
}

Presentation make_W_diag(const RatFunc& alpha, const std::string& letter) {
  const Field& f = alpha.field();
  int p = f->p;
  std::vector<std::string> vars;
  for (int i = 0; i < p; ++i) vars.push_back(letter + std::to_string(i));
  PPoly rel(f, vars.size());
  for (int i = 0; i < p; ++i) rel.add_term(static_cast<std::size_t>(i), 1, alpha.pow(i));
  return Presentation("Wdiag_" + alpha.to_string(), f, vars, {rel});
}

Presentation make_U_ext(const RatFunc& lambda, const RatFunc& mu) {
  const Field& f = lambda.field();
  int p = f->p;
  std::vector<std::string> vars{"Y"};
  for (int i = 0; i < p; ++i) vars.push_back("X" + std::to_string(i));
  PPoly rel(f, vars.size());
  rel.add_term(static_cast<std::size_t>(p), 0, RatFunc(f, -1));
  rel.add_term(0, 1, mu);
  for (int i = 0; i < p; ++i) rel.add_term(static_cast<std::size_t>(i + 1), 1, lambda.pow(i));
  Presentation P("U", f, vars, {rel}, {std::make_pair(static_cast<std::size_t>(p), 1)});
  if (p == 2) P.add_warning("in characteristic 2 this group is a smooth quadric and is unirational");
  return P;
}

Presentation make_U_prime(const RatFunc& lambda, const RatFunc& mu) {
  const Field& f = lambda.field();
  if (f->p != 2) throw DomainError("U' is defined in characteristic 2 only");
  std::vector<std::string> vars{"Y", "X0", "X1"};
  PPoly rel(f, 3);
  rel.add_term(0, 2, mu);
  rel.add_term(2, 0, RatFunc(f, -1));
  rel.add_term(1, 1, RatFunc(f, 1));
  rel.add_term(2, 1, lambda);
  return Presentation("Uprime", f, vars, {rel}, {std::make_pair(std::size_t{2}, 1)});
}

Presentation make_W_biadd(const RatFunc& lambda, const RatFunc& mu, const std::string& letter) {
  const Field& f = lambda.field();
  int p = f->p;
  std::vector<std::string> vars;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) vars.push_back(letter + std::to_string(i) + "_" + std::to_string(j));
  PPoly rel(f, vars.size());
  auto last = static_cast<std::size_t>(p * p - 1);
  rel.add_term(last, 0, RatFunc(f, -1));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) rel.add_term(static_cast<std::size_t>(i * p + j), 1, lambda.pow(i) * mu.pow(j));
  return Presentation("W", f, vars, {rel}, {std::make_pair(last, 1)});
}

Presentation make_affine(const Field& f, std::vector<std::string> vars, std::string name) {
  return Presentation(std::move(name), f, std::move(vars), {});
}

Presentation make_named_group(const std::string& name, const std::map<std::string, RatFunc>& params, int n) {
  auto get = [&](const char* key) -> const RatFunc& {
    auto it = params.find(key);
    if (it == params.end()) throw DomainError("group " + name + " needs parameter '" + key + "'");
    return it->second;
  };
  if (name == "V1") return make_V1(get("alpha"));
  if (name == "Vn") return make_Vn_alpha(n, get("alpha"));
  if (name == "W_diag") return make_W_diag(get("alpha"));
  if (name == "U_ext") return make_U_ext(get("lambda"), get("mu"));
  if (name == "U_prime_char2") return make_U_prime(get("lambda"), get("mu"));
  if (name == "W_biadd") return make_W_biadd(get("lambda"), get("mu"));
  throw DomainError("unknown group family '" + name + "'");
}

Presentation product(const Presentation& a, const Presentation& b, std::string name) {
  if (a.field() != b.field() && a.field()->header() != b.field()->header())
    throw DomainError("product of groups over different fields");
  std::vector<std::string> vars = a.vars();
  vars.insert(vars.end(), b.vars().begin(), b.vars().end());
  std::size_t n = vars.size();
  std::vector<std::size_t> ma(a.arity()), mb(b.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) ma[i] = i;
  for (std::size_t i = 0; i < b.arity(); ++i) mb[i] = a.arity() + i;
  std::vector<PPoly> rels;
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (std::size_t r = 0; r < a.relations().size(); ++r) {
    rels.push_back(a.relations()[r].remapped(ma, n));
    leads.emplace_back(std::make_pair(ma[a.leads()[r].var], a.leads()[r].power));
  }
  for (std::size_t r = 0; r < b.relations().size(); ++r) {
    rels.push_back(b.relations()[r].moved_to(a.field()).remapped(mb, n));
    leads.emplace_back(std::make_pair(mb[b.leads()[r].var], b.leads()[r].power));
  }
  if (name.empty()) name = a.name() + "x" + b.name();
  return Presentation(std::move(name), a.field(), std::move(vars), std::move(rels), std::move(leads));
}

// ---------------------------------------------------------------- homomorphisms

HomTuple HomTuple::identity(const Presentation& P) {
  HomTuple t{P, P, {}};
  for (std::size_t i = 0; i < P.arity(); ++i) t.coords.push_back(PPoly::var(P.field(), P.arity(), i));
  return t;
}

HomTuple HomTuple::zero(const Presentation& src, const Presentation& tgt) {
  return HomTuple{src, tgt, std::vector<PPoly>(tgt.arity(), PPoly(src.field(), src.arity()))};
}

std::string HomTuple::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < coords.size(); ++k)
    s += tgt.vars()[k] + " := " + coords[k].to_string(src.vars()) + "\n";
  return s;
}

HomCheck hom_verify(const HomTuple& t) {
  if (t.coords.size() != t.tgt.arity()) throw DomainError("homomorphism needs one coordinate per target variable");
  for (const auto& c : t.coords)
    if (c.arity() != t.src.arity()) throw DomainError("coordinate arity does not match the source");
  HomCheck out;
  for (std::size_t r = 0; r < t.tgt.relations().size(); ++r) {
    PPoly pulled = ppoly_compose(t.tgt.relations()[r].moved_to(t.src.field()), t.coords);
    PPoly res = reduce(pulled, t.src);
    if (!res.is_zero()) {
      out.ok = false;
      out.relation = r;
      out.residue = res;
      return out;
    }
  }
  return out;
}

HomTuple hom_compose(const HomTuple& t1, const HomTuple& t2) {
  if (!(t1.tgt == t2.src)) throw DomainError("cannot compose: target of the first map is not the source of the second");
  HomTuple out{t1.src, t2.tgt, {}};
  for (const auto& c : t2.coords) out.coords.push_back(reduce(ppoly_compose(c, t1.coords), t1.src));
  return out;
}

HomTuple make_fm(int m, const RatFunc& alpha) {
  if (m < 1) throw DomainError("f_m needs m >= 1");
  Presentation src = make_Vn_alpha(m + 1, alpha, "S");
  Presentation tgt = make_Vn_alpha(m, alpha, "T");
  int p = alpha.field()->p;
  auto pm = static_cast<int>(ipow(static_cast<std::uint64_t>(p), m));
  HomTuple t{src, tgt, {}};
  t.coords.push_back(PPoly::var(src.field(), src.arity(), 0));
  for (std::size_t k = 1; k < tgt.arity(); ++k) {
    int j = std::stoi(tgt.vars()[k].substr(1));
    PPoly c(src.field(), src.arity());
    for (int i = 0; i < p; ++i) {
      int v = src.var_index("S" + std::to_string(j + pm * i));
      c.add_term(static_cast<std::size_t>(v), 1, alpha.pow(i));
    }
    t.coords.push_back(c);
  }
  return t;
}

Presentation kernel_presentation(const HomTuple& t) {
  std::vector<std::string> vars = t.src.vars();
  std::vector<PPoly> rels = t.src.relations();
  for (const auto& c : t.coords)
    if (!c.is_zero()) rels.push_back(c);

  // Eliminate variables forced to zero by a linear one-term relation.
  std::vector<bool> alive(vars.size(), true);
  bool again = true;
  while (again) {
    again = false;
    for (const auto& r : rels) {
      if (r.terms().size() != 1) continue;
      const auto& key = r.terms().begin()->first;
      auto v = static_cast<std::size_t>(key.first);
      if (key.second == 0 && alive[v]) {
        alive[v] = false;
        again = true;
      }
    }
    if (!again) break;
    std::vector<PPoly> next;
    for (const auto& r : rels) {
      PPoly s(r.field(), r.arity());
      for (const auto& [key, c] : r.terms())
        if (alive[static_cast<std::size_t>(key.first)]) s.add_term(static_cast<std::size_t>(key.first), key.second, c);
      if (!s.is_zero()) next.push_back(s);
    }
    rels = std::move(next);
  }
  std::vector<std::size_t> map(vars.size(), 0);
  std::vector<std::string> kept;
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (alive[v]) {
      map[v] = kept.size();
      kept.push_back(vars[v]);
    }
  for (auto& r : rels) r = r.remapped(map, kept.size());

  std::string name = "ker_" + t.src.name();
  // Drop relations implied by the remaining ones.
  for (std::size_t i = 0; i < rels.size();) {
    std::vector<PPoly> others;
    for (std::size_t j = 0; j < rels.size(); ++j)
      if (j != i) others.push_back(rels[j]);
    bool redundant = false;
    try {
      Presentation rest(name, t.src.field(), kept, others);
      redundant = reduce(rels[i], rest).is_zero();
    } catch (const DomainError&) {
      redundant = false;
    }
    if (redundant)
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return Presentation(name, t.src.field(), kept, rels);
}

std::optional<std::vector<std::size_t>> match_diagonal(const PPoly& rel, const RatFunc& alpha) {
  int p = alpha.field()->p;
  if (rel.terms().size() != static_cast<std::size_t>(p)) return std::nullopt;
  std::vector<std::size_t> vars;
  std::vector<RatFunc> coeffs;
  for (const auto& [key, c] : rel.terms()) {
    if (key.second != 1) return std::nullopt;
    vars.push_back(static_cast<std::size_t>(key.first));
    coeffs.push_back(c);
  }
  for (std::size_t base = 0; base < vars.size(); ++base) {
    std::vector<std::optional<std::size_t>> slot(static_cast<std::size_t>(p));
    bool ok = true;
    for (std::size_t k = 0; k < vars.size() && ok; ++k) {
      RatFunc ratio = coeffs[k] / coeffs[base];
      bool found = false;
      for (int i = 0; i < p; ++i)
        if (ratio == alpha.pow(i) && !slot[static_cast<std::size_t>(i)]) {
          slot[static_cast<std::size_t>(i)] = vars[k];
          found = true;
          break;
        }
      ok = found;
    }
    if (!ok) continue;
    std::vector<std::size_t> order;
    for (auto& s : slot) order.push_back(*s);
    return order;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- points

std::vector<RatFunc> PointSpace::decode(const FpVector& v) const {
  std::size_t b = truncation.size();
  std::size_t n = v.size() / b;
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(truncation.combine(v, i * b));
  return out;
}

PointSpace points(const Presentation& P, const MonomialBasis& B) {
  std::size_t n = P.arity(), b = B.size();
  FrobeniusLinearSystem sys(P.field(), n * b);
  for (std::size_t v = 0; v < n; ++v) sys.add_group(B, v * b);
  for (const auto& rel : P.relations()) {
    std::vector<FrobeniusLinearSystem::Contribution> lhs;
    for (const auto& [key, c] : rel.terms()) lhs.push_back({static_cast<std::size_t>(key.first), key.second, c});
    sys.add_equation(lhs);
  }
  PointSpace out{B, sys.solve(), {}};
  for (const auto& vec : out.space.basis) out.basis_points.push_back(out.decode(vec));
  return out;
}

bool satisfies(const Presentation& P, const std::vector<RatFunc>& point) {
  for (const auto& rel : P.relations())
    if (!rel.eval(point).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- changes of variables

ChangeOfVariables change_of_variables(const Presentation& P, const std::vector<PPoly>& subs,
                                      std::optional<RatFunc> scalar) {
  std::size_t n = P.arity();
  const Field& f = P.field();
  if (subs.size() != n) throw DomainError("change of variables needs one substitution per variable");
  std::vector<RatFunc> diag;
  for (std::size_t i = 0; i < n; ++i) {
    if (subs[i].arity() != n) throw DomainError("substitution arity mismatch");
    RatFunc c = subs[i].coeff(i, 0);
    if (c.is_zero() || subs[i].max_power(i) != 0)
      throw DomainError("substitution for " + P.vars()[i] + " has no invertible linear diagonal term");
    diag.push_back(c);
  }
  // Topological order: i after every j its substitution mentions.
  std::vector<int> state(n, 0);
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    state[i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !subs[i].involves(j)) continue;
      if (state[j] == 1) throw DomainError("substitution is not triangular");
      if (state[j] == 0) visit(j);
    }
    state[i] = 2;
    order.push_back(i);
  };
  for (std::size_t i = 0; i < n; ++i)
    if (state[i] == 0) visit(i);

  std::vector<PPoly> inv;
  for (std::size_t i = 0; i < n; ++i) inv.push_back(PPoly::var(f, n, i));
  for (std::size_t i : order) {
    PPoly rest = subs[i] - PPoly::monomial(f, n, i, 0, diag[i]);
    inv[i] = (PPoly::var(f, n, i) - ppoly_compose(rest, inv)).scaled(diag[i].inverse());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ppoly_compose(subs[i], inv) == PPoly::var(f, n, i)) || !(ppoly_compose(inv[i], subs) == PPoly::var(f, n, i)))
      throw DomainError("computed inverse substitution failed verification");
  }
  RatFunc s = scalar ? *scalar : RatFunc(f, 1);
  if (s.is_zero()) throw DomainError("scalar must be nonzero");
  std::vector<PPoly> rels;
  for (const auto& rel : P.relations()) rels.push_back(ppoly_compose(rel, subs).scaled(s));
  return ChangeOfVariables{Presentation(P.name() + "'", f, P.vars(), rels), inv, s};
}

Field rename_indeterminate(const Field& f, std::size_t index, const std::string& name) {
  std::vector<std::string> vars = f->vars;
  vars.at(index) = name;
  return make_field(f->p, vars, f->max_degree);
}

PPoly substitute_indeterminate(const PPoly& f, const Field& target, std::size_t index, const RatFunc& value) {
  return f.map_coeffs(target, [&](const RatFunc& c) { return RatFunc(target, c.num(), c.den()).substitute(index, value); });
}

Presentation substitute_indeterminate(const Presentation& P, const Field& target, std::size_t index,
                                      const RatFunc& value) {
  if (target->rank() != P.field()->rank() || target->p != P.field()->p)
    throw DomainError("target field must have the same characteristic and rank");
  std::vector<PPoly> rels;
  for (const auto& r : P.relations()) rels.push_back(substitute_indeterminate(r, target, index, value));
  std::vector<std::optional<std::pair<std::size_t, int>>> leads;
  for (const auto& l : P.leads()) leads.emplace_back(std::make_pair(l.var, l.power));
  try {
    return Presentation(P.name(), target, P.vars(), rels, leads);
  } catch (const DomainError&) {
    return Presentation(P.name(), target, P.vars(), rels);
  }
}

Presentation base_extend_inseparable(const Presentation& P, const std::string& alpha, int n, const std::string& s) {
  int idx = P.field()->index_of(alpha);
  if (idx < 0) throw DomainError("'" + alpha + "' is not an indeterminate of " + P.field()->header());
  if (n < 0) throw DomainError("extension exponent must be nonnegative");
  if (n == 0) return P;
  Field target = rename_indeterminate(P.field(), static_cast<std::size_t>(idx), s);
  RatFunc value = RatFunc::var(target, static_cast<std::size_t>(idx)).pow(static_cast<long long>(ipow(
      static_cast<std::uint64_t>(P.field()->p), n)));
  return substitute_indeterminate(P, target, static_cast<std::size_t>(idx), value);
}

}  // namespace punip
