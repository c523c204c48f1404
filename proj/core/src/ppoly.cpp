#include "punip/ppoly.hpp"

#include "punip/error.hpp"

namespace punip {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Splits a coefficient into a sign and a printable magnitude such that
// "sign magnitude*X" reparses to the same term.
std::pair<bool, std::string> signed_coeff(const RatFunc& c) {
  const MPoly& n = c.num();
  int p = c.p();
  bool negative = p > 2 && n.is_monomial() && n.leading().coeff > p / 2;
  RatFunc mag = negative ? -c : c;
  std::string s = mag.to_string();
  if (mag.num().terms().size() > 1 && mag.den().is_one()) s = "(" + s + ")";
  return {negative, s};
}

std::string join_term(std::string out, bool first, bool negative, const std::string& body) {
  if (first)
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  return out + body;
}

}  // namespace

// ---------------------------------------------------------------- PPoly

PPoly::PPoly(Field f, std::size_t arity) : field_(std::move(f)), arity_(arity) {}

PPoly PPoly::monomial(Field f, std::size_t arity, std::size_t i, int e, const RatFunc& c) {
  PPoly r(std::move(f), arity);
  r.add_term(i, e, c);
  return r;
}

PPoly PPoly::var(Field f, std::size_t arity, std::size_t i, int e) {
  RatFunc one(f, 1);
  return monomial(std::move(f), arity, i, e, one);
}

RatFunc PPoly::coeff(std::size_t i, int e) const {
  auto it = terms_.find({static_cast<int>(i), e});
  return it == terms_.end() ? RatFunc(field_) : it->second;
}

int PPoly::max_power(std::size_t i) const {
  int m = -1;
  for (const auto& kv : terms_)
    if (kv.first.first == static_cast<int>(i)) m = std::max(m, kv.first.second);
  return m;
}

int PPoly::max_power() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.second);
  return m;
}

void PPoly::add_term(std::size_t i, int e, const RatFunc& c) {
  if (i >= arity_) throw DomainError("variable index " + std::to_string(i) + " outside arity " + std::to_string(arity_));
  if (e < 0) throw DomainError("negative power exponent");
  if (c.is_zero()) return;
  Key k{static_cast<int>(i), e};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PPoly PPoly::operator-() const {
  PPoly r(*this);
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

PPoly& PPoly::operator+=(const PPoly& o) {
  if (o.arity_ != arity_) throw DomainError("arity mismatch in p-polynomial sum");
  for (const auto& [k, c] : o.terms_) add_term(static_cast<std::size_t>(k.first), k.second, c);
  return *this;
}

PPoly PPoly::operator+(const PPoly& o) const {
  PPoly r(*this);
  r += o;
  return r;
}

PPoly PPoly::operator-(const PPoly& o) const { return *this + (-o); }

PPoly PPoly::scaled(const RatFunc& c) const {
  if (c.is_zero()) return PPoly(field_, arity_);
  PPoly r(*this);
  for (auto& kv : r.terms_) kv.second *= c;
  return r;
}

PPoly PPoly::twist(int e) const {
  if (e == 0) return *this;
  PPoly r(field_, arity_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(Key{k.first, k.second + e}, c.frobenius(e));
  return r;
}

RatFunc PPoly::eval(const std::vector<RatFunc>& point) const {
  if (point.size() != arity_) throw DomainError("evaluation point has wrong length");
  RatFunc acc(field_);
  for (const auto& [k, c] : terms_) acc += c * point[static_cast<std::size_t>(k.first)].frobenius(k.second);
  return acc;
}

PPoly PPoly::remapped(const std::vector<std::size_t>& map, std::size_t arity) const {
  PPoly r(field_, arity);
  for (const auto& [k, c] : terms_) r.add_term(map.at(static_cast<std::size_t>(k.first)), k.second, c);
  return r;
}

PPoly PPoly::moved_to(const Field& f) const {
  return map_coeffs(f, [&](const RatFunc& c) { return c.moved_to(f); });
}

std::string PPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string var = names.at(static_cast<std::size_t>(k.first));
    if (k.second > 0) var += "^" + std::to_string(ipow(static_cast<std::uint64_t>(field_->p), k.second));
    auto [neg, mag] = signed_coeff(c);
    std::string body = mag == "1" ? var : mag + "*" + var;
    out = join_term(std::move(out), first, neg, body);
    first = false;
  }
  return out;
}

PPoly ppoly_compose(const PPoly& f, const std::vector<PPoly>& subs) {
  if (subs.size() != f.arity())
    throw DomainError("composition expects " + std::to_string(f.arity()) + " substitutions, got " +
                      std::to_string(subs.size()));
  if (subs.empty()) return PPoly(f.field(), 0);
  std::size_t arity = subs.front().arity();
  for (const auto& s : subs)
    if (s.arity() != arity) throw DomainError("substitutions have differing arities");
  PPoly out(f.field(), arity);
  for (const auto& [k, c] : f.terms()) out += subs[static_cast<std::size_t>(k.first)].twist(k.second).scaled(c);
  return out;
}

PrincipalPart principal_part(const PPoly& f) {
  if (f.is_zero()) throw DomainError("the zero p-polynomial has no principal part");
  PrincipalPart pp;
  for (const auto& [k, c] : f.terms()) {
    auto v = static_cast<std::size_t>(k.first);
    auto it = pp.leading.find(v);
    if (it == pp.leading.end() || it->second.first < k.second) pp.leading.insert_or_assign(v, std::make_pair(k.second, c));
  }
  return pp;
}

PPoly principal_polynomial(const PPoly& f) {
  PPoly r(f.field(), f.arity());
  for (const auto& [v, lead] : principal_part(f).leading) r.add_term(v, lead.first, lead.second);
  return r;
}

// ---------------------------------------------------------------- GPoly

GPoly::GPoly(Field f, std::size_t nvars) : field_(std::move(f)), nvars_(nvars) {}

GPoly GPoly::constant(Field f, std::size_t nvars, const RatFunc& c) {
  GPoly r(std::move(f), nvars);
  r.add_term(ExpVec(nvars, 0), c);
  return r;
}

GPoly GPoly::var(Field f, std::size_t nvars, std::size_t i) {
  GPoly r(f, nvars);
  ExpVec e(nvars, 0);
  e.at(i) = 1;
  r.add_term(e, RatFunc(f, 1));
  return r;
}

GPoly GPoly::from_ppoly(const PPoly& f) {
  GPoly r(f.field(), f.arity());
  for (const auto& [k, c] : f.terms()) {
    ExpVec e(f.arity(), 0);
    e[static_cast<std::size_t>(k.first)] = static_cast<std::uint32_t>(ipow(static_cast<std::uint64_t>(f.field()->p), k.second));
    r.add_term(e, c);
  }
  return r;
}

void GPoly::add_term(const ExpVec& e, const RatFunc& c) {
  if (e.size() != nvars_) throw DomainError("exponent vector has wrong length");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GPoly GPoly::operator-() const {
  GPoly r(*this);
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

GPoly& GPoly::operator+=(const GPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("variable count mismatch in polynomial sum");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GPoly GPoly::operator+(const GPoly& o) const {
  GPoly r(*this);
  r += o;
  return r;
}

GPoly GPoly::operator-(const GPoly& o) const { return *this + (-o); }

GPoly GPoly::operator*(const GPoly& o) const {
  if (o.nvars_ != nvars_) throw DomainError("variable count mismatch in polynomial product");
  GPoly r(field_, nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      ExpVec e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

GPoly GPoly::scaled(const RatFunc& c) const {
  if (c.is_zero()) return GPoly(field_, nvars_);
  GPoly r(*this);
  for (auto& kv : r.terms_) kv.second *= c;
  return r;
}

GPoly GPoly::frobenius(int e) const {
  if (e == 0) return *this;
  auto q = static_cast<std::uint32_t>(ipow(static_cast<std::uint64_t>(field_->p), e));
  GPoly r(field_, nvars_);
  for (const auto& [ex, c] : terms_) {
    ExpVec s(ex);
    for (auto& x : s) x *= q;
    r.terms_.emplace(std::move(s), c.frobenius(e));
  }
  return r;
}

GPoly GPoly::pow(std::uint64_t e) const {
  GPoly result = constant(field_, nvars_, RatFunc(field_, 1));
  GPoly base = *this;
  auto p = static_cast<std::uint64_t>(field_->p);
  while (e) {
    std::uint64_t digit = e % p;
    for (std::uint64_t k = 0; k < digit; ++k) result = result * base;
    e /= p;
    if (e) base = base.frobenius(1);
  }
  return result;
}

GPoly GPoly::substitute(const std::vector<GPoly>& subs) const {
  if (subs.size() != nvars_) throw DomainError("substitution count does not match variable count");
  if (subs.empty()) return *this;
  std::size_t n = subs.front().nvars();
  GPoly out(field_, n);
  std::map<std::pair<std::size_t, std::uint32_t>, GPoly> cache;
  for (const auto& [ex, c] : terms_) {
    GPoly acc = constant(field_, n, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!ex[i]) continue;
      auto key = std::make_pair(i, ex[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, subs[i].pow(ex[i])).first;
      acc = acc * it->second;
    }
    out += acc;
  }
  return out;
}

RatFunc GPoly::eval(const std::vector<RatFunc>& point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point has wrong length");
  RatFunc acc(field_);
  for (const auto& [ex, c] : terms_) {
    RatFunc t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (ex[i]) t *= point[i].pow(ex[i]);
    acc += t;
  }
  return acc;
}

GPoly GPoly::remapped(const std::vector<std::size_t>& map, std::size_t nvars) const {
  GPoly r(field_, nvars);
  for (const auto& [ex, c] : terms_) {
    ExpVec e(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) e.at(map.at(i)) += ex[i];
    r.add_term(e, c);
  }
  return r;
}

std::optional<PPoly> GPoly::to_ppoly() const {
  PPoly r(field_, nvars_);
  auto p = static_cast<std::uint32_t>(field_->p);
  for (const auto& [ex, c] : terms_) {
    int var = -1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!ex[i]) continue;
      if (var >= 0) return std::nullopt;
      var = static_cast<int>(i);
    }
    if (var < 0) return std::nullopt;
    std::uint32_t d = ex[static_cast<std::size_t>(var)];
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    if (d != 1) return std::nullopt;
    r.add_term(static_cast<std::size_t>(var), e, c);
  }
  return r;
}

std::string GPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // Highest total degree first for readability.
  std::vector<std::pair<const ExpVec*, const RatFunc*>> order;
  for (const auto& kv : terms_) order.emplace_back(&kv.first, &kv.second);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    std::uint64_t da = 0, db = 0;
    for (auto x : *a.first) da += x;
    for (auto x : *b.first) db += x;
    return da > db;
  });
  for (const auto& [ex, c] : order) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!(*ex)[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if ((*ex)[i] > 1) mono += "^" + std::to_string((*ex)[i]);
    }
    auto [neg, mag] = signed_coeff(*c);
    std::string body = mono.empty() ? mag : (mag == "1" ? mono : mag + "*" + mono);
    out = join_term(std::move(out), first, neg, body);
    first = false;
  }
  return out;
}

bool polymap_multiadditive_check(const PolyMap& b, const std::vector<std::vector<std::size_t>>& arg_partition) {
  if (b.empty()) return true;
  const Field& f = b.front().field();
  std::size_t n = b.front().nvars();
  for (const auto& block : arg_partition) {
    std::size_t m = n + block.size();
    std::vector<GPoly> sum(n), plain(n), primed(n);
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] = plain[i] = primed[i] = GPoly::var(f, m, i);
    }
    for (std::size_t k = 0; k < block.size(); ++k) {
      std::size_t v = block[k];
      if (v >= n) throw DomainError("argument block names a variable outside the map");
      GPoly dup = GPoly::var(f, m, n + k);
      sum[v] = sum[v] + dup;
      primed[v] = dup;
    }
    for (const auto& comp : b) {
      if (comp.nvars() != n) throw DomainError("components of a polynomial map must share variables");
      GPoly defect = comp.substitute(sum) - comp.substitute(plain) - comp.substitute(primed);
      if (!defect.is_zero()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- reducedness

ReducedVerdict reduced_diagonal(const PPoly& f) {
  auto pp = principal_part(f);
  int e = pp.leading.begin()->second.first;
  for (const auto& kv : pp.leading)
    if (kv.second.first != e)
      throw DomainError("principal part powers differ; use the truncated check reduced_within instead");
  std::vector<RatFunc> coeffs;
  std::vector<std::size_t> vars;
  for (const auto& [v, lead] : pp.leading) {
    vars.push_back(v);
    coeffs.push_back(lead.second);
  }
  ReducedVerdict out;
  out.exactness = Exactness::Exact;
  std::vector<RatFunc> kernel;
  out.reduced = frobenius_linearly_independent(coeffs, e, &kernel);
  if (!out.reduced) {
    out.witness.assign(f.arity(), RatFunc(f.field()));
    for (std::size_t k = 0; k < vars.size(); ++k) out.witness[vars[k]] = kernel[k];
    out.kernel_dim = 1;
  }
  return out;
}

ReducedVerdict reduced_within(const PPoly& f, const MonomialBasis& b) {
  auto pp = principal_part(f);
  std::size_t n = f.arity();
  FrobeniusLinearSystem sys(f.field(), n * b.size());
  std::vector<FrobeniusLinearSystem::Contribution> lhs;
  for (std::size_t v = 0; v < n; ++v) sys.add_group(b, v * b.size());
  for (const auto& [v, lead] : pp.leading) lhs.push_back({v, lead.first, lead.second});
  sys.add_equation(lhs);
  auto space = sys.solve();
  ReducedVerdict out;
  out.exactness = Exactness::WithinTruncation;
  out.truncation = b.description;
  // Variables absent from F are unconstrained; they do not count as zeros of F.
  std::vector<FpVector> relevant;
  for (const auto& vec : space.basis) {
    bool touches = false;
    for (const auto& kv : pp.leading)
      for (std::size_t k = 0; k < b.size(); ++k)
        if (vec[kv.first * b.size() + k]) touches = true;
    if (touches) relevant.push_back(vec);
  }
  out.kernel_dim = relevant.size();
  out.reduced = relevant.empty();
  if (!out.reduced) {
    for (std::size_t v = 0; v < n; ++v)
      out.witness.push_back(pp.leading.count(v) ? b.combine(relevant.front(), v * b.size()) : RatFunc(f.field()));
  }
  return out;
}

UniversalVerdict universal_within(const PPoly& f, const MonomialBasis& dom, const MonomialBasis& tgt) {
  UniversalVerdict out;
  out.truncation = "domain " + dom.description + "; target " + tgt.description;
  std::size_t n = f.arity();
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    FrobeniusLinearSystem sys(f.field(), n * dom.size());
    for (std::size_t v = 0; v < n; ++v) sys.add_group(dom, v * dom.size());
    std::vector<FrobeniusLinearSystem::Contribution> lhs;
    for (const auto& [k, c] : f.terms()) lhs.push_back({static_cast<std::size_t>(k.first), k.second, c});
    sys.add_equation(lhs, tgt.element(t));
    if (!sys.solve().consistent()) out.missing.push_back(t);
  }
  out.covered = out.missing.empty();
  return out;
}

}  // namespace punip
