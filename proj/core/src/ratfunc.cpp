#include "punip/ratfunc.hpp"

#include "punip/error.hpp"

namespace punip {

namespace {

void check_degree(const FieldCtx& f, const MPoly& a, const char* what) {
  if (a.total_degree() > static_cast<std::uint32_t>(f.max_degree))
    throw OverflowError(std::string("degree bound ") + std::to_string(f.max_degree) + " exceeded by " + what +
                        " of degree " + std::to_string(a.total_degree()));
}

}  // namespace

RatFunc::RatFunc(Field f) : field_(std::move(f)), num_(field_->p), den_(MPoly::constant(field_->p, 1)) {}

RatFunc::RatFunc(Field f, long long c)
    : field_(std::move(f)), num_(MPoly::constant(field_->p, c)), den_(MPoly::constant(field_->p, 1)) {}

RatFunc::RatFunc(Field f, const MPoly& num, const MPoly& den) : field_(std::move(f)), num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

RatFunc RatFunc::poly(Field f, const MPoly& num) {
  RatFunc r(std::move(f));
  r.num_ = num;
  check_degree(*r.field_, r.num_, "numerator");
  return r;
}

RatFunc RatFunc::var(Field f, std::size_t i) {
  if (i >= f->rank()) throw DomainError("indeterminate index out of range");
  int p = f->p;
  return poly(std::move(f), MPoly::variable(p, i));
}

RatFunc RatFunc::var(Field f, const std::string& name) {
  int i = f->index_of(name);
  if (i < 0) throw DomainError("unknown indeterminate '" + name + "' in " + f->header());
  return var(std::move(f), static_cast<std::size_t>(i));
}

void RatFunc::normalize() {
  int p = field_->p;
  if (num_.is_zero()) {
    den_ = MPoly::constant(p, 1);
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  finish();
}

void RatFunc::finish() {
  int lc = den_.leading().coeff;
  if (lc != 1) {
    int inv = fp::inv(lc, field_->p);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  check_degree(*field_, num_, "numerator");
  check_degree(*field_, den_, "denominator");
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) {
    if (den_.is_one()) return poly(field_, num_ + o.num_);
    return RatFunc(field_, num_ + o.num_, den_);
  }
  MPoly g = gcd(den_, o.den_);
  MPoly a = *den_.divide_exact(g), b = *o.den_.divide_exact(g);
  RatFunc r(field_);
  r.num_ = num_ * b + o.num_ * a;
  if (r.num_.is_zero()) return r;
  r.den_ = den_ * b;
  // Both summands are reduced, so any common factor of the sum divides g.
  if (!g.is_one()) {
    MPoly h = gcd(r.num_, g);
    if (!h.is_one()) {
      r.num_ = *r.num_.divide_exact(h);
      r.den_ = *r.den_.divide_exact(h);
    }
  }
  r.finish();
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(field_);
  if (den_.is_one() && o.den_.is_one()) return poly(field_, num_ * o.num_);
  MPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  RatFunc r(field_);
  r.num_ = *num_.divide_exact(g1) * *o.num_.divide_exact(g2);
  r.den_ = *den_.divide_exact(g2) * *o.den_.divide_exact(g1);
  r.finish();
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  RatFunc r(field_);
  r.num_ = den_;
  r.den_ = num_;
  r.finish();
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::scaled(int c) const {
  RatFunc r(*this);
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_ = MPoly::constant(p(), 1);
  return r;
}

RatFunc RatFunc::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(field_);
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  check_degree(*field_, r.num_, "numerator");
  check_degree(*field_, r.den_, "denominator");
  return r;  // powers of coprime polynomials stay coprime
}

RatFunc RatFunc::frobenius(int e) const {
  if (e == 0) return *this;
  RatFunc r(field_);
  r.num_ = num_.frobenius(e);
  r.den_ = den_.frobenius(e);
  check_degree(*field_, r.num_, "numerator");
  check_degree(*field_, r.den_, "denominator");
  return r;
}

namespace {

// Evaluates `a` at t_i := value by Horner in t_i.
RatFunc substitute_poly(const Field& f, const MPoly& a, std::size_t i, const RatFunc& value) {
  int deg = a.degree_in(i);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : a.terms()) {
    Term u = t;
    u.mono.degree -= u.mono.exp[i];
    u.mono.exp[i] = 0;
    buckets[t.mono.exp[i]].push_back(u);
  }
  RatFunc acc(f);
  for (int d = deg; d >= 0; --d) {
    acc = acc * value + RatFunc::poly(f, MPoly::from_terms(f->p, std::move(buckets[static_cast<std::size_t>(d)])));
  }
  return acc;
}

}  // namespace

RatFunc RatFunc::substitute(std::size_t i, const RatFunc& value) const {
  if (!num_.involves(i) && !den_.involves(i)) return *this;
  return substitute_poly(field_, num_, i, value) / substitute_poly(field_, den_, i, value);
}

RatFunc RatFunc::moved_to(const Field& target) const {
  if (target == field_) return *this;
  if (target->p != field_->p) throw DomainError("cannot move an element between characteristics");
  std::vector<std::size_t> map(field_->rank());
  for (std::size_t i = 0; i < field_->rank(); ++i) {
    bool used = num_.involves(i) || den_.involves(i);
    int j = target->index_of(field_->vars[i]);
    if (j < 0) {
      if (used) throw DomainError("indeterminate '" + field_->vars[i] + "' missing from " + target->header());
      j = 0;
    }
    map[i] = static_cast<std::size_t>(j);
  }
  auto remap = [&](const MPoly& a) {
    std::vector<Term> terms;
    for (const auto& t : a.terms()) {
      Monomial m;
      for (std::size_t i = 0; i < field_->rank(); ++i) {
        if (!t.mono.exp[i]) continue;
        m.exp[map[i]] = t.mono.exp[i];
        m.degree += t.mono.exp[i];
      }
      terms.push_back(Term{m, t.coeff});
    }
    return MPoly::from_terms(target->p, std::move(terms));
  };
  RatFunc r(target);
  r.num_ = remap(num_);
  r.den_ = remap(den_);
  check_degree(*target, r.num_, "numerator");
  check_degree(*target, r.den_, "denominator");
  return r;
}

std::string RatFunc::to_string() const {
  std::string n = num_.to_string(*field_);
  if (den_.is_one()) return n;
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string(*field_);
  bool bare = den_.is_monomial() && d.find('*') == std::string::npos;
  return n + "/" + (bare ? d : "(" + d + ")");
}

RatFunc frobenius_power(const RatFunc& f, int e) { return f.frobenius(e); }

// ---------------------------------------------------------------- decomposition

RatFunc FrobDecomp::reconstruct(const Field& f) const {
  RatFunc acc(f);
  for (const auto& [key, g] : parts) {
    std::vector<int> exps(key.begin(), key.end());
    acc += g.frobenius(level) * RatFunc::poly(f, MPoly::monomial(f->p, Monomial::from(exps)));
  }
  return acc;
}

bool FrobDecomp::reconstructs(const RatFunc& f) const {
  int p = f.field()->p;
  if (parts.empty()) return f.is_zero();
  MPoly L = MPoly::constant(p, 1);
  for (const auto& [key, g] : parts) L = L * *g.den().divide_exact(gcd(L, g.den()));
  MPoly sum(p);
  for (const auto& [key, g] : parts) {
    std::vector<int> exps(key.begin(), key.end());
    MPoly scaled = g.num() * *L.divide_exact(g.den());
    sum = sum + scaled.frobenius(level) * MPoly::monomial(p, Monomial::from(exps));
  }
  return sum * f.den() == f.num() * L.frobenius(level);
}

FrobDecomp frobenius_decompose(const RatFunc& f, int level) {
  const Field& field = f.field();
  int p = field->p;
  unsigned q = 1;
  for (int i = 0; i < level; ++i) q *= static_cast<unsigned>(p);
  FrobDecomp out;
  out.level = level;
  if (f.is_zero()) return out;
  MPoly n = f.num();
  if (!f.den().is_one()) n = n * f.den().pow(q - 1);
  std::size_t r = field->rank();
  std::map<ExpKey, std::vector<Term>> buckets;
  for (const auto& t : n.terms()) {
    ExpKey key(r);
    Monomial root;
    for (std::size_t i = 0; i < r; ++i) {
      key[i] = static_cast<int>(t.mono.exp[i] % q);
      root.exp[i] = static_cast<std::uint16_t>(t.mono.exp[i] / q);
      root.degree += root.exp[i];
    }
    buckets[key].push_back(Term{root, t.coeff});  // coefficients in F_p are their own q-th roots
  }
  for (auto& [key, terms] : buckets)
    out.parts.emplace(key, RatFunc(field, MPoly::from_terms(p, std::move(terms)), f.den()));
  return out;
}

// ---------------------------------------------------------------- dense K-linear algebra

KLinearSolution solve_k_linear(const Field& f, std::vector<std::vector<RatFunc>> rows, std::vector<RatFunc> rhs,
                               std::size_t unknowns) {
  bool homogeneous = rhs.empty();
  if (homogeneous) rhs.assign(rows.size(), RatFunc(f));
  if (rhs.size() != rows.size()) throw DomainError("right-hand side length does not match row count");
  for (auto& row : rows)
    if (row.size() != unknowns) throw DomainError("row length does not match unknown count");

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(rhs[piv], rhs[rank]);
    RatFunc inv = rows[rank][col].inverse();
    for (std::size_t c = col; c < unknowns; ++c) rows[rank][c] *= inv;
    rhs[rank] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      RatFunc factor = rows[r][col];
      for (std::size_t c = col; c < unknowns; ++c)
        if (!rows[rank][c].is_zero()) rows[r][c] -= factor * rows[rank][c];
      rhs[r] -= factor * rhs[rank];
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  KLinearSolution sol;
  sol.rank = rank;
  bool consistent = true;
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (!rhs[r].is_zero()) consistent = false;
  if (consistent) {
    std::vector<RatFunc> x(unknowns, RatFunc(f));
    for (std::size_t k = 0; k < rank; ++k) x[pivot_cols[k]] = rhs[k];
    sol.particular = std::move(x);
  }
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RatFunc> v(unknowns, RatFunc(f));
    v[free] = RatFunc(f, 1);
    for (std::size_t k = 0; k < rank; ++k) v[pivot_cols[k]] = -rows[k][free];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

namespace {

// Columns: decompositions of `elems` at `level`; rows: decomposition keys.
std::vector<std::vector<RatFunc>> decomposition_matrix(const Field& f, const std::vector<RatFunc>& elems, int level) {
  std::vector<FrobDecomp> decs;
  std::map<ExpKey, std::size_t> keys;
  for (const auto& e : elems) {
    decs.push_back(frobenius_decompose(e, level));
    for (const auto& kv : decs.back().parts) keys.emplace(kv.first, 0);
  }
  std::size_t idx = 0;
  for (auto& kv : keys) kv.second = idx++;
  std::vector<std::vector<RatFunc>> rows(keys.size(), std::vector<RatFunc>(elems.size(), RatFunc(f)));
  for (std::size_t c = 0; c < decs.size(); ++c)
    for (const auto& [key, g] : decs[c].parts) rows[keys[key]][c] = g;
  return rows;
}

}  // namespace

bool in_frobenius_image(const RatFunc& f, int level) {
  auto d = frobenius_decompose(f, level);
  for (const auto& kv : d.parts)
    for (int e : kv.first)
      if (e != 0) return false;
  return true;
}

bool frobenius_linearly_independent(const std::vector<RatFunc>& elems, int level, std::vector<RatFunc>* witness) {
  if (elems.empty()) return true;
  const Field& f = elems.front().field();
  auto rows = decomposition_matrix(f, elems, level);
  auto sol = solve_k_linear(f, std::move(rows), {}, elems.size());
  if (sol.kernel.empty()) return true;
  if (witness) *witness = sol.kernel.front();
  return false;
}

IndependenceResult p_independent(const std::vector<RatFunc>& elems) {
  IndependenceResult res;
  if (elems.empty()) {
    res.independent = true;
    res.rank = 1;
    res.products.push_back({});
    return res;
  }
  const Field& f = elems.front().field();
  int p = f->p;
  for (const auto& e : elems)
    if (e.is_zero()) throw DomainError("p-independence is undefined for the zero element");

  std::size_t m = elems.size();
  std::vector<int> k(m, 0);
  std::vector<RatFunc> prods;
  while (true) {
    RatFunc prod(f, 1);
    for (std::size_t i = 0; i < m; ++i)
      if (k[i]) prod *= elems[i].pow(k[i]);
    prods.push_back(prod);
    res.products.push_back(k);
    std::size_t i = 0;
    while (i < m && ++k[i] == p) k[i++] = 0;
    if (i == m) break;
  }
  auto rows = decomposition_matrix(f, prods, 1);
  auto sol = solve_k_linear(f, std::move(rows), {}, prods.size());
  res.rank = sol.rank;
  res.independent = sol.kernel.empty();
  if (!res.independent)
    for (const auto& a : sol.kernel.front()) res.relation.push_back(a.frobenius(1));
  return res;
}

std::optional<std::vector<RatFunc>> kp_module_membership(const RatFunc& f, const std::vector<RatFunc>& gens) {
  if (gens.empty()) throw DomainError("membership needs at least one generator");
  const Field& field = f.field();
  std::vector<RatFunc> all = gens;
  all.push_back(f);
  auto rows = decomposition_matrix(field, all, 1);
  std::vector<RatFunc> rhs;
  for (auto& row : rows) {
    rhs.push_back(row.back());
    row.pop_back();
  }
  auto sol = solve_k_linear(field, std::move(rows), std::move(rhs), gens.size());
  if (!sol.particular) return std::nullopt;
  return sol.particular;
}

}  // namespace punip
