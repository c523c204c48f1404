#include "punip/mpoly.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <sstream>

#include "punip/error.hpp"

namespace punip {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int FieldCtx::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

std::string FieldCtx::header() const {
  std::string s = "GF(" + std::to_string(p) + ")(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += vars[i];
  }
  return s + ")";
}

Field make_field(int p, std::vector<std::string> vars, int max_degree) {
  if (!is_prime(p) || p > 13) throw DomainError("characteristic must be a prime in [2, 13], got " + std::to_string(p));
  if (vars.size() > kMaxFieldVars)
    throw DomainError("at most " + std::to_string(kMaxFieldVars) + " field indeterminates are supported");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw DomainError("empty indeterminate name");
    if (!seen.insert(v).second) throw DomainError("duplicate indeterminate '" + v + "'");
  }
  if (max_degree < 1) throw DomainError("max_degree must be positive");
  auto f = std::make_shared<FieldCtx>();
  f->p = p;
  f->vars = std::move(vars);
  f->max_degree = max_degree;
  return f;
}

Field with_max_degree(const Field& f, int max_degree) { return make_field(f->p, f->vars, max_degree); }

namespace fp {
int inv(int a, int p) {
  a = reduce(a, p);
  if (a == 0) throw DivisionByZero();
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}
}  // namespace fp

// ---------------------------------------------------------------- Monomial

Monomial Monomial::from(const std::vector<int>& exps) {
  if (exps.size() > kMaxFieldVars) throw DomainError("exponent vector too long");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 0xFFFF) throw OverflowError("exponent out of range");
    m.exp[i] = static_cast<std::uint16_t>(exps[i]);
    m.degree += static_cast<std::uint32_t>(exps[i]);
  }
  return m;
}

Monomial Monomial::var(std::size_t i, unsigned e) {
  Monomial m;
  m.exp[i] = static_cast<std::uint16_t>(e);
  m.degree = e;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxFieldVars; ++i) {
    unsigned s = unsigned(exp[i]) + o.exp[i];
    if (s > 0xFFFF) throw OverflowError("exponent overflow in monomial product");
    m.exp[i] = static_cast<std::uint16_t>(s);
  }
  m.degree = degree + o.degree;
  return m;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  for (std::size_t i = 0; i < kMaxFieldVars; ++i)
    if (exp[i] > o.exp[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxFieldVars; ++i) m.exp[i] = static_cast<std::uint16_t>(o.exp[i] - exp[i]);
  m.degree = o.degree - degree;
  return m;
}

Monomial Monomial::scaled(unsigned k) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxFieldVars; ++i) {
    unsigned long s = static_cast<unsigned long>(exp[i]) * k;
    if (s > 0xFFFF) throw OverflowError("exponent overflow under Frobenius");
    m.exp[i] = static_cast<std::uint16_t>(s);
  }
  m.degree = degree * k;
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxFieldVars; ++i) {
    m.exp[i] = std::min(a.exp[i], b.exp[i]);
    m.degree += m.exp[i];
  }
  return m;
}

std::string Monomial::to_string(const FieldCtx& f) const {
  if (is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < kMaxFieldVars; ++i) {
    if (!exp[i]) continue;
    if (!s.empty()) s += "*";
    s += i < f.vars.size() ? f.vars[i] : "t" + std::to_string(i + 1);
    if (exp[i] > 1) s += "^" + std::to_string(exp[i]);
  }
  return s;
}

// ---------------------------------------------------------------- MPoly

namespace {

void normalize_terms(int p, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return b.mono < a.mono; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    int c = 0;
    while (j < terms.size() && terms[j].mono == terms[i].mono) c = (c + terms[j++].coeff) % p;
    if (c != 0) terms[out++] = Term{terms[i].mono, static_cast<std::uint16_t>(c)};
    i = j;
  }
  terms.resize(out);
}

}  // namespace

class MPolyBuilder {
 public:
  static MPoly make(int p, std::vector<Term> sorted_terms) {
    MPoly r(p);
    r.terms_ = std::move(sorted_terms);
    return r;
  }
};

MPoly MPoly::constant(int p, long long c) {
  int v = fp::reduce(c, p);
  MPoly r(p);
  if (v) r.terms_.push_back(Term{Monomial{}, static_cast<std::uint16_t>(v)});
  return r;
}

MPoly MPoly::monomial(int p, const Monomial& m, long long c) {
  int v = fp::reduce(c, p);
  MPoly r(p);
  if (v) r.terms_.push_back(Term{m, static_cast<std::uint16_t>(v)});
  return r;
}

MPoly MPoly::variable(int p, std::size_t i) { return monomial(p, Monomial::var(i), 1); }

MPoly MPoly::from_terms(int p, std::vector<Term> terms) {
  for (auto& t : terms) t.coeff = static_cast<std::uint16_t>(t.coeff % p);
  normalize_terms(p, terms);
  return MPolyBuilder::make(p, std::move(terms));
}

int MPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!terms_[0].mono.is_one() || terms_.size() != 1) throw DomainError("polynomial is not constant");
  return terms_[0].coeff;
}

int MPoly::degree_in(std::size_t var) const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[var]);
  return d;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.coeff = static_cast<std::uint16_t>(p_ - t.coeff);
  return r;
}

namespace {

// Merge of two sorted term lists with coefficient sign `sgn` on the second.
std::vector<Term> merge_terms(int p, const std::vector<Term>& a, const std::vector<Term>& b, int sgn) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && b[j].mono < a[i].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || a[i].mono < b[j].mono) {
      int c = sgn > 0 ? b[j].coeff : (p - b[j].coeff) % p;
      out.push_back(Term{b[j].mono, static_cast<std::uint16_t>(c)});
      ++j;
    } else {
      int c = sgn > 0 ? (a[i].coeff + b[j].coeff) % p : (a[i].coeff + p - b[j].coeff) % p;
      if (c) out.push_back(Term{a[i].mono, static_cast<std::uint16_t>(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly MPoly::operator+(const MPoly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return MPolyBuilder::make(p_, merge_terms(p_, terms_, o.terms_, +1));
}

MPoly MPoly::operator-(const MPoly& o) const {
  if (o.is_zero()) return *this;
  return MPolyBuilder::make(o.p_, merge_terms(o.p_, terms_, o.terms_, -1));
}

MPoly MPoly::operator*(const MPoly& o) const {
  if (is_zero() || o.is_zero()) return MPoly(p_);
  if (o.is_monomial()) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (is_monomial()) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      prod.push_back(Term{a.mono * b.mono, static_cast<std::uint16_t>(a.coeff * b.coeff % p_)});
  normalize_terms(p_, prod);
  return MPolyBuilder::make(p_, std::move(prod));
}

MPoly MPoly::scaled(int c) const {
  c = fp::reduce(c, p_);
  if (c == 0) return MPoly(p_);
  if (c == 1) return *this;
  MPoly r(*this);
  for (auto& t : r.terms_) t.coeff = static_cast<std::uint16_t>(t.coeff * c % p_);
  return r;
}

MPoly MPoly::times_monomial(const Monomial& m, int c) const {
  c = fp::reduce(c, p_);
  if (c == 0) return MPoly(p_);
  MPoly r(*this);
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    t.coeff = static_cast<std::uint16_t>(t.coeff * c % p_);
  }
  return r;  // multiplication by a monomial preserves the order
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(p_, 1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::frobenius(int e) const {
  if (e == 0) return *this;
  unsigned q = 1;
  for (int i = 0; i < e; ++i) q *= static_cast<unsigned>(p_);
  MPoly r(*this);
  for (auto& t : r.terms_) t.mono = t.mono.scaled(q);
  return r;  // scaling all exponents by q preserves grlex order
}

MPoly MPoly::monic() const {
  if (is_zero() || terms_[0].coeff == 1) return *this;
  return scaled(fp::inv(terms_[0].coeff, p_));
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
  if (d.is_zero()) throw DivisionByZero();
  if (is_zero()) return MPoly(p_);
  if (d.is_constant()) return scaled(fp::inv(d.terms_[0].coeff, p_));
  const Term& lt = d.terms_[0];
  int lc_inv = fp::inv(lt.coeff, p_);
  if (d.is_monomial()) {
    MPoly q(p_);
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back(Term{lt.mono.quotient_of(t.mono), static_cast<std::uint16_t>(t.coeff * lc_inv % p_)});
    }
    return q;
  }
  if (d.total_degree() > total_degree()) return std::nullopt;
  std::vector<Term> quot;
  MPoly rem = *this;
  while (!rem.is_zero()) {
    const Term& r0 = rem.terms_[0];
    if (!lt.mono.divides(r0.mono)) return std::nullopt;
    Term q{lt.mono.quotient_of(r0.mono), static_cast<std::uint16_t>(r0.coeff * lc_inv % p_)};
    quot.push_back(q);
    rem = rem - d.times_monomial(q.mono, q.coeff);
  }
  return MPolyBuilder::make(p_, std::move(quot));  // quotient terms are produced in decreasing order
}

std::string MPoly::to_string(const FieldCtx& f) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    int c = t.coeff;
    bool negative = c > p_ / 2 && p_ > 2;
    if (negative) c = p_ - c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + "*";
      s += t.mono.to_string(f);
    }
  }
  return s;
}

// ---------------------------------------------------------------- gcd

namespace {

// Coefficients of `a` as a polynomial in variable x: result[d] collects the
// terms of x-degree d with x removed.
std::vector<MPoly> univariate_view(const MPoly& a, std::size_t x) {
  int deg = a.degree_in(x);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : a.terms()) {
    Term u = t;
    u.mono.degree -= u.mono.exp[x];
    u.mono.exp[x] = 0;
    buckets[t.mono.exp[x]].push_back(u);
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MPoly::from_terms(a.p(), std::move(b)));
  return out;
}

MPoly from_view(int p, const std::vector<MPoly>& v, std::size_t x) {
  MPoly r(p);
  for (std::size_t d = 0; d < v.size(); ++d)
    if (!v[d].is_zero()) r += d == 0 ? v[d] : v[d].times_monomial(Monomial::var(x, static_cast<unsigned>(d)));
  return r;
}

void trim(std::vector<MPoly>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

MPoly content_of(const std::vector<MPoly>& v) {
  MPoly g(v.empty() ? 2 : v[0].p());
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

void divide_view(std::vector<MPoly>& v, const MPoly& c) {
  if (c.is_one()) return;
  for (auto& x : v) {
    auto q = x.divide_exact(c);
    if (!q) throw Error("internal: content does not divide coefficient");
    x = *q;
  }
}

// Pseudo-remainder of u by v (both nonzero, deg u >= deg v) in the view variable.
std::vector<MPoly> pseudo_remainder(std::vector<MPoly> u, const std::vector<MPoly>& v, std::size_t x) {
  const MPoly& lv = v.back();
  while (!u.empty() && u.size() >= v.size()) {
    MPoly lu = u.back();
    std::size_t shift = u.size() - v.size();
    // Scaling u by lv is only needed when lv does not divide the leading coefficient.
    if (auto q = lu.divide_exact(lv)) {
      for (std::size_t i = 0; i < v.size(); ++i) u[i + shift] -= *q * v[i];
    } else {
      for (auto& c : u) c = c * lv;
      for (std::size_t i = 0; i < v.size(); ++i) u[i + shift] -= lu * v[i];
    }
    trim(u);
  }
  (void)x;
  return u;
}

// GF(p^k) with p^k >= 64 by lookup tables; elements are base-p digit vectors
// packed into an index, with the F_p elements embedded as 0..p-1.
struct SmallField {
  int p = 2;
  int q = 2;
  std::vector<std::uint16_t> add, mul, neg, inv;

  explicit SmallField(int prime) : p(prime) {
    int k = 1;
    for (q = p; q < 64; q *= p) ++k;
    auto digits = [&](int a) {
      std::vector<int> d(static_cast<std::size_t>(k));
      for (auto& x : d) {
        x = a % p;
        a /= p;
      }
      return d;
    };
    auto pack = [&](const std::vector<int>& d) {
      int a = 0;
      for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
      return a;
    };
    auto n = static_cast<std::size_t>(q);
    add.resize(n * n);
    neg.resize(n);
    for (int a = 0; a < q; ++a) {
      auto da = digits(a);
      std::vector<int> dn(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) dn[i] = (p - da[i]) % p;
      neg[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(pack(dn));
      for (int b = 0; b < q; ++b) {
        auto db = digits(b);
        for (std::size_t i = 0; i < db.size(); ++i) db[i] = (da[i] + db[i]) % p;
        add[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(pack(db));
      }
    }
    // Monic modulus x^k + m(x): the first one without zero divisors is irreducible.
    for (int m = 0; m < q; ++m) {
      auto mod = digits(m);
      mul.assign(n * n, 0);
      inv.assign(n, 0);
      bool field = true;
      for (int a = 0; a < q && field; ++a) {
        auto da = digits(a);
        for (int b = 0; b < q; ++b) {
          auto db = digits(b);
          std::vector<int> prod(2 * static_cast<std::size_t>(k), 0);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
          for (int d = 2 * k - 1; d >= k; --d) {
            int c = prod[static_cast<std::size_t>(d)];
            if (!c) continue;
            prod[static_cast<std::size_t>(d)] = 0;
            for (int i = 0; i < k; ++i) {
              auto& slot = prod[static_cast<std::size_t>(d - k + i)];
              slot = ((slot - c * mod[static_cast<std::size_t>(i)]) % p + p) % p;
            }
          }
          prod.resize(static_cast<std::size_t>(k));
          int r = pack(prod);
          mul[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(r);
          if (r == 1) inv[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(b);
          if (a && b && r == 0) {
            field = false;
            break;
          }
        }
      }
      if (field) return;
    }
    throw Error("internal: no irreducible modulus found");
  }

  int plus(int a, int b) const { return add[static_cast<std::size_t>(a * q + b)]; }
  int times(int a, int b) const { return mul[static_cast<std::size_t>(a * q + b)]; }
};

const SmallField& small_field(int p) {
  static const std::vector<SmallField> fields = [] {
    std::vector<SmallField> v;
    for (int prime : {2, 3, 5, 7, 11, 13}) v.emplace_back(prime);
    return v;
  }();
  for (const auto& f : fields)
    if (f.p == p) return f;
  throw Error("internal: unsupported characteristic " + std::to_string(p));
}

// Dense image of `a` in GF(q)[x] after substituting pt[i] for every other variable.
std::vector<int> image_at(const SmallField& F, const MPoly& a, std::size_t x, const std::array<int, kMaxFieldVars>& pt) {
  std::vector<int> out(static_cast<std::size_t>(a.degree_in(x)) + 1, 0);
  for (const auto& t : a.terms()) {
    int c = t.coeff;
    for (std::size_t i = 0; i < kMaxFieldVars && c; ++i)
      if (i != x)
        for (unsigned k = 0; k < t.mono.exp[i]; ++k) c = F.times(c, pt[i]);
    auto& slot = out[t.mono.exp[x]];
    slot = F.plus(slot, c);
  }
  return out;
}

std::size_t univariate_gcd_degree(const SmallField& F, std::vector<int> a, std::vector<int> b) {
  auto strip = [](std::vector<int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    int inv = F.inv[static_cast<std::size_t>(b.back())];
    while (a.size() >= b.size()) {
      int f = F.neg[static_cast<std::size_t>(F.times(a.back(), inv))];
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = F.plus(a[i + shift], F.times(f, b[i]));
      strip(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Sound test that gcd(a, b) has degree 0 in x: at a point where neither leading
// coefficient in x vanishes, the image of the gcd divides the gcd of the images.
// Points come from a fixed sequence in GF(p^k); false means "unknown".
bool coprime_in(const MPoly& a, const MPoly& b, std::size_t x) {
  const SmallField& F = small_field(a.p());
  std::uint32_t state = 0x9e3779b9u;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::array<int, kMaxFieldVars> pt{};
    for (auto& v : pt) {
      state = state * 1664525u + 1013904223u;
      v = static_cast<int>((state >> 8) % static_cast<std::uint32_t>(F.q));
    }
    std::vector<int> ia = image_at(F, a, x, pt), ib = image_at(F, b, x, pt);
    if (ia.back() == 0 || ib.back() == 0) continue;
    if (univariate_gcd_degree(F, ia, ib) == 0) return true;
  }
  return false;
}

int first_var(const MPoly& a, const MPoly& b) {
  for (std::size_t i = 0; i < kMaxFieldVars; ++i)
    if (a.involves(i) || b.involves(i)) return static_cast<int>(i);
  return -1;
}

MPoly monomial_gcd(const MPoly& mono, const MPoly& other) {
  Monomial g = mono.leading().mono;
  for (const auto& t : other.terms()) {
    g = Monomial::gcd(g, t.mono);
    if (g.is_one()) break;
  }
  return MPoly::monomial(mono.p(), g);
}

// a = r^p for a polynomial r over F_p exactly when every exponent is divisible by p.
std::optional<MPoly> pth_root(const MPoly& a) {
  auto p = static_cast<std::uint16_t>(a.p());
  std::vector<Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    Term r = t;
    for (auto& e : r.mono.exp) {
      if (e % p) return std::nullopt;
      e = static_cast<std::uint16_t>(e / p);
    }
    r.mono.degree /= p;
    terms.push_back(r);
  }
  return MPoly::from_terms(a.p(), std::move(terms));
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  int p = a.p();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly::constant(p, 1);
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);
  if (a == b) return a.monic();
  if (auto ra = pth_root(a))
    if (auto rb = pth_root(b)) return gcd(*ra, *rb).frobenius(1);

  int xi = first_var(a, b);
  auto x = static_cast<std::size_t>(xi);
  if (!a.involves(x)) return gcd(a, content_of(univariate_view(b, x)));
  if (!b.involves(x)) return gcd(content_of(univariate_view(a, x)), b);

  auto va = univariate_view(a, x);
  auto vb = univariate_view(b, x);
  if (coprime_in(a, b, x)) return gcd(content_of(va), content_of(vb));
  MPoly ca = content_of(va), cb = content_of(vb);
  MPoly c = gcd(ca, cb);
  divide_view(va, ca);
  divide_view(vb, cb);
  if (va.size() < vb.size()) std::swap(va, vb);
  while (true) {
    auto r = pseudo_remainder(va, vb, x);
    if (r.empty()) break;
    if (r.size() == 1) {
      // A nonzero remainder free of x: the primitive parts are coprime.
      return c.monic();
    }
    divide_view(r, content_of(r));
    va = std::move(vb);
    vb = std::move(r);
  }
  divide_view(vb, content_of(vb));
  return (c * from_view(p, vb, x)).monic();
}

}  // namespace punip
