#include "punip/basis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "punip/error.hpp"

namespace punip {

MPoly lcm(const MPoly& a, const MPoly& b) {
  if (a.is_one()) return b.monic();
  if (b.is_one()) return a.monic();
  MPoly g = gcd(a, b);
  return (*a.divide_exact(g) * b).monic();
}

MonomialBasis MonomialBasis::total_degree(const Field& f, int d, std::optional<MPoly> denominator) {
  if (d < 0) throw DomainError("basis degree must be nonnegative");
  std::vector<Monomial> monos;
  std::size_t r = f->rank();
  // Enumerate exponent vectors with |a| <= d, then sort by the field order.
  std::vector<int> a(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == r) {
      monos.push_back(Monomial::from(a));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      a[i] = e;
      rec(i + 1, left - e);
    }
    a[i] = 0;
  };
  rec(0, d);
  std::sort(monos.begin(), monos.end());
  std::string desc = "total degree <= " + std::to_string(d);
  if (denominator && !denominator->is_one()) desc += " over " + denominator->to_string(*f);
  return of(f, std::move(monos), denominator, desc);
}

MonomialBasis MonomialBasis::of(const Field& f, std::vector<Monomial> monomials, std::optional<MPoly> denominator,
                                std::string description) {
  if (monomials.empty()) throw DomainError("monomial basis must be nonempty");
  std::set<std::array<std::uint16_t, kMaxFieldVars>> seen;
  for (const auto& m : monomials) {
    for (std::size_t i = f->rank(); i < kMaxFieldVars; ++i)
      if (m.exp[i]) throw DomainError("basis monomial uses an indeterminate outside the field");
    if (!seen.insert(m.exp).second) throw DomainError("duplicate basis monomial " + m.to_string(*f));
  }
  MonomialBasis b;
  b.field = f;
  b.monomials = std::move(monomials);
  b.denominator = denominator ? denominator->monic() : MPoly::constant(f->p, 1);
  if (b.denominator.is_zero()) throw DivisionByZero();
  b.description = std::move(description);
  return b;
}

RatFunc MonomialBasis::element(std::size_t k) const {
  return RatFunc(field, MPoly::monomial(field->p, monomials.at(k)), denominator);
}

RatFunc MonomialBasis::combine(const FpVector& coeffs, std::size_t offset) const {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < monomials.size(); ++k)
    if (coeffs.at(offset + k)) terms.push_back(Term{monomials[k], coeffs[offset + k]});
  if (terms.empty()) return RatFunc(field);
  return RatFunc(field, MPoly::from_terms(field->p, std::move(terms)), denominator);
}

int MonomialBasis::index_of(const Monomial& m) const {
  for (std::size_t k = 0; k < monomials.size(); ++k)
    if (monomials[k] == m) return static_cast<int>(k);
  return -1;
}

MonomialBasis MonomialBasis::product(const MonomialBasis& other) const {
  std::set<Monomial> prods;
  for (const auto& a : monomials)
    for (const auto& b : other.monomials) prods.insert(a * b);
  return of(field, std::vector<Monomial>(prods.begin(), prods.end()), denominator * other.denominator,
            "(" + description + ") * (" + other.description + ")");
}

std::optional<FpVector> expand_in_basis(const RatFunc& f, const MonomialBasis& b) {
  FpVector out(b.size(), 0);
  if (f.is_zero()) return out;
  // f * D must be a polynomial whose monomials all lie in the basis.
  RatFunc scaled = f * RatFunc::poly(f.field(), b.denominator);
  if (!scaled.is_polynomial()) return std::nullopt;
  for (const auto& t : scaled.num().terms()) {
    int k = b.index_of(t.mono);
    if (k < 0) return std::nullopt;
    out[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(t.coeff);
  }
  return out;
}

FrobeniusLinearSystem::FrobeniusLinearSystem(Field f, std::size_t unknowns)
    : field_(std::move(f)), sys_(field_->p, unknowns) {}

std::size_t FrobeniusLinearSystem::add_group(const MonomialBasis& basis, std::size_t offset) {
  if (offset + basis.size() > sys_.unknowns()) throw DomainError("unknown group exceeds the unknown count");
  groups_.push_back(Group{basis, offset});
  return groups_.size() - 1;
}

void FrobeniusLinearSystem::add_equation(const std::vector<Contribution>& lhs, const RatFunc& rhs) {
  int p = field_->p;
  std::vector<RatFunc> scaled;
  scaled.reserve(lhs.size());
  MPoly common = rhs.den();
  for (const auto& c : lhs) {
    const Group& g = groups_.at(c.group);
    RatFunc r = c.coeff;
    if (!g.basis.denominator.is_one()) r = r / RatFunc::poly(field_, g.basis.denominator.frobenius(c.twist));
    if (!r.den().is_one()) common = lcm(common, r.den());
    scaled.push_back(std::move(r));
  }

  std::map<Monomial, std::map<std::uint32_t, int>> rows;
  auto check = [&](const Monomial& m) {
    if (m.degree > static_cast<std::uint32_t>(field_->max_degree))
      throw OverflowError("expanded monomial " + m.to_string(*field_) + " of degree " + std::to_string(m.degree) +
                          " exceeds the degree bound " + std::to_string(field_->max_degree));
  };
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const RatFunc& r = scaled[k];
    if (r.is_zero()) continue;
    MPoly poly = r.num();
    if (!(common == r.den())) poly = poly * *common.divide_exact(r.den());
    const Group& g = groups_[lhs[k].group];
    unsigned q = 1;
    for (int i = 0; i < lhs[k].twist; ++i) q *= static_cast<unsigned>(p);
    for (std::size_t m = 0; m < g.basis.size(); ++m) {
      Monomial mq = g.basis.monomials[m].scaled(q);
      auto col = static_cast<std::uint32_t>(g.offset + m);
      for (const auto& t : poly.terms()) {
        Monomial key = t.mono * mq;
        check(key);
        int& v = rows[key][col];
        v = (v + t.coeff) % p;
      }
    }
  }
  std::map<Monomial, int> rhs_terms;
  if (!rhs.is_zero()) {
    MPoly poly = rhs.num();
    if (!(common == rhs.den())) poly = poly * *common.divide_exact(rhs.den());
    for (const auto& t : poly.terms()) {
      check(t.mono);
      rhs_terms[t.mono] = t.coeff;
      rows[t.mono];  // ensure the row exists
    }
  }
  for (const auto& [mono, entries] : rows) {
    std::vector<std::pair<std::uint32_t, int>> row;
    for (const auto& [col, v] : entries)
      if (v) row.emplace_back(col, v);
    auto it = rhs_terms.find(mono);
    int b = it == rhs_terms.end() ? 0 : it->second;
    if (row.empty() && b == 0) continue;
    sys_.add_row(row, b);
  }
}

}  // namespace punip
