// Reference computations for tests. They deliberately avoid the library's
// decomposition and solver code paths and work from first principles.
#ifndef PUNIP_TESTS_ORACLES_HPP
#define PUNIP_TESTS_ORACLES_HPP

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "punip/homsolver.hpp"
#include "punip/ratfunc.hpp"

namespace oracle {

using punip::Field;
using punip::FpVector;
using punip::MPoly;
using punip::Monomial;
using punip::RatFunc;

// Splits a polynomial by exponents mod p: f = sum_e g_e^p t^e. Over F_p every
// coefficient is its own p-th root, so g_e just divides the exponents by p.
inline std::map<std::vector<int>, MPoly> split_poly(const MPoly& f, std::size_t rank) {
  int p = f.p();
  std::map<std::vector<int>, std::vector<punip::Term>> parts;
  for (const auto& t : f.terms()) {
    std::vector<int> e(rank), q(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      e[i] = t.mono.exp[i] % p;
      q[i] = t.mono.exp[i] / p;
    }
    parts[e].push_back(punip::Term{Monomial::from(q), t.coeff});
  }
  std::map<std::vector<int>, MPoly> out;
  for (auto& [e, terms] : parts) out[e] = MPoly::from_terms(p, std::move(terms));
  return out;
}

// N / D = (N D^(p-1)) / D^p, so the parts of N / D are the parts of N D^(p-1) over D.
inline std::map<std::vector<int>, RatFunc> frobenius_parts(const RatFunc& f) {
  const Field& F = f.field();
  MPoly lifted = f.num() * f.den().pow(static_cast<unsigned>(F->p - 1));
  std::map<std::vector<int>, RatFunc> out;
  for (const auto& [e, g] : split_poly(lifted, F->rank())) out.emplace(e, RatFunc(F, g, f.den()));
  return out;
}

// Rank over K of a matrix of field elements, by plain row reduction.
inline std::size_t rank_over_k(std::vector<std::vector<RatFunc>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    RatFunc inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      RatFunc factor = m[i][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - factor * m[r][k];
    }
    ++r;
  }
  return r;
}

// log_p [K^p(S) : K^p], computed as the K-rank of the Frobenius parts of all
// products prod s_i^(e_i) with 0 <= e_i < p.
inline std::size_t kp_degree_log(const std::vector<RatFunc>& s) {
  const Field& F = s.front().field();
  int p = F->p;
  std::size_t count = 1;
  for (std::size_t i = 0; i < s.size(); ++i) count *= static_cast<std::size_t>(p);
  // Column index for every exponent class in [0, p)^r.
  std::size_t width = 1;
  for (std::size_t i = 0; i < F->rank(); ++i) width *= static_cast<std::size_t>(p);
  std::vector<std::vector<RatFunc>> rows;
  for (std::size_t code = 0; code < count; ++code) {
    RatFunc prod(F, 1);
    std::size_t x = code;
    for (const auto& si : s) {
      prod = prod * si.pow(static_cast<long long>(x % static_cast<std::size_t>(p)));
      x /= static_cast<std::size_t>(p);
    }
    std::vector<RatFunc> row(width, RatFunc(F));
    for (const auto& [e, g] : frobenius_parts(prod)) {
      std::size_t col = 0;
      for (std::size_t i = F->rank(); i-- > 0;) col = col * static_cast<std::size_t>(p) + static_cast<std::size_t>(e[i]);
      row[col] = g;
    }
    rows.push_back(row);
  }
  std::size_t rank = rank_over_k(rows);
  std::size_t log = 0;
  for (std::size_t v = 1; v < rank; v *= static_cast<std::size_t>(p)) ++log;
  return log;
}

inline MPoly random_poly(int p, std::size_t rank, int max_deg, std::mt19937& rng, int terms = 4) {
  std::uniform_int_distribution<int> coeff(1, p - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<punip::Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(rank, 0);
    int budget = deg(rng);
    for (int b = 0; b < budget; ++b) e[static_cast<std::size_t>(rng() % rank)] += 1;
    ts.push_back(punip::Term{Monomial::from(e), static_cast<std::uint16_t>(coeff(rng))});
  }
  return MPoly::from_terms(p, ts);
}

inline RatFunc random_ratfunc(const Field& F, int max_deg, std::mt19937& rng) {
  MPoly num = random_poly(F->p, F->rank(), max_deg, rng);
  MPoly den;
  do {
    den = random_poly(F->p, F->rank(), max_deg, rng, 3);
  } while (den.is_zero());
  return RatFunc(F, num, den);
}

// The map described by an unknown assignment, built straight from the
// interpretation table rather than through HomSpace::decode.
inline punip::HomTuple assemble(const punip::HomSpace& h, const FpVector& x) {
  std::vector<punip::PPoly> coords(h.tgt.arity(), punip::PPoly(h.src.field(), h.src.arity()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    const auto& u = h.interpretation[k];
    RatFunc c = h.ansatz.coeff_basis.element(u.monomial).scaled(x[k]);
    coords[u.tgt_coord].add_term(u.src_var, u.power, c);
  }
  return punip::HomTuple{h.src, h.tgt, coords};
}

struct BruteResult {
  std::size_t assignments = 0;
  std::size_t homs = 0;
  std::size_t disagreements = 0;
};

// Exhaustive check over F_2: every assignment is a homomorphism exactly when
// the solver's affine space contains it.
inline BruteResult brute_force_f2(const punip::HomSpace& h) {
  BruteResult r;
  std::size_t u = h.unknowns();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << u); ++code) {
    FpVector x(u);
    for (std::size_t k = 0; k < u; ++k) x[k] = static_cast<std::uint8_t>((code >> k) & 1U);
    bool hom = punip::hom_verify(assemble(h, x)).ok;
    bool in = h.space.contains(x);
    ++r.assignments;
    if (hom) ++r.homs;
    if (hom != in) ++r.disagreements;
  }
  return r;
}

}  // namespace oracle

#endif  // PUNIP_TESTS_ORACLES_HPP
