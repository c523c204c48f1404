#ifndef PUNIP_PPOLY_HPP
#define PUNIP_PPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "punip/basis.hpp"
#include "punip/ratfunc.hpp"

namespace punip {

/// Additive polynomial sum c_{i,e} X_i^(p^e) in `arity` variables.
class PPoly {
 public:
  using Key = std::pair<int, int>;  // (variable, power exponent e)

  PPoly() = default;
  PPoly(Field f, std::size_t arity);
  /// c * X_i^(p^e).
  static PPoly monomial(Field f, std::size_t arity, std::size_t i, int e, const RatFunc& c);
  static PPoly var(Field f, std::size_t arity, std::size_t i, int e = 0);

  const Field& field() const noexcept { return field_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::map<Key, RatFunc>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  RatFunc coeff(std::size_t i, int e) const;
  /// Highest e with a term in X_i, or -1.
  int max_power(std::size_t i) const;
  int max_power() const;
  bool involves(std::size_t i) const { return max_power(i) >= 0; }

  void add_term(std::size_t i, int e, const RatFunc& c);

  PPoly operator-() const;
  PPoly operator+(const PPoly& o) const;
  PPoly operator-(const PPoly& o) const;
  PPoly& operator+=(const PPoly& o);
  PPoly& operator-=(const PPoly& o) { return *this += -o; }
  PPoly scaled(const RatFunc& c) const;
  /// F^(p^e) = sum c^(p^e) X^(p^(k+e)).
  PPoly twist(int e) const;

  /// Evaluation at a point; additive in the point.
  RatFunc eval(const std::vector<RatFunc>& point) const;

  /// Variable i goes to index map[i] in a space of `arity` variables.
  PPoly remapped(const std::vector<std::size_t>& map, std::size_t arity) const;
  /// Coefficients re-expressed over another field (by indeterminate name).
  PPoly moved_to(const Field& f) const;
  /// Applies g to every coefficient.
  template <class G>
  PPoly map_coeffs(const Field& f, G&& g) const {
    PPoly r(f, arity_);
    for (const auto& [k, c] : terms_) r.add_term(static_cast<std::size_t>(k.first), k.second, g(c));
    return r;
  }

  friend bool operator==(const PPoly& a, const PPoly& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Field field_;
  std::size_t arity_ = 0;
  std::map<Key, RatFunc> terms_;
};

/// sum_i F_i-coefficient composition: F(subs_0, ..., subs_{n-1}).
PPoly ppoly_compose(const PPoly& f, const std::vector<PPoly>& subs);

struct PrincipalPart {
  /// variable -> (power exponent, coefficient)
  std::map<std::size_t, std::pair<int, RatFunc>> leading;
};

PrincipalPart principal_part(const PPoly& f);
/// The principal part as an additive polynomial.
PPoly principal_polynomial(const PPoly& f);

/// Exponent vector of a general monomial in the ambient variables.
using ExpVec = std::vector<std::uint32_t>;

/// General polynomial over K in `nvars` variables (used for non-additive maps).
class GPoly {
 public:
  GPoly() = default;
  GPoly(Field f, std::size_t nvars);
  static GPoly constant(Field f, std::size_t nvars, const RatFunc& c);
  static GPoly var(Field f, std::size_t nvars, std::size_t i);
  static GPoly from_ppoly(const PPoly& f);

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<ExpVec, RatFunc>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const ExpVec& e, const RatFunc& c);

  GPoly operator-() const;
  GPoly operator+(const GPoly& o) const;
  GPoly operator-(const GPoly& o) const;
  GPoly operator*(const GPoly& o) const;
  GPoly& operator+=(const GPoly& o);
  GPoly scaled(const RatFunc& c) const;
  /// Power computed through p-adic digits (Frobenius is additive).
  GPoly pow(std::uint64_t e) const;
  GPoly frobenius(int e) const;

  /// Composition: variable i := subs[i] (all subs share an arity).
  GPoly substitute(const std::vector<GPoly>& subs) const;
  RatFunc eval(const std::vector<RatFunc>& point) const;
  /// Variables renumbered into a larger space.
  GPoly remapped(const std::vector<std::size_t>& map, std::size_t nvars) const;
  /// The additive form when every monomial is a single p-power.
  std::optional<PPoly> to_ppoly() const;

  friend bool operator==(const GPoly& a, const GPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Field field_;
  std::size_t nvars_ = 0;
  std::map<ExpVec, RatFunc> terms_;
};

using PolyMap = std::vector<GPoly>;

/// Verifies additivity of every component of `b` in each block of variables:
/// b(.., x + x', ..) = b(.., x, ..) + b(.., x', ..) symbolically.
bool polymap_multiadditive_check(const PolyMap& b, const std::vector<std::vector<std::size_t>>& arg_partition);

enum class Exactness { Exact, WithinTruncation };

struct ReducedVerdict {
  bool reduced = false;
  Exactness exactness = Exactness::Exact;
  /// Nonzero zero of the principal part (one entry per variable), when not reduced.
  std::vector<RatFunc> witness;
  std::size_t kernel_dim = 0;
  std::string truncation;
};

/// Exact reducedness when all leading powers coincide: leading coefficients
/// must be linearly independent over K^(p^e). Throws DomainError otherwise.
ReducedVerdict reduced_diagonal(const PPoly& f);

/// Zeros of the principal part with all coordinates in span(B).
ReducedVerdict reduced_within(const PPoly& f, const MonomialBasis& b);

struct UniversalVerdict {
  bool covered = false;
  Exactness exactness = Exactness::WithinTruncation;
  /// Indices of B_tgt elements not attained.
  std::vector<std::size_t> missing;
  std::string truncation;
};

/// Checks span(B_tgt) is contained in F(span(B_dom)^n).
UniversalVerdict universal_within(const PPoly& f, const MonomialBasis& dom, const MonomialBasis& tgt);

}  // namespace punip

#endif  // PUNIP_PPOLY_HPP
