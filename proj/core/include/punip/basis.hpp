#ifndef PUNIP_BASIS_HPP
#define PUNIP_BASIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "punip/linalg.hpp"
#include "punip/ratfunc.hpp"

namespace punip {

/// Truncation: the F_p-span of {m / denominator : m in monomials}.
struct MonomialBasis {
  Field field;
  std::vector<Monomial> monomials;
  MPoly denominator;
  std::string description;

  /// All monomials of total degree <= d (graded-lex increasing), over `denominator` (default 1).
  static MonomialBasis total_degree(const Field& f, int d, std::optional<MPoly> denominator = std::nullopt);
  /// Explicit list; duplicates rejected.
  static MonomialBasis of(const Field& f, std::vector<Monomial> monomials, std::optional<MPoly> denominator = std::nullopt,
                          std::string description = "explicit");

  std::size_t size() const noexcept { return monomials.size(); }
  /// The element m_k / denominator.
  RatFunc element(std::size_t k) const;
  /// sum coeffs[k] * element(k).
  RatFunc combine(const FpVector& coeffs, std::size_t offset = 0) const;
  /// Index of monomial or -1.
  int index_of(const Monomial& m) const;
  /// Pointwise product basis {m * m'} over denominator^2 (duplicates merged).
  MonomialBasis product(const MonomialBasis& other) const;
};

/// F_p-coordinates of f in the basis, or nullopt when f is outside the span.
std::optional<FpVector> expand_in_basis(const RatFunc& f, const MonomialBasis& b);

/// Collects K-linear equations of the form
///   sum_k coeff_k * (value of unknown group g_k)^(p^twist_k) = rhs
/// where a group's value is sum_m a_m * m / D over its truncation, and turns
/// them into F_p-rows by clearing denominators and comparing monomials.
class FrobeniusLinearSystem {
 public:
  struct Contribution {
    std::size_t group;
    int twist;
    RatFunc coeff;
  };

  FrobeniusLinearSystem(Field f, std::size_t unknowns);

  /// Registers a group of |basis| consecutive unknowns starting at `offset`.
  std::size_t add_group(const MonomialBasis& basis, std::size_t offset);

  void add_equation(const std::vector<Contribution>& lhs, const RatFunc& rhs);
  void add_equation(const std::vector<Contribution>& lhs) { add_equation(lhs, RatFunc(field_)); }

  std::size_t equations() const noexcept { return sys_.equations(); }
  std::size_t rank() const noexcept { return sys_.rank(); }
  AffineSolutionSpace solve() const { return sys_.solve(); }

 private:
  struct Group {
    MonomialBasis basis;
    std::size_t offset;
  };

  Field field_;
  std::vector<Group> groups_;
  FpSystem sys_;
};

/// lcm of two polynomials (monic).
MPoly lcm(const MPoly& a, const MPoly& b);

}  // namespace punip

#endif  // PUNIP_BASIS_HPP
