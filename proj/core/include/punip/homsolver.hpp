#ifndef PUNIP_HOMSOLVER_HPP
#define PUNIP_HOMSOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "punip/presentation.hpp"

namespace punip {

/// Search region for homomorphisms: coordinates sum a * x_i^(p^f) with
/// f <= max_power and every coefficient a in span(coeff_basis).
struct Ansatz {
  int max_power = 1;
  MonomialBasis coeff_basis;

  std::string describe() const;
};

/// Meaning of one unknown: coefficient of monomial m in the coefficient of
/// x_{src_var}^(p^power) in target coordinate tgt_coord.
struct UnknownInfo {
  std::size_t tgt_coord;
  std::size_t src_var;
  int power;
  std::size_t monomial;
};

struct HomSpace {
  Presentation src;
  Presentation tgt;
  Ansatz ansatz;
  AffineSolutionSpace space;
  std::vector<UnknownInfo> interpretation;

  std::size_t unknowns() const noexcept { return interpretation.size(); }
  HomTuple decode(const FpVector& v) const;
  /// Coefficient vector of a map in normal form, or nullopt when outside the ansatz.
  std::optional<FpVector> encode(const HomTuple& t) const;
  bool contains(const HomTuple& t) const;
  /// True when some solution uses the top power or a top-degree basis monomial.
  bool saturates_boundary() const;
};

/// All homomorphisms src -> tgt inside the ansatz, exactly.
HomSpace hom_space(const Presentation& src, const Presentation& tgt, const Ansatz& a);

/// Target of a lift problem: pairs (g, h) with f(g) = F(h), presented in the
/// variables tgt.vars ++ h_vars with relations tgt's plus f(T) - F(H) = 0.
Presentation lift_target(const Presentation& tgt, const PPoly& f, const PPoly& F, const std::vector<std::string>& h_vars);

/// hom_space into lift_target: exact affine space of (g, h) pairs.
HomSpace lift_space(const Presentation& src, const Presentation& tgt, const PPoly& f, const PPoly& F,
                    const std::vector<std::string>& h_vars, const Ansatz& a);

/// Linear functional picking out a block of unknowns: the coefficient of
/// src_var^(p^power) in target coordinate tgt_coord (all of them when unset).
struct Functional {
  std::string label;
  std::optional<std::size_t> tgt_coord;
  std::optional<std::size_t> src_var;
  std::optional<int> power;

  static Functional zero() { return Functional{"0", std::nullopt, std::nullopt, std::nullopt}; }
  bool is_zero() const noexcept { return !tgt_coord; }
  std::vector<std::size_t> indices(const HomSpace& h) const;
};

struct ForcedZeroResult {
  bool forced_zero = false;
  std::optional<HomTuple> witness;
  std::size_t selected_unknowns = 0;

  std::string status() const { return forced_zero ? "PROVED_ZERO_WITHIN_ANSATZ" : "WITNESS"; }
};

ForcedZeroResult functional_forced_zero(const HomSpace& h, const Functional& phi);

struct StructureReport {
  bool linear_in_S = false;
  bool homogeneous = false;
  bool x_is_aS = false;
  std::optional<RatFunc> a;
};

/// For t: V_{n,alpha} -> V_{1,lambda}: each coordinate linear in S, the S_j
/// part homogeneous of degree p^(n-1), and the designated coordinate a*S, a != 0.
StructureReport structure_check(const HomTuple& t, int n);

}  // namespace punip

#endif  // PUNIP_HOMSOLVER_HPP
