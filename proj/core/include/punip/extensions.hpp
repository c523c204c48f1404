#ifndef PUNIP_EXTENSIONS_HPP
#define PUNIP_EXTENSIONS_HPP

#include <string>
#include <vector>

#include "punip/presentation.hpp"

namespace punip {

/// delta(chi) for 0 -> {F = 0} -> G_a^M -> G_a -> 0: the group
/// { (Z, g) : g in G, F(Z) = chi(g) }.
struct ConnectingExtension {
  Presentation base;
  PPoly fiber_relation;  // F, on the fiber variables
  std::vector<std::string> fiber_vars;
  PPoly chi;  // on the base variables
  Presentation result;  // variables fiber_vars ++ base vars

  /// The fiber group {F = 0}.
  Presentation fiber() const;
};

ConnectingExtension delta_extension(const Presentation& G, const PPoly& F, const std::vector<std::string>& fiber_vars,
                                    const PPoly& chi, std::string name = "");

/// Carrier W x G (or a torsor under W over G) with law
/// (w1, g1) * (w2, g2) = (w1 + w2 + h(g1, g2), g1 + g2).
struct TwistedExtension {
  Presentation carrier;  // variables: fiber block then base block
  Presentation base;
  Presentation fiber;
  /// One component per fiber variable, in 2 * |base| variables (g then g').
  PolyMap cocycle;

  std::size_t fiber_arity() const noexcept { return fiber.arity(); }
  /// Product of two carrier points.
  std::vector<RatFunc> multiply(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) const;
};

/// Base variables doubled: names followed by their primed copies.
std::vector<std::string> doubled_names(const Presentation& G);

/// Checks that W's relations vanish on h modulo the relations of `domain`
/// (h uses domain's variables). Returns the first failing relation index, or -1.
int map_image_residue(const Presentation& domain, const PolyMap& h, const Presentation& W, GPoly* residue = nullptr);

/// map_image_residue over G x G.
int cocycle_image_residue(const Presentation& G, const PolyMap& h, const Presentation& W, GPoly* residue = nullptr);

/// Validates h (bi-additive, lands in W) and builds X_h on W x G.
TwistedExtension twisted_group(const Presentation& G, const PolyMap& h, const Presentation& W, std::string name = "");

/// h(g1, g2) + h(g1 + g2, g3) = h(g1, g2 + g3) + h(g2, g3), symbolically.
bool associativity_check(const TwistedExtension& t);

struct CommutatorMap {
  /// (g1, g2) -> h(g1, g2) - h(g2, g1), in doubled base variables.
  PolyMap map;
};

CommutatorMap commutator_map(const TwistedExtension& t);
bool vanishes_on_diagonal(const CommutatorMap& c);

/// b : V_{1,lambda} x V_{1,mu} -> W, Z_{ij} := X_i Y_j, over the variables
/// (X0..X{p-1}, Y0..Y{p-1}).
PolyMap biadditive_b(const Field& f);

/// h0((v1, v2, v3), (v1', v2', v3')) := b(v1, v2') on G = V_{1,lambda} x V_{1,mu} x V_{1,gamma}.
PolyMap cocycle_h0(const Presentation& G);

/// Baer sum of U1 (trivial torsor W x G, cocycle h) and U2 = delta(chi)
/// (trivial cocycle): carrier of U2 with the cocycle of U1, via (w, z) -> w + z.
TwistedExtension baer_sum(const TwistedExtension& U1, const ConnectingExtension& U2, const Presentation& W);

/// Relation sets agree (each reduces to zero modulo the other), variables
/// matched by position.
bool torsor_carrier_equal(const TwistedExtension& a, const ConnectingExtension& b);

struct DerivedEvidence {
  std::size_t base_points = 0;  // F_p-dimension of points(G, B)
  std::size_t pairs = 0;
  std::size_t span_dim = 0;  // commutator values inside span(B')
  std::size_t fiber_points_dim = 0;  // dim points(W, B')
  std::size_t outside_truncation = 0;  // commutator values not expressible in B'
  bool equal() const noexcept { return span_dim == fiber_points_dim && outside_truncation == 0; }
};

/// Compares the F_p-span of commutator values on points(G, B)^2 with points(W, B').
DerivedEvidence derived_contains_fiber_evidence(const TwistedExtension& t, const MonomialBasis& B,
                                                const MonomialBasis& Bprime, unsigned jobs = 1);

}  // namespace punip

#endif  // PUNIP_EXTENSIONS_HPP
