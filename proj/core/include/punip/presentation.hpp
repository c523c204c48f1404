#ifndef PUNIP_PRESENTATION_HPP
#define PUNIP_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "punip/basis.hpp"
#include "punip/ppoly.hpp"

namespace punip {

/// Designated leading term c * v^(p^power) of one relation.
struct Lead {
  std::size_t var = 0;
  int power = 0;
  RatFunc coeff;
};

/// A commutative group as the common zero set of additive relations in an
/// affine space. Each relation designates a leading term; rewriting those
/// terms gives unique normal forms.
class Presentation {
 public:
  Presentation() = default;
  /// `leads` may be empty (all chosen automatically) or have one optional
  /// (var, power) request per relation; the coefficient is read off the relation.
  Presentation(std::string name, Field f, std::vector<std::string> vars, std::vector<PPoly> relations,
               std::vector<std::optional<std::pair<std::size_t, int>>> leads = {});

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t arity() const noexcept { return vars_.size(); }
  const std::vector<PPoly>& relations() const noexcept { return relations_; }
  const std::vector<Lead>& leads() const noexcept { return leads_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  int var_index(const std::string& name) const;
  /// Relation designating v, if any.
  std::optional<std::size_t> relation_for(std::size_t v) const;
  /// Designated power of v, or nullopt when v is free.
  std::optional<int> lead_power(std::size_t v) const;

  Presentation renamed(std::string name) const;
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// Same variables and relations (names of the groups may differ).
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.vars_ == b.vars_ && a.relations_ == b.relations_;
  }

  /// Canonical `group NAME { ... }` block.
  std::string to_string() const;

 private:
  void choose_leads(const std::vector<std::optional<std::pair<std::size_t, int>>>& requests);
  void validate() const;

  std::string name_;
  Field field_;
  std::vector<std::string> vars_;
  std::vector<PPoly> relations_;
  std::vector<Lead> leads_;
  std::vector<std::string> warnings_;
};

/// Normal form of an additive polynomial modulo the relations.
PPoly reduce(const PPoly& f, const Presentation& P);
/// Normal form of a general polynomial (leading terms are pure powers of
/// distinct variables, so the relations form a Groebner basis).
GPoly reduce(const GPoly& f, const Presentation& P);

/// V_{n,alpha}: variables S and S_j (j < p^n, j != -1 mod p).
Presentation make_Vn_alpha(int n, const RatFunc& alpha, const std::string& letter = "S");
/// V_{1,c} written as { -X_{p-1} + sum_i c^i X_i^p = 0 } in letter0..letter{p-1}.
Presentation make_V1(const RatFunc& c, const std::string& letter = "X");
/// { sum_i alpha^i X_i^p = 0 }.
Presentation make_W_diag(const RatFunc& alpha, const std::string& letter = "X");
/// { -X_{p-1} + mu Y^p + sum_i lambda^i X_i^p = 0 } in (Y, X0..X{p-1}).
Presentation make_U_ext(const RatFunc& lambda, const RatFunc& mu);
/// { mu Y^4 - X1 + X0^2 + lambda X1^2 = 0 }; characteristic 2 only.
Presentation make_U_prime(const RatFunc& lambda, const RatFunc& mu);
/// { -Z_{p-1,p-1} + sum lambda^i mu^j Z_{ij}^p = 0 } in Z{i}_{j}.
Presentation make_W_biadd(const RatFunc& lambda, const RatFunc& mu, const std::string& letter = "Z");
/// Affine space with no relations.
Presentation make_affine(const Field& f, std::vector<std::string> vars, std::string name = "Ga");

/// Named constructor: V1, W_diag, U_ext, U_prime_char2, W_biadd, Vn (needs "n").
/// Parameters: lambda, mu, gamma, alpha (field elements) and n.
Presentation make_named_group(const std::string& name, const std::map<std::string, RatFunc>& params, int n = 1);

/// Direct product; variable names must be disjoint.
Presentation product(const Presentation& a, const Presentation& b, std::string name = "");

/// Homomorphism candidate: one additive polynomial in src variables per target variable.
struct HomTuple {
  Presentation src;
  Presentation tgt;
  std::vector<PPoly> coords;

  static HomTuple identity(const Presentation& P);
  static HomTuple zero(const Presentation& src, const Presentation& tgt);
  std::string to_string() const;
};

struct HomCheck {
  bool ok = true;
  std::size_t relation = 0;
  PPoly residue;
};

HomCheck hom_verify(const HomTuple& t);
/// t2 after t1 (t1: A -> B, t2: B -> C).
HomTuple hom_compose(const HomTuple& t1, const HomTuple& t2);

/// f_m : V_{m+1,alpha} -> V_{m,alpha}, Z := S, Z_j := sum_i alpha^i S_{j+p^m i}^p.
HomTuple make_fm(int m, const RatFunc& alpha);

/// Kernel obtained by setting image coordinates to zero: coordinates that are
/// a single linear variable eliminate it; relations implied by the others are dropped.
Presentation kernel_presentation(const HomTuple& t);

/// If `rel` equals c * sum_i alpha^i v_i^p for some ordering of its p
/// variables, returns that ordering.
std::optional<std::vector<std::size_t>> match_diagonal(const PPoly& rel, const RatFunc& alpha);

/// Points with every coordinate in span(B).
struct PointSpace {
  MonomialBasis truncation;
  AffineSolutionSpace space;
  std::vector<std::vector<RatFunc>> basis_points;

  std::size_t dim() const noexcept { return basis_points.size(); }
  std::vector<RatFunc> decode(const FpVector& v) const;
};

PointSpace points(const Presentation& P, const MonomialBasis& B);
/// Exact check that `point` satisfies every relation.
bool satisfies(const Presentation& P, const std::vector<RatFunc>& point);

struct ChangeOfVariables {
  Presentation result;
  std::vector<PPoly> inverse;
  RatFunc scalar;
};

/// Substitutes old variable i := subs[i] (in the same variable names) and
/// multiplies each relation by `scalar`. `subs` must be triangular with an
/// invertible linear diagonal; the inverse is computed and checked.
ChangeOfVariables change_of_variables(const Presentation& P, const std::vector<PPoly>& subs,
                                      std::optional<RatFunc> scalar = std::nullopt);

/// Replaces the indeterminate at `index` by `value`, an element of `target`
/// (a field of the same rank whose other indeterminates agree).
Presentation substitute_indeterminate(const Presentation& P, const Field& target, std::size_t index,
                                      const RatFunc& value);
PPoly substitute_indeterminate(const PPoly& f, const Field& target, std::size_t index, const RatFunc& value);

/// Models K(alpha^(1/p^n)) by alpha := s^(p^n) with s replacing alpha.
Presentation base_extend_inseparable(const Presentation& P, const std::string& alpha, int n,
                                     const std::string& s = "s");

/// Field with the indeterminate at `index` renamed.
Field rename_indeterminate(const Field& f, std::size_t index, const std::string& name);

}  // namespace punip

#endif  // PUNIP_PRESENTATION_HPP
