#ifndef PUNIP_RATFUNC_HPP
#define PUNIP_RATFUNC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "punip/mpoly.hpp"

namespace punip {

/// Element of F_p(t_1..t_r) in lowest terms with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Field f);
  RatFunc(Field f, long long c);
  /// num/den, normalized; throws DivisionByZero when den = 0.
  RatFunc(Field f, const MPoly& num, const MPoly& den);

  static RatFunc poly(Field f, const MPoly& num);
  /// The indeterminate t_i.
  static RatFunc var(Field f, std::size_t i);
  static RatFunc var(Field f, const std::string& name);

  const Field& field() const noexcept { return field_; }
  int p() const noexcept { return field_->p; }
  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc scaled(int c) const;
  RatFunc inverse() const;
  /// Integer power; negative exponents invert.
  RatFunc pow(long long e) const;
  /// f^(p^e).
  RatFunc frobenius(int e) const;

  /// Substitutes t_i := value (value in the same field).
  RatFunc substitute(std::size_t i, const RatFunc& value) const;
  /// Re-expresses this element over another field whose variables contain ours by name.
  RatFunc moved_to(const Field& target) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;

 private:
  void normalize();
  /// Monic denominator and degree check; num_/den_ must already be coprime.
  void finish();

  Field field_;
  MPoly num_;
  MPoly den_;
};

RatFunc frobenius_power(const RatFunc& f, int e);

/// Key of a Frobenius decomposition: an exponent vector with entries in [0, q).
using ExpKey = std::vector<int>;

/// f = sum_e g_e^q t^e over the K^q-basis {t^e : 0 <= e_i < q}, q = p^level.
struct FrobDecomp {
  int level = 1;
  std::map<ExpKey, RatFunc> parts;

  /// Sum of g_e^q t^e.
  RatFunc reconstruct(const Field& f) const;
  /// Exact check that the parts reassemble to `f`, by cross-multiplication over
  /// the lcm of the part denominators. Much cheaper than reconstruct() == f.
  bool reconstructs(const RatFunc& f) const;
};

FrobDecomp frobenius_decompose(const RatFunc& f, int level = 1);

/// Result of a dense solve over K.
struct KLinearSolution {
  std::size_t rank = 0;
  std::optional<std::vector<RatFunc>> particular;
  std::vector<std::vector<RatFunc>> kernel;
};

/// Solves rows * x = rhs over K by Gaussian elimination (columns = unknowns).
/// `rhs` may be empty for a homogeneous system.
KLinearSolution solve_k_linear(const Field& f, std::vector<std::vector<RatFunc>> rows, std::vector<RatFunc> rhs,
                               std::size_t unknowns);

struct IndependenceResult {
  bool independent = false;
  /// Rank over K^p of the subset products, i.e. log_p-degree witness p^k.
  std::size_t rank = 0;
  /// Subset-product exponent vectors (entries in [0, p)), in enumeration order.
  std::vector<std::vector<int>> products;
  /// When dependent: coefficients a_k^p (elements of K^p) with sum a_k^p * prod_k = 0.
  std::vector<RatFunc> relation;
};

/// [K^p(elems) : K^p] == p^#elems, decided by K-rank of Frobenius decompositions.
IndependenceResult p_independent(const std::vector<RatFunc>& elems);

/// Coordinates a_i with f = sum a_i^p gens_i, or nullopt when f is not in the K^p-module.
std::optional<std::vector<RatFunc>> kp_module_membership(const RatFunc& f, const std::vector<RatFunc>& gens);

/// Elements of K^{p^level}: the decomposition has a single part at e = 0.
bool in_frobenius_image(const RatFunc& f, int level = 1);

/// Linear independence of `elems` over K^{p^level}; `witness` receives x with
/// sum x_i^{p^level} elems_i = 0 when dependent.
bool frobenius_linearly_independent(const std::vector<RatFunc>& elems, int level, std::vector<RatFunc>* witness);

}  // namespace punip

#endif  // PUNIP_RATFUNC_HPP
