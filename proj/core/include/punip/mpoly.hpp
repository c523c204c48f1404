#ifndef PUNIP_MPOLY_HPP
#define PUNIP_MPOLY_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace punip {

/// Maximum number of indeterminates t_1..t_r of a coefficient field.
inline constexpr std::size_t kMaxFieldVars = 6;

/// The coefficient field F_p(t_1, ..., t_r).
struct FieldCtx {
  int p = 2;
  std::vector<std::string> vars;
  /// Hard bound on total degrees of numerators/denominators and of expanded
  /// monomials. Exceeding it raises OverflowError.
  int max_degree = 64;

  std::size_t rank() const noexcept { return vars.size(); }
  /// Index of a named indeterminate, or -1.
  int index_of(const std::string& name) const;
  /// `GF(p)(t1,...,tr)`.
  std::string header() const;
};

using Field = std::shared_ptr<const FieldCtx>;

/// Validates p (prime, 2..13) and variable names (distinct, at most kMaxFieldVars).
Field make_field(int p, std::vector<std::string> vars, int max_degree = 64);

/// Same field with a different degree bound.
Field with_max_degree(const Field& f, int max_degree);

bool is_prime(int n);

// Arithmetic in F_p on canonical representatives 0..p-1.
namespace fp {
inline int add(int a, int b, int p) { return (a + b) % p; }
inline int sub(int a, int b, int p) { return (a - b + p) % p; }
inline int mul(int a, int b, int p) { return (a * b) % p; }
inline int neg(int a, int p) { return a == 0 ? 0 : p - a; }
int inv(int a, int p);
inline int reduce(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}
}  // namespace fp

/// Exponent vector t^a; ordered graded-lexicographically (t_1 > t_2 > ...).
struct Monomial {
  std::array<std::uint16_t, kMaxFieldVars> exp{};
  std::uint32_t degree = 0;

  Monomial() = default;
  static Monomial from(const std::vector<int>& exps);
  static Monomial var(std::size_t i, unsigned e = 1);

  bool is_one() const noexcept { return degree == 0; }
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial scaled(unsigned k) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    return a.exp <=> b.exp;
  }

  std::string to_string(const FieldCtx& f) const;
};

struct Term {
  Monomial mono;
  std::uint16_t coeff;
};

/// Sparse polynomial over F_p in the field's indeterminates. Terms are kept
/// sorted by decreasing monomial order with nonzero coefficients.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int p) : p_(p) {}

  static MPoly constant(int p, long long c);
  static MPoly monomial(int p, const Monomial& m, long long c = 1);
  static MPoly variable(int p, std::size_t i);
  /// Terms in any order, with repeats; combined and sorted.
  static MPoly from_terms(int p, std::vector<Term> terms);

  int p() const noexcept { return p_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const noexcept { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& leading() const { return terms_.front(); }
  int constant_value() const;
  std::uint32_t total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().mono.degree; }
  int degree_in(std::size_t var) const noexcept;
  bool involves(std::size_t var) const noexcept { return degree_in(var) > 0; }

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(int c) const;
  MPoly times_monomial(const Monomial& m, int c = 1) const;
  MPoly pow(unsigned e) const;
  /// Image under t -> t^(p^e); coefficients are fixed by Frobenius.
  MPoly frobenius(int e) const;
  /// Leading coefficient 1 (zero stays zero).
  MPoly monic() const;
  /// Exact quotient, or nullopt when `d` does not divide *this.
  std::optional<MPoly> divide_exact(const MPoly& d) const;

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  std::string to_string(const FieldCtx& f) const;

 private:
  int p_ = 2;
  std::vector<Term> terms_;

  friend class MPolyBuilder;
};

/// Monic gcd by recursive content / primitive-part pseudo-remainder sequences.
MPoly gcd(const MPoly& a, const MPoly& b);

}  // namespace punip

#endif  // PUNIP_MPOLY_HPP
