// Fixed instance families shared by the unit tests and the acceptance binary.
#ifndef PUNIP_TESTS_INSTANCES_HPP
#define PUNIP_TESTS_INSTANCES_HPP

#include <string>
#include <vector>

#include "oracles.hpp"
#include "punip/presentation.hpp"

namespace oracle {

struct HomInstance {
  std::string name;
  punip::Presentation src;
  punip::Presentation tgt;
  punip::Ansatz ansatz;
};

// Small hom problems over F_2 whose unknown count stays within brute-force reach.
inline std::vector<HomInstance> f2_hom_instances(std::size_t max_unknowns = 20) {
  using namespace punip;
  Field f1 = make_field(2, {"l"});
  Field f2 = make_field(2, {"l", "m"});
  RatFunc l = RatFunc::var(f1, 0);
  RatFunc l2 = RatFunc::var(f2, 0), m2 = RatFunc::var(f2, 1);
  MPoly one_plus_l = (RatFunc(f1, 1) + l).num();
  auto basis = [](const Field& f, int d, std::optional<MPoly> den = std::nullopt) {
    return MonomialBasis::total_degree(f, d, den);
  };
  std::vector<HomInstance> all{
      {"Ga -> Ga", make_affine(f1, {"x"}), make_affine(f1, {"y"}), Ansatz{1, basis(f1, 1)}},
      {"Ga -> V1(l)", make_affine(f1, {"x"}), make_V1(l), Ansatz{1, basis(f1, 1)}},
      {"V1(l) -> Ga", make_V1(l), make_affine(f1, {"y"}), Ansatz{1, basis(f1, 1)}},
      {"V1(l) -> V1(l), E=1", make_V1(l), make_V1(l, "Y"), Ansatz{1, basis(f1, 1)}},
      {"V1(l) -> V1(l), E=2", make_V1(l), make_V1(l, "Y"), Ansatz{2, basis(f1, 1)}},
      {"V1(l) -> V1(l), over 1+l", make_V1(l), make_V1(l, "Y"), Ansatz{1, basis(f1, 1, one_plus_l)}},
      {"V1(l) -> V1(l^2)", make_V1(l), make_V1(l * l, "Y"), Ansatz{1, basis(f1, 1)}},
      {"V1(l) -> V1(1+l)", make_V1(l), make_V1(RatFunc(f1, 1) + l, "Y"), Ansatz{1, basis(f1, 1)}},
      {"V_{1,l} -> V_{1,l}", make_Vn_alpha(1, l, "S"), make_Vn_alpha(1, l, "T"), Ansatz{2, basis(f1, 1)}},
      {"V_{2,l} -> V_{1,l}", make_Vn_alpha(2, l, "S"), make_Vn_alpha(1, l, "T"), Ansatz{2, basis(f1, 0)}},
      {"W(l) -> V1(l)", make_W_diag(l), make_V1(l, "Y"), Ansatz{1, basis(f1, 1)}},
      {"V1(l) -> V1(m)", make_V1(l2), make_V1(m2, "Y"), Ansatz{1, basis(f2, 0)}},
      {"V1(l) -> V1(l) over F_2(l,m)", make_V1(l2), make_V1(l2, "Y"), Ansatz{2, basis(f2, 0)}},
      {"V1(lm) -> V1(l)", make_V1(l2 * m2), make_V1(l2, "Y"), Ansatz{1, basis(f2, 1)}},
      {"Ga^2 -> V1(l)", make_affine(f1, {"x", "y"}), make_V1(l, "Y"), Ansatz{1, basis(f1, 0)}},
  };
  std::vector<HomInstance> kept;
  for (auto& inst : all) {
    HomSpace h = hom_space(inst.src, inst.tgt, inst.ansatz);
    if (h.unknowns() <= max_unknowns) kept.push_back(std::move(inst));
  }
  return kept;
}

struct IndependenceCase {
  std::string kind;
  std::vector<punip::RatFunc> elems;
  // log_p [K^p(S) : K^p], known from the construction.
  std::size_t expected_log = 0;
  bool independent() const { return expected_log == elems.size(); }
};

// Rank over F_p of exponent vectors.
inline std::size_t rank_mod_p(std::vector<std::vector<int>> v, int p) {
  std::size_t r = 0, cols = v.empty() ? 0 : v[0].size();
  for (std::size_t c = 0; c < cols && r < v.size(); ++c) {
    std::size_t piv = r;
    while (piv < v.size() && v[piv][c] % p == 0) ++piv;
    if (piv == v.size()) continue;
    std::swap(v[piv], v[r]);
    int inv = punip::fp::inv(punip::fp::reduce(v[r][c], p), p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == r) continue;
      int f = punip::fp::mul(punip::fp::reduce(v[i][c], p), inv, p);
      for (std::size_t k = 0; k < cols; ++k) v[i][k] = punip::fp::sub(punip::fp::reduce(v[i][k], p), punip::fp::mul(f, punip::fp::reduce(v[r][k], p), p), p);
    }
    ++r;
  }
  return r;
}

// Elements built from monomials t^a hidden behind p-th power factors and
// translations. K^p(S) is then K^p(t^a : a used), whose degree is p^rank(a mod p).
inline std::vector<IndependenceCase> independence_cases(unsigned seed = 7, int count = 50) {
  using namespace punip;
  std::mt19937 rng(seed);
  std::vector<IndependenceCase> out;
  for (int k = 0; k < count; ++k) {
    int p = k % 2 == 0 ? 2 : 3;
    Field F = make_field(p, {"l", "m", "g"}, 1024);
    auto mono = [&](const std::vector<int>& a) {
      return RatFunc::poly(F, MPoly::monomial(p, Monomial::from(a)));
    };
    auto unit_pth = [&] {
      // A nonzero p-th power of small degree.
      MPoly c;
      do {
        c = random_poly(p, 3, 1, rng, 2);
      } while (c.is_zero());
      return RatFunc::poly(F, c).pow(p);
    };
    auto shift = [&] { return RatFunc::poly(F, random_poly(p, 3, 1, rng, 2)).pow(p); };
    auto random_exp = [&] {
      std::vector<int> a(3);
      for (auto& x : a) x = static_cast<int>(rng() % static_cast<unsigned>(p));
      return a;
    };

    int kind = (k / 2) % 5;
    std::size_t size = 1 + static_cast<std::size_t>(rng() % 3);
    std::vector<std::vector<int>> exps;
    for (std::size_t i = 0; i < size; ++i) exps.push_back(random_exp());
    IndependenceCase c;
    std::vector<std::vector<int>> used = exps;
    switch (kind) {
      case 0:  // plain monomials with p-th power factors
        c.kind = "scaled monomials";
        for (const auto& a : exps) c.elems.push_back(unit_pth() * mono(a));
        break;
      case 1:  // translated by p-th powers
        c.kind = "translated monomials";
        for (const auto& a : exps) c.elems.push_back(unit_pth() * mono(a) + shift());
        break;
      case 2: {  // one element replaced by a p-th power
        c.kind = "p-th power contamination";
        used[0] = {0, 0, 0};
        c.elems.push_back(unit_pth() + shift());
        for (std::size_t i = 1; i < size; ++i) c.elems.push_back(unit_pth() * mono(exps[i]));
        break;
      }
      case 3: {  // a product of two others, up to a p-th power
        c.kind = "product contamination";
        if (size < 2) {
          exps.push_back(random_exp());
          size = 2;
        }
        std::vector<int> sum(3);
        for (int i = 0; i < 3; ++i) sum[static_cast<std::size_t>(i)] = exps[0][static_cast<std::size_t>(i)] + exps[1][static_cast<std::size_t>(i)];
        used = {exps[0], exps[1], sum};
        c.elems = {mono(exps[0]), unit_pth() * mono(exps[1]), unit_pth() * mono(sum)};
        break;
      }
      default: {  // t^a0 + c^p t^a1 alongside t^a1
        c.kind = "mixed sums";
        if (size < 2) {
          exps.push_back(random_exp());
          size = 2;
        }
        used = exps;
        c.elems.push_back(mono(exps[0]) + unit_pth() * mono(exps[1]));
        for (std::size_t i = 1; i < size; ++i) c.elems.push_back(unit_pth() * mono(exps[i]));
        break;
      }
    }
    c.expected_log = rank_mod_p(used, p);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace oracle

#endif  // PUNIP_TESTS_INSTANCES_HPP
