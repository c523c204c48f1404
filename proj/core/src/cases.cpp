#include "punip/cases.hpp"

#include <functional>
#include <map>

#include "punip/error.hpp"
#include "punip/extensions.hpp"
#include "punip/parse.hpp"

#include "json.hpp"

#if defined(__clang__)
#define PUNIP_COMPILER "clang " __clang_version__
#elif defined(__GNUC__)
#define PUNIP_COMPILER "gcc " __VERSION__
#else
#define PUNIP_COMPILER "unknown"
#endif

namespace punip {

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified:
      return "VERIFIED";
    case Status::ForcedZeroWithinAnsatz:
      return "FORCED_ZERO_WITHIN_ANSATZ";
    case Status::Failed:
      return "FAILED";
    case Status::Overflow:
      return "OVERFLOW";
  }
  return "FAILED";
}

bool SolverReport::forced_zero() const { return status == "PROVED_ZERO_WITHIN_ANSATZ"; }

namespace {

struct Registered {
  CaseInfo info;
  int indeterminates;  // how many the case reads from the field (l, m, g)
  std::function<void(const CaseParams&, const Field&, Certificate&)> run;
};

const std::vector<Registered>& registered();

std::uint64_t ipow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

RatFunc indet(const Field& f, std::size_t i) { return RatFunc::var(f, i); }

std::optional<MPoly> denominator_of(const CaseParams& p, const Field& f) {
  if (p.denominator.empty()) return std::nullopt;
  RatFunc d = parse_ratfunc(f, p.denominator);
  if (d.is_zero()) throw DomainError("the ansatz denominator must be nonzero");
  if (!d.is_polynomial()) throw DomainError("the ansatz denominator must be a polynomial");
  return d.num();
}

void check(Certificate& c, std::string name, bool ok, std::string detail = "") {
  c.checks.push_back(Check{std::move(name), ok, std::move(detail)});
}

// F_mu(X_0, ..., X_{p-1}) = -X_{p-1} + sum mu^i X_i^p.
PPoly f_mu(const RatFunc& mu) {
  const Field& f = mu.field();
  auto p = static_cast<std::size_t>(f->p);
  PPoly r(f, p);
  r.add_term(p - 1, 0, RatFunc(f, -1));
  for (std::size_t i = 0; i < p; ++i) r.add_term(i, 1, mu.pow(static_cast<long long>(i)));
  return r;
}

std::vector<std::string> lettered(const std::string& letter, int count) {
  std::vector<std::string> v;
  for (int i = 0; i < count; ++i) v.push_back(letter + std::to_string(i));
  return v;
}

HomTuple tuple_of(const Presentation& src, const Presentation& tgt, std::vector<PPoly> coords) {
  return HomTuple{src, tgt, std::move(coords)};
}

std::string verify_detail(const HomTuple& t) {
  HomCheck h = hom_verify(t);
  if (h.ok) return "";
  return "relation " + std::to_string(h.relation) + " leaves " + h.residue.to_string(t.src.vars());
}

// ---------------------------------------------------------------- cases

void run_lemma_3_2(const CaseParams& P, const Field& f, Certificate& c) {
  int p = P.p, n = P.n;
  auto q = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(p), n));
  Presentation V = make_Vn_alpha(n, indet(f, 0), "S");
  Presentation E = base_extend_inseparable(V, f->vars[0], n, "s");
  const Field& fs = E.field();
  RatFunc s = indet(fs, 0);
  std::size_t N = E.arity();
  auto var = [&](long long j) { return static_cast<std::size_t>(E.var_index("S" + std::to_string(j))); };
  auto X = [&](std::size_t i, int e = 0) { return PPoly::var(fs, N, i, e); };

  // Step 1: fold every S_i with i = j mod p into S_j (j < p - 1).
  std::vector<PPoly> subs1;
  for (std::size_t v = 0; v < N; ++v) subs1.push_back(X(v));
  for (long long j = 0; j < p - 1; ++j) {
    PPoly sj = X(var(j));
    for (long long i = j + p; i < q; i += p) sj = sj - X(var(i)).scaled(s.pow(i - j));
    subs1[var(j)] = sj;
  }
  ChangeOfVariables step1 = change_of_variables(E, subs1);
  PPoly expect1 = -X(0) + X(0, 1).scaled(s.pow(q * (p - 1)));
  for (long long j = 0; j < p - 1; ++j) expect1 += X(var(j), n).scaled(s.pow(q * j));
  const PPoly& rel1 = step1.result.relations().front();
  check(c, "fold substitution gives the collapsed relation", rel1 == expect1, rel1.to_string(E.vars()));
  bool free_ok = true;
  for (long long i = p; i < q; ++i)
    if (i % p != p - 1 && rel1.involves(var(i))) free_ok = false;
  check(c, "remaining variables are free", free_ok);

  // Step 2: S := s^(p - q) S - sum_{j, 1 <= i < n} s^(p^i (j + 1) - q) S_j^(p^i), scalar s^(q - p).
  std::vector<PPoly> subs2;
  for (std::size_t v = 0; v < N; ++v) subs2.push_back(X(v));
  PPoly y = X(0).scaled(s.pow(p - q));
  for (long long j = 0; j < p - 1; ++j)
    for (int i = 1; i < n; ++i) {
      auto pi = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(p), i));
      y = y - X(var(j), i).scaled(s.pow(pi * (j + 1) - q));
    }
  subs2[0] = y;
  RatFunc scalar = s.pow(q - p);
  ChangeOfVariables step2 = change_of_variables(step1.result, subs2, scalar);
  PPoly expect2 = -X(0) + X(0, 1).scaled(s.pow(static_cast<long long>(p) * (p - 1)));
  for (long long j = 0; j < p - 1; ++j) expect2 += X(var(j), 1).scaled(s.pow(static_cast<long long>(p) * j));
  const PPoly& rel2 = step2.result.relations().front();
  check(c, "second substitution gives the level-one relation", rel2 == expect2, rel2.to_string(E.vars()));
  check(c, "tracked scalar", step2.scalar == scalar, step2.scalar.to_string());
  c.notes.push_back("alpha := s^" + std::to_string(q) + "; scalar " + scalar.to_string() + "; result " +
                    rel2.to_string(E.vars()) + " = 0");
}

void run_fm(const CaseParams& P, const Field& f, Certificate& c) {
  int m = P.n;
  RatFunc alpha = indet(f, 0);
  HomTuple fm = make_fm(m, alpha);
  check(c, "f_m is a homomorphism", hom_verify(fm).ok, verify_detail(fm));
  Presentation K = kernel_presentation(fm);
  auto expected = static_cast<std::size_t>(P.p - 1) * ipow_u(static_cast<std::uint64_t>(P.p), m - 1);
  check(c, "kernel relation count", K.relations().size() == expected,
        std::to_string(K.relations().size()) + " relations, expected " + std::to_string(expected));
  std::size_t matched = 0;
  for (const auto& r : K.relations())
    if (match_diagonal(r, alpha)) ++matched;
  check(c, "kernel relations are diagonal", matched == K.relations().size(),
        std::to_string(matched) + " of " + std::to_string(K.relations().size()) + " match");
  if (m == 1) {
    StructureReport st = structure_check(fm, 2);
    check(c, "f_1 has the expected shape", st.linear_in_S && st.homogeneous && st.x_is_aS);
  }
  c.notes.push_back("kernel: " + std::to_string(K.arity()) + " variables, " + std::to_string(K.relations().size()) +
                    " relations");
}

SolverReport lift_report(const std::string& label, const Presentation& src, const Presentation& tgt, const PPoly& fch,
                         const PPoly& F, const std::vector<std::string>& hv, const Functional& phi, const Field& f,
                         int E, int deg, const std::optional<MPoly>& den, int levels) {
  return forced_zero_report(
      label, [&](const Ansatz& a) { return lift_space(src, tgt, fch, F, hv, a); }, phi, f, E, deg, den, levels);
}

void run_example_3_5(const CaseParams& P, const Field& f, Certificate& c) {
  int n = P.n, E = P.max_power.value_or(n + 1);
  auto den = denominator_of(P, f);
  RatFunc l = indet(f, 0), mu = indet(f, 1);
  Presentation src = make_Vn_alpha(n, l, "S");
  Presentation tgt = make_Vn_alpha(1, l, "Y");
  PPoly Y = PPoly::var(f, tgt.arity(), 0);
  auto hv = lettered("X", P.p);
  Functional cfun{"c: coefficient of S in Y", 0, 0, 0};

  SolverReport main = lift_report("lift through F_mu", src, tgt, Y, f_mu(mu), hv, cfun, f, E, P.coeff_deg, den, 3);
  HomSpace base = lift_space(src, tgt, Y, f_mu(mu), hv, Ansatz{E, MonomialBasis::total_degree(f, P.coeff_deg, den)});
  check(c, "lift space contains 0", base.space.contains(FpVector(base.unknowns(), 0)));
  c.solves.push_back(main);

  SolverReport ctl = lift_report("control mu := l", src, tgt, Y, f_mu(l), hv, cfun, f, E, P.coeff_deg, den, 1);
  c.notes.push_back("control mu := l: " + ctl.status + " (dim " + std::to_string(ctl.dim) + ")");
  SolverReport ctlp = lift_report("control mu := l^p", src, tgt, Y, f_mu(l.pow(P.p)), hv, cfun, f, E, P.coeff_deg,
                                  den, 1);
  check(c, "control mu := l^p admits c != 0", !ctlp.forced_zero(), ctlp.witness);
}

HomTuple h_map(const Presentation& U, const Presentation& V, const std::vector<std::pair<std::size_t, PPoly>>& over) {
  // Default Z_j := X_j (shifted past Y), Z := X_{p-1}; `over` replaces entries.
  std::vector<PPoly> coords;
  for (std::size_t j = 0; j < V.arity(); ++j) coords.push_back(PPoly(U.field(), U.arity()));
  for (const auto& [j, poly] : over) coords[j] = poly;
  return tuple_of(U, V, coords);
}

void run_example_3_6(const CaseParams& P, const Field& f, Certificate& c) {
  int p = P.p, n = P.n, E = P.max_power.value_or(n + 1);
  auto den = denominator_of(P, f);
  RatFunc l = indet(f, 0), mu = indet(f, 1);
  Presentation U = make_U_ext(l, mu);
  Functional yfun{"Y-coordinate (c and F)", 0, std::nullopt, std::nullopt};
  for (const auto& [name, alpha] : std::vector<std::pair<std::string, RatFunc>>{{"l", l}, {"m", mu}, {"l*m", l * mu}}) {
    Presentation src = make_Vn_alpha(n, alpha, "S");
    c.solves.push_back(forced_zero_report(
        "homs V_{n," + name + "} -> U", [&](const Ansatz& a) { return hom_space(src, U, a); }, yfun, f, E,
        P.coeff_deg, den, 3));
  }

  // mu = s^p: Z := X_{p-1}, Z_0 := X_0 + sY, Z_j := X_j lands in V_{1,l}.
  Presentation U1 = base_extend_inseparable(U, f->vars[1], 1, "s");
  const Field& f1 = U1.field();
  RatFunc s1 = indet(f1, 1);
  Presentation V1 = make_Vn_alpha(1, indet(f1, 0), "Z");
  auto x = [&](const Presentation& G, std::size_t i) { return PPoly::var(G.field(), G.arity(), i); };
  std::vector<std::pair<std::size_t, PPoly>> c1{{0, x(U1, static_cast<std::size_t>(p))}};
  for (int j = 0; j < p - 1; ++j) c1.emplace_back(static_cast<std::size_t>(j + 1), x(U1, static_cast<std::size_t>(j + 1)));
  c1[1].second += x(U1, 0).scaled(s1);
  HomTuple h1 = h_map(U1, V1, c1);
  check(c, "h1 over K(mu^(1/p)) is a homomorphism", hom_verify(h1).ok, verify_detail(h1));

  // mu = l s^p: Z_1 := X_1 + sY.
  Field f2 = rename_indeterminate(f, 1, "s");
  RatFunc s2 = indet(f2, 1);
  Presentation U2 = substitute_indeterminate(U, f2, 1, indet(f2, 0) * s2.pow(p));
  Presentation V2 = make_Vn_alpha(1, indet(f2, 0), "Z");
  std::vector<std::pair<std::size_t, PPoly>> c2{{0, x(U2, static_cast<std::size_t>(p))}};
  for (int j = 0; j < p - 1; ++j) c2.emplace_back(static_cast<std::size_t>(j + 1), x(U2, static_cast<std::size_t>(j + 1)));
  c2[2].second += x(U2, 0).scaled(s2);
  HomTuple h2 = h_map(U2, V2, c2);
  check(c, "h2 over K((mu/l)^(1/p)) is a homomorphism", hom_verify(h2).ok, verify_detail(h2));
}

void run_remark_3_7(const CaseParams& P, const Field& f, Certificate& c) {
  int n = P.n, E = P.max_power.value_or(n + 1);
  auto den = denominator_of(P, f);
  RatFunc l = indet(f, 0), mu = indet(f, 1);
  Presentation U = make_U_prime(l, mu);
  Functional yfun{"Y-coordinate (c and F)", 0, std::nullopt, std::nullopt};
  for (const auto& [name, alpha] : std::vector<std::pair<std::string, RatFunc>>{{"l", l}, {"m", mu}, {"l*m", l * mu}}) {
    Presentation src = make_Vn_alpha(n, alpha, "S");
    c.solves.push_back(forced_zero_report(
        "homs V_{n," + name + "} -> U'", [&](const Ansatz& a) { return hom_space(src, U, a); }, yfun, f, E,
        P.coeff_deg, den, 3));
  }
  auto x = [&](const Presentation& G, std::size_t i, int e = 0) { return PPoly::var(G.field(), G.arity(), i, e); };

  // mu = s^2: Z0 := X0 + sY^2, Z1 := X1.
  Presentation L1 = base_extend_inseparable(U, f->vars[1], 1, "s");
  RatFunc s1 = indet(L1.field(), 1);
  Presentation V1 = make_V1(indet(L1.field(), 0), "Z");
  HomTuple h1 = tuple_of(L1, V1, {x(L1, 1) + x(L1, 0, 1).scaled(s1), x(L1, 2)});
  check(c, "map over K(mu^(1/2)) is a homomorphism", hom_verify(h1).ok, verify_detail(h1));

  // mu = l s^4: Z0 := X0 + sY, Z1 := X1 + s^2 Y^2.
  Field f2 = rename_indeterminate(f, 1, "s");
  RatFunc s2 = indet(f2, 1);
  Presentation L2 = substitute_indeterminate(U, f2, 1, indet(f2, 0) * s2.pow(4));
  Presentation V2 = make_V1(indet(f2, 0), "Z");
  HomTuple h2 = tuple_of(L2, V2, {x(L2, 1) + x(L2, 0).scaled(s2), x(L2, 2) + x(L2, 0, 1).scaled(s2.pow(2))});
  check(c, "map over K((mu/l)^(1/4)) is a homomorphism", hom_verify(h2).ok, verify_detail(h2));
}

struct Setting57 {
  RatFunc l, m, g;
  Presentation W, Vl, Vm, Vg, G;
};

Setting57 setting_57(const Field& f) {
  Setting57 s{indet(f, 0), indet(f, 1), indet(f, 2), {}, {}, {}, {}, {}};
  s.W = make_W_biadd(s.l, s.m);
  s.Vl = make_V1(s.l, "X");
  s.Vm = make_V1(s.m, "Y");
  s.Vg = make_V1(s.g, "T");
  s.G = product(product(s.Vl, s.Vm), s.Vg, "G");
  return s;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

void run_57_image(const CaseParams& P, const Field& f, Certificate& c) {
  Setting57 s = setting_57(f);
  auto p = static_cast<std::size_t>(P.p);
  PolyMap b = biadditive_b(f);
  check(c, "b is bi-additive", polymap_multiadditive_check(b, {range(0, p), range(p, 2 * p)}));
  GPoly residue;
  Presentation dom = product(s.Vl, s.Vm);
  int bad = map_image_residue(dom, b, s.W, &residue);
  check(c, "b lands in W modulo the factor relations", bad < 0, bad < 0 ? "" : residue.to_string(dom.vars()));
}

void run_57_commutator(const CaseParams& P, const Field& f, Certificate& c) {
  Setting57 s = setting_57(f);
  auto p = static_cast<std::size_t>(P.p);
  std::size_t k = s.G.arity();
  TwistedExtension U1 = twisted_group(s.G, cocycle_h0(s.G), s.W, "U1");
  check(c, "twisted law is associative", associativity_check(U1));
  CommutatorMap cm = commutator_map(U1);
  auto v = [&](std::size_t i) { return GPoly::var(f, 2 * k, i); };
  bool match = true;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      GPoly want = v(i) * v(k + p + j) - v(k + i) * v(p + j);
      if (!(cm.map[i * p + j] == want)) match = false;
    }
  check(c, "commutator is b(x1, y2) - b(x2, y1)", match, cm.map.back().to_string(doubled_names(s.G)));
  check(c, "commutator vanishes on the diagonal", vanishes_on_diagonal(cm));
  check(c, "commutator is bi-additive", polymap_multiadditive_check(cm.map, {range(0, k), range(k, 2 * k)}));
  std::vector<GPoly> slice;
  for (std::size_t i = 0; i < 2 * k; ++i) slice.push_back(i >= k && i < k + p ? GPoly(f, 2 * k) : v(i));
  bool slice_ok = true;
  for (std::size_t w = 0; w < cm.map.size(); ++w)
    if (!(cm.map[w].substitute(slice) == U1.cocycle[w])) slice_ok = false;
  check(c, "x2 = 0 slice is b(x1, y2)", slice_ok);
}

void run_57_baer(const CaseParams& P, const Field& f, Certificate& c) {
  Setting57 s = setting_57(f);
  auto p = static_cast<std::size_t>(P.p);
  TwistedExtension U1 = twisted_group(s.G, cocycle_h0(s.G), s.W, "U1");
  PPoly chi = PPoly::var(f, s.G.arity(), 3 * p - 1);
  ConnectingExtension U2 = delta_extension(s.G, s.W.relations().front(), s.W.vars(), chi, "U2");
  TwistedExtension U = baer_sum(U1, U2, s.W);
  check(c, "Baer sum carrier equals U2 as a torsor", torsor_carrier_equal(U, U2));
  check(c, "U1 carrier differs from U2", !torsor_carrier_equal(U1, U2));
  check(c, "Baer sum keeps the cocycle h0", U.cocycle == U1.cocycle);
  check(c, "Baer sum law is associative", associativity_check(U));

  std::optional<MPoly> den = denominator_of(P, f);
  if (!den) den = ((RatFunc(f, 1) + s.l) * (RatFunc(f, 1) + s.m)).num();
  int deg = 2;
  MonomialBasis B = MonomialBasis::total_degree(f, deg, den);
  MonomialBasis Bp = B.product(B);
  DerivedEvidence ev = derived_contains_fiber_evidence(U1, B, Bp);
  std::string detail = "points(G,B) dim " + std::to_string(ev.base_points) + ", commutator span " +
                       std::to_string(ev.span_dim) + ", points(W,B') dim " + std::to_string(ev.fiber_points_dim) +
                       ", values outside B' " + std::to_string(ev.outside_truncation);
  check(c, "commutator span fills points(W, B')", ev.equal() && ev.span_dim > 0, detail);
  c.notes.push_back("evidence truncation: B = " + B.description + ", B' = B*B");
}

void run_57_lift(const CaseParams& P, const Field& f, Certificate& c) {
  Setting57 s = setting_57(f);
  int n = P.n, E = P.max_power.value_or(n + 1);
  auto den = denominator_of(P, f);
  auto p = static_cast<std::size_t>(P.p);
  Presentation src = make_Vn_alpha(n, s.g, "S");
  PPoly last = PPoly::var(f, s.Vg.arity(), p - 1);
  Functional cfun{"c: coefficient of S in T" + std::to_string(p - 1), p - 1, 0, 0};
  c.solves.push_back(lift_report("lift of T" + std::to_string(p - 1) + " through F_W", src, s.Vg, last,
                                 s.W.relations().front(), s.W.vars(), cfun, f, E, P.coeff_deg, den, 3));
}

void run_structure(const CaseParams& P, const Field& f, Certificate& c) {
  int n = P.n, E = P.max_power.value_or(n + 1);
  auto den = denominator_of(P, f);
  RatFunc l = indet(f, 0);
  Presentation V = make_Vn_alpha(1, l, "T");
  StructureReport id = structure_check(HomTuple::identity(V), 1);
  check(c, "identity has the expected shape", id.linear_in_S && id.homogeneous && id.x_is_aS);
  StructureReport f1 = structure_check(make_fm(1, l), 2);
  check(c, "f_1 has the expected shape", f1.linear_in_S && f1.homogeneous && f1.x_is_aS);
  StructureReport z = structure_check(HomTuple::zero(make_Vn_alpha(n, l, "S"), V), n);
  check(c, "zero map has no aS coordinate", !z.x_is_aS);

  HomSpace hs = hom_space(make_Vn_alpha(n, l, "S"), V, Ansatz{E, MonomialBasis::total_degree(f, P.coeff_deg, den)});
  std::size_t dim = hs.space.dim(), checked = 0, bad = 0;
  auto p = static_cast<std::uint64_t>(P.p);
  bool exhaustive = dim <= 6;
  std::vector<std::vector<int>> combos;
  if (exhaustive) {
    std::uint64_t total = ipow_u(p, static_cast<int>(dim));
    for (std::uint64_t code = 1; code < total; ++code) {
      std::vector<int> co(dim);
      std::uint64_t x = code;
      for (std::size_t i = 0; i < dim; ++i, x /= p) co[i] = static_cast<int>(x % p);
      combos.push_back(co);
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<int> co(dim, 0);
      co[i] = 1;
      combos.push_back(co);
    }
  }
  std::string first_bad;
  for (const auto& co : combos) {
    HomTuple t = hs.decode(hs.space.point(co));
    StructureReport r = structure_check(t, n);
    ++checked;
    if (!(r.linear_in_S && r.homogeneous && r.x_is_aS)) {
      if (!bad) first_bad = t.to_string();
      ++bad;
    }
  }
  check(c, "every nonzero hom V_{n,l} -> V_{1,l} in the ansatz has the expected shape", bad == 0,
        std::to_string(checked) + " maps checked (" + (exhaustive ? "all" : "basis") + "), dim " +
            std::to_string(dim) + (bad ? "; first failure " + first_bad : ""));
}

const std::vector<Registered>& registered() {
  static const std::vector<Registered> r{
      {{"lemma-3-2", "two changes of variables on V_{n,alpha} over the model alpha = s^(p^n)", "n in 1..3"}, 1,
       run_lemma_3_2},
      {{"fm-surjection", "f_m : V_{m+1,alpha} -> V_{m,alpha} is a homomorphism with diagonal kernel",
        "m = n in 1..2"},
       1, run_fm},
      {{"example-3-5", "delta(Y) in Ext(V_{1,l}, V_{1,m}): the c-functional of the lift system vanishes", ""}, 2,
       run_example_3_5},
      {{"example-3-6", "homs V_{n,alpha} -> U have zero Y-coordinate; h1 and h2 are homomorphisms", "p > 2"}, 2,
       run_example_3_6},
      {{"remark-3-7", "characteristic 2 variant U' with the quartic Y term", "p = 2"}, 2, run_remark_3_7},
      {{"example-5-7-image", "b(x, y) = (x_i y_j) lands in W", ""}, 3, run_57_image},
      {{"example-5-7-commutator", "commutators of X_{h0} are b(x1, y2) - b(x2, y1)", ""}, 3, run_57_commutator},
      {{"example-5-7-baer", "Baer sum of X_{h0} and delta(chi) is the torsor U2 with cocycle h0", ""}, 3,
       run_57_baer},
      {{"example-5-7-lift", "no lift of T_{p-1} o f through F_W with c != 0", ""}, 3, run_57_lift},
      {{"structure-lemma-3-4", "shape of homs V_{n,alpha} -> V_{1,alpha}", ""}, 1, run_structure},
  };
  return r;
}

const Registered& lookup(const std::string& id) {
  for (const auto& r : registered())
    if (r.info.id == id) return r;
  std::string known;
  for (const auto& r : registered()) known += (known.empty() ? "" : ", ") + r.info.id;
  throw DomainError("unknown case '" + id + "' (known: " + known + ")");
}

Field case_field(const CaseParams& P, int need) {
  Field f = parse_field(P.field, P.max_degree);
  if (f->p != P.p) throw DomainError("field " + P.field + " does not have characteristic " + std::to_string(P.p));
  if (static_cast<int>(f->rank()) < need)
    throw DomainError("this case needs " + std::to_string(need) + " indeterminates, field " + P.field + " has " +
                      std::to_string(f->rank()));
  return f;
}

}  // namespace

const std::vector<CaseInfo>& case_registry() {
  static const std::vector<CaseInfo> infos = [] {
    std::vector<CaseInfo> v;
    for (const auto& r : registered()) v.push_back(r.info);
    return v;
  }();
  return infos;
}

CaseParams resolve_params(const std::string& id, CaseParams P) {
  const Registered& r = lookup(id);
  if (!is_prime(P.p) || P.p > 13) throw DomainError("p must be a prime <= 13");
  if (P.n < 1 || P.n > 3) throw DomainError("n must be in 1..3");
  if (P.coeff_deg < 0 || P.coeff_deg > 12) throw DomainError("coefficient degree must be in 0..12");
  if (P.max_power && (*P.max_power < 0 || *P.max_power > 6)) throw DomainError("max power must be in 0..6");
  if (id == "example-3-6" && P.p == 2)
    throw DomainError("example-3-6 needs p > 2 (the second change of variables uses 1 < p - 1); use remark-3-7 at p = 2");
  if (id == "remark-3-7" && P.p != 2) throw DomainError("remark-3-7 is a characteristic 2 construction; use --p 2");
  if (id == "fm-surjection" && P.n > 2) throw DomainError("fm-surjection supports m = n in 1..2");
  if (P.field.empty()) P.field = r.indeterminates >= 3 ? "GF(" + std::to_string(P.p) + ")(l,m,g)"
                                                       : "GF(" + std::to_string(P.p) + ")(l,m)";
  if (id == "lemma-3-2") {
    // Intermediate coefficients reach s^(p^(2n)).
    auto need = static_cast<int>(ipow_u(static_cast<std::uint64_t>(P.p), 2 * P.n) + ipow_u(static_cast<std::uint64_t>(P.p), 2));
    P.max_degree = std::max(P.max_degree, need);
  }
  case_field(P, r.indeterminates);
  return P;
}

SolverReport forced_zero_report(const std::string& label, const std::function<HomSpace(const Ansatz&)>& solve,
                                const Functional& phi, const Field& f, int max_power, int coeff_deg,
                                const std::optional<MPoly>& denominator, int levels) {
  SolverReport rep;
  rep.label = label;
  rep.functional = phi.label;
  bool all_zero = true;
  for (int k = 0; k < levels; ++k) {
    Ansatz a{max_power, MonomialBasis::total_degree(f, coeff_deg + k, denominator)};
    HomSpace hs = solve(a);
    ForcedZeroResult r = functional_forced_zero(hs, phi);
    if (k == 0) {
      rep.unknowns = hs.unknowns();
      rep.equations = hs.space.equations;
      rep.rank = hs.space.rank;
      rep.dim = hs.space.dim();
      rep.ansatz = a.describe();
      rep.saturates_boundary = hs.saturates_boundary();
    }
    rep.stability.push_back(StabilityLevel{coeff_deg + k, hs.unknowns(), hs.space.rank, hs.space.dim(), r.status()});
    if (!r.forced_zero) {
      all_zero = false;
      if (rep.witness.empty() && r.witness) rep.witness = r.witness->to_string();
    }
  }
  rep.status = all_zero ? "PROVED_ZERO_WITHIN_ANSATZ" : "WITNESS";
  return rep;
}

Certificate run_case(const std::string& id, const CaseParams& params) {
  const Registered& r = lookup(id);
  Certificate c;
  c.case_id = id;
  c.params = resolve_params(id, params);
  try {
    Field f = case_field(c.params, r.indeterminates);
    r.run(c.params, f, c);
  } catch (const OverflowError& e) {
    c.status = Status::Overflow;
    c.message = e.what();
    return c;
  }
  for (const auto& ch : c.checks)
    if (!ch.ok) {
      c.status = Status::Failed;
      c.message = "check failed: " + ch.name + (ch.detail.empty() ? "" : " (" + ch.detail + ")");
      return c;
    }
  for (const auto& s : c.solves)
    if (!s.forced_zero()) {
      c.status = Status::Failed;
      c.message = "witness found for " + s.label + ": " + s.witness;
      return c;
    }
  c.status = c.solves.empty() ? Status::Verified : Status::ForcedZeroWithinAnsatz;
  return c;
}

std::string canonical_input(const std::string& id, const CaseParams& p) {
  return "case=" + id + ";p=" + std::to_string(p.p) + ";n=" + std::to_string(p.n) +
         ";coeff_deg=" + std::to_string(p.coeff_deg) +
         ";max_power=" + (p.max_power ? std::to_string(*p.max_power) : std::string("default")) + ";field=" + p.field +
         ";denominator=" + p.denominator + ";max_degree=" + std::to_string(p.max_degree);
}

namespace {

nlohmann::ordered_json report_object(const SolverReport& r) {
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const auto& l : r.stability)
    levels.push_back({{"coeff_deg", l.coeff_deg}, {"unknowns", l.unknowns}, {"rank", l.rank}, {"dim", l.dim},
                      {"status", l.status}});
  nlohmann::ordered_json j{{"label", r.label},
                           {"unknowns", r.unknowns},
                           {"matrix_shape", {r.equations, r.unknowns}},
                           {"rank", r.rank},
                           {"dim", r.dim},
                           {"status", r.status},
                           {"saturates_boundary", r.saturates_boundary},
                           {"certificate",
                            {{"kind", "functional_forced_zero"},
                             {"functional", r.functional},
                             {"ansatz", r.ansatz},
                             {"stability", levels}}}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

}  // namespace

std::string solver_report_json(const SolverReport& r) { return report_object(r).dump(2); }

std::string certificate_json(const Certificate& c, const std::string& input_hash) {
  const CaseParams& p = c.params;
  nlohmann::ordered_json params{{"p", p.p},
                                {"n", p.n},
                                {"coeff_deg", p.coeff_deg},
                                {"max_power", p.max_power ? nlohmann::ordered_json(*p.max_power) : nlohmann::ordered_json()},
                                {"field", p.field},
                                {"denominator", p.denominator},
                                {"max_degree", p.max_degree}};
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  nlohmann::ordered_json solves = nlohmann::ordered_json::array();
  for (const auto& s : c.solves) solves.push_back(report_object(s));
  nlohmann::ordered_json j{{"schema", "punip.certificate/1"},
                           {"case", c.case_id},
                           {"status", to_string(c.status)},
                           {"input_sha256", input_hash},
                           {"params", params},
                           {"toolchain",
                            {{"punip", PUNIP_VERSION_STRING},
                             {"compiler", PUNIP_COMPILER},
                             {"cxx_standard", static_cast<long>(__cplusplus)}}},
                           {"checks", checks},
                           {"solves", solves},
                           {"notes", c.notes},
                           {"message", c.message}};
  return j.dump(2);
}

}  // namespace punip
