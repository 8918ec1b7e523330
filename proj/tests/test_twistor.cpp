#include <vector>

#include "doctest.h"
#include "nilquat/twistor.hpp"

using namespace nilquat;

namespace {

using Coeffs = std::vector<SphereScalar>;
const SphereScalar kMu = SphereScalar::mu();
const SphereScalar kMubar = SphereScalar::mubar();

SphereScalar c(GaussRat x) { return SphereScalar(x); }
GaussRat half(long re, long im = 0) { return GaussRat::frac(re, 2, im, 2); }

// Block (X_{2a-1}, X_{2a}, Y_{2a-1}, Y_{2a}); for alpha = m+1 it is (Z, E1, E2, E3).
std::array<std::size_t, 4> block(int m, int alpha) {
  if (alpha == m + 1) return {hx::Z, hx::E(1), hx::E(2), hx::E(3)};
  return {hx::X(m, 2 * alpha - 1), hx::X(m, 2 * alpha), hx::Y(m, 2 * alpha - 1), hx::Y(m, 2 * alpha)};
}

// dbar_1 = (mu (X1 + i X2) - (Y1 - i Y2)) / 2, dbar_2 = ((X1 - i X2) + mu (Y1 + i Y2)) / 2,
// and d_i the complex conjugates.
Coeffs oracle_frame(int m, const FrameSymbol& s) {
  Coeffs out(hx::dim(m));
  auto b = block(m, s.alpha);
  std::array<SphereScalar, 4> v;
  if (s.kind == FrameKind::antiholo && s.i == 1) v = {c(half(1)) * kMu, c(half(0, 1)) * kMu, c(half(-1)), c(half(0, 1))};
  if (s.kind == FrameKind::antiholo && s.i == 2) v = {c(half(1)), c(half(0, -1)), c(half(1)) * kMu, c(half(0, 1)) * kMu};
  if (s.kind == FrameKind::holo) {
    auto w = oracle_frame(m, s.conj());
    for (int k = 0; k < 4; ++k) v[k] = w[b[k]].conj();
  }
  for (int k = 0; k < 4; ++k) out[b[k]] = v[k];
  return out;
}

GaussRat oracle_constant(int m, std::size_t i, std::size_t j) {
  for (int t = 1; t <= 2 * m; ++t) {
    if (i == hx::Y(m, t) && j == hx::X(m, t)) return 4;
    if (i == hx::X(m, t) && j == hx::Y(m, t)) return -4;
  }
  return 0;
}

struct Field {
  Coeffs alg;
  SphereScalar dmubar;  // fields here have no d/dmu part except d_mu itself
  SphereScalar dmu;
};

Field oracle_field(int m, const FrameSymbol& s) {
  Field f{Coeffs(hx::dim(m)), {}, {}};
  if (s.kind == FrameKind::d_mubar) f.dmubar = SphereScalar(GaussRat(1));
  else if (s.kind == FrameKind::d_mu) f.dmu = SphereScalar(GaussRat(1));
  else f.alg = oracle_frame(m, s);
  return f;
}

// [u, v] with the sphere directions differentiating coefficients.
Field oracle_bracket(int m, const Field& u, const Field& v) {
  Field r{Coeffs(hx::dim(m)), {}, {}};
  for (std::size_t k = 0; k < u.alg.size(); ++k) {
    r.alg[k] += u.dmubar * v.alg[k].d_dmubar() + u.dmu * v.alg[k].d_dmu();
    r.alg[k] -= v.dmubar * u.alg[k].d_dmubar() + v.dmu * u.alg[k].d_dmu();
    for (std::size_t l = 0; l < u.alg.size(); ++l) {
      GaussRat cz = oracle_constant(m, k, l);
      if (!cz.is_zero()) r.alg[hx::Z] += c(cz) * u.alg[k] * v.alg[l];
    }
  }
  return r;
}

SphereScalar pair(const ChartForm& w, const Field& f) {
  SphereScalar s = w.dmubar * f.dmubar;
  for (std::size_t k = 0; k < f.alg.size(); ++k) s += w.alg[k] * f.alg[k];
  return s;
}

SphereScalar coefficient(const OneForm& w, const FormSymbol& f) {
  auto it = w.find(f);
  return it == w.end() ? SphereScalar() : it->second;
}

FormSymbol dual(const FrameSymbol& s) {
  return s.kind == FrameKind::d_mubar ? FormSymbol::dmu_bar() : FormSymbol::sigma_bar(s.i, s.alpha);
}

VectorValuedForm term(const SphereScalar& s, const FrameSymbol& v, std::vector<FormSymbol> forms) {
  VectorValuedForm x(static_cast<int>(forms.size()));
  x.add(s, v, std::move(forms));
  return x;
}

}  // namespace

TEST_CASE("frame realization matches the block formulas") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    for (const auto& s : eng.frame_symbols()) {
      const ChartField& f = eng.realize(s);
      Field o = oracle_field(m, s);
      CHECK(f.alg == o.alg);
      CHECK(f.dmubar == o.dmubar);
      CHECK(f.dmu == o.dmu);
      FrameVector v{{s, SphereScalar(1)}};
      CHECK(eng.to_frame(f) == v);
    }
  }
}

TEST_CASE("frame brackets agree with the bracket of realizations") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    auto syms = eng.frame_symbols();
    for (const auto& a : syms)
      for (const auto& b : syms) {
        Field want = oracle_bracket(m, oracle_field(m, a), oracle_field(m, b));
        ChartField got = eng.realize(eng.frame_bracket(a, b));
        CHECK(got.alg == want.alg);
        CHECK(got.dmubar.is_zero());
        CHECK(got.dmu.is_zero());
      }
  }
}

TEST_CASE("frame bracket examples") {
  int m = 2;
  TwistorEngine eng(m);
  for (int a = 1; a <= m; ++a) {
    FrameVector want{{FrameSymbol::holo(1, m + 1), SphereScalar(-2) * kMu},
                     {FrameSymbol::holo(2, m + 1), SphereScalar(-2)}};
    CHECK(project_10(eng.frame_bracket(FrameSymbol::antiholo(1, a), FrameSymbol::holo(2, a))) == want);
    for (int b = 1; b <= m; ++b)
      for (int i = 1; i <= 2; ++i)
        if (a != b) CHECK(eng.frame_bracket(FrameSymbol::antiholo(i, a), FrameSymbol::holo(i, b)).empty());
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        CHECK(eng.frame_bracket(FrameSymbol::antiholo(j, m + 1), FrameSymbol::holo(i, a)).empty());
  }
}

TEST_CASE("coframe is dual to the (0,1) frame and kills (1,0) vectors") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    for (const auto& f : eng.form_symbols()) {
      ChartForm w = eng.realize_form(f);
      for (const auto& s : eng.frame_symbols()) {
        SphereScalar want = (!s.is_10() && dual(s) == f) ? SphereScalar(1) : SphereScalar();
        CHECK(pair(w, oracle_field(m, s)) == want);
      }
    }
  }
}

TEST_CASE("Lie derivative table agrees with Cartan's formula") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    for (const auto& v : eng.frame_symbols()) {
      if (v.kind != FrameKind::holo) continue;
      for (const auto& f : eng.form_symbols()) {
        OneForm got = eng.lie_derivative_form(v, f);
        CHECK(got == eng.lie_derivative_form_derived(v, f));
        ChartForm w = eng.realize_form(f);
        // (L_V w)(W) = V(w(W)) - w([V, W]) and w(W) is constant on frame fields.
        for (const auto& s : eng.frame_symbols()) {
          SphereScalar want = -pair(w, oracle_bracket(m, oracle_field(m, v), oracle_field(m, s)));
          SphereScalar have = s.is_10() ? SphereScalar() : coefficient(got, dual(s));
          CHECK(have == want);
        }
      }
    }
  }
}

TEST_CASE("Lie derivative examples") {
  TwistorEngine e2(2);
  OneForm a = e2.lie_derivative_form(FrameSymbol::holo(1, 1), FormSymbol::sigma_bar(2, 1));
  CHECK(a == OneForm{{FormSymbol::dmu_bar(), SphereScalar::inv_one_plus_t(1)}});
  OneForm b = e2.lie_derivative_form(FrameSymbol::holo(2, 1), FormSymbol::sigma_bar(2, 3));
  CHECK(b == OneForm{{FormSymbol::sigma_bar(1, 1), SphereScalar(-2)}});
  CHECK(e2.lie_derivative_form(FrameSymbol::holo(1, 1), FormSymbol::sigma_bar(1, 2)).empty());
  CHECK_THROWS(e2.lie_derivative_form(FrameSymbol::holo(1, 4), FormSymbol::sigma_bar(1, 1)));
}

TEST_CASE("chart restriction") {
  int m = 1;
  CohoElement x{2, 2, VecIndex{1, 1}, {FormIndex{2, 1}}};
  CHECK(chart_restrict(x, m) == term(SphereScalar::monomial(2, 0, 1, 1), FrameSymbol::holo(1, 1),
                                     {FormSymbol::sigma_bar(2, 1)}));
  CohoElement y{0, 2, VecIndex{2, m + 1}, {FormIndex{1, m + 1}}};
  CHECK(chart_restrict(y, m) == term(SphereScalar::inv_one_plus_t(1), FrameSymbol::holo(2, m + 1),
                                     {FormSymbol::sigma_bar(1, m + 1)}));
  CHECK(chart_restrict(x, m) + chart_restrict(y, m) ==
        term(SphereScalar::monomial(2, 0, 1, 1), FrameSymbol::holo(1, 1), {FormSymbol::sigma_bar(2, 1)}) +
            term(SphereScalar::inv_one_plus_t(1), FrameSymbol::holo(2, m + 1), {FormSymbol::sigma_bar(1, m + 1)}));
}

TEST_CASE("dbar examples") {
  int m = 1;
  TwistorEngine eng(m);
  VectorValuedForm x = term(SphereScalar::f2(), FrameSymbol::holo(1, m + 1), {FormSymbol::sigma_bar(1, 1)});
  // dbar f2 = 1/(1+t)^2 plus f2 [d/dmubar, d_1^{m+1}]^{1,0} = f2 mu/(1+t) d_1^{m+1}.
  FrameVector shift = project_10(eng.frame_bracket(FrameSymbol::d_mubar(), FrameSymbol::holo(1, m + 1)));
  CHECK(shift == FrameVector{{FrameSymbol::holo(1, m + 1), SphereScalar::f1()}});
  CHECK(SphereScalar::f2().d_dmubar() + SphereScalar::f2() * SphereScalar::f1() == SphereScalar::inv_one_plus_t(1));
  CHECK(eng.dbar_apply(x) == term(SphereScalar::inv_one_plus_t(1), FrameSymbol::holo(1, m + 1),
                                  {FormSymbol::dmu_bar(), FormSymbol::sigma_bar(1, 1)}));
  // E classes are dbar-closed on the chart.
  for (int mm = 1; mm <= 2; ++mm) {
    TwistorEngine e2(mm);
    for (const auto& e : e_space_basis(mm)) CHECK(e2.dbar_apply(chart_restrict(e, mm)).is_zero());
  }
  for (const auto& v : eng.frame_symbols()) {
    if (v.kind != FrameKind::holo) continue;
    CHECK(eng.dbar_apply(eng.dbar_apply(term(SphereScalar::f1(), v, {}))).is_zero());
  }
}

TEST_CASE("dbar primitives") {
  CHECK(dbar_primitive(SphereScalar::monomial(2, 0, -1, 2)) == SphereScalar::f1());
  CHECK(dbar_primitive(SphereScalar::inv_one_plus_t(2)) == SphereScalar::f2());
  CHECK(dbar_primitive(SphereScalar()).is_zero());
  CHECK_THROWS_AS(dbar_primitive(SphereScalar::mubar()), PrimitiveError);

  // dbar of a smooth function, recovered up to a constant.
  const SphereScalar hs[] = {SphereScalar::monomial(2, 1, GaussRat::frac(1, 3), 2),
                             SphereScalar::monomial(1, 3, GaussRat::i(), 3) + SphereScalar::f3(),
                             SphereScalar::monomial(0, 2, 5, 2) * SphereScalar::f1()};
  for (const auto& h : hs) {
    REQUIRE(is_smooth_on_sphere(h, SmoothKind::function));
    SphereScalar p = dbar_primitive(h.d_dmubar());
    CHECK(p.d_dmubar() == h.d_dmubar());
    CHECK(is_smooth_on_sphere(p, SmoothKind::function));
    CHECK(p.value_at_origin().is_zero());
    CHECK((p - h).d_dmu().is_zero());
  }
}

TEST_CASE("self-bracket of a top-index element vanishes") {
  int m = 1;
  TwistorEngine eng(m);
  VectorValuedForm phi = term(SphereScalar::f1(), FrameSymbol::holo(1, m + 1), {FormSymbol::sigma_bar(1, m + 1)});
  CHECK(eng.nijenhuis_bracket(phi, phi).is_zero());
}

TEST_CASE("bracket decomposes through the primitive solver") {
  int m = 1;
  TwistorEngine eng(m);
  CohoElement x{2, 2, VecIndex{1, 1}, {FormIndex{2, 1}}};
  VectorValuedForm b = eng.nijenhuis_bracket(chart_restrict(x, m), chart_restrict(x, m));
  GammaE g = solve_dbar_in_E(eng, b);
  CHECK(eng.dbar_apply(realize(g, m)) == b);
}

TEST_CASE("bracket closure and the zero families") {
  TwistorEngine e1(1);
  BracketClosureReport r = verify_bracket_closure(e1);
  CHECK(r.pairs == 33 * 33);
  CHECK(r.failures == 0);
  BracketClosureReport r2 = verify_bracket_closure(TwistorEngine(2), 60, 3);
  CHECK(r2.pairs == 60);
  CHECK(r2.failures == 0);

  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    auto basis = e_space_basis(m);
    for (const auto& x : basis)
      for (const auto& y : basis) {
        bool sym = x.family == EFamily::ker1_sym12 && y.family == EFamily::ker1_sym21;
        bool top = x.family != EFamily::HV && y.family == EFamily::HV && y.beta == m + 1;
        if (sym || top) CHECK(eng.nijenhuis_bracket(chart_restrict(x, m), chart_restrict(y, m)).is_zero());
      }
  }
}

TEST_CASE("coboundary via the Gauduchon rule") {
  for (int m = 1; m <= 2; ++m) CHECK(delta0_via_gauduchon(TwistorEngine(m)) == delta0_map(m));
  CHECK(TwistorEngine(1).verify_w_tilde());
}

TEST_CASE("numeric cross-check") {
  NumericCrosscheck nc = numeric_crosscheck(TwistorEngine(1), 50, 99);
  CHECK(nc.samples >= 50);
  CHECK(nc.max() < 1e-9);
}
