#include <cmath>
#include <fstream>

#include "doctest.h"
#include "nilquat/mc.hpp"

using namespace nilquat;
using nlohmann::json;

namespace {

// dbar Phi_n + 1/2 sum_{i+j=n} {Phi_i, Phi_j}, assembled directly from the chart terms.
std::vector<VectorValuedForm> oracle_residual(const TwistorEngine& eng, const MCSeries& s) {
  std::vector<VectorValuedForm> out;
  for (int n = 1; n <= s.order; ++n) {
    VectorValuedForm r = eng.dbar_apply(s.terms[static_cast<std::size_t>(n - 1)]);
    for (int i = 1; i < n; ++i) {
      VectorValuedForm b = eng.nijenhuis_bracket(s.terms[static_cast<std::size_t>(i - 1)],
                                                 s.terms[static_cast<std::size_t>(n - i - 1)]);
      r += SphereScalar(GaussRat::frac(1, 2)) * b;
    }
    out.push_back(r);
  }
  return out;
}

DeformationParam single(int m, EBasisElement e, GaussRat c = 1) { return {m, {{e, c}}}; }

EBasisElement hv(int k, int i, int alpha, int j, int beta) {
  EBasisElement e;
  e.family = EFamily::HV;
  e.k = k;
  e.i = i;
  e.alpha = alpha;
  e.j = j;
  e.beta = beta;
  return e;
}

EBasisElement kernel(EFamily f, int k, int a, int b) {
  EBasisElement e;
  e.family = f;
  e.k = k;
  e.a = a;
  e.b = b;
  return e;
}

}  // namespace

TEST_CASE("zero parameter gives the zero series") {
  TwistorEngine eng(1);
  MCSeries s = solve_mc(eng, {1, {}}, 5);
  for (const auto& c : s.coeffs) CHECK(c.empty());
  CHECK(residual_vanishes(mc_residual(eng, s)));
  CHECK(check_invariance(s));
  CHECK(check_holomorphic_projection(s));
  NormGrowth g = norm_growth(s, 16, 1);
  for (double x : g.norms) CHECK(x == 0.0);
}

TEST_CASE("residual matches an independent assembly and vanishes") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      MCSeries s = solve_mc(eng, random_deformation_param(m, 4, seed), 5);
      auto lib = mc_residual(eng, s);
      auto ora = oracle_residual(eng, s);
      REQUIRE(lib.size() == ora.size());
      for (std::size_t n = 0; n < lib.size(); ++n) {
        CHECK(lib[n] == ora[n]);
        CHECK(ora[n].is_zero());
      }
      CHECK(check_invariance(s));
      CHECK(check_holomorphic_projection(s));
    }
  }
}

TEST_CASE("second order term solves the self-bracket equation") {
  int m = 1;
  TwistorEngine eng(m);
  for (const auto& e : {hv(2, 1, m + 1, 2, m + 1), hv(1, 2, m + 1, 1, 1), kernel(EFamily::ker1_sym12, 2, 1, 1)}) {
    MCSeries s = solve_mc(eng, single(m, e), 2);
    VectorValuedForm phi1 = chart_restrict(e, m);
    CHECK(s.terms[0] == phi1);
    VectorValuedForm rhs = SphereScalar(GaussRat::frac(-1, 2)) * eng.nijenhuis_bracket(phi1, phi1);
    CHECK(eng.dbar_apply(s.terms[1]) == rhs);
    CHECK(realize(s.coeffs[1], m) == s.terms[1]);
  }
}

TEST_CASE("perturbing Phi_2 breaks the residual at order 2") {
  int m = 1;
  TwistorEngine eng(m);
  MCSeries s = solve_mc(eng, single(m, kernel(EFamily::ker1_sym12, 2, 1, 1)), 3);
  REQUIRE(residual_vanishes(mc_residual(eng, s)));
  EBasisElement extra = hv(0, 1, m + 1, 1, 1);
  s.coeffs[1][extra] += SphereScalar::f3();
  s.terms[1] += SphereScalar::f3() * chart_restrict(extra, m);
  auto r = mc_residual(eng, s);
  CHECK(r[0].is_zero());
  CHECK_FALSE(r[1].is_zero());
  CHECK_FALSE(residual_vanishes(r));
}

TEST_CASE("order one series is trivially a solution") {
  TwistorEngine eng(1);
  MCSeries s = solve_mc(eng, random_deformation_param(1, 3, 5), 1);
  CHECK(s.coeffs.size() == 1);
  CHECK(residual_vanishes(mc_residual(eng, s)));
  CHECK_THROWS_AS(solve_mc(eng, {1, {}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_mc(eng, {1, {}}, kMaxMcOrder + 1), std::invalid_argument);
}

TEST_CASE("invariance and projection checks reject hand-built violations") {
  int m = 1;
  TwistorEngine eng(m);
  MCSeries s = solve_mc(eng, single(m, hv(1, 1, m + 1, 2, 1)), 2);

  MCSeries form_slot = s;
  VectorValuedForm bad(1);
  bad.add(SphereScalar::f3(), FrameSymbol::holo(1, 1), {FormSymbol::dmu_bar()});
  form_slot.terms[1] += bad;
  CHECK_FALSE(check_invariance(form_slot));
  CHECK(check_holomorphic_projection(form_slot));

  MCSeries vec_slot = s;
  VectorValuedForm badv(1);
  badv.add(SphereScalar::f3(), FrameSymbol::d_mu(), {FormSymbol::sigma_bar(1, 1)});
  vec_slot.terms[1] += badv;
  CHECK_FALSE(check_invariance(vec_slot));
  CHECK_FALSE(check_holomorphic_projection(vec_slot));

  MCSeries pole = s;
  VectorValuedForm badp(1);
  badp.add(SphereScalar::monomial(3, 0), FrameSymbol::holo(1, 1), {FormSymbol::sigma_bar(2, 1)});
  pole.terms[1] += badp;
  CHECK_FALSE(check_invariance(pole));
}

TEST_CASE("homogeneity of the recursion") {
  for (int m = 1; m <= 2; ++m) {
    TwistorEngine eng(m);
    DeformationParam p = random_deformation_param(m, 5, 17);
    MCSeries s = solve_mc(eng, p, 5);
    MCSeries s2 = solve_mc(eng, scaled(p, 2), 5);
    GaussRat f = 1;
    for (std::size_t n = 0; n < 5; ++n) {
      f *= 2;
      CHECK(s2.terms[n] == SphereScalar(f) * s.terms[n]);
    }
    NormGrowth g = norm_growth(s, 32, 3), g2 = norm_growth(s2, 32, 3);
    double w = 1;
    for (std::size_t n = 0; n < g.norms.size(); ++n) {
      w *= 2;
      CHECK(std::abs(g2.norms[n] - w * g.norms[n]) <= 1e-9 * (1 + w * g.norms[n]));
    }
  }
}

TEST_CASE("deformation parameter JSON") {
  std::ifstream in(NILQUAT_FIXTURE_DIR "/phi1_sym12_m1.json");
  DeformationParam p = parse_deformation_param(json::parse(in), 1);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0].first == kernel(EFamily::ker1_sym12, 2, 1, 1));
  CHECK(p.terms[0].second == GaussRat(1));
  CHECK(parse_deformation_param(to_json(p), 1).terms == p.terms);
  CHECK(parse_deformation_param(json{{"terms", to_json(p)}}, 1).terms == p.terms);

  auto rejects = [](const json& j) { CHECK_THROWS_AS(parse_deformation_param(j, 1), ParamError); };
  rejects(json::object({{"family", "HV"}}));
  rejects(json::parse(R"([{"family": "nope", "k": 0}])"));
  rejects(json::parse(R"([{"family": "HV", "k": 3, "i": 1, "alpha": 2, "j": 1, "beta": 1, "re": "1"}])"));
  rejects(json::parse(R"([{"family": "HV", "k": 0, "i": 1, "alpha": 1, "j": 1, "beta": 1, "re": "1"}])"));
  rejects(json::parse(R"([{"family": "ker1_sym21", "k": 0, "a": 1, "b": 1, "re": "x"}])"));
  rejects(json::parse(R"([{"family": "ker1_sym21", "k": 0, "a": 1, "re": "1"}])"));

  MCSeries s = solve_mc(TwistorEngine(1), p, 4);
  CHECK(residual_vanishes(mc_residual(TwistorEngine(1), s)));
  CHECK(series_to_json(s).dump() == series_to_json(solve_mc(TwistorEngine(1), p, 4)).dump());
}
