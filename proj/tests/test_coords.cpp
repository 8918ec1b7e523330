#include <random>

#include "doctest.h"
#include "nilquat/coords.hpp"

using namespace nilquat;

namespace {

CoordPoly var(int m, int v) { return CoordPoly::var(cv::count(m), v); }
CoordPoly cst(int m, const GaussRat& c) { return CoordPoly::constant(cv::count(m), c); }

// X_j = d/dx_j + 2 y_j d/dz, Y_j = d/dy_j - 2 x_j d/dz, Z = d/dz, E_i = d/de_i.
std::vector<PolyField> oracle_fields(int m) {
  std::vector<PolyField> f(hx::dim(m), PolyField::zero(m));
  f[hx::Z].comp[cv::z(m)] = cst(m, 1);
  for (int i = 1; i <= 3; ++i) f[hx::E(i)].comp[cv::e(m, i)] = cst(m, 1);
  for (int j = 1; j <= 2 * m; ++j) {
    auto& x = f[hx::X(m, j)];
    x.comp[cv::x(m, j)] = cst(m, 1);
    x.comp[cv::z(m)] = GaussRat(2) * var(m, cv::y(m, j));
    auto& y = f[hx::Y(m, j)];
    y.comp[cv::y(m, j)] = cst(m, 1);
    y.comp[cv::z(m)] = GaussRat(-2) * var(m, cv::x(m, j));
  }
  return f;
}

PolyForm d(int m, int v) { return PolyForm::differential(m, v); }

}  // namespace

TEST_CASE("group law examples") {
  std::vector<GaussRat> p = {1, 0, 0, 0, 0}, q = {0, 0, 1, 0, 0}, id(5);
  CHECK(group_mul(1, p, id) == p);
  CHECK(group_mul(1, p, q) == std::vector<GaussRat>{1, 0, 1, 0, -2});
  CHECK_THROWS_AS(group_mul(1, p, std::vector<GaussRat>(3)), std::invalid_argument);
}

TEST_CASE("group law is associative with inverse (-p)") {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<GaussRat> p(cv::count(m)), q(cv::count(m)), s(cv::count(m));
      for (auto* v : {&p, &q, &s})
        for (auto& c : *v) c = random_rational(rng, 7, 4);
      CHECK(group_mul(m, group_mul(m, p, q), s) == group_mul(m, p, group_mul(m, q, s)));
      std::vector<GaussRat> inv(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) inv[i] = -p[i];
      CHECK(group_mul(m, p, inv) == std::vector<GaussRat>(p.size()));
    }
}

TEST_CASE("left-invariant fields") {
  for (int m = 1; m <= 3; ++m) CHECK(left_invariant_fields(m) == oracle_fields(m));
  auto f = left_invariant_fields(1);
  CHECK(f[hx::X(1, 1)].comp[cv::z(1)] == GaussRat(2) * var(1, cv::y(1, 1)));
  CHECK(field_bracket(f[hx::Y(1, 1)], f[hx::X(1, 1)]).comp[cv::z(1)] == cst(1, 4));
  PolyField four_z = PolyField::zero(1);
  four_z.comp[cv::z(1)] = cst(1, 4);
  CHECK(field_bracket(f[hx::Y(1, 1)], f[hx::X(1, 1)]) == four_z);
  CHECK(field_bracket(f[hx::X(1, 1)], f[hx::E(2)]) == PolyField::zero(1));
  PolyField minus = PolyField::zero(1);
  minus.comp[cv::z(1)] = cst(1, -4);
  CHECK(field_bracket(f[hx::X(1, 1)], f[hx::Y(1, 1)]) == minus);
  CHECK(field_bracket(f[hx::X(1, 1)], f[hx::X(1, 1)]) == PolyField::zero(1));

  PolyField u = PolyField::zero(1), v = PolyField::zero(1);
  u.comp[cv::z(1)] = var(1, cv::y(1, 1));
  v.comp[cv::z(1)] = var(1, cv::x(1, 1));
  CHECK(field_bracket(u, v) == PolyField::zero(1));
}

TEST_CASE("exterior derivative") {
  int m = 1;
  PolyForm dtheta = PolyForm::zero(m, 2);
  for (int j = 1; j <= 2; ++j) dtheta.add({cv::x(m, j), cv::y(m, j)}, cst(m, 4));
  CHECK(ext_d(theta_form(m)) == dtheta);
  CHECK(ext_d(d(m, cv::z(m))).is_zero());
  CHECK(ext_d(var(m, cv::x(m, 1)) * d(m, cv::y(m, 1))) == wedge(d(m, cv::x(m, 1)), d(m, cv::y(m, 1))));
  for (int mm = 1; mm <= 3; ++mm) {
    auto co = invariant_coframe(mm);
    for (const auto& w : co) CHECK(ext_d(ext_d(w)).is_zero());
  }
}

TEST_CASE("coframe duality") {
  for (int m = 1; m <= 2; ++m) {
    auto co = invariant_coframe(m);
    auto fr = oracle_fields(m);
    for (std::size_t i = 0; i < co.size(); ++i)
      for (std::size_t j = 0; j < fr.size(); ++j) CHECK(pair(co[i], fr[j]) == cst(m, i == j ? 1 : 0));
  }
}

TEST_CASE("triple on one-forms") {
  int m = 1;
  HyperTriple t = standard_triple(m);
  auto co = invariant_coframe(m);
  CHECK(triple_on_oneforms(t.I1, m, d(m, cv::x(m, 1))) == d(m, cv::x(m, 2)));
  CHECK(triple_on_oneforms(t.I1, m, co[hx::Z]) == d(m, cv::e(m, 1)));
  PolyForm w = triple_on_oneforms(t.I1, m, triple_on_oneforms(t.I1, m, d(m, cv::x(m, 1))));
  CHECK(w == cst(m, -1) * d(m, cv::x(m, 1)));
}

TEST_CASE("quaternionic coordinate functions") {
  for (int m = 1; m <= 3; ++m) {
    CoordPoly f1 = var(m, cv::e(m, 1)), f2 = var(m, cv::e(m, 2)), f3 = var(m, cv::e(m, 3));
    for (int a = 1; a <= m; ++a) {
      CoordPoly x1 = var(m, cv::x(m, 2 * a - 1)), x2 = var(m, cv::x(m, 2 * a));
      CoordPoly y1 = var(m, cv::y(m, 2 * a - 1)), y2 = var(m, cv::y(m, 2 * a));
      f1 += GaussRat(2) * (y1 * x2 - x1 * y2);
      f2 += y1 * y1 + x1 * x1 - y2 * y2 - x2 * x2;
      f3 += GaussRat(2) * (y1 * y2 + x1 * x2);
    }
    auto f = quaternionic_functions(m);
    CHECK(f[0] == f1);
    CHECK(f[1] == f2);
    CHECK(f[2] == f3);
    HyperTriple t = standard_triple(m);
    PolyForm dz = d(m, cv::z(m));
    CHECK(triple_on_oneforms(t.I1, m, dz) == ext_d(PolyForm::function(f1, m)));
    CHECK(triple_on_oneforms(t.I2, m, dz) == ext_d(PolyForm::function(f2, m)));
    CHECK(triple_on_oneforms(t.I3, m, dz) == ext_d(PolyForm::function(f3, m)));
    CHECK(verify_quaternionic_coordinates(m).all());
  }
}

TEST_CASE("numeric evaluation") {
  int m = 1;
  std::vector<double> pt(cv::count(m), 0.0);
  pt[cv::y(m, 1)] = 3;
  auto x1 = numeric_eval(left_invariant_fields(m)[hx::X(m, 1)], pt);
  CHECK(x1[cv::x(m, 1)] == std::complex<double>(1, 0));
  CHECK(x1[cv::z(m)] == std::complex<double>(6, 0));
  auto th = numeric_eval(theta_form(m), std::vector<double>(cv::count(m), 0.0));
  for (const auto& [k, v] : th) CHECK(std::abs(v - (k == std::vector<int>{cv::z(m)} ? 1.0 : 0.0)) == 0.0);
  CHECK(verify_left_translation(m));
}
