#include <tuple>

#include "doctest.h"
#include "nilquat/hypercomplex.hpp"

using namespace nilquat;

namespace {

// Builds J from J(from) = to on half the basis, extended by J^2 = -1.
Endo complex_structure_from(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, int>>& images) {
  Endo j(n, n);
  for (auto [from, to, sign] : images) {
    j.set(to, from, sign);
    j.set(from, to, -sign);
  }
  return j;
}

Endo oracle_i1(int m) {
  std::vector<std::tuple<std::size_t, std::size_t, int>> im = {{hx::Z, hx::E(1), 1}, {hx::E(2), hx::E(3), 1}};
  for (int a = 1; a <= m; ++a) {
    im.push_back({hx::X(m, 2 * a - 1), hx::X(m, 2 * a), 1});
    im.push_back({hx::Y(m, 2 * a - 1), hx::Y(m, 2 * a), 1});
  }
  return complex_structure_from(hx::dim(m), im);
}

Endo oracle_i2(int m) {
  std::vector<std::tuple<std::size_t, std::size_t, int>> im = {{hx::Z, hx::E(2), 1}, {hx::E(1), hx::E(3), -1}};
  for (int a = 1; a <= m; ++a) {
    im.push_back({hx::X(m, 2 * a - 1), hx::Y(m, 2 * a - 1), 1});
    im.push_back({hx::X(m, 2 * a), hx::Y(m, 2 * a), -1});
  }
  return complex_structure_from(hx::dim(m), im);
}

AlgVector act(const Endo& j, const AlgVector& v) { return j.apply(v); }

// [Jv,Jw] - [v,w] - J[Jv,w] - J[v,Jw] written out directly.
AlgVector oracle_nijenhuis(const LieAlgebra& a, const Endo& j, const AlgVector& v, const AlgVector& w) {
  AlgVector t1 = bracket(a, act(j, v), act(j, w));
  AlgVector t2 = bracket(a, v, w);
  AlgVector t3 = act(j, bracket(a, act(j, v), w));
  AlgVector t4 = act(j, bracket(a, v, act(j, w)));
  for (std::size_t k = 0; k < t1.size(); ++k) t1[k] -= t2[k] + t3[k] + t4[k];
  return t1;
}

}  // namespace

TEST_CASE("standard triple matches the defining action") {
  for (int m = 1; m <= 3; ++m) {
    HyperTriple t = standard_triple(m);
    CHECK(t.I1 == oracle_i1(m));
    CHECK(t.I2 == oracle_i2(m));
    CHECK(t.I3 == oracle_i1(m) * oracle_i2(m));
  }
  HyperTriple t1 = standard_triple(1);
  LieAlgebra a = make_heisenberg_ext(1);
  CHECK(t1.I1.apply(a.basis_vector(hx::X(1, 1))) == a.basis_vector(hx::X(1, 2)));
  AlgVector minus_y2 = a.zero();
  minus_y2[hx::Y(1, 2)] = -1;
  CHECK(t1.I2.apply(a.basis_vector(hx::X(1, 2))) == minus_y2);
  for (int m = 1; m <= 3; ++m) {
    HyperTriple t = standard_triple(m);
    CHECK(t.I3.apply(unit_vector(hx::dim(m), hx::Z)) == unit_vector(hx::dim(m), hx::E(3)));
  }
}

TEST_CASE("quaternion relations") {
  for (int m = 1; m <= 4; ++m) CHECK_FALSE(check_quaternion_relations(standard_triple(m)).has_value());
  HyperTriple t = standard_triple(1);
  CHECK(check_quaternion_relations({t.I1, t.I1, t.I1}).has_value());

  std::size_t n = hx::dim(1);
  Endo p = ExactMatrix::identity(n), pinv = ExactMatrix::identity(n);
  p.set(0, 5, 3);
  pinv.set(0, 5, -3);
  p.set(2, 7, GaussRat::frac(1, 2));
  pinv.set(2, 7, GaussRat::frac(-1, 2));
  REQUIRE(p * pinv == ExactMatrix::identity(n));
  HyperTriple c{p * t.I1 * pinv, p * t.I2 * pinv, p * t.I3 * pinv};
  CHECK_FALSE(check_quaternion_relations(c).has_value());
}

TEST_CASE("integrability") {
  for (int m = 1; m <= 2; ++m) {
    LieAlgebra a = make_heisenberg_ext(m);
    HyperTriple t = standard_triple(m);
    Endo dir = direction_structure(t, {GaussRat::frac(3, 5), GaussRat::frac(4, 5), 0});
    CHECK(is_almost_complex(dir));
    for (const Endo* j : {&t.I1, &t.I2, &t.I3, &dir}) {
      for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) {
          AlgVector o = oracle_nijenhuis(a, *j, a.basis_vector(i), a.basis_vector(k));
          CHECK(is_zero_vector(o));
          CHECK(nijenhuis_invariant(a, *j, a.basis_vector(i), a.basis_vector(k)) == o);
        }
      CHECK(is_integrable(a, *j));
      CHECK(is_abelian_structure(a, *j));
    }
  }
  LieAlgebra ab = make_abelian(4);
  CHECK(is_integrable(ab, block_j1()));
  CHECK_THROWS_AS(direction_structure(standard_triple(1), {1, 1, 0}), std::invalid_argument);
}

TEST_CASE("a non-integrable structure is detected") {
  // J swapping X1 and Z pairs the center with a non-central direction.
  LieAlgebra a = make_heisenberg_ext(1);
  Endo j = complex_structure_from(hx::dim(1), {{hx::X(1, 1), hx::Z, 1},
                                              {hx::E(1), hx::E(2), 1},
                                              {hx::E(3), hx::X(1, 2), 1},
                                              {hx::Y(1, 1), hx::Y(1, 2), 1}});
  REQUIRE(is_almost_complex(j));
  bool any = false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      any = any || !is_zero_vector(oracle_nijenhuis(a, j, a.basis_vector(i), a.basis_vector(k)));
  CHECK(any);
  CHECK_FALSE(is_integrable(a, j));
}

TEST_CASE("obata connection") {
  LieAlgebra a = make_heisenberg_ext(1);
  HyperTriple t = standard_triple(1);
  ConnectionCoeffs g = obata_connection(a, t);
  AlgVector want = a.zero();
  want[hx::Z] = -2;
  CHECK(g.nabla(a.basis_vector(hx::X(1, 1)), a.basis_vector(hx::Y(1, 1))) == want);
  for (std::size_t v = 0; v < a.dim(); ++v) CHECK(is_zero_vector(g.gamma(hx::Z, v)));
  CHECK(obata_reduced(a, t, a.basis_vector(hx::X(1, 1)), a.basis_vector(hx::X(1, 2))) ==
        obata_full(a, t, a.basis_vector(hx::X(1, 1)), a.basis_vector(hx::X(1, 2))));
  for (int m = 1; m <= 3; ++m) {
    LieAlgebra am = make_heisenberg_ext(m);
    HyperTriple tm = standard_triple(m);
    ConnectionCoeffs gm = obata_connection(am, tm);
    CHECK(is_torsion_free(am, gm));
    for (int k = 1; k <= 3; ++k) CHECK(is_parallel(gm, tm[k]));
  }
}
