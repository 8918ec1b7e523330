#include <fstream>
#include <random>

#include "doctest.h"
#include "nilquat/automorphisms.hpp"

using namespace nilquat;
using nlohmann::json;

namespace {

std::size_t sz(int m) { return static_cast<std::size_t>(m); }

AutMatrix diag(const std::vector<long>& d) {
  AutMatrix a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a.set(i, i, d[i]);
  return a;
}

// omega(u, v) from [u, v] = -2 omega(u, v) Z on the (X, Y) block, local indices.
ExactMatrix oracle_omega(int m) {
  LieAlgebra a = make_heisenberg_ext(m);
  std::size_t n = 4 * sz(m);
  ExactMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgVector b = bracket(a, a.basis_vector(4 + i), a.basis_vector(4 + j));
      w.set(i, j, b[hx::Z] / GaussRat(-2));
    }
  return w;
}

ExactMatrix middle(const Endo& e, int m) {
  std::size_t n = 4 * sz(m);
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, e.at(4 + i, 4 + j));
  return out;
}

// Dimension of {X : X I1 = I1 X, X I2 = I2 X, X^T w + w X = 0} on the (X, Y) block.
std::size_t quaternionic_isotropy_dim(int m) {
  std::size_t n = 4 * sz(m);
  HyperTriple t = standard_triple(m);
  ExactMatrix j1 = middle(t.I1, m), j2 = middle(t.I2, m), w = oracle_omega(m);
  auto u = [&](std::size_t r, std::size_t c) { return r * n + c; };
  std::vector<ExactVector> rows;
  for (const ExactMatrix* j : {&j1, &j2})
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        ExactVector eq(n * n);
        for (std::size_t k = 0; k < n; ++k) {
          eq[u(r, k)] += j->at(k, c);
          eq[u(k, c)] -= j->at(r, k);
        }
        rows.push_back(eq);
      }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      ExactVector eq(n * n);
      for (std::size_t k = 0; k < n; ++k) {
        eq[u(k, r)] += w.at(k, c);
        eq[u(k, c)] += w.at(r, k);
      }
      rows.push_back(eq);
    }
  return n * n - rank(ExactMatrix::from_rows(rows));
}

ExactMatrix pattern_b(GaussRat a, GaussRat b, GaussRat c, GaussRat d) {
  return ExactMatrix::from_rows({{a, b, c, d}, {-b, a, -d, c}, {-c, d, a, -b}, {-d, -c, b, a}});
}

}  // namespace

TEST_CASE("Lie automorphism examples") {
  LieAlgebra a = make_heisenberg_ext(1);
  CHECK(is_lie_automorphism(ExactMatrix::identity(8), a));
  CHECK(is_lie_automorphism(diag({2, 1, 1, 1, 1, 1, 2, 2}), a));
  AutMatrix swap = ExactMatrix::identity(8);
  swap.set(0, 0, 0);
  swap.set(1, 1, 0);
  swap.set(0, 1, 1);
  swap.set(1, 0, 1);
  CHECK_FALSE(is_lie_automorphism(swap, a));
  CHECK_FALSE(is_lie_automorphism(ExactMatrix(8, 8), a));
}

TEST_CASE("symplectic form") {
  for (int m = 1; m <= 3; ++m) {
    CHECK(symplectic_form(m) == oracle_omega(m));
    HyperTriple t = standard_triple(m);
    ExactMatrix w = oracle_omega(m);
    for (int k = 1; k <= 3; ++k) {
      ExactMatrix j = middle(t[k], m);
      CHECK(j.transpose() * w * j == w);
    }
  }
}

TEST_CASE("normal form of Lie automorphisms") {
  LieAlgebra a = make_heisenberg_ext(1);
  Prop2Check id = is_prop2_form(ExactMatrix::identity(8), 1);
  CHECK(id.ok);
  CHECK(id.s0 == GaussRat(1));
  Prop2Check d = is_prop2_form(diag({2, 1, 1, 1, 1, 1, 2, 2}), 1);
  CHECK(d.ok);
  CHECK(d.s0 == GaussRat(2));

  CHECK_FALSE(is_prop2_form(diag({2, 1, 1, 1, 1, 1, 1, 1}), 1).ok);
  AutMatrix lower = ExactMatrix::identity(8);
  lower.set(hx::X(1, 1), hx::E(1), 1);
  CHECK_FALSE(is_prop2_form(lower, 1).ok);
  CHECK_FALSE(is_lie_automorphism(lower, a));

  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m) {
    LieAlgebra am = make_heisenberg_ext(m);
    for (int trial = 0; trial < 20; ++trial) {
      AutMatrix M = random_prop2_matrix(m, rng);
      REQUIRE(is_lie_automorphism(M, am));
      Prop2Check p = is_prop2_form(M, m);
      CHECK(p.ok);
      REQUIRE(p.s0.has_value());
      AlgVector mz = M.apply(am.basis_vector(hx::Z));
      AlgVector want = am.zero();
      want[hx::Z] = *p.s0;
      CHECK(mz == want);
      AutMatrix N = random_prop2_matrix(m, rng);
      CHECK(is_lie_automorphism(M * N, am));
    }
  }
}

TEST_CASE("hypercomplex automorphisms") {
  HyperTriple t = standard_triple(1);
  CHECK(is_hypercomplex_automorphism(ExactMatrix::identity(8), t));
  CHECK_FALSE(is_hypercomplex_automorphism(t.I1, t));

  ExactMatrix b = pattern_b(1, 2, 3, 5);
  CHECK(b * block_j1() == block_j1() * b);
  CHECK(b * block_j2() == block_j2() * b);
  AutMatrix M = ExactMatrix::identity(8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) M.set(4 + i, 4 + j, b.at(i, j));
  CHECK(has_quaternion_pattern(M, 4, 4));
  CHECK(is_hypercomplex_automorphism(M, t));
  M.set(4, 4, 7);
  CHECK_FALSE(has_quaternion_pattern(M, 4, 4));
  CHECK(has_quaternion_pattern(M, 4, 4, 1));
}

TEST_CASE("normal form of hypercomplex automorphisms") {
  CHECK(is_prop3_form(ExactMatrix::identity(8), 1).ok);
  CHECK_FALSE(is_prop3_form(diag({1, 2, 1, 1, 1, 1, 1, 1}), 1).ok);

  // Strip block with a free first row and patterned lower rows.
  AutMatrix M = ExactMatrix::identity(8);
  ExactMatrix b = pattern_b(GaussRat::frac(1, 2), -1, 3, 2);
  for (std::size_t j = 0; j < 4; ++j) {
    M.set(0, 4 + j, GaussRat(static_cast<long>(j) + 7));
    for (std::size_t i = 1; i < 4; ++i) M.set(i, 4 + j, b.at(i, j));
  }
  CHECK(is_prop3_form(M, 1).ok);
  CHECK(is_lie_automorphism(M, make_heisenberg_ext(1)));
  CHECK_FALSE(is_hypercomplex_automorphism(M, standard_triple(1)));

  std::mt19937_64 rng(9);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      AutMatrix P = random_prop3_matrix(m, rng, false);
      CHECK(is_prop3_form(P, m).ok);
      CHECK(is_lie_automorphism(P, make_heisenberg_ext(m)));
      CHECK(is_hypercomplex_automorphism(P, standard_triple(m)));
    }
}

TEST_CASE("group dimensions") {
  GroupDimensions g1 = group_dimensions(1);
  CHECK(g1.dim_g == 39);
  CHECK(g1.dim_g_formula == 39);
  CHECK(g1.dim_h_formula == 12);
  CHECK(g1.effective_formula == 27);
  GroupDimensions g2 = group_dimensions(2);
  CHECK(g2.dim_g == 81);
  CHECK(g2.dim_h_formula == 27);
  CHECK(g2.effective_formula == 54);
  for (int m = 1; m <= 3; ++m) {
    GroupDimensions g = group_dimensions(m);
    std::size_t M = sz(m);
    CHECK(g.dim_g - g.dim_h == g.effective);
    CHECK(g.effective_formula < g.h1_wd);
    // The quaternion-linear part of the conformal-symplectic block is so*(2m).
    std::size_t iso = quaternionic_isotropy_dim(m);
    CHECK(iso == M * (2 * M - 1));
    CHECK(g.dim_h == 1 + 8 * M + iso);
    CHECK(g.effective == g.h1_wd);
  }
}

TEST_CASE("matrix JSON") {
  std::ifstream in(NILQUAT_FIXTURE_DIR "/aut_identity_m1.json");
  AutMatrix id = parse_aut_matrix(json::parse(in), 1);
  CHECK(id == ExactMatrix::identity(8));
  CHECK(parse_aut_matrix(to_json(id), 1) == id);
  CHECK_THROWS_AS(parse_aut_matrix(to_json(id), 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_aut_matrix(json::parse(R"([["1", "x"]])"), 1), std::invalid_argument);

  std::ifstream in2(NILQUAT_FIXTURE_DIR "/aut_prop2_not_prop3_m1.json");
  AutMatrix f = parse_aut_matrix(json::parse(in2), 1);
  CHECK(is_lie_automorphism(f, make_heisenberg_ext(1)));
  CHECK(is_prop2_form(f, 1).ok);
  CHECK_FALSE(is_prop3_form(f, 1).ok);
}
