#include <random>

#include "doctest.h"
#include "nilquat/linalg.hpp"

using namespace nilquat;

namespace {

ExactMatrix m22(GaussRat a, GaussRat b, GaussRat c, GaussRat d) { return ExactMatrix::from_rows({{a, b}, {c, d}}); }

// Dense product for the oracle side.
ExactVector dense_apply(const std::vector<ExactVector>& rows, const ExactVector& v) {
  ExactVector out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += rows[r][c] * v[c];
  return out;
}

}  // namespace

TEST_CASE("gaussian rationals") {
  GaussRat z = GaussRat::frac(1, 2, 3, 1);
  CHECK(z.str() == "1/2+3i");
  CHECK((z * z.conj()) == GaussRat(z.norm_sq()));
  CHECK((z / z).is_one());
  CHECK((GaussRat::i() * GaussRat::i()) == GaussRat(-1));
  CHECK(GaussRat::parse_rational("-6/4") == mpq_class(-3, 2));
  CHECK_THROWS_AS(GaussRat::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(GaussRat::parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rank examples") {
  CHECK(rank(ExactMatrix::identity(3)) == 3);
  CHECK(rank(ExactMatrix(3, 3)) == 0);
  CHECK(rank(m22(1, GaussRat::i(), -GaussRat::i(), 1)) == 1);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(ExactMatrix::identity(3)).empty());
  CHECK(kernel_basis(ExactMatrix(2, 2)).size() == 2);
  ExactMatrix a = m22(1, GaussRat::i(), -GaussRat::i(), 1);
  auto k = kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(is_zero_vector(a.apply(k[0])));
  CHECK(same_span(k, {{GaussRat::i(), -1}}, 2));
}

TEST_CASE("solve examples") {
  ExactVector b = {GaussRat(3), GaussRat::frac(1, 2)};
  CHECK(solve(ExactMatrix::identity(2), b) == b);
  CHECK_FALSE(solve(ExactMatrix(2, 2), b).has_value());
  CHECK(solve(m22(2, 0, 0, 4), {4, 8}) == ExactVector{2, 2});
  CHECK_THROWS_AS(solve(ExactMatrix::identity(2), {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + static_cast<std::size_t>(trial % 5), c = 1 + static_cast<std::size_t>((trial / 5) % 6);
    std::vector<ExactVector> rows(r, ExactVector(c));
    for (auto& row : rows)
      for (auto& x : row) x = GaussRat(mpq_class(d(rng)), mpq_class(trial % 3 == 0 ? d(rng) : 0));
    ExactMatrix a = ExactMatrix::from_rows(rows);
    auto k = kernel_basis(a);
    CHECK(rank(a) + k.size() == c);
    CHECK(rank(a) == rank(a.transpose()));
    for (const auto& v : k) CHECK(is_zero_vector(dense_apply(rows, v)));
    CHECK(rank_of(k, c) == k.size());
    ExactVector x(c);
    for (auto& e : x) e = GaussRat(d(rng));
    auto sol = solve(a, dense_apply(rows, x));
    REQUIRE(sol.has_value());
    CHECK(dense_apply(rows, *sol) == dense_apply(rows, x));
  }
}

TEST_CASE("matrix algebra") {
  ExactMatrix a = m22(1, 2, 3, 4), b = m22(0, 1, -1, 0);
  CHECK(a * b == m22(-2, 1, -4, 3));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(a + b - b == a);
  CHECK(GaussRat(2) * a == a + a);
  CHECK(a * ExactMatrix::identity(2) == a);
  CHECK(ExactMatrix::from_columns(std::vector<ExactVector>{{1, 3}, {2, 4}}, 2) == a);
}

TEST_CASE("row reducer") {
  RowReducer red(3);
  CHECK(red.add(ExactVector{1, 1, 0}));
  CHECK(red.add(ExactVector{0, 1, 1}));
  CHECK_FALSE(red.add(ExactVector{1, 2, 1}));
  CHECK(red.in_span(ExactVector{2, 3, 1}));
  CHECK_FALSE(red.in_span(ExactVector{0, 0, 1}));
  CHECK(red.rank() == 2);
}
