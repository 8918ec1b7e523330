#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilquat/lie.hpp"

namespace nilquat {

struct HyperTriple {
  Endo I1, I2, I3;
  const Endo& operator[](int a) const;  // a in 1..3
};

// I1 acts on each 4-block (Z,E1,E2,E3), (X_{2a-1},X_{2a},Y_{2a-1},Y_{2a}) by
// J1 and I2 by J2, with I3 = I1 I2.
HyperTriple standard_triple(int m);
Endo block_j1();
Endo block_j2();

// a1 I1 + a2 I2 + a3 I3; requires a rational unit vector.
Endo direction_structure(const HyperTriple& t, const std::array<GaussRat, 3>& a);

// Name of the first identity that fails, nullopt if all five hold.
std::optional<std::string> check_quaternion_relations(const HyperTriple& t);

bool is_almost_complex(const Endo& j);
// N(v,w) = [Jv,Jw] - [v,w] - J[Jv,w] - J[v,Jw]; throws std::invalid_argument
// when J^2 != -1.
AlgVector nijenhuis_invariant(const LieAlgebra& a, const Endo& j, const AlgVector& v, const AlgVector& w);
bool is_integrable(const LieAlgebra& a, const Endo& j);
// [Jv, Jw] = [v, w] on all basis pairs.
bool is_abelian_structure(const LieAlgebra& a, const Endo& j);

// gamma(i,j) holds the coefficients of nabla_{e_i} e_j.
struct ConnectionCoeffs {
  std::size_t n = 0;
  std::vector<AlgVector> table;
  const AlgVector& gamma(std::size_t i, std::size_t j) const { return table.at(i * n + j); }
  const GaussRat& gamma(std::size_t i, std::size_t j, std::size_t k) const { return table.at(i * n + j).at(k); }
  AlgVector nabla(const AlgVector& v, const AlgVector& w) const;
};

// 1/2[X,Y] + 1/2 sum_i I_i[I_i X, Y]
AlgVector obata_reduced(const LieAlgebra& a, const HyperTriple& t, const AlgVector& x, const AlgVector& y);
// The general Obata formula, valid for any integrable hypercomplex triple.
AlgVector obata_full(const LieAlgebra& a, const HyperTriple& t, const AlgVector& x, const AlgVector& y);
// Throws std::invalid_argument unless all three structures are integrable
// and abelian.
ConnectionCoeffs obata_connection(const LieAlgebra& a, const HyperTriple& t);

bool is_torsion_free(const LieAlgebra& a, const ConnectionCoeffs& g);
// nabla_X (J Y) = J nabla_X Y for all basis X, Y.
bool is_parallel(const ConnectionCoeffs& g, const Endo& j);

}  // namespace nilquat
