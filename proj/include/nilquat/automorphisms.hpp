#pragma once

#include <optional>
#include <random>
#include <string>

#include "json.hpp"
#include "nilquat/hypercomplex.hpp"

namespace nilquat {

// (4m+4) x (4m+4) matrix in the basis (Z, E1..E3, X1..X2m, Y1..Y2m); column c
// holds the image of basis vector c.
using AutMatrix = ExactMatrix;

// Skew form on the (X, Y) block with [V, V'] = -2 omega(V, V') Z; local
// indices X_1..X_2m, Y_1..Y_2m.
ExactMatrix symplectic_form(int m);

bool is_lie_automorphism(const AutMatrix& M, const LieAlgebra& a);

struct Prop2Check {
  bool ok = false;
  std::optional<GaussRat> s0;  // entry of Z in M(Z)
  std::string reason;          // first violated condition
};
// Center preserved, M(Z) = s0 Z with s0 != 0, omega(Cv, Cv') = s0 omega(v, v').
Prop2Check is_prop2_form(const AutMatrix& M, int m);

bool is_hypercomplex_automorphism(const AutMatrix& M, const HyperTriple& t);

// Quaternion-linear 4x4 pattern (a b c d / -b a -d c / -c d a -b / -d -c b a);
// with rows_from = 1 only rows 1..3 are constrained.
bool has_quaternion_pattern(const AutMatrix& M, std::size_t row0, std::size_t col0, int rows_from = 0);

struct Prop3Check {
  bool ok = false;
  std::string reason;
};
// Center block s I, middle blocks quaternion-linear and conformal symplectic
// with constant s, strip blocks with free first row and patterned lower rows.
Prop3Check is_prop3_form(const AutMatrix& M, int m);

// Product of elementary generators: center block with M(Z) = s0 Z, free strip,
// and symplectic shears, block scalings and transvections scaled by s0.
AutMatrix random_prop2_matrix(int m, std::mt19937_64& rng);
// Center block s I, quaternion-linear conformal-symplectic middle, patterned
// strip; with free_first_row = false the strip row 0 follows the pattern too.
AutMatrix random_prop3_matrix(int m, std::mt19937_64& rng, bool free_first_row = true);

struct GroupDimensions {
  std::size_t dim_g = 0;          // derivations of the algebra
  std::size_t dim_h = 0;          // infinitesimal Prop. 3 system
  std::size_t effective = 0;      // dim_g - dim_h
  std::size_t dim_g_formula = 0;  // 13 + 18m + 8m^2
  std::size_t dim_h_formula = 0;  // 1 + 9m + 2m^2
  std::size_t effective_formula = 0;  // 12 + 9m + 6m^2
  std::size_t h1_wd = 0;          // 6m^2 + 11m + 12
  std::size_t commuting_derivations = 0;  // derivations commuting with I1, I2
};
GroupDimensions group_dimensions(int m);

// Dense JSON: list of rows, entries "p/q" strings, integers, or {"re","im"}.
// Throws std::invalid_argument on malformed or wrongly sized input.
AutMatrix parse_aut_matrix(const nlohmann::json& j, int m);
nlohmann::json to_json(const AutMatrix& M);

}  // namespace nilquat
