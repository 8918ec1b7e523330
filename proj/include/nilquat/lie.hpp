#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilquat/linalg.hpp"

namespace nilquat {

using AlgVector = ExactVector;
using Endo = ExactMatrix;

// Lie algebra given by structure constants [e_i, e_j] = sum_k c_ij^k e_k.
// Constants are stored per ordered pair so that hand-entered tables which
// break antisymmetry can be represented and rejected by check_jacobi.
class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  // Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const AlgVector& v);
  // Sets only the ordered entry [e_i, e_j].
  void set_raw_bracket(std::size_t i, std::size_t j, const AlgVector& v);

  // Sparse value of [e_i, e_j]; empty when zero.
  const SparseRow& basis_bracket(std::size_t i, std::size_t j) const;
  const std::map<std::pair<std::size_t, std::size_t>, SparseRow>& constants() const { return c_; }

  AlgVector basis_vector(std::size_t i) const { return unit_vector(dim(), i); }
  AlgVector zero() const { return AlgVector(dim()); }

 private:
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, SparseRow> c_;
};

// Basis order (Z, E1, E2, E3, X1..X2m, Y1..Y2m); only [Y_j, X_j] = 4Z.
LieAlgebra make_heisenberg_ext(int m);
// The Heisenberg algebra alone, basis (Z, X1..X2m, Y1..Y2m).
LieAlgebra make_heisenberg(int m);
LieAlgebra make_abelian(std::size_t n);

// Basis indices in make_heisenberg_ext(m); a, j are 1-based.
namespace hx {
constexpr std::size_t Z = 0;
inline std::size_t E(int i) { return static_cast<std::size_t>(i); }
inline std::size_t X(int /*m*/, int j) { return static_cast<std::size_t>(3 + j); }
inline std::size_t Y(int m, int j) { return static_cast<std::size_t>(3 + 2 * m + j); }
inline std::size_t dim(int m) { return static_cast<std::size_t>(4 * m + 4); }
}  // namespace hx

AlgVector bracket(const LieAlgebra& a, const AlgVector& v, const AlgVector& w);

struct JacobiFailure {
  std::array<std::size_t, 3> triple;
  AlgVector value;
};
// Cyclic Jacobi sum over all ordered basis triples, using the stored
// ordered constants; nullopt when every sum vanishes.
std::optional<JacobiFailure> check_jacobi(const LieAlgebra& a);

std::vector<AlgVector> center_subspace(const LieAlgebra& a);
std::vector<AlgVector> derived_ideal(const LieAlgebra& a);

// Unknown D_{rc} (D e_c = sum_r D_rc e_r) sits at index r*n + c.
inline std::size_t derivation_unknown(std::size_t n, std::size_t r, std::size_t c) { return r * n + c; }
// Rows of the linear system whose solutions are the derivations commuting
// with every endomorphism in commute_with.
std::vector<SparseRow> derivation_equations(const LieAlgebra& a, const std::vector<Endo>& commute_with = {});
std::vector<Endo> derivation_basis(const LieAlgebra& a, const std::vector<Endo>& commute_with = {});
std::size_t derivation_dimension(const LieAlgebra& a, const std::vector<Endo>& commute_with = {});
Endo endo_from_unknowns(std::size_t n, const ExactVector& x);
bool is_derivation(const LieAlgebra& a, const Endo& d);

}  // namespace nilquat
