#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilquat/linalg.hpp"

namespace nilquat {

struct VecIndex {
  int i = 1;      // 1 or 2
  int alpha = 1;  // 1..m+1
  auto operator<=>(const VecIndex&) const = default;
};

struct FormIndex {
  int j = 1;     // 1 or 2
  int beta = 1;  // 1..m+1
  // Wedge factors are sorted by (beta, j).
  friend bool operator<(const FormIndex& a, const FormIndex& b) {
    return a.beta != b.beta ? a.beta < b.beta : a.j < b.j;
  }
  friend bool operator==(const FormIndex& a, const FormIndex& b) = default;
};

// lambda_1^k lambda_2^{d-k} [V_i^alpha] Obar_{j1}^{b1} ^ ... ^ Obar_{jq}^{bq}
struct CohoElement {
  int k = 0;
  int d = 0;
  std::optional<VecIndex> vec;
  std::vector<FormIndex> forms;

  std::string str() const;
  friend bool operator<(const CohoElement& a, const CohoElement& b);
  friend bool operator==(const CohoElement& a, const CohoElement& b);
};

// Returns the sign of the sorting permutation, or 0 for a repeated factor.
int sort_wedge(std::vector<FormIndex>& forms);

enum class SpaceKind {
  Z_O,     // H^k(Z, p*O(l)), forms with beta <= m
  Z_D,     // H^k(Z, D_Z), vectors V_i^a, a <= m
  W_O,     // H^k(W, p*O(l)), forms with beta <= m+1
  W_V,     // H^k(W, V), vectors V_i^{m+1}
  W_PsiD,  // H^k(W, Psi* D_Z), vectors V_i^a, a <= m
};

struct SpaceSpec {
  SpaceKind kind;
  int k = 0;
  int ell = 0;  // only for the O(l) spaces
};

class GradedSpace {
 public:
  GradedSpace(std::string name, std::vector<CohoElement> basis);
  const std::string& name() const { return name_; }
  const std::vector<CohoElement>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<std::size_t> index_of(const CohoElement& e) const;
  std::size_t at(const CohoElement& e) const;  // throws if absent
  std::vector<std::string> labels() const;

 private:
  std::string name_;
  std::vector<CohoElement> basis_;
  std::map<CohoElement, std::size_t> index_;
};

std::string space_name(const SpaceSpec& s);
// Throws std::invalid_argument for l < -1 or k < 0.
GradedSpace basis_space(const SpaceSpec& s, int m);
std::size_t space_dimension_formula(const SpaceSpec& s, int m);

// Domain: W_k^a (k = 0..3, a = 1..m); codomain: H^1(W, V).
ExactMatrix delta0_map(int m);
// Columns of delta0_map as combinations of H^0(W, Psi*D_Z) monomials.
std::vector<std::pair<std::string, std::vector<std::pair<GaussRat, CohoElement>>>> w_fields_in_monomials(int m);
// H^1(W, Psi*D_Z) -> H^2(W, V).
ExactMatrix delta1_map(int m);

// The space E spanned by H^1(W, V) and ker delta_1, organized by families.
enum class EFamily { HV, ker1_sym12, ker1_sym21, ker1_diag };
std::string family_name(EFamily f);
std::optional<EFamily> family_from_name(const std::string& s);

struct EBasisElement {
  EFamily family = EFamily::HV;
  int k = 0;                        // power of lambda_1
  int i = 1, alpha = 1, j = 1, beta = 1;  // HV only
  int a = 1, b = 1;                 // kernel families only

  std::string label() const;
  // Validates ranges for m; for the symmetric families a <= b is required.
  void validate(int m) const;
  // Same pattern with k = 0.
  EBasisElement pattern() const;
  // Expansion in H^1 monomials lambda_1^k lambda_2^{2-k} V_i^alpha Obar_j^beta.
  std::vector<std::pair<GaussRat, CohoElement>> expand() const;
  friend bool operator<(const EBasisElement& x, const EBasisElement& y);
  friend bool operator==(const EBasisElement& x, const EBasisElement& y);
};

std::vector<EBasisElement> e_space_patterns(int m);  // k = 0 representatives
std::vector<EBasisElement> e_space_basis(int m);     // all k = 0, 1, 2
std::size_t e_space_dimension_formula(int m);

// Tensor slot (i, alpha, j, beta) for V_i^alpha (x) Obar_j^beta; alpha, beta in 1..m+1.
std::size_t tensor_slot(int m, int i, int alpha, int j, int beta);
std::size_t tensor_slot_count(int m);
struct TensorIndex {
  int i, alpha, j, beta;
};
TensorIndex tensor_index(int m, std::size_t slot);
ExactVector pattern_vector(int m, const EBasisElement& e);

struct H1Decomposition {
  std::size_t h1_v = 0;          // dim H^1(W, V)
  std::size_t rank_delta0 = 0;
  std::size_t coker_double_prime = 0;
  std::size_t coker_prime = 0;
  std::size_t kernel_delta1 = 0;
  std::size_t total = 0;
  bool image_avoids_top_forms = false;  // no Obar^{m+1} component in im delta_0
  bool complement_spans = false;        // displayed coker' representatives complete im delta_0
  bool kernel_matches_families = false;
  std::vector<CohoElement> coker_double_prime_basis;
};
H1Decomposition assemble_H1_W_D(int m);

struct QuaternionicReport {
  std::size_t rank_delta0_q = 0;        // rank of H^0(W, p*O(2)) -> H^1(W, D_W)
  bool delta0_q_injective = false;
  std::size_t entries_per_image = 0;    // nonzero entries of each displayed image
  bool delta1_q_injective = false;
  std::size_t h1_theta = 0;
};
QuaternionicReport quaternionic_sequence(int m);

struct TorusReport {
  std::size_t h0_dz = 0;
  std::size_t h1_dz = 0;
  std::size_t quaternionic = 0;
};
TorusReport torus_dims(int m);

}  // namespace nilquat
