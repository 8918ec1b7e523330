#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilquat/cohomology.hpp"
#include "nilquat/lie.hpp"
#include "nilquat/sphere.hpp"

namespace nilquat {

enum class FrameKind { holo, antiholo, d_mu, d_mubar };

// holo(i, alpha) is the (1,0) field d_i^alpha, antiholo its conjugate.
struct FrameSymbol {
  FrameKind kind = FrameKind::holo;
  int i = 0;
  int alpha = 0;

  static FrameSymbol holo(int i, int alpha) { return {FrameKind::holo, i, alpha}; }
  static FrameSymbol antiholo(int i, int alpha) { return {FrameKind::antiholo, i, alpha}; }
  static FrameSymbol d_mu() { return {FrameKind::d_mu, 0, 0}; }
  static FrameSymbol d_mubar() { return {FrameKind::d_mubar, 0, 0}; }
  bool is_10() const { return kind == FrameKind::holo || kind == FrameKind::d_mu; }
  FrameSymbol conj() const;
  void validate(int m) const;
  std::string str() const;
  auto operator<=>(const FrameSymbol&) const = default;
};

enum class FormKind { dmu_bar, sigma_bar };

// Ordered with dmu_bar first, then sigma_bar by (beta, j).
struct FormSymbol {
  FormKind kind = FormKind::sigma_bar;
  int j = 0;
  int beta = 0;

  static FormSymbol sigma_bar(int j, int beta) { return {FormKind::sigma_bar, j, beta}; }
  static FormSymbol dmu_bar() { return {FormKind::dmu_bar, 0, 0}; }
  void validate(int m) const;
  std::string str() const;
  friend bool operator<(const FormSymbol& a, const FormSymbol& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.beta != b.beta ? a.beta < b.beta : a.j < b.j;
  }
  friend bool operator==(const FormSymbol& a, const FormSymbol& b) = default;
};

using FrameVector = std::map<FrameSymbol, SphereScalar>;
using OneForm = std::map<FormSymbol, SphereScalar>;

void accumulate(FrameVector& v, const FrameSymbol& s, const SphereScalar& c);
void accumulate(OneForm& w, const FormSymbol& s, const SphereScalar& c);
FrameVector scale(const SphereScalar& c, const FrameVector& v);
FrameVector operator+(const FrameVector& a, const FrameVector& b);
FrameVector operator-(const FrameVector& a, const FrameVector& b);
FrameVector project_10(const FrameVector& v);
std::string to_string(const FrameVector& v);
std::string to_string(const OneForm& w);

// Sum of coefficient * V (x) f_1 ^ ... ^ f_q; form tuples kept strictly sorted.
class VectorValuedForm {
 public:
  using Key = std::pair<FrameSymbol, std::vector<FormSymbol>>;

  explicit VectorValuedForm(int degree = 1) : degree_(degree) {}
  int degree() const { return degree_; }
  const std::map<Key, SphereScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Sorts the forms with sign; repeated factors give zero.
  void add(const SphereScalar& c, const FrameSymbol& v, std::vector<FormSymbol> forms);
  std::string str() const;

  VectorValuedForm& operator+=(const VectorValuedForm& o);
  VectorValuedForm& operator-=(const VectorValuedForm& o);
  friend VectorValuedForm operator+(VectorValuedForm a, const VectorValuedForm& b) { return a += b; }
  friend VectorValuedForm operator-(VectorValuedForm a, const VectorValuedForm& b) { return a -= b; }
  friend VectorValuedForm operator*(const SphereScalar& c, const VectorValuedForm& a);
  friend bool operator==(const VectorValuedForm& a, const VectorValuedForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const VectorValuedForm& a, const VectorValuedForm& b) { return !(a == b); }

 private:
  int degree_;
  std::map<Key, SphereScalar> terms_;
};

// A field on the chart written against the Lie algebra basis (with sphere
// coefficients) plus d/dmu and d/dmubar components.
struct ChartField {
  std::vector<SphereScalar> alg;
  SphereScalar dmu;
  SphereScalar dmubar;
};

// A (0,1)-form on the chart against the invariant coframe plus a dmubar part.
struct ChartForm {
  std::vector<SphereScalar> alg;
  SphereScalar dmubar;
};

class TwistorEngine {
 public:
  // Throws std::logic_error if the frame inversion self-checks fail.
  explicit TwistorEngine(int m);

  int m() const { return m_; }
  const LieAlgebra& algebra() const { return alg_; }
  std::vector<FrameSymbol> frame_symbols() const;
  std::vector<FormSymbol> form_symbols() const;

  const ChartField& realize(const FrameSymbol& s) const;
  ChartField realize(const FrameVector& v) const;
  FrameVector to_frame(const ChartField& f) const;
  ChartField chart_bracket(const ChartField& u, const ChartField& v) const;
  ChartForm realize_form(const FormSymbol& f) const;
  ChartForm realize_form(const OneForm& w) const;

  FrameVector frame_bracket(const FrameSymbol& a, const FrameSymbol& b) const;
  FrameVector bracket(const FrameVector& a, const FrameVector& b) const;

  // Rewrite table for L_{d_i^alpha} of a form symbol.
  OneForm lie_derivative_form(const FrameSymbol& v, const FormSymbol& f) const;
  // The same value obtained from frame brackets: (L_V s)(W) = -s([V, W]).
  OneForm lie_derivative_form_derived(const FrameSymbol& v, const FormSymbol& f) const;

  VectorValuedForm nijenhuis_bracket(const VectorValuedForm& a, const VectorValuedForm& b) const;
  // Dolbeault operator of the holomorphic tangent bundle, dbar_X Y = [X, Y]^{1,0},
  // on forms of degree 0 or 1 built from sigma_bar and dmu_bar (both dbar-closed).
  VectorValuedForm dbar_apply(const VectorValuedForm& a) const;

  // W~_k^alpha, k = 0..3, in the holomorphic frame.
  FrameVector w_tilde(int k, int alpha) const;
  // W~_k^a = (I_k X_{2a-1} - i I_a I_k X_{2a-1}) / 2 with I_a the structure at
  // the stereographic direction of mu; checked for every a and k.
  bool verify_w_tilde() const;

 private:
  int m_;
  LieAlgebra alg_;
  std::map<FrameSymbol, ChartField> real_;
  mutable std::map<std::pair<FrameSymbol, FrameSymbol>, FrameVector> bracket_cache_;
};

class PrimitiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// f with d_dmubar(f) = g, smooth on the sphere, f(0) = 0. The ansatz
// Q / (1+t)^N with deg Q <= N is tried for N = n+1 .. n+3.
SphereScalar dbar_primitive(const SphereScalar& g);

// lambda_1^k lambda_2^{2-k} V_i^alpha Obar_j^beta -> mu^k / (1+t) d_i^alpha (x) sigma_bar_j^beta
VectorValuedForm chart_restrict(const CohoElement& c, int m);
VectorValuedForm chart_restrict(const EBasisElement& e, int m);

// Element of Gamma^0 (x) E: sphere-function coefficients on E-basis elements.
using GammaE = std::map<EBasisElement, SphereScalar>;
VectorValuedForm realize(const GammaE& g, int m);
std::string to_string(const GammaE& g);

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phi in Gamma^0 (x) E with dbar Phi = psi; verified exactly before returning.
GammaE solve_dbar_in_E(const TwistorEngine& eng, const VectorValuedForm& psi);

struct BracketClosureReport {
  std::size_t pairs = 0;
  std::size_t zero_brackets = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_details;
};
// Every ordered pair of E-basis elements, or `samples` seeded random pairs.
BracketClosureReport verify_bracket_closure(const TwistorEngine& eng, std::optional<std::size_t> samples = std::nullopt,
                                            std::uint64_t seed = 0);

// delta_0 recomputed by lifting H^0(W, Psi*D_Z) monomials to the chart and
// applying dbar_apply; same row and column order as delta0_map.
ExactMatrix delta0_via_gauduchon(const TwistorEngine& eng);

// Floating-point evaluation of the rewrite tables against the coordinate
// realization on H_{4m+1} x R^3 x C; returns max absolute error.
struct NumericCrosscheck {
  double frame_bracket = 0;
  double lie_derivative = 0;
  double sigma_holomorphy = 0;
  double duality = 0;
  std::size_t samples = 0;
  double max() const;
};
NumericCrosscheck numeric_crosscheck(const TwistorEngine& eng, std::size_t trials, std::uint64_t seed);

}  // namespace nilquat
