#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "nilquat/gauss_rat.hpp"

namespace nilquat {

// P(mu, mubar) / (1 + mu mubar)^n with mu, mubar treated as independent
// variables. Always stored reduced: n is minimal.
class SphereScalar {
 public:
  using Exponent = std::pair<int, int>;  // (power of mu, power of mubar)
  using Numerator = std::map<Exponent, GaussRat>;

  SphereScalar() = default;
  SphereScalar(const GaussRat& c);  // NOLINT(google-explicit-constructor)
  SphereScalar(Numerator num, int denominator_power);

  static SphereScalar mu() { return monomial(1, 0); }
  static SphereScalar mubar() { return monomial(0, 1); }
  static SphereScalar monomial(int a, int b, const GaussRat& c = 1, int denominator_power = 0);
  // (1 + mu mubar)^{-k}
  static SphereScalar inv_one_plus_t(int k = 1);
  static SphereScalar f1();  // mu / (1 + |mu|^2)
  static SphereScalar f2();  // mubar / (1 + |mu|^2)
  static SphereScalar f3();  // 1 / (1 + |mu|^2)

  const Numerator& numerator() const { return num_; }
  int denominator_power() const { return n_; }
  bool is_zero() const { return num_.empty(); }
  int max_mu_degree() const;
  int max_mubar_degree() const;

  SphereScalar conj() const;
  SphereScalar d_dmu() const;
  SphereScalar d_dmubar() const;
  // Numerator multiplied out to denominator power n >= denominator_power().
  Numerator numerator_at(int n) const;

  GaussRat value_at_origin() const;
  std::complex<double> eval(std::complex<double> mu) const;
  std::string str() const;

  SphereScalar& operator+=(const SphereScalar& o);
  SphereScalar& operator-=(const SphereScalar& o);
  SphereScalar& operator*=(const SphereScalar& o);
  friend SphereScalar operator+(SphereScalar a, const SphereScalar& b) { return a += b; }
  friend SphereScalar operator-(SphereScalar a, const SphereScalar& b) { return a -= b; }
  friend SphereScalar operator*(SphereScalar a, const SphereScalar& b) { return a *= b; }
  SphereScalar operator-() const;
  friend bool operator==(const SphereScalar& a, const SphereScalar& b) { return a.n_ == b.n_ && a.num_ == b.num_; }
  friend bool operator!=(const SphereScalar& a, const SphereScalar& b) { return !(a == b); }

 private:
  void normalize();

  Numerator num_;
  int n_ = 0;
};

// How the scalar is interpreted when testing regularity at mu = infinity.
enum class SmoothKind {
  function,        // a function on the sphere
  dmubar_coeff,    // coefficient of dmubar
  o2_section,      // coefficient of a section of O(2) in the frame V
  o2_dmubar_coeff  // O(2)-valued coefficient of dmubar
};
bool is_smooth_on_sphere(const SphereScalar& s, SmoothKind kind);

}  // namespace nilquat
