#pragma once

#include <array>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilquat/hypercomplex.hpp"

namespace nilquat {

// Global coordinates on H_{4m+1} x R^3, variable order
// (x_1..x_{2m}, y_1..y_{2m}, z, e_1, e_2, e_3).
namespace cv {
inline int count(int m) { return 4 * m + 4; }
inline int x(int /*m*/, int j) { return j - 1; }
inline int y(int m, int j) { return 2 * m + j - 1; }
inline int z(int m) { return 4 * m; }
inline int e(int m, int i) { return 4 * m + i; }
std::string name(int m, int v);
}  // namespace cv

class CoordPoly {
 public:
  using Monomial = std::vector<int>;

  CoordPoly() = default;
  explicit CoordPoly(int nvars) : nvars_(nvars) {}
  static CoordPoly constant(int nvars, const GaussRat& c);
  static CoordPoly var(int nvars, int v);

  int nvars() const { return nvars_; }
  const std::map<Monomial, GaussRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& mono, const GaussRat& c);

  CoordPoly derivative(int v) const;
  std::complex<double> eval(const std::vector<double>& point) const;
  std::string str(int m) const;

  CoordPoly& operator+=(const CoordPoly& o);
  CoordPoly& operator-=(const CoordPoly& o);
  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator-(CoordPoly a, const CoordPoly& b) { return a -= b; }
  friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b);
  friend CoordPoly operator*(const GaussRat& s, const CoordPoly& a);
  CoordPoly operator-() const { return GaussRat(-1) * *this; }
  friend bool operator==(const CoordPoly& a, const CoordPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const CoordPoly& a, const CoordPoly& b) { return !(a == b); }

 private:
  int nvars_ = 0;
  std::map<Monomial, GaussRat> terms_;
};

// Coefficient per coordinate direction d/d(var v).
struct PolyField {
  int m = 0;
  std::vector<CoordPoly> comp;
  static PolyField zero(int m);
  CoordPoly apply(const CoordPoly& f) const;
  friend bool operator==(const PolyField& a, const PolyField& b) { return a.comp == b.comp; }
};

// Coefficient per strictly increasing tuple of coordinate differentials.
struct PolyForm {
  int m = 0;
  int degree = 0;
  std::map<std::vector<int>, CoordPoly> comp;

  static PolyForm zero(int m, int degree);
  static PolyForm function(const CoordPoly& f, int m);
  static PolyForm differential(int m, int v);
  // Adds c * dv_1 ^ ... ^ dv_k, sorting the indices with sign.
  void add(std::vector<int> vars, const CoordPoly& c);
  bool is_zero() const { return comp.empty(); }
  std::string str() const;
  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.degree == b.degree && a.comp == b.comp; }
  friend bool operator!=(const PolyForm& a, const PolyForm& b) { return !(a == b); }
};

PolyForm operator+(const PolyForm& a, const PolyForm& b);
PolyForm operator*(const CoordPoly& f, const PolyForm& a);
PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm ext_d(const PolyForm& w);
CoordPoly pair(const PolyForm& one_form, const PolyField& v);

// Point layout (x_1..x_{2m}, y_1..y_{2m}, z[, e_1, e_2, e_3]).
template <class T>
std::vector<T> group_mul(int m, const std::vector<T>& p, const std::vector<T>& q) {
  const std::size_t base = static_cast<std::size_t>(4 * m + 1);
  if (p.size() != q.size() || (p.size() != base && p.size() != base + 3))
    throw std::invalid_argument("group_mul: point length must be 4m+1 or 4m+4");
  std::vector<T> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + q[i];
  const std::size_t zi = static_cast<std::size_t>(4 * m);
  const std::size_t n = static_cast<std::size_t>(2 * m);
  for (std::size_t j = 0; j < n; ++j) r[zi] = r[zi] - GaussRat(2) * (p[j] * q[n + j] - p[n + j] * q[j]);
  return r;
}

// Fields in Lie algebra basis order (Z, E1..E3, X1..X2m, Y1..Y2m).
std::vector<PolyField> left_invariant_fields(int m);
PolyField field_bracket(const PolyField& v, const PolyField& w);

// theta = dz - 2 sum (y_j dx_j - x_j dy_j)
PolyForm theta_form(int m);
// Invariant coframe dual to left_invariant_fields, in the same order.
std::vector<PolyForm> invariant_coframe(int m);
// Acts on a 1-form through its coefficients in the invariant coframe.
PolyForm triple_on_oneforms(const Endo& j, int m, const PolyForm& w);

std::array<CoordPoly, 3> quaternionic_functions(int m);
struct QuaternionicCoordinateReport {
  std::array<bool, 3> ok{};
  bool all() const { return ok[0] && ok[1] && ok[2]; }
};
QuaternionicCoordinateReport verify_quaternionic_coordinates(int m);

std::vector<std::complex<double>> numeric_eval(const PolyField& v, const std::vector<double>& point);
std::map<std::vector<int>, std::complex<double>> numeric_eval(const PolyForm& w, const std::vector<double>& point);

// Left translation by a symbolic point p maps the coordinate frame at the
// identity onto the invariant fields; checked exactly for each direction.
bool verify_left_translation(int m);

GaussRat random_rational(std::mt19937_64& rng, long max_num, long max_den);

}  // namespace nilquat
