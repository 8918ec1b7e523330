#include "nilquat/hypercomplex.hpp"

#include <stdexcept>

namespace nilquat {

namespace {

Endo block_from(const int (&b)[4][4]) {
  Endo e(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e.set(r, c, b[r][c]);
  return e;
}

Endo block_diagonal(int m, const Endo& block) {
  const std::size_t n = hx::dim(m);
  Endo e(n, n);
  for (int a = 0; a <= m; ++a) {
    std::array<std::size_t, 4> idx;
    if (a == 0)
      idx = {hx::Z, hx::E(1), hx::E(2), hx::E(3)};
    else
      idx = {hx::X(m, 2 * a - 1), hx::X(m, 2 * a), hx::Y(m, 2 * a - 1), hx::Y(m, 2 * a)};
    for (std::size_t r = 0; r < 4; ++r)
      for (const auto& [c, x] : block.row(r)) e.set(idx[r], idx[c], x);
  }
  return e;
}

AlgVector add(AlgVector a, const AlgVector& b, const GaussRat& s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

}  // namespace

const Endo& HyperTriple::operator[](int a) const {
  switch (a) {
    case 1: return I1;
    case 2: return I2;
    case 3: return I3;
    default: throw std::out_of_range("structure index must be 1, 2 or 3");
  }
}

Endo block_j1() {
  static const int b[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  return block_from(b);
}

Endo block_j2() {
  static const int b[4][4] = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  return block_from(b);
}

HyperTriple standard_triple(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  Endo i1 = block_diagonal(m, block_j1());
  Endo i2 = block_diagonal(m, block_j2());
  Endo i3 = i1 * i2;
  return {i1, i2, i3};
}

Endo direction_structure(const HyperTriple& t, const std::array<GaussRat, 3>& a) {
  GaussRat norm = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  for (const auto& x : a)
    if (!x.is_real()) throw std::invalid_argument("direction must be real");
  if (!norm.is_one()) throw std::invalid_argument("direction must be a unit vector");
  return a[0] * t.I1 + a[1] * t.I2 + a[2] * t.I3;
}

std::optional<std::string> check_quaternion_relations(const HyperTriple& t) {
  const std::size_t n = t.I1.rows();
  Endo minus_one = GaussRat(-1) * Endo::identity(n);
  if (t.I1 * t.I1 != minus_one) return "I1^2 = -1";
  if (t.I2 * t.I2 != minus_one) return "I2^2 = -1";
  if (t.I3 * t.I3 != minus_one) return "I3^2 = -1";
  if (t.I1 * t.I2 != t.I3) return "I1 I2 = I3";
  if (GaussRat(-1) * (t.I2 * t.I1) != t.I3) return "I3 = -I2 I1";
  return std::nullopt;
}

bool is_almost_complex(const Endo& j) {
  if (j.rows() != j.cols()) return false;
  return j * j == GaussRat(-1) * Endo::identity(j.rows());
}

AlgVector nijenhuis_invariant(const LieAlgebra& a, const Endo& j, const AlgVector& v, const AlgVector& w) {
  if (j.rows() != a.dim() || !is_almost_complex(j)) throw std::invalid_argument("J is not an almost complex structure");
  AlgVector jv = j.apply(v), jw = j.apply(w);
  AlgVector out = bracket(a, jv, jw);
  out = add(out, bracket(a, v, w), -1);
  out = add(out, j.apply(bracket(a, jv, w)), -1);
  out = add(out, j.apply(bracket(a, v, jw)), -1);
  return out;
}

bool is_integrable(const LieAlgebra& a, const Endo& j) {
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = p + 1; q < a.dim(); ++q)
      if (!is_zero_vector(nijenhuis_invariant(a, j, a.basis_vector(p), a.basis_vector(q)))) return false;
  return true;
}

bool is_abelian_structure(const LieAlgebra& a, const Endo& j) {
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = p + 1; q < a.dim(); ++q) {
      AlgVector v = a.basis_vector(p), w = a.basis_vector(q);
      if (bracket(a, j.apply(v), j.apply(w)) != bracket(a, v, w)) return false;
    }
  return true;
}

AlgVector ConnectionCoeffs::nabla(const AlgVector& v, const AlgVector& w) const {
  AlgVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j].is_zero()) continue;
      out = add(out, gamma(i, j), v[i] * w[j]);
    }
  }
  return out;
}

AlgVector obata_reduced(const LieAlgebra& a, const HyperTriple& t, const AlgVector& x, const AlgVector& y) {
  AlgVector out = bracket(a, x, y);
  for (int i = 1; i <= 3; ++i) out = add(out, t[i].apply(bracket(a, t[i].apply(x), y)));
  for (auto& c : out) c /= 2;
  return out;
}

AlgVector obata_full(const LieAlgebra& a, const HyperTriple& t, const AlgVector& x, const AlgVector& y) {
  AlgVector out = bracket(a, x, y);
  for (auto& c : out) c /= 2;
  static const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& p : cyc) {
    const Endo &ii = t[p[0]], &ij = t[p[1]], &ik = t[p[2]];
    AlgVector s = add(bracket(a, ij.apply(x), ik.apply(y)), bracket(a, ij.apply(y), ik.apply(x)));
    out = add(out, ii.apply(s), GaussRat::frac(1, 12));
  }
  for (int i = 1; i <= 3; ++i) {
    AlgVector s = add(bracket(a, t[i].apply(x), y), bracket(a, t[i].apply(y), x));
    out = add(out, t[i].apply(s), GaussRat::frac(1, 6));
  }
  return out;
}

ConnectionCoeffs obata_connection(const LieAlgebra& a, const HyperTriple& t) {
  for (int i = 1; i <= 3; ++i) {
    if (!is_integrable(a, t[i])) throw std::invalid_argument("structure I" + std::to_string(i) + " is not integrable");
    if (!is_abelian_structure(a, t[i])) throw std::invalid_argument("structure I" + std::to_string(i) + " is not abelian");
  }
  ConnectionCoeffs g;
  g.n = a.dim();
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) g.table.push_back(obata_reduced(a, t, a.basis_vector(i), a.basis_vector(j)));
  return g;
}

bool is_torsion_free(const LieAlgebra& a, const ConnectionCoeffs& g) {
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) {
      AlgVector tor = add(g.gamma(i, j), g.gamma(j, i), -1);
      tor = add(tor, bracket(a, a.basis_vector(i), a.basis_vector(j)), -1);
      if (!is_zero_vector(tor)) return false;
    }
  return true;
}

bool is_parallel(const ConnectionCoeffs& g, const Endo& j) {
  for (std::size_t p = 0; p < g.n; ++p)
    for (std::size_t q = 0; q < g.n; ++q) {
      AlgVector x = unit_vector(g.n, p), y = unit_vector(g.n, q);
      if (g.nabla(x, j.apply(y)) != j.apply(g.gamma(p, q))) return false;
    }
  return true;
}

}  // namespace nilquat
