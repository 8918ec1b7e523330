#include "nilquat/coords.hpp"

#include <algorithm>
#include <sstream>

namespace nilquat {

std::string cv::name(int m, int v) {
  if (v < 2 * m) return "x" + std::to_string(v + 1);
  if (v < 4 * m) return "y" + std::to_string(v - 2 * m + 1);
  if (v == 4 * m) return "z";
  return "e" + std::to_string(v - 4 * m);
}

CoordPoly CoordPoly::constant(int nvars, const GaussRat& c) {
  CoordPoly p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

CoordPoly CoordPoly::var(int nvars, int v) {
  CoordPoly p(nvars);
  Monomial mono(static_cast<std::size_t>(nvars), 0);
  mono.at(static_cast<std::size_t>(v)) = 1;
  p.add_term(mono, 1);
  return p;
}

void CoordPoly::add_term(const Monomial& mono, const GaussRat& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(mono.size()) != nvars_) throw std::invalid_argument("monomial length mismatch");
  auto [it, inserted] = terms_.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoordPoly CoordPoly::derivative(int v) const {
  CoordPoly d(nvars_);
  for (const auto& [mono, c] : terms_) {
    int e = mono.at(static_cast<std::size_t>(v));
    if (e == 0) continue;
    Monomial m2 = mono;
    m2[static_cast<std::size_t>(v)] = e - 1;
    d.add_term(m2, c * GaussRat(e));
  }
  return d;
}

std::complex<double> CoordPoly::eval(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
  std::complex<double> s = 0;
  for (const auto& [mono, c] : terms_) {
    double t = 1;
    for (std::size_t v = 0; v < mono.size(); ++v)
      for (int k = 0; k < mono[v]; ++k) t *= point[v];
    s += c.to_complex() * t;
  }
  return s;
}

std::string CoordPoly::str(int m) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t v = 0; v < mono.size(); ++v)
      if (mono[v] > 0) {
        os << "*" << cv::name(m, static_cast<int>(v));
        if (mono[v] > 1) os << "^" << mono[v];
      }
  }
  return os.str();
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

CoordPoly& CoordPoly::operator-=(const CoordPoly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
  CoordPoly p(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      CoordPoly::Monomial mono(ma.size());
      for (std::size_t v = 0; v < ma.size(); ++v) mono[v] = ma[v] + mb[v];
      p.add_term(mono, ca * cb);
    }
  return p;
}

CoordPoly operator*(const GaussRat& s, const CoordPoly& a) {
  CoordPoly p(a.nvars_);
  if (s.is_zero()) return p;
  for (const auto& [mono, c] : a.terms_) p.terms_.emplace(mono, s * c);
  return p;
}

PolyField PolyField::zero(int m) {
  PolyField f;
  f.m = m;
  f.comp.assign(static_cast<std::size_t>(cv::count(m)), CoordPoly(cv::count(m)));
  return f;
}

CoordPoly PolyField::apply(const CoordPoly& f) const {
  CoordPoly out(cv::count(m));
  for (std::size_t v = 0; v < comp.size(); ++v)
    if (!comp[v].is_zero()) out += comp[v] * f.derivative(static_cast<int>(v));
  return out;
}

PolyForm PolyForm::zero(int m, int degree) {
  PolyForm w;
  w.m = m;
  w.degree = degree;
  return w;
}

PolyForm PolyForm::function(const CoordPoly& f, int m) {
  PolyForm w = zero(m, 0);
  if (!f.is_zero()) w.comp[{}] = f;
  return w;
}

PolyForm PolyForm::differential(int m, int v) {
  PolyForm w = zero(m, 1);
  w.comp[{v}] = CoordPoly::constant(cv::count(m), 1);
  return w;
}

void PolyForm::add(std::vector<int> vars, const CoordPoly& c) {
  if (static_cast<int>(vars.size()) != degree) throw std::invalid_argument("form degree mismatch");
  if (c.is_zero()) return;
  int sign = 1;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = 0; j + 1 < vars.size() - i; ++j)
      if (vars[j] > vars[j + 1]) {
        std::swap(vars[j], vars[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < vars.size(); ++i)
    if (vars[i] == vars[i + 1]) return;
  auto it = comp.find(vars);
  CoordPoly term = sign > 0 ? c : -c;
  if (it == comp.end()) {
    comp.emplace(vars, term);
  } else {
    it->second += term;
    if (it->second.is_zero()) comp.erase(it);
  }
}

std::string PolyForm::str() const {
  if (comp.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [vars, c] : comp) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.str(m) << "]";
    for (int v : vars) os << " d" << cv::name(m, v);
  }
  return os.str();
}

PolyForm operator+(const PolyForm& a, const PolyForm& b) {
  if (a.degree != b.degree) throw std::invalid_argument("adding forms of different degree");
  PolyForm s = a;
  for (const auto& [vars, c] : b.comp) s.add(vars, c);
  return s;
}

PolyForm operator*(const CoordPoly& f, const PolyForm& a) {
  PolyForm s = PolyForm::zero(a.m, a.degree);
  for (const auto& [vars, c] : a.comp) s.add(vars, f * c);
  return s;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  PolyForm w = PolyForm::zero(a.m, a.degree + b.degree);
  for (const auto& [va, ca] : a.comp)
    for (const auto& [vb, cb] : b.comp) {
      std::vector<int> vars = va;
      vars.insert(vars.end(), vb.begin(), vb.end());
      w.add(vars, ca * cb);
    }
  return w;
}

PolyForm ext_d(const PolyForm& w) {
  PolyForm d = PolyForm::zero(w.m, w.degree + 1);
  for (const auto& [vars, c] : w.comp)
    for (int v = 0; v < cv::count(w.m); ++v) {
      CoordPoly dc = c.derivative(v);
      if (dc.is_zero()) continue;
      std::vector<int> nv = {v};
      nv.insert(nv.end(), vars.begin(), vars.end());
      d.add(nv, dc);
    }
  return d;
}

CoordPoly pair(const PolyForm& one_form, const PolyField& v) {
  if (one_form.degree != 1) throw std::invalid_argument("pairing needs a 1-form");
  CoordPoly s(cv::count(v.m));
  for (const auto& [vars, c] : one_form.comp) s += c * v.comp.at(static_cast<std::size_t>(vars[0]));
  return s;
}

std::vector<PolyField> left_invariant_fields(int m) {
  const int n = cv::count(m);
  std::vector<PolyField> out(hx::dim(m), PolyField::zero(m));
  auto one = CoordPoly::constant(n, 1);
  out[hx::Z].comp[static_cast<std::size_t>(cv::z(m))] = one;
  for (int i = 1; i <= 3; ++i) out[hx::E(i)].comp[static_cast<std::size_t>(cv::e(m, i))] = one;
  for (int j = 1; j <= 2 * m; ++j) {
    PolyField& xf = out[hx::X(m, j)];
    xf.comp[static_cast<std::size_t>(cv::x(m, j))] = one;
    xf.comp[static_cast<std::size_t>(cv::z(m))] = GaussRat(2) * CoordPoly::var(n, cv::y(m, j));
    PolyField& yf = out[hx::Y(m, j)];
    yf.comp[static_cast<std::size_t>(cv::y(m, j))] = one;
    yf.comp[static_cast<std::size_t>(cv::z(m))] = GaussRat(-2) * CoordPoly::var(n, cv::x(m, j));
  }
  return out;
}

PolyField field_bracket(const PolyField& v, const PolyField& w) {
  if (v.m != w.m) throw std::invalid_argument("fields of different m");
  PolyField r = PolyField::zero(v.m);
  for (std::size_t c = 0; c < r.comp.size(); ++c) r.comp[c] = v.apply(w.comp[c]) - w.apply(v.comp[c]);
  return r;
}

PolyForm theta_form(int m) {
  const int n = cv::count(m);
  PolyForm t = PolyForm::differential(m, cv::z(m));
  for (int j = 1; j <= 2 * m; ++j) {
    t.add({cv::x(m, j)}, GaussRat(-2) * CoordPoly::var(n, cv::y(m, j)));
    t.add({cv::y(m, j)}, GaussRat(2) * CoordPoly::var(n, cv::x(m, j)));
  }
  return t;
}

std::vector<PolyForm> invariant_coframe(int m) {
  std::vector<PolyForm> out(hx::dim(m));
  out[hx::Z] = theta_form(m);
  for (int i = 1; i <= 3; ++i) out[hx::E(i)] = PolyForm::differential(m, cv::e(m, i));
  for (int j = 1; j <= 2 * m; ++j) {
    out[hx::X(m, j)] = PolyForm::differential(m, cv::x(m, j));
    out[hx::Y(m, j)] = PolyForm::differential(m, cv::y(m, j));
  }
  return out;
}

PolyForm triple_on_oneforms(const Endo& j, int m, const PolyForm& w) {
  if (w.degree != 1) throw std::invalid_argument("triple_on_oneforms needs a 1-form");
  const int n = cv::count(m);
  if (j.rows() != hx::dim(m)) throw std::invalid_argument("endomorphism size does not match m");
  auto coef = [&](int v) {
    auto it = w.comp.find({v});
    return it == w.comp.end() ? CoordPoly(n) : it->second;
  };
  // Coefficients in the invariant coframe, using dz = theta + 2 sum (y dx - x dy).
  std::vector<CoordPoly> c(hx::dim(m), CoordPoly(n));
  CoordPoly gz = coef(cv::z(m));
  c[hx::Z] = gz;
  for (int i = 1; i <= 3; ++i) c[hx::E(i)] = coef(cv::e(m, i));
  for (int k = 1; k <= 2 * m; ++k) {
    c[hx::X(m, k)] = coef(cv::x(m, k)) + GaussRat(2) * (CoordPoly::var(n, cv::y(m, k)) * gz);
    c[hx::Y(m, k)] = coef(cv::y(m, k)) - GaussRat(2) * (CoordPoly::var(n, cv::x(m, k)) * gz);
  }
  // The blocks are orthogonal, so the dual action uses the same matrix.
  std::vector<CoordPoly> ic(hx::dim(m), CoordPoly(n));
  for (std::size_t r = 0; r < hx::dim(m); ++r)
    for (const auto& [col, x] : j.row(r)) ic[r] += x * c[col];
  PolyForm out = PolyForm::zero(m, 1);
  const CoordPoly& ct = ic[hx::Z];
  out.add({cv::z(m)}, ct);
  for (int i = 1; i <= 3; ++i) out.add({cv::e(m, i)}, ic[hx::E(i)]);
  for (int k = 1; k <= 2 * m; ++k) {
    out.add({cv::x(m, k)}, ic[hx::X(m, k)] - GaussRat(2) * (CoordPoly::var(n, cv::y(m, k)) * ct));
    out.add({cv::y(m, k)}, ic[hx::Y(m, k)] + GaussRat(2) * (CoordPoly::var(n, cv::x(m, k)) * ct));
  }
  return out;
}

std::array<CoordPoly, 3> quaternionic_functions(int m) {
  const int n = cv::count(m);
  auto X = [&](int j) { return CoordPoly::var(n, cv::x(m, j)); };
  auto Y = [&](int j) { return CoordPoly::var(n, cv::y(m, j)); };
  std::array<CoordPoly, 3> f;
  for (int i = 1; i <= 3; ++i) f[static_cast<std::size_t>(i - 1)] = CoordPoly::var(n, cv::e(m, i));
  for (int a = 1; a <= m; ++a) {
    int p = 2 * a - 1, q = 2 * a;
    f[0] += GaussRat(2) * (Y(p) * X(q) - X(p) * Y(q));
    f[1] += Y(p) * Y(p) + X(p) * X(p) - Y(q) * Y(q) - X(q) * X(q);
    f[2] += GaussRat(2) * (Y(p) * Y(q) + X(p) * X(q));
  }
  return f;
}

QuaternionicCoordinateReport verify_quaternionic_coordinates(int m) {
  HyperTriple t = standard_triple(m);
  auto f = quaternionic_functions(m);
  PolyForm dz = PolyForm::differential(m, cv::z(m));
  QuaternionicCoordinateReport rep;
  for (int k = 1; k <= 3; ++k) {
    PolyForm lhs = triple_on_oneforms(t[k], m, dz);
    PolyForm rhs = ext_d(PolyForm::function(f[static_cast<std::size_t>(k - 1)], m));
    rep.ok[static_cast<std::size_t>(k - 1)] = lhs == rhs;
  }
  return rep;
}

std::vector<std::complex<double>> numeric_eval(const PolyField& v, const std::vector<double>& point) {
  std::vector<std::complex<double>> out;
  for (const auto& c : v.comp) out.push_back(c.eval(point));
  return out;
}

std::map<std::vector<int>, std::complex<double>> numeric_eval(const PolyForm& w, const std::vector<double>& point) {
  std::map<std::vector<int>, std::complex<double>> out;
  for (const auto& [vars, c] : w.comp) out[vars] = c.eval(point);
  return out;
}

bool verify_left_translation(int m) {
  const int n = cv::count(m);
  std::vector<CoordPoly> p(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = CoordPoly::var(n, v);
  auto fields = left_invariant_fields(m);
  for (int v = 0; v < n; ++v) {
    // Group multiplication is affine in the right factor.
    std::vector<CoordPoly> ev(static_cast<std::size_t>(n), CoordPoly(n));
    ev[static_cast<std::size_t>(v)] = CoordPoly::constant(n, 1);
    auto moved = group_mul(m, p, ev);
    std::size_t alg;
    if (v < 2 * m)
      alg = hx::X(m, v + 1);
    else if (v < 4 * m)
      alg = hx::Y(m, v - 2 * m + 1);
    else if (v == 4 * m)
      alg = hx::Z;
    else
      alg = hx::E(v - 4 * m);
    for (int c = 0; c < n; ++c) {
      CoordPoly push = moved[static_cast<std::size_t>(c)] - p[static_cast<std::size_t>(c)];
      if (push != fields[alg].comp[static_cast<std::size_t>(c)]) return false;
    }
  }
  return true;
}

GaussRat random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  long a = num(rng);
  long b = den(rng);
  return GaussRat(mpq_class(mpz_class(a), mpz_class(b)));
}

}  // namespace nilquat
