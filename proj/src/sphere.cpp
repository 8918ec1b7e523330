#include "nilquat/sphere.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nilquat {

namespace {

using Numerator = SphereScalar::Numerator;

void add_into(Numerator& acc, const SphereScalar::Exponent& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

// Numerator times (1 + mu mubar)^k.
Numerator times_one_plus_t(const Numerator& p, int k) {
  if (k == 0) return p;
  std::vector<mpz_class> binom(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
    binom[static_cast<std::size_t>(j)] = b;
  }
  Numerator out;
  for (const auto& [e, c] : p)
    for (int j = 0; j <= k; ++j)
      add_into(out, {e.first + j, e.second + j}, c * GaussRat(mpq_class(binom[static_cast<std::size_t>(j)])));
  return out;
}

// Divides by (1 + mu mubar) if possible.
bool divide_one_plus_t(Numerator& p) {
  // Group by diagonal a - b; each group is a polynomial in t = mu mubar.
  std::map<int, std::map<int, GaussRat>> groups;
  for (const auto& [e, c] : p) {
    int d = e.first - e.second;
    int j = std::min(e.first, e.second);
    groups[d][j] = c;
  }
  Numerator q;
  for (auto& [d, poly] : groups) {
    int deg = poly.rbegin()->first;
    // Synthetic division by (t + 1): q_{j-1} = c_j - q_j, from the top.
    std::vector<GaussRat> c(static_cast<std::size_t>(deg) + 1);
    for (auto& [j, v] : poly) c[static_cast<std::size_t>(j)] = v;
    std::vector<GaussRat> quo(static_cast<std::size_t>(deg));
    GaussRat carry = 0;
    for (int j = deg; j >= 1; --j) {
      carry = c[static_cast<std::size_t>(j)] - carry;
      quo[static_cast<std::size_t>(j - 1)] = carry;
    }
    if (c[0] != carry) return false;
    int da = std::max(d, 0), db = std::max(-d, 0);
    for (int j = 0; j < deg; ++j) add_into(q, {j + da, j + db}, quo[static_cast<std::size_t>(j)]);
  }
  p = std::move(q);
  return true;
}

}  // namespace

SphereScalar::SphereScalar(const GaussRat& c) {
  if (!c.is_zero()) num_[{0, 0}] = c;
}

SphereScalar::SphereScalar(Numerator num, int denominator_power) : num_(std::move(num)), n_(denominator_power) {
  if (n_ < 0) throw std::invalid_argument("negative denominator power");
  for (auto it = num_.begin(); it != num_.end();) {
    if (it->first.first < 0 || it->first.second < 0) throw std::invalid_argument("negative exponent");
    it = it->second.is_zero() ? num_.erase(it) : std::next(it);
  }
  normalize();
}

SphereScalar SphereScalar::monomial(int a, int b, const GaussRat& c, int denominator_power) {
  Numerator p;
  p[{a, b}] = c;
  return SphereScalar(p, denominator_power);
}

SphereScalar SphereScalar::inv_one_plus_t(int k) { return monomial(0, 0, 1, k); }
SphereScalar SphereScalar::f1() { return monomial(1, 0, 1, 1); }
SphereScalar SphereScalar::f2() { return monomial(0, 1, 1, 1); }
SphereScalar SphereScalar::f3() { return monomial(0, 0, 1, 1); }

void SphereScalar::normalize() {
  if (num_.empty()) {
    n_ = 0;
    return;
  }
  while (n_ > 0 && divide_one_plus_t(num_)) --n_;
}

int SphereScalar::max_mu_degree() const {
  int d = -1;
  for (const auto& [e, c] : num_) d = std::max(d, e.first);
  return d;
}

int SphereScalar::max_mubar_degree() const {
  int d = -1;
  for (const auto& [e, c] : num_) d = std::max(d, e.second);
  return d;
}

SphereScalar SphereScalar::conj() const {
  Numerator p;
  for (const auto& [e, c] : num_) p[{e.second, e.first}] = c.conj();
  SphereScalar s;
  s.num_ = std::move(p);
  s.n_ = n_;
  return s;
}

// d(P/(1+t)^n)/dmu = (P_mu (1+t) - n mubar P) / (1+t)^{n+1}
SphereScalar SphereScalar::d_dmu() const {
  Numerator out;
  for (const auto& [e, c] : num_) {
    auto [a, b] = e;
    if (a > 0) {
      GaussRat ca = c * GaussRat(a);
      add_into(out, {a - 1, b}, ca);
      add_into(out, {a, b + 1}, ca);
    }
    add_into(out, {a, b + 1}, -c * GaussRat(n_));
  }
  return SphereScalar(out, n_ + 1);
}

SphereScalar SphereScalar::d_dmubar() const {
  Numerator out;
  for (const auto& [e, c] : num_) {
    auto [a, b] = e;
    if (b > 0) {
      GaussRat cb = c * GaussRat(b);
      add_into(out, {a, b - 1}, cb);
      add_into(out, {a + 1, b}, cb);
    }
    add_into(out, {a + 1, b}, -c * GaussRat(n_));
  }
  return SphereScalar(out, n_ + 1);
}

Numerator SphereScalar::numerator_at(int n) const {
  if (n < n_) throw std::invalid_argument("denominator power below reduced form");
  return times_one_plus_t(num_, n - n_);
}

GaussRat SphereScalar::value_at_origin() const {
  auto it = num_.find({0, 0});
  return it == num_.end() ? GaussRat(0) : it->second;
}

std::complex<double> SphereScalar::eval(std::complex<double> mu) const {
  std::complex<double> mub = std::conj(mu);
  std::complex<double> s = 0;
  for (const auto& [e, c] : num_) s += c.to_complex() * std::pow(mu, e.first) * std::pow(mub, e.second);
  return s / std::pow(1.0 + std::norm(mu), n_);
}

std::string SphereScalar::str() const {
  if (num_.empty()) return "0";
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [e, c] : num_) {
    if (!first) os << " + ";
    first = false;
    std::vector<std::string> parts;
    bool bare = e.first == 0 && e.second == 0;
    if (bare || !c.is_one()) parts.push_back(c.is_real() && sgn(c.re()) > 0 ? c.str() : "(" + c.str() + ")");
    if (e.first > 0) parts.push_back(e.first > 1 ? "mu^" + std::to_string(e.first) : "mu");
    if (e.second > 0) parts.push_back(e.second > 1 ? "mubar^" + std::to_string(e.second) : "mubar");
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  os << ")";
  if (n_ > 0) os << "/(1+|mu|^2)" << (n_ > 1 ? "^" + std::to_string(n_) : "");
  return os.str();
}

SphereScalar& SphereScalar::operator+=(const SphereScalar& o) {
  if (o.num_.empty()) return *this;
  int n = std::max(n_, o.n_);
  Numerator p = numerator_at(n);
  for (const auto& [e, c] : o.numerator_at(n)) add_into(p, e, c);
  num_ = std::move(p);
  n_ = n;
  normalize();
  return *this;
}

SphereScalar& SphereScalar::operator-=(const SphereScalar& o) { return *this += -o; }

SphereScalar& SphereScalar::operator*=(const SphereScalar& o) {
  if (num_.empty()) return *this;
  if (o.num_.empty()) {
    num_.clear();
    n_ = 0;
    return *this;
  }
  Numerator p;
  for (const auto& [ea, ca] : num_)
    for (const auto& [eb, cb] : o.num_) add_into(p, {ea.first + eb.first, ea.second + eb.second}, ca * cb);
  num_ = std::move(p);
  n_ += o.n_;
  normalize();
  return *this;
}

SphereScalar SphereScalar::operator-() const {
  SphereScalar s = *this;
  for (auto& [e, c] : s.num_) c = -c;
  return s;
}

bool is_smooth_on_sphere(const SphereScalar& s, SmoothKind kind) {
  // mu = 1/nu turns mu^a mubar^b / (1+t)^n into nu^{n-a} nubar^{n-b} / (1+|nu|^2)^n;
  // dmubar = -nubar^{-2} dnubar, and the O(2) frame contributes nu^{-2}.
  int amax = s.denominator_power(), bmax = s.denominator_power();
  if (kind == SmoothKind::dmubar_coeff || kind == SmoothKind::o2_dmubar_coeff) bmax -= 2;
  if (kind == SmoothKind::o2_section || kind == SmoothKind::o2_dmubar_coeff) amax += 2;
  for (const auto& [e, c] : s.numerator())
    if (e.first > amax || e.second > bmax) return false;
  return true;
}

}  // namespace nilquat
