#include "nilquat/twistor.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <random>
#include <sstream>

#include "nilquat/hypercomplex.hpp"

namespace nilquat {

namespace {

SphereScalar one_plus_t() { return SphereScalar(SphereScalar::Numerator{{{0, 0}, 1}, {{1, 1}, 1}}, 0); }

// Lie algebra indices of the block carrying frame index alpha:
// (X_{2a-1}, X_{2a}, Y_{2a-1}, Y_{2a}) for a <= m, (Z, E1, E2, E3) for m+1.
std::array<std::size_t, 4> block(int m, int alpha) {
  if (alpha == m + 1) return {hx::Z, hx::E(1), hx::E(2), hx::E(3)};
  return {hx::X(m, 2 * alpha - 1), hx::X(m, 2 * alpha), hx::Y(m, 2 * alpha - 1), hx::Y(m, 2 * alpha)};
}

// Coefficients of sigma_bar_j on the dual coframe of the block, same order as block().
std::array<SphereScalar, 4> sigma_coefficients(int j) {
  const GaussRat i = GaussRat::i();
  SphereScalar inv = SphereScalar::inv_one_plus_t();
  SphereScalar mb = SphereScalar::mubar() * inv;
  if (j == 1) return {mb, SphereScalar(-i) * mb, SphereScalar(-1) * inv, SphereScalar(-i) * inv};
  return {inv, SphereScalar(i) * inv, mb, SphereScalar(-i) * mb};
}

}  // namespace

FrameSymbol FrameSymbol::conj() const {
  switch (kind) {
    case FrameKind::holo: return antiholo(i, alpha);
    case FrameKind::antiholo: return holo(i, alpha);
    case FrameKind::d_mu: return d_mubar();
    case FrameKind::d_mubar: return d_mu();
  }
  return *this;
}

void FrameSymbol::validate(int m) const {
  if (kind == FrameKind::d_mu || kind == FrameKind::d_mubar) return;
  if (i < 1 || i > 2 || alpha < 1 || alpha > m + 1) throw std::invalid_argument("frame symbol out of range: " + str());
}

std::string FrameSymbol::str() const {
  switch (kind) {
    case FrameKind::holo: return "d" + std::to_string(i) + "^" + std::to_string(alpha);
    case FrameKind::antiholo: return "db" + std::to_string(i) + "^" + std::to_string(alpha);
    case FrameKind::d_mu: return "d/dmu";
    case FrameKind::d_mubar: return "d/dmubar";
  }
  return "?";
}

void FormSymbol::validate(int m) const {
  if (kind == FormKind::dmu_bar) return;
  if (j < 1 || j > 2 || beta < 1 || beta > m + 1) throw std::invalid_argument("form symbol out of range: " + str());
}

std::string FormSymbol::str() const {
  if (kind == FormKind::dmu_bar) return "dmubar";
  return "sb" + std::to_string(j) + "^" + std::to_string(beta);
}

void accumulate(FrameVector& v, const FrameSymbol& s, const SphereScalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = v.emplace(s, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

void accumulate(OneForm& w, const FormSymbol& s, const SphereScalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = w.emplace(s, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) w.erase(it);
  }
}

FrameVector scale(const SphereScalar& c, const FrameVector& v) {
  FrameVector out;
  for (const auto& [s, x] : v) accumulate(out, s, c * x);
  return out;
}

FrameVector operator+(const FrameVector& a, const FrameVector& b) {
  FrameVector out = a;
  for (const auto& [s, x] : b) accumulate(out, s, x);
  return out;
}

FrameVector operator-(const FrameVector& a, const FrameVector& b) {
  FrameVector out = a;
  for (const auto& [s, x] : b) accumulate(out, s, -x);
  return out;
}

FrameVector project_10(const FrameVector& v) {
  FrameVector out;
  for (const auto& [s, x] : v)
    if (s.is_10()) out.emplace(s, x);
  return out;
}

std::string to_string(const FrameVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, x] : v) {
    os << (first ? "" : " + ") << "(" << x.str() << ")*" << s.str();
    first = false;
  }
  return os.str();
}

std::string to_string(const OneForm& w) {
  if (w.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, x] : w) {
    os << (first ? "" : " + ") << "(" << x.str() << ")*" << s.str();
    first = false;
  }
  return os.str();
}

void VectorValuedForm::add(const SphereScalar& c, const FrameSymbol& v, std::vector<FormSymbol> forms) {
  if (c.is_zero()) return;
  if (static_cast<int>(forms.size()) != degree_) throw std::invalid_argument("form degree mismatch");
  int sign = 1;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j + 1 < forms.size() - i; ++j)
      if (forms[j + 1] < forms[j]) {
        std::swap(forms[j], forms[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < forms.size(); ++i)
    if (forms[i] == forms[i + 1]) return;
  SphereScalar x = sign == 1 ? c : -c;
  Key key{v, std::move(forms)};
  auto [it, ins] = terms_.emplace(key, x);
  if (!ins) {
    it->second += x;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::string VectorValuedForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")*" << k.first.str();
    for (std::size_t q = 0; q < k.second.size(); ++q) os << (q == 0 ? "(x)" : "^") << k.second[q].str();
    first = false;
  }
  return os.str();
}

VectorValuedForm& VectorValuedForm::operator+=(const VectorValuedForm& o) {
  if (o.degree_ != degree_ && !o.is_zero()) throw std::invalid_argument("form degree mismatch");
  for (const auto& [k, c] : o.terms_) add(c, k.first, k.second);
  return *this;
}

VectorValuedForm& VectorValuedForm::operator-=(const VectorValuedForm& o) {
  if (o.degree_ != degree_ && !o.is_zero()) throw std::invalid_argument("form degree mismatch");
  for (const auto& [k, c] : o.terms_) add(-c, k.first, k.second);
  return *this;
}

VectorValuedForm operator*(const SphereScalar& c, const VectorValuedForm& a) {
  VectorValuedForm out(a.degree_);
  if (c.is_zero()) return out;
  for (const auto& [k, x] : a.terms_) out.terms_.emplace(k, c * x);
  return out;
}

TwistorEngine::TwistorEngine(int m) : m_(m), alg_(make_heisenberg_ext(m)) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const std::size_t n = alg_.dim();
  const GaussRat half = GaussRat::frac(1, 2);
  const GaussRat ihalf = GaussRat::frac(0, 1, 1, 2);
  SphereScalar mu = SphereScalar::mu();
  for (int alpha = 1; alpha <= m + 1; ++alpha) {
    auto b = block(m, alpha);
    // db_1 = (mu (X1 + i X2) - (Y1 - i Y2)) / 2, db_2 = ((X1 - i X2) + mu (Y1 + i Y2)) / 2
    ChartField d1{std::vector<SphereScalar>(n), {}, {}};
    d1.alg[b[0]] = SphereScalar(half) * mu;
    d1.alg[b[1]] = SphereScalar(ihalf) * mu;
    d1.alg[b[2]] = SphereScalar(-half);
    d1.alg[b[3]] = SphereScalar(ihalf);
    ChartField d2{std::vector<SphereScalar>(n), {}, {}};
    d2.alg[b[0]] = SphereScalar(half);
    d2.alg[b[1]] = SphereScalar(-ihalf);
    d2.alg[b[2]] = SphereScalar(half) * mu;
    d2.alg[b[3]] = SphereScalar(ihalf) * mu;
    for (int i = 1; i <= 2; ++i) {
      ChartField f = i == 1 ? d1 : d2;
      real_[FrameSymbol::antiholo(i, alpha)] = f;
      for (auto& c : f.alg) c = c.conj();
      real_[FrameSymbol::holo(i, alpha)] = f;
    }
  }
  real_[FrameSymbol::d_mu()] = ChartField{std::vector<SphereScalar>(n), SphereScalar(1), {}};
  real_[FrameSymbol::d_mubar()] = ChartField{std::vector<SphereScalar>(n), {}, SphereScalar(1)};

  for (const auto& [s, f] : real_) {
    FrameVector back = to_frame(f);
    if (back.size() != 1 || back.begin()->first != s || back.begin()->second != SphereScalar(1))
      throw std::logic_error("frame inversion failed for " + s.str());
  }
  // (1+t) Z^{1,0} = mu d_1^{m+1} + d_2^{m+1}
  ChartField z{std::vector<SphereScalar>(n), {}, {}};
  z.alg[hx::Z] = SphereScalar(1);
  FrameVector lhs = scale(one_plus_t(), project_10(to_frame(z)));
  FrameVector rhs{{FrameSymbol::holo(1, m + 1), mu}, {FrameSymbol::holo(2, m + 1), SphereScalar(1)}};
  if (lhs != rhs) throw std::logic_error("central field expansion check failed");
}

std::vector<FrameSymbol> TwistorEngine::frame_symbols() const {
  std::vector<FrameSymbol> out;
  for (int alpha = 1; alpha <= m_ + 1; ++alpha)
    for (int i = 1; i <= 2; ++i) out.push_back(FrameSymbol::holo(i, alpha));
  for (int alpha = 1; alpha <= m_ + 1; ++alpha)
    for (int i = 1; i <= 2; ++i) out.push_back(FrameSymbol::antiholo(i, alpha));
  out.push_back(FrameSymbol::d_mu());
  out.push_back(FrameSymbol::d_mubar());
  return out;
}

std::vector<FormSymbol> TwistorEngine::form_symbols() const {
  std::vector<FormSymbol> out{FormSymbol::dmu_bar()};
  for (int beta = 1; beta <= m_ + 1; ++beta)
    for (int j = 1; j <= 2; ++j) out.push_back(FormSymbol::sigma_bar(j, beta));
  return out;
}

const ChartField& TwistorEngine::realize(const FrameSymbol& s) const {
  s.validate(m_);
  return real_.at(s);
}

ChartField TwistorEngine::realize(const FrameVector& v) const {
  ChartField out{std::vector<SphereScalar>(alg_.dim()), {}, {}};
  for (const auto& [s, c] : v) {
    const ChartField& f = realize(s);
    for (std::size_t k = 0; k < f.alg.size(); ++k)
      if (!f.alg[k].is_zero()) out.alg[k] += c * f.alg[k];
    if (!f.dmu.is_zero()) out.dmu += c * f.dmu;
    if (!f.dmubar.is_zero()) out.dmubar += c * f.dmubar;
  }
  return out;
}

FrameVector TwistorEngine::to_frame(const ChartField& f) const {
  FrameVector out;
  accumulate(out, FrameSymbol::d_mu(), f.dmu);
  accumulate(out, FrameSymbol::d_mubar(), f.dmubar);
  const GaussRat i = GaussRat::i();
  const SphereScalar half(GaussRat::frac(1, 2));
  SphereScalar mu = SphereScalar::mu(), mub = SphereScalar::mubar();
  SphereScalar two_inv = SphereScalar(2) * SphereScalar::inv_one_plus_t();
  for (int alpha = 1; alpha <= m_ + 1; ++alpha) {
    auto b = block(m_, alpha);
    const SphereScalar &x1 = f.alg[b[0]], &x2 = f.alg[b[1]], &y1 = f.alg[b[2]], &y2 = f.alg[b[3]];
    // X1 = (A + Ac)/2, X2 = -i (A - Ac)/2, Y likewise with B; A = X1 + i X2, B = Y1 + i Y2.
    SphereScalar cA = half * (x1 - SphereScalar(i) * x2);
    SphereScalar cAc = half * (x1 + SphereScalar(i) * x2);
    SphereScalar cB = half * (y1 - SphereScalar(i) * y2);
    SphereScalar cBc = half * (y1 + SphereScalar(i) * y2);
    // A = 2(mubar db1 + d2)/(1+t), Ac = 2(db2 + mu d1)/(1+t),
    // B = 2(mubar db2 - d1)/(1+t), Bc = 2(mu d2 - db1)/(1+t)
    FrameSymbol d1 = FrameSymbol::holo(1, alpha), d2 = FrameSymbol::holo(2, alpha);
    FrameSymbol db1 = FrameSymbol::antiholo(1, alpha), db2 = FrameSymbol::antiholo(2, alpha);
    if (!cA.is_zero()) {
      accumulate(out, db1, two_inv * mub * cA);
      accumulate(out, d2, two_inv * cA);
    }
    if (!cAc.is_zero()) {
      accumulate(out, db2, two_inv * cAc);
      accumulate(out, d1, two_inv * mu * cAc);
    }
    if (!cB.is_zero()) {
      accumulate(out, db2, two_inv * mub * cB);
      accumulate(out, d1, -(two_inv * cB));
    }
    if (!cBc.is_zero()) {
      accumulate(out, d2, two_inv * mu * cBc);
      accumulate(out, db1, -(two_inv * cBc));
    }
  }
  return out;
}

ChartField TwistorEngine::chart_bracket(const ChartField& u, const ChartField& v) const {
  const std::size_t n = alg_.dim();
  ChartField out{std::vector<SphereScalar>(n), {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    if (u.alg[k].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (v.alg[l].is_zero()) continue;
      const SparseRow& row = alg_.basis_bracket(k, l);
      if (row.empty()) continue;
      SphereScalar uv = u.alg[k] * v.alg[l];
      for (const auto& [c, x] : row) out.alg[c] += SphereScalar(x) * uv;
    }
  }
  // Sphere directions act on coefficients; invariant fields do not see mu.
  auto deriv = [](const ChartField& w, const SphereScalar& g) {
    SphereScalar r;
    if (!w.dmu.is_zero()) r += w.dmu * g.d_dmu();
    if (!w.dmubar.is_zero()) r += w.dmubar * g.d_dmubar();
    return r;
  };
  bool u_sphere = !u.dmu.is_zero() || !u.dmubar.is_zero();
  bool v_sphere = !v.dmu.is_zero() || !v.dmubar.is_zero();
  if (u_sphere) {
    for (std::size_t c = 0; c < n; ++c)
      if (!v.alg[c].is_zero()) out.alg[c] += deriv(u, v.alg[c]);
    out.dmu += deriv(u, v.dmu);
    out.dmubar += deriv(u, v.dmubar);
  }
  if (v_sphere) {
    for (std::size_t c = 0; c < n; ++c)
      if (!u.alg[c].is_zero()) out.alg[c] -= deriv(v, u.alg[c]);
    out.dmu -= deriv(v, u.dmu);
    out.dmubar -= deriv(v, u.dmubar);
  }
  return out;
}

ChartForm TwistorEngine::realize_form(const FormSymbol& f) const {
  f.validate(m_);
  ChartForm out{std::vector<SphereScalar>(alg_.dim()), {}};
  if (f.kind == FormKind::dmu_bar) {
    out.dmubar = SphereScalar(1);
    return out;
  }
  auto b = block(m_, f.beta);
  auto c = sigma_coefficients(f.j);
  for (std::size_t q = 0; q < 4; ++q) out.alg[b[q]] = c[q];
  return out;
}

ChartForm TwistorEngine::realize_form(const OneForm& w) const {
  ChartForm out{std::vector<SphereScalar>(alg_.dim()), {}};
  for (const auto& [s, c] : w) {
    ChartForm f = realize_form(s);
    for (std::size_t k = 0; k < f.alg.size(); ++k)
      if (!f.alg[k].is_zero()) out.alg[k] += c * f.alg[k];
    if (!f.dmubar.is_zero()) out.dmubar += c * f.dmubar;
  }
  return out;
}

FrameVector TwistorEngine::frame_bracket(const FrameSymbol& a, const FrameSymbol& b) const {
  auto key = std::make_pair(a, b);
  auto it = bracket_cache_.find(key);
  if (it != bracket_cache_.end()) return it->second;
  FrameVector r = to_frame(chart_bracket(realize(a), realize(b)));
  bracket_cache_.emplace(key, r);
  return r;
}

FrameVector TwistorEngine::bracket(const FrameVector& a, const FrameVector& b) const {
  return to_frame(chart_bracket(realize(a), realize(b)));
}

OneForm TwistorEngine::lie_derivative_form(const FrameSymbol& v, const FormSymbol& f) const {
  v.validate(m_);
  f.validate(m_);
  if (v.kind != FrameKind::holo) throw std::invalid_argument("lie_derivative_form needs a holomorphic frame symbol");
  OneForm out;
  if (f.kind == FormKind::dmu_bar) return out;
  const int alpha = v.alpha, beta = f.beta, i = v.i, j = f.j;
  if (alpha == beta) {
    int eps = (i == 1 && j == 2) ? 1 : (i == 2 && j == 1) ? -1 : 0;
    accumulate(out, FormSymbol::dmu_bar(), SphereScalar(eps) * SphereScalar::inv_one_plus_t());
  } else if (beta == m_ + 1) {
    SphereScalar c = j == 1 ? SphereScalar(2) * SphereScalar::mubar() : SphereScalar(2);
    if (i == 1)
      accumulate(out, FormSymbol::sigma_bar(2, alpha), c);
    else
      accumulate(out, FormSymbol::sigma_bar(1, alpha), -c);
  }
  return out;
}

OneForm TwistorEngine::lie_derivative_form_derived(const FrameSymbol& v, const FormSymbol& f) const {
  v.validate(m_);
  f.validate(m_);
  FrameSymbol dual = f.kind == FormKind::dmu_bar ? FrameSymbol::d_mubar() : FrameSymbol::antiholo(f.j, f.beta);
  OneForm out;
  for (const FrameSymbol& w : frame_symbols()) {
    FrameVector br = frame_bracket(v, w);
    auto it = br.find(dual);
    if (it == br.end()) continue;
    if (w.is_10()) throw std::logic_error("Lie derivative of " + f.str() + " along " + v.str() + " has a (1,0) part");
    FormSymbol wf = w.kind == FrameKind::d_mubar ? FormSymbol::dmu_bar() : FormSymbol::sigma_bar(w.i, w.alpha);
    accumulate(out, wf, -it->second);
  }
  return out;
}

VectorValuedForm TwistorEngine::nijenhuis_bracket(const VectorValuedForm& a, const VectorValuedForm& b) const {
  if (a.degree() != 1 || b.degree() != 1) throw std::invalid_argument("nijenhuis_bracket needs vector-valued 1-forms");
  VectorValuedForm out(2);
  for (const auto& [ka, g] : a.terms()) {
    const FrameSymbol& V = ka.first;
    const FormSymbol& w = ka.second[0];
    if (V.kind != FrameKind::holo) throw std::invalid_argument("vector slot must be holomorphic: " + V.str());
    for (const auto& [kb, g2] : b.terms()) {
      const FrameSymbol& V2 = kb.first;
      const FormSymbol& w2 = kb.second[0];
      if (V2.kind != FrameKind::holo) throw std::invalid_argument("vector slot must be holomorphic: " + V2.str());
      SphereScalar gg = g * g2;
      for (const auto& [f, c] : lie_derivative_form(V2, w)) out.add(gg * c, V, {w2, f});
      for (const auto& [f, c] : lie_derivative_form(V, w2)) out.add(gg * c, V2, {w, f});
      for (const auto& [s, c] : project_10(frame_bracket(V, V2))) out.add(gg * c, s, {w, w2});
    }
  }
  return out;
}

VectorValuedForm TwistorEngine::dbar_apply(const VectorValuedForm& a) const {
  if (a.degree() > 1) throw std::invalid_argument("dbar_apply supports degrees 0 and 1");
  VectorValuedForm out(a.degree() + 1);
  std::vector<FrameSymbol> dirs;
  for (const FrameSymbol& s : frame_symbols())
    if (!s.is_10()) dirs.push_back(s);
  for (const auto& [k, h] : a.terms()) {
    const FrameSymbol& V = k.first;
    if (!V.is_10()) throw std::invalid_argument("vector slot must be of type (1,0): " + V.str());
    for (const FrameSymbol& X : dirs) {
      FormSymbol xf = X.kind == FrameKind::d_mubar ? FormSymbol::dmu_bar() : FormSymbol::sigma_bar(X.i, X.alpha);
      std::vector<FormSymbol> forms{xf};
      forms.insert(forms.end(), k.second.begin(), k.second.end());
      // [X, hV] = h [X, V] + X(h) V; only d/dmubar differentiates coefficients.
      for (const auto& [s, c] : project_10(frame_bracket(X, V))) out.add(h * c, s, forms);
      if (X.kind == FrameKind::d_mubar) out.add(h.d_dmubar(), V, forms);
    }
  }
  return out;
}

FrameVector TwistorEngine::w_tilde(int k, int alpha) const {
  if (k < 0 || k > 3 || alpha < 1 || alpha > m_ + 1) throw std::invalid_argument("w_tilde index out of range");
  const GaussRat i = GaussRat::i();
  SphereScalar inv = SphereScalar::inv_one_plus_t();
  SphereScalar mu = SphereScalar::mu() * inv;
  FrameSymbol d1 = FrameSymbol::holo(1, alpha), d2 = FrameSymbol::holo(2, alpha);
  FrameVector out;
  switch (k) {
    case 0:
      accumulate(out, d1, mu);
      accumulate(out, d2, inv);
      break;
    case 1:
      accumulate(out, d1, SphereScalar(i) * mu);
      accumulate(out, d2, SphereScalar(-i) * inv);
      break;
    case 2:
      accumulate(out, d2, mu);
      accumulate(out, d1, -inv);
      break;
    case 3:
      accumulate(out, d2, SphereScalar(i) * mu);
      accumulate(out, d1, SphereScalar(i) * inv);
      break;
  }
  return out;
}

bool TwistorEngine::verify_w_tilde() const {
  HyperTriple t = standard_triple(m_);
  const std::size_t n = alg_.dim();
  SphereScalar inv = SphereScalar::inv_one_plus_t();
  SphereScalar mu = SphereScalar::mu(), mub = SphereScalar::mubar();
  const GaussRat i = GaussRat::i();
  std::array<SphereScalar, 3> dir = {(mu * mub - SphereScalar(1)) * inv, SphereScalar(-i) * (mu - mub) * inv,
                                     (mu + mub) * inv};
  for (int alpha = 1; alpha <= m_ + 1; ++alpha) {
    AlgVector base = unit_vector(n, block(m_, alpha)[0]);
    for (int k = 0; k <= 3; ++k) {
      AlgVector ik = k == 0 ? base : t[k].apply(base);
      ChartField f{std::vector<SphereScalar>(n), {}, {}};
      for (std::size_t r = 0; r < n; ++r) f.alg[r] += SphereScalar(GaussRat::frac(1, 2)) * SphereScalar(ik[r]);
      for (int l = 1; l <= 3; ++l) {
        AlgVector il = t[l].apply(ik);
        for (std::size_t r = 0; r < n; ++r)
          if (!il[r].is_zero()) f.alg[r] -= SphereScalar(GaussRat::frac(0, 1, 1, 2)) * dir[l - 1] * SphereScalar(il[r]);
      }
      if (to_frame(f) != w_tilde(k, alpha)) return false;
    }
  }
  return true;
}

SphereScalar dbar_primitive(const SphereScalar& g) {
  if (g.is_zero()) return SphereScalar();
  if (!is_smooth_on_sphere(g, SmoothKind::dmubar_coeff))
    throw PrimitiveError("dmubar coefficient is not smooth on the sphere: " + g.str());
  const int n = g.denominator_power();
  for (int N = n + 1; N <= n + 3; ++N) {
    // d/dmubar(Q/(1+t)^N) = (Q_mubar (1+t) - N mu Q)/(1+t)^{N+1}
    std::vector<SphereScalar::Exponent> unknowns;
    for (int a = 0; a <= N; ++a)
      for (int b = 0; b <= N; ++b)
        if (a != 0 || b != 0) unknowns.push_back({a, b});
    std::map<SphereScalar::Exponent, std::size_t> rows;
    auto row_of = [&](SphereScalar::Exponent e) { return rows.emplace(e, rows.size()).first->second; };
    std::vector<std::tuple<std::size_t, std::size_t, GaussRat>> entries;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [a, b] = unknowns[u];
      if (b > 0) entries.emplace_back(row_of({a, b - 1}), u, GaussRat(b));
      if (b != N) entries.emplace_back(row_of({a + 1, b}), u, GaussRat(b - N));
    }
    auto rhs_num = g.numerator_at(N + 1);
    for (const auto& [e, c] : rhs_num) row_of(e);
    ExactMatrix mat(rows.size(), unknowns.size());
    for (const auto& [r, c, x] : entries) mat.add_to(r, c, x);
    ExactVector rhs(rows.size());
    for (const auto& [e, c] : rhs_num) rhs[rows.at(e)] = c;
    auto sol = solve(mat, rhs);
    if (!sol) continue;
    SphereScalar::Numerator q;
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (!(*sol)[u].is_zero()) q[unknowns[u]] = (*sol)[u];
    SphereScalar f(q, N);
    if (f.d_dmubar() != g || !is_smooth_on_sphere(f, SmoothKind::function)) continue;
    return f;
  }
  throw PrimitiveError("no smooth primitive of " + g.str() + " with denominator power up to " + std::to_string(n + 3));
}

VectorValuedForm chart_restrict(const CohoElement& c, int m) {
  if (c.d != 2 || !c.vec || c.forms.size() != 1 || c.k < 0 || c.k > 2)
    throw std::invalid_argument("chart_restrict supports lambda-degree 2 vector-valued 1-classes only: " + c.str());
  FrameSymbol v = FrameSymbol::holo(c.vec->i, c.vec->alpha);
  FormSymbol f = FormSymbol::sigma_bar(c.forms[0].j, c.forms[0].beta);
  v.validate(m);
  f.validate(m);
  VectorValuedForm out(1);
  out.add(SphereScalar::monomial(c.k, 0, 1, 1), v, {f});
  return out;
}

VectorValuedForm chart_restrict(const EBasisElement& e, int m) {
  e.validate(m);
  VectorValuedForm out(1);
  for (const auto& [c, el] : e.expand()) out += SphereScalar(c) * chart_restrict(el, m);
  return out;
}

VectorValuedForm realize(const GammaE& g, int m) {
  VectorValuedForm out(1);
  for (const auto& [e, c] : g) out += c * chart_restrict(e, m);
  return out;
}

std::string to_string(const GammaE& g) {
  if (g.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : g) {
    os << (first ? "" : " + ") << "(" << c.str() << ")*" << e.label();
    first = false;
  }
  return os.str();
}

GammaE solve_dbar_in_E(const TwistorEngine& eng, const VectorValuedForm& psi) {
  const int m = eng.m();
  if (psi.degree() != 2) throw std::invalid_argument("solve_dbar_in_E needs a vector-valued 2-form");
  GammaE result;
  if (psi.is_zero()) return result;
  // Per k: tensor slot -> part of (1+t) c with mu-degree shifted down by k. All
  // slots are split at one common denominator power so the split is linear.
  std::map<std::size_t, SphereScalar> lifted;
  int n = 0;
  for (const auto& [key, c] : psi.terms()) {
    const auto& [V, forms] = key;
    if (V.kind != FrameKind::holo || forms[0].kind != FormKind::dmu_bar || forms[1].kind != FormKind::sigma_bar)
      throw DecompositionError("term outside the image of Gamma^0 (x) E: " + V.str() + " (x) " + forms[0].str() +
                               "^" + forms[1].str());
    SphereScalar C = c * one_plus_t();
    n = std::max(n, C.denominator_power());
    lifted.emplace(tensor_slot(m, V.i, V.alpha, forms[1].j, forms[1].beta), C);
  }
  std::array<std::map<std::size_t, SphereScalar>, 3> parts;
  for (const auto& [slot, C] : lifted)
    for (const auto& [e, x] : C.numerator_at(n)) {
      int k = std::max(0, e.first - n);
      if (k > 2) throw DecompositionError("mu-degree too high for E: " + C.str());
      parts[static_cast<std::size_t>(k)][slot] += SphereScalar::monomial(e.first - k, e.second, x, n);
    }
  std::vector<EBasisElement> patterns = e_space_patterns(m);
  std::vector<ExactVector> cols;
  for (const auto& p : patterns) cols.push_back(pattern_vector(m, p));
  ExactMatrix pmat = ExactMatrix::from_columns(cols, tensor_slot_count(m));
  for (int k = 0; k <= 2; ++k) {
    std::map<std::size_t, SphereScalar> prim;
    int N = 0;
    for (const auto& [slot, part] : parts[static_cast<std::size_t>(k)]) {
      if (part.is_zero()) continue;
      try {
        SphereScalar f = dbar_primitive(part);
        N = std::max(N, f.denominator_power());
        prim.emplace(slot, f);
      } catch (const PrimitiveError& err) {
        throw DecompositionError(std::string("primitive failed: ") + err.what());
      }
    }
    std::map<SphereScalar::Exponent, ExactVector> by_mono;
    for (const auto& [slot, f] : prim)
      for (const auto& [e, x] : f.numerator_at(N)) {
        auto [it, ins] = by_mono.emplace(e, ExactVector(tensor_slot_count(m)));
        it->second[slot] = x;
      }
    for (const auto& [e, vec] : by_mono) {
      auto x = solve(pmat, vec);
      if (!x) throw DecompositionError("coefficient pattern at lambda_1^" + std::to_string(k) + " is not in E");
      for (std::size_t p = 0; p < patterns.size(); ++p) {
        if ((*x)[p].is_zero()) continue;
        EBasisElement el = patterns[p];
        el.k = k;
        auto [it, ins] = result.emplace(el, SphereScalar());
        it->second += SphereScalar::monomial(e.first, e.second, (*x)[p], N);
        if (it->second.is_zero()) result.erase(it);
      }
    }
  }
  if (eng.dbar_apply(realize(result, m)) != psi) throw DecompositionError("dbar of the assembled primitive differs");
  return result;
}

BracketClosureReport verify_bracket_closure(const TwistorEngine& eng, std::optional<std::size_t> samples,
                                            std::uint64_t seed) {
  const int m = eng.m();
  std::vector<EBasisElement> basis = e_space_basis(m);
  std::vector<VectorValuedForm> charts;
  for (const auto& e : basis) charts.push_back(chart_restrict(e, m));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (samples) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (std::size_t s = 0; s < *samples; ++s) {
      std::size_t a = pick(rng);
      pairs.emplace_back(a, pick(rng));
    }
  } else {
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) pairs.emplace_back(a, b);
  }
  BracketClosureReport rep;
  for (const auto& [a, b] : pairs) {
    ++rep.pairs;
    VectorValuedForm br = eng.nijenhuis_bracket(charts[a], charts[b]);
    if (br.is_zero()) {
      ++rep.zero_brackets;
      continue;
    }
    try {
      solve_dbar_in_E(eng, br);
    } catch (const DecompositionError& err) {
      ++rep.failures;
      rep.failure_details.push_back("{" + basis[a].label() + ", " + basis[b].label() + "}: " + err.what());
    }
  }
  return rep;
}

ExactMatrix delta0_via_gauduchon(const TwistorEngine& eng) {
  const int m = eng.m();
  GradedSpace cod = basis_space({SpaceKind::W_V, 1}, m);
  auto fields = w_fields_in_monomials(m);
  std::vector<std::string> cols;
  for (const auto& [name, terms] : fields) cols.push_back(name);
  ExactMatrix mat(cod.labels(), cols);
  for (std::size_t col = 0; col < fields.size(); ++col) {
    VectorValuedForm lift(0);
    for (const auto& [c, el] : fields[col].second)
      lift.add(SphereScalar::monomial(el.k, 0, c, 1), FrameSymbol::holo(el.vec->i, el.vec->alpha), {});
    VectorValuedForm img = eng.dbar_apply(lift);
    for (const auto& [key, c] : img.terms()) {
      const auto& [V, forms] = key;
      if (V.kind != FrameKind::holo || V.alpha != m + 1 || forms[0].kind != FormKind::sigma_bar || c.denominator_power() > 1)
        throw std::logic_error("dbar image outside the H^1(W, V) chart: " + img.str());
      for (const auto& [e, x] : c.numerator_at(1)) {
        if (e.second != 0 || e.first > 2) throw std::logic_error("dbar image outside the H^1(W, V) chart: " + img.str());
        CohoElement row{e.first, 2, VecIndex{V.i, V.alpha}, {FormIndex{forms[0].j, forms[0].beta}}};
        mat.add_to(cod.at(row), col, x);
      }
    }
  }
  return mat;
}

double NumericCrosscheck::max() const { return std::max({frame_bracket, lie_derivative, sigma_holomorphy, duality}); }

}  // namespace nilquat
