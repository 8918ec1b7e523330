#include "nilquat/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace nilquat {

namespace {

std::string lambda_str(int k, int d) {
  auto pw = [](const char* s, int p) -> std::string {
    if (p == 0) return "";
    return p == 1 ? std::string(s) : std::string(s) + "^" + std::to_string(p);
  };
  std::string a = pw("l1", k), b = pw("l2", d - k);
  if (a.empty() && b.empty()) return "1";
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

std::vector<FormIndex> form_list(int max_beta) {
  std::vector<FormIndex> out;
  for (int beta = 1; beta <= max_beta; ++beta)
    for (int j = 1; j <= 2; ++j) out.push_back({j, beta});
  return out;
}

void subsets(const std::vector<FormIndex>& all, std::size_t q, std::size_t start, std::vector<FormIndex>& cur,
             std::vector<std::vector<FormIndex>>& out) {
  if (cur.size() == q) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < all.size(); ++i) {
    cur.push_back(all[i]);
    subsets(all, q, i + 1, cur, out);
    cur.pop_back();
  }
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CohoElement h1(int k, VecIndex v, FormIndex f) { return CohoElement{k, 2, v, {f}}; }

// c * W0 (x) lambda_r Obar_j^a with W0 = lambda_1 V_1 + lambda_2 V_2, V = V^{m+1}.
void add_w0_image(ExactMatrix& mat, const GradedSpace& cod, std::size_t col, int m, const GaussRat& c, int r, int j,
                  int a) {
  int lam = r == 1 ? 1 : 0;
  mat.add_to(cod.at(h1(1 + lam, {1, m + 1}, {j, a})), col, c);
  mat.add_to(cod.at(h1(lam, {2, m + 1}, {j, a})), col, c);
}

}  // namespace

int sort_wedge(std::vector<FormIndex>& forms) {
  int sign = 1;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j + 1 < forms.size() - i; ++j)
      if (forms[j + 1] < forms[j]) {
        std::swap(forms[j], forms[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < forms.size(); ++i)
    if (forms[i] == forms[i + 1]) return 0;
  return sign;
}

std::string CohoElement::str() const {
  std::ostringstream os;
  os << lambda_str(k, d);
  if (vec) os << "*V" << vec->i << "^" << vec->alpha;
  for (std::size_t q = 0; q < forms.size(); ++q)
    os << (q == 0 ? "*" : "^") << "Ob" << forms[q].j << "^" << forms[q].beta;
  return os.str();
}

bool operator<(const CohoElement& a, const CohoElement& b) {
  auto va = a.vec ? std::make_tuple(1, a.vec->alpha, a.vec->i) : std::make_tuple(0, 0, 0);
  auto vb = b.vec ? std::make_tuple(1, b.vec->alpha, b.vec->i) : std::make_tuple(0, 0, 0);
  if (a.d != b.d) return a.d < b.d;
  if (a.forms.size() != b.forms.size()) return a.forms.size() < b.forms.size();
  if (a.forms != b.forms)
    return std::lexicographical_compare(a.forms.begin(), a.forms.end(), b.forms.begin(), b.forms.end());
  if (va != vb) return va < vb;
  return a.k > b.k;
}

bool operator==(const CohoElement& a, const CohoElement& b) {
  return a.k == b.k && a.d == b.d && a.vec == b.vec && a.forms == b.forms;
}

GradedSpace::GradedSpace(std::string name, std::vector<CohoElement> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!index_.emplace(basis_[i], i).second) throw std::logic_error("duplicate basis element " + basis_[i].str());
}

std::optional<std::size_t> GradedSpace::index_of(const CohoElement& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedSpace::at(const CohoElement& e) const {
  auto i = index_of(e);
  if (!i) throw std::out_of_range(e.str() + " is not in " + name_);
  return *i;
}

std::vector<std::string> GradedSpace::labels() const {
  std::vector<std::string> out;
  for (const auto& e : basis_) out.push_back(e.str());
  return out;
}

std::string space_name(const SpaceSpec& s) {
  std::string k = std::to_string(s.k);
  switch (s.kind) {
    case SpaceKind::Z_O: return "H" + k + "_Z_O(" + std::to_string(s.ell) + ")";
    case SpaceKind::Z_D: return "H" + k + "_Z_DZ";
    case SpaceKind::W_O: return "H" + k + "_W_O(" + std::to_string(s.ell) + ")";
    case SpaceKind::W_V: return "H" + k + "_W_V";
    case SpaceKind::W_PsiD: return "H" + k + "_W_PsiDZ";
  }
  return "?";
}

GradedSpace basis_space(const SpaceSpec& s, int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (s.k < 0) throw std::invalid_argument("negative cohomological degree");
  bool on_w = s.kind == SpaceKind::W_O || s.kind == SpaceKind::W_V || s.kind == SpaceKind::W_PsiD;
  bool line = s.kind == SpaceKind::Z_O || s.kind == SpaceKind::W_O;
  if (line && s.ell < -1) throw std::invalid_argument("O(l) with l < -1 is unsupported");
  std::vector<VecIndex> vecs;
  if (s.kind == SpaceKind::Z_D || s.kind == SpaceKind::W_PsiD)
    for (int a = 1; a <= m; ++a)
      for (int i = 1; i <= 2; ++i) vecs.push_back({i, a});
  if (s.kind == SpaceKind::W_V)
    for (int i = 1; i <= 2; ++i) vecs.push_back({i, m + 1});
  int d = line ? s.ell + s.k : s.k + 1;
  std::vector<std::vector<FormIndex>> form_sets;
  std::vector<FormIndex> cur;
  subsets(form_list(on_w ? m + 1 : m), static_cast<std::size_t>(s.k), 0, cur, form_sets);
  std::vector<CohoElement> basis;
  if (d >= 0)
    for (const auto& fs : form_sets) {
      if (line) {
        for (int k = d; k >= 0; --k) basis.push_back({k, d, std::nullopt, fs});
      } else {
        for (const auto& v : vecs)
          for (int k = d; k >= 0; --k) basis.push_back({k, d, v, fs});
      }
    }
  return GradedSpace(space_name(s), std::move(basis));
}

std::size_t space_dimension_formula(const SpaceSpec& s, int m) {
  std::size_t k = static_cast<std::size_t>(s.k);
  std::size_t mm = static_cast<std::size_t>(m);
  long sym = s.kind == SpaceKind::Z_O || s.kind == SpaceKind::W_O ? s.ell + s.k + 1 : s.k + 2;
  std::size_t symd = sym < 0 ? 0 : static_cast<std::size_t>(sym);
  switch (s.kind) {
    case SpaceKind::Z_O: return binom(2 * mm, k) * symd;
    case SpaceKind::Z_D: return 2 * mm * binom(2 * mm, k) * symd;
    case SpaceKind::W_O: return binom(2 * mm + 2, k) * symd;
    case SpaceKind::W_V: return 2 * binom(2 * mm + 2, k) * symd;
    case SpaceKind::W_PsiD: return 2 * mm * binom(2 * mm + 2, k) * symd;
  }
  return 0;
}

ExactMatrix delta0_map(int m) {
  GradedSpace cod = basis_space({SpaceKind::W_V, 1}, m);
  std::vector<std::string> cols;
  for (int a = 1; a <= m; ++a)
    for (int k = 0; k < 4; ++k) cols.push_back("W" + std::to_string(k) + "^" + std::to_string(a));
  ExactMatrix mat(cod.labels(), cols);
  const GaussRat i = GaussRat::i();
  for (int a = 1; a <= m; ++a) {
    std::size_t c = static_cast<std::size_t>(4 * (a - 1));
    add_w0_image(mat, cod, c, m, 2, 1, 2, a);
    add_w0_image(mat, cod, c, m, -2, 2, 1, a);
    add_w0_image(mat, cod, c + 1, m, GaussRat(2) * i, 1, 2, a);
    add_w0_image(mat, cod, c + 1, m, GaussRat(2) * i, 2, 1, a);
    add_w0_image(mat, cod, c + 2, m, -2, 1, 1, a);
    add_w0_image(mat, cod, c + 2, m, -2, 2, 2, a);
    add_w0_image(mat, cod, c + 3, m, GaussRat(-2) * i, 1, 1, a);
    add_w0_image(mat, cod, c + 3, m, GaussRat(2) * i, 2, 2, a);
  }
  return mat;
}

std::vector<std::pair<std::string, std::vector<std::pair<GaussRat, CohoElement>>>> w_fields_in_monomials(int m) {
  std::vector<std::pair<std::string, std::vector<std::pair<GaussRat, CohoElement>>>> out;
  const GaussRat i = GaussRat::i();
  auto el = [](int k, int vi, int a) { return CohoElement{k, 1, VecIndex{vi, a}, {}}; };
  for (int a = 1; a <= m; ++a) {
    std::string s = "^" + std::to_string(a);
    out.push_back({"W0" + s, {{1, el(1, 1, a)}, {1, el(0, 2, a)}}});
    out.push_back({"W1" + s, {{i, el(1, 1, a)}, {-i, el(0, 2, a)}}});
    out.push_back({"W2" + s, {{1, el(1, 2, a)}, {-1, el(0, 1, a)}}});
    out.push_back({"W3" + s, {{i, el(1, 2, a)}, {i, el(0, 1, a)}}});
  }
  return out;
}

ExactMatrix delta1_map(int m) {
  GradedSpace dom = basis_space({SpaceKind::W_PsiD, 1}, m);
  GradedSpace cod = basis_space({SpaceKind::W_V, 2}, m);
  ExactMatrix mat(cod.labels(), dom.labels());
  for (std::size_t c = 0; c < dom.dim(); ++c) {
    const CohoElement& e = dom.basis()[c];
    int a = e.vec->alpha;
    // V_1^a -> 2 W0 (x) Obar_2^a ^ ., V_2^a -> -2 W0 (x) Obar_1^a ^ .
    GaussRat coef = e.vec->i == 1 ? 2 : -2;
    std::vector<FormIndex> forms = {{e.vec->i == 1 ? 2 : 1, a}, e.forms[0]};
    int sign = sort_wedge(forms);
    if (sign == 0) continue;
    coef *= GaussRat(sign);
    for (int vi = 1; vi <= 2; ++vi) {
      CohoElement img{e.k + (vi == 1 ? 1 : 0), 3, VecIndex{vi, m + 1}, forms};
      mat.add_to(cod.at(img), c, coef);
    }
  }
  return mat;
}

std::string family_name(EFamily f) {
  switch (f) {
    case EFamily::HV: return "HV";
    case EFamily::ker1_sym12: return "ker1_sym12";
    case EFamily::ker1_sym21: return "ker1_sym21";
    case EFamily::ker1_diag: return "ker1_diag";
  }
  return "?";
}

std::optional<EFamily> family_from_name(const std::string& s) {
  for (EFamily f : {EFamily::HV, EFamily::ker1_sym12, EFamily::ker1_sym21, EFamily::ker1_diag})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

std::string EBasisElement::label() const {
  std::ostringstream os;
  os << lambda_str(k, 2) << "*";
  switch (family) {
    case EFamily::HV: os << "V" << i << "^" << alpha << "*Ob" << j << "^" << beta; break;
    case EFamily::ker1_sym12: os << "(V1^" << a << "*Ob2^" << b << "+V1^" << b << "*Ob2^" << a << ")"; break;
    case EFamily::ker1_sym21: os << "(V2^" << a << "*Ob1^" << b << "+V2^" << b << "*Ob1^" << a << ")"; break;
    case EFamily::ker1_diag: os << "(V1^" << a << "*Ob1^" << b << "-V2^" << b << "*Ob2^" << a << ")"; break;
  }
  return os.str();
}

void EBasisElement::validate(int m) const {
  auto bad = [&](const std::string& why) { return std::invalid_argument(label() + ": " + why); };
  if (k < 0 || k > 2) throw bad("k must be 0, 1 or 2");
  if (family == EFamily::HV) {
    if (i < 1 || i > 2 || j < 1 || j > 2) throw bad("i and j must be 1 or 2");
    if (alpha != m + 1) throw bad("alpha must equal m+1 for the HV family");
    if (beta < 1 || beta > m + 1) throw bad("beta out of range");
  } else {
    if (a < 1 || a > m || b < 1 || b > m) throw bad("a and b must lie in 1..m");
    if (family != EFamily::ker1_diag && a > b) throw bad("symmetric families need a <= b");
  }
}

EBasisElement EBasisElement::pattern() const {
  EBasisElement p = *this;
  p.k = 0;
  return p;
}

std::vector<std::pair<GaussRat, CohoElement>> EBasisElement::expand() const {
  std::vector<std::pair<GaussRat, CohoElement>> out;
  auto add = [&](const GaussRat& c, int vi, int va, int fj, int fb) {
    CohoElement e = h1(k, {vi, va}, {fj, fb});
    for (auto& [x, f] : out)
      if (f == e) {
        x += c;
        return;
      }
    out.emplace_back(c, e);
  };
  switch (family) {
    case EFamily::HV: add(1, i, alpha, j, beta); break;
    case EFamily::ker1_sym12:
      add(1, 1, a, 2, b);
      add(1, 1, b, 2, a);
      break;
    case EFamily::ker1_sym21:
      add(1, 2, a, 1, b);
      add(1, 2, b, 1, a);
      break;
    case EFamily::ker1_diag:
      add(1, 1, a, 1, b);
      add(-1, 2, b, 2, a);
      break;
  }
  return out;
}

static auto ekey(const EBasisElement& e) {
  return std::make_tuple(static_cast<int>(e.family), e.k, e.i, e.alpha, e.j, e.beta, e.a, e.b);
}
bool operator<(const EBasisElement& x, const EBasisElement& y) { return ekey(x) < ekey(y); }
bool operator==(const EBasisElement& x, const EBasisElement& y) { return ekey(x) == ekey(y); }

std::vector<EBasisElement> e_space_patterns(int m) {
  std::vector<EBasisElement> out;
  for (int beta = 1; beta <= m + 1; ++beta)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        EBasisElement e;
        e.family = EFamily::HV;
        e.i = i;
        e.alpha = m + 1;
        e.j = j;
        e.beta = beta;
        out.push_back(e);
      }
  for (EFamily f : {EFamily::ker1_sym12, EFamily::ker1_sym21, EFamily::ker1_diag})
    for (int a = 1; a <= m; ++a)
      for (int b = (f == EFamily::ker1_diag ? 1 : a); b <= m; ++b) {
        EBasisElement e;
        e.family = f;
        e.a = a;
        e.b = b;
        out.push_back(e);
      }
  return out;
}

std::vector<EBasisElement> e_space_basis(int m) {
  std::vector<EBasisElement> out;
  for (int k = 2; k >= 0; --k)
    for (EBasisElement e : e_space_patterns(m)) {
      e.k = k;
      out.push_back(e);
    }
  return out;
}

std::size_t e_space_dimension_formula(int m) {
  std::size_t mm = static_cast<std::size_t>(m);
  return 3 * (4 * (mm + 1) + mm * (2 * mm + 1));
}

std::size_t tensor_slot(int m, int i, int alpha, int j, int beta) {
  std::size_t n = static_cast<std::size_t>(m + 1);
  std::size_t v = static_cast<std::size_t>(alpha - 1) * 2 + static_cast<std::size_t>(i - 1);
  std::size_t f = static_cast<std::size_t>(beta - 1) * 2 + static_cast<std::size_t>(j - 1);
  return v * 2 * n + f;
}

std::size_t tensor_slot_count(int m) {
  std::size_t n = static_cast<std::size_t>(2 * (m + 1));
  return n * n;
}

TensorIndex tensor_index(int m, std::size_t slot) {
  std::size_t n = static_cast<std::size_t>(2 * (m + 1));
  std::size_t v = slot / n, f = slot % n;
  return {static_cast<int>(v % 2) + 1, static_cast<int>(v / 2) + 1, static_cast<int>(f % 2) + 1,
          static_cast<int>(f / 2) + 1};
}

ExactVector pattern_vector(int m, const EBasisElement& e) {
  ExactVector v(tensor_slot_count(m));
  for (const auto& [c, el] : e.expand())
    v[tensor_slot(m, el.vec->i, el.vec->alpha, el.forms[0].j, el.forms[0].beta)] += c;
  return v;
}

H1Decomposition assemble_H1_W_D(int m) {
  H1Decomposition r;
  GradedSpace hv = basis_space({SpaceKind::W_V, 1}, m);
  ExactMatrix d0 = delta0_map(m);
  r.h1_v = hv.dim();
  r.rank_delta0 = rank(d0);

  std::vector<ExactVector> image;
  for (std::size_t c = 0; c < d0.cols(); ++c) image.push_back(d0.column(c));
  r.image_avoids_top_forms = true;
  std::size_t top = 0;
  for (std::size_t row = 0; row < hv.dim(); ++row) {
    const CohoElement& e = hv.basis()[row];
    if (e.forms[0].beta == m + 1) {
      ++top;
      r.coker_double_prime_basis.push_back(e);
      for (const auto& col : image)
        if (!col[row].is_zero()) r.image_avoids_top_forms = false;
    }
  }
  r.coker_double_prime = top;
  r.coker_prime = hv.dim() - top - r.rank_delta0;

  // Displayed representatives of coker': together with im delta_0 they must
  // span every monomial with beta <= m.
  std::vector<ExactVector> comp;
  auto mono = [&](int k, int vi, int j, int a) {
    ExactVector v(hv.dim());
    v[hv.at(h1(k, {vi, m + 1}, {j, a}))] = 1;
    return v;
  };
  for (int a = 1; a <= m; ++a)
    for (int j = 1; j <= 2; ++j) {
      for (int li = 1; li <= 2; ++li) {
        // (lambda_1 V_1 - lambda_2 V_2) lambda_li Obar_j^a
        int lam = li == 1 ? 1 : 0;
        ExactVector v = mono(1 + lam, 1, j, a);
        ExactVector w = mono(lam, 2, j, a);
        for (std::size_t x = 0; x < v.size(); ++x) v[x] -= w[x];
        comp.push_back(v);
      }
      comp.push_back(mono(0, 1, j, a));
      comp.push_back(mono(2, 2, j, a));
    }
  std::vector<ExactVector> all = image;
  all.insert(all.end(), comp.begin(), comp.end());
  r.complement_spans = rank_of(comp, hv.dim()) == static_cast<std::size_t>(8 * m) &&
                       rank_of(all, hv.dim()) == hv.dim() - top;

  ExactMatrix d1 = delta1_map(m);
  auto ker = kernel_basis(d1);
  r.kernel_delta1 = ker.size();
  GradedSpace dom = basis_space({SpaceKind::W_PsiD, 1}, m);
  std::vector<ExactVector> fam;
  for (const auto& e : e_space_basis(m)) {
    if (e.family == EFamily::HV) continue;
    ExactVector v(dom.dim());
    for (const auto& [c, el] : e.expand()) v[dom.at(el)] += c;
    fam.push_back(v);
  }
  r.kernel_matches_families = same_span(ker, fam, dom.dim());
  r.total = r.coker_double_prime + r.coker_prime + r.kernel_delta1;
  return r;
}

QuaternionicReport quaternionic_sequence(int m) {
  QuaternionicReport q;
  // Ambient for H^1(W, D_W) representatives: H^1(W, V) followed by H^1(W, Psi*D_Z).
  GradedSpace hv = basis_space({SpaceKind::W_V, 1}, m);
  GradedSpace hp = basis_space({SpaceKind::W_PsiD, 1}, m);
  const std::size_t n = hv.dim() + hp.dim();
  auto slot = [&](const CohoElement& e) {
    if (auto i = hv.index_of(e)) return *i;
    return hv.dim() + hp.at(e);
  };
  ExactMatrix d0 = delta0_map(m);
  std::vector<ExactVector> base;
  for (std::size_t c = 0; c < d0.cols(); ++c) {
    ExactVector v(n);
    for (std::size_t r = 0; r < d0.rows(); ++r) v[r] = d0.at(r, c);
    base.push_back(v);
  }
  // lambda_1^{2-l} lambda_2^l sum_alpha (Obar_2^alpha V_1^alpha - Obar_1^alpha V_2^alpha)
  std::vector<ExactVector> images;
  q.entries_per_image = 0;
  for (int l = 0; l <= 2; ++l) {
    ExactVector v(n);
    for (int alpha = 1; alpha <= m + 1; ++alpha) {
      v[slot(h1(2 - l, {1, alpha}, {2, alpha}))] += 1;
      v[slot(h1(2 - l, {2, alpha}, {1, alpha}))] -= 1;
    }
    std::size_t nz = 0;
    for (const auto& x : v)
      if (!x.is_zero()) ++nz;
    q.entries_per_image = std::max(q.entries_per_image, nz);
    images.push_back(v);
  }
  // Components with alpha <= m must be delta_1-closed to define classes.
  ExactMatrix d1 = delta1_map(m);
  bool closed = true;
  for (const auto& v : images) {
    ExactVector part(hp.dim());
    for (std::size_t i = 0; i < hp.dim(); ++i) part[i] = v[hv.dim() + i];
    if (!is_zero_vector(d1.apply(part))) closed = false;
  }
  std::vector<ExactVector> all = base;
  all.insert(all.end(), images.begin(), images.end());
  q.rank_delta0_q = rank_of(all, n) - rank_of(base, n);
  q.delta0_q_injective = closed && q.rank_delta0_q == 3;

  // Degree-one images: lambda^3 Obar_k^gamma -> lambda^3 sum_alpha (Obar_2^alpha ^ Obar_k^gamma V_1^alpha - ...),
  // checked for independence as representatives.
  GradedSpace src = basis_space({SpaceKind::W_O, 1, 2}, m);
  std::map<CohoElement, std::size_t> target;
  std::vector<std::vector<std::pair<std::size_t, GaussRat>>> cols;
  for (const auto& e : src.basis()) {
    std::vector<std::pair<std::size_t, GaussRat>> col;
    for (int alpha = 1; alpha <= m + 1; ++alpha)
      for (int vi = 1; vi <= 2; ++vi) {
        std::vector<FormIndex> forms = {{vi == 1 ? 2 : 1, alpha}, e.forms[0]};
        int sign = sort_wedge(forms);
        if (sign == 0) continue;
        CohoElement img{e.k, 3, VecIndex{vi, alpha}, forms};
        auto [it, ins] = target.emplace(img, target.size());
        col.emplace_back(it->second, GaussRat(vi == 1 ? sign : -sign));
      }
    cols.push_back(col);
  }
  RowReducer red(target.size());
  for (const auto& col : cols) {
    SparseRow row(col.begin(), col.end());
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    red.add(row);
  }
  q.delta1_q_injective = red.rank() == src.dim();
  q.h1_theta = assemble_H1_W_D(m).total - q.rank_delta0_q;
  return q;
}

TorusReport torus_dims(int m) {
  TorusReport t;
  t.h0_dz = basis_space({SpaceKind::Z_D, 0}, m).dim();
  GradedSpace h1z = basis_space({SpaceKind::Z_D, 1}, m);
  t.h1_dz = h1z.dim();
  std::vector<ExactVector> images;
  for (int l = 0; l <= 2; ++l) {
    ExactVector v(h1z.dim());
    for (int a = 1; a <= m; ++a) {
      v[h1z.at(h1(2 - l, {1, a}, {2, a}))] += 1;
      v[h1z.at(h1(2 - l, {2, a}, {1, a}))] -= 1;
    }
    images.push_back(v);
  }
  t.quaternionic = t.h1_dz - rank_of(images, h1z.dim());
  return t;
}

}  // namespace nilquat
