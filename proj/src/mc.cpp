#include "nilquat/mc.hpp"

#include <cmath>
#include <random>

#include "nilquat/coords.hpp"

namespace nilquat {

namespace {

int required_int(const nlohmann::json& o, const char* key, std::size_t idx) {
  if (!o.contains(key)) throw ParamError("term " + std::to_string(idx) + ": missing field '" + key + "'");
  if (!o.at(key).is_number_integer())
    throw ParamError("term " + std::to_string(idx) + ": field '" + key + "' must be an integer");
  return o.at(key).get<int>();
}

mpq_class rational_field(const nlohmann::json& o, const char* key, std::size_t idx) {
  if (!o.contains(key)) return 0;
  const auto& v = o.at(key);
  try {
    if (v.is_string()) return GaussRat::parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(mpz_class(v.get<long>()));
  } catch (const std::invalid_argument& e) {
    throw ParamError("term " + std::to_string(idx) + ": field '" + key + "': " + e.what());
  }
  throw ParamError("term " + std::to_string(idx) + ": field '" + key + "' must be a rational string \"p/q\"");
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

SphereScalar one_plus_t() { return SphereScalar(SphereScalar::Numerator{{{0, 0}, 1}, {{1, 1}, 1}}, 0); }

}  // namespace

DeformationParam parse_deformation_param(const nlohmann::json& j, int m) {
  if (m < 1) throw ParamError("m must be at least 1");
  const nlohmann::json& list = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!list.is_array()) throw ParamError("deformation parameter must be a JSON list of terms");
  DeformationParam p;
  p.m = m;
  for (std::size_t idx = 0; idx < list.size(); ++idx) {
    const auto& o = list[idx];
    if (!o.is_object()) throw ParamError("term " + std::to_string(idx) + " is not an object");
    std::string fam = o.contains("family") && o.at("family").is_string() ? o.at("family").get<std::string>() : "";
    auto f = family_from_name(fam);
    if (!f) throw ParamError("term " + std::to_string(idx) + ": unknown family '" + fam + "'");
    EBasisElement e;
    e.family = *f;
    e.k = required_int(o, "k", idx);
    if (*f == EFamily::HV) {
      e.i = required_int(o, "i", idx);
      e.alpha = required_int(o, "alpha", idx);
      e.j = required_int(o, "j", idx);
      e.beta = required_int(o, "beta", idx);
    } else {
      e.a = required_int(o, "a", idx);
      e.b = required_int(o, "b", idx);
    }
    try {
      e.validate(m);
    } catch (const std::invalid_argument& err) {
      throw ParamError("term " + std::to_string(idx) + ": " + err.what());
    }
    GaussRat c(rational_field(o, "re", idx), rational_field(o, "im", idx));
    if (!c.is_zero()) p.terms.emplace_back(e, c);
  }
  return p;
}

nlohmann::json to_json(const DeformationParam& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms) {
    nlohmann::json o{{"family", family_name(e.family)}, {"k", e.k}};
    if (e.family == EFamily::HV) {
      o["i"] = e.i;
      o["alpha"] = e.alpha;
      o["j"] = e.j;
      o["beta"] = e.beta;
    } else {
      o["a"] = e.a;
      o["b"] = e.b;
    }
    o["re"] = rational_str(c.re());
    o["im"] = rational_str(c.im());
    out.push_back(o);
  }
  return out;
}

GammaE to_gamma(const DeformationParam& p) {
  GammaE g;
  for (const auto& [e, c] : p.terms) {
    auto [it, ins] = g.emplace(e, SphereScalar());
    it->second += SphereScalar(c);
    if (it->second.is_zero()) g.erase(it);
  }
  return g;
}

DeformationParam scaled(const DeformationParam& p, const GaussRat& c) {
  DeformationParam out = p;
  for (auto& [e, x] : out.terms) x *= c;
  return out;
}

DeformationParam random_deformation_param(int m, std::size_t support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto basis = e_space_basis(m);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  DeformationParam p;
  p.m = m;
  for (std::size_t s = 0; s < support; ++s) {
    GaussRat c(random_rational(rng, 5, 4).re(), random_rational(rng, 5, 4).re());
    if (c.is_zero()) c = 1;
    p.terms.emplace_back(basis[pick(rng)], c);
  }
  return p;
}

MCSeries solve_mc(const TwistorEngine& eng, const DeformationParam& phi1, int order) {
  if (order < 1 || order > kMaxMcOrder)
    throw std::invalid_argument("order must lie in 1.." + std::to_string(kMaxMcOrder));
  if (phi1.m != eng.m()) throw std::invalid_argument("deformation parameter and engine disagree on m");
  MCSeries s;
  s.m = eng.m();
  s.order = order;
  s.coeffs.push_back(to_gamma(phi1));
  s.terms.push_back(realize(s.coeffs[0], s.m));
  const SphereScalar minus_half(GaussRat::frac(-1, 2));
  for (int n = 1; n < order; ++n) {
    VectorValuedForm rhs(2);
    for (int i = 1; i <= n; ++i) {
      int j = n + 1 - i;
      if (i > j) break;
      VectorValuedForm br = eng.nijenhuis_bracket(s.terms[static_cast<std::size_t>(i - 1)],
                                                  s.terms[static_cast<std::size_t>(j - 1)]);
      // The bracket is symmetric, so (i, j) and (j, i) contribute equally.
      rhs += (i == j ? minus_half : SphereScalar(-1)) * br;
    }
    GammaE next = solve_dbar_in_E(eng, rhs);
    s.terms.push_back(realize(next, s.m));
    s.coeffs.push_back(std::move(next));
  }
  return s;
}

std::vector<VectorValuedForm> mc_residual(const TwistorEngine& eng, const MCSeries& s) {
  std::vector<VectorValuedForm> out;
  const SphereScalar half(GaussRat::frac(1, 2));
  for (int n = 1; n <= s.order; ++n) {
    VectorValuedForm r = eng.dbar_apply(s.terms[static_cast<std::size_t>(n - 1)]);
    for (int i = 1; i < n; ++i)
      r += half * eng.nijenhuis_bracket(s.terms[static_cast<std::size_t>(i - 1)],
                                        s.terms[static_cast<std::size_t>(n - i - 1)]);
    out.push_back(std::move(r));
  }
  return out;
}

bool residual_vanishes(const std::vector<VectorValuedForm>& r) {
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool check_invariance(const MCSeries& s) {
  const int m = s.m;
  std::vector<EBasisElement> patterns = e_space_patterns(m);
  std::vector<ExactVector> cols;
  for (const auto& p : patterns) cols.push_back(pattern_vector(m, p));
  ExactMatrix pmat = ExactMatrix::from_columns(cols, tensor_slot_count(m));
  for (const auto& phi : s.terms) {
    if (phi.is_zero()) continue;
    if (phi.degree() != 1) return false;
    std::map<std::size_t, SphereScalar> lifted;
    int n = 0;
    for (const auto& [key, c] : phi.terms()) {
      const auto& [V, forms] = key;
      if (V.kind != FrameKind::holo || forms[0].kind != FormKind::sigma_bar) return false;
      if (V.alpha < 1 || V.alpha > m + 1 || forms[0].beta < 1 || forms[0].beta > m + 1) return false;
      SphereScalar C = c * one_plus_t();
      n = std::max(n, C.denominator_power());
      lifted.emplace(tensor_slot(m, V.i, V.alpha, forms[0].j, forms[0].beta), C);
    }
    std::map<SphereScalar::Exponent, ExactVector> by_mono;
    for (const auto& [slot, C] : lifted)
      for (const auto& [e, x] : C.numerator_at(n)) {
        auto [it, ins] = by_mono.emplace(e, ExactVector(tensor_slot_count(m)));
        it->second[slot] = x;
      }
    std::vector<SphereScalar> h(patterns.size());
    for (const auto& [e, vec] : by_mono) {
      auto x = solve(pmat, vec);
      if (!x) return false;
      for (std::size_t p = 0; p < patterns.size(); ++p)
        if (!(*x)[p].is_zero()) h[p] += SphereScalar::monomial(e.first, e.second, (*x)[p], n);
    }
    for (const auto& hp : h)
      if (!is_smooth_on_sphere(hp, SmoothKind::o2_section)) return false;
  }
  return true;
}

bool check_holomorphic_projection(const MCSeries& s) {
  for (const auto& phi : s.terms)
    for (const auto& [key, c] : phi.terms())
      if (key.first.kind != FrameKind::holo) return false;
  return true;
}

NormGrowth norm_growth(const MCSeries& s, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::complex<double>> pts;
  for (std::size_t i = 0; i < samples; ++i) {
    // Uniform on the sphere, pushed to the chart.
    double z = unit(rng), phi = 3.141592653589793 * unit(rng);
    double r = std::sqrt((1 + z) / std::max(1e-12, 1 - z));
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
  }
  NormGrowth g;
  for (const auto& phi : s.terms) {
    double best = 0;
    for (const auto& mu : pts)
      for (const auto& [key, c] : phi.terms()) best = std::max(best, std::abs(c.eval(mu)));
    g.norms.push_back(best);
  }
  for (std::size_t n = 0; n + 1 < g.norms.size(); ++n)
    g.ratios.push_back(g.norms[n] == 0 ? 0.0 : g.norms[n + 1] / g.norms[n]);
  return g;
}

nlohmann::json series_to_json(const MCSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.coeffs[n]) terms.push_back({{"element", e.label()}, {"coefficient", c.str()}});
    out.push_back({{"order", n + 1}, {"terms", terms}});
  }
  return out;
}

}  // namespace nilquat
