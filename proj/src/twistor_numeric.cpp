#include <cmath>
#include <complex>
#include <random>

#include "nilquat/coords.hpp"
#include "nilquat/twistor.hpp"

namespace nilquat {

namespace {

using cd = std::complex<double>;

// Values and first derivatives in the coordinates (x, y, z, e, s, t), mu = s + i t.
struct Jet {
  std::vector<cd> v;
  std::vector<std::vector<cd>> d;  // d[l][c] = d_l v^c
};

struct ScalarData {
  SphereScalar g, g_mu, g_mubar;
};

ScalarData scalar_data(const SphereScalar& g) { return {g, g.d_dmu(), g.d_dmubar()}; }

struct ScalarJet {
  cd v, ds, dt;
};

ScalarJet eval(const ScalarData& s, cd mu) {
  cd a = s.g_mu.eval(mu), b = s.g_mubar.eval(mu);
  return {s.g.eval(mu), a + b, cd(0, 1) * (a - b)};
}

class Realizer {
 public:
  explicit Realizer(int m) : m_(m), nc_(static_cast<std::size_t>(cv::count(m))), n_(nc_ + 2) {
    auto fields = left_invariant_fields(m);
    auto coframe = invariant_coframe(m);
    const std::size_t na = fields.size();
    lf_.assign(na, std::vector<CoordPoly>(nc_));
    dlf_.assign(na, std::vector<std::vector<CoordPoly>>(nc_, std::vector<CoordPoly>(nc_)));
    th_.assign(na, std::vector<CoordPoly>(nc_, CoordPoly(cv::count(m))));
    dth_.assign(na, std::vector<std::vector<CoordPoly>>(nc_, std::vector<CoordPoly>(nc_)));
    for (std::size_t k = 0; k < na; ++k) {
      for (std::size_t c = 0; c < nc_; ++c) lf_[k][c] = fields[k].comp[c];
      for (const auto& [idx, poly] : coframe[k].comp) th_[k][static_cast<std::size_t>(idx[0])] = poly;
      for (std::size_t l = 0; l < nc_; ++l)
        for (std::size_t c = 0; c < nc_; ++c) {
          dlf_[k][l][c] = lf_[k][c].derivative(static_cast<int>(l));
          dth_[k][l][c] = th_[k][c].derivative(static_cast<int>(l));
        }
    }
  }

  std::size_t size() const { return n_; }

  Jet field(const ChartField& f, const std::vector<double>& p, cd mu) const {
    Jet j{std::vector<cd>(n_), std::vector<std::vector<cd>>(n_, std::vector<cd>(n_))};
    for (std::size_t k = 0; k < f.alg.size(); ++k) {
      if (f.alg[k].is_zero()) continue;
      ScalarJet g = eval(scalar_data(f.alg[k]), mu);
      for (std::size_t c = 0; c < nc_; ++c) {
        if (lf_[k][c].is_zero()) continue;
        cd val = lf_[k][c].eval(p);
        j.v[c] += g.v * val;
        j.d[nc_][c] += g.ds * val;
        j.d[nc_ + 1][c] += g.dt * val;
        for (std::size_t l = 0; l < nc_; ++l)
          if (!dlf_[k][l][c].is_zero()) j.d[l][c] += g.v * dlf_[k][l][c].eval(p);
      }
    }
    // d/dmu = (d_s - i d_t)/2, d/dmubar = (d_s + i d_t)/2
    const cd half(0.5, 0), ihalf(0, 0.5);
    for (int which = 0; which < 2; ++which) {
      const SphereScalar& a = which == 0 ? f.dmu : f.dmubar;
      if (a.is_zero()) continue;
      ScalarJet g = eval(scalar_data(a), mu);
      cd ts = half, tt = which == 0 ? -ihalf : ihalf;
      j.v[nc_] += ts * g.v;
      j.v[nc_ + 1] += tt * g.v;
      j.d[nc_][nc_] += ts * g.ds;
      j.d[nc_ + 1][nc_] += ts * g.dt;
      j.d[nc_][nc_ + 1] += tt * g.ds;
      j.d[nc_ + 1][nc_ + 1] += tt * g.dt;
    }
    return j;
  }

  Jet form(const ChartForm& f, const std::vector<double>& p, cd mu) const {
    Jet j{std::vector<cd>(n_), std::vector<std::vector<cd>>(n_, std::vector<cd>(n_))};
    for (std::size_t k = 0; k < f.alg.size(); ++k) {
      if (f.alg[k].is_zero()) continue;
      ScalarJet g = eval(scalar_data(f.alg[k]), mu);
      for (std::size_t c = 0; c < nc_; ++c) {
        if (th_[k][c].is_zero()) continue;
        cd val = th_[k][c].eval(p);
        j.v[c] += g.v * val;
        j.d[nc_][c] += g.ds * val;
        j.d[nc_ + 1][c] += g.dt * val;
        for (std::size_t l = 0; l < nc_; ++l)
          if (!dth_[k][l][c].is_zero()) j.d[l][c] += g.v * dth_[k][l][c].eval(p);
      }
    }
    if (!f.dmubar.is_zero()) {
      // dmubar = ds - i dt
      ScalarJet g = eval(scalar_data(f.dmubar), mu);
      const cd mi(0, -1);
      j.v[nc_] += g.v;
      j.v[nc_ + 1] += mi * g.v;
      j.d[nc_][nc_] += g.ds;
      j.d[nc_ + 1][nc_] += g.dt;
      j.d[nc_][nc_ + 1] += mi * g.ds;
      j.d[nc_ + 1][nc_ + 1] += mi * g.dt;
    }
    return j;
  }

 private:
  int m_;
  std::size_t nc_, n_;
  std::vector<std::vector<CoordPoly>> lf_, th_;
  std::vector<std::vector<std::vector<CoordPoly>>> dlf_, dth_;
};

double diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

NumericCrosscheck numeric_crosscheck(const TwistorEngine& eng, std::size_t trials, std::uint64_t seed) {
  const int m = eng.m();
  Realizer R(m);
  const std::size_t n = R.size();
  auto frames = eng.frame_symbols();
  auto forms = eng.form_symbols();

  std::map<std::pair<FrameSymbol, FrameSymbol>, ChartField> brackets;
  for (const auto& a : frames)
    for (const auto& b : frames) brackets.emplace(std::make_pair(a, b), eng.realize(eng.frame_bracket(a, b)));
  std::map<std::pair<FrameSymbol, FormSymbol>, std::pair<ChartForm, ChartForm>> lie;
  for (const auto& v : frames)
    if (v.kind == FrameKind::holo)
      for (const auto& f : forms)
        lie.emplace(std::make_pair(v, f), std::make_pair(eng.realize_form(eng.lie_derivative_form(v, f)),
                                                         eng.realize_form(eng.lie_derivative_form_derived(v, f))));

  NumericCrosscheck out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> p(static_cast<std::size_t>(cv::count(m)));
    for (auto& x : p) x = unit(rng);
    cd mu(1.5 * unit(rng), 1.5 * unit(rng));
    std::map<FrameSymbol, Jet> fj;
    for (const auto& s : frames) fj.emplace(s, R.field(eng.realize(s), p, mu));
    std::map<FormSymbol, Jet> wj;
    for (const auto& f : forms) wj.emplace(f, R.form(eng.realize_form(f), p, mu));

    for (const auto& a : frames)
      for (const auto& b : frames) {
        const Jet &U = fj.at(a), &V = fj.at(b);
        std::vector<cd> br(n);
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t l = 0; l < n; ++l) br[c] += U.v[l] * V.d[l][c] - V.v[l] * U.d[l][c];
        out.frame_bracket = std::max(out.frame_bracket, diff(br, R.field(brackets.at({a, b}), p, mu).v));
      }

    for (const auto& [key, tables] : lie) {
      const Jet &V = fj.at(key.first), &W = wj.at(key.second);
      // (L_V w)_c = V^l d_l w_c + w_l d_c V^l
      std::vector<cd> lv(n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t l = 0; l < n; ++l) lv[c] += V.v[l] * W.d[l][c] + W.v[l] * V.d[c][l];
      out.lie_derivative = std::max(out.lie_derivative, diff(lv, R.form(tables.first, p, mu).v));
      out.lie_derivative = std::max(out.lie_derivative, diff(lv, R.form(tables.second, p, mu).v));
    }

    for (const auto& f : forms) {
      const Jet& W = wj.at(f);
      FrameSymbol dual = f.kind == FormKind::dmu_bar ? FrameSymbol::d_mubar() : FrameSymbol::antiholo(f.j, f.beta);
      for (const auto& s : frames) {
        cd pairing;
        for (std::size_t c = 0; c < n; ++c) pairing += W.v[c] * fj.at(s).v[c];
        out.duality = std::max(out.duality, std::abs(pairing - cd(s == dual ? 1.0 : 0.0)));
      }
      for (const auto& a : frames) {
        if (a.is_10()) continue;
        for (const auto& b : frames) {
          if (b.is_10()) continue;
          const Jet &U = fj.at(a), &V = fj.at(b);
          cd dw;
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) dw += (W.d[k][l] - W.d[l][k]) * U.v[k] * V.v[l];
          out.sigma_holomorphy = std::max(out.sigma_holomorphy, std::abs(dw));
        }
      }
    }
    ++out.samples;
  }
  return out;
}

}  // namespace nilquat
