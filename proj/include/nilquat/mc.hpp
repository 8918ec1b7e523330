#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nilquat/twistor.hpp"

namespace nilquat {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Constant coefficients on E-basis elements.
struct DeformationParam {
  int m = 1;
  std::vector<std::pair<EBasisElement, GaussRat>> terms;
};

// Accepts a JSON list of {family, k, i, alpha, j, beta, a, b, re, im};
// index fields not used by the family may be omitted. Throws ParamError.
DeformationParam parse_deformation_param(const nlohmann::json& j, int m);
nlohmann::json to_json(const DeformationParam& p);
GammaE to_gamma(const DeformationParam& p);
DeformationParam scaled(const DeformationParam& p, const GaussRat& c);
DeformationParam random_deformation_param(int m, std::size_t support, std::uint64_t seed);

constexpr int kMaxMcOrder = 12;

struct MCSeries {
  int m = 1;
  int order = 0;
  std::vector<GammaE> coeffs;            // coeffs[n-1] for Phi_n
  std::vector<VectorValuedForm> terms;   // chart realization of coeffs
};

// Phi_1 = chart(phi1); dbar Phi_{n+1} = -1/2 sum_{i=1}^n {Phi_i, Phi_{n+1-i}},
// each Phi_{n+1} taken in Gamma^0 (x) E. Throws std::invalid_argument for an
// order outside 1..kMaxMcOrder and DecompositionError if a right side leaves the image.
MCSeries solve_mc(const TwistorEngine& eng, const DeformationParam& phi1, int order);

// Coefficient of t^n in dbar Phi + 1/2 {Phi, Phi}, n = 1..order.
std::vector<VectorValuedForm> mc_residual(const TwistorEngine& eng, const MCSeries& s);
bool residual_vanishes(const std::vector<VectorValuedForm>& r);

// Every Phi_n is a combination of chart-restricted E patterns with coefficients
// (1+t) c that are O(2)-regular at mu = infinity; recomputed from the chart terms.
bool check_invariance(const MCSeries& s);
// Every vector slot is a holomorphic frame field d_i^alpha (annihilated by dp_W).
bool check_holomorphic_projection(const MCSeries& s);

struct NormGrowth {
  std::vector<double> norms;   // sampled sup-norm of each Phi_n
  std::vector<double> ratios;  // norms[n+1] / norms[n], 0 when norms[n] is 0
};
NormGrowth norm_growth(const MCSeries& s, std::size_t samples, std::uint64_t seed);

nlohmann::json series_to_json(const MCSeries& s);

}  // namespace nilquat
