#include "nilquat/suites.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nilquat/automorphisms.hpp"
#include "nilquat/cohomology.hpp"
#include "nilquat/coords.hpp"
#include "nilquat/hypercomplex.hpp"
#include "nilquat/mc.hpp"
#include "nilquat/twistor.hpp"

namespace nilquat {

namespace {

std::size_t sz(int m) { return static_cast<std::size_t>(m); }

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

std::string compare(std::size_t got, std::size_t want) { return cat("computed ", got, ", expected ", want); }

// ---------------------------------------------------------------- algebra

void algebra_suite(Report& r, int m) {
  const LieAlgebra a = make_heisenberg_ext(m);
  const std::size_t n = a.dim();

  auto jac = check_jacobi(a);
  r.expect("algebra.jacobi", "cyclic Jacobi sum vanishes on all basis triples", !jac.has_value(),
           jac ? cat("fails at (", a.label(jac->triple[0]), ", ", a.label(jac->triple[1]), ", ",
                     a.label(jac->triple[2]), ")")
               : cat(n * n * n, " ordered triples"));

  auto center = center_subspace(a);
  std::vector<AlgVector> central = {a.basis_vector(hx::Z), a.basis_vector(hx::E(1)), a.basis_vector(hx::E(2)),
                                    a.basis_vector(hx::E(3))};
  r.expect("algebra.center_dim", "center spanned by Z, E1, E2, E3",
           center.size() == 4 && same_span(center, central, n), compare(center.size(), 4));

  auto derived = derived_ideal(a);
  r.expect("algebra.derived_dim", "derived ideal spanned by Z",
           derived.size() == 1 && same_span(derived, {a.basis_vector(hx::Z)}, n), compare(derived.size(), 1));

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgVector want = a.zero();
      for (int k = 1; k <= 2 * m; ++k) {
        if (i == hx::Y(m, k) && j == hx::X(m, k)) want[hx::Z] = 4;
        if (i == hx::X(m, k) && j == hx::Y(m, k)) want[hx::Z] = -4;
      }
      if (bracket(a, a.basis_vector(i), a.basis_vector(j)) != want) ++mismatches;
    }
  r.expect("algebra.bracket_table", "[Y_j, X_k] = 4 delta_jk Z and all other basis brackets vanish", mismatches == 0,
           cat(mismatches, " mismatching ordered pairs of ", n * n));

  std::size_t der = derivation_dimension(a);
  std::size_t der_formula = 13 + 18 * sz(m) + 8 * sz(m) * sz(m);
  r.expect("algebra.derivation_dim", "derivation algebra has dimension 13 + 18m + 8m^2", der == der_formula,
           compare(der, der_formula));
}

// ----------------------------------------------------------- hypercomplex

void hypercomplex_suite(Report& r, int m) {
  const LieAlgebra a = make_heisenberg_ext(m);
  const HyperTriple t = standard_triple(m);
  const std::size_t n = a.dim();

  auto rel = check_quaternion_relations(t);
  r.expect("hypercomplex.quaternion_relations", "I_a^2 = -1 and I1 I2 = I3 = -I2 I1", !rel.has_value(),
           rel ? "fails: " + *rel : "");

  for (int k = 1; k <= 3; ++k) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero_vector(nijenhuis_invariant(a, t[k], a.basis_vector(i), a.basis_vector(j)))) ++bad;
    r.expect(cat("hypercomplex.nijenhuis_I", k), cat("invariant Nijenhuis tensor of I", k, " vanishes"), bad == 0,
             cat(bad, " nonzero basis pairs of ", n * n));
    r.expect(cat("hypercomplex.abelian_I", k), cat("[I", k, " v, I", k, " w] = [v, w]"),
             is_abelian_structure(a, t[k]));
  }

  ConnectionCoeffs g = obata_connection(a, t);
  r.expect("hypercomplex.obata_torsion_free", "Obata connection is torsion-free", is_torsion_free(a, g));
  for (int k = 1; k <= 3; ++k)
    r.expect(cat("hypercomplex.obata_parallel_I", k), cat("Obata connection preserves I", k), is_parallel(g, t[k]));

  std::size_t differ = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (obata_reduced(a, t, a.basis_vector(i), a.basis_vector(j)) !=
          obata_full(a, t, a.basis_vector(i), a.basis_vector(j)))
        ++differ;
  r.expect("hypercomplex.obata_reduced_full", "abelian Obata formula agrees with the general formula", differ == 0,
           cat(differ, " differing basis pairs of ", n * n));
}

// ----------------------------------------------------------------- coords

void coords_suite(Report& r, int m, std::uint64_t seed) {
  const int nv = cv::count(m);
  std::mt19937_64 rng(seed);

  std::size_t bad_assoc = 0;
  constexpr int kTriples = 100;
  for (int trial = 0; trial < kTriples; ++trial) {
    std::vector<GaussRat> p(sz(nv)), q(sz(nv)), s(sz(nv));
    for (auto* v : {&p, &q, &s})
      for (auto& c : *v) c = random_rational(rng, 9, 5);
    if (group_mul(m, group_mul(m, p, q), s) != group_mul(m, p, group_mul(m, q, s))) ++bad_assoc;
  }
  r.expect("coords.associativity", "group law is associative", bad_assoc == 0,
           cat(bad_assoc, " failures on ", kTriples, " exact random triples"));

  PolyForm want = PolyForm::zero(m, 2);
  for (int j = 1; j <= 2 * m; ++j) want.add({cv::x(m, j), cv::y(m, j)}, CoordPoly::constant(nv, 4));
  r.expect("coords.dtheta", "d theta = 4 sum dx_j ^ dy_j", ext_d(theta_form(m)) == want);

  const LieAlgebra a = make_heisenberg_ext(m);
  const auto frame = left_invariant_fields(m);
  const auto coframe = invariant_coframe(m);
  const std::size_t n = a.dim();

  std::size_t bad_struct = 0;
  for (std::size_t k = 0; k < n; ++k) {
    PolyForm rhs = PolyForm::zero(m, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        for (const auto& [kk, c] : a.basis_bracket(i, j))
          if (kk == k) rhs = rhs + CoordPoly::constant(nv, -c) * wedge(coframe[i], coframe[j]);
      }
    if (ext_d(coframe[k]) != rhs) ++bad_struct;
  }
  r.expect("coords.structure_equation", "d theta^k = -sum_{i<j} c_ij^k theta^i ^ theta^j on the invariant coframe",
           bad_struct == 0, cat(bad_struct, " failing coframe elements of ", n));

  std::size_t bad_fields = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyField want_f = PolyField::zero(m);
      for (const auto& [k, c] : a.basis_bracket(i, j))
        for (std::size_t v = 0; v < want_f.comp.size(); ++v) want_f.comp[v] += c * frame[k].comp[v];
      if (!(field_bracket(frame[i], frame[j]) == want_f)) ++bad_fields;
    }
  r.expect("coords.field_brackets", "left-invariant coordinate fields realize the structure constants",
           bad_fields == 0, cat(bad_fields, " mismatching ordered pairs"));

  std::size_t bad_dual = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pair(coframe[i], frame[j]) != CoordPoly::constant(nv, i == j ? 1 : 0)) ++bad_dual;
  r.expect("coords.coframe_duality", "invariant coframe is dual to the invariant frame", bad_dual == 0);

  r.expect("coords.left_translation", "left translation carries the frame at the identity to the invariant fields",
           verify_left_translation(m));

  auto q = verify_quaternionic_coordinates(m);
  for (int k = 1; k <= 3; ++k)
    r.expect(cat("coords.quaternionic_f", k), cat("I", k, " dz = df", k), q.ok[sz(k - 1)]);
}

// ---------------------------------------------------------------- twistor

void twistor_suite(Report& r, int m, std::uint64_t seed) {
  const TwistorEngine eng(m);

  constexpr std::size_t kTrials = 50;
  constexpr double kTol = 1e-9;
  NumericCrosscheck nc = numeric_crosscheck(eng, kTrials, seed);
  r.expect("twistor.numeric_crosscheck", "rewrite tables agree with the coordinate realization to 1e-9",
           nc.samples >= kTrials && nc.max() < kTol,
           cat("samples ", nc.samples, ", max errors: frame bracket ", nc.frame_bracket, ", lie derivative ",
               nc.lie_derivative, ", sigma holomorphy ", nc.sigma_holomorphy, ", duality ", nc.duality));

  const SphereScalar f[3] = {SphereScalar::f1(), SphereScalar::f2(), SphereScalar::f3()};
  const SphereScalar df[3] = {SphereScalar::monomial(2, 0, -1, 2), SphereScalar::monomial(0, 0, 1, 2),
                              SphereScalar::monomial(1, 0, -1, 2)};
  const char* df_text[3] = {"-mu^2", "1", "-mu"};
  for (int k = 0; k < 3; ++k) {
    SphereScalar got = f[k].d_dmubar();
    r.expect(cat("twistor.dbar_f", k + 1), cat("dbar f", k + 1, " = ", df_text[k], " dmubar / (1+|mu|^2)^2"),
             got == df[k], "computed " + got.str());
  }

  std::size_t lie_bad = 0, lie_total = 0;
  for (const auto& v : eng.frame_symbols()) {
    if (v.kind != FrameKind::holo) continue;
    for (const auto& w : eng.form_symbols()) {
      ++lie_total;
      if (eng.lie_derivative_form(v, w) != eng.lie_derivative_form_derived(v, w)) ++lie_bad;
    }
  }
  r.expect("twistor.lie_table", "Lie derivative table equals the value derived from frame brackets", lie_bad == 0,
           cat(lie_bad, " mismatches of ", lie_total));

  const SphereScalar samples[] = {f[0], f[1], f[2], SphereScalar::monomial(2, 1, 1, 2),
                                  SphereScalar::monomial(0, 2, GaussRat::i(), 1)};
  std::size_t sq_bad = 0, sq_total = 0;
  for (const auto& v : eng.frame_symbols()) {
    if (v.kind != FrameKind::holo) continue;
    for (const auto& s : samples) {
      VectorValuedForm x(0);
      x.add(s, v, {});
      ++sq_total;
      if (!eng.dbar_apply(eng.dbar_apply(x)).is_zero()) ++sq_bad;
    }
  }
  r.expect("twistor.dbar_squared", "dbar composed with dbar vanishes on holomorphic frame sections", sq_bad == 0,
           cat(sq_bad, " nonzero of ", sq_total));

  r.expect("twistor.w_tilde", "W~_k^a equals (I_k X - i I_mu I_k X) / 2 in the holomorphic frame",
           eng.verify_w_tilde());

  std::optional<std::size_t> sampled;
  if (m > 1) sampled = 200;
  BracketClosureReport cl = verify_bracket_closure(eng, sampled, seed);
  std::string cl_detail = cat(cl.pairs, sampled ? " sampled" : " (all)", " ordered pairs, ", cl.zero_brackets,
                              " zero, ", cl.failures, " not decomposable");
  if (!cl.failure_details.empty()) cl_detail += "; first: " + cl.failure_details.front();
  r.expect("twistor.bracket_closure", "every bracket of E-basis elements is dbar of a Gamma^0 (x) E element",
           cl.failures == 0, cl_detail);

  std::vector<EBasisElement> sym12, sym21, kernel, hv_top;
  for (const auto& e : e_space_basis(m)) {
    if (e.family == EFamily::ker1_sym12) sym12.push_back(e);
    if (e.family == EFamily::ker1_sym21) sym21.push_back(e);
    if (e.family != EFamily::HV) kernel.push_back(e);
    if (e.family == EFamily::HV && e.beta == m + 1) hv_top.push_back(e);
  }
  auto zero_count = [&](const std::vector<EBasisElement>& xs, const std::vector<EBasisElement>& ys) {
    std::size_t bad = 0;
    for (const auto& x : xs)
      for (const auto& y : ys)
        if (!eng.nijenhuis_bracket(chart_restrict(x, m), chart_restrict(y, m)).is_zero()) ++bad;
    return bad;
  };
  std::size_t z1 = zero_count(sym12, sym21);
  r.expect("twistor.zero_family_sym", "brackets of the two symmetric kernel families vanish", z1 == 0,
           cat(z1, " nonzero of ", sym12.size() * sym21.size()));
  std::size_t z2 = zero_count(kernel, hv_top);
  r.expect("twistor.zero_family_top", "kernel elements bracket to zero with H^1(W,V) elements of top form index",
           z2 == 0, cat(z2, " nonzero of ", kernel.size() * hv_top.size()));
}

// ------------------------------------------------------------- cohomology

void cohomology_suite(Report& r, int m) {
  const std::size_t M = sz(m);
  H1Decomposition d = assemble_H1_W_D(m);
  std::size_t h1_formula = 6 * M * M + 11 * M + 12;
  r.expect("cohomology.h1_wd", "dim H1(W,D_W) = 6m^2 + 11m + 12", d.total == h1_formula,
           cat("dim H1(W,D_W) = ", d.total, " (formula ", h1_formula, ")"));
  r.expect("cohomology.coker_double_prime", "the H^1(W,V) part outside the image of delta_0 has dimension 12",
           d.coker_double_prime == 12, compare(d.coker_double_prime, 12));
  r.expect("cohomology.coker_prime", "the remaining H^1(W,V) cokernel part has dimension 8m",
           d.coker_prime == 8 * M, compare(d.coker_prime, 8 * M));
  r.expect("cohomology.kernel_delta1", "ker delta_1 has dimension 3m(2m+1)", d.kernel_delta1 == 3 * M * (2 * M + 1),
           compare(d.kernel_delta1, 3 * M * (2 * M + 1)));
  r.expect("cohomology.kernel_span", "ker delta_1 equals the span of the three symmetric families",
           d.kernel_matches_families);

  ExactMatrix d0 = delta0_map(m);
  std::size_t r0 = rank(d0);
  r.expect("cohomology.delta0_injective", "delta_0 is injective with rank 4m", r0 == 4 * M && d0.cols() == 4 * M,
           cat("rank ", r0, " on a domain of dimension ", d0.cols()));
  r.expect("cohomology.delta0_image", "image of delta_0 has no top-index form component", d.image_avoids_top_forms);
  r.expect("cohomology.coker_complement", "displayed cokernel representatives complete the image of delta_0",
           d.complement_spans);

  std::size_t e_dim = e_space_basis(m).size();
  r.expect("cohomology.e_space_dim", "E has dimension 3(4(m+1) + m(2m+1))", e_dim == e_space_dimension_formula(m),
           compare(e_dim, e_space_dimension_formula(m)));

  QuaternionicReport q = quaternionic_sequence(m);
  std::size_t theta_formula = 6 * M * M + 11 * M + 9;
  r.expect("cohomology.h1_theta", "dim H1(W,Theta_W) = 6m^2 + 11m + 9", q.h1_theta == theta_formula,
           cat("dim H1(W,Theta_W) = ", q.h1_theta, " (formula ", theta_formula, ")"));
  r.expect("cohomology.delta0_q_injective", "H^0(W, O(2)) injects into H1(W,D_W)", q.delta0_q_injective,
           cat("rank ", q.rank_delta0_q, ", ", q.entries_per_image, " nonzero entries per image"));
  r.expect("cohomology.delta1_q_injective", "the quaternionic connecting map out of H1(W,Theta_W) is injective",
           q.delta1_q_injective);

  TorusReport tr = torus_dims(m);
  r.expect("cohomology.torus_h1", "torus quotient: dim H1(Z,D_Z) = 12m^2", tr.h1_dz == 12 * M * M,
           compare(tr.h1_dz, 12 * M * M));
  r.expect("cohomology.torus_quaternionic", "torus quotient: quaternionic deformations have dimension 12m^2 - 3",
           tr.quaternionic == 12 * M * M - 3, compare(tr.quaternionic, 12 * M * M - 3));

  TwistorEngine eng(m);
  r.expect("cohomology.delta0_gauduchon", "delta_0 from the displayed formulas equals the Gauduchon-rule recomputation",
           delta0_via_gauduchon(eng) == d0, cat(d0.rows(), " x ", d0.cols(), " entries compared"));
}

// --------------------------------------------------------------------- mc

void mc_suite(Report& r, int m, std::uint64_t seed) {
  constexpr int kOrder = 6;
  constexpr int kTrials = 5;
  const TwistorEngine eng(m);

  DeformationParam zero{m, {}};
  MCSeries zs = solve_mc(eng, zero, kOrder);
  bool trivial = std::all_of(zs.coeffs.begin(), zs.coeffs.end(), [](const GammaE& g) { return g.empty(); });
  r.expect("mc.zero_param", "zero phi_1 gives the zero series", trivial);

  for (int trial = 0; trial < kTrials; ++trial) {
    std::string id = cat("mc.trial", trial);
    DeformationParam p = random_deformation_param(m, 4, seed + static_cast<std::uint64_t>(trial));
    MCSeries s = solve_mc(eng, p, kOrder);

    auto res = mc_residual(eng, s);
    std::size_t bad = 0;
    for (const auto& x : res)
      if (!x.is_zero()) ++bad;
    r.expect(id + ".residual", "dbar Phi + 1/2 {Phi, Phi} vanishes at every order", bad == 0,
             cat("orders 1..", kOrder, ", ", bad, " nonzero; phi_1 = ", to_json(p).dump()));
    r.expect(id + ".invariance", "every Phi_n lies in Gamma^0 (x) E", check_invariance(s));
    r.expect(id + ".holomorphic_projection", "every Phi_n takes values in the kernel of dp", check_holomorphic_projection(s));

    MCSeries s2 = solve_mc(eng, scaled(p, 2), kOrder);
    bool homogeneous = true;
    GaussRat factor = 1;
    for (int n = 1; n <= kOrder; ++n) {
      factor *= 2;
      GammaE want;
      for (const auto& [e, c] : s.coeffs[sz(n - 1)]) want[e] = SphereScalar(factor) * c;
      if (want != s2.coeffs[sz(n - 1)] || SphereScalar(factor) * s.terms[sz(n - 1)] != s2.terms[sz(n - 1)])
        homogeneous = false;
    }
    r.expect(id + ".homogeneity", "phi_1 -> 2 phi_1 scales Phi_n by 2^n", homogeneous);

    if (trial == 0) {
      NormGrowth g = norm_growth(s, 64, seed);
      std::ostringstream os;
      os << "ratios";
      for (double x : g.ratios) os << " " << x;
      r.info(id + ".norm_growth", "sampled sup-norm ratios |Phi_{n+1}| / |Phi_n|", os.str());
    }
  }
}

// -------------------------------------------------------------------- aut

void aut_suite(Report& r, int m, std::uint64_t seed) {
  const LieAlgebra a = make_heisenberg_ext(m);
  const HyperTriple t = standard_triple(m);
  GroupDimensions g = group_dimensions(m);

  r.info("aut.formula_triple", "(dim G, dim H, dim G - dim H) by the closed formulas",
         cat("(", g.dim_g_formula, ", ", g.dim_h_formula, ", ", g.effective_formula, ")"));
  r.info("aut.computed_triple", "(dim G, dim H, dim G - dim H) from the linear systems",
         cat("(", g.dim_g, ", ", g.dim_h, ", ", g.effective, ")"));
  r.expect("aut.dim_g", "dim G = 13 + 18m + 8m^2", g.dim_g == g.dim_g_formula, compare(g.dim_g, g.dim_g_formula));
  r.expect("aut.dim_h", "dim H = 1 + 9m + 2m^2", g.dim_h == g.dim_h_formula,
           compare(g.dim_h, g.dim_h_formula) + "; the conformal-symplectic quaternionic block is so*(2m)");
  r.expect("aut.effective", "dim G - dim H = 12 + 9m + 6m^2", g.effective == g.effective_formula,
           compare(g.effective, g.effective_formula));
  r.expect("aut.gap_formula", "12 + 9m + 6m^2 < 6m^2 + 11m + 12", g.effective_formula < g.h1_wd,
           cat(g.effective_formula, " < ", g.h1_wd));
  r.info("aut.h1_wd", "dim H1(W,D_W) alongside the computed effective count",
         cat("dim H1(W,D_W) = ", g.h1_wd, ", computed effective ", g.effective));
  r.info("aut.commuting_derivations", "derivations commuting with I1 and I2", cat(g.commuting_derivations));

  AutMatrix id = ExactMatrix::identity(a.dim());
  Prop2Check p2 = is_prop2_form(id, m);
  r.expect("aut.identity", "identity satisfies all four predicates with S0 = 1",
           is_lie_automorphism(id, a) && p2.ok && p2.s0 && p2.s0->is_one() && is_prop3_form(id, m).ok &&
               is_hypercomplex_automorphism(id, t));

  std::mt19937_64 rng(seed);
  constexpr int kProp2 = 200;
  int lie_ok = 0, form_ok = 0;
  for (int i = 0; i < kProp2; ++i) {
    AutMatrix M = random_prop2_matrix(m, rng);
    if (is_lie_automorphism(M, a)) ++lie_ok;
    if (is_prop2_form(M, m).ok) ++form_ok;
  }
  r.expect("aut.random_prop2", "random center-preserving conformal-symplectic matrices are Lie automorphisms",
           lie_ok == kProp2 && form_ok == kProp2,
           cat(lie_ok, "/", kProp2, " automorphisms, ", form_ok, "/", kProp2, " in normal form"));

  constexpr int kProp3 = 50;
  int hc_ok = 0;
  for (int i = 0; i < kProp3; ++i) {
    AutMatrix M = random_prop3_matrix(m, rng, false);
    if (is_lie_automorphism(M, a) && is_prop3_form(M, m).ok && is_hypercomplex_automorphism(M, t)) ++hc_ok;
  }
  r.expect("aut.random_prop3", "random quaternion-patterned matrices are hypercomplex Lie automorphisms",
           hc_ok == kProp3, cat(hc_ok, "/", kProp3));

  int free_ok = 0;
  for (int i = 0; i < kProp3; ++i) {
    AutMatrix M = random_prop3_matrix(m, rng, true);
    if (is_lie_automorphism(M, a) && is_prop3_form(M, m).ok) ++free_ok;
  }
  r.expect("aut.random_prop3_free_row", "patterned matrices with a free first strip row are Lie automorphisms",
           free_ok == kProp3, cat(free_ok, "/", kProp3));
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "hypercomplex", "coords", "twistor",
                                                 "cohomology", "mc", "aut"};
  return names;
}

bool is_suite_name(const std::string& s) {
  const auto& n = suite_names();
  return s == "all" || std::find(n.begin(), n.end(), s) != n.end();
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite, int m) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ull;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(m)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Report run_suite(const std::string& suite, int m, std::uint64_t seed) {
  if (m < 1 || m > 4) throw std::invalid_argument("m must be in 1..4");
  if (!is_suite_name(suite)) throw std::invalid_argument("unknown suite: " + suite);
  auto start = std::chrono::steady_clock::now();
  Report r(suite, m, seed);
  if (suite == "all") {
    for (const auto& s : suite_names()) r.merge(run_suite(s, m, seed));
  } else {
    std::uint64_t s = suite_seed(seed, suite, m);
    if (suite == "algebra") algebra_suite(r, m);
    if (suite == "hypercomplex") hypercomplex_suite(r, m);
    if (suite == "coords") coords_suite(r, m, s);
    if (suite == "twistor") twistor_suite(r, m, s);
    if (suite == "cohomology") cohomology_suite(r, m);
    if (suite == "mc") mc_suite(r, m, s);
    if (suite == "aut") aut_suite(r, m, s);
  }
  r.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return r;
}

bool DimsRow::ok() const {
  for (const Pair* p : {&h1_wd, &h1_theta, &torus_h1_dz, &torus_quaternionic, &e_space, &coker_double_prime,
                        &coker_prime, &kernel_delta1})
    if (p->enumerated != p->formula) return false;
  return true;
}

DimsRow dims_row(int m) {
  if (m < 1 || m > 6) throw std::invalid_argument("m must be in 1..6");
  const std::size_t M = sz(m);
  DimsRow r;
  r.m = m;
  H1Decomposition d = assemble_H1_W_D(m);
  QuaternionicReport q = quaternionic_sequence(m);
  TorusReport t = torus_dims(m);
  r.h1_wd = {d.total, 6 * M * M + 11 * M + 12};
  r.h1_theta = {q.h1_theta, 6 * M * M + 11 * M + 9};
  r.torus_h1_dz = {t.h1_dz, 12 * M * M};
  r.torus_quaternionic = {t.quaternionic, 12 * M * M - 3};
  r.e_space = {e_space_basis(m).size(), e_space_dimension_formula(m)};
  r.coker_double_prime = {d.coker_double_prime, 12};
  r.coker_prime = {d.coker_prime, 8 * M};
  r.kernel_delta1 = {d.kernel_delta1, 3 * M * (2 * M + 1)};
  return r;
}

nlohmann::json to_json(const DimsRow& r) {
  auto p = [](const DimsRow::Pair& x) { return nlohmann::json{{"enumerated", x.enumerated}, {"formula", x.formula}}; };
  return {{"m", r.m},
          {"h1_wd", p(r.h1_wd)},
          {"h1_theta", p(r.h1_theta)},
          {"torus_h1_dz", p(r.torus_h1_dz)},
          {"torus_quaternionic", p(r.torus_quaternionic)},
          {"e_space", p(r.e_space)},
          {"coker_double_prime", p(r.coker_double_prime)},
          {"coker_prime", p(r.coker_prime)},
          {"kernel_delta1", p(r.kernel_delta1)},
          {"status", r.ok() ? "pass" : "fail"}};
}

}  // namespace nilquat
