#include "nilquat/automorphisms.hpp"

#include <stdexcept>

#include "nilquat/cohomology.hpp"
#include "nilquat/coords.hpp"

namespace nilquat {

namespace {

constexpr std::size_t kCenter = 4;

// Basis indices of 4x4 block R: 0 is (Z, E1, E2, E3), a >= 1 is
// (X_{2a-1}, X_{2a}, Y_{2a-1}, Y_{2a}).
std::array<std::size_t, 4> block_indices(int m, int R) {
  if (R == 0) return {hx::Z, hx::E(1), hx::E(2), hx::E(3)};
  return {hx::X(m, 2 * R - 1), hx::X(m, 2 * R), hx::Y(m, 2 * R - 1), hx::Y(m, 2 * R)};
}

// Relations S_rc = sign * S_r'c' of the quaternion-linear pattern; rows 1..3 first.
struct PatternRel {
  int r, c, r2, c2, sign;
};
const std::vector<PatternRel>& pattern_relations() {
  static const std::vector<PatternRel> rel = {
      {2, 2, 1, 1, 1},  {3, 3, 1, 1, 1},  {2, 3, 1, 0, 1},  {3, 2, 1, 0, -1}, {2, 0, 1, 3, -1}, {3, 1, 1, 3, -1},
      {2, 1, 1, 2, -1}, {3, 0, 1, 2, 1},  {0, 0, 1, 1, 1},  {0, 1, 1, 0, -1}, {0, 2, 1, 3, 1},  {0, 3, 1, 2, -1},
  };
  return rel;
}
constexpr std::size_t kLowerRowRelations = 8;

ExactMatrix xy_block(const AutMatrix& M, int m) {
  const std::size_t n = static_cast<std::size_t>(4 * m);
  ExactMatrix C(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& [c, v] : M.row(kCenter + r))
      if (c >= kCenter) C.set(r, c - kCenter, v);
  return C;
}

GaussRat nonzero_rational(std::mt19937_64& rng) {
  for (;;) {
    GaussRat g = random_rational(rng, 3, 3);
    if (!g.is_zero()) return g;
  }
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<ExactVector> cols;
  for (std::size_t c = 0; c < n; ++c) {
    auto x = solve(a, unit_vector(n, c));
    if (!x) return std::nullopt;
    cols.push_back(*x);
  }
  return ExactMatrix::from_columns(cols, n);
}

void place(AutMatrix& M, const ExactMatrix& C, std::size_t r0, std::size_t c0) {
  for (std::size_t r = 0; r < C.rows(); ++r)
    for (const auto& [c, v] : C.row(r)) M.set(r0 + r, c0 + c, v);
}

}  // namespace

ExactMatrix symplectic_form(int m) {
  const std::size_t n = static_cast<std::size_t>(4 * m), h = static_cast<std::size_t>(2 * m);
  ExactMatrix w(n, n);
  for (std::size_t k = 0; k < h; ++k) {
    w.set(k, h + k, 2);
    w.set(h + k, k, -2);
  }
  return w;
}

bool is_lie_automorphism(const AutMatrix& M, const LieAlgebra& a) {
  const std::size_t n = a.dim();
  if (M.rows() != n || M.cols() != n) return false;
  if (rank(M) != n) return false;
  std::vector<ExactVector> img;
  for (std::size_t c = 0; c < n; ++c) img.push_back(M.column(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ExactVector lhs = M.apply(bracket(a, a.basis_vector(i), a.basis_vector(j)));
      if (lhs != bracket(a, img[i], img[j])) return false;
    }
  return true;
}

Prop2Check is_prop2_form(const AutMatrix& M, int m) {
  Prop2Check out;
  const std::size_t n = hx::dim(m);
  if (M.rows() != n || M.cols() != n) {
    out.reason = "matrix size does not match m";
    return out;
  }
  for (std::size_t r = kCenter; r < n; ++r)
    for (const auto& [c, v] : M.row(r))
      if (c < kCenter) {
        out.reason = "center not preserved (nonzero lower-left block)";
        return out;
      }
  for (std::size_t r = 1; r < n; ++r)
    if (!M.at(r, hx::Z).is_zero()) {
      out.reason = "M(Z) is not a multiple of Z";
      return out;
    }
  GaussRat s0 = M.at(hx::Z, hx::Z);
  out.s0 = s0;
  if (s0.is_zero()) {
    out.reason = "M(Z) = 0";
    return out;
  }
  if (rank(M) != n) {
    out.reason = "matrix is singular";
    return out;
  }
  ExactMatrix C = xy_block(M, m), w = symplectic_form(m);
  if (C.transpose() * w * C != s0 * w) {
    out.reason = "C does not scale omega by S0";
    return out;
  }
  out.ok = true;
  return out;
}

bool is_hypercomplex_automorphism(const AutMatrix& M, const HyperTriple& t) {
  for (int a = 1; a <= 3; ++a)
    if (M * t[a] != t[a] * M) return false;
  return true;
}

bool has_quaternion_pattern(const AutMatrix& M, std::size_t row0, std::size_t col0, int rows_from) {
  const auto& rel = pattern_relations();
  std::size_t count = rows_from == 0 ? rel.size() : kLowerRowRelations;
  for (std::size_t q = 0; q < count; ++q) {
    const auto& p = rel[q];
    GaussRat lhs = M.at(row0 + static_cast<std::size_t>(p.r), col0 + static_cast<std::size_t>(p.c));
    GaussRat rhs = M.at(row0 + static_cast<std::size_t>(p.r2), col0 + static_cast<std::size_t>(p.c2));
    if (lhs != GaussRat(p.sign) * rhs) return false;
  }
  return true;
}

Prop3Check is_prop3_form(const AutMatrix& M, int m) {
  Prop3Check out;
  Prop2Check p2 = is_prop2_form(M, m);
  if (!p2.ok) {
    out.reason = "not of Prop. 2 form: " + p2.reason;
    return out;
  }
  for (std::size_t r = 0; r < kCenter; ++r)
    for (std::size_t c = 0; c < kCenter; ++c) {
      GaussRat want = r == c ? *p2.s0 : GaussRat(0);
      if (M.at(r, c) != want) {
        out.reason = "center block is not s I";
        return out;
      }
    }
  // Blocks (X_{2a-1}, X_{2a}, Y_{2a-1}, Y_{2a}) are not contiguous, so the
  // pattern is checked on a permuted copy with contiguous 4x4 blocks.
  const std::size_t n = hx::dim(m);
  std::vector<std::size_t> perm;
  for (int R = 0; R <= m; ++R)
    for (std::size_t idx : block_indices(m, R)) perm.push_back(idx);
  ExactMatrix P(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!M.at(perm[r], perm[c]).is_zero()) P.set(r, c, M.at(perm[r], perm[c]));
  for (int R = 0; R <= m; ++R)
    for (int C = 1; C <= m; ++C) {
      std::size_t r0 = static_cast<std::size_t>(4 * R), c0 = static_cast<std::size_t>(4 * C);
      if (!has_quaternion_pattern(P, r0, c0, R == 0 ? 1 : 0)) {
        out.reason = R == 0 ? "strip block " + std::to_string(C) + " lower rows break the quaternion pattern"
                            : "block (" + std::to_string(R) + "," + std::to_string(C) + ") is not quaternion-linear";
        return out;
      }
    }
  out.ok = true;
  return out;
}

AutMatrix random_prop2_matrix(int m, std::mt19937_64& rng) {
  const std::size_t n = hx::dim(m), h = static_cast<std::size_t>(2 * m), q = static_cast<std::size_t>(4 * m);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, h - 1);
  ExactMatrix C = ExactMatrix::identity(q);
  for (int step = 0; step < 4; ++step) {
    ExactMatrix g = ExactMatrix::identity(q);
    int kind = coin(rng);
    if (kind < 2) {
      // Symplectic shear by a symmetric matrix, upper or lower.
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
          GaussRat s = random_rational(rng, 2, 3);
          if (s.is_zero()) continue;
          std::size_t r = kind == 0 ? i : h + i, c = kind == 0 ? h + j : j;
          std::size_t r2 = kind == 0 ? j : h + j, c2 = kind == 0 ? h + i : i;
          g.set(r, c, s);
          g.set(r2, c2, s);
        }
    } else {
      // diag(P, P^{-T}) with P an elementary matrix.
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      GaussRat s = nonzero_rational(rng);
      g.set(i, j, s);
      g.set(h + j, h + i, -s);
    }
    C = g * C;
  }
  GaussRat s0 = nonzero_rational(rng);
  ExactMatrix scale = ExactMatrix::identity(q);
  for (std::size_t k = h; k < q; ++k) scale.set(k, k, s0);
  C = C * scale;

  AutMatrix M(n, n);
  place(M, C, kCenter, kCenter);
  M.set(hx::Z, hx::Z, s0);
  for (;;) {
    ExactMatrix e(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) e.set(r, c, random_rational(rng, 3, 2));
    if (rank(e) < 3) continue;
    place(M, e, 1, 1);
    break;
  }
  for (std::size_t c = 1; c < 4; ++c) M.set(hx::Z, c, random_rational(rng, 3, 2));
  for (std::size_t r = 0; r < kCenter; ++r)
    for (std::size_t c = kCenter; c < n; ++c) {
      GaussRat v = random_rational(rng, 3, 2);
      if (!v.is_zero()) M.set(r, c, v);
    }
  return M;
}

AutMatrix random_prop3_matrix(int m, std::mt19937_64& rng, bool free_first_row) {
  const std::size_t n = hx::dim(m), q = static_cast<std::size_t>(4 * m);
  // Infinitesimal middle blocks: quaternion-linear and omega-skew.
  std::vector<SparseRow> eqs;
  auto u = [&](std::size_t r, std::size_t c) { return r * q + c; };
  std::vector<std::size_t> loc;  // local (X, Y) index of block position
  for (int R = 1; R <= m; ++R)
    for (std::size_t idx : block_indices(m, R)) loc.push_back(idx - kCenter);
  for (int R = 0; R < m; ++R)
    for (int Cb = 0; Cb < m; ++Cb)
      for (const auto& p : pattern_relations()) {
        std::size_t a = u(loc[static_cast<std::size_t>(4 * R + p.r)], loc[static_cast<std::size_t>(4 * Cb + p.c)]);
        std::size_t b = u(loc[static_cast<std::size_t>(4 * R + p.r2)], loc[static_cast<std::size_t>(4 * Cb + p.c2)]);
        SparseRow row = a < b ? SparseRow{{a, 1}, {b, GaussRat(-p.sign)}} : SparseRow{{b, GaussRat(-p.sign)}, {a, 1}};
        eqs.push_back(row);
      }
  ExactMatrix w = symplectic_form(m);
  // (X^T w + w X)_{ij} = sum_k X_ki w_kj + w_ik X_kj
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i; j < q; ++j) {
      std::map<std::size_t, GaussRat> acc;
      for (std::size_t k = 0; k < q; ++k) {
        if (!w.at(k, j).is_zero()) acc[u(k, i)] += w.at(k, j);
        if (!w.at(i, k).is_zero()) acc[u(k, j)] += w.at(i, k);
      }
      SparseRow row;
      for (const auto& [c, v] : acc)
        if (!v.is_zero()) row.emplace_back(c, v);
      if (!row.empty()) eqs.push_back(row);
    }
  ExactMatrix sys(eqs.size(), q * q);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (const auto& [c, v] : eqs[r]) sys.set(r, c, v);
  auto ker = kernel_basis(sys);
  ExactMatrix C;
  for (;;) {
    ExactMatrix X(q, q);
    for (const auto& v : ker) {
      GaussRat s = random_rational(rng, 1, 2);
      for (std::size_t idx = 0; idx < v.size(); ++idx)
        if (!v[idx].is_zero()) X.add_to(idx / q, idx % q, s * v[idx]);
    }
    // Cayley transform (I - X)^{-1} (I + X) stays in the group.
    ExactMatrix I = ExactMatrix::identity(q);
    auto inv = inverse(I - X);
    if (!inv) continue;
    C = *inv * (I + X);
    break;
  }
  GaussRat r = nonzero_rational(rng);
  C = r * C;
  GaussRat s = r * r;

  AutMatrix M(n, n);
  place(M, C, kCenter, kCenter);
  for (std::size_t k = 0; k < kCenter; ++k) M.set(k, k, s);
  for (int Cb = 1; Cb <= m; ++Cb) {
    auto cols = block_indices(m, Cb);
    GaussRat a = random_rational(rng, 3, 2), b = random_rational(rng, 3, 2), c = random_rational(rng, 3, 2),
             d = random_rational(rng, 3, 2);
    GaussRat rows[3][4] = {{-b, a, -d, c}, {-c, d, a, -b}, {-d, -c, b, a}};
    for (std::size_t rr = 0; rr < 3; ++rr)
      for (std::size_t cc = 0; cc < 4; ++cc)
        if (!rows[rr][cc].is_zero()) M.set(rr + 1, cols[cc], rows[rr][cc]);
    GaussRat top[4] = {a, b, c, d};
    for (std::size_t cc = 0; cc < 4; ++cc) {
      GaussRat v = free_first_row ? random_rational(rng, 3, 2) : top[cc];
      if (!v.is_zero()) M.set(hx::Z, cols[cc], v);
    }
  }
  return M;
}

GroupDimensions group_dimensions(int m) {
  GroupDimensions g;
  LieAlgebra a = make_heisenberg_ext(m);
  const std::size_t n = a.dim();
  g.dim_g = derivation_dimension(a);
  HyperTriple t = standard_triple(m);
  g.commuting_derivations = derivation_dimension(a, {t.I1, t.I2});

  std::vector<SparseRow> rows = derivation_equations(a);
  auto U = [&](int R, int C, int i, int j) {
    return derivation_unknown(n, block_indices(m, R)[static_cast<std::size_t>(i)],
                              block_indices(m, C)[static_cast<std::size_t>(j)]);
  };
  auto relate = [&](std::size_t x, std::size_t y, int sign) {
    rows.push_back(x < y ? SparseRow{{x, 1}, {y, GaussRat(-sign)}} : SparseRow{{y, GaussRat(-sign)}, {x, 1}});
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j)
        rows.push_back({{U(0, 0, i, j), 1}});
      else if (i > 0)
        relate(U(0, 0, i, i), U(0, 0, 0, 0), 1);
    }
  for (int R = 0; R <= m; ++R)
    for (int C = 1; C <= m; ++C) {
      const auto& rel = pattern_relations();
      std::size_t count = R == 0 ? kLowerRowRelations : rel.size();
      for (std::size_t q = 0; q < count; ++q) relate(U(R, C, rel[q].r, rel[q].c), U(R, C, rel[q].r2, rel[q].c2), rel[q].sign);
    }
  RowReducer red(n * n);
  for (const auto& r : rows) red.add(r);
  g.dim_h = n * n - red.rank();
  g.effective = g.dim_g - g.dim_h;
  std::size_t mm = static_cast<std::size_t>(m);
  g.dim_g_formula = 13 + 18 * mm + 8 * mm * mm;
  g.dim_h_formula = 1 + 9 * mm + 2 * mm * mm;
  g.effective_formula = 12 + 9 * mm + 6 * mm * mm;
  g.h1_wd = assemble_H1_W_D(m).total;
  return g;
}

AutMatrix parse_aut_matrix(const nlohmann::json& j, int m) {
  const std::size_t n = hx::dim(m);
  const nlohmann::json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.size() != n)
    throw std::invalid_argument("matrix must be a list of " + std::to_string(n) + " rows");
  AutMatrix M(n, n);
  auto entry = [](const nlohmann::json& e) -> GaussRat {
    if (e.is_number_integer()) return GaussRat(e.get<long>());
    if (e.is_string()) return GaussRat(GaussRat::parse_rational(e.get<std::string>()));
    if (e.is_object()) {
      mpq_class re = e.contains("re") ? GaussRat::parse_rational(e.at("re").get<std::string>()) : mpq_class(0);
      mpq_class im = e.contains("im") ? GaussRat::parse_rational(e.at("im").get<std::string>()) : mpq_class(0);
      return GaussRat(re, im);
    }
    throw std::invalid_argument("matrix entries must be integers or rational strings");
  };
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n)
      throw std::invalid_argument("row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      GaussRat v;
      try {
        v = entry(rows[r][c]);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed entry: ") + e.what());
      }
      if (!v.is_zero()) M.set(r, c, v);
    }
  }
  return M;
}

nlohmann::json to_json(const AutMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < M.cols(); ++c) row.push_back(M.at(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nilquat
