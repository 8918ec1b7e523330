#include "nilquat/lie.hpp"

#include <stdexcept>

namespace nilquat {

namespace {

const SparseRow kEmpty;

SparseRow sparse_of(const AlgVector& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> labels) : labels_(std::move(labels)) {}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void LieAlgebra::set_raw_bracket(std::size_t i, std::size_t j, const AlgVector& v) {
  if (i >= dim() || j >= dim() || v.size() != dim()) throw std::invalid_argument("bracket index or size out of range");
  SparseRow r = sparse_of(v);
  if (r.empty())
    c_.erase({i, j});
  else
    c_[{i, j}] = std::move(r);
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const AlgVector& v) {
  if (i == j && !is_zero_vector(v)) throw std::invalid_argument("[e_i, e_i] must vanish");
  set_raw_bracket(i, j, v);
  AlgVector neg(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
  set_raw_bracket(j, i, neg);
}

const SparseRow& LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? kEmpty : it->second;
}

LieAlgebra make_heisenberg_ext(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  std::vector<std::string> labels = {"Z", "E1", "E2", "E3"};
  for (int j = 1; j <= 2 * m; ++j) labels.push_back("X" + std::to_string(j));
  for (int j = 1; j <= 2 * m; ++j) labels.push_back("Y" + std::to_string(j));
  LieAlgebra a(labels);
  for (int j = 1; j <= 2 * m; ++j) {
    AlgVector v = a.zero();
    v[hx::Z] = 4;
    a.set_bracket(hx::Y(m, j), hx::X(m, j), v);
  }
  return a;
}

LieAlgebra make_heisenberg(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  std::vector<std::string> labels = {"Z"};
  for (int j = 1; j <= 2 * m; ++j) labels.push_back("X" + std::to_string(j));
  for (int j = 1; j <= 2 * m; ++j) labels.push_back("Y" + std::to_string(j));
  LieAlgebra a(labels);
  for (int j = 1; j <= 2 * m; ++j) {
    AlgVector v = a.zero();
    v[0] = 4;
    a.set_bracket(static_cast<std::size_t>(2 * m + j), static_cast<std::size_t>(j), v);
  }
  return a;
}

LieAlgebra make_abelian(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("T" + std::to_string(i));
  return LieAlgebra(labels);
}

AlgVector bracket(const LieAlgebra& a, const AlgVector& v, const AlgVector& w) {
  if (v.size() != a.dim() || w.size() != a.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  AlgVector out = a.zero();
  for (const auto& [ij, c] : a.constants()) {
    const GaussRat& x = v[ij.first];
    const GaussRat& y = w[ij.second];
    if (x.is_zero() || y.is_zero()) continue;
    GaussRat s = x * y;
    for (const auto& [k, ck] : c) out[k] += s * ck;
  }
  return out;
}

std::optional<JacobiFailure> check_jacobi(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  auto br_vec_basis = [&](const SparseRow& v, std::size_t k, AlgVector& acc) {
    for (const auto& [l, x] : v)
      for (const auto& [r, y] : a.basis_bracket(l, k)) acc[r] += x * y;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        AlgVector acc = a.zero();
        br_vec_basis(a.basis_bracket(i, j), k, acc);
        br_vec_basis(a.basis_bracket(j, k), i, acc);
        br_vec_basis(a.basis_bracket(k, i), j, acc);
        if (!is_zero_vector(acc)) return JacobiFailure{{i, j, k}, acc};
      }
  return std::nullopt;
}

std::vector<AlgVector> center_subspace(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  // Row (w, k): k-th component of [v, e_w] as a linear form in v.
  ExactMatrix stack(n * n, n);
  for (const auto& [ij, c] : a.constants())
    for (const auto& [k, x] : c) stack.add_to(ij.second * n + k, ij.first, x);
  return kernel_basis(stack);
}

std::vector<AlgVector> derived_ideal(const LieAlgebra& a) {
  std::vector<AlgVector> gens;
  for (const auto& [ij, c] : a.constants()) {
    AlgVector v = a.zero();
    for (const auto& [k, x] : c) v[k] = x;
    gens.push_back(std::move(v));
  }
  return row_space_basis(gens, a.dim());
}

std::vector<SparseRow> derivation_equations(const LieAlgebra& a, const std::vector<Endo>& commute_with) {
  const std::size_t n = a.dim();
  std::vector<SparseRow> rows;
  auto flush = [&](std::map<std::size_t, std::map<std::size_t, GaussRat>>& eqs) {
    for (auto& [k, eq] : eqs) {
      SparseRow r;
      for (auto& [u, x] : eq)
        if (!x.is_zero()) r.emplace_back(u, x);
      if (!r.empty()) rows.push_back(std::move(r));
    }
    eqs.clear();
  };
  std::map<std::size_t, std::map<std::size_t, GaussRat>> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, component k.
      for (const auto& [l, c] : a.basis_bracket(i, j))
        for (std::size_t k = 0; k < n; ++k) eqs[k][derivation_unknown(n, k, l)] += c;
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [k, c] : a.basis_bracket(s, j)) eqs[k][derivation_unknown(n, s, i)] -= c;
        for (const auto& [k, c] : a.basis_bracket(i, s)) eqs[k][derivation_unknown(n, s, j)] -= c;
      }
      flush(eqs);
    }
  for (const Endo& e : commute_with) {
    if (e.rows() != n || e.cols() != n) throw std::invalid_argument("constraint endomorphism has wrong size");
    // (D E - E D)_{rc} = sum_s D_rs E_sc - sum_s E_rs D_sc
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::map<std::size_t, GaussRat> eq;
        for (std::size_t s = 0; s < n; ++s) {
          const GaussRat& esc = e.at(s, c);
          if (!esc.is_zero()) eq[derivation_unknown(n, r, s)] += esc;
          const GaussRat& ers = e.at(r, s);
          if (!ers.is_zero()) eq[derivation_unknown(n, s, c)] -= ers;
        }
        SparseRow row;
        for (auto& [u, x] : eq)
          if (!x.is_zero()) row.emplace_back(u, x);
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  return rows;
}

Endo endo_from_unknowns(std::size_t n, const ExactVector& x) {
  if (x.size() != n * n) throw std::invalid_argument("unknown vector has wrong length");
  Endo d(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d.set(r, c, x[derivation_unknown(n, r, c)]);
  return d;
}

std::vector<Endo> derivation_basis(const LieAlgebra& a, const std::vector<Endo>& commute_with) {
  const std::size_t n = a.dim();
  auto rows = derivation_equations(a, commute_with);
  ExactMatrix m(rows.size(), n * n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) m.set(r, c, x);
  std::vector<Endo> out;
  for (const auto& v : kernel_basis(m)) out.push_back(endo_from_unknowns(n, v));
  return out;
}

std::size_t derivation_dimension(const LieAlgebra& a, const std::vector<Endo>& commute_with) {
  const std::size_t n = a.dim();
  RowReducer red(n * n);
  for (const auto& r : derivation_equations(a, commute_with)) red.add(r);
  return n * n - red.rank();
}

bool is_derivation(const LieAlgebra& a, const Endo& d) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgVector ei = a.basis_vector(i), ej = a.basis_vector(j);
      AlgVector lhs = d.apply(bracket(a, ei, ej));
      AlgVector r1 = bracket(a, d.apply(ei), ej);
      AlgVector r2 = bracket(a, ei, d.apply(ej));
      for (std::size_t k = 0; k < n; ++k)
        if (lhs[k] != r1[k] + r2[k]) return false;
    }
  return true;
}

}  // namespace nilquat
