#include "gsc/gsca.hpp"

#include <algorithm>
#include <set>

namespace gsc {

namespace {

constexpr const char* kModule = "gsca";

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void check_sizes(const MuMatrix& mu, const std::vector<Matrix>& ms) {
  const std::size_t n = sz(mu.n());
  if (ms.size() != n)
    throw Error(ErrorKind::SizeMismatch, kModule,
                "expected " + std::to_string(n) + " matrices, got " + std::to_string(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].rows() != n || ms[k].cols() != n)
      throw Error(ErrorKind::SizeMismatch, kModule, "M_" + std::to_string(k + 1) + " is not " +
                                                        std::to_string(n) + "x" + std::to_string(n));
    if (!(ms[k].field() == mu.field()))
      throw Error(ErrorKind::FieldMismatch, kModule, "M_" + std::to_string(k + 1) + " is over another field");
  }
}

std::vector<std::string> gsca_names(int n) {
  std::vector<std::string> names = indexed_names("x", n);
  for (const auto& y : indexed_names("y", n)) names.push_back(y);
  return names;
}

// Reduced echelon form of polynomials in the coordinates of their words,
// columns ordered leading word first.
std::vector<FreePoly> echelon(const std::vector<FreePoly>& polys, const Field& field, int num_gens) {
  std::set<Word, DeglexLess> support;
  for (const auto& f : polys)
    for (const auto& [w, c] : f.terms()) support.insert(w);
  std::vector<Word> cols(support.rbegin(), support.rend());
  Matrix m(field, polys.size(), cols.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = polys[r].coefficient(cols[c]);
  const RowEchelon e = row_reduce(m);
  std::vector<FreePoly> out;
  for (std::size_t r = 0; r < e.rank; ++r) {
    FreePoly f(field, num_gens);
    for (std::size_t c = 0; c < cols.size(); ++c) f.add_term(cols[c], e.rref(r, c));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::optional<std::string> mu_symmetry_violation(const Matrix& m, const MuMatrix& mu) {
  if (m.rows() != sz(mu.n()) || m.cols() != sz(mu.n())) return "matrix size differs from mu";
  for (int i = 0; i < mu.n(); ++i)
    for (int j = 0; j < mu.n(); ++j) {
      const Scalar& a = m(sz(i), sz(j));
      const Scalar b = mu(i, j) * m(sz(j), sz(i));
      if (!(a == b))
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): M_ij = " + a.str() +
               " but mu_ij * M_ji = " + b.str();
    }
  return std::nullopt;
}

GscaPresentation build_gsca(const MuMatrix& mu, std::vector<Matrix> matrices) {
  check_sizes(mu, matrices);
  for (std::size_t k = 0; k < matrices.size(); ++k)
    if (auto v = mu_symmetry_violation(matrices[k], mu))
      throw Error(ErrorKind::NotMuSymmetric, kModule, "M_" + std::to_string(k + 1) + " " + *v);
  const int n = mu.n();
  const Field& f = mu.field();
  GscaPresentation p{mu, std::move(matrices), {}, {}};
  p.presentation.field = f;
  p.presentation.names = gsca_names(n);
  p.presentation.degrees.assign(sz(n), 1);
  p.presentation.degrees.insert(p.presentation.degrees.end(), sz(n), 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GscaRelation r{i, j, FreePoly(f, 2 * n), FreePoly(f, 2 * n)};
      r.lhs.add_term({i, j}, Scalar::one(f));
      r.lhs.add_term({j, i}, mu(i, j));
      for (int k = 0; k < n; ++k) r.rhs.add_term({n + k}, p.matrices[sz(k)](sz(i), sz(j)));
      p.presentation.relations.push_back(r.lhs - r.rhs);
      p.relations.push_back(std::move(r));
    }
  return p;
}

std::string GscaPresentation::relation_str(std::size_t index) const {
  const GscaRelation& r = relations.at(index);
  return format(r.lhs, presentation.names) + " = " + format(r.rhs, presentation.names);
}

EliminatedAlgebra eliminate_y(const GscaPresentation& p) {
  const int n = p.mu.n();
  const Field& f = p.mu.field();
  // Rows: unordered pairs i <= j. Columns: y_1..y_n, then an identity block
  // that records the row operations applied to the x-side.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t rows = pairs.size();
  Matrix aug(f, rows, sz(n) + rows);
  std::vector<FreePoly> lhs;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto [i, j] = pairs[r];
    for (int k = 0; k < n; ++k) aug(r, sz(k)) = p.matrices[sz(k)](sz(i), sz(j));
    aug(r, sz(n) + r) = Scalar::one(f);
    FreePoly l(f, n);
    l.add_term({i, j}, Scalar::one(f));
    l.add_term({j, i}, p.mu(i, j));
    lhs.push_back(std::move(l));
  }
  Matrix coeff(f, rows, sz(n));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < sz(n); ++k) coeff(r, k) = aug(r, k);
  if (rank(coeff) < sz(n)) {
    const auto ker = kernel(coeff);
    std::string combo;
    for (std::size_t k = 0; k < ker[0].size(); ++k) {
      if (ker[0][k].is_zero()) continue;
      combo += (combo.empty() ? "" : " + ") + std::string("(") + ker[0][k].str() + ")*M_" + std::to_string(k + 1);
    }
    throw Error(ErrorKind::MatricesLinearlyDependent, kModule,
                "the matrices are linearly dependent: " + combo + " = 0");
  }
  const RowEchelon e = row_reduce(aug);
  auto transformed = [&](std::size_t r) {
    FreePoly out(f, n);
    for (std::size_t c = 0; c < rows; ++c) out += lhs[c] * e.rref(r, sz(n) + c);
    return out;
  };
  EliminatedAlgebra out;
  // The first n pivots sit in the y-columns, in order.
  for (int k = 0; k < n; ++k) out.y_definitions.push_back(transformed(sz(k)));
  std::vector<FreePoly> residual;
  for (std::size_t r = sz(n); r < rows; ++r) residual.push_back(transformed(r));
  out.x_relations = echelon(residual, f, n);
  // Canonical y_k: no leading word of an x-relation survives.
  for (auto& y : out.y_definitions)
    for (const auto& rel : out.x_relations) y -= rel * y.coefficient(rel.leading_word());
  out.presentation = Presentation::standard(f, n, out.x_relations);
  return out;
}

AnalysisReport analyze(const Matrix& mu_entries, const std::vector<Matrix>& matrices,
                       const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.notes = {
      "regularity is not decided; the sections below are evidence only",
      "the normalizing check is for the quadric system in S; the condition inside A is not decided",
      "Hilbert data are for the quotient of K<x> by the eliminated relations, which surjects onto A",
      "growth is an estimate from finitely many Hilbert values",
  };
  if (auto v = MuMatrix::violation(mu_entries)) {
    rep.mu_error = *v;
    return rep;
  }
  rep.mu_valid = true;
  const MuMatrix mu(mu_entries);
  try {
    check_sizes(mu, matrices);
  } catch (const Error& e) {
    rep.symmetry_error = e.what();
    return rep;
  }
  for (std::size_t k = 0; k < matrices.size() && rep.symmetry_error.empty(); ++k)
    if (auto v = mu_symmetry_violation(matrices[k], mu)) rep.symmetry_error = "M_" + std::to_string(k + 1) + " " + *v;
  if (!rep.symmetry_error.empty()) return rep;
  rep.matrices_mu_symmetric = true;

  rep.quadrics = build_quadric_system(mu, matrices);
  const SkewRing ring(mu);
  try {
    rep.normalizing = find_normalizing_sequence(rep.quadrics->monic, {}, ring, options.max_degree, options.search);
  } catch (const Error& e) {
    rep.normalizing_error = e.what();
  }
  try {
    rep.bpf = is_base_point_free(*rep.quadrics, options.bpf);
  } catch (const Error& e) {
    rep.bpf_error = e.what();
  }
  try {
    rep.eliminated = eliminate_y(build_gsca(mu, matrices));
  } catch (const Error& e) {
    rep.elimination_error = e.what();
  }
  if (rep.eliminated) {
    try {
      rep.hilbert = hilbert_function(rep.eliminated->presentation, options.max_degree);
    } catch (const Error& e) {
      rep.hilbert_error = e.what();
    }
  } else {
    rep.hilbert_error = "no eliminated presentation";
  }
  if (rep.hilbert) {
    try {
      rep.growth = growth_estimate(*rep.hilbert);
    } catch (const Error& e) {
      rep.growth_error = e.what();
    }
  } else {
    rep.growth_error = "no Hilbert data";
  }
  return rep;
}

}  // namespace gsc
