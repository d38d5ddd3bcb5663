#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsc/geometry.hpp"
#include "gsc/ncgb.hpp"
#include "gsc/skewring.hpp"

namespace gsc {

/// x_i x_j + mu_ij x_j x_i = sum_k (M_k)_ij y_k.
struct GscaRelation {
  int i = 0;
  int j = 0;
  FreePoly lhs;
  FreePoly rhs;
};

/// Generators x_1..x_n (degree 1) then y_1..y_n (degree 2).
struct GscaPresentation {
  MuMatrix mu;
  std::vector<Matrix> matrices;
  std::vector<GscaRelation> relations;  // all n^2 ordered pairs, row-major
  Presentation presentation;            // relations as lhs - rhs

  std::string relation_str(std::size_t index) const;
};

/// Throws NotMuSymmetric or SizeMismatch.
GscaPresentation build_gsca(const MuMatrix& mu, std::vector<Matrix> matrices);

/// First entry (1-based) where M_ij != mu_ij M_ji, as a message.
std::optional<std::string> mu_symmetry_violation(const Matrix& m, const MuMatrix& mu);

struct EliminatedAlgebra {
  std::vector<FreePoly> y_definitions;  // y_k in the x's
  std::vector<FreePoly> x_relations;    // monic, reduced echelon form
  Presentation presentation;            // on x_1..x_n
};

/// Solves the unordered-pair relations for the y's. Throws
/// MatricesLinearlyDependent naming a kernel vector.
EliminatedAlgebra eliminate_y(const GscaPresentation& p);

struct AnalysisOptions {
  int max_degree = 6;
  BpfMode bpf;
  SearchOptions search;
};

/// Each optional section is absent when its stage failed or could not run;
/// the matching *_error string then says why.
struct AnalysisReport {
  bool mu_valid = false;
  std::string mu_error;
  bool matrices_mu_symmetric = false;
  std::string symmetry_error;

  std::optional<QuadricSystem> quadrics;
  std::optional<SearchResult> normalizing;
  std::string normalizing_error;
  std::optional<BpfVerdict> bpf;
  std::string bpf_error;
  std::optional<EliminatedAlgebra> eliminated;
  std::string elimination_error;
  std::optional<HilbertData> hilbert;
  std::string hilbert_error;
  std::optional<GrowthEstimate> growth;
  std::string growth_error;

  std::vector<std::string> notes;
};

AnalysisReport analyze(const Matrix& mu, const std::vector<Matrix>& matrices,
                       const AnalysisOptions& options = {});

}  // namespace gsc
