#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gsc/gsca.hpp"

namespace gsc::cli {

using Json = nlohmann::ordered_json;

Json matrix_json(const Matrix& m);
Json point_json(const BiPoint& p);

Json validation_json(const Matrix& mu, const std::vector<Matrix>& matrices);
bool validation_ok(const Json& v);
std::string validation_text(const Json& v);

Json presentation_validation_json(const ValidationReport& r);
std::string presentation_validation_text(const ValidationReport& r);

Json quadrics_json(const QuadricSystem& q);
std::string quadrics_text(const QuadricSystem& q);

Json certificate_json(const NormalityCertificate& c);
Json search_json(const SearchResult& r);
std::string search_text(const SearchResult& r);

Json bpf_json(const BpfVerdict& v);
std::string bpf_text(const BpfVerdict& v);

Json hilbert_json(const HilbertData& h, const std::optional<GrowthEstimate>& g, const std::string& growth_error);
std::string hilbert_text(const HilbertData& h, const std::optional<GrowthEstimate>& g,
                         const std::string& growth_error);

Json elimination_json(const EliminatedAlgebra& e);

Json analysis_json(const AnalysisReport& r);
std::string analysis_text(const AnalysisReport& r);

}  // namespace gsc::cli
