#include "gsc/report.hpp"

#include <sstream>

namespace gsc::cli {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string support_text(const std::vector<int>& s) {
  std::vector<std::string> parts;
  for (int i : s) parts.push_back(std::to_string(i + 1));
  return "{" + join(parts, ",") + "}";
}

Json support_json(const std::vector<int>& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i + 1);
  return out;
}

std::vector<std::string> x_names(int n) { return indexed_names("x", n); }

}  // namespace

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(row);
  }
  return out;
}

Json point_json(const BiPoint& p) {
  Json a = Json::array(), b = Json::array();
  for (const auto& s : p.a) a.push_back(s.str());
  for (const auto& s : p.b) b.push_back(s.str());
  return Json{{"a", a}, {"b", b}, {"text", p.str()}};
}

// ------------------------------------------------------------ validate

Json validation_json(const Matrix& mu, const std::vector<Matrix>& matrices) {
  Json out;
  out["field"] = mu.field().name();
  out["n"] = mu.rows();
  const auto mu_err = MuMatrix::violation(mu);
  out["mu"] = Json{{"valid", !mu_err}, {"error", mu_err ? Json(*mu_err) : Json(nullptr)}};
  Json sym{{"valid", false}, {"error", nullptr}};
  if (mu_err) {
    sym["error"] = "not checked: mu is invalid";
  } else if (matrices.size() != mu.rows()) {
    sym["error"] = "expected " + std::to_string(mu.rows()) + " matrices, got " + std::to_string(matrices.size());
  } else {
    const MuMatrix m(mu);
    sym["valid"] = true;
    for (std::size_t k = 0; k < matrices.size(); ++k)
      if (auto v = mu_symmetry_violation(matrices[k], m)) {
        sym["valid"] = false;
        sym["error"] = "M_" + std::to_string(k + 1) + " " + *v;
        break;
      }
  }
  out["mu_symmetric"] = sym;
  out["valid"] = !mu_err && sym["valid"].get<bool>();
  return out;
}

bool validation_ok(const Json& v) { return v["valid"].get<bool>(); }

std::string validation_text(const Json& v) {
  std::string out = "instance (n = " + std::to_string(v["n"].get<int>()) + ", field " +
                    v["field"].get<std::string>() + ")\n";
  auto section = [&](const char* name, const Json& s) {
    out += std::string(name) + ": " + (s["valid"].get<bool>() ? "valid" : "invalid");
    if (!s["error"].is_null()) out += " (" + s["error"].get<std::string>() + ")";
    out += "\n";
  };
  section("mu", v["mu"]);
  section("mu-symmetry", v["mu_symmetric"]);
  out += std::string("verdict: ") + (validation_ok(v) ? "valid" : "invalid") + "\n";
  return out;
}

Json presentation_validation_json(const ValidationReport& r) {
  return Json{{"graded", r.graded},
              {"generated_in_degree_one", r.generated_in_degree_one},
              {"quadratic", r.quadratic},
              {"reasons", r.reasons}};
}

std::string presentation_validation_text(const ValidationReport& r) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::string out = std::string("graded: ") + yn(r.graded) + "\n";
  out += std::string("generated in degree 1: ") + yn(r.generated_in_degree_one) + "\n";
  out += std::string("quadratic: ") + yn(r.quadratic) + "\n";
  for (const auto& reason : r.reasons) out += "  " + reason + "\n";
  return out;
}

// ------------------------------------------------------------ quadrics

Json quadrics_json(const QuadricSystem& q) {
  Json out;
  out["field"] = q.mu.field().name();
  out["n"] = q.mu.n();
  out["mu"] = matrix_json(q.mu.matrix());
  Json list = Json::array();
  for (std::size_t k = 0; k < q.raw.size(); ++k)
    list.push_back(Json{{"name", "q" + std::to_string(k + 1)},
                        {"matrix", matrix_json(q.matrices[k])},
                        {"raw", format(q.raw[k])},
                        {"monic", format(q.monic[k])}});
  out["quadrics"] = list;
  return out;
}

std::string quadrics_text(const QuadricSystem& q) {
  std::string out = "quadric system (n = " + std::to_string(q.mu.n()) + ", field " + q.mu.field().name() + ")\n";
  for (std::size_t k = 0; k < q.raw.size(); ++k) out += "q" + std::to_string(k + 1) + " = " + format(q.raw[k]) + "\n";
  out += "monic:\n";
  for (std::size_t k = 0; k < q.monic.size(); ++k)
    out += "q" + std::to_string(k + 1) + " = " + format(q.monic[k]) + "\n";
  return out;
}

// ------------------------------------------------------------ normality

Json certificate_json(const NormalityCertificate& c) {
  Json ideal = Json::array();
  for (const auto& j : c.ideal) ideal.push_back(format(j));
  Json out{{"element", format(c.element)},
           {"ideal", ideal},
           {"degree_checked", c.degree_checked},
           {"normal", c.verdict},
           {"degenerate", c.degenerate}};
  if (c.verdict && c.left_witness.rows() > 0) {
    out["left_witness"] = matrix_json(c.left_witness);
    out["right_witness"] = matrix_json(c.right_witness);
  }
  Json ids = Json::array();
  for (const auto& l : lines(format_certificate(c)))
    if (l.starts_with("  ")) ids.push_back(l.substr(2));
  out["identities"] = ids;
  return out;
}

Json search_json(const SearchResult& r) {
  Json seq = Json::array();
  for (const auto& s : r.sequence) seq.push_back(format(s));
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  Json out{{"status", r.status_name()}, {"normalizing", nullptr}, {"checks", r.checks}};
  if (r.status == SearchResult::Status::Found) out["normalizing"] = true;
  if (r.status == SearchResult::Status::NotFoundExhaustive) out["normalizing"] = false;
  out["sequence"] = seq;
  out["certificates"] = certs;
  out["note"] = r.note;
  return out;
}

std::string search_text(const SearchResult& r) {
  std::string out = "normalizing sequence: " + r.status_name() + " (" + std::to_string(r.checks) + " checks)\n";
  if (!r.note.empty()) out += "note: " + r.note + "\n";
  for (std::size_t k = 0; k < r.sequence.size(); ++k) {
    out += "r" + std::to_string(k + 1) + " = " + format(r.sequence[k]) + "\n";
    if (k < r.certificates.size())
      for (const auto& l : lines(format_certificate(r.certificates[k]))) out += "  " + l + "\n";
  }
  return out;
}

// ------------------------------------------------------------ bpf

Json bpf_json(const BpfVerdict& v) {
  Json out{{"base_point_free", v.base_point_free}, {"certified", v.certified}, {"mode", v.mode}};
  out["witness"] = v.witness ? point_json(*v.witness) : Json(nullptr);
  out["witness_text"] = v.witness_text;
  out["witness_support"] = v.witness_support ? support_json(*v.witness_support) : Json(nullptr);
  Json comps = Json::array();
  for (const auto& c : v.certificates) {
    Json gens = Json::array(), cof = Json::array();
    for (const auto& g : c.generators) gens.push_back(format(g, c.variables));
    for (const auto& h : c.cofactors) cof.push_back(format(h, c.variables));
    comps.push_back(Json{{"support", support_json(c.support)},
                         {"variables", c.variables},
                         {"generators", gens},
                         {"empty", c.empty},
                         {"cofactors", cof}});
  }
  out["components"] = comps;
  out["note"] = v.note;
  return out;
}

std::string bpf_text(const BpfVerdict& v) {
  std::string out = std::string("base-point free: ") + (v.base_point_free ? "yes" : "no") +
                    (v.certified ? " (certified" : " (not certified") + ", mode " + v.mode + ")\n";
  if (v.witness) out += "witness: " + v.witness->str() + "\n";
  if (!v.witness_text.empty()) out += "witness: " + v.witness_text + "\n";
  if (v.witness_support) out += "witness support: " + support_text(*v.witness_support) + "\n";
  for (const auto& c : v.certificates) {
    out += "component " + support_text(c.support) + ": " + (c.empty ? "empty" : "not shown empty") + "\n";
    for (std::size_t k = 0; k < c.generators.size(); ++k) {
      out += "  g" + std::to_string(k + 1) + " = " + format(c.generators[k], c.variables);
      if (c.empty) out += "    cofactor " + format(c.cofactors[k], c.variables);
      out += "\n";
    }
  }
  if (!v.note.empty()) out += "note: " + v.note + "\n";
  return out;
}

// ------------------------------------------------------------ hilbert

Json hilbert_json(const HilbertData& h, const std::optional<GrowthEstimate>& g, const std::string& growth_error) {
  Json out{{"max_degree", h.dims.empty() ? 0 : h.dims.size() - 1}, {"dims", h.dims}};
  if (g) {
    out["growth"] = Json{{"label", g->label()},
                         {"delta", g->kind == GrowthEstimate::Kind::Polynomial ? Json(g->delta) : Json(nullptr)},
                         {"window_start", g->window_start},
                         {"tail_ratios", g->tail_ratios},
                         {"estimate", true}};
  } else {
    out["growth"] = Json{{"label", "unknown"}, {"reason", growth_error}};
  }
  return out;
}

std::string hilbert_text(const HilbertData& h, const std::optional<GrowthEstimate>& g,
                         const std::string& growth_error) {
  std::vector<std::string> dims;
  for (auto d : h.dims) dims.push_back(std::to_string(d));
  std::string out = "hilbert: " + join(dims, ",") + "\n";
  out += "growth (estimate): " + (g ? g->label() : "unknown (" + growth_error + ")") + "\n";
  return out;
}

Json elimination_json(const EliminatedAlgebra& e) {
  const auto names = x_names(static_cast<int>(e.y_definitions.size()));
  Json ys = Json::array(), rels = Json::array();
  for (const auto& y : e.y_definitions) ys.push_back(format(y, names));
  for (const auto& r : e.x_relations) rels.push_back(format(r, names));
  return Json{{"y_definitions", ys}, {"x_relations", rels}};
}

// ------------------------------------------------------------ analyze

namespace {

Json unknown(const std::string& reason) { return Json{{"status", "unknown"}, {"reason", reason}}; }

}  // namespace

Json analysis_json(const AnalysisReport& r) {
  Json out;
  out["valid"] = Json{{"mu", r.mu_valid},
                      {"mu_error", r.mu_error.empty() ? Json(nullptr) : Json(r.mu_error)},
                      {"mu_symmetric", r.matrices_mu_symmetric},
                      {"symmetry_error", r.symmetry_error.empty() ? Json(nullptr) : Json(r.symmetry_error)}};
  const std::string invalid = !r.mu_valid ? "mu is invalid" : "matrices are not mu-symmetric";
  out["quadrics"] = r.quadrics ? quadrics_json(*r.quadrics) : unknown(invalid);
  out["normalizing"] = r.normalizing ? search_json(*r.normalizing)
                                     : unknown(r.normalizing_error.empty() ? invalid : r.normalizing_error);
  out["bpf"] = r.bpf ? bpf_json(*r.bpf) : unknown(r.bpf_error.empty() ? invalid : r.bpf_error);
  out["elimination"] = r.eliminated ? elimination_json(*r.eliminated)
                                    : unknown(r.elimination_error.empty() ? invalid : r.elimination_error);
  out["hilbert"] = r.hilbert ? hilbert_json(*r.hilbert, r.growth, r.growth_error)
                             : unknown(r.hilbert_error.empty() ? invalid : r.hilbert_error);
  out["notes"] = r.notes;
  return out;
}

std::string analysis_text(const AnalysisReport& r) {
  std::string out;
  if (!r.mu_valid) return "mu: invalid (" + r.mu_error + ")\n";
  if (!r.matrices_mu_symmetric) return "mu-symmetry: invalid (" + r.symmetry_error + ")\n";
  out += quadrics_text(*r.quadrics) + "\n";
  out += r.normalizing ? search_text(*r.normalizing) : "normalizing sequence: unknown (" + r.normalizing_error + ")\n";
  out += "\n";
  out += r.bpf ? bpf_text(*r.bpf) : "base-point free: unknown (" + r.bpf_error + ")\n";
  out += "\n";
  if (r.eliminated) {
    const auto names = x_names(static_cast<int>(r.eliminated->y_definitions.size()));
    for (std::size_t k = 0; k < r.eliminated->y_definitions.size(); ++k)
      out += "y" + std::to_string(k + 1) + " = " + format(r.eliminated->y_definitions[k], names) + "\n";
    for (const auto& rel : r.eliminated->x_relations) out += "relation: " + format(rel, names) + " = 0\n";
  } else {
    out += "elimination: unknown (" + r.elimination_error + ")\n";
  }
  out += r.hilbert ? hilbert_text(*r.hilbert, r.growth, r.growth_error)
                   : "hilbert: unknown (" + r.hilbert_error + ")\n";
  out += "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace gsc::cli
