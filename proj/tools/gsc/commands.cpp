#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <thread>

#include "gsc/report.hpp"

namespace gsc::cli {

namespace {

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::ParseError, "cli", what); }

int max_degree(const Instance* inst, const Settings& s) {
  if (s.max_degree) return *s.max_degree;
  if (inst && inst->options.max_degree) return *inst->options.max_degree;
  return 6;
}

BpfMode bpf_mode(const Instance& inst, const Settings& s) {
  try {
    if (s.bpf_mode) return BpfMode::parse(*s.bpf_mode);
    if (inst.options.bpf_mode) return BpfMode::parse(*inst.options.bpf_mode);
  } catch (const Error& e) {
    usage(e.what());
  }
  return {};
}

SearchOptions search_options(const Instance& inst, const Settings& s) {
  SearchOptions o;
  if (s.budget)
    o.budget = static_cast<std::size_t>(*s.budget);
  else if (inst.options.budget)
    o.budget = static_cast<std::size_t>(*inst.options.budget);
  return o;
}

TermOrder term_order(const Settings& s, int n) {
  if (!s.precedence) return TermOrder::natural(n);
  std::vector<int> prec;
  std::string cur;
  auto flush = [&] {
    if (cur.empty() || !std::all_of(cur.begin(), cur.end(), ::isdigit)) usage("bad --precedence '" + *s.precedence + "'");
    prec.push_back(std::stoi(cur) - 1);
    cur.clear();
  };
  for (char c : *s.precedence) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  if (static_cast<int>(prec.size()) != n)
    usage("--precedence must list all " + std::to_string(n) + " generators");
  try {
    return TermOrder(prec);
  } catch (const Error& e) {
    usage(e.what());
  }
}

AnalysisOptions analysis_options(const Instance& inst, const Settings& s) {
  AnalysisOptions o;
  o.max_degree = max_degree(&inst, s);
  o.bpf = bpf_mode(inst, s);
  o.search = search_options(inst, s);
  return o;
}

CommandResult presentation_command(const std::string& command, const Json& doc, const Settings& s) {
  const Presentation p = parse_presentation(doc);
  CommandResult r;
  if (command == "validate") {
    const ValidationReport v = validate_presentation(p);
    r.json = presentation_validation_json(v);
    r.text = presentation_validation_text(v);
    return r;
  }
  if (command != "hilbert") usage(command + " expects an instance file, not a presentation");
  const HilbertData h = hilbert_function(p, max_degree(nullptr, s), term_order(s, p.num_gens()));
  std::optional<GrowthEstimate> g;
  std::string gerr;
  try {
    g = growth_estimate(h);
  } catch (const Error& e) {
    gerr = e.what();
  }
  r.json = hilbert_json(h, g, gerr);
  r.text = hilbert_text(h, g, gerr);
  return r;
}

}  // namespace

std::pair<std::string, std::string> split_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) usage("--param expects name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

CommandResult run_command(const std::string& command, const Json& doc, const Settings& s) {
  if (looks_like_presentation(doc)) return presentation_command(command, doc, s);
  const Instance inst = parse_instance(doc);
  const EvaluatedInstance ev = evaluate(inst, s.params);
  CommandResult r;
  if (command == "validate") {
    r.json = validation_json(ev.mu, ev.matrices);
    r.text = validation_text(r.json);
    r.exit_code = validation_ok(r.json) ? 0 : 1;
    return r;
  }
  const MuMatrix mu(ev.mu);
  if (command == "quadrics") {
    const QuadricSystem q = build_quadric_system(mu, ev.matrices);
    r.json = quadrics_json(q);
    r.text = quadrics_text(q);
  } else if (command == "normalize") {
    const QuadricSystem q = build_quadric_system(mu, ev.matrices);
    const SkewRing ring(mu);
    const SearchResult res =
        find_normalizing_sequence(q.monic, {}, ring, max_degree(&inst, s), search_options(inst, s));
    r.json = search_json(res);
    r.text = search_text(res);
  } else if (command == "bpf") {
    const QuadricSystem q = build_quadric_system(mu, ev.matrices);
    const BpfVerdict v = is_base_point_free(q, bpf_mode(inst, s));
    r.json = bpf_json(v);
    r.text = bpf_text(v);
  } else if (command == "hilbert") {
    const EliminatedAlgebra e = eliminate_y(build_gsca(mu, ev.matrices));
    const HilbertData h = hilbert_function(e.presentation, max_degree(&inst, s), term_order(s, mu.n()));
    std::optional<GrowthEstimate> g;
    std::string gerr;
    try {
      g = growth_estimate(h);
    } catch (const Error& ex) {
      gerr = ex.what();
    }
    r.json = hilbert_json(h, g, gerr);
    r.json["elimination"] = elimination_json(e);
    r.text = hilbert_text(h, g, gerr);
  } else if (command == "analyze") {
    const AnalysisReport rep = analyze(ev.mu, ev.matrices, analysis_options(inst, s));
    r.json = analysis_json(rep);
    r.text = analysis_text(rep);
  } else {
    usage("unknown command '" + command + "'");
  }
  return r;
}

CommandResult run_search(const Json& grid, const std::string& base_dir, const Settings& s) {
  if (!grid.is_object() || !grid.contains("instance")) usage("grid file needs an instance");
  Json inst_doc = grid["instance"];
  if (inst_doc.is_string()) {
    std::filesystem::path path(inst_doc.get<std::string>());
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    inst_doc = read_json_file(path.string());
  }
  const Instance inst = parse_instance(inst_doc);

  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  const Json g = grid.value("grid", Json::object());
  if (!g.is_object()) usage("grid must be an object");
  for (const auto& [name, values] : g.items()) {
    if (!values.is_array()) usage("grid values for '" + name + "' must be an array");
    std::vector<std::string> vs;
    for (const auto& v : values) {
      if (v.is_string())
        vs.push_back(v.get<std::string>());
      else if (v.is_number_integer())
        vs.push_back(std::to_string(v.get<long long>()));
      else
        usage("grid values must be strings or integers");
    }
    axes.emplace_back(name, std::move(vs));
  }
  std::size_t total = axes.empty() ? 0 : 1;
  for (const auto& [name, vs] : axes) total *= vs.size();

  // First axis varies slowest.
  auto point_params = [&](std::size_t index) {
    std::vector<std::pair<std::string, std::string>> params(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      const auto& vs = axes[a].second;
      params[a] = {axes[a].first, vs[index % vs.size()]};
      index /= vs.size();
    }
    return params;
  };

  struct PointOutcome {
    Json line;
    std::string normalizing = "error";
    std::string bpf = "error";
    bool error = false;
  };
  std::vector<PointOutcome> outcomes(total);
  const AnalysisOptions opts = analysis_options(inst, s);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      PointOutcome& out = outcomes[i];
      Settings ps = s;
      ps.params = point_params(i);
      for (const auto& extra : s.params) ps.params.push_back(extra);
      Json params = Json::object();
      for (const auto& [k, v] : ps.params) params[k] = v;
      out.line = Json{{"index", i}, {"parameters", params}};
      try {
        const EvaluatedInstance ev = evaluate(inst, ps.params);
        const AnalysisReport rep = analyze(ev.mu, ev.matrices, opts);
        if (!rep.mu_valid || !rep.matrices_mu_symmetric) {
          out.error = true;
          out.line["error"] = !rep.mu_valid ? rep.mu_error : rep.symmetry_error;
        }
        out.normalizing = rep.normalizing ? rep.normalizing->status_name() : "unknown";
        out.bpf = rep.bpf ? (rep.bpf->base_point_free ? "true" : "false") : "unknown";
        if (out.error) out.normalizing = out.bpf = "error";
        out.line["normalizing"] = out.normalizing;
        out.line["bpf"] = out.bpf;
        out.line["report"] = analysis_json(rep);
      } catch (const std::exception& e) {
        out.error = true;
        out.line["normalizing"] = out.line["bpf"] = "error";
        out.line["error"] = e.what();
      }
    }
  };
  unsigned jobs = s.jobs > 0 ? static_cast<unsigned>(s.jobs) : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  pool.clear();

  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  std::size_t errors = 0;
  Json bpf_false = Json::array();
  Json points = Json::array();
  std::string text;
  for (const auto& o : outcomes) {
    points.push_back(o.line);
    errors += o.error ? 1 : 0;
    ++counts[{o.normalizing, o.bpf}];
    if (o.bpf == "false") bpf_false.push_back(o.line["parameters"]);
    std::string ptxt;
    for (const auto& [k, v] : o.line["parameters"].items()) ptxt += (ptxt.empty() ? "" : " ") + k + "=" + v.get<std::string>();
    text += "#" + std::to_string(o.line["index"].get<std::size_t>()) + " " + ptxt + ": normalizing " + o.normalizing +
            ", bpf " + o.bpf;
    if (o.error) text += " (" + o.line["error"].get<std::string>() + ")";
    text += "\n";
  }
  Json combos = Json::array();
  text += "summary: " + std::to_string(total) + " points, " + std::to_string(errors) + " errors\n";
  for (const auto& [key, count] : counts) {
    combos.push_back(Json{{"normalizing", key.first}, {"bpf", key.second}, {"count", count}});
    text += "  normalizing " + key.first + ", bpf " + key.second + ": " + std::to_string(count) + "\n";
  }
  CommandResult r;
  r.json = Json{{"points", points},
                {"summary", Json{{"points", total}, {"errors", errors}, {"combinations", combos}, {"bpf_false", bpf_false}}}};
  r.text = text;
  return r;
}

}  // namespace gsc::cli
