#include "gsc/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gsc::cli {

namespace {

constexpr const char* kModule = "cli";

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, kModule, what); }

std::string entry_string(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(where + ": entries must be strings or integers");
}

Strings square(const Json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) fail(where + " must have " + std::to_string(n) + " rows");
  Strings out;
  for (std::size_t r = 0; r < v.size(); ++r) {
    const Json& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(where + " row " + std::to_string(r + 1) + " must have " + std::to_string(n) + " entries");
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(entry_string(c, where));
    out.push_back(std::move(cells));
  }
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, const Field& field, const std::map<std::string, Scalar>& vars)
      : text_(text), field_(field), vars_(vars) {}

  Scalar parse() {
    Scalar v = sum();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail("cannot evaluate '" + std::string(text_) + "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar sum() {
    Scalar v = product();
    while (true) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }
  Scalar product() {
    Scalar v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const Scalar d = unary();
        if (d.is_zero()) error("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("exponent must be an integer");
    const long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (neg && base.is_zero()) error("division by zero");
    return base.pow(neg ? -e : e);
  }
  Scalar atom() {
    skip();
    if (eat('(')) {
      Scalar v = sum();
      if (!eat(')')) error("missing ')'");
      return v;
    }
    const std::size_t start = pos_;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return parse_scalar(text_.substr(start, pos_ - start), field_);
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) error(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end");
    const std::string name(text_.substr(start, pos_ - start));
    auto it = vars_.find(name);
    if (it == vars_.end()) error("unknown parameter '" + name + "'");
    return it->second;
  }

  std::string_view text_;
  const Field& field_;
  const std::map<std::string, Scalar>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar eval_expression(std::string_view text, const Field& field, const std::map<std::string, Scalar>& vars) {
  return ExprParser(text, field, vars).parse();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) fail("instance must be a JSON object");
  static const std::vector<std::string> known{"description", "field", "n", "mu", "matrices", "parameters", "options"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) fail("unknown instance key '" + key + "'");
  Instance inst;
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) fail("description must be a string");
    inst.description = doc["description"].get<std::string>();
  }
  if (doc.contains("field")) {
    if (!doc["field"].is_string()) fail("field must be a string");
    inst.field = doc["field"].get<std::string>();
  }
  Field::parse(inst.field);  // rejects unknown fields early
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
    fail("n must be a positive integer");
  inst.n = doc["n"].get<int>();
  if (!doc.contains("mu")) fail("missing mu");
  inst.mu = square(doc["mu"], inst.n, "mu");
  if (!doc.contains("matrices") || !doc["matrices"].is_array()) fail("matrices must be an array");
  for (std::size_t k = 0; k < doc["matrices"].size(); ++k)
    inst.matrices.push_back(square(doc["matrices"][k], inst.n, "M_" + std::to_string(k + 1)));
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object()) fail("parameters must be an object");
    for (const auto& [key, value] : doc["parameters"].items())
      inst.parameters.emplace_back(key, entry_string(value, "parameter " + key));
  }
  if (doc.contains("options")) {
    const Json& o = doc["options"];
    if (!o.is_object()) fail("options must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key == "max_degree" && value.is_number_integer())
        inst.options.max_degree = value.get<int>();
      else if (key == "bpf_mode" && value.is_string())
        inst.options.bpf_mode = value.get<std::string>();
      else if (key == "budget" && value.is_number_integer())
        inst.options.budget = value.get<long>();
      else
        fail("bad option '" + key + "'");
    }
  }
  return inst;
}

Json to_json(const Instance& inst) {
  Json doc = Json::object();
  if (!inst.description.empty()) doc["description"] = inst.description;
  doc["field"] = inst.field;
  doc["n"] = inst.n;
  doc["mu"] = inst.mu;
  doc["matrices"] = inst.matrices;
  if (!inst.parameters.empty()) {
    Json p = Json::object();
    for (const auto& [k, v] : inst.parameters) p[k] = v;
    doc["parameters"] = p;
  }
  Json o = Json::object();
  if (inst.options.max_degree) o["max_degree"] = *inst.options.max_degree;
  if (inst.options.bpf_mode) o["bpf_mode"] = *inst.options.bpf_mode;
  if (inst.options.budget) o["budget"] = *inst.options.budget;
  if (!o.empty()) doc["options"] = o;
  return doc;
}

EvaluatedInstance evaluate(const Instance& inst, const std::vector<std::pair<std::string, std::string>>& overrides) {
  EvaluatedInstance ev{Field::parse(inst.field), {}, {}, {}};
  for (const auto& [name, value] : overrides)
    if (std::none_of(inst.parameters.begin(), inst.parameters.end(), [&](const auto& p) { return p.first == name; }))
      fail("unknown parameter '" + name + "'");
  // Parameters may refer to earlier ones.
  for (const auto& [name, raw] : inst.parameters) {
    std::string text = raw;
    for (const auto& [oname, ovalue] : overrides)
      if (oname == name) text = ovalue;
    ev.parameters[name] = eval_expression(text, ev.field, ev.parameters);
  }
  auto mat = [&](const Strings& s) {
    const auto n = static_cast<std::size_t>(inst.n);
    Matrix m(ev.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = eval_expression(s[i][j], ev.field, ev.parameters);
    return m;
  };
  ev.mu = mat(inst.mu);
  for (const auto& m : inst.matrices) ev.matrices.push_back(mat(m));
  return ev;
}

bool looks_like_presentation(const Json& doc) { return doc.is_object() && doc.contains("generators"); }

Presentation parse_presentation(const Json& doc) {
  if (!looks_like_presentation(doc)) fail("presentation must have generators");
  Presentation p;
  p.field = Field::parse(doc.value("field", std::string("Q")));
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) fail("generator names must be strings");
    p.names.push_back(g.get<std::string>());
  }
  if (doc.contains("degrees")) {
    for (const auto& d : doc["degrees"]) {
      if (!d.is_number_integer() || d.get<int>() < 1) fail("degrees must be positive integers");
      p.degrees.push_back(d.get<int>());
    }
    if (p.degrees.size() != p.names.size()) fail("one degree per generator required");
  } else {
    p.degrees.assign(p.names.size(), 1);
  }
  if (doc.contains("relations"))
    for (const auto& r : doc["relations"]) {
      if (!r.is_string()) fail("relations must be strings");
      p.relations.push_back(parse_free_poly(r.get<std::string>(), p.names, p.field));
    }
  return p;
}

}  // namespace gsc::cli
