#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gsc/freealg.hpp"
#include "gsc/scalars.hpp"

namespace gsc::cli {

using Json = nlohmann::ordered_json;
using Strings = std::vector<std::vector<std::string>>;

struct InstanceOptions {
  std::optional<int> max_degree;
  std::optional<std::string> bpf_mode;
  std::optional<long> budget;
  friend bool operator==(const InstanceOptions&, const InstanceOptions&) = default;
};

/// An instance file as written: entries stay strings until evaluated.
struct Instance {
  std::string description;
  std::string field = "Q";
  int n = 0;
  Strings mu;
  std::vector<Strings> matrices;
  std::vector<std::pair<std::string, std::string>> parameters;  // file order
  InstanceOptions options;
  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws Error(ParseError) on malformed documents.
Instance parse_instance(const Json& doc);
Json to_json(const Instance& inst);

struct EvaluatedInstance {
  Field field;
  Matrix mu;
  std::vector<Matrix> matrices;
  std::map<std::string, Scalar> parameters;
};

/// Substitutes parameters (overrides win) and evaluates every entry.
EvaluatedInstance evaluate(const Instance& inst,
                           const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// + - * / ^ with integer exponents, parentheses, integer literals and
/// parameter names.
Scalar eval_expression(std::string_view text, const Field& field,
                       const std::map<std::string, Scalar>& vars);

/// {"field", "generators", "degrees", "relations"}.
Presentation parse_presentation(const Json& doc);
bool looks_like_presentation(const Json& doc);

Json read_json_file(const std::string& path);

}  // namespace gsc::cli
