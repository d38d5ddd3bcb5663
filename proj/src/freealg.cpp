#include "gsc/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace gsc {

namespace {

constexpr const char* kModule = "freealg";

std::string replace_unicode_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
    }
  }
  return out;
}

}  // namespace

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word w;
  w.reserve(a.size() + b.size() + c.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

// ---------------------------------------------------------------- FreePoly

FreePoly FreePoly::monomial(const Field& field, int num_gens, Word w, const Scalar& c) {
  FreePoly f(field, num_gens);
  f.add_term(w, c);
  return f;
}

FreePoly FreePoly::monomial(const Field& field, int num_gens, Word w) {
  return monomial(field, num_gens, std::move(w), Scalar::one(field));
}

FreePoly FreePoly::constant(const Field& field, int num_gens, const Scalar& c) {
  return monomial(field, num_gens, {}, c);
}

FreePoly FreePoly::generator(const Field& field, int num_gens, int index) {
  return monomial(field, num_gens, {index});
}

Scalar FreePoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void FreePoly::add_term(const Word& w, const Scalar& c) {
  if (c.field() != field_)
    throw Error(ErrorKind::FieldMismatch, kModule, "coefficient over the wrong field");
  for (int letter : w)
    if (letter < 0 || letter >= num_gens_)
      throw Error(ErrorKind::GeneratorMismatch, kModule,
                  "generator index " + std::to_string(letter + 1) + " out of range");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int FreePoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

std::vector<int> FreePoly::word_degrees(std::span<const int> gen_degrees) const {
  std::vector<int> out;
  for (const auto& [w, c] : terms_) {
    int d = 0;
    for (int letter : w) d += gen_degrees.empty() ? 1 : gen_degrees[static_cast<std::size_t>(letter)];
    out.push_back(d);
  }
  return out;
}

bool FreePoly::is_homogeneous(std::span<const int> gen_degrees) const {
  auto d = word_degrees(gen_degrees);
  return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
}

FreePoly FreePoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coefficient().inverse();
}

void FreePoly::check_compatible(const FreePoly& g) const {
  if (num_gens_ != g.num_gens_)
    throw Error(ErrorKind::GeneratorMismatch, kModule,
                "polynomials over " + std::to_string(num_gens_) + " and " +
                    std::to_string(g.num_gens_) + " generators");
  if (field_ != g.field_)
    throw Error(ErrorKind::FieldMismatch, kModule, "polynomials over different fields");
}

FreePoly FreePoly::operator-() const {
  FreePoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

FreePoly& FreePoly::operator+=(const FreePoly& g) {
  check_compatible(g);
  for (const auto& [w, c] : g.terms_) add_term(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& g) {
  check_compatible(g);
  for (const auto& [w, c] : g.terms_) add_term(w, -c);
  return *this;
}

FreePoly& FreePoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

FreePoly operator*(const FreePoly& f, const FreePoly& g) {
  f.check_compatible(g);
  FreePoly r(f.field_, f.num_gens_);
  for (const auto& [u, a] : f.terms_)
    for (const auto& [v, b] : g.terms_) r.add_term(concat(u, v), a * b);
  return r;
}

FreePoly FreePoly::sandwich(const Word& left, const Word& right) const {
  FreePoly r(field_, num_gens_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(concat(left, w, right), c);
  return r;
}

// ---------------------------------------------------------------- text form

std::vector<std::string> indexed_names(std::string_view prefix, int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return names;
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += names[static_cast<std::size_t>(w[i])];
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string format(const FreePoly& f, std::span<const std::string> names) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    const bool neg = c.is_negative();
    const Scalar mag = neg ? -c : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (w.empty()) {
      out += mag.str();
    } else {
      if (!mag.is_one()) out += mag.str() + "*";
      out += format_word(w, names);
    }
  }
  return out;
}

FreePoly parse_free_poly(std::string_view text, std::span<const std::string> names,
                         const Field& field) {
  const int n = static_cast<int>(names.size());
  const std::string s = replace_unicode_minus(text);
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ParseError, kModule,
                 "cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  FreePoly result(field, n);
  if (s.empty()) throw fail("empty input");
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw fail("expected '+' or '-'");
    }
    std::size_t end = s.find_first_of("+-", i);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(i, end - i);
    if (term.empty()) throw fail("empty term");
    i = end;

    Scalar coeff = Scalar::one(field);
    Word word;
    std::stringstream factors(term);
    std::string factor;
    while (std::getline(factors, factor, '*')) {
      if (factor.empty()) throw fail("empty factor");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= factor.find('/') != std::string::npos && field.is_prime()
                     ? Scalar(field, parse_scalar(factor, Field::rationals()).rational())
                     : parse_scalar(factor, field);
        continue;
      }
      std::string name = factor;
      std::size_t power = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        name = factor.substr(0, caret);
        const std::string exp = factor.substr(caret + 1);
        if (exp.empty() || !std::all_of(exp.begin(), exp.end(),
                                        [](unsigned char c) { return std::isdigit(c); }))
          throw fail("bad exponent '" + exp + "'");
        power = std::stoul(exp);
      }
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw fail("unknown generator '" + name + "'");
      word.insert(word.end(), power, static_cast<int>(it - names.begin()));
    }
    result.add_term(word, negative ? -coeff : coeff);
  }
  return result;
}

// ---------------------------------------------------------------- presentations

bool Presentation::generated_in_degree_one() const {
  return std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 1; });
}

Presentation Presentation::standard(const Field& field, int n, std::vector<FreePoly> relations,
                                    std::string_view prefix) {
  return Presentation{field, indexed_names(prefix, n), std::vector<int>(static_cast<std::size_t>(n), 1),
                      std::move(relations)};
}

Presentation commutative_polynomial_ring(const Field& field, int d) {
  std::vector<FreePoly> rels;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      FreePoly r(field, d);
      r.add_term({j, i}, Scalar::one(field));
      r.add_term({i, j}, -Scalar::one(field));
      rels.push_back(std::move(r));
    }
  return Presentation::standard(field, d, std::move(rels));
}

ValidationReport validate_presentation(const Presentation& p) {
  ValidationReport report;
  report.generated_in_degree_one = p.generated_in_degree_one();
  for (std::size_t g = 0; g < p.degrees.size(); ++g)
    if (p.degrees[g] != 1)
      report.reasons.push_back("generator " + p.names[g] + " has degree " +
                               std::to_string(p.degrees[g]) + ", not generated by degree 1");
  bool all_quadratic = true;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const FreePoly& rel = p.relations[r];
    const std::string shown = format(rel, p.names);
    if (rel.is_zero()) {
      report.reasons.push_back("relation " + std::to_string(r + 1) + " is zero");
      continue;
    }
    auto degs = rel.word_degrees(p.degrees);
    std::set<int> distinct(degs.begin(), degs.end());
    if (distinct.size() > 1) {
      report.graded = false;
      std::string list;
      for (int d : distinct) list += (list.empty() ? "" : ", ") + std::to_string(d);
      report.reasons.push_back("relation " + std::to_string(r + 1) + " (" + shown +
                               ") is not homogeneous: degrees " + list);
      all_quadratic = false;
    } else if (*distinct.begin() != 2) {
      report.reasons.push_back("relation " + std::to_string(r + 1) + " (" + shown +
                               ") has degree " + std::to_string(*distinct.begin()) + ", not 2");
      all_quadratic = false;
    }
  }
  report.quadratic = report.graded && report.generated_in_degree_one && all_quadratic;
  return report;
}

// ---------------------------------------------------------------- points

BiPoint BiPoint::make(Vector a, Vector b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::SizeMismatch, kModule, "point components have different lengths");
  auto normalize = [](Vector& v) {
    auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == v.end())
      throw Error(ErrorKind::ZeroRepresentative, kModule, "point component is identically zero");
    const Scalar inv = it->inverse();
    for (auto& s : v) s *= inv;
  };
  normalize(a);
  normalize(b);
  return BiPoint{std::move(a), std::move(b)};
}

std::string BiPoint::str() const {
  auto part = [](const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
  };
  return "(" + part(a) + "," + part(b) + ")";
}

Scalar evaluate_deg2(const FreePoly& f, const Vector& a, const Vector& b) {
  const auto n = static_cast<std::size_t>(f.num_gens());
  if (a.size() != n || b.size() != n)
    throw Error(ErrorKind::SizeMismatch, kModule, "point has the wrong number of coordinates");
  auto all_zero = [](const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
  };
  if (all_zero(a) || all_zero(b))
    throw Error(ErrorKind::ZeroRepresentative, kModule, "point component is identically zero");
  Scalar value = Scalar::zero(f.field());
  for (const auto& [w, c] : f.terms()) {
    if (w.size() != 2)
      throw Error(ErrorKind::NotDegreeTwo, kModule, "evaluation needs a homogeneous degree-2 element");
    value += c * a[static_cast<std::size_t>(w[0])] * b[static_cast<std::size_t>(w[1])];
  }
  return value;
}

Scalar evaluate_deg2(const FreePoly& f, const BiPoint& p) { return evaluate_deg2(f, p.a, p.b); }

}  // namespace gsc
