#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsc/scalars.hpp"

namespace gsc {

/// A word in the free monoid: generator indices, 0-based internally and
/// printed 1-based.
using Word = std::vector<int>;

/// Degree-first, then lexicographic by generator index (earlier = smaller).
struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);

/// Element of the free algebra K<x_1..x_n>. Terms are kept sorted in deglex
/// order with zero coefficients dropped, so structural equality is
/// mathematical equality.
class FreePoly {
 public:
  using Terms = std::map<Word, Scalar, DeglexLess>;

  FreePoly() = default;
  FreePoly(const Field& field, int num_gens) : field_(field), num_gens_(num_gens) {}

  static FreePoly monomial(const Field& field, int num_gens, Word w, const Scalar& c);
  static FreePoly monomial(const Field& field, int num_gens, Word w);
  static FreePoly constant(const Field& field, int num_gens, const Scalar& c);
  static FreePoly generator(const Field& field, int num_gens, int index);

  const Field& field() const noexcept { return field_; }
  int num_gens() const noexcept { return num_gens_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const Word& w) const;
  void add_term(const Word& w, const Scalar& c);

  /// Largest word in deglex order; precondition: nonzero.
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const Scalar& leading_coefficient() const { return terms_.rbegin()->second; }

  /// Maximum word length (-1 for zero).
  int degree() const;
  /// All words share one weighted degree. Zero counts as homogeneous.
  bool is_homogeneous(std::span<const int> gen_degrees = {}) const;
  /// Weighted degree of each word; empty weight list means all ones.
  std::vector<int> word_degrees(std::span<const int> gen_degrees = {}) const;

  FreePoly monic() const;

  FreePoly operator-() const;
  FreePoly& operator+=(const FreePoly& g);
  FreePoly& operator-=(const FreePoly& g);
  FreePoly& operator*=(const Scalar& c);
  friend FreePoly operator+(FreePoly f, const FreePoly& g) { return f += g; }
  friend FreePoly operator-(FreePoly f, const FreePoly& g) { return f -= g; }
  friend FreePoly operator*(FreePoly f, const Scalar& c) { return f *= c; }
  friend FreePoly operator*(const Scalar& c, FreePoly f) { return f *= c; }
  friend FreePoly operator*(const FreePoly& f, const FreePoly& g);

  /// u * f * v for words u, v.
  FreePoly sandwich(const Word& left, const Word& right) const;

  friend bool operator==(const FreePoly& a, const FreePoly& b) {
    return a.num_gens_ == b.num_gens_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const FreePoly& g) const;
  Field field_;
  int num_gens_ = 0;
  Terms terms_;
};

inline FreePoly poly_add(const FreePoly& f, const FreePoly& g) { return f + g; }
inline FreePoly poly_scale(const FreePoly& f, const Scalar& c) { return f * c; }
inline FreePoly poly_mul(const FreePoly& f, const FreePoly& g) { return f * g; }

/// {prefix + "1", ..., prefix + n}
std::vector<std::string> indexed_names(std::string_view prefix, int n);

/// Text form: terms joined by " + " / " - ", monomials as "*"-separated
/// generator names with "^" powers, leading (deglex-largest) term first.
std::string format_word(const Word& w, std::span<const std::string> names);
std::string format(const FreePoly& f, std::span<const std::string> names);
/// Inverse of `format`. Also accepts the Unicode minus sign and omitted
/// spaces; coefficients may be "a/b".
FreePoly parse_free_poly(std::string_view text, std::span<const std::string> names,
                         const Field& field);

/// A graded presentation: generators with positive degrees and relations in
/// the free algebra on them.
struct Presentation {
  Field field;
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<FreePoly> relations;

  int num_gens() const { return static_cast<int>(names.size()); }
  bool generated_in_degree_one() const;
  /// Generators named x1..xn of degree 1.
  static Presentation standard(const Field& field, int n, std::vector<FreePoly> relations,
                               std::string_view prefix = "x");
};

/// K[x_1..x_d] as the quotient by the commutators x_j x_i - x_i x_j (i < j).
Presentation commutative_polynomial_ring(const Field& field, int d);

struct ValidationReport {
  bool graded = true;
  bool quadratic = true;
  bool generated_in_degree_one = true;
  std::vector<std::string> reasons;
};

ValidationReport validate_presentation(const Presentation& p);

/// A point of P^{n-1} x P^{n-1}, stored with the first nonzero coordinate of
/// each component equal to 1.
struct BiPoint {
  Vector a;
  Vector b;

  /// Rescales to canonical representatives. Throws ZeroRepresentative when a
  /// component is identically zero and SizeMismatch on unequal lengths.
  static BiPoint make(Vector a, Vector b);
  std::string str() const;
  friend bool operator==(const BiPoint&, const BiPoint&) = default;
};

/// Evaluates a homogeneous degree-2 element at p: the word z_i z_j maps to
/// a_i b_j. Does not rescale p, so only the zero/nonzero verdict is
/// representative-independent.
Scalar evaluate_deg2(const FreePoly& f, const Vector& a, const Vector& b);
Scalar evaluate_deg2(const FreePoly& f, const BiPoint& p);

}  // namespace gsc
