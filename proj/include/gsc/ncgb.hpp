#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gsc/freealg.hpp"

namespace gsc {

/// Deglex order with a generator precedence: `precedence` lists generator
/// indices from smallest to largest. The default is the declared order.
class TermOrder {
 public:
  TermOrder() = default;
  /// Throws InvalidArgument unless `precedence` is a permutation of 0..n-1.
  explicit TermOrder(std::vector<int> precedence);
  static TermOrder natural(int n);

  const std::vector<int>& precedence() const noexcept { return precedence_; }
  bool is_natural() const;
  /// a < b in this order.
  bool less(const Word& a, const Word& b) const;
  std::string str(std::span<const std::string> names) const;

  Word to_internal(const Word& w) const;
  Word from_internal(const Word& w) const;
  FreePoly to_internal(const FreePoly& f) const;
  FreePoly from_internal(const FreePoly& f) const;

 private:
  std::vector<int> precedence_;
  std::vector<int> rank_;
};

enum class ReductionStrategy { Leftmost, Rightmost, Random };

/// Reduced two-sided Groebner basis of a homogeneous ideal, certified up to a
/// degree bound. Elements are monic and inter-reduced.
class GroebnerBasis {
 public:
  const Field& field() const noexcept { return field_; }
  int num_gens() const noexcept { return num_gens_; }
  const TermOrder& order() const noexcept { return order_; }
  int truncation_degree() const noexcept { return truncation_; }
  int complete_up_to() const noexcept { return complete_up_to_; }

  /// Elements in the caller's generator labels, sorted by degree then by
  /// leading word.
  std::vector<FreePoly> elements() const;
  std::vector<Word> leading_words() const;
  std::size_t size() const noexcept { return elements_.size(); }

  /// Overlap ambiguities examined and how many produced a new element.
  std::size_t overlaps_checked() const noexcept { return overlaps_checked_; }
  std::size_t overlaps_added() const noexcept { return overlaps_added_; }

  /// Throws DegreeExceedsTruncation when a word of f is longer than
  /// complete_up_to().
  FreePoly normal_form(const FreePoly& f,
                       ReductionStrategy strategy = ReductionStrategy::Leftmost,
                       std::mt19937_64* rng = nullptr) const;
  bool reduces_to_zero(const FreePoly& f) const { return normal_form(f).is_zero(); }

  /// Words of degree d avoiding every leading word, in deglex order of the
  /// caller's labels.
  std::vector<Word> normal_words(int degree) const;

  friend GroebnerBasis complete(std::span<const FreePoly> relations, const Field& field,
                                int num_gens, int max_degree, const TermOrder& order);

 private:
  FreePoly reduce_internal(FreePoly f, ReductionStrategy strategy, std::mt19937_64* rng) const;
  void find_occurrences(const Word& w, std::vector<std::pair<std::size_t, std::size_t>>& out) const;
  void insert(FreePoly monic_internal);

  Field field_;
  int num_gens_ = 0;
  TermOrder order_;
  int truncation_ = 0;
  int complete_up_to_ = 0;
  std::vector<FreePoly> elements_;           // internal labels
  std::map<Word, std::size_t> lead_index_;   // internal leading word -> element
  std::vector<std::size_t> lead_lengths_;
  std::size_t overlaps_checked_ = 0;
  std::size_t overlaps_added_ = 0;
};

/// Degree-by-degree completion of homogeneous relations on `num_gens`
/// degree-1 generators. All overlap ambiguities of degree <= max_degree are
/// resolved. Throws InhomogeneousInput for inhomogeneous relations.
GroebnerBasis complete(std::span<const FreePoly> relations, const Field& field, int num_gens,
                       int max_degree, const TermOrder& order = {});
/// As above; additionally rejects generators of degree other than 1.
GroebnerBasis complete(const Presentation& p, int max_degree, const TermOrder& order = {});

inline FreePoly normal_form(const FreePoly& f, const GroebnerBasis& g) { return g.normal_form(f); }

/// Header line recording order, precedence and truncation, then one element
/// per line in the free-algebra text form.
std::string serialize(const GroebnerBasis& g, std::span<const std::string> names);

struct HilbertData {
  std::vector<std::uint64_t> dims;  // dims[i] = dim A_i, i = 0..N
};

HilbertData hilbert_function(const Presentation& p, int max_degree, const TermOrder& order = {});
HilbertData hilbert_function(const GroebnerBasis& g);

struct GrowthEstimate {
  enum class Kind { Polynomial, Exponential, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int delta = -1;  // only for Polynomial
  /// differences[m] is the m-th finite difference sequence of dims.
  std::vector<std::vector<long long>> differences;
  /// Ratios d[i+1]/d[i] over the tail window, as exact strings.
  std::vector<std::string> tail_ratios;
  std::size_t window_start = 0;

  std::string label() const;
};

/// Heuristic classification of a finite Hilbert sequence. Polynomial(delta):
/// the (delta+1)-th difference vanishes on the tail window i >= L/2 and the
/// delta-th does not. Exponential: 4*d[i+1] >= 5*d[i] on the tail window.
/// Throws WindowTooShort for fewer than 5 entries.
GrowthEstimate growth_estimate(const HilbertData& h);

}  // namespace gsc
