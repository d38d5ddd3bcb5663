#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsc/freealg.hpp"
#include "gsc/ncgb.hpp"

namespace gsc {

/// The matrix mu with mu_ii = 1 and mu_ij * mu_ji = 1.
class MuMatrix {
 public:
  MuMatrix() = default;
  /// Throws InvalidMu naming the first violated entry.
  explicit MuMatrix(Matrix entries);
  /// Builds mu for n = 2 from mu_12.
  static MuMatrix two(const Scalar& mu12);
  /// All ones: the commutative case.
  static MuMatrix ones(const Field& field, int n);

  /// First violation as a human-readable message, 1-based indices.
  static std::optional<std::string> violation(const Matrix& entries);

  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  const Field& field() const noexcept { return entries_.field(); }
  /// 0-based.
  const Scalar& operator()(int i, int j) const {
    return entries_(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// Exponent tuple (e_1..e_n) standing for the straightened word z_1^e1...z_n^en.
using Exponent = std::vector<int>;

/// Terms sorted like their straightened words in deglex order: by total
/// degree, then z1^2 before z1*z2 before z2^2.
struct ExponentLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

Word exponent_word(const Exponent& e);
Exponent word_exponent(const Word& w, int n);
int total_degree(const Exponent& e);

/// Element of S in straightened normal form.
class SkewPoly {
 public:
  using Terms = std::map<Exponent, Scalar, ExponentLess>;

  SkewPoly() = default;
  SkewPoly(const Field& field, int n) : field_(field), n_(n) {}

  const Field& field() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Scalar& c);

  bool is_homogeneous() const;
  /// -1 for zero.
  int degree() const;

  /// Scaled so the first printed term has coefficient 1.
  SkewPoly monic() const;

  SkewPoly operator-() const;
  SkewPoly& operator+=(const SkewPoly& g);
  SkewPoly& operator-=(const SkewPoly& g);
  SkewPoly& operator*=(const Scalar& c);
  friend SkewPoly operator+(SkewPoly f, const SkewPoly& g) { return f += g; }
  friend SkewPoly operator-(SkewPoly f, const SkewPoly& g) { return f -= g; }
  friend SkewPoly operator*(SkewPoly f, const Scalar& c) { return f *= c; }
  friend SkewPoly operator*(const Scalar& c, SkewPoly f) { return f *= c; }
  friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  int n_ = 0;
  Terms terms_;
};

/// "c*z1^e1*...*zn^en" terms joined by " + " / " - ".
std::string format(const SkewPoly& f, std::string_view prefix = "z");
SkewPoly parse_skew_poly(std::string_view text, int n, const Field& field,
                         std::string_view prefix = "z");

/// Reorders a word into z_1^e1...z_n^en, collecting mu_ba for each pair with
/// a before b and a > b.
std::pair<Exponent, Scalar> straighten(const Word& w, const MuMatrix& mu);

/// The skew polynomial ring S = K<z_1..z_n>/(z_j z_i - mu_ij z_i z_j).
class SkewRing {
 public:
  explicit SkewRing(MuMatrix mu) : mu_(std::move(mu)) {}
  const MuMatrix& mu() const noexcept { return mu_; }
  int n() const noexcept { return mu_.n(); }
  const Field& field() const noexcept { return mu_.field(); }

  SkewPoly zero() const { return SkewPoly(field(), n()); }
  SkewPoly one() const;
  SkewPoly var(int i) const;
  SkewPoly monomial(const Exponent& e, const Scalar& c) const;

  SkewPoly mul(const SkewPoly& f, const SkewPoly& g) const;
  /// Straightens every word of a free-algebra element.
  SkewPoly from_free(const FreePoly& f) const;
  /// The straightened words as a free-algebra element.
  FreePoly to_free(const SkewPoly& f) const;

  /// z_j z_i - mu_ij z_i z_j for i < j. Under deglex with z_1 < ... < z_n
  /// these are already a Groebner basis.
  std::vector<FreePoly> relations() const;
  /// Monomials of a given degree, in term order.
  std::vector<Exponent> monomials(int degree) const;

 private:
  MuMatrix mu_;
};

/// M_ij == mu_ij M_ji for all i, j. Throws SizeMismatch.
bool is_mu_symmetric(const Matrix& m, const MuMatrix& mu);

/// q = [z_1..z_n] M [z_1..z_n]^T straightened. Throws NotMuSymmetric.
SkewPoly quadric(const Matrix& m, const MuMatrix& mu);

struct QuadricSystem {
  MuMatrix mu;
  std::vector<Matrix> matrices;
  std::vector<SkewPoly> raw;    // exactly z^T M_k z
  std::vector<SkewPoly> monic;  // raw rescaled, zero stays zero
};

QuadricSystem build_quadric_system(const MuMatrix& mu, std::vector<Matrix> matrices);

struct NormalityCertificate {
  SkewPoly element;
  std::vector<SkewPoly> ideal;
  int degree_checked = 0;
  bool verdict = false;
  bool degenerate = false;  // element is zero in the quotient
  /// Coordinates are with respect to these normal words of degree d+1.
  std::vector<Word> basis;
  std::vector<Vector> left_span;   // NF(z_i r)
  std::vector<Vector> right_span;  // NF(r z_i)
  /// On success: z_i r = sum_j left_witness(i,j) r z_j and
  /// r z_i = sum_j right_witness(i,j) z_j r modulo the ideal.
  Matrix left_witness;
  Matrix right_witness;
};

/// Decides r S' = S' r in S' = S/(J) by comparing span{z_i r} and span{r z_i}
/// in degree deg(r)+1, which suffices in a connected graded algebra generated
/// in degree 1. With J empty the computation uses skew multiplication
/// directly; otherwise S' is presented to the rewriting engine. Throws
/// InhomogeneousElement, DegreeZeroElement, DegreeExceedsTruncation.
NormalityCertificate is_normal(const SkewPoly& r, std::span<const SkewPoly> ideal,
                               const SkewRing& ring, int max_degree = 6);
NormalityCertificate is_normal(const FreePoly& r, std::span<const SkewPoly> ideal,
                               const SkewRing& ring, int max_degree = 6);

/// Re-multiplies the witnesses in the free algebra and reduces them by a
/// freshly completed basis of the stage ideal; true iff every identity holds.
bool verify_certificate(const NormalityCertificate& cert, const SkewRing& ring);

std::string format_certificate(const NormalityCertificate& cert);

struct NormalizingSequenceResult {
  bool verdict = false;
  std::vector<NormalityCertificate> steps;
  std::optional<std::size_t> failed_step;  // 0-based
  /// Positive-degree homogeneous elements never generate the whole ring.
  bool proper_by_grading = true;
};

/// Each r_j must be normal modulo ambient + (r_1..r_{j-1}).
NormalizingSequenceResult is_normalizing_sequence(std::span<const SkewPoly> seq,
                                                  std::span<const SkewPoly> ambient,
                                                  const SkewRing& ring, int max_degree = 6);

/// seq and basis span the same subspace of S_2. Throws DimensionMismatch for
/// elements that are not homogeneous of degree 2.
bool spanning_check(std::span<const SkewPoly> seq, std::span<const SkewPoly> basis);

struct SearchOptions {
  std::size_t budget = 2000;  // normality checks
  std::vector<long> test_set{0, 1, -1, 2, -2};
};

struct SearchResult {
  enum class Status { Found, NotFoundExhaustive, Unknown };
  Status status = Status::Unknown;
  std::vector<SkewPoly> sequence;
  std::vector<NormalityCertificate> certificates;
  std::size_t checks = 0;
  std::string note;

  std::string status_name() const;
};

/// Looks for a normalizing sequence spanning span(basis). Over F_p every
/// stage enumerates the projectivisation of the remaining quotient, so
/// NotFoundExhaustive is certified. Over Q the basis is tried in every order,
/// then combinations with coefficients from the test set; failure is Unknown.
SearchResult find_normalizing_sequence(std::span<const SkewPoly> basis,
                                       std::span<const SkewPoly> ambient, const SkewRing& ring,
                                       int max_degree = 6, const SearchOptions& options = {});

}  // namespace gsc
