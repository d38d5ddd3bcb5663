#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsc/freealg.hpp"
#include "gsc/skewring.hpp"

namespace gsc {

// ------------------------------------------------------------ commutative

using Monomial = std::vector<int>;

/// Graded reverse lexicographic order.
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Commutative polynomial; the leading term is the last map entry.
class CommPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GrevlexLess>;

  CommPoly() = default;
  CommPoly(const Field& field, int num_vars) : field_(field), num_vars_(num_vars) {}
  static CommPoly constant(const Field& field, int num_vars, const Scalar& c);
  static CommPoly variable(const Field& field, int num_vars, int index);

  const Field& field() const noexcept { return field_; }
  int num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Nonzero constant.
  bool is_unit() const;
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Scalar& leading_coefficient() const { return terms_.rbegin()->second; }
  void add_term(const Monomial& m, const Scalar& c);

  CommPoly& operator+=(const CommPoly& g);
  CommPoly& operator-=(const CommPoly& g);
  CommPoly& operator*=(const Scalar& c);
  friend CommPoly operator+(CommPoly f, const CommPoly& g) { return f += g; }
  friend CommPoly operator-(CommPoly f, const CommPoly& g) { return f -= g; }
  friend CommPoly operator*(CommPoly f, const Scalar& c) { return f *= c; }
  friend CommPoly operator*(const CommPoly& f, const CommPoly& g);
  /// f * c * m.
  CommPoly shifted(const Monomial& m, const Scalar& c) const;
  friend bool operator==(const CommPoly& a, const CommPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  int num_vars_ = 0;
  Terms terms_;
};

std::string format(const CommPoly& f, std::span<const std::string> names);

struct CommGroebnerResult {
  std::vector<CommPoly> basis;
  bool one_in_ideal = false;
  /// When one_in_ideal: sum_j certificate[j] * gens[j] = 1.
  std::vector<CommPoly> certificate;
};

/// Buchberger completion in grevlex with cofactor tracking. Stops early once a
/// constant appears.
CommGroebnerResult commutative_gb(std::span<const CommPoly> gens, const Field& field,
                                  int num_vars);

/// Checks sum_j cofactors[j] * gens[j] = 1 by direct multiplication.
bool verify_unit_certificate(std::span<const CommPoly> gens, std::span<const CommPoly> cofactors);

// ------------------------------------------------------------ zero locus

/// Points of Z whose a-coordinate has support exactly T (0-based, sorted).
struct ZComponent {
  MuMatrix mu;
  std::vector<int> support;
  bool consistent = true;
  /// First (i, j, k) in T with mu_ij mu_jk != mu_ik, 0-based.
  std::optional<std::array<int, 3>> violated;

  int anchor() const { return support.front(); }
  /// The Z point over `a` (support(a) must equal `support`), with
  /// b_i = mu_{i,anchor} a_i / a_anchor using the given anchor.
  /// Throws InvalidArgument for inconsistent components or a wrong support.
  BiPoint point(const Vector& a, std::optional<int> anchor = std::nullopt) const;
  std::string support_str() const;
};

/// One entry per nonempty support, ordered by size then lexicographically;
/// inconsistent supports are kept with consistent = false.
std::vector<ZComponent> zero_locus_components(const MuMatrix& mu);

/// The relations z_j z_i - mu_ij z_i z_j, i < j, as free-algebra elements.
std::vector<FreePoly> mu_relations(const MuMatrix& mu);

/// (a, b) lies in Z and on every quadric of the system.
bool is_common_zero(const QuadricSystem& q, const BiPoint& p);

// ------------------------------------------------------------ BPF

struct BpfMode {
  enum class Kind { Exact, Scan };
  Kind kind = Kind::Exact;
  std::uint64_t p = 0;
  int k = 1;

  /// "exact" or "scan:p" / "scan:p,k". Throws InvalidArgument.
  static BpfMode parse(std::string_view text);
  std::string str() const;
};

struct ComponentCertificate {
  std::vector<int> support;
  /// Variables: a_i for i in support minus the anchor, then u.
  std::vector<std::string> variables;
  /// Substituted quadrics followed by u * prod a_i - 1.
  std::vector<CommPoly> generators;
  bool empty = false;
  std::vector<CommPoly> cofactors;  // when empty
};

struct BpfVerdict {
  bool base_point_free = false;
  /// False for scan-mode verdicts that are not proofs.
  bool certified = false;
  std::string mode;
  std::optional<BiPoint> witness;
  /// Witness found only over an extension field, or a mod-p point of a
  /// rational system.
  std::string witness_text;
  std::optional<std::vector<int>> witness_support;
  std::vector<ComponentCertificate> certificates;
  std::string note;
};

/// Exact mode decides emptiness of each Z component intersected with the
/// quadrics over the algebraic closure (n <= 4, else TooLarge). Scan mode
/// tests every a in P^{n-1}(GF(p^k)) and solves for b linearly.
BpfVerdict is_base_point_free(const QuadricSystem& q, const BpfMode& mode = {});

/// Independently re-checks a verdict: witnesses must be common zeros and
/// every emptiness certificate must multiply out to 1.
bool verify_bpf_verdict(const QuadricSystem& q, const BpfVerdict& v);

}  // namespace gsc
