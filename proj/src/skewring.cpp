#include "gsc/skewring.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gsc {

namespace {

constexpr const char* kModule = "skewring";

std::string idx(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

std::vector<SkewPoly> nonzero_only(std::span<const SkewPoly> polys) {
  std::vector<SkewPoly> out;
  for (const auto& p : polys)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

Vector coordinates(const FreePoly& f, const std::vector<Word>& basis, const Field& field) {
  Vector v(basis.size(), Scalar::zero(field));
  for (std::size_t k = 0; k < basis.size(); ++k) v[k] = f.coefficient(basis[k]);
  return v;
}

// Columns of `cols` as a dim x n matrix, then solve for each target.
Matrix witnesses(const std::vector<Vector>& targets, const std::vector<Vector>& cols,
                 const Field& field, std::size_t dim) {
  const std::size_t n = cols.size();
  Matrix a(field, dim, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < dim; ++r) a(r, j) = cols[j][r];
  Matrix w(field, targets.size(), n);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Vector x;
    if (!solve(a, targets[i], x))
      throw Error(ErrorKind::InvalidArgument, kModule, "witness system is inconsistent");
    for (std::size_t j = 0; j < n; ++j) w(i, j) = x[j];
  }
  return w;
}

struct StageData {
  std::vector<Word> basis;
  std::vector<Vector> left, right;
  bool degenerate = false;
};

StageData stage_by_engine(const SkewPoly& r, const std::vector<SkewPoly>& ideal,
                          const SkewRing& ring, int degree) {
  std::vector<FreePoly> rels = ring.relations();
  for (const auto& j : ideal) rels.push_back(ring.to_free(j));
  const GroebnerBasis g = complete(rels, ring.field(), ring.n(), degree);
  StageData s;
  const FreePoly lifted = ring.to_free(r);
  s.degenerate = g.normal_form(lifted).is_zero();
  s.basis = g.normal_words(degree);
  for (int i = 0; i < ring.n(); ++i) {
    const FreePoly zi = FreePoly::generator(ring.field(), ring.n(), i);
    s.left.push_back(coordinates(g.normal_form(zi * lifted), s.basis, ring.field()));
    s.right.push_back(coordinates(g.normal_form(lifted * zi), s.basis, ring.field()));
  }
  return s;
}

StageData stage_in_s(const SkewPoly& r, const SkewRing& ring, int degree) {
  StageData s;
  s.degenerate = r.is_zero();
  for (const auto& e : ring.monomials(degree)) s.basis.push_back(exponent_word(e));
  auto coords = [&](const SkewPoly& f) {
    Vector v(s.basis.size(), Scalar::zero(ring.field()));
    for (std::size_t k = 0; k < s.basis.size(); ++k)
      v[k] = f.coefficient(word_exponent(s.basis[k], ring.n()));
    return v;
  };
  for (int i = 0; i < ring.n(); ++i) {
    s.left.push_back(coords(ring.mul(ring.var(i), r)));
    s.right.push_back(coords(ring.mul(r, ring.var(i))));
  }
  return s;
}

void check_homogeneous(const SkewPoly& p, const char* what) {
  if (!p.is_homogeneous())
    throw Error(ErrorKind::InhomogeneousElement, kModule, std::string(what) + " is not homogeneous");
}

std::string sum_text(const Matrix& w, std::size_t i, const std::string& lhs_pattern, int n) {
  std::string out;
  for (int j = 0; j < n; ++j) {
    const Scalar& c = w(i, static_cast<std::size_t>(j));
    if (c.is_zero()) continue;
    const bool neg = c.is_negative();
    const Scalar mag = neg ? -c : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string term = lhs_pattern;
    term.replace(term.find('#'), 1, std::to_string(j + 1));
    out += (mag.is_one() ? "" : mag.str() + "*") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------- MuMatrix

std::optional<std::string> MuMatrix::violation(const Matrix& m) {
  if (m.rows() != m.cols()) return "mu must be square";
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) {
    const Scalar& d = m(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    if (!d.is_one()) return "mu_" + idx(i, i) + " = " + d.str() + ", but mu_ii = 1 is required";
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Scalar& a = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const Scalar& b = m(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
      if (a.is_zero()) return "mu_" + idx(i, j) + " = 0, but entries must be nonzero";
      if (b.is_zero()) return "mu_" + idx(j, i) + " = 0, but entries must be nonzero";
      if (!(a * b).is_one())
        return "mu_" + idx(i, j) + " * mu_" + idx(j, i) + " = " + (a * b).str() +
               ", but mu_ij * mu_ji = 1 is required (entry (" + std::to_string(i + 1) + "," +
               std::to_string(j + 1) + "))";
    }
  return std::nullopt;
}

MuMatrix::MuMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (auto v = violation(entries_)) throw Error(ErrorKind::InvalidMu, kModule, *v);
}

MuMatrix MuMatrix::two(const Scalar& mu12) {
  const Field& f = mu12.field();
  Matrix m(f, 2, 2);
  m(0, 0) = m(1, 1) = Scalar::one(f);
  m(0, 1) = mu12;
  m(1, 0) = mu12.inverse();
  return MuMatrix(std::move(m));
}

MuMatrix MuMatrix::ones(const Field& field, int n) {
  Matrix m(field, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = Scalar::one(field);
  return MuMatrix(std::move(m));
}

// ---------------------------------------------------------------- exponents

bool ExponentLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return b < a;
}

Word exponent_word(const Exponent& e) {
  Word w;
  for (std::size_t i = 0; i < e.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(e[i]), static_cast<int>(i));
  return w;
}

Exponent word_exponent(const Word& w, int n) {
  Exponent e(static_cast<std::size_t>(n), 0);
  for (int letter : w) ++e[static_cast<std::size_t>(letter)];
  return e;
}

int total_degree(const Exponent& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// ---------------------------------------------------------------- SkewPoly

Scalar SkewPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void SkewPoly::add_term(const Exponent& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != n_)
    throw Error(ErrorKind::SizeMismatch, kModule, "exponent has the wrong length");
  if (c.field() != field_) throw Error(ErrorKind::FieldMismatch, kModule, "coefficient over another field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool SkewPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

int SkewPoly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

SkewPoly SkewPoly::monic() const {
  if (is_zero()) return *this;
  return *this * terms_.begin()->second.inverse();
}

SkewPoly SkewPoly::operator-() const {
  SkewPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SkewPoly& SkewPoly::operator+=(const SkewPoly& g) {
  if (g.n_ != n_) throw Error(ErrorKind::SizeMismatch, kModule, "different numbers of variables");
  for (const auto& [e, c] : g.terms_) add_term(e, c);
  return *this;
}

SkewPoly& SkewPoly::operator-=(const SkewPoly& g) { return *this += -g; }

SkewPoly& SkewPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

std::string format(const SkewPoly& f, std::string_view prefix) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    const bool neg = c.is_negative();
    const Scalar mag = neg ? -c : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += std::string(prefix) + std::to_string(i + 1);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty())
      out += mag.str();
    else
      out += (mag.is_one() ? "" : mag.str() + "*") + mono;
  }
  return out;
}

SkewPoly parse_skew_poly(std::string_view text, int n, const Field& field, std::string_view prefix) {
  const auto names = indexed_names(prefix, n);
  const FreePoly f = parse_free_poly(text, names, field);
  SkewPoly out(field, n);
  for (const auto& [w, c] : f.terms()) {
    if (!std::is_sorted(w.begin(), w.end()))
      throw Error(ErrorKind::ParseError, kModule,
                  "monomial '" + format_word(w, names) + "' is not in straightened order");
    out.add_term(word_exponent(w, n), c);
  }
  return out;
}

// ---------------------------------------------------------------- ring

std::pair<Exponent, Scalar> straighten(const Word& w, const MuMatrix& mu) {
  Scalar factor = Scalar::one(mu.field());
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t q = p + 1; q < w.size(); ++q)
      if (w[p] > w[q]) factor *= mu(w[q], w[p]);
  return {word_exponent(w, mu.n()), factor};
}

SkewPoly SkewRing::one() const { return monomial(Exponent(static_cast<std::size_t>(n()), 0), Scalar::one(field())); }

SkewPoly SkewRing::var(int i) const {
  Exponent e(static_cast<std::size_t>(n()), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(e, Scalar::one(field()));
}

SkewPoly SkewRing::monomial(const Exponent& e, const Scalar& c) const {
  SkewPoly p(field(), n());
  p.add_term(e, c);
  return p;
}

SkewPoly SkewRing::mul(const SkewPoly& f, const SkewPoly& g) const {
  SkewPoly out(field(), n());
  const int k = n();
  for (const auto& [e, a] : f.terms())
    for (const auto& [h, b] : g.terms()) {
      Scalar c = a * b;
      Exponent sum(e.size());
      for (int x = 0; x < k; ++x) {
        sum[static_cast<std::size_t>(x)] = e[static_cast<std::size_t>(x)] + h[static_cast<std::size_t>(x)];
        // z_x from the left factor passes each z_y (y < x) of the right factor
        for (int y = 0; y < x; ++y) {
          const long times = static_cast<long>(e[static_cast<std::size_t>(x)]) * h[static_cast<std::size_t>(y)];
          if (times) c *= mu_(y, x).pow(times);
        }
      }
      out.add_term(sum, c);
    }
  return out;
}

SkewPoly SkewRing::from_free(const FreePoly& f) const {
  if (f.num_gens() != n())
    throw Error(ErrorKind::GeneratorMismatch, kModule, "free polynomial on the wrong number of generators");
  SkewPoly out(field(), n());
  for (const auto& [w, c] : f.terms()) {
    auto [e, factor] = straighten(w, mu_);
    out.add_term(e, c * factor);
  }
  return out;
}

FreePoly SkewRing::to_free(const SkewPoly& f) const {
  FreePoly out(field(), n());
  for (const auto& [e, c] : f.terms()) out.add_term(exponent_word(e), c);
  return out;
}

std::vector<FreePoly> SkewRing::relations() const {
  std::vector<FreePoly> rels;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) {
      FreePoly r(field(), n());
      r.add_term({j, i}, Scalar::one(field()));
      r.add_term({i, j}, -mu_(i, j));
      rels.push_back(std::move(r));
    }
  return rels;
}

std::vector<Exponent> SkewRing::monomials(int degree) const {
  std::vector<Exponent> out;
  Exponent e(static_cast<std::size_t>(n()), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n() - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
  };
  if (n() > 0) rec(0, degree);
  std::sort(out.begin(), out.end(), ExponentLess{});
  return out;
}

// ---------------------------------------------------------------- quadrics

bool is_mu_symmetric(const Matrix& m, const MuMatrix& mu) {
  const auto n = static_cast<std::size_t>(mu.n());
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::SizeMismatch, kModule, "matrix size does not match mu");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(m(i, j) == mu(static_cast<int>(i), static_cast<int>(j)) * m(j, i))) return false;
  return true;
}

SkewPoly quadric(const Matrix& m, const MuMatrix& mu) {
  if (!is_mu_symmetric(m, mu))
    throw Error(ErrorKind::NotMuSymmetric, kModule, "matrix is not mu-symmetric");
  SkewPoly q(mu.field(), mu.n());
  for (int i = 0; i < mu.n(); ++i)
    for (int j = 0; j < mu.n(); ++j) {
      const Scalar& c = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (c.is_zero()) continue;
      auto [e, factor] = straighten({i, j}, mu);
      q.add_term(e, c * factor);
    }
  return q;
}

QuadricSystem build_quadric_system(const MuMatrix& mu, std::vector<Matrix> matrices) {
  QuadricSystem qs{mu, std::move(matrices), {}, {}};
  for (const Matrix& m : qs.matrices) {
    qs.raw.push_back(quadric(m, mu));
    qs.monic.push_back(qs.raw.back().monic());
  }
  return qs;
}

// ---------------------------------------------------------------- normality

namespace {

NormalityCertificate normality(const SkewPoly& r, std::span<const SkewPoly> ideal_in,
                               const SkewRing& ring, int max_degree, bool force_engine) {
  if (r.n() != ring.n()) throw Error(ErrorKind::SizeMismatch, kModule, "element is in another ring");
  check_homogeneous(r, "element");
  for (const auto& j : ideal_in) check_homogeneous(j, "ideal generator");
  NormalityCertificate cert;
  cert.element = r;
  cert.ideal.assign(ideal_in.begin(), ideal_in.end());
  if (r.is_zero()) {
    cert.verdict = true;
    cert.degenerate = true;
    return cert;
  }
  const int d = r.degree();
  if (d == 0) throw Error(ErrorKind::DegreeZeroElement, kModule, "normality of a constant");
  if (d + 1 > max_degree)
    throw Error(ErrorKind::DegreeExceedsTruncation, kModule,
                "normality test needs degree " + std::to_string(d + 1) + " > bound " +
                    std::to_string(max_degree));
  cert.degree_checked = d + 1;
  const std::vector<SkewPoly> ideal = nonzero_only(ideal_in);
  StageData s = ideal.empty() && !force_engine ? stage_in_s(r, ring, d + 1)
                                               : stage_by_engine(r, ideal, ring, d + 1);
  cert.basis = std::move(s.basis);
  cert.left_span = std::move(s.left);
  cert.right_span = std::move(s.right);
  cert.degenerate = s.degenerate;
  const std::size_t dim = cert.basis.size();
  cert.verdict = subspace_equal(cert.left_span, cert.right_span, ring.field(), dim);
  if (cert.verdict) {
    cert.left_witness = witnesses(cert.left_span, cert.right_span, ring.field(), dim);
    cert.right_witness = witnesses(cert.right_span, cert.left_span, ring.field(), dim);
  }
  return cert;
}

}  // namespace

NormalityCertificate is_normal(const SkewPoly& r, std::span<const SkewPoly> ideal,
                               const SkewRing& ring, int max_degree) {
  return normality(r, ideal, ring, max_degree, false);
}

NormalityCertificate is_normal(const FreePoly& r, std::span<const SkewPoly> ideal,
                               const SkewRing& ring, int max_degree) {
  return is_normal(ring.from_free(r), ideal, ring, max_degree);
}

bool verify_certificate(const NormalityCertificate& cert, const SkewRing& ring) {
  if (cert.element.is_zero()) return cert.verdict && cert.degenerate;
  if (!cert.verdict) {
    const auto again = normality(cert.element, cert.ideal, ring, cert.degree_checked, true);
    return !again.verdict;
  }
  std::vector<FreePoly> rels = ring.relations();
  for (const auto& j : cert.ideal)
    if (!j.is_zero()) rels.push_back(ring.to_free(j));
  const GroebnerBasis g = complete(rels, ring.field(), ring.n(), cert.degree_checked);
  const FreePoly r = ring.to_free(cert.element);
  const auto n = static_cast<std::size_t>(ring.n());
  if (cert.left_witness.rows() != n || cert.right_witness.rows() != n) return false;
  auto z = [&](std::size_t i) { return FreePoly::generator(ring.field(), ring.n(), static_cast<int>(i)); };
  for (std::size_t i = 0; i < n; ++i) {
    FreePoly left = z(i) * r;
    FreePoly right = r * z(i);
    for (std::size_t j = 0; j < n; ++j) {
      left -= (r * z(j)) * cert.left_witness(i, j);
      right -= (z(j) * r) * cert.right_witness(i, j);
    }
    if (!g.normal_form(left).is_zero() || !g.normal_form(right).is_zero()) return false;
  }
  return true;
}

std::string format_certificate(const NormalityCertificate& cert) {
  std::string out = "element r = " + format(cert.element) + "\n";
  out += "ideal: ";
  if (cert.ideal.empty()) out += "(none)";
  for (std::size_t k = 0; k < cert.ideal.size(); ++k) out += (k ? ", " : "") + format(cert.ideal[k]);
  out += "\ndegree checked: " + std::to_string(cert.degree_checked) + "\n";
  out += std::string("verdict: ") + (cert.verdict ? "normal" : "not normal");
  if (cert.degenerate) out += " (degenerate: zero in quotient)";
  out += "\n";
  if (cert.verdict && cert.left_witness.rows() > 0) {
    const int n = static_cast<int>(cert.left_witness.cols());
    for (int i = 0; i < n; ++i)
      out += "  z" + std::to_string(i + 1) + "*r = " +
             sum_text(cert.left_witness, static_cast<std::size_t>(i), "r*z#", n) + " mod ideal\n";
    for (int i = 0; i < n; ++i)
      out += "  r*z" + std::to_string(i + 1) + " = " +
             sum_text(cert.right_witness, static_cast<std::size_t>(i), "z#*r", n) + " mod ideal\n";
  }
  return out;
}

NormalizingSequenceResult is_normalizing_sequence(std::span<const SkewPoly> seq,
                                                  std::span<const SkewPoly> ambient,
                                                  const SkewRing& ring, int max_degree) {
  NormalizingSequenceResult res;
  std::vector<SkewPoly> ideal(ambient.begin(), ambient.end());
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (seq[j].degree() == 0)
      throw Error(ErrorKind::DegreeZeroElement, kModule, "sequence member of degree 0");
    res.steps.push_back(is_normal(seq[j], ideal, ring, max_degree));
    if (!res.steps.back().verdict) {
      res.failed_step = j;
      return res;
    }
    ideal.push_back(seq[j]);
  }
  res.verdict = true;
  return res;
}

bool spanning_check(std::span<const SkewPoly> seq, std::span<const SkewPoly> basis) {
  std::set<Exponent, ExponentLess> support;
  std::optional<Field> field;
  for (auto list : {seq, basis})
    for (const auto& p : list) {
      if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != 2))
        throw Error(ErrorKind::DimensionMismatch, kModule, "spanning check needs degree-2 elements");
      field = p.field();
      for (const auto& [e, c] : p.terms()) support.insert(e);
    }
  if (!field) return true;
  std::vector<Exponent> cols(support.begin(), support.end());
  auto coords = [&](std::span<const SkewPoly> list) {
    std::vector<Vector> out;
    for (const auto& p : list) {
      Vector v;
      for (const auto& e : cols) v.push_back(p.coefficient(e));
      out.push_back(std::move(v));
    }
    return out;
  };
  return subspace_equal(coords(seq), coords(basis), *field, cols.size());
}

// ---------------------------------------------------------------- search

std::string SearchResult::status_name() const {
  switch (status) {
    case Status::Found: return "found";
    case Status::NotFoundExhaustive: return "not_found_exhaustive";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

class SequenceSearch {
 public:
  SequenceSearch(std::vector<SkewPoly> basis, std::span<const SkewPoly> ambient, const SkewRing& ring,
                 int max_degree, const SearchOptions& options)
      : basis_(std::move(basis)), ambient_(ambient.begin(), ambient.end()), ring_(ring),
        max_degree_(max_degree), options_(options), field_(ring.field()) {}

  // Candidates are coefficient vectors reduced modulo the chosen span and
  // scaled so their first nonzero entry is 1.
  using Generator = std::function<std::vector<Vector>(const std::vector<Vector>& chosen)>;

  bool run(const Generator& gen, SearchResult& out) {
    std::vector<Vector> chosen;
    std::vector<NormalityCertificate> certs;
    if (dfs(gen, chosen, certs)) {
      for (const auto& c : chosen) out.sequence.push_back(element(c));
      out.certificates = std::move(certs);
      return true;
    }
    return false;
  }

  bool exhausted() const { return exhausted_; }
  std::size_t checks() const { return checks_; }
  std::size_t dim() const { return basis_.size(); }

  Vector reduce(Vector c, const std::vector<Vector>& chosen) const {
    if (!chosen.empty()) {
      const RowEchelon e = row_reduce(Matrix::from_rows(field_, chosen, dim()));
      for (std::size_t r = 0; r < e.rank; ++r) {
        const Scalar f = c[e.pivots[r]];
        if (f.is_zero()) continue;
        for (std::size_t k = 0; k < c.size(); ++k) c[k] -= f * e.rref(r, k);
      }
    }
    auto it = std::find_if(c.begin(), c.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it != c.end()) {
      const Scalar inv = it->inverse();
      for (auto& s : c) s *= inv;
    }
    return c;
  }

  std::vector<std::size_t> pivots(const std::vector<Vector>& chosen) const {
    if (chosen.empty()) return {};
    return row_reduce(Matrix::from_rows(field_, chosen, dim())).pivots;
  }

 private:
  SkewPoly element(const Vector& c) const {
    SkewPoly r(field_, ring_.n());
    for (std::size_t k = 0; k < c.size(); ++k) r += basis_[k] * c[k];
    return r;
  }

  bool dfs(const Generator& gen, std::vector<Vector>& chosen, std::vector<NormalityCertificate>& certs) {
    if (chosen.size() == dim()) return true;
    std::vector<SkewPoly> ideal = ambient_;
    for (const auto& c : chosen) ideal.push_back(element(c));
    for (const Vector& cand : gen(chosen)) {
      if (checks_ >= options_.budget) {
        exhausted_ = true;
        return false;
      }
      ++checks_;
      NormalityCertificate cert = is_normal(element(cand), ideal, ring_, max_degree_);
      if (!cert.verdict) continue;
      chosen.push_back(cand);
      certs.push_back(std::move(cert));
      if (dfs(gen, chosen, certs)) return true;
      chosen.pop_back();
      certs.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  std::vector<SkewPoly> basis_;
  std::vector<SkewPoly> ambient_;
  const SkewRing& ring_;
  int max_degree_;
  SearchOptions options_;
  Field field_;
  std::size_t checks_ = 0;
  bool exhausted_ = false;
};

// Calls fn on every tuple in [0, radix)^len, last position fastest.
void for_each_tuple(std::size_t len, std::size_t radix,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (len == 0 || radix == 0) return;
  std::vector<std::size_t> digits(len, 0);
  while (true) {
    fn(digits);
    std::size_t k = len;
    while (k > 0 && ++digits[k - 1] == radix) digits[--k] = 0;
    if (k == 0) return;
  }
}

std::vector<SkewPoly> independent_subset(std::span<const SkewPoly> polys, const Field& field) {
  std::set<Exponent, ExponentLess> support;
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms()) support.insert(e);
  std::vector<SkewPoly> out;
  std::vector<Vector> rows;
  for (const auto& p : polys) {
    Vector v;
    for (const auto& e : support) v.push_back(p.coefficient(e));
    rows.push_back(v);
    if (rank(Matrix::from_rows(field, rows, support.size())) == out.size() + 1)
      out.push_back(p);
    else
      rows.pop_back();
  }
  return out;
}

}  // namespace

SearchResult find_normalizing_sequence(std::span<const SkewPoly> basis_in,
                                       std::span<const SkewPoly> ambient, const SkewRing& ring,
                                       int max_degree, const SearchOptions& options) {
  const Field field = ring.field();
  for (const auto& b : basis_in) check_homogeneous(b, "subspace basis element");
  SequenceSearch search(independent_subset(basis_in, field), ambient, ring, max_degree, options);
  const std::size_t m = search.dim();
  SearchResult result;

  auto unit = [&](std::size_t l) {
    Vector v(m, Scalar::zero(field));
    v[l] = Scalar::one(field);
    return v;
  };

  auto finish = [&](SearchResult::Status st, std::string note) {
    result.status = st;
    result.checks = search.checks();
    result.note = std::move(note);
    return result;
  };

  if (field.is_prime()) {
    const std::uint64_t p = field.characteristic();
    SequenceSearch::Generator gen = [&](const std::vector<Vector>& chosen) {
      const auto piv = search.pivots(chosen);
      std::vector<std::size_t> free;
      for (std::size_t l = 0; l < m; ++l)
        if (std::find(piv.begin(), piv.end(), l) == piv.end()) free.push_back(l);
      std::vector<Vector> out;
      for (std::size_t l : free) out.push_back(unit(l));
      // remaining projective points on the free coordinates, lexicographic
      for_each_tuple(free.size(), p, [&](const std::vector<std::size_t>& digits) {
        auto first = std::find_if(digits.begin(), digits.end(), [](std::size_t x) { return x != 0; });
        if (first == digits.end() || *first != 1) return;
        if (std::count_if(digits.begin(), digits.end(), [](std::size_t x) { return x != 0; }) == 1) return;
        Vector v(m, Scalar::zero(field));
        for (std::size_t t = 0; t < free.size(); ++t) v[free[t]] = Scalar(field, static_cast<long>(digits[t]));
        out.push_back(std::move(v));
      });
      return out;
    };
    if (search.run(gen, result)) return finish(SearchResult::Status::Found, "exhaustive search over " + field.name());
    if (search.exhausted()) return finish(SearchResult::Status::Unknown, "search budget exhausted");
    return finish(SearchResult::Status::NotFoundExhaustive,
                  "every projective point of every stage checked over " + field.name());
  }

  SequenceSearch::Generator orders = [&](const std::vector<Vector>& chosen) {
    const auto piv = search.pivots(chosen);
    std::vector<Vector> out;
    for (std::size_t l = 0; l < m; ++l)
      if (std::find(piv.begin(), piv.end(), l) == piv.end()) out.push_back(unit(l));
    return out;
  };
  if (search.run(orders, result)) return finish(SearchResult::Status::Found, "basis order search");
  if (search.exhausted()) return finish(SearchResult::Status::Unknown, "search budget exhausted");

  SequenceSearch::Generator combos = [&](const std::vector<Vector>& chosen) {
    std::vector<Vector> out;
    std::set<std::vector<std::string>> seen;
    for_each_tuple(m, options.test_set.size(), [&](const std::vector<std::size_t>& digits) {
      Vector v(m, Scalar::zero(field));
      for (std::size_t k = 0; k < m; ++k) v[k] = Scalar(field, options.test_set[digits[k]]);
      Vector red = search.reduce(v, chosen);
      if (std::none_of(red.begin(), red.end(), [](const Scalar& s) { return !s.is_zero(); })) return;
      std::vector<std::string> key;
      for (const auto& s : red) key.push_back(s.str());
      if (seen.insert(key).second) out.push_back(std::move(red));
    });
    return out;
  };
  if (search.run(combos, result))
    return finish(SearchResult::Status::Found, "combination search over the coefficient test set");
  if (search.exhausted()) return finish(SearchResult::Status::Unknown, "search budget exhausted");
  return finish(SearchResult::Status::Unknown,
                "no sequence found over the rationals; the search space is infinite, so this is not a "
                "certified negative");
}

}  // namespace gsc
