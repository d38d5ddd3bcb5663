#include "gsc/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace gsc {

namespace {

constexpr const char* kModule = "scalars";

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorKind::NotDegreeTwo: return "NotDegreeTwo";
    case ErrorKind::ZeroRepresentative: return "ZeroRepresentative";
    case ErrorKind::DegreeExceedsTruncation: return "DegreeExceedsTruncation";
    case ErrorKind::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotMuSymmetric: return "NotMuSymmetric";
    case ErrorKind::InvalidMu: return "InvalidMu";
    case ErrorKind::InhomogeneousElement: return "InhomogeneousElement";
    case ErrorKind::DegreeZeroElement: return "DegreeZeroElement";
    case ErrorKind::MatricesLinearlyDependent: return "MatricesLinearlyDependent";
    case ErrorKind::UnsupportedFieldForScan: return "UnsupportedFieldForScan";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (p == 2)
    throw Error(ErrorKind::InvalidArgument, kModule,
                "characteristic 2 is not supported");
  if (!is_prime_number(p) || p >= (1ULL << 31))
    throw Error(ErrorKind::InvalidArgument, kModule,
                "field modulus " + std::to_string(p) + " is not an odd prime below 2^31");
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Field Field::parse(std::string_view text) {
  std::string t(text);
  if (t == "Q" || t == "QQ" || t == "rationals") return rationals();
  std::string digits;
  if (t.starts_with("GF(") && t.ends_with(")"))
    digits = t.substr(3, t.size() - 4);
  else if (t.starts_with("F_"))
    digits = t.substr(2);
  else if (t.starts_with("Fp") || t.starts_with("F"))
    digits = t.substr(t.starts_with("Fp") ? 2 : 1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorKind::ParseError, kModule, "unknown field '" + t + "'");
  return prime(std::stoull(digits));
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field& field, long value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
  } else {
    const auto p = static_cast<long long>(field_.characteristic());
    long long r = static_cast<long long>(value) % p;
    if (r < 0) r += p;
    r_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(const Field& field, const mpq_class& value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
    q_.canonicalize();
  } else {
    const std::uint64_t p = field_.characteristic();
    std::uint64_t den = reduce_mpz(value.get_den(), p);
    if (den == 0)
      throw Error(ErrorKind::DivisionByZero, kModule,
                  "denominator of " + value.get_str() + " vanishes mod " + std::to_string(p));
    r_ = reduce_mpz(value.get_num(), p) * mod_pow(den, p - 2, p) % p;
  }
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }
bool Scalar::is_negative() const { return field_.is_rational() && q_ < 0; }

void Scalar::check_same(const Scalar& b) const {
  if (field_ != b.field_)
    throw Error(ErrorKind::FieldMismatch, kModule,
                "mixed fields " + field_.name() + " and " + b.field_.name());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational())
    r.q_ = -q_;
  else
    r.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  check_same(b);
  if (field_.is_rational())
    q_ += b.q_;
  else
    r_ = (r_ + b.r_) % field_.characteristic();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar& Scalar::operator*=(const Scalar& b) {
  check_same(b);
  if (field_.is_rational())
    q_ *= b.q_;
  else
    r_ = r_ * b.r_ % field_.characteristic();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& b) {
  check_same(b);
  return *this *= b.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, kModule, "inverse of zero");
  Scalar r = *this;
  if (field_.is_rational())
    r.q_ = 1 / q_;
  else
    r.r_ = mod_pow(r_, field_.characteristic() - 2, field_.characteristic());
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = one(field_);
  Scalar base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::str() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar parse_scalar(std::string_view text, const Field& field) {
  auto fail = [&] {
    return Error(ErrorKind::ParseError, kModule,
                 "cannot parse scalar '" + std::string(text) + "' over " + field.name());
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  auto digits = [&](std::string& out) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    out = std::string(text.substr(start, i - start));
    return !out.empty();
  };
  std::string num, den = "1";
  if (!digits(num)) throw fail();
  if (i < text.size() && text[i] == '/') {
    if (field.is_prime()) throw fail();
    ++i;
    if (!digits(den)) throw fail();
  }
  if (i != text.size()) throw fail();
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, kModule, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Scalar(field, mpq_class(n, d));
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(const Field& field, std::span<const Vector> rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorKind::DimensionMismatch, kModule,
                  "row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                      ", expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].field() != field)
        throw Error(ErrorKind::FieldMismatch, kModule, "matrix entry over the wrong field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

RowEchelon row_reduce(const Matrix& m) {
  RowEchelon out{m, 0, {}};
  Matrix& a = out.rref;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    const Scalar inv = a(row, col).inverse();
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= factor * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank; }

std::vector<Vector> kernel(const Matrix& m) {
  const RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar::zero(m.field()));
    v[free] = Scalar::one(m.field());
    for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = -e.rref(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const Matrix& m, const Vector& rhs, Vector& x) {
  if (rhs.size() != m.rows())
    throw Error(ErrorKind::DimensionMismatch, kModule, "right-hand side has the wrong length");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const RowEchelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return false;
  x.assign(m.cols(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < e.rank; ++r) x[e.pivots[r]] = e.rref(r, m.cols());
  return true;
}

bool subspace_equal(std::span<const Vector> a, std::span<const Vector> b, const Field& field,
                    std::size_t dim) {
  std::vector<Vector> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = rank(Matrix::from_rows(field, a, dim));
  const std::size_t rb = rank(Matrix::from_rows(field, b, dim));
  if (ra != rb) return false;
  return rank(Matrix::from_rows(field, both, dim)) == ra;
}

}  // namespace gsc
