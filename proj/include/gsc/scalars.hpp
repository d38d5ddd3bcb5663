#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gsc/error.hpp"

namespace gsc {

/// The coefficient field: the rationals or a prime field F_p with p odd.
class Field {
 public:
  /// The rationals.
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws InvalidArgument unless p is an odd prime below 2^31.
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  bool is_prime() const noexcept { return p_ != 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }

  std::string name() const;
  /// Accepts "Q" / "QQ" / "rationals" and "GF(p)" / "F_p" / "Fp".
  static Field parse(std::string_view text);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator, residues in [0, p), so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& field, long value);
  Scalar(const Field& field, const mpq_class& value);

  static Scalar zero(const Field& f) { return Scalar(f, 0L); }
  static Scalar one(const Field& f) { return Scalar(f, 1L); }

  const Field& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;
  /// True for rationals below zero. Prime-field residues are never negative.
  bool is_negative() const;

  /// Only meaningful for the rationals.
  const mpq_class& rational() const { return q_; }
  /// Only meaningful for prime fields.
  std::uint64_t residue() const { return r_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar& operator/=(const Scalar& b);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "a/b", "a", or the residue for prime fields.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  void check_same(const Scalar& b) const;
  Field field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

inline Scalar field_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar field_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar field_inv(const Scalar& a) { return a.inverse(); }

/// Parses "a/b" or "a" (optional sign, decimal digits) for the rationals, and
/// an integer string reduced mod p for prime fields.
Scalar parse_scalar(std::string_view text, const Field& field);

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, std::span<const Vector> rows,
                          std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Vector row(std::size_t r) const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. The pivot in each column is the first nonzero
/// entry at or below the current row, so results are reproducible.
RowEchelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column, in column order.
std::vector<Vector> kernel(const Matrix& m);

/// Solves m x = rhs with free variables set to zero. Returns false when the
/// system is inconsistent.
bool solve(const Matrix& m, const Vector& rhs, Vector& x);

/// span(a) == span(b). `dim` is the ambient dimension, needed when both lists
/// are empty; throws DimensionMismatch on ragged input.
bool subspace_equal(std::span<const Vector> a, std::span<const Vector> b,
                    const Field& field, std::size_t dim);

}  // namespace gsc
