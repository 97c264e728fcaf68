#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sosc/rational.hpp"

namespace sosc {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;

  RationalMatrix transpose() const;
  bool is_symmetric() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, std::span<const Rational> v);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a);

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Dense symmetric matrix of exact rationals. Writes keep both triangles equal.
class SymRationalMatrix {
 public:
  SymRationalMatrix() = default;
  explicit SymRationalMatrix(std::size_t dim) : full_(dim, dim) {}
  /// Throws InvalidArgument if `m` is not square and symmetric.
  explicit SymRationalMatrix(RationalMatrix m);

  static SymRationalMatrix identity(std::size_t n) { return SymRationalMatrix(RationalMatrix::identity(n)); }
  static SymRationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t dim() const { return full_.rows(); }
  const Rational& operator()(std::size_t r, std::size_t c) const { return full_(r, c); }
  void set(std::size_t r, std::size_t c, const Rational& value);

  const RationalMatrix& matrix() const { return full_; }

  friend SymRationalMatrix operator+(const SymRationalMatrix& a, const SymRationalMatrix& b);
  friend SymRationalMatrix operator-(const SymRationalMatrix& a, const SymRationalMatrix& b);
  friend SymRationalMatrix operator*(const Rational& s, const SymRationalMatrix& a);

  bool operator==(const SymRationalMatrix& other) const = default;

 private:
  RationalMatrix full_;
};

/// Reduced row echelon form, computed in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of {v : m v = 0}, one vector per free column (free entry = 1).
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Some solution of m x = rhs, or nullopt if inconsistent. Free variables are 0.
std::optional<RationalVector> solve(const RationalMatrix& m, std::span<const Rational> rhs);

/// Exact determinant by fraction-free elimination.
Rational determinant(const RationalMatrix& m);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace sosc
