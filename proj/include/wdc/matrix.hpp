#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wdc/field.hpp"

namespace wdc {

class Rng;

// Dense row-major matrix over a finite field. Dimensions are fixed at
// construction; entries are mutable.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  // Entries are checked against the field order; rows must be equal length.
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldPtr& field() const noexcept { return field_; }

  Symbol operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Symbol> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<Symbol> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  // M * v for a column vector v of length cols().
  Vector apply(std::span<const Symbol> v) const;
  // Columns listed in `columns`, in that order.
  Matrix select_columns(std::span<const std::size_t> columns) const;

  bool is_zero() const noexcept;
  bool operator==(const Matrix& other) const;

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> data_;
};

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination. The pivot of each column is the first row at or
// below the current one holding a nonzero entry, so results are reproducible.
RowEchelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

// Basis of {e : M e = 0}, one vector per free column in increasing column
// order. Each basis vector has a 1 in its free column.
std::vector<Vector> null_space(const Matrix& m);

// Inverse of a square matrix; Error(InvalidParameters) when singular.
Matrix inverse(const Matrix& m);

// A nonzero v with H v = 0 and v[i] = 0 for i outside `support`, or nullopt
// when the kernel restricted to those positions is trivial. Positions must be
// distinct and < H.cols().
std::optional<Vector> solve_homogeneous_restricted(const Matrix& h, std::span<const std::size_t> support);

Vector random_vector(const Field& field, std::size_t n, Rng& rng);
// Uniform over the order^n - 1 nonzero vectors (rejection sampling).
Vector random_nonzero_vector(const Field& field, std::size_t n, Rng& rng);

bool is_zero(std::span<const Symbol> v) noexcept;

}  // namespace wdc
