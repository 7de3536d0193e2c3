#include "wdc/matrix.hpp"

#include <algorithm>
#include <string>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!field_) throw Error(ErrorCode::InvalidParameters, "matrix needs a field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m.field_->contains(rows[r][c])) {
        throw Error(ErrorCode::InvalidParameters,
                    "entry " + std::to_string(rows[r][c]) + " is not an element of " + m.field_->name());
      }
      m(r, c) = static_cast<Symbol>(rows[r][c]);
    }
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (!same_field(field_, rhs.field_)) throw Error(ErrorCode::FieldMismatch, "matrix product across fields");
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols_; ++i) field_->axpy((*this)(r, i), rhs.row(i), out.row(r));
  }
  return out;
}

Vector Matrix::apply(std::span<const Symbol> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Symbol acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_->add(acc, field_->mul((*this)(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
  Matrix out(field_, rows_, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= cols_) throw Error(ErrorCode::DimensionMismatch, "column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, columns[j]);
  }
  return out;
}

bool Matrix::is_zero() const noexcept { return wdc::is_zero(data_); }

bool Matrix::operator==(const Matrix& other) const {
  return same_field(field_, other.field_) && rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

RowEchelon row_reduce(Matrix m) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pr = lead;
    while (pr < m.rows() && m(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead) {
      auto a = m.row(pr);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Symbol scale = f.inv(m(lead, col));
    for (auto& x : m.row(lead)) x = f.mul(x, scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != lead && m(r, col) != 0) f.axpy(f.neg(m(r, col)), m.row(lead), m.row(r));
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vector> null_space(const Matrix& m) {
  const auto [reduced, pivots] = row_reduce(m);
  const Field& f = *m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(reduced(r, free));
    basis.push_back(std::move(v));
  }
  for (const auto& v : basis) {
    if (!is_zero(m.apply(v))) throw std::logic_error("null_space produced a vector outside the kernel");
  }
  return basis;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  auto [reduced, pivots] = row_reduce(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorCode::InvalidParameters, "matrix is singular");
  Matrix inv(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = reduced(r, n + c);
  }
  return inv;
}

std::optional<Vector> solve_homogeneous_restricted(const Matrix& h, std::span<const std::size_t> support) {
  const Matrix restricted = h.select_columns(support);
  const auto kernel = null_space(restricted);
  if (kernel.empty()) return std::nullopt;
  Vector v(h.cols(), 0);
  for (std::size_t j = 0; j < support.size(); ++j) v[support[j]] = kernel.front()[j];
  if (!is_zero(h.apply(v))) throw std::logic_error("restricted solution violates H v = 0");
  return v;
}

Vector random_vector(const Field& field, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = static_cast<Symbol>(rng.below(field.order()));
  return v;
}

Vector random_nonzero_vector(const Field& field, std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "nonzero vector of length 0");
  for (;;) {
    Vector v = random_vector(field, n, rng);
    if (!is_zero(v)) return v;
  }
}

bool is_zero(std::span<const Symbol> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](Symbol x) { return x == 0; });
}

}  // namespace wdc
