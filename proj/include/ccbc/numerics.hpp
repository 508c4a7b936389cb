#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccbc {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  /// Largest absolute entry.
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);
Matrix transpose(const Matrix& a);

/// Symmetric matrix; every write goes to both (i,j) and (j,i).
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t order) : full_(order, order) {}

  /// Copies `a`, rejecting it if any |a(i,j) - a(j,i)| exceeds tol * max|a|.
  static SymMatrix from_matrix(const Matrix& a, double tol = 1e-12);

  std::size_t order() const noexcept { return full_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return full_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    full_(i, j) = v;
    full_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    full_(i, j) += v;
    if (i != j) full_(j, i) += v;
  }
  const Matrix& matrix() const noexcept { return full_; }

 private:
  Matrix full_;
};

/// Pivot below tolerance during elimination.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(std::size_t pivot)
      : std::runtime_error("matrix singular to working tolerance at pivot " + std::to_string(pivot)),
        pivot_(pivot) {}
  std::size_t pivot_index() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

struct SymEigen {
  std::vector<double> values;  ///< sorted by |value| ascending, negatives first on ties
  Matrix vectors;              ///< column k is the unit eigenvector of values[k]
};

/// Full spectrum by cyclic Jacobi rotations, sorted by absolute value.
std::vector<double> sym_eigenvalues(const SymMatrix& a);
SymEigen sym_eigen(const SymMatrix& a);

/// LU with partial pivoting. Throws SingularMatrixError when a pivot is below
/// 1e-14 * max|a|.
std::vector<double> solve(const Matrix& a, std::span<const double> b);
Matrix invert(const Matrix& a);
double determinant(const Matrix& a);

}  // namespace ccbc
