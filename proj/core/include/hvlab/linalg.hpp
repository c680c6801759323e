#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hvlab/field.hpp"

namespace hvlab {

/// Dense row-major matrix over a Field (the field is passed to each operation).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return a_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return a_[r * cols_ + c]; }
  const std::vector<Elem>& data() const noexcept { return a_; }
  std::vector<Elem> row(std::size_t r) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

/// Reduces in place to reduced row-echelon form; returns the pivot columns.
/// Zero rows are moved to the bottom.
std::vector<std::size_t> rref_in_place(const Field& f, Matrix& m);
std::size_t rank(const Field& f, Matrix m);
/// Basis (as rows) of {x : m x = 0}.
Matrix nullspace(const Field& f, const Matrix& m);
std::optional<Matrix> inverse(const Field& f, const Matrix& m);
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Entrywise x -> x^q.
Matrix conjugate(const Field& f, const Matrix& a);

}  // namespace hvlab
