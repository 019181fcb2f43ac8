#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fiberres/field.hpp"

namespace fiberres {

/// Dense row-major matrix over Z/p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void set_column(std::size_t c, std::span<const Scalar> v);
  Vec apply(const PrimeField& F, std::span<const Scalar> x) const;
  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec data_;
};

/// Reduced row echelon form. `pivots[r]` is the pivot column of row r < rank.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon rref(const PrimeField& F, Matrix m);
std::size_t rank(const PrimeField& F, Matrix m);

/// Null space basis of m (vectors of length m.cols()).
///
/// Each basis vector has a 1 in exactly one free (non-pivot) column and 0 in
/// the others, so the coordinates of a null vector are its entries at
/// `free_columns`.
struct NullSpace {
  std::vector<Vec> basis;
  std::vector<std::size_t> free_columns;
  std::size_t dim() const { return basis.size(); }
  Vec coordinates(std::span<const Scalar> v) const;
};

NullSpace nullspace(const PrimeField& F, const Matrix& m);

/// Solves A x = b for a fixed A and many right-hand sides. The solution with
/// all free variables zero is returned.
class LinearSolver {
 public:
  LinearSolver(const PrimeField& F, const Matrix& a);
  std::optional<Vec> solve(std::span<const Scalar> b) const;
  std::size_t rank() const { return pivots_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  PrimeField F_;
  std::size_t rows_, cols_;
  Matrix transform_;  // rows x rows, transform_ * A is in RREF
  std::vector<std::size_t> pivots_;
};

/// Incrementally built subspace kept in reduced row echelon form.
class EchelonBasis {
 public:
  EchelonBasis(const PrimeField& F, std::size_t dim) : F_(F), dim_(dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns v reduced against the current rows.
  Vec reduce(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }
  /// Adds v; returns false if v was already in the span.
  bool insert(std::span<const Scalar> v);

  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  PrimeField F_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Small vector helpers.
void axpy(const PrimeField& F, std::span<Scalar> dst, std::span<const Scalar> src, Scalar m);
Vec scaled(const PrimeField& F, std::span<const Scalar> v, Scalar m);

}  // namespace fiberres
