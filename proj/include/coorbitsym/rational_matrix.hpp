#pragma once

#include <coorbitsym/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coorbitsym {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix with exact rational entries.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static RationalMatrix diagonal(std::span<const Rational> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Rational> entries() const { return entries_; }
  std::span<const Rational> row(std::size_t i) const {
    return std::span<const Rational>(entries_).subspan(i * cols_, cols_);
  }
  RationalVector column(std::size_t j) const;

  RationalMatrix transpose() const;
  RationalMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const RationalMatrix& b);

  bool is_zero() const;
  bool is_strictly_upper_triangular() const;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  RationalMatrix& operator*=(const Rational& scalar);

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, RationalMatrix a);

/// Exact product. Throws DimensionError when a.cols() != b.rows().
RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b);
inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) { return mat_mul(a, b); }

RationalVector mat_vec(const RationalMatrix& a, std::span<const Rational> x);

/// Exact inverse by Gauss-Jordan elimination.
/// Throws DimensionError for non-square input, SingularMatrixError when singular.
RationalMatrix mat_inverse(const RationalMatrix& a);

Rational trace(const RationalMatrix& a);
Rational determinant(const RationalMatrix& a);
RationalMatrix mat_power(const RationalMatrix& a, unsigned exponent);
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

std::size_t rank(const RationalMatrix& a);

/// Basis of {x : <row, x> = 0 for every row}, computed by fraction-free
/// elimination on integer-scaled rows. `dimension` is the number of unknowns;
/// an empty constraint list yields the standard basis of the full space.
/// Throws DimensionError if a row has the wrong length.
std::vector<RationalVector> solve_linear_subspace(std::span<const RationalVector> constraint_rows,
                                                  std::size_t dimension);

/// Nullspace basis of a matrix (columns are unknowns).
std::vector<RationalVector> kernel(const RationalMatrix& a);

/// Coefficients c with sum_k c_k * basis[k] == target, if the target lies in the span.
/// All matrices must share a shape.
std::optional<RationalVector> span_coordinates(std::span<const RationalMatrix> basis,
                                               const RationalMatrix& target);

/// Reshape a flat row-major vector into a rows x cols matrix.
RationalMatrix reshape(std::span<const Rational> flat, std::size_t rows, std::size_t cols);

std::string to_string(const RationalMatrix& m);

}  // namespace coorbitsym
