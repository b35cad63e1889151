#pragma once

// Dense real matrices, QR factorization with the positive-diagonal
// convention, and the adjacent-column Givens swap used by every
// reordering strategy.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "babai/errors.hpp"

namespace babai {

/// Row-major dense real matrix. Entries must be finite.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const double> entries() const { return entries_; }

  DenseMatrix transposed() const;
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

 private:
  std::size_t rows_, cols_;
  std::vector<double> entries_;
};

/// n x n upper-triangular matrix with strictly positive diagonal and exact
/// zeros below the diagonal.
class UpperTriangular {
 public:
  /// Validates triangularity, positivity of the diagonal, and finiteness.
  UpperTriangular(std::size_t n, std::vector<double> entries);
  UpperTriangular(std::initializer_list<std::initializer_list<double>> rows);

  static UpperTriangular identity(std::size_t n);

  std::size_t dim() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::span<const double> entries() const { return entries_; }
  std::vector<double> diagonal() const;
  double min_diagonal() const;
  double max_diagonal() const;
  /// Product of the diagonal entries, i.e. the determinant.
  double diagonal_product() const;

  DenseMatrix to_dense() const;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

/// Dense integer matrix (row-major); carries the exact unimodular factors.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<long long> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  static IntMatrix identity(std::size_t n);

  long long& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool operator==(const IntMatrix&) const = default;
};

struct QRFactors {
  DenseMatrix q1;      ///< m x n, orthonormal columns
  UpperTriangular r;   ///< n x n, positive diagonal
};

/// Householder QR of a full-column-rank matrix (m >= n), post-processed so
/// every diagonal entry of R is positive.
///
/// Throws DimensionError when m < n and RankDeficientError when the smallest
/// diagonal of R falls at or below 1e-12 times the largest.
QRFactors qr_factorize(const DenseMatrix& a);

/// Swaps columns k-1 and k of r (k is 0-based, 1 <= k < n) and restores the
/// triangular form with a single Givens rotation on rows k-1 and k. The
/// result keeps a positive diagonal and satisfies
///   rb[k-1][k-1]^2            = r[k-1][k]^2 + r[k][k]^2
///   rb[k-1][k]^2 + rb[k][k]^2 = r[k-1][k-1]^2
///   rb[k-1][k-1] * rb[k][k]   = r[k-1][k-1] * r[k][k].
UpperTriangular givens_swap(const UpperTriangular& r, std::size_t k);

namespace detail {

// In-place worker behind givens_swap, shared with the reordering strategies.
// `m` is a row-major n x n upper-triangular buffer with positive diagonal;
// `qt`, when non-null, is an n x n row-major buffer that receives the same
// row operations (so it accumulates the transposed orthogonal factor).
void givens_swap_inplace(std::vector<double>& m, std::size_t n, std::size_t k,
                         std::vector<double>* qt);

}  // namespace detail

}  // namespace babai
