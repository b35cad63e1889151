#include "babai/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace babai {

namespace {

void check_shape(std::size_t rows, std::size_t cols, std::size_t count) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be at least 1x1");
  if (count != rows * cols) {
    throw DimensionError("matrix entry count " + std::to_string(count) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void check_finite(std::span<const double> entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
  check_shape(rows, cols, entries_.size());
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_shape(rows, cols, entries_.size());
  check_finite(entries_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged initializer rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_shape(rows_, cols_, entries_.size());
  check_finite(entries_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

UpperTriangular::UpperTriangular(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  check_shape(n, n, entries_.size());
  check_finite(entries_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!(entries_[i * n_ + i] > 0.0)) {
      throw DomainError("upper-triangular diagonal must be strictly positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[i * n_ + j] != 0.0) {
        throw DomainError("entries below the diagonal must be exactly zero");
      }
    }
  }
}

namespace {
std::vector<double> flatten_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<double> e;
  e.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionError("initializer is not square");
    e.insert(e.end(), row.begin(), row.end());
  }
  return e;
}
}  // namespace

UpperTriangular::UpperTriangular(std::initializer_list<std::initializer_list<double>> rows)
    : UpperTriangular(rows.size(), flatten_rows(rows)) {}

UpperTriangular UpperTriangular::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return UpperTriangular(n, std::move(e));
}

std::vector<double> UpperTriangular::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = entries_[i * n_ + i];
  return d;
}

double UpperTriangular::min_diagonal() const {
  double m = entries_[0];
  for (std::size_t i = 1; i < n_; ++i) m = std::min(m, entries_[i * n_ + i]);
  return m;
}

double UpperTriangular::max_diagonal() const {
  double m = entries_[0];
  for (std::size_t i = 1; i < n_; ++i) m = std::max(m, entries_[i * n_ + i]);
  return m;
}

double UpperTriangular::diagonal_product() const {
  double p = 1.0;
  for (std::size_t i = 0; i < n_; ++i) p *= entries_[i * n_ + i];
  return p;
}

DenseMatrix UpperTriangular::to_dense() const {
  return DenseMatrix(n_, n_, entries_);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QRFactors qr_factorize(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n) throw DimensionError("qr_factorize needs at least as many rows as columns");

  // Householder reduction on a working copy of A.
  std::vector<double> w(a.entries().begin(), a.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };

  // Reflector k is stored as v (implicit first entry) plus beta; we keep them
  // to build the thin Q afterwards.
  std::vector<std::vector<double>> vs(n);
  std::vector<double> betas(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    double norm_sq = 0.0;
    for (std::size_t i = k; i < m; ++i) norm_sq += at(i, k) * at(i, k);
    const double norm = std::sqrt(norm_sq);

    std::vector<double> v(m - k, 0.0);
    double beta = 0.0;
    if (norm > 0.0) {
      const double x0 = at(k, k);
      const double alpha = (x0 >= 0.0) ? -norm : norm;  // avoid cancellation
      v[0] = x0 - alpha;
      for (std::size_t i = k + 1; i < m; ++i) v[i - k] = at(i, k);
      const double vnorm_sq = v[0] * v[0] + (norm_sq - x0 * x0);
      if (vnorm_sq > 0.0) {
        beta = 2.0 / vnorm_sq;
        for (std::size_t j = k; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t i = k; i < m; ++i) dot += v[i - k] * at(i, j);
          dot *= beta;
          for (std::size_t i = k; i < m; ++i) at(i, j) -= dot * v[i - k];
        }
        at(k, k) = alpha;  // computed exactly, avoids residual roundoff
        for (std::size_t i = k + 1; i < m; ++i) at(i, k) = 0.0;
      }
    }
    vs[k] = std::move(v);
    betas[k] = beta;
  }

  // Thin Q1: apply the reflectors backwards to the first n columns of I_m.
  std::vector<double> q(m * n, 0.0);
  auto qt = [&](std::size_t i, std::size_t j) -> double& { return q[i * n + j]; };
  for (std::size_t j = 0; j < n; ++j) qt(j, j) = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    if (betas[k] == 0.0) continue;
    const auto& v = vs[k];
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * qt(i, j);
      dot *= betas[k];
      for (std::size_t i = k; i < m; ++i) qt(i, j) -= dot * v[i - k];
    }
  }

  // Positive-diagonal convention: negate row i of R and column i of Q1
  // wherever r_ii < 0.
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) < 0.0) {
      for (std::size_t j = i; j < n; ++j) at(i, j) = -at(i, j);
      for (std::size_t row = 0; row < m; ++row) qt(row, i) = -qt(row, i);
    }
  }

  double dmin = at(0, 0), dmax = at(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    dmin = std::min(dmin, at(i, i));
    dmax = std::max(dmax, at(i, i));
  }
  if (dmin <= 1e-12 * dmax) {
    throw RankDeficientError("matrix is numerically rank deficient");
  }

  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r[i * n + j] = at(i, j);

  return QRFactors{DenseMatrix(m, n, std::move(q)), UpperTriangular(n, std::move(r))};
}

namespace detail {

void givens_swap_inplace(std::vector<double>& m, std::size_t n, std::size_t k,
                         std::vector<double>* qt) {
  const std::size_t p = k - 1, q = k;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };

  const double a = at(p, p);
  const double b = at(p, q);
  const double d = at(q, q);

  // Swap the two columns over the rows above the block.
  for (std::size_t i = 0; i < p; ++i) std::swap(at(i, p), at(i, q));

  // Rotation zeroing the (q, p) entry of the swapped pair.
  const double h = std::hypot(b, d);
  const double c = b / h, s = d / h;

  at(p, p) = h;
  at(q, p) = 0.0;
  at(p, q) = c * a;
  at(q, q) = -s * a;
  for (std::size_t j = q + 1; j < n; ++j) {
    const double rp = at(p, j), rq = at(q, j);
    at(p, j) = c * rp + s * rq;
    at(q, j) = -s * rp + c * rq;
  }

  if (qt) {
    auto qat = [&](std::size_t i, std::size_t j) -> double& { return (*qt)[i * n + j]; };
    for (std::size_t j = 0; j < n; ++j) {
      const double rp = qat(p, j), rq = qat(q, j);
      qat(p, j) = c * rp + s * rq;
      qat(q, j) = -s * rp + c * rq;
    }
  }

  // Restore the sign convention on row q (the rotation left -s*a <= 0 there;
  // a > 0 and s >= 0, so the flip is needed unless the entry is zero).
  if (at(q, q) < 0.0) {
    for (std::size_t j = q; j < n; ++j) at(q, j) = -at(q, j);
    if (qt) {
      for (std::size_t j = 0; j < n; ++j) (*qt)[q * n + j] = -(*qt)[q * n + j];
    }
  }
}

}  // namespace detail

UpperTriangular givens_swap(const UpperTriangular& r, std::size_t k) {
  const std::size_t n = r.dim();
  if (k < 1 || k >= n) throw IndexError("givens_swap column index out of range");
  std::vector<double> m(r.entries().begin(), r.entries().end());
  detail::givens_swap_inplace(m, n, k, nullptr);
  return UpperTriangular(n, std::move(m));
}

}  // namespace babai
