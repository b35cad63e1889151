#include "babai/reorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "babai/estimate.hpp"

namespace babai {

namespace {

constexpr long long kIterationGuard = 1'000'000;

void check_delta(double delta) {
  if (!(delta > 0.25) || !(delta <= 1.0)) {
    throw ParameterError("delta must lie in (0.25, 1]");
  }
}

std::vector<double> identity_buffer(std::size_t n) {
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
  return q;
}

std::optional<DenseMatrix> finish_q(std::vector<double>* qt, std::size_t n) {
  if (!qt) return std::nullopt;
  // qt held the row operations M with rbar = M * R * P; qbar = M'.
  return DenseMatrix(n, n, std::move(*qt)).transposed();
}

// Householder triangularization of the n x n buffer `w`, rows/columns from
// `start` on, with the positive-diagonal fix applied per column. Row
// operations are mirrored into `qt` when present.
void householder_from(std::vector<double>& w, std::size_t n, std::size_t start,
                      std::vector<double>* qt) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };
  for (std::size_t k = start; k < n; ++k) {
    double norm_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) norm_sq += at(i, k) * at(i, k);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;

    const double x0 = at(k, k);
    const double alpha = (x0 >= 0.0) ? -norm : norm;
    std::vector<double> v(n - k);
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = at(i, k);
    const double vnorm_sq = v[0] * v[0] + (norm_sq - x0 * x0);
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;

    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * at(i, j);
      dot *= beta;
      for (std::size_t i = k; i < n; ++i) at(i, j) -= dot * v[i - k];
    }
    at(k, k) = alpha;
    for (std::size_t i = k + 1; i < n; ++i) at(i, k) = 0.0;

    if (qt) {
      for (std::size_t j = 0; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * (*qt)[i * n + j];
        dot *= beta;
        for (std::size_t i = k; i < n; ++i) (*qt)[i * n + j] -= dot * v[i - k];
      }
    }
  }

  // Sign convention.
  for (std::size_t i = start; i < n; ++i) {
    if (at(i, i) < 0.0) {
      for (std::size_t j = i; j < n; ++j) at(i, j) = -at(i, j);
      if (qt) {
        for (std::size_t j = 0; j < n; ++j) (*qt)[i * n + j] = -(*qt)[i * n + j];
      }
    }
  }
}

void swap_columns(std::vector<double>& w, std::size_t n, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < n; ++i) std::swap(w[i * n + a], w[i * n + b]);
}

// Row norms of T^-1 for an upper-triangular s x s buffer with nonzero
// diagonal; row i of T^-1 is obtained by back substitution on e_i.
std::vector<double> inverse_row_norms(const std::vector<double>& t, std::size_t s) {
  std::vector<double> norms(s, 0.0);
  std::vector<double> x(s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    std::fill(x.begin(), x.end(), 0.0);
    // Solve x' T = e_i', i.e. forward substitution on the columns.
    for (std::size_t j = i; j < s; ++j) {
      double acc = (j == i) ? 1.0 : 0.0;
      for (std::size_t k = i; k < j; ++k) acc -= x[k] * t[k * s + j];
      x[j] = acc / t[j * s + j];
    }
    double nsq = 0.0;
    for (std::size_t j = i; j < s; ++j) nsq += x[j] * x[j];
    norms[i] = std::sqrt(nsq);
  }
  return norms;
}

}  // namespace

PermutedFactors lll_p(const UpperTriangular& r, double delta, bool want_q) {
  check_delta(delta);
  const std::size_t n = r.dim();
  std::vector<double> w(r.entries().begin(), r.entries().end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> qbuf;
  std::vector<double>* qt = nullptr;
  if (want_q) {
    qbuf = identity_buffer(n);
    qt = &qbuf;
  }

  long long guard = 0;
  std::size_t k = 1;
  while (k < n) {
    if (++guard > kIterationGuard) {
      throw NonTerminationError("lll_p exceeded its iteration guard");
    }
    const double rpp = w[(k - 1) * n + (k - 1)];
    const double rpq = w[(k - 1) * n + k];
    const double rqq = w[k * n + k];
    if (delta * rpp * rpp > rpq * rpq + rqq * rqq) {
      detail::givens_swap_inplace(w, n, k, qt);
      std::swap(perm[k - 1], perm[k]);
      if (k > 1) --k;
    } else {
      ++k;
    }
  }

  return PermutedFactors{UpperTriangular(n, std::move(w)), std::move(perm), finish_q(qt, n)};
}

PermutedFactors sqrd(const UpperTriangular& r, bool want_q) {
  const std::size_t n = r.dim();
  std::vector<double> w(r.entries().begin(), r.entries().end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> qbuf;
  std::vector<double>* qt = nullptr;
  if (want_q) {
    qbuf = identity_buffer(n);
    qt = &qbuf;
  }

  for (std::size_t k = 0; k < n; ++k) {
    // The residual norm of column j below row k is the |rbar_kk| this column
    // would produce if chosen next.
    std::size_t best = k;
    double best_norm = 0.0;
    for (std::size_t j = k; j < n; ++j) {
      double nsq = 0.0;
      for (std::size_t i = k; i < n; ++i) nsq += w[i * n + j] * w[i * n + j];
      const double norm = std::sqrt(nsq);
      if (j == k || norm < best_norm ||
          (norm == best_norm && perm[j] < perm[best])) {
        best = j;
        best_norm = norm;
      }
    }
    swap_columns(w, n, k, best);
    std::swap(perm[k], perm[best]);

    // Reflect just this column; later columns keep their tails for the next
    // selection round.
    auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };
    double norm_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) norm_sq += at(i, k) * at(i, k);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;
    const double x0 = at(k, k);
    const double alpha = (x0 >= 0.0) ? -norm : norm;
    std::vector<double> v(n - k);
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = at(i, k);
    const double vnorm_sq = v[0] * v[0] + (norm_sq - x0 * x0);
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * at(i, j);
      dot *= beta;
      for (std::size_t i = k; i < n; ++i) at(i, j) -= dot * v[i - k];
    }
    at(k, k) = alpha;
    for (std::size_t i = k + 1; i < n; ++i) at(i, k) = 0.0;
    if (qt) {
      for (std::size_t j = 0; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * (*qt)[i * n + j];
        dot *= beta;
        for (std::size_t i = k; i < n; ++i) (*qt)[i * n + j] -= dot * v[i - k];
      }
    }
  }

  // Sign convention on every row.
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i * n + i] < 0.0) {
      for (std::size_t j = i; j < n; ++j) w[i * n + j] = -w[i * n + j];
      if (qt) {
        for (std::size_t j = 0; j < n; ++j) (*qt)[i * n + j] = -(*qt)[i * n + j];
      }
    }
  }

  return PermutedFactors{UpperTriangular(n, std::move(w)), std::move(perm), finish_q(qt, n)};
}

PermutedFactors vblast(const UpperTriangular& r, bool want_q) {
  const std::size_t n = r.dim();

  // Select the column order from the last position backwards. With T the
  // triangular factor of the still-unplaced columns, placing column j last
  // gives |rbar_kk| = 1 / ||row j of T^-1||.
  std::vector<double> cols(r.entries().begin(), r.entries().end());
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), 0);
  std::vector<std::size_t> order(n);

  for (std::size_t k = n; k-- > 1;) {
    const std::size_t s = live.size();
    // Pack the live columns into an n x s panel and triangularize it.
    std::vector<double> panel(n * s);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t i = 0; i < n; ++i) panel[i * s + j] = cols[i * n + live[j]];

    std::vector<double> t(s * s, 0.0);
    {
      // Plain Householder on the panel; only the upper s x s block is kept.
      auto at = [&](std::size_t i, std::size_t j) -> double& { return panel[i * s + j]; };
      for (std::size_t c = 0; c < s; ++c) {
        double norm_sq = 0.0;
        for (std::size_t i = c; i < n; ++i) norm_sq += at(i, c) * at(i, c);
        const double norm = std::sqrt(norm_sq);
        if (norm == 0.0) continue;
        const double x0 = at(c, c);
        const double alpha = (x0 >= 0.0) ? -norm : norm;
        std::vector<double> v(n - c);
        v[0] = x0 - alpha;
        for (std::size_t i = c + 1; i < n; ++i) v[i - c] = at(i, c);
        const double vnorm_sq = v[0] * v[0] + (norm_sq - x0 * x0);
        if (vnorm_sq == 0.0) continue;
        const double beta = 2.0 / vnorm_sq;
        for (std::size_t j = c; j < s; ++j) {
          double dot = 0.0;
          for (std::size_t i = c; i < n; ++i) dot += v[i - c] * at(i, j);
          dot *= beta;
          for (std::size_t i = c; i < n; ++i) at(i, j) -= dot * v[i - c];
        }
        at(c, c) = alpha;
        for (std::size_t i = c + 1; i < n; ++i) at(i, c) = 0.0;
      }
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) t[i * s + j] = panel[i * s + j];
    }

    const auto inv_norms = inverse_row_norms(t, s);
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t j = 0; j < s; ++j) {
      const double d = 1.0 / inv_norms[j];
      if (d > best_d || (d == best_d && live[j] < live[best])) {
        best = j;
        best_d = d;
      }
    }
    order[k] = live[best];
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best));
  }
  order[0] = live.front();

  // Retriangularize R with its columns in the selected order.
  std::vector<double> w(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w[i * n + j] = cols[i * n + order[j]];
  std::vector<double> qbuf;
  std::vector<double>* qt = nullptr;
  if (want_q) {
    qbuf = identity_buffer(n);
    qt = &qbuf;
  }
  householder_from(w, n, 0, qt);

  return PermutedFactors{UpperTriangular(n, std::move(w)), std::move(order), finish_q(qt, n)};
}

UnimodularReduction lll_reduce(const UpperTriangular& r, double delta) {
  check_delta(delta);
  const std::size_t n = r.dim();
  std::vector<double> w(r.entries().begin(), r.entries().end());
  IntMatrix z = IntMatrix::identity(n);
  IntMatrix u = IntMatrix::identity(n);

  // Column k minus mu times column i; rounding ties toward the smaller
  // magnitude leaves entries already satisfying |r_ik| <= r_ii / 2 untouched,
  // boundary included.
  auto size_reduce = [&](std::size_t k, std::size_t i) {
    const long long mu = round_half_to_smaller_magnitude(w[i * n + k] / w[i * n + i]);
    if (mu == 0) return;
    const double mud = static_cast<double>(mu);
    for (std::size_t row = 0; row <= i; ++row) w[row * n + k] -= mud * w[row * n + i];
    for (std::size_t row = 0; row < n; ++row) z(row, k) -= mu * z(row, i);
    // Z -> Z * E implies U -> E^-1 * U, a row operation.
    for (std::size_t col = 0; col < n; ++col) u(i, col) += mu * u(k, col);
  };

  long long guard = 0;
  std::size_t k = 1;
  while (k < n) {
    if (++guard > kIterationGuard) {
      throw NonTerminationError("lll_reduce exceeded its iteration guard");
    }
    size_reduce(k, k - 1);
    const double rpp = w[(k - 1) * n + (k - 1)];
    const double rpq = w[(k - 1) * n + k];
    const double rqq = w[k * n + k];
    if (delta * rpp * rpp > rpq * rpq + rqq * rqq) {
      detail::givens_swap_inplace(w, n, k, nullptr);
      for (std::size_t row = 0; row < n; ++row) std::swap(z(row, k - 1), z(row, k));
      for (std::size_t col = 0; col < n; ++col) std::swap(u(k - 1, col), u(k, col));
      if (k > 1) --k;
    } else {
      for (std::size_t i = k - 1; i-- > 0;) size_reduce(k, i);
      ++k;
    }
  }

  return UnimodularReduction{UpperTriangular(n, std::move(w)), std::move(z), std::move(u)};
}

}  // namespace babai
