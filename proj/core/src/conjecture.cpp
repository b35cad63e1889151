#include "babai/conjecture.hpp"

#include <algorithm>
#include <cmath>

#include "babai/analytics.hpp"
#include "babai/io.hpp"

namespace babai {

ValidityBox validity_box(const IntMatrix& u, const IntegerBox& box) {
  const std::size_t n = box.dim();
  if (u.rows != n || u.cols != n) {
    throw DimensionError("validity_box needs a square matrix matching the box dimension");
  }
  ValidityBox out;
  out.lbar.assign(n, 0);
  out.ubar.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    long long lo = 0, hi = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long long uij = u(i, j);
      if (uij >= 0) {
        lo += uij * box.lower(j);
        hi += uij * box.upper(j);
      } else {
        lo += uij * box.upper(j);
        hi += uij * box.lower(j);
      }
    }
    out.lbar[i] = lo;
    out.ubar[i] = hi;
  }
  return out;
}

std::pair<double, double> conditional_error_bounds(const UpperTriangular& rbar,
                                                   const ValidityBox& vbox, double sigma) {
  const std::size_t n = rbar.dim();
  if (vbox.lbar.size() != n || vbox.ubar.size() != n) {
    throw DimensionError("validity box dimension does not match matrix dimension");
  }
  if (!(sigma > 0.0)) throw DomainError("sigma must be strictly positive");

  double plain = 1.0;
  double ratio = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mass = centered_gaussian_mass(rbar(i, i), sigma);
    const double span = static_cast<double>(vbox.ubar[i] - vbox.lbar[i] + 1);
    const double wide = centered_gaussian_mass(span * rbar(i, i), sigma);
    plain *= mass;
    // mass <= wide by monotonicity; the min guards the ratio against
    // floating-point noise when both are ~1.
    ratio *= (wide > 0.0) ? std::min(mass / wide, 1.0) : 1.0;
  }
  return {1.0 - plain, 1.0 - ratio};
}

UpperTriangular counterexample_matrix(std::size_t n, double sigma) {
  if (n < 2) throw DimensionError("counterexample needs dimension at least 2");
  if (!(sigma > 0.0)) throw DomainError("sigma must be strictly positive");
  std::vector<double> e(n * n, 0.0);
  e[0] = 0.04 * sigma;
  for (std::size_t j = 1; j < n; ++j) e[j] = 0.02 * sigma;
  for (std::size_t i = 1; i < n; ++i) e[i * n + i] = 10.0 * sigma;
  return UpperTriangular(n, std::move(e));
}

double first_coordinate_box_probability(double r11, long long l1, long long u1, double sigma) {
  if (!(r11 > 0.0)) throw DomainError("r11 must be strictly positive");
  if (l1 > u1) throw DomainError("interval is empty");
  const long long w = u1 - l1;
  double sum = 0.0;
  for (long long i = 0; i <= w; ++i) {
    sum += centered_gaussian_mass(static_cast<double>(2 * w - 2 * i + 1) * r11, sigma);
    sum += centered_gaussian_mass(static_cast<double>(2 * i + 1) * r11, sigma);
  }
  return sum / (2.0 * static_cast<double>(w + 1));
}

std::string conjecture_csv_header(const std::string& param_name) {
  return param_name + ",p_th,p_ex,p_b,p_e,mu_eb1,mu_eb2";
}

std::string conjecture_csv_row(double param, const ConjectureReport& rep) {
  std::string row = format_csv(param);
  for (double v : {rep.p_th, rep.p_ex, rep.p_b, rep.p_e, rep.mu_eb1, rep.mu_eb2}) {
    row += ',';
    row += format_csv(v);
  }
  return row;
}

}  // namespace babai
