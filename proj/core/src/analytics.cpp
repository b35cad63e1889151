#include "babai/analytics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>

#include "babai/io.hpp"

namespace babai {

namespace {

constexpr std::size_t kLogSpaceThreshold = 50;

double clamp_probability(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw InternalError("probability drifted outside [0, 1] beyond tolerance");
  }
  return std::clamp(p, 0.0, 1.0);
}

double product_possibly_log_space(std::size_t n, const std::vector<double>& factors) {
  if (n <= kLogSpaceThreshold) {
    double p = 1.0;
    for (double f : factors) p *= f;
    return p;
  }
  double log_sum = 0.0;
  for (double f : factors) {
    if (f <= 0.0) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum);
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be strictly positive");
}

}  // namespace

double gaussian_integral(double x) {
  // integral_0^x exp(-t^2/2) dt = sqrt(pi/2) * erf(x / sqrt(2))
  return std::sqrt(std::numbers::pi / 2.0) * std::erf(x / std::numbers::sqrt2);
}

double centered_gaussian_mass(double width, double sigma) {
  check_sigma(sigma);
  if (!(width >= 0.0)) throw DomainError("width must be nonnegative");
  return std::erf(width / (2.0 * std::numbers::sqrt2 * sigma));
}

double babai_box_success_prob(const UpperTriangular& r, const IntegerBox& box, double sigma) {
  check_sigma(sigma);
  const std::size_t n = r.dim();
  if (box.dim() != n) throw DimensionError("box dimension does not match matrix dimension");
  std::vector<double> factors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(box.width(i));
    factors[i] = 1.0 / (w + 1.0) + (w / (w + 1.0)) * centered_gaussian_mass(r(i, i), sigma);
  }
  return clamp_probability(product_possibly_log_space(n, factors));
}

double babai_ordinary_success_prob(const UpperTriangular& r, double sigma) {
  check_sigma(sigma);
  const std::size_t n = r.dim();
  std::vector<double> factors(n);
  for (std::size_t i = 0; i < n; ++i) factors[i] = centered_gaussian_mass(r(i, i), sigma);
  return clamp_probability(product_possibly_log_space(n, factors));
}

double threshold_function(double zeta, double alpha) {
  if (!(zeta >= 0.0) || !(alpha >= 0.0)) {
    throw DomainError("threshold_function needs zeta >= 0 and alpha >= 0");
  }
  return (1.0 - zeta * zeta) * (alpha + gaussian_integral(zeta)) -
         zeta * std::exp(-0.5 * zeta * zeta);
}

double threshold_root(double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be nonnegative");
  if (alpha == 0.0) return 0.0;

  static std::shared_mutex cache_mutex;
  static std::unordered_map<std::uint64_t, double> cache;
  const auto key = std::bit_cast<std::uint64_t>(alpha);
  {
    std::shared_lock lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  // f(0) = alpha > 0 and f(1) = -exp(-1/2) < 0, so bisection on [0, 1]
  // converges unconditionally.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (threshold_function(mid, alpha) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);

  std::unique_lock lock(cache_mutex);
  cache.emplace(key, root);
  return root;
}

double swap_objective(double zeta, double alpha, double beta) {
  if (!(zeta > 0.0)) throw DomainError("zeta must be strictly positive");
  if (!(alpha >= 0.0) || !(beta > 0.0)) {
    throw DomainError("swap_objective needs alpha >= 0 and beta > 0");
  }
  const double a = gaussian_integral(zeta);
  const double b = gaussian_integral(beta / zeta);
  return alpha * (a + b) + a * b;
}

double diag_geometric_mean(const UpperTriangular& r) {
  double log_sum = 0.0;
  for (std::size_t i = 0; i < r.dim(); ++i) log_sum += std::log(r(i, i));
  return std::exp(log_sum / static_cast<double>(r.dim()));
}

double permutation_invariant_bound_box(const UpperTriangular& r, long long d, double sigma) {
  check_sigma(sigma);
  if (d < 1) throw DomainError("cube edge length must be at least 1");
  const double dd = static_cast<double>(d);
  const double factor =
      1.0 / (dd + 1.0) + (dd / (dd + 1.0)) * centered_gaussian_mass(diag_geometric_mean(r), sigma);
  return clamp_probability(std::pow(factor, static_cast<double>(r.dim())));
}

double permutation_invariant_bound_ordinary(const UpperTriangular& r, double sigma) {
  check_sigma(sigma);
  const double mass = centered_gaussian_mass(diag_geometric_mean(r), sigma);
  return clamp_probability(std::pow(mass, static_cast<double>(r.dim())));
}

DiagConditions diag_threshold_conditions(const UpperTriangular& r, long long d, double sigma) {
  check_sigma(sigma);
  if (d < 1) throw DomainError("cube edge length must be at least 1");
  const double root = threshold_root(std::sqrt(2.0 * std::numbers::pi) / (2.0 * static_cast<double>(d)));
  return DiagConditions{
      .all_above_threshold = r.min_diagonal() / (2.0 * sigma) >= root,
      .all_below_threshold = r.max_diagonal() / (2.0 * sigma) <= root,
  };
}

SuccessReport make_success_report(const UpperTriangular& r, const IntegerBox& box, double sigma) {
  const long long d = box.edge();
  if (d < 1) throw DomainError("report needs a cube box of edge length at least 1");
  const auto conds = diag_threshold_conditions(r, d, sigma);
  SuccessReport rep;
  rep.sigma = sigma;
  rep.p_bb = babai_box_success_prob(r, box, sigma);
  rep.p_ob = babai_ordinary_success_prob(r, sigma);
  rep.mu_bb = permutation_invariant_bound_box(r, d, sigma);
  rep.mu_ob = permutation_invariant_bound_ordinary(r, sigma);
  rep.gamma = diag_geometric_mean(r);
  rep.cond_min = conds.all_above_threshold;
  rep.cond_max = conds.all_below_threshold;
  return rep;
}

std::string success_report_csv_header() {
  return "sigma,p_bb,p_ob,mu_bb,mu_ob,gamma,cond_min,cond_max";
}

std::string success_report_csv_row(const SuccessReport& rep) {
  std::string row;
  row += format_csv(rep.sigma);
  row += ',';
  row += format_csv(rep.p_bb);
  row += ',';
  row += format_csv(rep.p_ob);
  row += ',';
  row += format_csv(rep.mu_bb);
  row += ',';
  row += format_csv(rep.mu_ob);
  row += ',';
  row += format_csv(rep.gamma);
  row += ',';
  row += rep.cond_min ? "1" : "0";
  row += ',';
  row += rep.cond_max ? "1" : "0";
  return row;
}

}  // namespace babai
