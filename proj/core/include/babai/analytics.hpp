#pragma once

// Closed-form success probabilities of the Babai estimators, the threshold
// function governing when column permutations help, and the permutation
// invariant bound.

#include <string>
#include <utility>

#include "babai/estimate.hpp"
#include "babai/matrix.hpp"

namespace babai {

/// Unnormalized Gaussian integral from 0: integral of exp(-t^2/2) dt on [0, x].
double gaussian_integral(double x);

/// Probability that a N(0, sigma^2) variable lies within +-width/2 of its
/// mean, i.e. erf(width / (2 sqrt(2) sigma)). Requires width >= 0, sigma > 0.
double centered_gaussian_mass(double width, double sigma);

/// Success probability of the box-constrained Babai estimate for a true
/// parameter uniform over `box`:
///   prod_i [ 1/(w_i+1) + w_i/(w_i+1) * mass(r_ii) ],   w_i = upper_i - lower_i.
/// Evaluated in log space for dimensions above 50.
double babai_box_success_prob(const UpperTriangular& r, const IntegerBox& box, double sigma);

/// Success probability of the ordinary Babai estimate: prod_i mass(r_ii).
double babai_ordinary_success_prob(const UpperTriangular& r, double sigma);

/// Strictly decreasing auxiliary function of zeta (for any fixed alpha >= 0):
///   (1 - zeta^2) (alpha + gaussian_integral(zeta)) - zeta exp(-zeta^2/2).
double threshold_function(double zeta, double alpha);

/// Unique zero of threshold_function on [0, 1). This is the critical value of
/// r_ii / (2 sigma) that separates the regime where adjacent-column swaps
/// raise the box success probability from the regime where they lower it.
/// threshold_root(0) == 0 exactly; results are cached per alpha.
double threshold_root(double alpha);

/// Symmetric pair objective (invariant under zeta <-> beta/zeta):
///   alpha (I(zeta) + I(beta/zeta)) + I(zeta) I(beta/zeta),
/// with I = gaussian_integral. Strictly decreasing for zeta between
/// min{sqrt(beta), beta/root} and max{sqrt(beta), beta/root}.
double swap_objective(double zeta, double alpha, double beta);

/// Geometric mean of the diagonal, (det R)^(1/n); permutation invariant.
double diag_geometric_mean(const UpperTriangular& r);

/// Permutation-invariant bound on the box success probability for a cube box
/// of edge d: [ 1/(d+1) + d/(d+1) * mass(gamma) ]^n with gamma the geometric
/// mean of the diagonal. Upper bound when every r_ii/(2 sigma) is at or above
/// threshold_root(sqrt(2 pi)/(2 d)); lower bound when every one is at or
/// below it.
double permutation_invariant_bound_box(const UpperTriangular& r, long long d, double sigma);

/// Limit of the cube bound as d grows: mass(gamma)^n, an upper bound on the
/// ordinary success probability.
double permutation_invariant_bound_ordinary(const UpperTriangular& r, double sigma);

struct DiagConditions {
  bool all_above_threshold;  ///< min_i r_ii/(2 sigma) >= threshold_root(sqrt(2 pi)/(2d))
  bool all_below_threshold;  ///< max_i r_ii/(2 sigma) <= threshold_root(sqrt(2 pi)/(2d))
};

DiagConditions diag_threshold_conditions(const UpperTriangular& r, long long d, double sigma);

/// One-stop summary for a cube box.
struct SuccessReport {
  double sigma = 0.0;
  double p_bb = 0.0;
  double p_ob = 0.0;
  double mu_bb = 0.0;
  double mu_ob = 0.0;
  double gamma = 0.0;
  bool cond_min = false;
  bool cond_max = false;
};

/// Builds the full report; the box must be a cube (DomainError otherwise).
SuccessReport make_success_report(const UpperTriangular& r, const IntegerBox& box, double sigma);

std::string success_report_csv_header();
std::string success_report_csv_row(const SuccessReport& rep);

}  // namespace babai
