#pragma once

// Conditional-error analysis of the LLL-based ordinary Babai estimator
// xbar = Z z_ob: the validity box containing the image of the constraint box
// under Z^-1, closed-form bounds on Pr(xbar != xhat | xbar in box), and the
// construction showing that a valid xbar can still be wrong almost always.

#include <string>
#include <utility>
#include <vector>

#include "babai/estimate.hpp"
#include "babai/matrix.hpp"

namespace babai {

/// Smallest axis-aligned integer box containing { Z^-1 s : s in B }.
struct ValidityBox {
  std::vector<long long> lbar;
  std::vector<long long> ubar;
};

/// Computes the validity box from U = Z^-1 and B, per coordinate from the
/// sign pattern of U:
///   lbar_i = sum_j u_ij * (u_ij >= 0 ? l_j : u_j)
///   ubar_i = sum_j u_ij * (u_ij >= 0 ? u_j : l_j)
ValidityBox validity_box(const IntMatrix& u, const IntegerBox& box);

/// Upper bounds on Pr(xbar != xhat | xbar in B) for an LLL-reduced rbar:
///   first  = 1 - prod_i mass(rbar_ii)
///   second = 1 - prod_i mass(rbar_ii) / mass((ubar_i - lbar_i + 1) rbar_ii)
/// The second is always at least as tight; ratio factors are clamped at 1.
std::pair<double, double> conditional_error_bounds(const UpperTriangular& rbar,
                                                   const ValidityBox& vbox, double sigma);

/// LLL-reduced matrix on which the estimator is almost always wrong even when
/// it lands inside the box: r_11 = 0.04 sigma, first-row off-diagonals
/// 0.02 sigma, remaining diagonal 10 sigma.
UpperTriangular counterexample_matrix(std::size_t n, double sigma);

/// Exact probability that the first ordinary-Babai coordinate lands inside
/// [l1, u1], conditional on all later coordinates being correct:
///   1/(2(u1-l1+1)) * sum_{i=0}^{u1-l1} [ mass((2(u1-l1)-2i+1) r11)
///                                      + mass((2i+1) r11) ].
double first_coordinate_box_probability(double r11, long long l1, long long u1, double sigma);

/// Closed-form and empirical summary of one conditional-error experiment.
struct ConjectureReport {
  double p_th = 0.0;     ///< closed-form Pr(xbar = xhat)
  double mu_eb1 = 0.0;   ///< first bound
  double mu_eb2 = 0.0;   ///< second (tighter) bound
  double p_ex = 0.0;     ///< empirical Pr(xbar = xhat)
  double p_b = 0.0;      ///< empirical Pr(xbar in B)
  double p_e = 0.0;      ///< empirical 1 - p_ex / p_b (NaN when p_b = 0)
  long long runs = 0;
};

std::string conjecture_csv_header(const std::string& param_name);
std::string conjecture_csv_row(double param, const ConjectureReport& rep);

}  // namespace babai
