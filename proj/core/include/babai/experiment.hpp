#pragma once

// Seeded model ensembles, sigma rules, and the Monte Carlo / closed-form
// pipelines behind the probability tables, change censuses, average curves,
// and conditional-error experiments. Everything emitted is a pure function of
// (parameters, seed).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "babai/analytics.hpp"
#include "babai/conjecture.hpp"
#include "babai/estimate.hpp"
#include "babai/matrix.hpp"
#include "babai/reorder.hpp"

namespace babai {

/// One problem instance of the box-constrained linear model. Validates
/// sigma > 0 and full column rank on construction and caches the R factor.
class BoxModel {
 public:
  BoxModel(DenseMatrix a, double sigma, IntegerBox box, std::uint64_t seed);

  const DenseMatrix& a() const { return a_; }
  const UpperTriangular& r() const { return r_; }
  double sigma() const { return sigma_; }
  const IntegerBox& box() const { return box_; }
  std::uint64_t seed() const { return seed_; }

 private:
  DenseMatrix a_;
  UpperTriangular r_;
  double sigma_;
  IntegerBox box_;
  std::uint64_t seed_;
};

enum class MatrixEnsemble {
  kIid = 1,            ///< n x n entries i.i.d. N(0, 1/2)
  kIllConditioned = 2  ///< U D V' with log-spaced singular values, cond = 1000
};

/// n x n matrix with i.i.d. N(0, 1/2) entries, deterministic in the seed.
DenseMatrix gen_iid_matrix(std::size_t n, std::uint64_t seed);

/// A = U D V' with U, V the orthogonal factors of seeded Gaussian matrices
/// and d_ii = 10^{3(n/2 - i)/(n - 1)} (1-based i); condition number 1000.
DenseMatrix gen_illcond_matrix(std::size_t n, std::uint64_t seed);

DenseMatrix gen_ensemble_matrix(MatrixEnsemble ensemble, std::size_t n, std::uint64_t seed);

enum class SigmaRule {
  kMinOver18,  ///< min_i r_ii / 1.8
  kMaxOver16,  ///< max_i r_ii / 1.6
  kMix         ///< (0.3 max_i r_ii + 0.7 min_i r_ii) / 1.68
};

double sigma_rule(const UpperTriangular& r, SigmaRule rule);

/// The four orderings compared throughout: plain QR and the three strategies.
enum class Strategy { kQr = 0, kLllP = 1, kSqrd = 2, kVblast = 3 };
inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::kQr, Strategy::kLllP, Strategy::kSqrd, Strategy::kVblast};
const char* strategy_name(Strategy s);

UpperTriangular apply_strategy(const UpperTriangular& r, Strategy s, double delta = 1.0);

/// One row of a success-probability table: closed-form values for the four
/// orderings of one random instance, sigma fixed by the rule on the
/// unpermuted R.
struct ProbabilityRow {
  double sigma = 0.0;
  std::array<double, 4> p_bb{};  ///< indexed by Strategy
  double mu_bb = 0.0;
  std::array<double, 4> p_ob{};
  double mu_ob = 0.0;
};

std::vector<ProbabilityRow> run_probability_table(MatrixEnsemble ensemble, std::size_t n,
                                                  const IntegerBox& box, SigmaRule rule,
                                                  long long runs, std::uint64_t seed);

struct ChangeCounts {
  long long increase = 0;
  long long unchanged = 0;
  long long decrease = 0;
};

/// Per-strategy aggregate over a census: change counts of the box and
/// ordinary probabilities versus plain QR, plus means and standard errors.
struct TrialStats {
  std::string strategy;
  ChangeCounts bb;
  ChangeCounts ob;
  double mean_p_bb = 0.0, mean_p_ob = 0.0, mean_mu_bb = 0.0, mean_mu_ob = 0.0;
  double se_p_bb = 0.0, se_p_ob = 0.0, se_mu_bb = 0.0, se_mu_ob = 0.0;
  long long runs = 0;
};

/// Counts runs in which each strategy strictly increased, left unchanged
/// (|delta| <= 1e-12), or strictly decreased the closed-form probabilities.
std::vector<TrialStats> run_change_census(MatrixEnsemble ensemble, std::size_t n,
                                          const IntegerBox& box, SigmaRule rule, long long runs,
                                          std::uint64_t seed);

enum class SweepKind { kSigma, kDimension };

struct CurveSpec {
  MatrixEnsemble ensemble;
  SweepKind kind;
  std::vector<double> sweep;   ///< sigma values, or dimensions
  std::size_t n = 0;           ///< fixed dimension for sigma sweeps
  double sigma = 0.0;          ///< fixed sigma for dimension sweeps
  long long box_lo = 0, box_hi = 0;
  long long runs = 0;
  std::uint64_t seed = 0;
};

struct CurveRow {
  double sweep = 0.0;
  std::array<double, 4> mean_p_bb{};
  std::array<double, 4> se_p_bb{};
};

/// Mean closed-form box success probability of the four orderings at each
/// sweep point. For sigma sweeps the same seeded instances are reused across
/// points, so per-instance monotonicity carries over to the averages.
std::vector<CurveRow> run_average_curves(const CurveSpec& spec);

enum class EstimatorKind { kBox, kOrdinary };

struct MonteCarloResult {
  double rate = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

/// Seeded Monte Carlo estimate of the recovery rate: per trial draws xhat
/// uniform over the box and noise N(0, sigma^2 I), forms ytilde, runs the
/// estimator, and counts exact recovery. Trial t depends only on (seed, t),
/// so execution is parallel and order-independent.
MonteCarloResult run_monte_carlo_success(const UpperTriangular& r, const IntegerBox& box,
                                         double sigma, long long trials, std::uint64_t seed,
                                         EstimatorKind kind = EstimatorKind::kBox);

MonteCarloResult run_monte_carlo_success(const BoxModel& model, long long trials,
                                         EstimatorKind kind = EstimatorKind::kBox);

/// Full conditional-error experiment on counterexample_matrix(n, sigma) with
/// box [0, 15]^n: closed-form p_th and bounds plus empirical rates over
/// `trials` seeded draws.
ConjectureReport run_conjecture_experiment(std::size_t n, double sigma, long long trials,
                                           std::uint64_t seed);

// CSV writers; fixed headers, 6 significant digits.
void write_probability_table_csv(std::ostream& out, const std::vector<ProbabilityRow>& rows);
void write_census_csv(std::ostream& out, const std::vector<std::pair<std::string, TrialStats>>& rows);
void write_curves_csv(std::ostream& out, SweepKind kind, const std::vector<CurveRow>& rows);

}  // namespace babai
