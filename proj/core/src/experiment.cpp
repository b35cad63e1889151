#include "babai/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "babai/io.hpp"
#include "babai/rng.hpp"

namespace babai {

namespace {

constexpr double kUnchangedBand = 1e-12;

DenseMatrix gaussian_matrix(std::size_t n, StreamRng& rng, double stddev) {
  std::vector<double> e(n * n);
  for (double& v : e) v = rng.next_gaussian(stddev);
  return DenseMatrix(n, n, std::move(e));
}

struct MeanAccumulator {
  double sum = 0.0, sum_sq = 0.0;
  long long count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double std_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - static_cast<double>(count) * m * m) /
                                         static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
  }
};

void classify(ChangeCounts& counts, double before, double after) {
  const double delta = after - before;
  if (delta > kUnchangedBand) {
    ++counts.increase;
  } else if (delta < -kUnchangedBand) {
    ++counts.decrease;
  } else {
    ++counts.unchanged;
  }
}

}  // namespace

BoxModel::BoxModel(DenseMatrix a, double sigma, IntegerBox box, std::uint64_t seed)
    : a_(std::move(a)), r_(qr_factorize(a_).r), sigma_(sigma), box_(std::move(box)), seed_(seed) {
  if (!(sigma_ > 0.0)) throw DomainError("model sigma must be strictly positive");
  if (box_.dim() != a_.cols()) throw DimensionError("box dimension does not match the model");
}

DenseMatrix gen_iid_matrix(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("dimension must be at least 1");
  StreamRng rng(seed, 0);
  return gaussian_matrix(n, rng, std::sqrt(0.5));
}

DenseMatrix gen_illcond_matrix(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw DimensionError("conditioned ensemble needs dimension at least 2");
  StreamRng rng(seed, 0);
  const DenseMatrix u = qr_factorize(gaussian_matrix(n, rng, 1.0)).q1;
  const DenseMatrix v = qr_factorize(gaussian_matrix(n, rng, 1.0)).q1;

  // A = U D V' with d_ii = 10^{3(n/2 - i)/(n - 1)}, i = 1..n.
  DenseMatrix a(n, n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double dk = std::pow(10.0, 3.0 * (nd / 2.0 - static_cast<double>(k + 1)) / (nd - 1.0));
        acc += u(i, k) * dk * v(j, k);
      }
      a(i, j) = acc;
    }
  return a;
}

DenseMatrix gen_ensemble_matrix(MatrixEnsemble ensemble, std::size_t n, std::uint64_t seed) {
  return ensemble == MatrixEnsemble::kIid ? gen_iid_matrix(n, seed) : gen_illcond_matrix(n, seed);
}

double sigma_rule(const UpperTriangular& r, SigmaRule rule) {
  switch (rule) {
    case SigmaRule::kMinOver18:
      return r.min_diagonal() / 1.8;
    case SigmaRule::kMaxOver16:
      return r.max_diagonal() / 1.6;
    case SigmaRule::kMix:
      return (0.3 * r.max_diagonal() + 0.7 * r.min_diagonal()) / 1.68;
  }
  throw ParameterError("unknown sigma rule");
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kQr:
      return "qr";
    case Strategy::kLllP:
      return "lllp";
    case Strategy::kSqrd:
      return "sqrd";
    case Strategy::kVblast:
      return "vblast";
  }
  return "?";
}

UpperTriangular apply_strategy(const UpperTriangular& r, Strategy s, double delta) {
  switch (s) {
    case Strategy::kQr:
      return r;
    case Strategy::kLllP:
      return lll_p(r, delta).rbar;
    case Strategy::kSqrd:
      return sqrd(r).rbar;
    case Strategy::kVblast:
      return vblast(r).rbar;
  }
  throw ParameterError("unknown strategy");
}

std::vector<ProbabilityRow> run_probability_table(MatrixEnsemble ensemble, std::size_t n,
                                                  const IntegerBox& box, SigmaRule rule,
                                                  long long runs, std::uint64_t seed) {
  if (runs < 1) throw ParameterError("runs must be at least 1");
  const long long d = box.edge();
  std::vector<ProbabilityRow> rows;
  rows.reserve(static_cast<std::size_t>(runs));
  for (long long run = 0; run < runs; ++run) {
    const DenseMatrix a = gen_ensemble_matrix(ensemble, n, substream_seed(seed, static_cast<std::uint64_t>(run)));
    const UpperTriangular r = qr_factorize(a).r;
    const double sigma = sigma_rule(r, rule);

    ProbabilityRow row;
    row.sigma = sigma;
    row.mu_bb = permutation_invariant_bound_box(r, d, sigma);
    row.mu_ob = permutation_invariant_bound_ordinary(r, sigma);
    for (Strategy s : kAllStrategies) {
      const UpperTriangular rbar = apply_strategy(r, s);
      row.p_bb[static_cast<std::size_t>(s)] = babai_box_success_prob(rbar, box, sigma);
      row.p_ob[static_cast<std::size_t>(s)] = babai_ordinary_success_prob(rbar, sigma);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TrialStats> run_change_census(MatrixEnsemble ensemble, std::size_t n,
                                          const IntegerBox& box, SigmaRule rule, long long runs,
                                          std::uint64_t seed) {
  const auto rows = run_probability_table(ensemble, n, box, rule, runs, seed);

  std::vector<TrialStats> stats;
  for (Strategy s : {Strategy::kLllP, Strategy::kSqrd, Strategy::kVblast}) {
    const auto idx = static_cast<std::size_t>(s);
    TrialStats st;
    st.strategy = strategy_name(s);
    st.runs = runs;
    MeanAccumulator p_bb, p_ob, mu_bb, mu_ob;
    for (const auto& row : rows) {
      classify(st.bb, row.p_bb[0], row.p_bb[idx]);
      classify(st.ob, row.p_ob[0], row.p_ob[idx]);
      p_bb.add(row.p_bb[idx]);
      p_ob.add(row.p_ob[idx]);
      mu_bb.add(row.mu_bb);
      mu_ob.add(row.mu_ob);
    }
    st.mean_p_bb = p_bb.mean();
    st.mean_p_ob = p_ob.mean();
    st.mean_mu_bb = mu_bb.mean();
    st.mean_mu_ob = mu_ob.mean();
    st.se_p_bb = p_bb.std_error();
    st.se_p_ob = p_ob.std_error();
    st.se_mu_bb = mu_bb.std_error();
    st.se_mu_ob = mu_ob.std_error();
    stats.push_back(std::move(st));
  }
  return stats;
}

std::vector<CurveRow> run_average_curves(const CurveSpec& spec) {
  if (spec.sweep.empty()) throw ParameterError("sweep must be nonempty");
  if (spec.runs < 1) throw ParameterError("runs must be at least 1");

  std::vector<CurveRow> rows(spec.sweep.size());

  if (spec.kind == SweepKind::kSigma) {
    // One instance set shared across all sigma values: each strategy's
    // diagonal is computed once per run, then evaluated per sweep point.
    const IntegerBox box = IntegerBox::uniform(spec.n, spec.box_lo, spec.box_hi);
    std::vector<std::array<MeanAccumulator, 4>> acc(spec.sweep.size());
    for (long long run = 0; run < spec.runs; ++run) {
      const DenseMatrix a = gen_ensemble_matrix(spec.ensemble, spec.n,
                                                substream_seed(spec.seed, static_cast<std::uint64_t>(run)));
      const UpperTriangular r = qr_factorize(a).r;
      std::array<UpperTriangular, 4> rbars{r, lll_p(r).rbar, sqrd(r).rbar, vblast(r).rbar};
      for (std::size_t p = 0; p < spec.sweep.size(); ++p) {
        const double sigma = spec.sweep[p];
        for (std::size_t s = 0; s < 4; ++s) {
          acc[p][s].add(babai_box_success_prob(rbars[s], box, sigma));
        }
      }
    }
    for (std::size_t p = 0; p < spec.sweep.size(); ++p) {
      rows[p].sweep = spec.sweep[p];
      for (std::size_t s = 0; s < 4; ++s) {
        rows[p].mean_p_bb[s] = acc[p][s].mean();
        rows[p].se_p_bb[s] = acc[p][s].std_error();
      }
    }
    return rows;
  }

  for (std::size_t p = 0; p < spec.sweep.size(); ++p) {
    const auto n = static_cast<std::size_t>(spec.sweep[p]);
    if (n < 2 || static_cast<double>(n) != spec.sweep[p]) {
      throw ParameterError("dimension sweep values must be integers >= 2");
    }
    const IntegerBox box = IntegerBox::uniform(n, spec.box_lo, spec.box_hi);
    const std::uint64_t point_seed = substream_seed(spec.seed, p);
    std::array<MeanAccumulator, 4> acc;
    for (long long run = 0; run < spec.runs; ++run) {
      const DenseMatrix a =
          gen_ensemble_matrix(spec.ensemble, n, substream_seed(point_seed, static_cast<std::uint64_t>(run)));
      const UpperTriangular r = qr_factorize(a).r;
      for (Strategy s : kAllStrategies) {
        acc[static_cast<std::size_t>(s)].add(
            babai_box_success_prob(apply_strategy(r, s), box, spec.sigma));
      }
    }
    rows[p].sweep = spec.sweep[p];
    for (std::size_t s = 0; s < 4; ++s) {
      rows[p].mean_p_bb[s] = acc[s].mean();
      rows[p].se_p_bb[s] = acc[s].std_error();
    }
  }
  return rows;
}

namespace {

// Runs trials [begin, end) and returns {recoveries, in-box count}. Trial t's
// randomness depends only on (seed, t).
template <typename PerTrial>
std::pair<long long, long long> run_trials_parallel(long long trials, PerTrial per_trial) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const long long chunk_count = (trials < 10'000) ? 1 : static_cast<long long>(std::min(hw, 16u));
  std::vector<std::future<std::pair<long long, long long>>> futures;
  for (long long c = 0; c < chunk_count; ++c) {
    const long long begin = trials * c / chunk_count;
    const long long end = trials * (c + 1) / chunk_count;
    futures.push_back(std::async(std::launch::async, [=]() {
      std::pair<long long, long long> counts{0, 0};
      for (long long t = begin; t < end; ++t) {
        const auto [a, b] = per_trial(t);
        counts.first += a;
        counts.second += b;
      }
      return counts;
    }));
  }
  std::pair<long long, long long> total{0, 0};
  for (auto& f : futures) {
    const auto [a, b] = f.get();
    total.first += a;
    total.second += b;
  }
  return total;
}

}  // namespace

MonteCarloResult run_monte_carlo_success(const UpperTriangular& r, const IntegerBox& box,
                                         double sigma, long long trials, std::uint64_t seed,
                                         EstimatorKind kind) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (!(sigma > 0.0)) throw DomainError("sigma must be strictly positive");
  const std::size_t n = r.dim();
  if (box.dim() != n) throw DimensionError("box dimension does not match matrix dimension");

  const auto counts = run_trials_parallel(trials, [&](long long t) -> std::pair<long long, long long> {
    StreamRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<long long> xhat(n);
    for (std::size_t i = 0; i < n; ++i) xhat[i] = rng.next_int(box.lower(i), box.upper(i));
    std::vector<double> ytilde(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = rng.next_gaussian(sigma);
      for (std::size_t j = i; j < n; ++j) acc += r(i, j) * static_cast<double>(xhat[j]);
      ytilde[i] = acc;
    }
    const BabaiResult est = (kind == EstimatorKind::kBox) ? babai_box(r, ytilde, box)
                                                          : babai_ordinary(r, ytilde);
    return {est.point == xhat ? 1 : 0, 0};
  });

  const double rate = static_cast<double>(counts.first) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(0.0, rate * (1.0 - rate) / static_cast<double>(trials)));
  return MonteCarloResult{rate, se, trials};
}

MonteCarloResult run_monte_carlo_success(const BoxModel& model, long long trials,
                                         EstimatorKind kind) {
  return run_monte_carlo_success(model.r(), model.box(), model.sigma(), trials, model.seed(),
                                 kind);
}

ConjectureReport run_conjecture_experiment(std::size_t n, double sigma, long long trials,
                                           std::uint64_t seed) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  const UpperTriangular r = counterexample_matrix(n, sigma);
  const IntegerBox box = IntegerBox::uniform(n, 0, 15);

  const auto counts = run_trials_parallel(trials, [&](long long t) -> std::pair<long long, long long> {
    StreamRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<long long> xhat(n);
    for (std::size_t i = 0; i < n; ++i) xhat[i] = rng.next_int(0, 15);
    std::vector<double> ytilde(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = rng.next_gaussian(sigma);
      for (std::size_t j = i; j < n; ++j) acc += r(i, j) * static_cast<double>(xhat[j]);
      ytilde[i] = acc;
    }
    // The construction is already LLL reduced with Z = I, so xbar is the
    // plain ordinary Babai point.
    const BabaiResult est = babai_ordinary(r, ytilde);
    return {est.point == xhat ? 1 : 0, box.contains(est.point) ? 1 : 0};
  });

  ConjectureReport rep;
  rep.runs = trials;
  rep.p_ex = static_cast<double>(counts.first) / static_cast<double>(trials);
  rep.p_b = static_cast<double>(counts.second) / static_cast<double>(trials);
  rep.p_e = rep.p_b > 0.0 ? 1.0 - rep.p_ex / rep.p_b : std::nan("");
  rep.p_th = babai_ordinary_success_prob(r, sigma);
  const auto vbox = validity_box(IntMatrix::identity(n), box);
  std::tie(rep.mu_eb1, rep.mu_eb2) = conditional_error_bounds(r, vbox, sigma);
  return rep;
}

void write_probability_table_csv(std::ostream& out, const std::vector<ProbabilityRow>& rows) {
  out << "sigma,p_bb,p_bb_lllp,p_bb_sqrd,p_bb_vblast,mu_bb,"
         "p_ob,p_ob_lllp,p_ob_sqrd,p_ob_vblast,mu_ob\n";
  for (const auto& row : rows) {
    out << format_csv(row.sigma);
    for (double v : row.p_bb) out << ',' << format_csv(v);
    out << ',' << format_csv(row.mu_bb);
    for (double v : row.p_ob) out << ',' << format_csv(v);
    out << ',' << format_csv(row.mu_ob);
    out << '\n';
  }
}

void write_census_csv(std::ostream& out,
                      const std::vector<std::pair<std::string, TrialStats>>& rows) {
  out << "rule,strategy,bb_increase,bb_unchanged,bb_decrease,"
         "ob_increase,ob_unchanged,ob_decrease,"
         "mean_p_bb,se_p_bb,mean_p_ob,se_p_ob,mean_mu_bb,se_mu_bb,mean_mu_ob,se_mu_ob\n";
  for (const auto& [rule, st] : rows) {
    out << rule << ',' << st.strategy << ',' << st.bb.increase << ',' << st.bb.unchanged << ','
        << st.bb.decrease << ',' << st.ob.increase << ',' << st.ob.unchanged << ','
        << st.ob.decrease;
    for (double v : {st.mean_p_bb, st.se_p_bb, st.mean_p_ob, st.se_p_ob, st.mean_mu_bb,
                     st.se_mu_bb, st.mean_mu_ob, st.se_mu_ob}) {
      out << ',' << format_csv(v);
    }
    out << '\n';
  }
}

void write_curves_csv(std::ostream& out, SweepKind kind, const std::vector<CurveRow>& rows) {
  out << (kind == SweepKind::kSigma ? "sigma" : "n")
      << ",p_bb_qr,se_qr,p_bb_lllp,se_lllp,p_bb_sqrd,se_sqrd,p_bb_vblast,se_vblast\n";
  for (const auto& row : rows) {
    out << format_csv(row.sweep);
    for (std::size_t s = 0; s < 4; ++s) {
      out << ',' << format_csv(row.mean_p_bb[s]) << ',' << format_csv(row.se_p_bb[s]);
    }
    out << '\n';
  }
}

}  // namespace babai
