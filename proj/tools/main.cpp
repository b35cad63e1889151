// Command-line front end: success-probability reports, column permutations,
// Babai/oracle estimation, and the seeded experiment pipelines.
//
// Exit codes: 0 success, 2 usage or parse errors, 3 domain or runtime errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "babai/analytics.hpp"
#include "babai/conjecture.hpp"
#include "babai/estimate.hpp"
#include "babai/experiment.hpp"
#include "babai/io.hpp"
#include "babai/matrix.hpp"
#include "babai/reorder.hpp"
#include "babai/rng.hpp"

namespace fs = std::filesystem;
using namespace babai;

namespace {

struct FlagError : ParseError {
  using ParseError::ParseError;
};

std::pair<long long, long long> parse_box_flag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw FlagError("--box expects L:U");
  try {
    std::size_t used = 0;
    const long long lo = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw FlagError("--box expects integer bounds");
    const std::string hi_text = text.substr(colon + 1);
    const long long hi = std::stoll(hi_text, &used);
    if (used != hi_text.size()) throw FlagError("--box expects integer bounds");
    return {lo, hi};
  } catch (const FlagError&) {
    throw;
  } catch (const std::exception&) {
    throw FlagError("--box expects integer bounds as L:U");
  }
}

IntegerBox box_from_flags(std::size_t n, const std::string& box_flag, const std::string& box_file) {
  if (!box_file.empty()) {
    // Two lines: lower bounds, upper bounds.
    std::ifstream in(box_file);
    if (!in) throw ParseError("--box-file: cannot open '" + box_file + "'");
    std::string lo_line, hi_line;
    if (!std::getline(in, lo_line) || !std::getline(in, hi_line)) {
      throw ParseError("--box-file: expected two lines (lower bounds, upper bounds)");
    }
    auto parse_line = [&](const std::string& line) {
      std::istringstream ls(line);
      std::vector<long long> v;
      long long x;
      while (ls >> x) v.push_back(x);
      return v;
    };
    const auto lo = parse_line(lo_line);
    const auto hi = parse_line(hi_line);
    if (lo.size() != n || hi.size() != n) {
      throw DomainError("--box-file: bounds must have " + std::to_string(n) + " entries");
    }
    return IntegerBox(lo, hi);
  }
  const auto [lo, hi] = parse_box_flag(box_flag);
  if (lo > hi) throw DomainError("--box: lower bound exceeds upper bound");
  return IntegerBox::uniform(n, lo, hi);
}

/// Loads R from a matrix file: used directly when already upper triangular
/// with positive diagonal, factorized otherwise.
UpperTriangular load_r(const std::string& path) {
  const DenseMatrix m = read_matrix_file(path);
  if (auto r = try_upper_triangular(m)) return *r;
  return qr_factorize(m).r;
}

void check_sigma_flag(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("--sigma must be strictly positive");
}

int cmd_prob(const std::string& matrix_path, double sigma, const std::string& box_flag,
             const std::string& box_file, const std::string& out_path) {
  check_sigma_flag(sigma);
  const UpperTriangular r = load_r(matrix_path);
  const IntegerBox box = box_from_flags(r.dim(), box_flag, box_file);
  const SuccessReport rep = make_success_report(r, box, sigma);

  std::printf("p_bb     = %s\n", format_csv(rep.p_bb).c_str());
  std::printf("p_ob     = %s\n", format_csv(rep.p_ob).c_str());
  std::printf("mu_bb    = %s\n", format_csv(rep.mu_bb).c_str());
  std::printf("mu_ob    = %s\n", format_csv(rep.mu_ob).c_str());
  std::printf("gamma    = %s\n", format_csv(rep.gamma).c_str());
  std::printf("cond_min = %s\n", rep.cond_min ? "true" : "false");
  std::printf("cond_max = %s\n", rep.cond_max ? "true" : "false");

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("--out: cannot open '" + out_path + "'");
    out << success_report_csv_header() << '\n' << success_report_csv_row(rep) << '\n';
  }
  return 0;
}

int cmd_permute(const std::string& matrix_path, const std::string& strategy, double delta,
                const std::string& out_path, const std::string& perm_path) {
  const UpperTriangular r = load_r(matrix_path);
  if (strategy == "lll") {
    const UnimodularReduction red = lll_reduce(r, delta);
    write_matrix_file(out_path, red.rbar);
    if (!perm_path.empty()) write_int_matrix_file(perm_path, red.z);
    return 0;
  }

  PermutedFactors pf = [&] {
    if (strategy == "lllp") return lll_p(r, delta);
    if (strategy == "sqrd") return sqrd(r);
    if (strategy == "vblast") return vblast(r);
    throw FlagError("--strategy must be one of lllp|sqrd|vblast|lll");
  }();
  write_matrix_file(out_path, pf.rbar);
  if (!perm_path.empty()) write_index_vector_file(perm_path, pf.perm);
  return 0;
}

int cmd_estimate(const std::string& matrix_path, const std::string& y_path,
                 const std::string& box_flag, const std::string& box_file,
                 const std::string& mode, bool verbose) {
  const DenseMatrix m = read_matrix_file(matrix_path);
  std::vector<double> y = read_vector_file(y_path);

  UpperTriangular r = UpperTriangular::identity(1);
  std::vector<double> ytilde;
  if (auto direct = try_upper_triangular(m)) {
    r = *direct;
    ytilde = std::move(y);
    if (ytilde.size() != r.dim()) throw DimensionError("--y length does not match the matrix");
  } else {
    const QRFactors qr = qr_factorize(m);
    if (y.size() != m.rows()) throw DimensionError("--y length does not match the matrix");
    r = qr.r;
    ytilde.assign(m.cols(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) acc += qr.q1(i, j) * y[i];
      ytilde[j] = acc;
    }
  }

  std::vector<long long> point;
  if (mode == "ordinary") {
    point = babai_ordinary(r, ytilde).point;
  } else {
    const IntegerBox box = box_from_flags(r.dim(), box_flag, box_file);
    if (mode == "box") {
      point = babai_box(r, ytilde, box).point;
    } else if (mode == "oracle") {
      point = bils_enumerate(r, ytilde, box);
      if (verbose) {
        const auto babai = babai_box(r, ytilde, box).point;
        std::fprintf(stderr, "oracle objective: %s\n",
                     format_full(residual_sq(r, ytilde, point)).c_str());
        std::fprintf(stderr, "babai objective:  %s\n",
                     format_full(residual_sq(r, ytilde, babai)).c_str());
      }
    } else {
      throw FlagError("--mode must be one of box|ordinary|oracle");
    }
  }
  write_int_vector(std::cout, point);
  return 0;
}

// ---------------------------------------------------------------------------
// experiment subcommand

struct ExperimentJob {
  std::string kind;  // table | census | curves | conjecture
  MatrixEnsemble ensemble = MatrixEnsemble::kIid;
  std::size_t n = 4;
  long long box_lo = 0, box_hi = 1;
  SigmaRule rule = SigmaRule::kMinOver18;
  long long runs = 10;
  long long trials = 10'000;
  SweepKind sweep_kind = SweepKind::kSigma;
  std::vector<double> sweep;
  double sigma = 0.1;
  std::string out_name;
};

std::vector<double> expand_sweep(const std::string& text) {
  // Either a comma list "0.1,0.2" or a range "start:step:end".
  std::vector<double> values;
  const auto first_colon = text.find(':');
  if (first_colon != std::string::npos) {
    const auto second_colon = text.find(':', first_colon + 1);
    if (second_colon == std::string::npos) throw ParseError("sweep range needs start:step:end");
    const double start = std::stod(text.substr(0, first_colon));
    const double step = std::stod(text.substr(first_colon + 1, second_colon - first_colon - 1));
    const double end = std::stod(text.substr(second_colon + 1));
    if (!(step > 0.0)) throw ParseError("sweep step must be positive");
    for (double v = start; v <= end + step * 1e-9; v += step) values.push_back(v);
    return values;
  }
  std::istringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) values.push_back(std::stod(token));
  }
  return values;
}

SigmaRule parse_rule(const std::string& name) {
  if (name == "min18") return SigmaRule::kMinOver18;
  if (name == "max16") return SigmaRule::kMaxOver16;
  if (name == "mix") return SigmaRule::kMix;
  throw ParseError("rule must be one of min18|max16|mix");
}

const char* rule_name(SigmaRule rule) {
  switch (rule) {
    case SigmaRule::kMinOver18:
      return "min18";
    case SigmaRule::kMaxOver16:
      return "max16";
    case SigmaRule::kMix:
      return "mix";
  }
  return "?";
}

std::optional<ExperimentJob> preset_job(const std::string& name) {
  ExperimentJob job;
  job.out_name = name + ".csv";

  // Success-probability tables: 10 runs at n = 4, box [0,1]^4; odd presets
  // use the i.i.d. ensemble, even ones the conditioned ensemble.
  const std::vector<std::pair<MatrixEnsemble, SigmaRule>> table_specs = {
      {MatrixEnsemble::kIid, SigmaRule::kMinOver18},
      {MatrixEnsemble::kIllConditioned, SigmaRule::kMinOver18},
      {MatrixEnsemble::kIid, SigmaRule::kMaxOver16},
      {MatrixEnsemble::kIllConditioned, SigmaRule::kMaxOver16},
      {MatrixEnsemble::kIid, SigmaRule::kMix},
      {MatrixEnsemble::kIllConditioned, SigmaRule::kMix},
  };
  for (std::size_t i = 0; i < table_specs.size(); ++i) {
    if (name == "table" + std::to_string(i + 1)) {
      job.kind = "table";
      job.ensemble = table_specs[i].first;
      job.rule = table_specs[i].second;
      job.runs = 10;
      return job;
    }
  }

  if (name == "table7" || name == "table8") {
    job.kind = "census";
    job.ensemble = (name == "table7") ? MatrixEnsemble::kIid : MatrixEnsemble::kIllConditioned;
    job.runs = 1000;
    return job;
  }

  if (name == "fig1" || name == "fig2") {
    job.kind = "curves";
    job.ensemble = (name == "fig1") ? MatrixEnsemble::kIid : MatrixEnsemble::kIllConditioned;
    job.sweep_kind = SweepKind::kSigma;
    job.sweep = (name == "fig1") ? expand_sweep("0.1:0.1:0.8") : expand_sweep("0.01:0.01:0.08");
    job.n = 20;
    job.box_lo = 0;
    job.box_hi = 15;
    job.runs = 200;
    return job;
  }
  if (name == "fig3" || name == "fig4") {
    job.kind = "curves";
    job.ensemble = (name == "fig3") ? MatrixEnsemble::kIid : MatrixEnsemble::kIllConditioned;
    job.sweep_kind = SweepKind::kDimension;
    job.sweep = expand_sweep("5:5:40");
    job.sigma = (name == "fig3") ? 0.4 : 0.04;
    job.box_lo = 0;
    job.box_hi = 15;
    job.runs = 200;
    return job;
  }

  if (name == "table9" || name == "table11") {
    job.kind = "conjecture";
    job.sweep_kind = SweepKind::kDimension;
    job.sweep = expand_sweep("5:5:40");
    job.sigma = 0.1;
    job.trials = 10'000;
    return job;
  }
  if (name == "table10" || name == "table12") {
    job.kind = "conjecture";
    job.sweep_kind = SweepKind::kSigma;
    job.sweep = expand_sweep("0.1:0.1:0.8");
    job.n = 20;
    job.trials = 10'000;
    return job;
  }

  return std::nullopt;
}

ExperimentJob config_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("--config: cannot open '" + path + "'");
  ExperimentJob job;
  job.kind.clear();
  job.out_name = fs::path(path).stem().string() + ".csv";

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (!key.empty() && key.back() == '=') key.pop_back();
    std::string value;
    ls >> value;
    if (value == "=") ls >> value;
    if (value.empty()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": key '" + key + "' has no value");
    }
    try {
      if (key == "kind") {
        job.kind = value;
      } else if (key == "case") {
        job.ensemble = (std::stoi(value) == 1) ? MatrixEnsemble::kIid : MatrixEnsemble::kIllConditioned;
      } else if (key == "n") {
        job.n = static_cast<std::size_t>(std::stoul(value));
      } else if (key == "box") {
        std::tie(job.box_lo, job.box_hi) = parse_box_flag(value);
      } else if (key == "rule") {
        job.rule = parse_rule(value);
      } else if (key == "runs") {
        job.runs = std::stoll(value);
      } else if (key == "trials") {
        job.trials = std::stoll(value);
      } else if (key == "sweep") {
        job.sweep = expand_sweep(value);
      } else if (key == "sweep_kind") {
        if (value == "sigma") {
          job.sweep_kind = SweepKind::kSigma;
        } else if (value == "n") {
          job.sweep_kind = SweepKind::kDimension;
        } else {
          throw ParseError("sweep_kind must be sigma or n");
        }
      } else if (key == "sigma") {
        job.sigma = std::stod(value);
      } else if (key == "out") {
        job.out_name = value;
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad value '" + value + "'");
    }
  }
  if (job.kind.empty()) throw ParseError(path + ": missing 'kind'");
  return job;
}

std::size_t run_job(const ExperimentJob& job, std::uint64_t seed, const fs::path& out_path) {
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open '" + out_path.string() + "' for writing");

  if (job.kind == "table") {
    const auto box = IntegerBox::uniform(job.n, job.box_lo, job.box_hi);
    const auto rows = run_probability_table(job.ensemble, job.n, box, job.rule, job.runs, seed);
    write_probability_table_csv(out, rows);
    return rows.size();
  }
  if (job.kind == "census") {
    const auto box = IntegerBox::uniform(job.n, job.box_lo, job.box_hi);
    std::vector<std::pair<std::string, TrialStats>> rows;
    for (SigmaRule rule : {SigmaRule::kMinOver18, SigmaRule::kMaxOver16, SigmaRule::kMix}) {
      for (auto& st : run_change_census(job.ensemble, job.n, box, rule, job.runs, seed)) {
        rows.emplace_back(rule_name(rule), std::move(st));
      }
    }
    write_census_csv(out, rows);
    return rows.size();
  }
  if (job.kind == "curves") {
    CurveSpec spec;
    spec.ensemble = job.ensemble;
    spec.kind = job.sweep_kind;
    spec.sweep = job.sweep;
    spec.n = job.n;
    spec.sigma = job.sigma;
    spec.box_lo = job.box_lo;
    spec.box_hi = job.box_hi;
    spec.runs = job.runs;
    spec.seed = seed;
    const auto rows = run_average_curves(spec);
    write_curves_csv(out, job.sweep_kind, rows);
    return rows.size();
  }
  if (job.kind == "conjecture") {
    const bool by_n = job.sweep_kind == SweepKind::kDimension;
    out << conjecture_csv_header(by_n ? "n" : "sigma") << '\n';
    for (std::size_t p = 0; p < job.sweep.size(); ++p) {
      const std::size_t n = by_n ? static_cast<std::size_t>(job.sweep[p]) : job.n;
      const double sigma = by_n ? job.sigma : job.sweep[p];
      const auto rep = run_conjecture_experiment(n, sigma, job.trials, substream_seed(seed, p));
      out << conjecture_csv_row(job.sweep[p], rep) << '\n';
    }
    return job.sweep.size();
  }
  throw ParseError("kind must be one of table|census|curves|conjecture");
}

int cmd_experiment(const std::vector<std::string>& presets, const std::string& config_path,
                   std::uint64_t seed, const std::string& outdir, long long runs_override,
                   long long trials_override) {
  std::vector<ExperimentJob> jobs;
  for (const auto& name : presets) {
    auto job = preset_job(name);
    if (!job) throw FlagError("--preset: unknown preset '" + name + "'");
    jobs.push_back(std::move(*job));
  }
  if (!config_path.empty()) jobs.push_back(config_job(config_path));
  if (jobs.empty()) throw FlagError("experiment needs --preset or --config");

  fs::create_directories(outdir);
  std::vector<fs::path> written;
  try {
    for (auto& job : jobs) {
      if (runs_override > 0) job.runs = runs_override;
      if (trials_override > 0) job.trials = trials_override;
      const fs::path out_path = fs::path(outdir) / job.out_name;
      written.push_back(out_path);
      const std::size_t rows = run_job(job, seed, out_path);
      std::printf("wrote %s (%zu rows)\n", out_path.string().c_str(), rows);
    }
  } catch (...) {
    // No partial result sets: drop anything this invocation created.
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Babai estimators for box-constrained integer linear models"};
  app.require_subcommand(1);

  std::string matrix_path, y_path, box_flag = "0:1", box_file, out_path, perm_path;
  std::string strategy, mode = "box", config_path;
  std::vector<std::string> presets;
  double sigma = 0.1, delta = 1.0;
  std::uint64_t seed = 1;
  std::string outdir = ".";
  long long runs_override = 0, trials_override = 0;
  bool verbose = false;

  auto* prob = app.add_subcommand("prob", "Closed-form success probabilities and bounds");
  prob->add_option("--matrix", matrix_path, "matrix file (R, or A to factorize)")->required();
  prob->add_option("--sigma", sigma, "noise standard deviation")->required();
  prob->add_option("--box", box_flag, "uniform box L:U (default 0:1)");
  prob->add_option("--box-file", box_file, "per-dimension bounds file (two lines)");
  prob->add_option("--out", out_path, "also write one CSV row here");

  auto* permute = app.add_subcommand("permute", "Apply a column-reordering strategy");
  permute->add_option("--matrix", matrix_path)->required();
  permute->add_option("--strategy", strategy, "lllp|sqrd|vblast|lll")->required();
  permute->add_option("--delta", delta, "Lovasz parameter in (0.25, 1], default 1");
  permute->add_option("--out", out_path, "output file for rbar")->required();
  permute->add_option("--perm", perm_path, "output file for the permutation (Z for lll)");

  auto* estimate = app.add_subcommand("estimate", "Babai or oracle estimation");
  estimate->add_option("--matrix", matrix_path)->required();
  estimate->add_option("--y", y_path, "observation vector file")->required();
  estimate->add_option("--box", box_flag, "uniform box L:U");
  estimate->add_option("--box-file", box_file, "per-dimension bounds file");
  estimate->add_option("--mode", mode, "box|ordinary|oracle (default box)");
  estimate->add_flag("--verbose", verbose, "report objective values to stderr");

  auto* experiment = app.add_subcommand("experiment", "Seeded experiment pipelines, CSV output");
  experiment->add_option("--preset", presets,
                         "table1..table12 or fig1..fig4 (repeatable)");
  experiment->add_option("--config", config_path, "key-value experiment description");
  experiment->add_option("--seed", seed, "master seed (default 1)");
  experiment->add_option("--outdir", outdir, "output directory (default .)");
  experiment->add_option("--runs", runs_override, "override the preset run count");
  experiment->add_option("--trials", trials_override, "override the preset trial count");

  try {
    app.parse(argc, argv);
    if (prob->parsed()) return cmd_prob(matrix_path, sigma, box_flag, box_file, out_path);
    if (permute->parsed()) return cmd_permute(matrix_path, strategy, delta, out_path, perm_path);
    if (estimate->parsed())
      return cmd_estimate(matrix_path, y_path, box_flag, box_file, mode, verbose);
    if (experiment->parsed())
      return cmd_experiment(presets, config_path, seed, outdir, runs_override, trials_override);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
