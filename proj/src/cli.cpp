#include "fsp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "fsp/csv.hpp"
#include "fsp/efa.hpp"
#include "fsp/errors.hpp"
#include "fsp/predictors.hpp"
#include "fsp/svg.hpp"

namespace fsp::cli {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create output directory '" + dir + "': " + ec.message());
  }
}

ModelSet set_from_int(int s) {
  if (s < 1 || s > 4) {
    throw Error("model set must be one of 1, 2, 3, 4; got " + std::to_string(s));
  }
  return static_cast<ModelSet>(s);
}

SampleCell parse_cell(const std::string& token) {
  // Tokens look like q3-obl / q9-orth.
  if (token.size() >= 3 && token[0] == 'q') {
    const auto dash = token.find('-');
    if (dash != std::string::npos) {
      const std::string num = token.substr(1, dash - 1);
      const std::string kind = token.substr(dash + 1);
      if (!num.empty() &&
          num.find_first_not_of("0123456789") == std::string::npos &&
          (kind == "orth" || kind == "obl")) {
        return {std::stoi(num), kind == "obl"};
      }
    }
  }
  throw Error("cannot parse cell '" + token +
              "' (expected e.g. q1-orth, q3-obl, q9-orth)");
}

MsqDenominator parse_denominator(const std::string& s) {
  if (s == "offdiag") return MsqDenominator::OffDiag;
  if (s == "all") return MsqDenominator::All;
  throw Error("--msq-denominator must be 'offdiag' or 'all', got '" + s + "'");
}

// ---------------------------------------------------------------- verify --

struct VerifyOpts {
  std::string out = ".";
  double tol_override = 0.0;
  bool has_override = false;
};

int cmd_verify(const VerifyOpts& o) {
  ensure_dir(o.out);
  auto reports = run_all_checks();

  // Bracket the predicted crossover loading with a fine scan: the largest
  // grid loading with a positive gap and its successor.
  const auto fine = arith_grid(0.25, 0.95, 0.001);
  const auto scan = threshold_scan(ModelSet::Set1, 1, 3, fine);
  std::string detail = "h_bracket=none";
  if (scan.threshold) {
    detail = "h_bracket=[" + format_double(*scan.threshold) + ";" +
             format_double(*scan.threshold + scan.grid_step) + "]";
  }

  if (o.has_override) {
    for (auto& r : reports) r.passed = r.max_violation < o.tol_override;
  }
  bool all_passed = true;
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << to_string(r.id) << ": "
              << r.conditions_checked << " conditions, max violation "
              << format_double(r.max_violation) << " (tolerance "
              << format_double(o.has_override ? o.tol_override : r.tolerance)
              << ")\n";
  }
  std::cout << "crossover scan: " << detail << "\n";

  const std::string path = join_path(o.out, "verify_report.csv");
  write_verify_csv(path, reports, detail);
  std::cout << "wrote " << path << "\n";
  return all_passed ? 0 : 1;
}

// ------------------------------------------------------ population sweep --

struct PopulationOpts {
  std::string out = ".";
  bool svg = false;
  std::vector<int> sets = {1, 2, 3, 4};
  int q_min = 1, q_max = 10;
  int pf_min = 2, pf_max = 10;
  double l_min = 0.0, l_max = 0.0, l_step = 0.05;
  bool l_given = false;
  std::string aggregate = "block";
  std::string denominator = "offdiag";
};

PopulationGrid make_population_grid(const PopulationOpts& o) {
  PopulationGrid grid;
  grid.sets.clear();
  for (const int s : o.sets) grid.sets.push_back(set_from_int(s));
  grid.q_min = o.q_min;
  grid.q_max = o.q_max;
  grid.per_factor_min = o.pf_min;
  grid.per_factor_max = o.pf_max;
  if (o.l_given) grid.l_override = arith_grid(o.l_min, o.l_max, o.l_step);
  if (o.aggregate == "block") {
    grid.aggregate = PopAggregate::PerBlock;
  } else if (o.aggregate == "full") {
    grid.aggregate = PopAggregate::Full;
  } else {
    throw Error("--pop-aggregate must be 'block' or 'full', got '" +
                o.aggregate + "'");
  }
  grid.denominator = parse_denominator(o.denominator);
  return grid;
}

int cmd_population_sweep(const PopulationOpts& o) {
  ensure_dir(o.out);
  const PopulationGrid grid = make_population_grid(o);
  const auto records = run_population_sweep(grid);
  const std::string path = join_path(o.out, "population_sweep.csv");
  write_population_csv(path, records);
  std::cout << "wrote " << path << " (" << records.size() << " rows)\n";

  if (o.svg) {
    for (const ModelSet set : grid.sets) {
      std::vector<SweepRecord> of_set;
      for (const auto& r : records) {
        if (r.label == to_string(set)) of_set.push_back(r);
      }
      const auto flat = collapse(of_set, Coordinate::Q);
      const auto l_values = grid.l_grid_for(set);
      std::vector<int> pf_values;
      for (int m = grid.per_factor_min; m <= grid.per_factor_max; ++m) {
        pf_values.push_back(m);
      }
      Matrixd gaps(Index(pf_values.size()), Index(l_values.size()));
      for (const auto& r : flat) {
        const auto row = std::find(pf_values.begin(), pf_values.end(),
                                   r.per_factor) - pf_values.begin();
        const auto col =
            std::min_element(l_values.begin(), l_values.end(),
                             [&r](double a, double b) {
                               return std::abs(a - r.l) < std::abs(b - r.l);
                             }) -
            l_values.begin();
        gaps(Index(row), Index(col)) = r.gap_mean;
      }
      const std::string svg_path =
          join_path(o.out, std::string("population_gap_") + to_string(set) + ".svg");
      write_gap_heatmap_svg(svg_path,
                            std::string("Reproduction gap (delta_r - delta_b), ") +
                                to_string(set),
                            l_values, pf_values, gaps);
      std::cout << "wrote " << svg_path << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------- sample sweep --

struct SampleOpts {
  std::string out = ".";
  std::uint64_t seed = 1234567;
  int workers = 0;  // 0 = hardware concurrency
  int reps = 250;
  std::vector<std::string> cells;
  int pf_min = 3, pf_max = 10;
  std::vector<double> l_levels;
  std::vector<std::string> modes;
  std::vector<long long> n_levels;
  std::string target = "sample";
  std::string denominator = "offdiag";
  bool quiet = false;
};

SampleGrid make_sample_grid(const SampleOpts& o) {
  SampleGrid grid;
  if (!o.cells.empty()) {
    grid.cells.clear();
    for (const auto& t : o.cells) grid.cells.push_back(parse_cell(t));
  }
  grid.per_factor_min = o.pf_min;
  grid.per_factor_max = o.pf_max;
  if (!o.l_levels.empty()) grid.l_levels = o.l_levels;
  if (!o.modes.empty()) {
    grid.loading_modes.clear();
    for (const auto& m : o.modes) {
      if (m == "constant") {
        grid.loading_modes.push_back(LoadingMode::Constant);
      } else if (m == "variable") {
        grid.loading_modes.push_back(LoadingMode::Variable);
      } else {
        throw Error("--modes entries must be 'constant' or 'variable', got '" +
                    m + "'");
      }
    }
  }
  if (!o.n_levels.empty()) {
    grid.n_levels.clear();
    for (const long long n : o.n_levels) grid.n_levels.push_back(Index(n));
  }
  grid.replications = o.reps;
  grid.master_seed = o.seed;
  grid.workers = o.workers > 0
                     ? o.workers
                     : std::max(1u, std::thread::hardware_concurrency());
  if (o.target == "population") {
    grid.target_population = true;
  } else if (o.target != "sample") {
    throw Error("--target must be 'sample' or 'population', got '" + o.target +
                "'");
  }
  grid.denominator = parse_denominator(o.denominator);
  return grid;
}

int cmd_sample_sweep(const SampleOpts& o) {
  ensure_dir(o.out);
  const SampleGrid grid = make_sample_grid(o);
  ProgressFn progress;
  if (!o.quiet) {
    progress = [](const SweepRecord& r, Index done, Index total) {
      std::cerr << "[" << done << "/" << total << "] " << r.label << " m="
                << r.per_factor << " l=" << format_double(r.l) << " "
                << to_string(r.loading_mode) << " n=" << r.n
                << " gap=" << format_double(r.gap_mean) << "\n";
    };
  }
  const auto records = run_sample_sweep(grid, progress);
  const std::string path = join_path(o.out, "sample_sweep.csv");
  write_sample_csv(path, records);
  std::cout << "wrote " << path << " (" << records.size() << " rows, "
            << grid.replications << " replications each)\n";
  return 0;
}

// --------------------------------------------------------------- analyze --

struct AnalyzeOpts {
  std::string file;
  int q = 0;
  std::string rotation = "varimax";
  std::string header = "auto";
  std::string out = ".";
  std::string denominator = "offdiag";
};

int cmd_analyze(const AnalyzeOpts& o) {
  ensure_dir(o.out);
  HeaderMode hm = HeaderMode::Auto;
  if (o.header == "yes") {
    hm = HeaderMode::Yes;
  } else if (o.header == "no") {
    hm = HeaderMode::No;
  } else if (o.header != "auto") {
    throw Error("--header must be auto, yes, or no; got '" + o.header + "'");
  }
  const MsqDenominator den = parse_denominator(o.denominator);

  const Matrixd data = read_numeric_csv(o.file, hm);
  const Index n = data.rows();
  const Index p = data.cols();
  if (o.q < 1 || Index(o.q) >= p) {
    throw Error("analyze: --q must satisfy 1 <= q < p (p = " +
                std::to_string(p) + ")");
  }
  if (n <= p) {
    throw Error("analyze: need more observations than variables (n = " +
                std::to_string(n) + ", p = " + std::to_string(p) + ")");
  }

  const SymMatrixd rhat = correlation_matrix(data);
  const EfaSolution efa = uls_extract(rhat, o.q);

  Matrixd pattern = efa.loadings;
  std::string rotation_used = "none";
  if (o.rotation == "varimax") {
    if (o.q > 1) pattern = varimax(efa.loadings).loadings;
    rotation_used = "varimax";
  } else if (o.rotation == "promax") {
    if (o.q < 2) throw Error("analyze: promax requires --q >= 2");
    pattern = promax(efa.loadings).pattern;
    rotation_used = "promax";
  } else if (o.rotation != "none") {
    throw Error("--rotation must be varimax, promax, or none; got '" +
                o.rotation + "'");
  }

  const SymMatrixd conv = eq_closed_form_reproduced(efa.loadings, rhat);
  const auto sel = select_single_variables(pattern);
  const auto single = reproduce_from_weights(
      PredictorWeights<double>{PredictorKind::SingleVariable, sel.selector},
      rhat);
  const double dr = offdiag_msq(rhat, conv, den);
  const double db = offdiag_msq(rhat, single.sigma_rep, den);
  const double gap = dr - db;

  // Salient structure for the guideline note: each variable belongs to the
  // factor carrying its largest absolute pattern loading.
  double salient_sum = 0.0;
  std::vector<int> salient_count(static_cast<std::size_t>(o.q), 0);
  for (Index i = 0; i < p; ++i) {
    Index f_best = 0;
    for (Index f = 1; f < Index(o.q); ++f) {
      if (std::abs(pattern(i, f)) > std::abs(pattern(i, f_best))) f_best = f;
    }
    salient_sum += std::abs(pattern(i, f_best));
    ++salient_count[static_cast<std::size_t>(f_best)];
  }
  const double mean_salient = salient_sum / double(p);
  const int max_salients =
      *std::max_element(salient_count.begin(), salient_count.end());

  const std::string recommendation =
      gap > 0 ? "single-variable" : "conventional";
  std::string guideline;
  if (mean_salient <= 0.40 && max_salients <= 6) {
    guideline =
        "guideline: salient loadings <= .40 with at most 6 salients per "
        "factor favor single-variable scores";
  } else if (mean_salient > 0.60 && max_salients > 6) {
    guideline =
        "guideline: salient loadings above .60 with more than 6 salients per "
        "factor favor conventional factor scores";
  } else {
    guideline =
        "guideline: between the clear-cut bands (<=.40 with <=6 salients vs "
        ">.60 with >6); rely on the computed gap";
  }

  std::string chosen;
  for (std::size_t f = 0; f < sel.chosen.size(); ++f) {
    if (f) chosen += ";";
    chosen += std::to_string(sel.chosen[f] + 1);  // 1-based for reporting
  }

  std::cout << "n=" << n << " p=" << p << " q=" << o.q << " rotation="
            << rotation_used << "\n";
  std::cout << "extraction " << (efa.converged ? "converged" : "DID NOT converge")
            << " in " << efa.iterations << " iterations";
  if (efa.heywood_clamped > 0) {
    std::cout << " (" << efa.heywood_clamped
              << " communalities clamped at the ceiling)";
  }
  std::cout << "\n";
  std::cout << "delta_r=" << format_double(dr) << " delta_b=" << format_double(db)
            << " gap=" << format_double(gap) << "\n";
  std::cout << "chosen variables (1-based, per factor): " << chosen << "\n";
  std::cout << "mean salient loading " << format_double(mean_salient)
            << ", salients per factor up to " << max_salients << "\n";
  std::cout << "better reproduction: " << recommendation << " scores\n";
  std::cout << guideline << "\n";

  const std::string path = join_path(o.out, "analyze_report.csv");
  write_csv(path,
            {"n", "p", "q", "rotation", "converged", "iterations",
             "heywood_clamped", "delta_r", "delta_b", "gap", "chosen",
             "recommendation"},
            {{std::to_string(n), std::to_string(p), std::to_string(o.q),
              rotation_used, efa.converged ? "1" : "0",
              std::to_string(efa.iterations),
              std::to_string(efa.heywood_clamped), format_double(dr),
              format_double(db), format_double(gap), chosen, recommendation}});
  std::cout << "wrote " << path << "\n";
  return 0;
}

// ------------------------------------------------------------- threshold --

struct ThresholdOpts {
  std::string out = ".";
  std::vector<int> sets = {1, 2, 3, 4};
  int pf_min = 2, pf_max = 10;
  double grid_min = 0.25, grid_step = 0.05;
  std::string denominator = "offdiag";
};

int cmd_threshold(const ThresholdOpts& o) {
  ensure_dir(o.out);
  if (o.pf_min < 2 || o.pf_max > 10 || o.pf_min > o.pf_max) {
    throw Error("threshold: per_factor range must satisfy 2 <= min <= max <= 10");
  }
  const MsqDenominator den = parse_denominator(o.denominator);
  std::vector<std::pair<ModelSet, ThresholdResult<double>>> rows;
  for (const int s : o.sets) {
    const ModelSet set = set_from_int(s);
    const bool variable = set == ModelSet::Set2 || set == ModelSet::Set4;
    const auto grid = arith_grid(o.grid_min, variable ? 0.85 : 0.95, o.grid_step);
    for (int m = o.pf_min; m <= o.pf_max; ++m) {
      rows.emplace_back(set, threshold_scan(set, 1, m, grid,
                                            PopAggregate::PerBlock, den));
    }
  }
  const std::string path = join_path(o.out, "thresholds.csv");
  write_thresholds_csv(path, rows);
  std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
  return 0;
}

}  // namespace

// ----------------------------------------------------------- csv writers --

void write_population_csv(const std::string& path,
                          const std::vector<SweepRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({r.label, std::to_string(r.q), std::to_string(r.per_factor),
                    format_double(r.l), format_double(r.delta_r_mean),
                    format_double(r.delta_b_mean), format_double(r.gap_mean)});
  }
  write_csv(path, {"set", "q", "per_factor", "l", "delta_r", "delta_b", "gap"},
            rows);
}

void write_sample_csv(const std::string& path,
                      const std::vector<SweepRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({r.label, std::to_string(r.q), r.oblique ? "1" : "0",
                    std::to_string(r.per_factor), format_double(r.l),
                    to_string(r.loading_mode), std::to_string(r.n),
                    std::to_string(r.replications),
                    format_double(r.delta_r_mean), format_double(r.delta_b_mean),
                    format_double(r.gap_mean), format_double(r.gap_sd),
                    std::to_string(r.nonconverged),
                    std::to_string(r.heywood_events)});
  }
  write_csv(path,
            {"cell", "q", "oblique", "per_factor", "l", "loading_mode", "n",
             "reps", "delta_r_mean", "delta_b_mean", "gap_mean", "gap_sd",
             "nonconverged", "heywood_events"},
            rows);
}

void write_thresholds_csv(
    const std::string& path,
    const std::vector<std::pair<ModelSet, ThresholdResult<double>>>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& [set, res] : rows) {
    out.push_back({to_string(set), std::to_string(res.per_factor),
                   res.threshold ? format_double(*res.threshold) : "",
                   res.censored ? "1" : "0"});
  }
  write_csv(path, {"set", "per_factor", "threshold", "censored"}, out);
}

void write_verify_csv(const std::string& path,
                      const std::vector<TheoremReport>& reports,
                      const std::string& crossover_detail) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) {
    rows.push_back({to_string(r.id), std::to_string(r.conditions_checked),
                    format_double(r.max_violation), format_double(r.tolerance),
                    r.passed ? "1" : "0",
                    r.id == TheoremId::CrossoverM3 ? crossover_detail : ""});
  }
  write_csv(path,
            {"check", "conditions", "max_violation", "tolerance", "passed",
             "detail"},
            rows);
}

// ------------------------------------------------------------ entry point --

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Factor score predictors: weight matrices, reproduced-correlation "
      "quality, and population/sample sweeps"};
  app.set_config("--config", "", "Read options from an INI file");
  app.require_subcommand(1);

  VerifyOpts vo;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check the closed-form reproduction results numerically");
  verify_cmd->add_option("--out", vo.out, "Output directory")
      ->capture_default_str();
  verify_cmd
      ->add_option("--tolerance-override", vo.tol_override,
                   "Replace every check's pass tolerance (testing hook)")
      ->group("");

  PopulationOpts po;
  auto* pop_cmd = app.add_subcommand(
      "population-sweep", "Exact reproduction deltas over the model grid");
  pop_cmd->add_option("--out", po.out, "Output directory")->capture_default_str();
  pop_cmd->add_flag("--svg", po.svg, "Also write per-set gap heatmaps");
  pop_cmd->add_option("--sets", po.sets, "Model sets to run (1-4)")
      ->capture_default_str();
  pop_cmd->add_option("--q-min", po.q_min, "Smallest number of factors")
      ->capture_default_str();
  pop_cmd->add_option("--q-max", po.q_max, "Largest number of factors")
      ->capture_default_str();
  pop_cmd->add_option("--pf-min", po.pf_min, "Smallest block size")
      ->capture_default_str();
  pop_cmd->add_option("--pf-max", po.pf_max, "Largest block size")
      ->capture_default_str();
  auto* lmin = pop_cmd->add_option("--l-min", po.l_min,
                                   "Override loading grid: start");
  pop_cmd->add_option("--l-max", po.l_max, "Override loading grid: end")
      ->needs(lmin);
  pop_cmd->add_option("--l-step", po.l_step, "Override loading grid: step")
      ->capture_default_str();
  pop_cmd
      ->add_option("--pop-aggregate", po.aggregate,
                   "Delta aggregation: block (per factor block) or full (p x p)")
      ->capture_default_str();
  pop_cmd
      ->add_option("--msq-denominator", po.denominator,
                   "Mean-square denominator: offdiag (p(p-1)) or all (p^2)")
      ->capture_default_str();

  SampleOpts so;
  auto* samp_cmd = app.add_subcommand(
      "sample-sweep", "Monte Carlo sweep over simulated samples");
  samp_cmd->add_option("--out", so.out, "Output directory")->capture_default_str();
  samp_cmd->add_option("--seed", so.seed, "Master seed")->capture_default_str();
  samp_cmd->add_option("--workers", so.workers,
                       "Worker threads (0 = all hardware threads)");
  samp_cmd->add_option("--reps", so.reps, "Replications per condition")
      ->capture_default_str();
  samp_cmd->add_option("--cells", so.cells,
                       "Cells to run, e.g. q1-orth q3-obl (default: all five)");
  samp_cmd->add_option("--pf-min", so.pf_min, "Smallest block size")
      ->capture_default_str();
  samp_cmd->add_option("--pf-max", so.pf_max, "Largest block size")
      ->capture_default_str();
  samp_cmd->add_option("--l", so.l_levels,
                       "Mean loading levels (default: .4 .6 .8)");
  samp_cmd->add_option("--modes", so.modes,
                       "Loading modes: constant and/or variable (default: both)");
  samp_cmd->add_option("--n", so.n_levels,
                       "Sample sizes (default: 150 300 900)");
  samp_cmd
      ->add_option("--target", so.target,
                   "Delta target: sample correlations or population sigma")
      ->capture_default_str();
  samp_cmd
      ->add_option("--msq-denominator", so.denominator,
                   "Mean-square denominator: offdiag (p(p-1)) or all (p^2)")
      ->capture_default_str();
  samp_cmd->add_flag("--quiet", so.quiet, "Suppress per-condition progress");

  AnalyzeOpts ao;
  auto* ana_cmd = app.add_subcommand(
      "analyze", "Fit a factor model to a data CSV and compare predictors");
  ana_cmd->add_option("file", ao.file, "Numeric CSV, observations x variables")
      ->required();
  ana_cmd->add_option("--q", ao.q, "Number of factors to extract")->required();
  ana_cmd
      ->add_option("--rotation", ao.rotation, "varimax, promax, or none")
      ->capture_default_str();
  ana_cmd->add_option("--header", ao.header, "auto, yes, or no")
      ->capture_default_str();
  ana_cmd->add_option("--out", ao.out, "Output directory")->capture_default_str();
  ana_cmd
      ->add_option("--msq-denominator", ao.denominator,
                   "Mean-square denominator: offdiag (p(p-1)) or all (p^2)")
      ->capture_default_str();

  ThresholdOpts to;
  auto* thr_cmd = app.add_subcommand(
      "threshold", "Crossover loadings per block size from the exact deltas");
  thr_cmd->add_option("--out", to.out, "Output directory")->capture_default_str();
  thr_cmd->add_option("--sets", to.sets, "Model sets to scan (1-4)")
      ->capture_default_str();
  thr_cmd->add_option("--pf-min", to.pf_min, "Smallest block size")
      ->capture_default_str();
  thr_cmd->add_option("--pf-max", to.pf_max, "Largest block size")
      ->capture_default_str();
  thr_cmd->add_option("--grid-min", to.grid_min, "Smallest loading scanned")
      ->capture_default_str();
  thr_cmd->add_option("--grid-step", to.grid_step, "Loading grid step")
      ->capture_default_str();
  thr_cmd
      ->add_option("--msq-denominator", to.denominator,
                   "Mean-square denominator: offdiag (p(p-1)) or all (p^2)")
      ->capture_default_str();

  int rc = 0;
  verify_cmd->callback([&] {
    vo.has_override = verify_cmd->count("--tolerance-override") > 0;
    rc = cmd_verify(vo);
  });
  pop_cmd->callback([&] {
    po.l_given = pop_cmd->count("--l-min") > 0;
    rc = cmd_population_sweep(po);
  });
  samp_cmd->callback([&] { rc = cmd_sample_sweep(so); });
  ana_cmd->callback([&] { rc = cmd_analyze(ao); });
  thr_cmd->callback([&] { rc = cmd_threshold(to); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("fsp");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(int(argv.size()), argv.data());
}

}  // namespace fsp::cli
