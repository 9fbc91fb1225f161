// Acceptance suite: the eleven behavioral criteria the project must satisfy,
// one pass/fail line each, exit code 0 only if all pass. Runs the real
// pipelines end to end at the stated tolerances and time limits.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fsp/cli.hpp"
#include "fsp/efa.hpp"
#include "fsp/metrics.hpp"
#include "fsp/model.hpp"
#include "fsp/predictors.hpp"
#include "fsp/sim.hpp"
#include "fsp/verify.hpp"

using namespace fsp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return "<unreadable:" + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 1. Two salients per factor, orthogonal models: the best single variable
// reproduces every off-diagonal exactly through the full weight pipeline.
void criterion_exact_pairs() {
  Timer t;
  const auto rep = check_exact_pairs(default_l_grid_m2(), default_q_grid());
  const double secs = t.seconds();
  const bool ok = rep.max_violation <= 1e-12 && secs < 5.0;
  report(1, "two salients per factor reproduce exactly", ok,
         "max |delta_b| " + fmt(rep.max_violation) + " <= 1e-12 over " +
             std::to_string(rep.conditions_checked) + " conditions, " +
             fmt(secs) + " s < 5 s");
}

// 2. Fine threshold scan brackets the three-salient crossover loading.
void criterion_threshold_bracket() {
  Timer t;
  const auto grid = arith_grid(0.25, 0.95, 0.001);
  const auto res = threshold_scan(ModelSet::Set1, 1, 3, grid);
  const double secs = t.seconds();
  const double h = res.threshold ? *res.threshold : -1.0;
  const bool ok = res.threshold && h >= 0.759 && h <= 0.761 && secs < 5.0;
  report(2, "three-salient crossover bracket", ok,
         "threshold " + fmt(h) + " in [0.759, 0.761], " + fmt(secs) +
             " s < 5 s");
}

// 3. Pipeline block residual SSQs match the closed forms 2(s - s^2)^2 and
// 6((1 - s)/3)^2 at constant inter-correlation s.
void criterion_closed_form_tie() {
  double worst = 0.0;
  int conditions = 0;
  for (const double s : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
    const double l = std::sqrt(s);
    const auto model =
        build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 1, 3, l});
    const auto sigma = implied_sigma(model);
    const auto ssq = block_offdiag_ssq(Vectord(model.loadings.col(0)), sigma);
    const auto cf = closed_form_ssq_m3(sigma(0, 1));
    worst = std::max(worst, std::abs(ssq.single_variable - cf.first));
    worst = std::max(worst, std::abs(ssq.conventional - cf.second));
    ++conditions;
  }
  report(3, "closed-form block residuals", worst <= 1e-12,
         "max |pipeline - closed form| " + fmt(worst) + " <= 1e-12 over " +
             std::to_string(conditions) + " correlations");
}

// 4. Vanishing loadings: the conventional reproduction pushes off-diagonals
// to 1/p although the true off-diagonals are only l^2 = 1e-6.
void criterion_small_loading() {
  const double l = 0.001;
  double worst_rep = 0.0;
  double worst_sigma = 0.0;
  for (const int p : {4, 5, 10}) {
    const auto model =
        build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 1, p, l});
    const auto sigma = implied_sigma(model);
    const auto conv = eq_closed_form_reproduced(model.loadings, sigma);
    const double target = 1.0 / double(p);
    for (Index i = 0; i < sigma.dim(); ++i) {
      for (Index j = 0; j < sigma.dim(); ++j) {
        if (i == j) continue;
        worst_rep = std::max(worst_rep, std::abs(conv(i, j) - target));
        worst_sigma = std::max(worst_sigma, std::abs(sigma(i, j) - 1e-6));
      }
    }
  }
  const bool ok = worst_rep <= 1e-2 && worst_sigma <= 1e-9;
  report(4, "small-loading limit", ok,
         "max |reproduced - 1/p| " + fmt(worst_rep) +
             " <= 1e-2 while max |sigma_od - 1e-6| " + fmt(worst_sigma) +
             " <= 1e-9, p in {4, 5, 10}");
}

// 5. Regression, Bartlett, and Anderson-Rubin weights all reproduce the same
// covariance matrix as the two closed forms.
void criterion_equivalence() {
  double worst = 0.0;
  int models = 0;
  for (const ModelSet set : {ModelSet::Set1, ModelSet::Set2, ModelSet::Set3,
                             ModelSet::Set4}) {
    for (const int q : {1, 2, 5}) {
      for (const int m : {2, 3, 6}) {
        for (const double l : {0.3, 0.6}) {
          const auto model =
              build_simple_structure(ModelSetSpec<double>{set, q, m, l});
          const auto sigma = implied_sigma(model);
          const auto closed = eq_closed_form_reproduced(model.loadings, sigma);
          const auto jores = joreskog_reproduced(model);
          worst = std::max(worst, max_abs_diff(closed, jores));
          for (const auto& w :
               {regression_weights(model, sigma), bartlett_weights(model),
                anderson_rubin_weights(model, sigma)}) {
            const auto rep = reproduce_from_weights(w, sigma);
            worst = std::max(worst, max_abs_diff(rep.sigma_rep, closed));
          }
          ++models;
        }
      }
    }
  }
  const bool ok = worst <= 1e-10 && models >= 50;
  report(5, "predictor-class equivalence", ok,
         "max |difference| " + fmt(worst) + " <= 1e-10 over " +
             std::to_string(models) + " models (oblique included)");
}

// 6 and 7 share one full population sweep.
void criteria_population_gap(std::vector<SweepRecord>& records_out,
                             double& secs_out) {
  Timer t;
  PopulationGrid grid;  // all four sets, q 1..10, per_factor 2..10
  records_out = run_population_sweep(grid);
  secs_out = t.seconds();
}

void criterion_rule_of_thumb(const std::vector<SweepRecord>& records,
                             double secs) {
  int low_checked = 0, low_bad = 0;
  int high_checked = 0, high_bad = 0;
  for (const auto& r : records) {
    if (r.l <= 0.40 + 1e-9 && r.per_factor <= 6) {
      ++low_checked;
      if (!(r.gap_mean > 0.0)) ++low_bad;
    }
    const bool constant_set = r.label == "set1" || r.label == "set3";
    if (constant_set && std::abs(r.l - 0.80) < 1e-9 && r.per_factor >= 8) {
      ++high_checked;
      if (!(r.gap_mean < 0.0)) ++high_bad;
    }
  }
  const bool ok =
      low_bad == 0 && high_bad == 0 && low_checked > 0 && high_checked > 0 &&
      secs < 30.0;
  report(6, "rule-of-thumb gap signs", ok,
         "gap > 0 at all " + std::to_string(low_checked) +
             " low-loading small-block points, gap < 0 at all " +
             std::to_string(high_checked) +
             " l=.80 large-block points (violations " +
             std::to_string(low_bad) + "/" + std::to_string(high_bad) +
             "), sweep " + fmt(secs) + " s < 30 s");
}

void criterion_q_independence(const std::vector<SweepRecord>& records) {
  std::map<std::string, std::pair<double, double>> span;  // min/max gap
  for (const auto& r : records) {
    if (r.label != "set1" && r.label != "set3") continue;
    std::ostringstream key;
    key << r.label << "|" << r.per_factor << "|" << r.l;
    auto [it, inserted] =
        span.try_emplace(key.str(), std::make_pair(r.gap_mean, r.gap_mean));
    if (!inserted) {
      it->second.first = std::min(it->second.first, r.gap_mean);
      it->second.second = std::max(it->second.second, r.gap_mean);
    }
  }
  double worst = 0.0;
  for (const auto& [key, mm] : span) {
    worst = std::max(worst, mm.second - mm.first);
  }
  report(7, "gap independent of the number of factors", worst <= 1e-12,
         "max gap spread across q " + fmt(worst) + " <= 1e-12 over " +
             std::to_string(span.size()) + " (set, per_factor, l) groups");
}

// 8. Generic loadings: exact and inexact residual counts per block.
void criterion_residual_counts() {
  const auto rep = check_residual_counts(default_per_factor_grid_counts());
  report(8, "residual counts 2(m-1) exact, (m-1)(m-2) inexact", rep.passed,
         "count discrepancies " + fmt(rep.max_violation) + " < 0.5 for m = 3..10");
}

// 9. Desk-scale sample study: positive gap for one factor, shrinking toward
// zero by nine factors.
void criterion_sample_gap_shrinks() {
  Timer t;
  SampleGrid grid;
  grid.cells = {{1, false}, {9, false}};
  grid.per_factor_min = 4;
  grid.per_factor_max = 4;
  grid.l_levels = {0.40};
  grid.loading_modes = {LoadingMode::Constant};
  grid.n_levels = {900};
  grid.replications = 250;
  grid.workers = 2;
  const auto records = run_sample_sweep(grid);
  const double secs = t.seconds();
  if (records.size() != 2) {
    report(9, "sample gap shrinks with more factors", false,
           "expected 2 records, got " + std::to_string(records.size()));
    return;
  }
  const double gap1 = records[0].gap_mean;
  const double gap9 = records[1].gap_mean;
  const bool ok = gap1 > 0.0 && std::abs(gap9) < std::abs(gap1) / 3.0 &&
                  secs < 600.0;
  report(9, "sample gap shrinks with more factors", ok,
         "gap_mean(q=1) " + fmt(gap1) + " > 0, |gap_mean(q=9)| " +
             fmt(std::abs(gap9)) + " < " + fmt(std::abs(gap1) / 3.0) +
             " (250 reps, n=900, m=4, l=.40), " + fmt(secs) + " s < 600 s");
}

// 10. Loading recovery: aligned salient loadings are nearly unbiased.
void criterion_loading_recovery() {
  const int reps = 100;
  const auto model =
      build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 3, 5, 0.60});
  double sum_err = 0.0;
  double sum_abs = 0.0;
  long cells = 0;
  int nonconverged = 0;
  for (int rep = 0; rep < reps; ++rep) {
    const auto data = sample_data(model, 900, SeedTrace{8675309, 0,
                                                        std::uint64_t(rep)});
    const auto rhat = correlation_matrix(data);
    const auto sol = uls_extract(rhat, 3);
    if (!sol.converged) {
      ++nonconverged;
      continue;
    }
    const auto vm = varimax(sol.loadings);
    // Align each estimated column to the population factor it matches best.
    const Matrixd& ref = model.loadings;
    std::vector<bool> used(3, false);
    Matrixd aligned(ref.rows(), 3);
    for (Index j = 0; j < 3; ++j) {
      Index best = 0;
      double best_abs = -1.0, best_dot = 0.0;
      for (Index k = 0; k < 3; ++k) {
        if (used[std::size_t(k)]) continue;
        const double d = ref.col(j).dot(vm.loadings.col(k));
        if (std::abs(d) > best_abs) {
          best_abs = std::abs(d);
          best = k;
          best_dot = d;
        }
      }
      used[std::size_t(best)] = true;
      aligned.col(j) = vm.loadings.col(best) * (best_dot < 0.0 ? -1.0 : 1.0);
    }
    for (Index f = 0; f < 3; ++f) {
      for (Index i = f * 5; i < (f + 1) * 5; ++i) {
        const double err = aligned(i, f) - 0.60;
        sum_err += err;
        sum_abs += std::abs(err);
        ++cells;
      }
    }
  }
  const double bias = cells > 0 ? sum_err / double(cells) : 1.0;
  const double mad = cells > 0 ? sum_abs / double(cells) : 1.0;
  const bool ok = std::abs(bias) < 0.02 && mad < 0.05 && nonconverged == 0;
  report(10, "salient loading recovery", ok,
         "signed bias " + fmt(bias) + " (|.| < .02), mean abs deviation " +
             fmt(mad) + " < .05 over " + std::to_string(cells) +
             " salient cells, " + std::to_string(nonconverged) +
             " nonconverged");
}

// 11. Byte-identical sweep output for a fixed seed, whatever the scheduling.
void criterion_determinism() {
  const fs::path base = fs::temp_directory_path() / "fsp_acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);
  const std::vector<std::string> common = {
      "sample-sweep", "--cells",  "q1-orth", "q3-obl", "--pf-min", "3",
      "--pf-max",     "4",        "--l",     "0.4",    "--modes",
      "constant",     "--n",      "100",     "--reps", "5",
      "--seed",       "777",      "--quiet"};
  auto run_into = [&](const std::string& name, const std::string& workers) {
    auto args = common;
    args.insert(args.end(),
                {"--out", (base / name).string(), "--workers", workers});
    return cli::run(args);
  };
  const int rc1 = run_into("a", "1");
  const int rc2 = run_into("b", "1");
  const int rc3 = run_into("c", "4");
  const std::string a = read_file(base / "a" / "sample_sweep.csv");
  const std::string b = read_file(base / "b" / "sample_sweep.csv");
  const std::string c = read_file(base / "c" / "sample_sweep.csv");
  const bool ok = rc1 == 0 && rc2 == 0 && rc3 == 0 && a == b && a == c &&
                  a.find("q3-obl") != std::string::npos;
  report(11, "byte-identical sweep reruns", ok,
         std::string("rerun ") + (a == b ? "identical" : "DIFFERS") +
             ", workers 1 vs 4 " + (a == c ? "identical" : "DIFFERS") + " (" +
             std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main() {
  std::printf("acceptance: 11 criteria\n");
  criterion_exact_pairs();
  criterion_threshold_bracket();
  criterion_closed_form_tie();
  criterion_small_loading();
  criterion_equivalence();

  std::vector<SweepRecord> records;
  double sweep_secs = 0.0;
  criteria_population_gap(records, sweep_secs);
  criterion_rule_of_thumb(records, sweep_secs);
  criterion_q_independence(records);

  criterion_residual_counts();
  criterion_sample_gap_shrinks();
  criterion_loading_recovery();
  criterion_determinism();

  if (failures == 0) {
    std::printf("all 11 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", failures);
  return 1;
}
