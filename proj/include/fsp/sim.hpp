#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fsp/metrics.hpp"
#include "fsp/model.hpp"

// Sweep orchestration: the population grid (exact deltas per model cell) and
// the Monte Carlo sample grid (deltas recomputed from estimated loadings on
// simulated data). Output is deterministic for a fixed master seed: work is
// parallelized across conditions only, and each condition's replications run
// sequentially in ordinal order.

namespace fsp {

/// Population sweep configuration. The default loading grids are
/// .25..(.95|.85) step .05; variable-loading sets stop at .85 so the high
/// alternation stays below 1.
struct PopulationGrid {
  std::vector<ModelSet> sets = {ModelSet::Set1, ModelSet::Set2, ModelSet::Set3,
                                ModelSet::Set4};
  int q_min = 1, q_max = 10;
  int per_factor_min = 2, per_factor_max = 10;
  std::vector<double> l_override;  // empty = set-specific default grid
  PopAggregate aggregate = PopAggregate::PerBlock;
  MsqDenominator denominator = MsqDenominator::OffDiag;

  std::vector<double> l_grid_for(ModelSet set) const;
  void validate() const;
};

/// One sweep condition with aggregated results. Population records carry
/// n = 0, replications = 1, gap_sd = 0 and zero diagnostic counts.
struct SweepRecord {
  std::string label;  // model set ("set1".."set4") or sample cell ("q3-obl")
  int q = 0;
  bool oblique = false;
  int per_factor = 0;
  double l = 0.0;
  LoadingMode loading_mode = LoadingMode::Constant;
  double phi_offdiag = 0.0;
  Index n = 0;  // sample size; 0 for population records
  int replications = 1;
  double delta_r_mean = 0.0;
  double delta_b_mean = 0.0;
  double gap_mean = 0.0;
  double gap_sd = 0.0;
  long nonconverged = 0;
  long heywood_events = 0;
};

std::vector<SweepRecord> run_population_sweep(const PopulationGrid& grid);

struct SampleCell {
  int q;
  bool oblique;
};

inline std::string cell_label(const SampleCell& c) {
  return "q" + std::to_string(c.q) + (c.oblique ? "-obl" : "-orth");
}

/// Monte Carlo sweep configuration. Defaults give the 720-condition design:
/// 5 cells x 8 block sizes x 3 loadings x 2 loading modes x 3 sample sizes.
struct SampleGrid {
  std::vector<SampleCell> cells = {
      {1, false}, {3, false}, {3, true}, {9, false}, {9, true}};
  int per_factor_min = 3, per_factor_max = 10;
  std::vector<double> l_levels = {0.40, 0.60, 0.80};
  std::vector<LoadingMode> loading_modes = {LoadingMode::Constant,
                                            LoadingMode::Variable};
  std::vector<Index> n_levels = {150, 300, 900};
  int replications = 250;
  std::uint64_t master_seed = 1234567;
  int workers = 1;
  MsqDenominator denominator = MsqDenominator::OffDiag;
  bool target_population = false;  // measure deltas against implied Sigma

  void validate() const;
  Index condition_count() const;
};

/// Progress callback: (finished record, number done, total). Invoked under a
/// lock, in completion order (which may differ from record order).
using ProgressFn = std::function<void(const SweepRecord&, Index, Index)>;

std::vector<SweepRecord> run_sample_sweep(const SampleGrid& grid,
                                          const ProgressFn& progress = {});

/// Coordinates a record collection can be averaged over.
enum class Coordinate { Q, PerFactor, L, N };

/// Average the delta statistics across one coordinate: records are grouped by
/// every other coordinate, each group must cover the same set of collapsed
/// values exactly once, and the collapsed field is set to -1 in the output.
/// Diagnostic counts are summed.
std::vector<SweepRecord> collapse(const std::vector<SweepRecord>& records,
                                  Coordinate over);

}  // namespace fsp
