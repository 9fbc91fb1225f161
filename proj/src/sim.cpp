#include "fsp/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "fsp/efa.hpp"
#include "fsp/errors.hpp"
#include "fsp/predictors.hpp"

namespace fsp {

std::vector<double> PopulationGrid::l_grid_for(ModelSet set) const {
  if (!l_override.empty()) return l_override;
  const bool variable =
      set == ModelSet::Set2 || set == ModelSet::Set4;
  return arith_grid(0.25, variable ? 0.85 : 0.95, 0.05);
}

void PopulationGrid::validate() const {
  if (sets.empty()) throw EmptyGrid("population grid: no sets");
  if (q_min < 1 || q_max > 10 || q_min > q_max) {
    throw Error("population grid: q range must satisfy 1 <= q_min <= q_max <= 10");
  }
  if (per_factor_min < 2 || per_factor_max > 10 || per_factor_min > per_factor_max) {
    throw Error(
        "population grid: per_factor range must satisfy 2 <= min <= max <= 10");
  }
  for (const double l : l_override) {
    if (!(l > 0.0 && l < 1.0)) {
      throw Error("population grid: loading overrides must lie in (0,1)");
    }
  }
}

std::vector<SweepRecord> run_population_sweep(const PopulationGrid& grid) {
  grid.validate();
  std::vector<SweepRecord> records;
  for (const ModelSet set : grid.sets) {
    const auto l_grid = grid.l_grid_for(set);
    for (int q = grid.q_min; q <= grid.q_max; ++q) {
      for (int m = grid.per_factor_min; m <= grid.per_factor_max; ++m) {
        for (const double l : l_grid) {
          ModelSetSpec<double> spec{set, q, m, l};
          const auto model = build_simple_structure(spec);
          const auto sigma = implied_sigma(model);
          const auto d = delta_pair(model, sigma, grid.aggregate, grid.denominator);
          SweepRecord rec;
          rec.label = to_string(set);
          rec.q = q;
          rec.oblique = spec.oblique();
          rec.per_factor = m;
          rec.l = l;
          rec.loading_mode = spec.loading_mode();
          rec.phi_offdiag = spec.phi_offdiag();
          rec.delta_r_mean = d.delta_r;
          rec.delta_b_mean = d.delta_b;
          rec.gap_mean = d.gap;
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

void SampleGrid::validate() const {
  if (cells.empty() || l_levels.empty() || loading_modes.empty() ||
      n_levels.empty()) {
    throw EmptyGrid("sample grid: empty coordinate");
  }
  for (const auto& c : cells) {
    if (c.q < 1 || c.q > 10) throw Error("sample grid: cell q must be in 1..10");
    if (c.oblique && c.q < 2) {
      throw Error("sample grid: an oblique cell needs q >= 2");
    }
  }
  if (per_factor_min < 2 || per_factor_max > 10 ||
      per_factor_min > per_factor_max) {
    throw Error("sample grid: per_factor range must satisfy 2 <= min <= max <= 10");
  }
  for (const double l : l_levels) {
    if (!(l > 0.0 && l < 1.0)) throw Error("sample grid: loadings must lie in (0,1)");
  }
  for (const Index n : n_levels) {
    if (n < 10) throw Error("sample grid: n must be at least 10");
  }
  if (replications < 2) throw Error("sample grid: need at least 2 replications");
  if (workers < 1) throw Error("sample grid: workers must be >= 1");
}

Index SampleGrid::condition_count() const {
  return Index(cells.size()) * Index(per_factor_max - per_factor_min + 1) *
         Index(l_levels.size()) * Index(loading_modes.size()) *
         Index(n_levels.size());
}

namespace {

struct Condition {
  SampleCell cell;
  int per_factor;
  double l;
  LoadingMode mode;
  Index n;
  Index ordinal;
};

std::vector<Condition> enumerate_conditions(const SampleGrid& grid) {
  std::vector<Condition> conds;
  conds.reserve(static_cast<std::size_t>(grid.condition_count()));
  Index ordinal = 0;
  for (const auto& cell : grid.cells) {
    for (int m = grid.per_factor_min; m <= grid.per_factor_max; ++m) {
      for (const double l : grid.l_levels) {
        for (const LoadingMode mode : grid.loading_modes) {
          for (const Index n : grid.n_levels) {
            conds.push_back({cell, m, l, mode, n, ordinal++});
          }
        }
      }
    }
  }
  return conds;
}

ModelSet set_for(bool oblique, LoadingMode mode) {
  if (!oblique) {
    return mode == LoadingMode::Constant ? ModelSet::Set1 : ModelSet::Set2;
  }
  return mode == LoadingMode::Constant ? ModelSet::Set3 : ModelSet::Set4;
}

/// One condition: run every replication in ordinal order and aggregate.
SweepRecord run_condition(const SampleGrid& grid, const Condition& cond) {
  ModelSetSpec<double> spec{set_for(cond.cell.oblique, cond.mode), cond.cell.q,
                            cond.per_factor, cond.l};
  const auto model = build_simple_structure(spec);
  const auto sigma_pop = implied_sigma(model);
  const Index q = cond.cell.q;

  SweepRecord rec;
  rec.label = cell_label(cond.cell);
  rec.q = cond.cell.q;
  rec.oblique = cond.cell.oblique;
  rec.per_factor = cond.per_factor;
  rec.l = cond.l;
  rec.loading_mode = cond.mode;
  rec.phi_offdiag = spec.phi_offdiag();
  rec.n = cond.n;
  rec.replications = grid.replications;

  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(grid.replications));
  double sum_dr = 0.0, sum_db = 0.0;
  for (int rep = 0; rep < grid.replications; ++rep) {
    const SeedTrace trace{grid.master_seed,
                          static_cast<std::uint64_t>(cond.ordinal),
                          static_cast<std::uint64_t>(rep)};
    try {
      const Dataset data = sample_data(model, cond.n, trace);
      const SymMatrixd rhat = correlation_matrix(data);
      const EfaSolution efa = uls_extract(rhat, q);
      if (!efa.converged) ++rec.nonconverged;
      rec.heywood_events += efa.heywood_clamped;

      Matrixd pattern;
      if (q == 1) {
        pattern = efa.loadings;
      } else if (!cond.cell.oblique) {
        pattern = varimax(efa.loadings).loadings;
      } else {
        pattern = promax(efa.loadings).pattern;
      }

      const SymMatrixd& target = grid.target_population ? sigma_pop : rhat;
      const SymMatrixd conv = eq_closed_form_reproduced(efa.loadings, rhat);
      const auto sel = select_single_variables(pattern);
      const auto single = reproduce_from_weights(
          PredictorWeights<double>{PredictorKind::SingleVariable, sel.selector},
          rhat);
      const double dr = offdiag_msq(target, conv, grid.denominator);
      const double db = offdiag_msq(target, single.sigma_rep, grid.denominator);
      sum_dr += dr;
      sum_db += db;
      gaps.push_back(dr - db);
    } catch (const Error&) {
      // A replication whose algebra fails outright contributes no deltas and
      // is counted as nonconverged.
      ++rec.nonconverged;
    }
  }

  const auto included = static_cast<double>(gaps.size());
  if (!gaps.empty()) {
    rec.delta_r_mean = sum_dr / included;
    rec.delta_b_mean = sum_db / included;
    double gsum = 0.0;
    for (const double g : gaps) gsum += g;
    rec.gap_mean = gsum / included;
    if (gaps.size() > 1) {
      double ss = 0.0;
      for (const double g : gaps) ss += (g - rec.gap_mean) * (g - rec.gap_mean);
      rec.gap_sd = std::sqrt(ss / (included - 1.0));
    }
  }
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sample_sweep(const SampleGrid& grid,
                                          const ProgressFn& progress) {
  grid.validate();
  const auto conds = enumerate_conditions(grid);
  std::vector<SweepRecord> records(conds.size());

  std::atomic<std::size_t> next{0};
  std::atomic<Index> done{0};
  std::mutex progress_mutex;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const int workers =
      std::min<int>(grid.workers, static_cast<int>(conds.size()) > 0
                                      ? static_cast<int>(conds.size())
                                      : 1);
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= conds.size()) return;
      try {
        records[idx] = run_condition(grid, conds[idx]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(records[idx], ++done, Index(conds.size()));
      } else {
        ++done;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

namespace {

double coordinate_value(const SweepRecord& r, Coordinate c) {
  switch (c) {
    case Coordinate::Q: return double(r.q);
    case Coordinate::PerFactor: return double(r.per_factor);
    case Coordinate::L: return r.l;
    case Coordinate::N: return double(r.n);
  }
  return 0.0;
}

void clear_coordinate(SweepRecord& r, Coordinate c) {
  switch (c) {
    case Coordinate::Q: r.q = -1; break;
    case Coordinate::PerFactor: r.per_factor = -1; break;
    case Coordinate::L: r.l = -1.0; break;
    case Coordinate::N: r.n = -1; break;
  }
}

std::string group_key(const SweepRecord& r, Coordinate over) {
  std::string key = r.label;
  auto add = [&key](double v) { key += "|" + std::to_string(v); };
  if (over != Coordinate::Q) add(double(r.q));
  if (over != Coordinate::PerFactor) add(double(r.per_factor));
  if (over != Coordinate::L) add(r.l);
  if (over != Coordinate::N) add(double(r.n));
  key += "|" + std::string(to_string(r.loading_mode));
  return key;
}

}  // namespace

std::vector<SweepRecord> collapse(const std::vector<SweepRecord>& records,
                                  Coordinate over) {
  if (records.empty()) throw EmptyGrid("collapse: no records");

  std::vector<std::string> order;
  std::map<std::string, std::vector<const SweepRecord*>> groups;
  for (const auto& r : records) {
    const std::string key = group_key(r, over);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  const std::size_t group_size = groups[order.front()].size();
  std::vector<SweepRecord> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    const auto& members = groups[key];
    if (members.size() != group_size) {
      throw InconsistentCoordinates(
          "collapse: groups do not cover the collapsed coordinate equally");
    }
    std::vector<double> seen;
    SweepRecord agg = *members.front();
    agg.delta_r_mean = agg.delta_b_mean = agg.gap_mean = agg.gap_sd = 0.0;
    agg.nonconverged = agg.heywood_events = 0;
    for (const auto* m : members) {
      const double v = coordinate_value(*m, over);
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
        throw InconsistentCoordinates(
            "collapse: duplicate value of the collapsed coordinate in a group");
      }
      seen.push_back(v);
      agg.delta_r_mean += m->delta_r_mean;
      agg.delta_b_mean += m->delta_b_mean;
      agg.gap_mean += m->gap_mean;
      agg.gap_sd += m->gap_sd;
      agg.nonconverged += m->nonconverged;
      agg.heywood_events += m->heywood_events;
    }
    const double k = double(members.size());
    agg.delta_r_mean /= k;
    agg.delta_b_mean /= k;
    agg.gap_mean /= k;
    agg.gap_sd /= k;
    clear_coordinate(agg, over);
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace fsp
