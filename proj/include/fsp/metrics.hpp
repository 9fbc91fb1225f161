#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fsp/errors.hpp"
#include "fsp/matrix.hpp"
#include "fsp/model.hpp"
#include "fsp/predictors.hpp"

// Covariance reproduction quality. delta_r is the off-diagonal mean squared
// residual of the conventional (regression-class) reproduction, delta_b the
// same for the best single-variable-per-factor predictor, gap = delta_r -
// delta_b (positive means the single variable reproduces better).

namespace fsp {

/// Denominator convention for the off-diagonal mean square: the number of
/// off-diagonal cells p(p-1), or all p^2 cells. The choice rescales both
/// deltas identically, so gap signs and thresholds do not depend on it.
enum class MsqDenominator { OffDiag, All };

inline const char* to_string(MsqDenominator d) {
  return d == MsqDenominator::OffDiag ? "offdiag" : "all";
}

/// Mean squared off-diagonal difference between a target matrix and its
/// reproduction.
template <typename Scalar>
Scalar offdiag_msq(const SymMatrix<Scalar>& target,
                   const SymMatrix<Scalar>& reproduced,
                   MsqDenominator den = MsqDenominator::OffDiag) {
  const Index p = target.dim();
  if (reproduced.dim() != p) {
    throw DimensionMismatch("offdiag_msq: target dim " + std::to_string(p) +
                            " != reproduced dim " +
                            std::to_string(reproduced.dim()));
  }
  if (p < 2) {
    throw DimensionMismatch("offdiag_msq: need dim >= 2");
  }
  Matrix<Scalar> resid = target.mat() - reproduced.mat();
  resid.diagonal().setZero();
  const Scalar ssq = resid.array().square().sum();
  const Scalar cells = den == MsqDenominator::OffDiag
                           ? Scalar(p) * Scalar(p - 1)
                           : Scalar(p) * Scalar(p);
  return ssq / cells;
}

template <typename Scalar = double>
struct DeltaPair {
  Scalar delta_r;
  Scalar delta_b;
  Scalar gap;  // delta_r - delta_b
};

/// Off-diagonal residual sums of squares (not means) for one factor block:
/// conventional closed-form reproduction vs the best single variable. Exposed
/// separately because the closed-form theorem checks are stated in SSQ terms.
template <typename Scalar = double>
struct BlockSsq {
  Scalar conventional;
  Scalar single_variable;
  Index cells;  // off-diagonal cell count m(m-1)
};

/// SSQ pair for an isolated block: lambda_block is the m-vector of salient
/// loadings, sigma_block the m x m block of the correlation matrix.
template <typename Scalar>
BlockSsq<Scalar> block_offdiag_ssq(const Vector<Scalar>& lambda_block,
                                   const SymMatrix<Scalar>& sigma_block) {
  const Index m = sigma_block.dim();
  if (lambda_block.size() != m) {
    throw DimensionMismatch("block_offdiag_ssq: loading length " +
                            std::to_string(lambda_block.size()) +
                            " != block dim " + std::to_string(m));
  }
  if (m < 2) {
    throw DimensionMismatch("block_offdiag_ssq: need block dim >= 2");
  }
  const Matrix<Scalar> lam = lambda_block;  // m x 1

  const SymMatrix<Scalar> conv = eq_closed_form_reproduced(lam, sigma_block);
  Matrix<Scalar> resid_c = sigma_block.mat() - conv.mat();
  resid_c.diagonal().setZero();

  const auto sel = select_single_variables(lam);
  const auto single = reproduce_from_weights(
      PredictorWeights<Scalar>{PredictorKind::SingleVariable, sel.selector},
      sigma_block);
  Matrix<Scalar> resid_b = sigma_block.mat() - single.sigma_rep.mat();
  resid_b.diagonal().setZero();

  BlockSsq<Scalar> out;
  out.conventional = resid_c.array().square().sum();
  out.single_variable = resid_b.array().square().sum();
  out.cells = m * (m - 1);
  return out;
}

/// How population deltas aggregate across a multi-factor model. PerBlock
/// evaluates every factor in its own m x m block and averages the per-block
/// MSQs, which makes the result independent of the number of factors; Full
/// runs the complete p x p reproduction pipeline.
enum class PopAggregate { PerBlock, Full };

inline const char* to_string(PopAggregate a) {
  return a == PopAggregate::PerBlock ? "block" : "full";
}

namespace detail {

/// Contiguous-block structure check: variable i may load only on factor
/// i / per_factor. Block aggregation is defined only for such models.
template <typename Scalar>
void require_simple_structure(const PopulationModel<Scalar>& model,
                              const char* caller) {
  const Index p = model.p();
  const Index q = model.q();
  if (q < 1 || p % q != 0) {
    throw DimensionMismatch(std::string(caller) +
                            ": p must be a multiple of q for block "
                            "aggregation");
  }
  const Index m = p / q;
  for (Index i = 0; i < p; ++i) {
    for (Index f = 0; f < q; ++f) {
      if (f != i / m && model.loadings(i, f) != Scalar(0)) {
        throw DimensionMismatch(std::string(caller) +
                                ": block aggregation requires perfect "
                                "simple structure (contiguous blocks)");
      }
    }
  }
}

}  // namespace detail

/// Full-pipeline deltas over the whole p x p matrix: conventional closed form
/// vs the assignment-selected single variables, both reproduced from sigma.
template <typename Scalar>
DeltaPair<Scalar> delta_pair_full(const PopulationModel<Scalar>& model,
                                  const SymMatrix<Scalar>& sigma,
                                  MsqDenominator den = MsqDenominator::OffDiag) {
  const SymMatrix<Scalar> conv = eq_closed_form_reproduced(model.loadings, sigma);
  const auto sel = select_single_variables(model.loadings);
  const auto single = reproduce_from_weights(single_variable_weights(sel), sigma);
  DeltaPair<Scalar> out;
  out.delta_r = offdiag_msq(sigma, conv, den);
  out.delta_b = offdiag_msq(sigma, single.sigma_rep, den);
  out.gap = out.delta_r - out.delta_b;
  return out;
}

/// Population deltas with the chosen aggregation. PerBlock: for each factor,
/// take its m x m block of sigma and the block's salient loadings, reproduce
/// within the block, and average the per-block off-diagonal MSQs. For
/// orthogonal simple-structure models this equals the full pipeline restricted
/// to one block; it is the quantity that depends only on the loading pattern
/// and block size, not on how many factors sit side by side.
template <typename Scalar>
DeltaPair<Scalar> delta_pair(const PopulationModel<Scalar>& model,
                             const SymMatrix<Scalar>& sigma,
                             PopAggregate agg = PopAggregate::PerBlock,
                             MsqDenominator den = MsqDenominator::OffDiag) {
  if (sigma.dim() != model.p()) {
    throw DimensionMismatch("delta_pair: sigma dim " +
                            std::to_string(sigma.dim()) + " != p " +
                            std::to_string(model.p()));
  }
  if (agg == PopAggregate::Full) {
    return delta_pair_full(model, sigma, den);
  }
  detail::require_simple_structure(model, "delta_pair");
  const Index q = model.q();
  const Index m = model.p() / q;
  Scalar dr = Scalar(0);
  Scalar db = Scalar(0);
  for (Index f = 0; f < q; ++f) {
    const Vector<Scalar> lam = model.loadings.block(f * m, f, m, 1);
    const SymMatrix<Scalar> blk(sigma.mat().block(f * m, f * m, m, m));
    const auto ssq = block_offdiag_ssq(lam, blk);
    const Scalar cells = den == MsqDenominator::OffDiag
                             ? Scalar(ssq.cells)
                             : Scalar(m) * Scalar(m);
    dr += ssq.conventional / cells;
    db += ssq.single_variable / cells;
  }
  DeltaPair<Scalar> out;
  out.delta_r = dr / Scalar(q);
  out.delta_b = db / Scalar(q);
  out.gap = out.delta_r - out.delta_b;
  return out;
}

/// Arithmetic grid lo, lo+step, ... up to hi (inclusive within a small slack).
template <typename Scalar = double>
std::vector<Scalar> arith_grid(Scalar lo, Scalar hi, Scalar step) {
  if (!(step > Scalar(0)) || hi < lo) {
    throw EmptyGrid("arith_grid: need step > 0 and hi >= lo");
  }
  std::vector<Scalar> out;
  for (int i = 0;; ++i) {
    const Scalar v = lo + step * Scalar(i);
    if (v > hi + step * Scalar(1e-9)) break;
    out.push_back(v);
  }
  return out;
}

/// Largest mean loading at which the single variable still reproduces better.
template <typename Scalar = double>
struct ThresholdResult {
  int per_factor = 0;
  std::optional<Scalar> threshold;  // largest grid l with gap > 0; empty if none
  bool censored = false;            // true when the whole grid has gap > 0
  Scalar grid_step = Scalar(0);
};

/// Scan a loading grid (ascending, within (0,1)) for the crossover: the
/// largest l whose gap is positive. If every grid point is positive the
/// threshold is the grid maximum, flagged censored.
template <typename Scalar>
ThresholdResult<Scalar> threshold_scan(ModelSet set, int q, int per_factor,
                                       const std::vector<Scalar>& l_grid,
                                       PopAggregate agg = PopAggregate::PerBlock,
                                       MsqDenominator den = MsqDenominator::OffDiag) {
  if (l_grid.empty()) {
    throw EmptyGrid("threshold_scan: empty loading grid");
  }
  for (std::size_t i = 0; i < l_grid.size(); ++i) {
    if (!(l_grid[i] > Scalar(0) && l_grid[i] < Scalar(1))) {
      throw Error("threshold_scan: grid values must lie in (0,1)");
    }
    if (i > 0 && !(l_grid[i] > l_grid[i - 1])) {
      throw Error("threshold_scan: grid must be strictly ascending");
    }
  }
  ThresholdResult<Scalar> out;
  out.per_factor = per_factor;
  out.grid_step = l_grid.size() > 1 ? l_grid[1] - l_grid[0] : Scalar(0);
  bool all_positive = true;
  std::optional<Scalar> last_positive;
  for (const Scalar l : l_grid) {
    ModelSetSpec<Scalar> spec{set, q, per_factor, l};
    const auto model = build_simple_structure(spec);
    const auto sigma = implied_sigma(model);
    const auto d = delta_pair(model, sigma, agg, den);
    if (d.gap > Scalar(0)) {
      last_positive = l;
    } else {
      all_positive = false;
    }
  }
  out.threshold = last_positive;
  out.censored = all_positive;
  return out;
}

}  // namespace fsp
