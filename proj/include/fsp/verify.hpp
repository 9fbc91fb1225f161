#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fsp/metrics.hpp"
#include "fsp/model.hpp"
#include "fsp/predictors.hpp"

// Numerical checks of the closed-form results the single-variable predictor
// rests on. Each check sweeps a grid of model conditions through the actual
// reproduction pipeline and reports the worst deviation from the claimed
// exact behavior.

namespace fsp {

enum class TheoremId { ExactPairs, CrossoverM3, SmallLoadingLimit, ResidualCounts };

inline const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ExactPairs: return "exact_pairs_m2";
    case TheoremId::CrossoverM3: return "crossover_m3";
    case TheoremId::SmallLoadingLimit: return "small_loading_limit";
    case TheoremId::ResidualCounts: return "residual_counts";
  }
  return "?";
}

struct TheoremReport {
  TheoremId id;
  int conditions_checked = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;  // max_violation < tolerance
};

namespace detail {

inline void finish(TheoremReport& r) { r.passed = r.max_violation < r.tolerance; }

}  // namespace detail

/// Two salients per factor, orthogonal model: the single variable reproduces
/// every off-diagonal exactly, so the full-pipeline delta_b must vanish.
/// Runs the constant-loading set over l_grid and the variable-loading set over
/// the part of the grid it admits (mean + .10 < 1).
inline TheoremReport check_exact_pairs(const std::vector<double>& l_grid,
                                       const std::vector<int>& q_grid,
                                       double tol = 1e-12) {
  TheoremReport rep{TheoremId::ExactPairs, 0, 0.0, tol, false};
  for (const ModelSet set : {ModelSet::Set1, ModelSet::Set2}) {
    for (const double l : l_grid) {
      if (set == ModelSet::Set2 && !(l + 0.10 < 1.0)) continue;
      for (const int q : q_grid) {
        ModelSetSpec<double> spec{set, q, 2, l};
        const auto model = build_simple_structure(spec);
        const auto sigma = implied_sigma(model);
        const auto d = delta_pair_full(model, sigma);
        rep.max_violation = std::max(rep.max_violation, std::abs(d.delta_b));
        ++rep.conditions_checked;
      }
    }
  }
  detail::finish(rep);
  return rep;
}

/// Closed-form off-diagonal residual SSQs for a 3-variable block with constant
/// inter-correlation sigma (= squared loading): single variable leaves
/// 2 (sigma - sigma^2)^2, the conventional reproduction 6 (1/3 - sigma/3)^2.
inline std::pair<double, double> closed_form_ssq_m3(double sigma) {
  const double single = 2.0 * std::pow(sigma - sigma * sigma, 2);
  const double conventional = 6.0 * std::pow((1.0 - sigma) / 3.0, 2);
  return {single, conventional};
}

/// Three salients per factor, constant loadings below the crossover point
/// 3^(-1/4): the pipeline block SSQs must match the closed forms and the
/// single variable must win strictly.
inline TheoremReport check_crossover_m3(const std::vector<double>& l_grid,
                                        double tol = 1e-12) {
  TheoremReport rep{TheoremId::CrossoverM3, 0, 0.0, tol, false};
  const double h = std::pow(3.0, -0.25);
  for (const double l : l_grid) {
    if (!(l > 0.0 && l < h)) {
      throw Error("check_crossover_m3: grid value outside (0, 3^-1/4)");
    }
    ModelSetSpec<double> spec{ModelSet::Set1, 1, 3, l};
    const auto model = build_simple_structure(spec);
    const auto sigma = implied_sigma(model);
    const Vectord lam = model.loadings.col(0);
    const auto ssq = block_offdiag_ssq(lam, sigma);
    const auto cf = closed_form_ssq_m3(l * l);
    double v = std::abs(ssq.single_variable - cf.first);
    v = std::max(v, std::abs(ssq.conventional - cf.second));
    // The inequality must be strict; equality counts as a full-tolerance miss.
    if (!(ssq.single_variable < ssq.conventional)) {
      v = std::max(v, std::max(ssq.single_variable - ssq.conventional, tol));
    }
    rep.max_violation = std::max(rep.max_violation, v);
    ++rep.conditions_checked;
  }
  detail::finish(rep);
  return rep;
}

/// Vanishing-loading limit, one factor: as the uniform loading l -> 0 the
/// conventional reproduction pushes every off-diagonal toward 1/p while the
/// true off-diagonals are l^2. Sub-checks run at different scales, so each
/// violation is normalized by its own tolerance and the report tolerance is 1:
/// |reproduced - 1/p| against 10*l, |sigma_od - l^2| against 1e-15.
inline TheoremReport check_small_loading_limit(const std::vector<int>& p_grid,
                                               double l_small = 1e-3) {
  if (!(l_small > 0.0 && l_small <= 0.01)) {
    throw Error("check_small_loading_limit: l_small must lie in (0, .01]");
  }
  TheoremReport rep{TheoremId::SmallLoadingLimit, 0, 0.0, 1.0, false};
  const double tol_rep = 10.0 * l_small;
  const double tol_sigma = 1e-15;
  for (const int p : p_grid) {
    ModelSetSpec<double> spec{ModelSet::Set1, 1, p, l_small};
    const auto model = build_simple_structure(spec);
    const auto sigma = implied_sigma(model);
    const auto conv = conventional_reproduced(model, sigma, ConventionalForm::ClosedForm);
    const double target = 1.0 / double(p);
    const double l2 = l_small * l_small;
    for (Index i = 0; i < sigma.dim(); ++i) {
      for (Index j = 0; j < sigma.dim(); ++j) {
        if (i == j) continue;
        rep.max_violation = std::max(
            rep.max_violation, std::abs(conv.sigma_rep(i, j) - target) / tol_rep);
        rep.max_violation = std::max(
            rep.max_violation, std::abs(sigma(i, j) - l2) / tol_sigma);
      }
    }
    ++rep.conditions_checked;
  }
  detail::finish(rep);
  return rep;
}

/// Residual bookkeeping for generic (pairwise-distinct) block loadings: the
/// single variable reproduces its own row and column of the block exactly,
/// 2(m-1) cells, and misses the remaining (m-1)(m-2) cells by a clearly
/// nonzero margin. Residuals must split cleanly: below 1e-12 or above 1e-8,
/// nothing in between. Checked through the full two-factor pipeline; the
/// off-block cells must also come out exact. The violation is the count of
/// misclassified cells plus count mismatches, so the tolerance is 0.5.
inline TheoremReport check_residual_counts(const std::vector<int>& per_factor_grid) {
  TheoremReport rep{TheoremId::ResidualCounts, 0, 0.0, 0.5, false};
  const double exact_tol = 1e-12;
  const double inexact_floor = 1e-8;
  for (const int m : per_factor_grid) {
    if (m < 2) throw Error("check_residual_counts: per_factor must be >= 2");
    const int q = 2;
    const Index p = Index(q) * Index(m);
    Matrixd loadings = Matrixd::Zero(p, q);
    for (Index f = 0; f < q; ++f) {
      for (Index i = 0; i < m; ++i) {
        loadings(f * m + i, f) = 0.5 + 0.02 * double(i);
      }
    }
    PopulationModel<double> model;
    model.loadings = loadings;
    model.phi = SymMatrixd::identity(q);
    model.psi2 =
        Vectord::Ones(p) - (loadings * loadings.transpose()).diagonal();
    const auto sigma = implied_sigma(model);
    const auto sel = select_single_variables(loadings);
    const auto rec = reproduce_from_weights(single_variable_weights(sel), sigma);

    double violation = 0.0;
    for (Index f = 0; f < q; ++f) {
      int exact = 0;
      int inexact = 0;
      for (Index a = f * m; a < (f + 1) * m; ++a) {
        for (Index b = f * m; b < (f + 1) * m; ++b) {
          if (a == b) continue;
          const double r = std::abs(sigma(a, b) - rec.sigma_rep(a, b));
          if (r < exact_tol) {
            ++exact;
          } else if (r > inexact_floor) {
            ++inexact;
          } else {
            violation += 1.0;  // forbidden middle ground
          }
        }
      }
      violation += std::abs(exact - 2 * (m - 1));
      violation += std::abs(inexact - (m - 1) * (m - 2));
    }
    // Off-block cells: orthogonal blocks reproduce as zeros, exactly.
    for (Index a = 0; a < p; ++a) {
      for (Index b = 0; b < p; ++b) {
        if (a / m == b / m) continue;
        if (std::abs(sigma(a, b) - rec.sigma_rep(a, b)) >= exact_tol) {
          violation += 1.0;
        }
      }
    }
    rep.max_violation = std::max(rep.max_violation, violation);
    ++rep.conditions_checked;
  }
  detail::finish(rep);
  return rep;
}

/// Paper-scale default grids.
inline std::vector<double> default_l_grid_m2() { return arith_grid(0.25, 0.95, 0.05); }
inline std::vector<int> default_q_grid() {
  std::vector<int> q(10);
  for (int i = 0; i < 10; ++i) q[static_cast<std::size_t>(i)] = i + 1;
  return q;
}
inline std::vector<double> default_l_grid_m3() { return arith_grid(0.25, 0.75, 0.05); }
inline std::vector<int> default_p_grid_limit() { return {4, 5, 10}; }
inline std::vector<int> default_per_factor_grid_counts() {
  std::vector<int> g;
  for (int m = 3; m <= 10; ++m) g.push_back(m);
  return g;
}

/// All four checks at their default grids.
inline std::vector<TheoremReport> run_all_checks() {
  return {
      check_exact_pairs(default_l_grid_m2(), default_q_grid()),
      check_crossover_m3(default_l_grid_m3()),
      check_small_loading_limit(default_p_grid_limit()),
      check_residual_counts(default_per_factor_grid_counts()),
  };
}

}  // namespace fsp
