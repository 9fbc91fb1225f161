#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fsp/errors.hpp"
#include "fsp/matops.hpp"
#include "fsp/matrix.hpp"

// Population models with perfect simple structure: q factors, p/q salient
// variables per factor, block-diagonal loading pattern, correlation metric
// (unit diagonal, uniqueness = 1 - communality).

namespace fsp {

/// The four benchmark model families. Sets 1/2 are orthogonal, Sets 3/4 have
/// all factor intercorrelations at .40. Sets 1/3 use constant salient
/// loadings, Sets 2/4 alternate the mean loading +/- .10.
enum class ModelSet : int { Set1 = 1, Set2 = 2, Set3 = 3, Set4 = 4 };

enum class LoadingMode { Constant, Variable };

inline const char* to_string(ModelSet s) {
  switch (s) {
    case ModelSet::Set1: return "set1";
    case ModelSet::Set2: return "set2";
    case ModelSet::Set3: return "set3";
    case ModelSet::Set4: return "set4";
  }
  return "?";
}

inline const char* to_string(LoadingMode m) {
  return m == LoadingMode::Constant ? "constant" : "variable";
}

/// One cell of the population grid. Loading mode and factor correlation are
/// determined by the set, so they are exposed as derived accessors rather
/// than stored fields; the combination cannot go inconsistent.
template <typename Scalar = double>
struct ModelSetSpec {
  ModelSet set_id = ModelSet::Set1;
  int q = 1;            // number of factors, 1..10
  int per_factor = 3;   // salient variables per factor, 2..10
  Scalar mean_loading = Scalar(0.5);

  LoadingMode loading_mode() const {
    return (set_id == ModelSet::Set1 || set_id == ModelSet::Set3)
               ? LoadingMode::Constant
               : LoadingMode::Variable;
  }
  Scalar phi_offdiag() const {
    return (set_id == ModelSet::Set1 || set_id == ModelSet::Set2)
               ? Scalar(0)
               : Scalar(0.40);
  }
  bool oblique() const { return phi_offdiag() != Scalar(0); }
  Index p() const { return Index(q) * Index(per_factor); }

  void validate() const {
    if (q < 1 || q > 10) {
      throw Error("ModelSetSpec: q must be in 1..10, got " + std::to_string(q));
    }
    if (per_factor < 2 || per_factor > 10) {
      throw Error("ModelSetSpec: per_factor must be in 2..10, got " +
                  std::to_string(per_factor));
    }
    if (!(mean_loading > Scalar(0) && mean_loading < Scalar(1))) {
      throw Error("ModelSetSpec: mean_loading must lie in (0,1)");
    }
  }
};

/// Population parameters: p x q loadings, q x q factor correlations with unit
/// diagonal, uniquenesses psi2 = 1 - communality (all positive).
template <typename Scalar = double>
struct PopulationModel {
  Matrix<Scalar> loadings;
  SymMatrix<Scalar> phi;
  Vector<Scalar> psi2;

  Index p() const { return loadings.rows(); }
  Index q() const { return loadings.cols(); }
};

using PopulationModeld = PopulationModel<double>;

/// Salient loadings for one factor block: constant mode repeats the mean;
/// variable mode alternates mean+.10, mean-.10 starting high, so an odd block
/// gets one extra high loading. The block mean stays within .10/per_factor of
/// the nominal mean.
template <typename Scalar>
std::vector<Scalar> block_loadings(LoadingMode mode, int per_factor, Scalar mean) {
  std::vector<Scalar> out(static_cast<std::size_t>(per_factor));
  for (int i = 0; i < per_factor; ++i) {
    if (mode == LoadingMode::Constant) {
      out[static_cast<std::size_t>(i)] = mean;
    } else {
      out[static_cast<std::size_t>(i)] =
          (i % 2 == 0) ? mean + Scalar(0.10) : mean - Scalar(0.10);
    }
  }
  return out;
}

/// Build the perfect-simple-structure model for a grid cell. Factor f owns
/// variables [f*per_factor, (f+1)*per_factor); all cross loadings are zero.
template <typename Scalar>
PopulationModel<Scalar> build_simple_structure(const ModelSetSpec<Scalar>& spec) {
  spec.validate();
  const Index p = spec.p();
  const Index q = spec.q;
  const Index m = spec.per_factor;

  PopulationModel<Scalar> model;
  model.loadings = Matrix<Scalar>::Zero(p, q);
  const auto block = block_loadings<Scalar>(spec.loading_mode(), spec.per_factor,
                                            spec.mean_loading);
  for (Index f = 0; f < q; ++f) {
    for (Index i = 0; i < m; ++i) {
      model.loadings(f * m + i, f) = block[static_cast<std::size_t>(i)];
    }
  }

  Matrix<Scalar> phi = Matrix<Scalar>::Constant(q, q, spec.phi_offdiag());
  phi.diagonal().setOnes();
  model.phi = SymMatrix<Scalar>(phi);

  // Correlation metric: uniqueness is whatever the communality leaves over.
  Vector<Scalar> communality =
      (model.loadings * model.phi.mat() * model.loadings.transpose()).diagonal();
  model.psi2 = Vector<Scalar>::Ones(p) - communality;
  for (Index i = 0; i < p; ++i) {
    if (!(model.psi2(i) > Scalar(0))) {
      throw CommunalityAtLeastOne(
          "build_simple_structure: variable " + std::to_string(i) +
          " has communality >= 1 (loading too large)");
    }
  }
  return model;
}

/// Model-implied correlation matrix, Lambda Phi Lambda' + diag(psi2), with the
/// diagonal pinned to exactly 1. Definiteness needs no p x p eigensolve:
/// Lambda Phi Lambda' is PSD once Phi is PD, and adding diag(psi2) with
/// min(psi2) > 0 bounds the smallest eigenvalue from below by min(psi2).
template <typename Scalar>
SymMatrix<Scalar> implied_sigma(const PopulationModel<Scalar>& model) {
  if (model.psi2.size() != model.p()) {
    throw DimensionMismatch("implied_sigma: psi2 length " +
                            std::to_string(model.psi2.size()) + " != p " +
                            std::to_string(model.p()));
  }
  if (model.phi.dim() != model.q()) {
    throw DimensionMismatch("implied_sigma: phi dim " +
                            std::to_string(model.phi.dim()) + " != q " +
                            std::to_string(model.q()));
  }
  const auto phi_chk = spd_check(model.phi);
  if (!phi_chk.is_pd) {
    throw NotPositiveDefinite("implied_sigma: phi is not positive definite");
  }
  if (model.p() > 0 && !(model.psi2.minCoeff() > Scalar(0))) {
    throw NotPositiveDefinite("implied_sigma: psi2 has a non-positive entry");
  }
  Matrix<Scalar> sigma =
      model.loadings * model.phi.mat() * model.loadings.transpose();
  sigma += Matrix<Scalar>(model.psi2.asDiagonal());
  sigma.diagonal().setOnes();
  return SymMatrix<Scalar>(sigma);
}

/// One chosen variable per factor, plus the 0/1 selector matrix whose columns
/// are unit vectors at the chosen rows.
template <typename Scalar = double>
struct SingleVariableSelection {
  std::vector<Index> chosen;  // chosen[f] = variable index for factor f
  Matrix<Scalar> selector;    // p x q, selector(chosen[f], f) = 1
};

/// Pick one variable per factor maximizing the total absolute loading, with
/// each variable used at most once (exact assignment by dynamic programming
/// over variable index x factor subset). Ties prefer the lowest variable
/// index, then the lowest factor index.
template <typename Derived>
SingleVariableSelection<typename Derived::Scalar> select_single_variables(
    const Eigen::MatrixBase<Derived>& loadings) {
  using Scalar = typename Derived::Scalar;
  const Index p = loadings.rows();
  const Index q = loadings.cols();
  if (q < 1 || p < q) {
    throw DimensionMismatch("select_single_variables: need p >= q >= 1, got p=" +
                            std::to_string(p) + " q=" + std::to_string(q));
  }
  if (q > 20) {
    throw DimensionMismatch("select_single_variables: q > 20 unsupported");
  }

  const std::size_t nsub = std::size_t(1) << q;
  const Scalar ninf = -std::numeric_limits<Scalar>::infinity();
  // best[v * nsub + S]: max total |loading| assigning the factors in S to
  // variables v..p-1.
  std::vector<Scalar> best(static_cast<std::size_t>(p + 1) * nsub, ninf);
  best[static_cast<std::size_t>(p) * nsub + 0] = Scalar(0);
  for (Index v = p - 1; v >= 0; --v) {
    for (std::size_t s = 0; s < nsub; ++s) {
      Scalar val = best[static_cast<std::size_t>(v + 1) * nsub + s];  // skip v
      for (Index f = 0; f < q; ++f) {
        if (!(s & (std::size_t(1) << f))) continue;
        const std::size_t rest = s & ~(std::size_t(1) << f);
        const Scalar with =
            best[static_cast<std::size_t>(v + 1) * nsub + rest];
        if (with == ninf) continue;
        const Scalar cand = std::abs(loadings(v, f)) + with;
        if (cand > val) val = cand;
      }
      best[static_cast<std::size_t>(v) * nsub + s] = val;
    }
  }

  SingleVariableSelection<Scalar> sel;
  sel.chosen.assign(static_cast<std::size_t>(q), Index(-1));
  std::size_t s = nsub - 1;
  for (Index v = 0; v < p && s != 0; ++v) {
    const Scalar target = best[static_cast<std::size_t>(v) * nsub + s];
    bool assigned = false;
    // Assigning at the earliest possible variable (and lowest factor) wins
    // ties; the candidate value recomputes the exact expression used to fill
    // the table, so the equality test is reliable.
    for (Index f = 0; f < q && !assigned; ++f) {
      if (!(s & (std::size_t(1) << f))) continue;
      const std::size_t rest = s & ~(std::size_t(1) << f);
      const Scalar with = best[static_cast<std::size_t>(v + 1) * nsub + rest];
      if (with == ninf) continue;
      if (std::abs(loadings(v, f)) + with == target) {
        sel.chosen[static_cast<std::size_t>(f)] = v;
        s = rest;
        assigned = true;
      }
    }
  }
  if (s != 0) {
    throw Error("select_single_variables: assignment reconstruction failed");
  }
  sel.selector = Matrix<Scalar>::Zero(p, q);
  for (Index f = 0; f < q; ++f) {
    sel.selector(sel.chosen[static_cast<std::size_t>(f)], f) = Scalar(1);
  }
  return sel;
}

}  // namespace fsp
