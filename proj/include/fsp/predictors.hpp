#pragma once

#include <string>

#include "fsp/errors.hpp"
#include "fsp/matops.hpp"
#include "fsp/matrix.hpp"
#include "fsp/model.hpp"

// Factor score predictor weights B (scores are x'B) and the covariance
// matrices those predictors reproduce. All predictors of the form
// B (B' Sigma B)^-1 B' Sigma reproduce the same matrix whenever their weights
// span the same column space, which is what makes the closed forms below
// interchangeable with the weight-based route.

namespace fsp {

enum class PredictorKind { Regression, Bartlett, AndersonRubin, SingleVariable };

inline const char* to_string(PredictorKind k) {
  switch (k) {
    case PredictorKind::Regression: return "regression";
    case PredictorKind::Bartlett: return "bartlett";
    case PredictorKind::AndersonRubin: return "anderson_rubin";
    case PredictorKind::SingleVariable: return "single_variable";
  }
  return "?";
}

template <typename Scalar = double>
struct PredictorWeights {
  PredictorKind kind;
  Matrix<Scalar> b;  // p x q
};

/// The two factors of the reproduced covariance: A = Sigma B (B' Sigma B)^-1
/// and C = B' Sigma B, so that Sigma_rep = A C A'.
template <typename Scalar = double>
struct RegressionComponents {
  Matrix<Scalar> a;     // p x q
  SymMatrix<Scalar> c;  // q x q
};

/// Where a reproduced covariance came from.
struct ReproducedSource {
  enum class Form { FromWeights, ClosedForm, Joreskog } form = Form::FromWeights;
  PredictorKind kind = PredictorKind::Regression;  // meaningful for FromWeights
};

template <typename Scalar = double>
struct ReproducedCov {
  SymMatrix<Scalar> sigma_rep;  // p x p, PSD by construction
  ReproducedSource source;
};

enum class ConventionalForm { ClosedForm, Joreskog };

namespace detail {

template <typename Scalar>
void require_model_sigma(const PopulationModel<Scalar>& model,
                         const SymMatrix<Scalar>& sigma, const char* caller) {
  if (sigma.dim() != model.p()) {
    throw DimensionMismatch(std::string(caller) + ": sigma dim " +
                            std::to_string(sigma.dim()) + " != p " +
                            std::to_string(model.p()));
  }
}

/// Lambda' Psi^-2 as an explicit matrix; psi2 entries must be positive.
template <typename Scalar>
Matrix<Scalar> lt_psi_inv2(const PopulationModel<Scalar>& model,
                           const char* caller) {
  if (model.p() > 0 && !(model.psi2.minCoeff() > Scalar(0))) {
    throw NotPositiveDefinite(std::string(caller) +
                              ": psi2 has a non-positive entry");
  }
  Vector<Scalar> w = model.psi2.cwiseInverse();
  return model.loadings.transpose() * w.asDiagonal();
}

}  // namespace detail

/// Regression (Thurstone) weights, B = Sigma^-1 Lambda Phi.
template <typename Scalar>
PredictorWeights<Scalar> regression_weights(const PopulationModel<Scalar>& model,
                                            const SymMatrix<Scalar>& sigma) {
  detail::require_model_sigma(model, sigma, "regression_weights");
  const SymMatrix<Scalar> sigma_inv = invert_spd(sigma);
  return {PredictorKind::Regression,
          Matrix<Scalar>(sigma_inv.mat() * model.loadings * model.phi.mat())};
}

/// Bartlett weights, B = Psi^-2 Lambda (Lambda' Psi^-2 Lambda)^-1; conditionally
/// unbiased: Lambda' B = I.
template <typename Scalar>
PredictorWeights<Scalar> bartlett_weights(const PopulationModel<Scalar>& model) {
  const Matrix<Scalar> ltw = detail::lt_psi_inv2(model, "bartlett_weights");
  SymMatrix<Scalar> gram(Matrix<Scalar>(ltw * model.loadings));
  SymMatrix<Scalar> gram_inv;
  try {
    gram_inv = invert_spd(gram);
  } catch (const NotPositiveDefinite&) {
    throw SingularLoadings(
        "bartlett_weights: Lambda' Psi^-2 Lambda is singular (rank-deficient "
        "loadings)");
  }
  return {PredictorKind::Bartlett, Matrix<Scalar>(ltw.transpose() * gram_inv.mat())};
}

/// Anderson-Rubin weights, B = Psi^-2 Lambda (Lambda' Psi^-2 Sigma Psi^-2
/// Lambda)^-1/2; the predictor covariance B' Sigma B is exactly I.
template <typename Scalar>
PredictorWeights<Scalar> anderson_rubin_weights(const PopulationModel<Scalar>& model,
                                                const SymMatrix<Scalar>& sigma) {
  detail::require_model_sigma(model, sigma, "anderson_rubin_weights");
  const Matrix<Scalar> ltw = detail::lt_psi_inv2(model, "anderson_rubin_weights");
  SymMatrix<Scalar> core(Matrix<Scalar>(ltw * sigma.mat() * ltw.transpose()));
  SymMatrix<Scalar> core_inv_sqrt;
  try {
    core_inv_sqrt = inv_sqrt_spd(core);
  } catch (const NotPositiveDefinite&) {
    throw SingularLoadings(
        "anderson_rubin_weights: Lambda' Psi^-2 Sigma Psi^-2 Lambda is "
        "singular (rank-deficient loadings)");
  }
  return {PredictorKind::AndersonRubin,
          Matrix<Scalar>(ltw.transpose() * core_inv_sqrt.mat())};
}

/// Selector weights: B has one unit column per factor at the chosen variable.
template <typename Scalar>
PredictorWeights<Scalar> single_variable_weights(
    const SingleVariableSelection<Scalar>& selection) {
  return {PredictorKind::SingleVariable, selection.selector};
}

/// A = Sigma B (B' Sigma B)^-1 and C = B' Sigma B for arbitrary weights.
template <typename Scalar>
RegressionComponents<Scalar> regression_components(const Matrix<Scalar>& b,
                                                   const SymMatrix<Scalar>& sigma) {
  if (b.rows() != sigma.dim()) {
    throw DimensionMismatch("regression_components: B rows " +
                            std::to_string(b.rows()) + " != sigma dim " +
                            std::to_string(sigma.dim()));
  }
  const Matrix<Scalar> sb = sigma.mat() * b;
  SymMatrix<Scalar> c(Matrix<Scalar>(b.transpose() * sb));
  const SymMatrix<Scalar> c_inv = invert_spd(c);  // throws NotPositiveDefinite
  return {Matrix<Scalar>(sb * c_inv.mat()), c};
}

/// Covariance reproduced by regression-predicting every variable from the
/// scores x'B: Sigma_rep = Sigma B (B' Sigma B)^-1 B' Sigma = A C A'.
template <typename Scalar>
ReproducedCov<Scalar> reproduce_from_weights(const PredictorWeights<Scalar>& weights,
                                             const SymMatrix<Scalar>& sigma) {
  const auto comps = regression_components(weights.b, sigma);
  SymMatrix<Scalar> rep(
      Matrix<Scalar>(comps.a * comps.c.mat() * comps.a.transpose()));
  return {rep, {ReproducedSource::Form::FromWeights, weights.kind}};
}

/// Closed form shared by every predictor whose weights span the column space
/// of Sigma^-1 Lambda: Lambda (Lambda' Sigma^-1 Lambda)^-1 Lambda'.
template <typename Scalar>
SymMatrix<Scalar> eq_closed_form_reproduced(const Matrix<Scalar>& loadings,
                                            const SymMatrix<Scalar>& sigma) {
  if (loadings.rows() != sigma.dim()) {
    throw DimensionMismatch("eq_closed_form_reproduced: loadings rows " +
                            std::to_string(loadings.rows()) + " != sigma dim " +
                            std::to_string(sigma.dim()));
  }
  const SymMatrix<Scalar> sigma_inv = invert_spd(sigma);
  SymMatrix<Scalar> gram(
      Matrix<Scalar>(loadings.transpose() * sigma_inv.mat() * loadings));
  SymMatrix<Scalar> gram_inv;
  try {
    gram_inv = invert_spd(gram);
  } catch (const NotPositiveDefinite&) {
    throw SingularLoadings(
        "eq_closed_form_reproduced: Lambda' Sigma^-1 Lambda is singular "
        "(rank-deficient loadings)");
  }
  return SymMatrix<Scalar>(
      Matrix<Scalar>(loadings * gram_inv.mat() * loadings.transpose()));
}

/// Same matrix through the uniqueness-weighted identity:
/// Lambda ((Lambda' Psi^-2 Lambda)^-1 + Phi) Lambda'.
template <typename Scalar>
SymMatrix<Scalar> joreskog_reproduced(const PopulationModel<Scalar>& model) {
  const Matrix<Scalar> ltw = detail::lt_psi_inv2(model, "joreskog_reproduced");
  SymMatrix<Scalar> gram(Matrix<Scalar>(ltw * model.loadings));
  SymMatrix<Scalar> gram_inv;
  try {
    gram_inv = invert_spd(gram);
  } catch (const NotPositiveDefinite&) {
    throw SingularLoadings(
        "joreskog_reproduced: Lambda' Psi^-2 Lambda is singular");
  }
  Matrix<Scalar> mid = gram_inv.mat() + model.phi.mat();
  return SymMatrix<Scalar>(
      Matrix<Scalar>(model.loadings * mid * model.loadings.transpose()));
}

/// Reproduced covariance of the conventional (regression-class) predictors via
/// either closed form.
template <typename Scalar>
ReproducedCov<Scalar> conventional_reproduced(const PopulationModel<Scalar>& model,
                                              const SymMatrix<Scalar>& sigma,
                                              ConventionalForm form) {
  ReproducedCov<Scalar> out;
  if (form == ConventionalForm::ClosedForm) {
    detail::require_model_sigma(model, sigma, "conventional_reproduced");
    out.sigma_rep = eq_closed_form_reproduced(model.loadings, sigma);
    out.source.form = ReproducedSource::Form::ClosedForm;
  } else {
    out.sigma_rep = joreskog_reproduced(model);
    out.source.form = ReproducedSource::Form::Joreskog;
  }
  return out;
}

}  // namespace fsp
