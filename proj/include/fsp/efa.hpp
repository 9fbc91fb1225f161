#pragma once

#include "fsp/matrix.hpp"
#include "fsp/model.hpp"
#include "fsp/rng.hpp"

// Sampling from a population model and recovering it: product-moment
// correlations, unweighted least squares extraction (iterated principal axis
// on the reduced correlation matrix), varimax and promax rotation.

namespace fsp {

struct Dataset {
  Matrixd values;  // n observations x p variables
  SeedTrace seed_trace;

  Index n() const { return values.rows(); }
  Index p() const { return values.cols(); }
};

struct UlsOptions {
  double conv_tol = 1e-6;         // max |communality change| to stop
  int max_iter = 1000;
  double uniqueness_floor = 1e-3; // psi2 never drops below this
};

struct EfaSolution {
  Matrixd loadings;     // extracted loadings (unrotated)
  Vectord psi2_hat;
  SymMatrixd phi_hat;   // identity for an unrotated solution
  bool converged = false;
  int iterations = 0;
  int heywood_clamped = 0;  // variables whose uniqueness ever hit the floor
};

/// Orthogonal rotation result: loadings = input * t, with t't = I.
struct VarimaxResult {
  Matrixd loadings;
  Matrixd t;
};

/// Oblique rotation result: pattern loadings plus the factor correlation
/// matrix (unit diagonal by construction).
struct PromaxResult {
  Matrixd pattern;
  SymMatrixd phi;
  Matrixd rotation;  // total rotation, pattern = unrotated * rotation
};

/// Draw n observations from the model: x = Lambda f + Psi e with f correlated
/// per Phi. Per observation, the q factor draws precede the p error draws, so
/// the stream layout is fixed by (n, p, q) alone.
Dataset sample_data(const PopulationModel<double>& model, Index n,
                    const SeedTrace& trace);

/// Product-moment correlations of the columns. Throws ZeroVarianceColumn for
/// a constant column.
SymMatrixd correlation_matrix(const Matrixd& values);
inline SymMatrixd correlation_matrix(const Dataset& data) {
  return correlation_matrix(data.values);
}

/// Unweighted least squares factor extraction: iterate principal axes of the
/// reduced correlation matrix starting from squared multiple correlations,
/// clamping negative eigenvalues to zero and communalities to the uniqueness
/// floor, until the largest communality change falls under conv_tol.
EfaSolution uls_extract(const SymMatrixd& r, Index q, const UlsOptions& opts = {});

/// Varimax with Kaiser row normalization, pairwise planar rotations. A single
/// factor is returned unchanged with t = [1].
VarimaxResult varimax(const Matrixd& unrotated);

/// Promax: varimax first, then an oblique least-squares fit to the
/// sign-preserving power target (|loading|^power). Requires q >= 2.
PromaxResult promax(const Matrixd& unrotated, int power = 4);

}  // namespace fsp
