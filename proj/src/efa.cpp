#include "fsp/efa.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fsp/errors.hpp"
#include "fsp/matops.hpp"

namespace fsp {

Dataset sample_data(const PopulationModel<double>& model, Index n,
                    const SeedTrace& trace) {
  if (n < 2) {
    throw DimensionMismatch("sample_data: need n >= 2");
  }
  const Index p = model.p();
  const Index q = model.q();
  const Matrixd l_phi = cholesky_lower(model.phi);
  const Vectord psi = model.psi2.cwiseSqrt();

  Dataset data;
  data.seed_trace = trace;
  data.values.resize(n, p);
  NormalStream normals(trace);
  Vectord z(q), f(q);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < q; ++k) z(k) = normals.next();
    f.noalias() = l_phi * z;
    for (Index j = 0; j < p; ++j) {
      data.values(i, j) =
          model.loadings.row(j).dot(f) + psi(j) * normals.next();
    }
  }
  return data;
}

SymMatrixd correlation_matrix(const Matrixd& values) {
  const Index n = values.rows();
  const Index p = values.cols();
  if (n < 2 || p < 1) {
    throw DimensionMismatch("correlation_matrix: need n >= 2 and p >= 1");
  }
  Matrixd centered = values.rowwise() - values.colwise().mean();
  Vectord ssq = centered.colwise().squaredNorm();
  for (Index j = 0; j < p; ++j) {
    const double mean = values.col(j).mean();
    const double floor = double(n) * 1e-28 * (1.0 + mean * mean);
    if (ssq(j) <= floor) {
      throw ZeroVarianceColumn("correlation_matrix: column " +
                               std::to_string(j) + " is constant");
    }
  }
  Vectord inv_norm = ssq.cwiseSqrt().cwiseInverse();
  Matrixd r = inv_norm.asDiagonal() * (centered.transpose() * centered) *
              inv_norm.asDiagonal();
  r.diagonal().setOnes();
  return SymMatrixd(r);
}

namespace {

/// Squared multiple correlations, 1 - 1/diag(R^-1). Falls back to the largest
/// absolute off-diagonal per row when R is not invertible.
Vectord smc_start(const SymMatrixd& r) {
  const Index p = r.dim();
  Eigen::LLT<Matrixd> llt(r.mat());
  if (llt.info() == Eigen::Success) {
    const Matrixd inv = llt.solve(Matrixd::Identity(p, p));
    Vectord h2 = Vectord::Ones(p) - inv.diagonal().cwiseInverse();
    return h2.cwiseMax(0.0);
  }
  Vectord h2(p);
  for (Index i = 0; i < p; ++i) {
    double best = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (j != i) best = std::max(best, std::abs(r(i, j)));
    }
    h2(i) = best;
  }
  return h2;
}

/// Loadings from the top q eigenpairs of the reduced matrix, negative
/// eigenvalues clamped to zero.
Matrixd principal_loadings(const Matrixd& reduced, Index q) {
  Eigen::SelfAdjointEigenSolver<Matrixd> es(reduced);
  const Index p = reduced.rows();
  Matrixd loadings(p, q);
  for (Index k = 0; k < q; ++k) {
    const Index src = p - 1 - k;  // eigenvalues come back ascending
    const double ev = std::max(es.eigenvalues()(src), 0.0);
    loadings.col(k) = es.eigenvectors().col(src) * std::sqrt(ev);
  }
  return loadings;
}

}  // namespace

EfaSolution uls_extract(const SymMatrixd& r, Index q, const UlsOptions& opts) {
  const Index p = r.dim();
  if (q < 1 || q >= p) {
    throw DimensionMismatch("uls_extract: need 1 <= q < p, got q=" +
                            std::to_string(q) + " p=" + std::to_string(p));
  }
  const double h2_cap = 1.0 - opts.uniqueness_floor;

  EfaSolution sol;
  std::vector<bool> clamped(static_cast<std::size_t>(p), false);
  Vectord h2 = smc_start(r).cwiseMin(h2_cap);
  Matrixd reduced = r.mat();
  for (int it = 1; it <= opts.max_iter; ++it) {
    reduced.diagonal() = h2;
    sol.loadings = principal_loadings(reduced, q);
    Vectord h2_new = sol.loadings.rowwise().squaredNorm();
    for (Index i = 0; i < p; ++i) {
      if (h2_new(i) > h2_cap) {
        h2_new(i) = h2_cap;
        clamped[static_cast<std::size_t>(i)] = true;
      }
    }
    const double delta = (h2_new - h2).cwiseAbs().maxCoeff();
    h2 = h2_new;
    sol.iterations = it;
    if (delta < opts.conv_tol) {
      sol.converged = true;
      break;
    }
  }
  sol.psi2_hat = Vectord::Ones(p) - h2;
  sol.phi_hat = SymMatrixd::identity(q);
  sol.heywood_clamped =
      int(std::count(clamped.begin(), clamped.end(), true));
  return sol;
}

namespace {

/// Raw varimax criterion of Kaiser-normalized loadings.
double varimax_criterion(const Matrixd& w) {
  const double p = double(w.rows());
  double total = 0.0;
  for (Index j = 0; j < w.cols(); ++j) {
    const auto sq = w.col(j).array().square();
    total += (p * sq.square().sum() - sq.sum() * sq.sum()) / (p * p);
  }
  return total;
}

}  // namespace

VarimaxResult varimax(const Matrixd& unrotated) {
  const Index p = unrotated.rows();
  const Index q = unrotated.cols();
  if (q < 1 || p < 1) {
    throw DimensionMismatch("varimax: empty loading matrix");
  }
  if (q == 1) {
    return {unrotated, Matrixd::Identity(1, 1)};
  }

  // Kaiser normalization: rotate rows projected to the unit sphere, then put
  // the communalities back.
  Vectord h = unrotated.rowwise().norm();
  Vectord h_safe = h.cwiseMax(1e-12);
  Matrixd w = h_safe.cwiseInverse().asDiagonal() * unrotated;
  Matrixd t = Matrixd::Identity(q, q);

  const double pd = double(p);
  double value = varimax_criterion(w);
  for (int sweep = 0; sweep < 100; ++sweep) {
    for (Index i = 0; i + 1 < q; ++i) {
      for (Index j = i + 1; j < q; ++j) {
        const Vectord x = w.col(i);
        const Vectord y = w.col(j);
        const Eigen::ArrayXd u = x.array().square() - y.array().square();
        const Eigen::ArrayXd v = 2.0 * x.array() * y.array();
        const double a = u.sum();
        const double b = v.sum();
        const double c = (u.square() - v.square()).sum();
        const double d = 2.0 * (u * v).sum();
        const double num = d - 2.0 * a * b / pd;
        const double den = c - (a * a - b * b) / pd;
        const double theta = 0.25 * std::atan2(num, den);
        if (std::abs(theta) < 1e-14) continue;
        const double cs = std::cos(theta);
        const double sn = std::sin(theta);
        w.col(i) = cs * x + sn * y;
        w.col(j) = -sn * x + cs * y;
        const Vectord ti = t.col(i);
        const Vectord tj = t.col(j);
        t.col(i) = cs * ti + sn * tj;
        t.col(j) = -sn * ti + cs * tj;
      }
    }
    const double value_new = varimax_criterion(w);
    const double improvement = value_new - value;
    value = value_new;
    if (improvement < 1e-8) break;
  }
  return {Matrixd(h_safe.asDiagonal() * w), t};
}

PromaxResult promax(const Matrixd& unrotated, int power) {
  if (unrotated.cols() < 2) {
    throw DimensionMismatch("promax: need at least two factors");
  }
  if (power < 2) {
    throw Error("promax: power must be >= 2");
  }
  const VarimaxResult vm = varimax(unrotated);
  const Matrixd& v = vm.loadings;

  // Sign-preserving power target sharpens the simple structure.
  Matrixd target =
      v.array() * v.array().abs().pow(double(power - 1));

  // Least-squares oblique transform v -> target, then rescale so the implied
  // factor correlation matrix has a unit diagonal.
  const Matrixd vtv = v.transpose() * v;
  Matrixd u = vtv.ldlt().solve(v.transpose() * target);
  SymMatrixd utu(Matrixd(u.transpose() * u));
  const SymMatrixd utu_inv = invert_spd(utu);
  u = u * utu_inv.mat().diagonal().cwiseSqrt().asDiagonal();

  PromaxResult out;
  out.pattern = v * u;
  out.rotation = vm.t * u;
  SymMatrixd gram(Matrixd(u.transpose() * u));
  Matrixd phi = invert_spd(gram).mat();
  phi.diagonal().setOnes();
  out.phi = SymMatrixd(phi);
  return out;
}

}  // namespace fsp
