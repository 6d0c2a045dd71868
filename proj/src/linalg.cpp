#include "qclab/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qclab/errors.hpp"

namespace qclab::linalg {

namespace {

/// Deterministic sign convention: largest-|.| component positive.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index imax = 0;
    double amax = -1.0;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > amax) {
        amax = a;
        imax = r;
      }
    }
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

Eigen::VectorXd random_unit_vector(Index n, RngStream& rng) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace

SymmetricOperator SymmetricOperator::dense(Eigen::MatrixXd matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw ValidationError("SymmetricOperator: matrix must be square");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double defect = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale) {
    throw ValidationError("SymmetricOperator: input not symmetric (defect " +
                          std::to_string(defect) + ")");
  }
  auto stored = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  const Index n = stored->rows();
  auto apply = [stored](const double* x, double* y) {
    Eigen::Map<const Eigen::VectorXd> xm(x, stored->rows());
    Eigen::Map<Eigen::VectorXd> ym(y, stored->rows());
    ym.noalias() = (*stored) * xm;
  };
  return SymmetricOperator(n, std::move(apply), stored);
}

SymmetricOperator SymmetricOperator::from_apply(Index dim, ApplyFn apply) {
  if (dim <= 0) throw ValidationError("SymmetricOperator: dim must be > 0");
  if (!apply) throw ValidationError("SymmetricOperator: missing apply");
  return SymmetricOperator(dim, std::move(apply), nullptr);
}

const Eigen::MatrixXd& SymmetricOperator::dense_matrix() const {
  if (!dense_) throw ValidationError("SymmetricOperator: no dense storage");
  return *dense_;
}

Eigen::VectorXd SymmetricOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(dim_);
  apply_(x.data(), y.data());
  return y;
}

EigenPairs dense_sym_eig(const SymmetricOperator& op, Index dense_limit) {
  if (!op.has_dense()) {
    throw ValidationError("dense_sym_eig: operator has no dense storage");
  }
  if (op.dim() > dense_limit) {
    throw CapacityError("dense_sym_eig: dimension " + std::to_string(op.dim()) +
                        " exceeds dense limit " + std::to_string(dense_limit));
  }
  const Index n = op.dim();
  EigenPairs out;
  out.vectors = op.dense_matrix();  // dsyevd overwrites with eigenvectors
  out.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(
      LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
      out.vectors.data(), static_cast<lapack_int>(n), out.values.data());
  if (info != 0) {
    throw NumericError("dense_sym_eig: dsyevd failed with info " +
                       std::to_string(info));
  }
  fix_signs(out.vectors);
  return out;
}

EigenPairs lanczos_lowest(const SymmetricOperator& op, Index k, double tol,
                          RngStream rng, const LanczosOptions& opts) {
  const Index n = op.dim();
  if (k < 1 || k >= n) {
    throw ValidationError("lanczos_lowest: need 1 <= k < dimension");
  }
  if (!(tol > 0.0)) {
    throw ValidationError("lanczos_lowest: tol must be positive");
  }

  Index cap = opts.max_basis;
  if (cap <= 0) cap = std::max<Index>(6 * k, 1600);
  cap = std::min(cap, n);
  if (cap < k + 1) cap = std::min(n, k + 1);

  Eigen::MatrixXd basis(n, cap);
  std::vector<double> alpha, beta;  // tridiagonal of the projected operator
  alpha.reserve(cap);
  beta.reserve(cap);

  basis.col(0) = random_unit_vector(n, rng);

  Eigen::VectorXd w(n);
  double norm_est = 1e-300;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd prev_ritz;
  double stability_gate = 0.1;  // tightened after each failed verification
  std::optional<EigenPairs> converged;

  // Forms Ritz vectors from the current basis and accepts them once every
  // requested residual satisfies the tolerance (always accepted when the
  // Krylov space is the whole space).
  auto try_accept = [&](Index m, bool force) {
    Eigen::Map<const Eigen::VectorXd> d(alpha.data(), m);
    Eigen::VectorXd sub(std::max<Index>(m - 1, 1));
    sub.setZero();
    for (Index i = 0; i + 1 < m; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, sub.head(std::max<Index>(m - 1, 0)),
                              Eigen::ComputeEigenvectors);
    const Index kk = std::min(k, m);
    Eigen::MatrixXd X = basis.leftCols(m) * es.eigenvectors().leftCols(kk);
    for (Index c = 0; c < kk; ++c) X.col(c).normalize();

    double worst = 0.0;
    Eigen::VectorXd Ax(n);
    for (Index c = 0; c < kk; ++c) {
      op.apply(X.col(c).data(), Ax.data());
      worst = std::max(worst, (Ax - es.eigenvalues()[c] * X.col(c)).norm());
    }
    best_residual = std::min(best_residual, worst);
    const double scale =
        std::max({norm_est, es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300});
    if (kk == k && (worst <= tol * scale || force)) {
      fix_signs(X);
      converged = EigenPairs{es.eigenvalues().head(k), std::move(X)};
      return true;
    }
    return false;
  };

  auto ritz_values = [&](Index m) {
    Eigen::Map<const Eigen::VectorXd> d(alpha.data(), m);
    Eigen::VectorXd sub(std::max<Index>(m - 1, 0));
    for (Index i = 0; i + 1 < m; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, sub, Eigen::EigenvaluesOnly);
    return Eigen::VectorXd(es.eigenvalues());
  };

  Index m = 0;
  while (m < cap) {
    const Index j = m;
    op.apply(basis.col(j).data(), w.data());
    if (j > 0) w.noalias() -= beta[j - 1] * basis.col(j - 1);
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w.noalias() -= a * basis.col(j);

    // Full reorthogonalization, two passes of classical Gram-Schmidt.
    auto V = basis.leftCols(j + 1);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd coef = V.transpose() * w;
      w.noalias() -= V * coef;
    }

    double b = w.norm();
    ++m;
    norm_est = std::max(norm_est, std::abs(a) + (j > 0 ? beta[j - 1] : 0.0) + b);

    if (m == cap) break;

    if (b < 1e-13 * std::max(1.0, norm_est)) {
      // Invariant subspace: restart with a fresh orthogonal direction.
      w = random_unit_vector(n, rng);
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd coef = V.transpose() * w;
        w.noalias() -= V * coef;
      }
      const double wn = w.norm();
      if (wn < 1e-12) break;  // space exhausted
      beta.push_back(0.0);
      basis.col(j + 1) = w / wn;
    } else {
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }

    if (m >= k + 2 && m % opts.check_every == 0) {
      Eigen::VectorXd theta = ritz_values(m);
      const double scale =
          std::max({norm_est, theta.cwiseAbs().maxCoeff(), 1e-300});
      bool stable = false;
      if (prev_ritz.size() >= k) {
        stable = true;
        for (Index i = 0; i < k; ++i) {
          if (std::abs(theta[i] - prev_ritz[i]) >
              std::max(tol * scale * stability_gate, 1e-300)) {
            stable = false;
            break;
          }
        }
      }
      prev_ritz = theta;
      if (stable) {
        if (try_accept(m, /*force=*/false)) break;
        stability_gate *= 0.01;  // residuals not there yet; wait longer
      }
    }
  }

  if (!converged) {
    // Final attempt at the cap; forced acceptance only when the Krylov
    // space is the entire space (then the factorization is exact).
    try_accept(m, /*force=*/(m == n));
  }
  if (converged) return std::move(*converged);

  throw IterationLimitError(
      "lanczos_lowest: no convergence within basis cap " + std::to_string(cap) +
          " (best residual " + std::to_string(best_residual) + ")",
      best_residual);
}

double symmetry_defect(const SymmetricOperator& op, RngStream rng, int probes) {
  const Index n = op.dim();
  double worst = 0.0;
  Eigen::VectorXd Ax(n), Ay(n);
  for (int p = 0; p < probes; ++p) {
    Eigen::VectorXd x = random_unit_vector(n, rng);
    Eigen::VectorXd y = random_unit_vector(n, rng);
    op.apply(x.data(), Ax.data());
    op.apply(y.data(), Ay.data());
    const double lhs = x.dot(Ay);
    const double rhs = Ax.dot(y);
    const double scale = std::max({Ax.norm(), Ay.norm(), 1e-300});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace qclab::linalg
