#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>

#include "qclab/rng.hpp"

namespace qclab::linalg {

using Index = Eigen::Index;

/// Real symmetric linear operator given by a mat-vec contract, with
/// optional dense storage. Symmetry of dense input is validated on
/// construction; apply-only operators are probed in tests.
class SymmetricOperator {
 public:
  using ApplyFn = std::function<void(const double* x, double* y)>;

  static SymmetricOperator dense(Eigen::MatrixXd matrix);
  static SymmetricOperator from_apply(Index dim, ApplyFn apply);

  Index dim() const { return dim_; }
  bool has_dense() const { return dense_ != nullptr; }
  const Eigen::MatrixXd& dense_matrix() const;

  void apply(const double* x, double* y) const { apply_(x, y); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

 private:
  SymmetricOperator(Index dim, ApplyFn apply,
                    std::shared_ptr<const Eigen::MatrixXd> dense)
      : dim_(dim), apply_(std::move(apply)), dense_(std::move(dense)) {}

  Index dim_;
  ApplyFn apply_;
  std::shared_ptr<const Eigen::MatrixXd> dense_;
};

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full spectrum of a dense symmetric matrix (LAPACK dsyevd backend).
/// Eigenvector signs are fixed so the largest-magnitude component is
/// positive, keeping persisted artifacts reproducible.
///
/// Throws CapacityError above dense_limit and ValidationError when dense
/// storage is missing.
EigenPairs dense_sym_eig(const SymmetricOperator& op, Index dense_limit = 6000);

struct LanczosOptions {
  /// Hard cap on the Krylov basis (and so on memory). 0 picks a default
  /// based on k and the operator dimension.
  Index max_basis = 0;
  /// Convergence checks happen every check_every iterations.
  Index check_every = 64;
};

/// Lowest-k eigenpairs by the Lanczos iteration with full
/// reorthogonalization (every new basis vector is re-orthogonalized against
/// the whole stored basis, twice). Residuals are measured as
/// ||A v - E v|| <= tol * ||A||_est before returning.
///
/// Throws IterationLimitError (carrying the best residual) if the basis cap
/// is reached without convergence.
EigenPairs lanczos_lowest(const SymmetricOperator& op, Index k, double tol,
                          RngStream rng, const LanczosOptions& opts = {});

/// Max symmetry defect |<x,Ay> - <Ax,y>| over random probe pairs, scaled by
/// ||A||_est ||x|| ||y||; used by property tests and assembly asserts.
double symmetry_defect(const SymmetricOperator& op, RngStream rng,
                       int probes = 20);

}  // namespace qclab::linalg
