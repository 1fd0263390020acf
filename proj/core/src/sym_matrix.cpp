#include "steklov/numerics/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "steklov/errors.hpp"

namespace steklov::numerics {

SymMatrix::SymMatrix(const Eigen::MatrixXd& source) {
  if (source.rows() != source.cols()) {
    throw InvalidArgument("SymMatrix needs a square source");
  }
  if (!source.allFinite()) throw NumericalError("SymMatrix entries not finite");
  data_ = source.selfadjointView<Eigen::Upper>();
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(diag.size()),
                                            static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  return SymMatrix(d);
}

GeneralizedEigen sym_geig(const SymMatrix& k, const SymMatrix& m, double drop) {
  if (k.order() != m.order()) {
    throw InvalidArgument("sym_geig: K and M differ in order");
  }
  if (!(drop >= 0)) throw InvalidArgument("sym_geig: drop must be >= 0");
  const Eigen::Index n = m.order();
  GeneralizedEigen out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(m.dense());
  if (gram.info() != Eigen::Success) {
    throw NumericalError("sym_geig: eigendecomposition of M failed");
  }
  const Eigen::VectorXd& lam = gram.eigenvalues();
  const double lam_max = lam(n - 1);
  const double scale = std::max(m.norm(), std::abs(lam_max));
  if (!(lam_max > 0)) throw NumericalError("sym_geig: M has no positive direction");
  if (lam(0) < -1e-12 * scale) {
    throw NumericalError("sym_geig: M is indefinite (lambda_min = " +
                         std::to_string(lam(0)) + ")");
  }

  const double cutoff = drop * lam_max;
  Eigen::Index first = 0;
  while (first < n && !(lam(first) >= cutoff && lam(first) > 0)) ++first;
  const Eigen::Index kept = n - first;
  out.dropped = static_cast<int>(first);

  // Whitening map W with W^T M W = I on the retained directions.
  Eigen::MatrixXd w = gram.eigenvectors().rightCols(kept);
  for (Eigen::Index j = 0; j < kept; ++j) {
    w.col(j) /= std::sqrt(lam(first + j));
  }
  Eigen::MatrixXd reduced = w.transpose() * k.dense() * w;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced);
  if (es.info() != Eigen::Success) {
    throw NumericalError("sym_geig: reduced eigenproblem failed");
  }
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kept);
  out.vectors = w * es.eigenvectors();
  return out;
}

}  // namespace steklov::numerics
