#pragma once

#include <Eigen/Dense>

#include <vector>

namespace steklov::numerics {

// Dense symmetric matrix. Only the upper triangle of the source is read, so
// symmetry holds exactly by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& source);

  static SymMatrix diagonal(const std::vector<double>& diag);

  Eigen::Index order() const { return data_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
  const Eigen::MatrixXd& dense() const { return data_; }

  // Frobenius norm.
  double norm() const { return data_.norm(); }

 private:
  Eigen::MatrixXd data_;
};

struct GeneralizedEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // columns, M-orthonormal
  int dropped = 0;             // Gram directions discarded
};

// Symmetric-definite pencil K v = mu M v. M is eigendecomposed, directions with
// eigenvalue < drop * lambda_max(M) are discarded, the rest whitened, and the
// reduced standard problem solved. Throws NumericalError if M has an
// eigenvalue below -1e-12 * ||M||.
GeneralizedEigen sym_geig(const SymMatrix& k, const SymMatrix& m, double drop);

}  // namespace steklov::numerics
