#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "hypflow/area_element.hpp"
#include "hypflow/metric.hpp"
#include "hypflow/surface.hpp"

namespace hypflow {

enum class CurvatureKind { K, R, Rtilde, A };

const char* to_string(CurvatureKind k);

struct CurvatureVector {
  Eigen::VectorXd values;
  CurvatureKind kind = CurvatureKind::K;
  std::uint64_t metric_tag = 0;

  double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

// K_i = 2 pi minus the sum of corner angles incident to vertex i.
// Bounds (2 - d_i) pi < K_i < 2 pi hold for every metric.
CurvatureVector gauss_curvature(const Surface& s, const PackingMetric& m);

// R_i = K_i / (4 pi sinh^2(r_i / 2)), K divided by the packed disk area.
CurvatureVector modified_curvature(const Surface& s, const PackingMetric& m);

// K_i / (2 pi sinh^2 r_i), the velocity of the flow in u-coordinates.
CurvatureVector tilde_curvature(const Surface& s, const PackingMetric& m);

// K_i / A_i(r_i) for an arbitrary positive area element.
CurvatureVector a_curvature(const Surface& s, const PackingMetric& m, const AreaElement& ae);

// Sum of per-face angle deficits pi - (angle sum); strictly positive.
double total_area(const Surface& s, const PackingMetric& m);

// sum K_i - 2 pi chi - Area. An exact identity, ~0 at machine precision
// for every metric; useful as a global self-check.
double gauss_bonnet_residual(const Surface& s, const PackingMetric& m);

struct SingularJacobianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The Jacobian L = dK/du. Symmetric positive definite, and splits as
// L = A + L_B with A = diag(L 1) a positive diagonal and L_B a weighted
// graph Laplacian (off-diagonals -B_ij with B_ij > 0, zero row sums).
// Stored dense up to `dense_threshold` vertices, sparse above.
class CurvatureJacobian {
 public:
  CurvatureJacobian(Eigen::MatrixXd dense, Eigen::VectorXd a_diag);
  CurvatureJacobian(Eigen::SparseMatrix<double> sparse, Eigen::VectorXd a_diag);

  int size() const { return static_cast<int>(a_diag_.size()); }
  bool is_dense() const { return std::holds_alternative<Eigen::MatrixXd>(mat_); }

  const Eigen::MatrixXd& dense() const;
  const Eigen::SparseMatrix<double>& sparse() const;
  Eigen::MatrixXd to_dense() const;

  // Diagonal part of the decomposition, A = diag(L 1).
  const Eigen::VectorXd& a_diag() const { return a_diag_; }
  // Laplacian part L_B = L - diag(A); annihilates constant vectors.
  Eigen::MatrixXd laplacian_part_dense() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;  // L x

  // SPD solve via Cholesky; throws SingularJacobianError if the
  // factorization fails (the matrix is expected to be positive definite,
  // a failure indicates a genuinely broken input and is never papered over).
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  std::variant<Eigen::MatrixXd, Eigen::SparseMatrix<double>> mat_;
  Eigen::VectorXd a_diag_;
};

CurvatureJacobian curvature_jacobian(const Surface& s, const PackingMetric& m,
                                     int dense_threshold = 2000);

}  // namespace hypflow
