#include "hypflow/curvature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <numbers>
#include <vector>

#include "hypflow/format.hpp"
#include "hypflow/hypgeom.hpp"

namespace hypflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<double, 3> face_radii(const Surface& s, const PackingMetric& m, int f) {
  const auto& tri = s.faces[static_cast<size_t>(f)];
  return {m.r()[tri[0]], m.r()[tri[1]], m.r()[tri[2]]};
}

void check_sizes(const Surface& s, const PackingMetric& m) {
  if (m.size() != s.num_vertices())
    throw std::invalid_argument("metric has " + std::to_string(m.size()) + " radii but the surface has " +
                                std::to_string(s.num_vertices()) + " vertices");
}

}  // namespace

const char* to_string(CurvatureKind k) {
  switch (k) {
    case CurvatureKind::K: return "K";
    case CurvatureKind::R: return "R";
    case CurvatureKind::Rtilde: return "Rtilde";
    case CurvatureKind::A: return "A";
  }
  return "?";
}

CurvatureVector gauss_curvature(const Surface& s, const PackingMetric& m) {
  check_sizes(s, m);
  Eigen::VectorXd k = Eigen::VectorXd::Constant(s.num_vertices(), kTwoPi);
  for (int f = 0; f < s.num_faces(); ++f) {
    const TriangleGeom g = triangle_geom(face_radii(s, m, f), s.face_weights(f));
    const auto& tri = s.faces[static_cast<size_t>(f)];
    for (int c = 0; c < 3; ++c) k[tri[static_cast<size_t>(c)]] -= g.angles[static_cast<size_t>(c)];
  }
  return {std::move(k), CurvatureKind::K, m.tag()};
}

CurvatureVector a_curvature(const Surface& s, const PackingMetric& m, const AreaElement& ae) {
  CurvatureVector cv = gauss_curvature(s, m);
  for (Eigen::Index i = 0; i < cv.values.size(); ++i) cv.values[i] /= ae(m.r()[i]);
  cv.kind = CurvatureKind::A;
  return cv;
}

CurvatureVector modified_curvature(const Surface& s, const PackingMetric& m) {
  CurvatureVector cv = a_curvature(s, m, AreaElement::disk());
  cv.kind = CurvatureKind::R;
  return cv;
}

CurvatureVector tilde_curvature(const Surface& s, const PackingMetric& m) {
  CurvatureVector cv = a_curvature(s, m, AreaElement::sinh2());
  cv.kind = CurvatureKind::Rtilde;
  return cv;
}

double total_area(const Surface& s, const PackingMetric& m) {
  check_sizes(s, m);
  double area = 0.0;
  for (int f = 0; f < s.num_faces(); ++f)
    area += triangle_geom(face_radii(s, m, f), s.face_weights(f)).area;
  return area;
}

double gauss_bonnet_residual(const Surface& s, const PackingMetric& m) {
  return gauss_curvature(s, m).values.sum() - kTwoPi * s.euler_characteristic() - total_area(s, m);
}

// ---------------------------------------------------------------------------
// CurvatureJacobian
// ---------------------------------------------------------------------------

CurvatureJacobian::CurvatureJacobian(Eigen::MatrixXd dense, Eigen::VectorXd a_diag)
    : mat_(std::move(dense)), a_diag_(std::move(a_diag)) {}

CurvatureJacobian::CurvatureJacobian(Eigen::SparseMatrix<double> sparse, Eigen::VectorXd a_diag)
    : mat_(std::move(sparse)), a_diag_(std::move(a_diag)) {}

const Eigen::MatrixXd& CurvatureJacobian::dense() const {
  if (!is_dense()) throw std::logic_error("Jacobian is stored sparse");
  return std::get<Eigen::MatrixXd>(mat_);
}

const Eigen::SparseMatrix<double>& CurvatureJacobian::sparse() const {
  if (is_dense()) throw std::logic_error("Jacobian is stored dense");
  return std::get<Eigen::SparseMatrix<double>>(mat_);
}

Eigen::MatrixXd CurvatureJacobian::to_dense() const {
  if (is_dense()) return std::get<Eigen::MatrixXd>(mat_);
  return Eigen::MatrixXd(std::get<Eigen::SparseMatrix<double>>(mat_));
}

Eigen::MatrixXd CurvatureJacobian::laplacian_part_dense() const {
  Eigen::MatrixXd lb = to_dense();
  lb.diagonal() -= a_diag_;
  return lb;
}

Eigen::VectorXd CurvatureJacobian::apply(const Eigen::VectorXd& x) const {
  if (is_dense()) return std::get<Eigen::MatrixXd>(mat_) * x;
  return std::get<Eigen::SparseMatrix<double>>(mat_) * x;
}

Eigen::VectorXd CurvatureJacobian::solve(const Eigen::VectorXd& rhs) const {
  if (is_dense()) {
    Eigen::LLT<Eigen::MatrixXd> llt(std::get<Eigen::MatrixXd>(mat_));
    if (llt.info() != Eigen::Success)
      throw SingularJacobianError(
          "Cholesky factorization of the curvature Jacobian failed; the matrix should be "
          "symmetric positive definite for every valid metric");
    return llt.solve(rhs);
  }
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(std::get<Eigen::SparseMatrix<double>>(mat_));
  if (llt.info() != Eigen::Success)
    throw SingularJacobianError(
        "sparse Cholesky factorization of the curvature Jacobian failed; the matrix should be "
        "symmetric positive definite for every valid metric");
  return llt.solve(rhs);
}

CurvatureJacobian curvature_jacobian(const Surface& s, const PackingMetric& m, int dense_threshold) {
  check_sizes(s, m);
  const int n = s.num_vertices();
  Eigen::VectorXd sinh_r(n);
  for (int i = 0; i < n; ++i) sinh_r[i] = std::sinh(m.r()[i]);

  // Per-face contributions: L(v_a, v_b) -= d theta_a / d u_b, with the
  // chain rule d/du = sinh(r) d/dr applied columnwise.
  const bool dense = n <= dense_threshold;
  Eigen::MatrixXd lmat;
  std::vector<Eigen::Triplet<double>> trips;
  if (dense)
    lmat = Eigen::MatrixXd::Zero(n, n);
  else
    trips.reserve(static_cast<size_t>(s.num_faces()) * 9);

  for (int f = 0; f < s.num_faces(); ++f) {
    const Eigen::Matrix3d p = angle_partials(face_radii(s, m, f), s.face_weights(f));
    const auto& tri = s.faces[static_cast<size_t>(f)];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double value = -p(a, b) * sinh_r[tri[static_cast<size_t>(b)]];
        if (dense)
          lmat(tri[static_cast<size_t>(a)], tri[static_cast<size_t>(b)]) += value;
        else
          trips.emplace_back(tri[static_cast<size_t>(a)], tri[static_cast<size_t>(b)], value);
      }
  }

  if (dense) {
    Eigen::VectorXd a_diag = lmat.rowwise().sum();
    return {std::move(lmat), std::move(a_diag)};
  }
  Eigen::SparseMatrix<double> sp(n, n);
  sp.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd a_diag = sp * Eigen::VectorXd::Ones(n);
  return {std::move(sp), std::move(a_diag)};
}

}  // namespace hypflow
