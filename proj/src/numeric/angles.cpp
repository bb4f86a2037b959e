#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "orbi/numeric/linalg.hpp"

namespace orbi::numeric {

template <Scalar S>
Eigen::MatrixXd orthonormal_basis_float(const Subspace<S>& s) {
  if (s.dim() == 0) return Eigen::MatrixXd(0, s.ambient());
  const Eigen::MatrixXd cols = to_double<S>(s.basis()).transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(s.ambient(), s.dim());
  return q.transpose();
}

template <Scalar S>
double principal_angle(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.dim() == 0 || b.dim() == 0) {
    throw Error(ErrorCode::EmptySubspace, "principal angle needs nonzero subspaces");
  }
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::InvalidInput, "ambient dimensions differ");
  if (intersect(a, b).dim() > 0) return 0.0;

  const Eigen::MatrixXd qa = orthonormal_basis_float(a).transpose();
  const Eigen::MatrixXd qb = orthonormal_basis_float(b).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(qa.transpose() * qb, Eigen::ComputeFullV);
  const double cos_theta = std::clamp(svd.singularValues()(0), 0.0, 1.0);
  // Recover the sine from the residual of the best-aligned vector, which stays
  // accurate for small angles where acos does not.
  const Eigen::VectorXd y = qb * svd.matrixV().col(0);
  const double sin_theta = (y - qa * (qa.transpose() * y)).norm();
  return std::atan2(sin_theta, cos_theta);
}

template Eigen::MatrixXd orthonormal_basis_float<Rational>(const Subspace<Rational>&);
template Eigen::MatrixXd orthonormal_basis_float<QSqrt5>(const Subspace<QSqrt5>&);
template Eigen::MatrixXd orthonormal_basis_float<double>(const Subspace<double>&);
template double principal_angle<Rational>(const Subspace<Rational>&, const Subspace<Rational>&);
template double principal_angle<QSqrt5>(const Subspace<QSqrt5>&, const Subspace<QSqrt5>&);
template double principal_angle<double>(const Subspace<double>&, const Subspace<double>&);

}  // namespace orbi::numeric
