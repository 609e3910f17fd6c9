#include "hypocone/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "hypocone/errors.hpp"

namespace hypocone::cones {

Subspace Subspace::from_rows(const Eigen::MatrixXd& rows) {
  Subspace s;
  if (rows.rows() == 0) {
    s.ortho_ = Eigen::MatrixXd(0, rows.cols());
    return s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows.transpose(),
                                        Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double tol = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  if (rank != rows.rows())
    throw_usage("subspace basis rows are not independent");
  s.ortho_ = svd.matrixU().leftCols(rank).transpose();
  return s;
}

Subspace Subspace::from_exact(const RatMat& rows, int ambient_dim) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), ambient_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != ambient_dim)
      throw_usage("subspace row length mismatch");
    for (int j = 0; j < ambient_dim; ++j) m(i, j) = to_double(rows[i][j]);
  }
  Subspace s = from_rows(m);
  s.exact_ = rows;
  return s;
}

double Subspace::residual(const Eigen::VectorXd& v) const {
  if (dim() == 0) return v.norm();
  Eigen::VectorXd proj = ortho_.transpose() * (ortho_ * v);
  return (v - proj).norm();
}

double grassmann_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw_usage("grassmann_distance: ambient dimension mismatch");
  if (a.dim() != b.dim())
    throw_usage("grassmann_distance: subspace dimension mismatch");
  if (a.dim() == 0) return 0.0;
  Eigen::MatrixXd overlap = a.ortho() * b.ortho().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap);
  double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  if (c * c > 0.5) {
    // Small angles: acos loses half the digits, the sine route does not.
    Eigen::MatrixXd residual = a.ortho() - overlap * b.ortho();
    Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(residual);
    double s = std::clamp(rsvd.singularValues().maxCoeff(), 0.0, 1.0);
    return std::asin(s);
  }
  return std::acos(c);
}

}  // namespace hypocone::cones
