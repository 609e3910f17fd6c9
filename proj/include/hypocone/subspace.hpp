#ifndef HYPOCONE_SUBSPACE_HPP
#define HYPOCONE_SUBSPACE_HPP

#include <Eigen/Dense>
#include <optional>

#include "hypocone/rational.hpp"

namespace hypocone::cones {

// A point of Grass(g): a subspace of the Hall-coordinate space, stored as an
// orthonormal row basis plus, when available, an exact rational row basis of
// the same span. The zero subspace (0 rows) is legal.
class Subspace {
public:
  Subspace() = default;

  // Rows span the subspace; must have full row rank.
  static Subspace from_rows(const Eigen::MatrixXd& rows);
  static Subspace from_exact(const RatMat& rows, int ambient_dim);

  int ambient_dim() const { return static_cast<int>(ortho_.cols()); }
  int dim() const { return static_cast<int>(ortho_.rows()); }

  // Orthonormal row basis (B B^T = I).
  const Eigen::MatrixXd& ortho() const { return ortho_; }
  const std::optional<RatMat>& exact() const { return exact_; }

  // Orthogonal projector onto the subspace (ambient x ambient).
  Eigen::MatrixXd projector() const { return ortho_.transpose() * ortho_; }

  // Euclidean distance from v to the subspace.
  double residual(const Eigen::VectorXd& v) const;

private:
  Eigen::MatrixXd ortho_;  // dim x ambient
  std::optional<RatMat> exact_;
};

// Largest principal angle between equal-dimensional subspaces (a metric on
// the Grassmannian). Dimension mismatch is an error except that two zero
// subspaces are at distance 0.
double grassmann_distance(const Subspace& a, const Subspace& b);

}  // namespace hypocone::cones

#endif
