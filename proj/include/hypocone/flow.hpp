#ifndef HYPOCONE_FLOW_HPP
#define HYPOCONE_FLOW_HPP

#include <Eigen/Dense>
#include <vector>

#include "hypocone/frame.hpp"

namespace hypocone::metric {

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;  // includes the start point
  const Eigen::VectorXd& endpoint() const { return points.back(); }
};

// Piecewise-constant controls on a uniform partition of [0,1]: row k holds
// the control vector active on interval k.
struct ControlPath {
  Eigen::MatrixXd controls;  // steps x n

  int steps() const { return static_cast<int>(controls.rows()); }
  int n() const { return static_cast<int>(controls.cols()); }
};

// Exact length of a piecewise-constant control path: sum |u_k| dt.
double path_length(const ControlPath& u);

// RK4 for xdot = sum_i u_i(t) X_i(x); throws ErrorCode::domain with the exit
// time if the trajectory leaves the chart.
Trajectory horizontal_flow(const frame::Frame& f, const Eigen::VectorXd& x0,
                           const ControlPath& u, int substeps = 4);

// RK4 time-1 flow of the single anchored field sum_k v_k anchor_k.
Trajectory flow_anchored(const frame::Frame& f, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& x0, int steps = 64);

}  // namespace hypocone::metric

#endif
