#ifndef HYPOCONE_METRIC_HPP
#define HYPOCONE_METRIC_HPP

#include <cstdint>
#include <vector>

#include "hypocone/flow.hpp"
#include "hypocone/subspace.hpp"

namespace hypocone::metric {

struct SolverOptions {
  int steps = 64;
  int restarts = 8;
  double endpoint_tol = 1e-6;
  int penalty_rounds = 6;       // continued past this (up to the max) while
  int max_penalty_rounds = 10;  // the endpoint residual misses the tolerance
  double penalty_init = 10.0;
  double penalty_factor = 10.0;
  int max_iterations = 120;  // inner quasi-Newton iterations per round
  int substeps = 4;
  std::uint64_t seed = 0;
  int threads = 1;
};

// A length upper bound: the exact length of the best control found together
// with its true endpoint residual. Never an exact distance claim.
struct DistanceEstimate {
  double value = 0.0;
  ControlPath controls;
  double endpoint_residual = 0.0;
  bool converged = false;
  int restarts_used = 0;
};

// Length minimization over piecewise-constant horizontal controls with
// quadratic endpoint penalty continuation and seeded multi-start.
DistanceEstimate cc_distance(const frame::Frame& f, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y,
                             const SolverOptions& opts = {});

// Same solver on the left-invariant generator frame of G/H: distance from
// the identity coset to exp(v) H. Flows are exact per interval via the
// group law; the coset endpoint residual projects off span(H). The
// homogeneous metric normalization is exactly the generator-induced
// left-invariant norm, matching cc_distance's control norm.
DistanceEstimate group_cc_distance(const lie::HallBasis& b,
                                   const cones::Subspace& h,
                                   const Eigen::VectorXd& v,
                                   const SolverOptions& opts = {});

struct ConeCheckCell {
  int direction = 0;
  double t = 0.0;
  double chart_distance = 0.0;    // d(x, flow endpoint of the dilated field)
  double group_distance = 0.0;    // d_{G/H}(e, exp(v) H)
  double residual = 0.0;          // |chart/t - group|
  bool chart_converged = false;
  bool group_converged = false;
};

struct ConeCheckTable {
  std::vector<ConeCheckCell> cells;           // direction-major, t descending
  std::vector<bool> monotone_per_direction;   // residual decreasing in t
};

// Sampled rescaled-distance comparison between the frame metric around x and
// the homogeneous cone metric attached to H.
ConeCheckTable cone_convergence_check(const frame::Frame& f,
                                      const Eigen::VectorXd& x,
                                      const cones::Subspace& h,
                                      const std::vector<Eigen::VectorXd>& dirs,
                                      const std::vector<double>& t_grid,
                                      const SolverOptions& opts = {});

}  // namespace hypocone::metric

#endif
