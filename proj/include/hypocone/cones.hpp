#ifndef HYPOCONE_CONES_HPP
#define HYPOCONE_CONES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypocone/frame.hpp"
#include "hypocone/subspace.hpp"

namespace hypocone::cones {

// A curve s -> (x(s), t(s)) with t > 0, t(s) -> 0 as s -> 0; limits are
// sampled along s0, s0/2, s0/4, ...
struct ApproachPath {
  std::function<Eigen::VectorXd(double)> x_of_s;
  std::function<double(double)> t_of_s;
  double s0 = 0.5;
  std::string label;
};

ApproachPath fixed_point_path(const Eigen::VectorXd& x);
// x(s) = x + c t(s) dir with t(s) = s: the base point closes in at the
// dilation rate, ratio parameter c.
ApproachPath linear_ratio_path(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& dir, double c);
// x(s) = x + sqrt(s) dir: the ratio |x - x*| / t blows up.
ApproachPath sqrt_ratio_path(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& dir);

// alpha_{1/t}(ker of the evaluation map at x).
Subspace dilated_kernel(const frame::Frame& f, const Eigen::VectorXd& x,
                        double t);
// Exact variant at rational data (kernel must evaluate exactly).
std::optional<Subspace> dilated_kernel_exact(const frame::Frame& f,
                                             const RatVec& x,
                                             const Rational& t);

struct DivergenceReport {
  std::string reason;
  std::vector<double> distances;  // successive Grassmannian gaps seen
};

struct LimitResult {
  std::optional<Subspace> limit;
  double residual = 0.0;  // extrapolation confirmed against the next sample
  int iterations = 0;
  bool subalgebra = false;
  std::optional<DivergenceReport> divergence;
  bool converged() const { return limit.has_value(); }
};

LimitResult limit_along(const frame::Frame& f, const ApproachPath& path,
                        double tol);

// Brackets of all basis pairs of S land back in span(S); exact when a
// rational basis is attached, within tol otherwise.
bool is_subalgebra(const lie::HallBasis& b, const Subspace& s, double tol);

struct ConeSampling {
  std::vector<double> lambda_grid{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0,
                                  8.0, -8.0};
  // empty = +- coordinate axes
  std::vector<Eigen::VectorXd> directions;
  bool include_infinity = true;
  double limit_tol = 1e-8;
  double merge_tol = 1e-6;
  double adjoint_scale = 1e-2;
};

struct ConeStratum {
  Subspace subspace;
  std::string label;
  double approach_param = 0.0;  // ratio parameter; NaN for non-family strata
  bool subalgebra = false;
  bool adjoint_closed = false;
  double limit_residual = 0.0;
};

// A sampled slice of the cone over x: deduplicated limits with stratum
// labels, never claimed exhaustive.
struct ConeSample {
  std::vector<ConeStratum> strata;
  std::vector<std::pair<std::string, DivergenceReport>> divergences;
};

ConeSample cone_g0(const frame::Frame& f, const Eigen::VectorXd& x,
                   const ConeSampling& sampling = {});

struct HnMembership {
  bool member = false;
  double residual = 0.0;  // best annihilation residual found
  std::string witness;    // stratum label achieving it
};

// xi annihilates some member of the cone over x (families are optimized
// continuously over their ratio parameter, not just the sampled grid).
HnMembership hn_membership_def2(const frame::Frame& f,
                                const Eigen::VectorXd& x,
                                const Eigen::VectorXd& xi,
                                const ConeSampling& sampling, double tol);

// xi composed with the evaluation map and the dilation: the functional
// xi . anchor_x . alpha_t in Hall-dual coordinates.
Eigen::VectorXd composed_functional(const frame::Frame& f,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& xi, double t);

struct CovectorPath {
  std::function<Eigen::VectorXd(double)> x_of_s;
  std::function<Eigen::VectorXd(double)> xi_of_s;  // cotangent, size m
  std::function<double(double)> t_of_s;
  double s0 = 0.5;
  std::string label;
};

struct FunctionalLimit {
  std::optional<Eigen::VectorXd> limit;
  double residual = 0.0;
  int iterations = 0;
  std::optional<DivergenceReport> divergence;
  bool converged() const { return limit.has_value(); }
};

FunctionalLimit hn_sample_def1(const frame::Frame& f, const CovectorPath& path,
                               double tol);

// Attainability construction: follows the base path and picks the cotangent
// xi(s) by least squares so the composed functional tracks the target.
FunctionalLimit hn_attain_def1(const frame::Frame& f, const ApproachPath& path,
                               const Eigen::VectorXd& target, double tol);

}  // namespace hypocone::cones

#endif
