#ifndef HYPOCONE_GROUPOID_HPP
#define HYPOCONE_GROUPOID_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypocone/cones.hpp"
#include "hypocone/frame.hpp"
#include "hypocone/subspace.hpp"

namespace hypocone::cones {

// Elements of the set-level limit groupoid: the pair stratum (x, y, t) for
// t > 0 and the coset stratum (gH, x, 0) over the cone fiber.
struct PairElement {
  Eigen::VectorXd x;  // range base point
  Eigen::VectorXd y;  // source base point
  double t = 1.0;
};

struct CosetElement {
  Eigen::VectorXd g;  // exponential coordinates of the coset representative
  Subspace h;
  Eigen::VectorXd base;  // the point of M underneath
};

using GroupoidElement = std::variant<PairElement, CosetElement>;

struct GroupoidUnit {
  bool zero_stratum = false;
  Eigen::VectorXd x;
  double t = 1.0;
  Subspace h;  // zero stratum only
};

GroupoidUnit source(const lie::HallBasis& b, const GroupoidElement& a);
GroupoidUnit range(const lie::HallBasis& b, const GroupoidElement& a);

bool units_match(const GroupoidUnit& a, const GroupoidUnit& c, double tol);

// (x,y,t).(y,z,t) = (x,z,t); (h gHg^-1, x).(gH, x) = (hgH, x).
// Throws ErrorCode::usage when source(a) != range(b) within tol.
GroupoidElement groupoid_compose(const lie::HallBasis& b,
                                 const GroupoidElement& a,
                                 const GroupoidElement& c, double tol = 1e-9);

GroupoidElement groupoid_inverse(const lie::HallBasis& b,
                                 const GroupoidElement& a);

GroupoidElement groupoid_unit_element(const GroupoidUnit& u);

// g1 H = g2 H, i.e. log(exp(g2)^-1 exp(g1)) lies in span(H).
bool coset_equal(const lie::HallBasis& b, const Eigen::VectorXd& g1,
                 const Eigen::VectorXd& g2, const Subspace& h,
                 double tol = 1e-9);

// Strips the H-component: returns g' with g'H = gH and the projection of g'
// onto span(H) below tol.
Eigen::VectorXd canonical_coset_rep(const lie::HallBasis& b,
                                    const Eigen::VectorXd& g,
                                    const Subspace& h, double tol = 1e-12);

bool elements_equal(const lie::HallBasis& b, const GroupoidElement& a,
                    const GroupoidElement& c, double tol = 1e-9);

struct ConvergenceRow {
  double s = 0.0;
  double t = 0.0;
  double base_gap = 0.0;   // |x_s - x|
  double point_gap = 0.0;  // |y_s - x| where y_s flows along the dilated field
  double cone_gap = 0.0;   // Grassmannian gap of the dilated kernel to H
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  // log-log slope of the dominant residual against t (O(t) -> about 1).
  double rate = 0.0;
};

// Samples the convergence criterion of the groupoid topology: flows time 1
// along the anchored field of alpha_t(v) from x(s) and reports how fast
// (y_s, x_s, t_s) approaches the coset element over (H, x, 0).
ConvergenceTable groupoid_convergence_check(const frame::Frame& f,
                                            const Eigen::VectorXd& v,
                                            const Subspace& h,
                                            const Eigen::VectorXd& x,
                                            const ApproachPath& path,
                                            int samples = 8,
                                            int flow_steps = 64);

}  // namespace hypocone::cones

#endif
