#include "hypocone/groupoid.hpp"

#include <cmath>

#include "hypocone/errors.hpp"
#include "hypocone/flow.hpp"
#include "hypocone/lie_ops.hpp"

namespace hypocone::cones {

GroupoidUnit source(const lie::HallBasis& b, const GroupoidElement& a) {
  GroupoidUnit u;
  if (const auto* p = std::get_if<PairElement>(&a)) {
    u.x = p->y;
    u.t = p->t;
    return u;
  }
  const auto& c = std::get<CosetElement>(a);
  u.zero_stratum = true;
  u.x = c.base;
  u.t = 0.0;
  u.h = c.h;
  return u;
}

GroupoidUnit range(const lie::HallBasis& b, const GroupoidElement& a) {
  GroupoidUnit u;
  if (const auto* p = std::get_if<PairElement>(&a)) {
    u.x = p->x;
    u.t = p->t;
    return u;
  }
  const auto& c = std::get<CosetElement>(a);
  u.zero_stratum = true;
  u.x = c.base;
  u.t = 0.0;
  // r(gH, x, 0) = (g H g^-1, x, 0)
  Eigen::MatrixXd rows(c.h.dim(), c.h.ambient_dim());
  for (int r = 0; r < c.h.dim(); ++r)
    rows.row(r) = lie::adjoint(b, c.g, Eigen::VectorXd(c.h.ortho().row(r)));
  u.h = c.h.dim() == 0 ? c.h : Subspace::from_rows(rows);
  return u;
}

bool units_match(const GroupoidUnit& a, const GroupoidUnit& c, double tol) {
  if (a.zero_stratum != c.zero_stratum) return false;
  if ((a.x - c.x).norm() > tol) return false;
  if (!a.zero_stratum) return std::abs(a.t - c.t) <= tol;
  if (a.h.dim() != c.h.dim()) return false;
  return grassmann_distance(a.h, c.h) <= tol;
}

GroupoidElement groupoid_compose(const lie::HallBasis& b,
                                 const GroupoidElement& a,
                                 const GroupoidElement& c, double tol) {
  if (!units_match(source(b, a), range(b, c), tol))
    throw_usage("groupoid elements are not composable");
  if (const auto* pa = std::get_if<PairElement>(&a)) {
    const auto& pc = std::get<PairElement>(c);
    PairElement out;
    out.x = pa->x;
    out.y = pc.y;
    out.t = pa->t;
    return out;
  }
  const auto& ca = std::get<CosetElement>(a);
  const auto& cc = std::get<CosetElement>(c);
  CosetElement out;
  out.g = lie::bch(b, ca.g, cc.g);
  out.h = cc.h;
  out.base = cc.base;
  return out;
}

GroupoidElement groupoid_inverse(const lie::HallBasis& b,
                                 const GroupoidElement& a) {
  if (const auto* p = std::get_if<PairElement>(&a)) {
    PairElement out;
    out.x = p->y;
    out.y = p->x;
    out.t = p->t;
    return out;
  }
  const auto& c = std::get<CosetElement>(a);
  CosetElement out;
  out.g = -c.g;
  out.base = c.base;
  out.h = range(b, a).h;  // (gH)^-1 = H g^-1 = (g^-1)(g H g^-1)
  return out;
}

GroupoidElement groupoid_unit_element(const GroupoidUnit& u) {
  if (!u.zero_stratum) {
    PairElement p;
    p.x = u.x;
    p.y = u.x;
    p.t = u.t;
    return p;
  }
  CosetElement c;
  c.g = Eigen::VectorXd::Zero(u.h.ambient_dim());
  c.h = u.h;
  c.base = u.x;
  return c;
}

bool coset_equal(const lie::HallBasis& b, const Eigen::VectorXd& g1,
                 const Eigen::VectorXd& g2, const Subspace& h, double tol) {
  Eigen::VectorXd diff = lie::bch(b, Eigen::VectorXd(-g2), g1);
  return h.residual(diff) <= tol * std::max(1.0, diff.norm());
}

Eigen::VectorXd canonical_coset_rep(const lie::HallBasis& b,
                                    const Eigen::VectorXd& g,
                                    const Subspace& h, double tol) {
  if (h.dim() == 0) return g;
  Eigen::VectorXd cur = g;
  for (int it = 0; it < 64; ++it) {
    Eigen::VectorXd part = h.ortho().transpose() * (h.ortho() * cur);
    if (part.norm() <= tol) break;
    cur = lie::bch(b, cur, Eigen::VectorXd(-part));
  }
  return cur;
}

bool elements_equal(const lie::HallBasis& b, const GroupoidElement& a,
                    const GroupoidElement& c, double tol) {
  if (a.index() != c.index()) return false;
  if (const auto* pa = std::get_if<PairElement>(&a)) {
    const auto& pc = std::get<PairElement>(c);
    return (pa->x - pc.x).norm() <= tol && (pa->y - pc.y).norm() <= tol &&
           std::abs(pa->t - pc.t) <= tol;
  }
  const auto& ca = std::get<CosetElement>(a);
  const auto& cc = std::get<CosetElement>(c);
  if ((ca.base - cc.base).norm() > tol) return false;
  if (ca.h.dim() != cc.h.dim()) return false;
  if (grassmann_distance(ca.h, cc.h) > tol) return false;
  return coset_equal(b, ca.g, cc.g, ca.h, tol);
}

ConvergenceTable groupoid_convergence_check(const frame::Frame& f,
                                            const Eigen::VectorXd& v,
                                            const Subspace& h,
                                            const Eigen::VectorXd& x,
                                            const ApproachPath& path,
                                            int samples, int flow_steps) {
  ConvergenceTable out;
  double s = path.s0;
  for (int k = 0; k < samples; ++k, s /= 2) {
    Eigen::VectorXd xs = path.x_of_s(s);
    double t = path.t_of_s(s);
    Eigen::VectorXd vt = lie::dilate(f.basis(), t, v);
    metric::Trajectory traj = metric::flow_anchored(f, vt, xs, flow_steps);
    ConvergenceRow row;
    row.s = s;
    row.t = t;
    row.base_gap = (xs - x).norm();
    row.point_gap = (traj.endpoint() - x).norm();
    row.cone_gap = grassmann_distance(dilated_kernel(f, xs, t), h);
    out.rows.push_back(row);
  }
  // Fit the decay rate of the dominant residual against t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto& r : out.rows) {
    double res = std::max({r.base_gap, r.point_gap, r.cone_gap});
    if (res <= 0 || r.t <= 0) continue;
    double lx = std::log(r.t), ly = std::log(res);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2) out.rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

}  // namespace hypocone::cones
