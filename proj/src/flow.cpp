#include "hypocone/flow.hpp"

#include <cmath>

#include "hypocone/errors.hpp"

namespace hypocone::metric {

double path_length(const ControlPath& u) {
  if (u.steps() < 1) throw_usage("control path needs at least one step");
  double dt = 1.0 / u.steps();
  double len = 0.0;
  for (int k = 0; k < u.steps(); ++k) len += u.controls.row(k).norm() * dt;
  return len;
}

namespace {

Eigen::VectorXd frame_velocity(const frame::Frame& f,
                               const Eigen::RowVectorXd& u,
                               const Eigen::VectorXd& x) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(f.chart_dim());
  for (int i = 0; i < f.n_fields(); ++i) {
    if (u[i] == 0.0) continue;
    for (int r = 0; r < f.chart_dim(); ++r)
      v[r] += u[i] * f.fields()[i].components[r].eval(x).real();
  }
  return v;
}

template <class Velocity>
Eigen::VectorXd rk4_step(const Velocity& vel, const Eigen::VectorXd& x,
                         double h) {
  Eigen::VectorXd k1 = vel(x);
  Eigen::VectorXd k2 = vel(x + 0.5 * h * k1);
  Eigen::VectorXd k3 = vel(x + 0.5 * h * k2);
  Eigen::VectorXd k4 = vel(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory horizontal_flow(const frame::Frame& f, const Eigen::VectorXd& x0,
                           const ControlPath& u, int substeps) {
  if (u.n() != f.n_fields())
    throw_usage("control width does not match the frame");
  if (u.steps() < 1) throw_usage("control path needs at least one step");
  if (substeps < 1) substeps = 1;
  if (!f.in_chart(x0)) throw_domain("flow start point is outside the chart");

  Trajectory out;
  const int steps = u.steps();
  const double dt = 1.0 / steps;
  const double h = dt / substeps;
  Eigen::VectorXd x = x0;
  out.times.push_back(0.0);
  out.points.push_back(x);
  for (int k = 0; k < steps; ++k) {
    Eigen::RowVectorXd uk = u.controls.row(k);
    auto vel = [&](const Eigen::VectorXd& p) {
      return frame_velocity(f, uk, p);
    };
    for (int s = 0; s < substeps; ++s) {
      x = rk4_step(vel, x, h);
      double t = (k * substeps + s + 1) * h;
      if (!f.in_chart(x))
        throw_domain("trajectory left the chart at time " + std::to_string(t));
      out.times.push_back(t);
      out.points.push_back(x);
    }
  }
  return out;
}

Trajectory flow_anchored(const frame::Frame& f, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& x0, int steps) {
  if (v.size() != f.basis().dim())
    throw_usage("anchored flow: element size mismatch");
  if (!f.in_chart(x0)) throw_domain("flow start point is outside the chart");
  auto vel = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    return f.anchor_matrix(p) * v;
  };
  Trajectory out;
  const double h = 1.0 / steps;
  Eigen::VectorXd x = x0;
  out.times.push_back(0.0);
  out.points.push_back(x);
  for (int k = 0; k < steps; ++k) {
    x = rk4_step(vel, x, h);
    double t = (k + 1) * h;
    if (!f.in_chart(x))
      throw_domain("trajectory left the chart at time " + std::to_string(t));
    out.times.push_back(t);
    out.points.push_back(x);
  }
  return out;
}

}  // namespace hypocone::metric
