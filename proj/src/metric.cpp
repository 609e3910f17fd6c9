#include "hypocone/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "hypocone/errors.hpp"
#include "hypocone/lie_ops.hpp"
#include "hypocone/parallel.hpp"

namespace hypocone::metric {

namespace {

// ---------------------------------------------------------------------------
// L-BFGS with Armijo backtracking over a value+gradient callback. The
// callback may return +inf (with an arbitrary gradient) to veto a step.

using Objective =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

double lbfgs_minimize(const Objective& fg, Eigen::VectorXd& theta,
                      int max_iterations) {
  const int memory = 8;
  std::deque<Eigen::VectorXd> s_list, y_list;
  Eigen::VectorXd grad(theta.size());
  double value = fg(theta, grad);
  for (int it = 0; it < max_iterations; ++it) {
    double gnorm = grad.norm();
    if (!(gnorm > 1e-12 * std::max(1.0, std::abs(value)))) break;

    // two-loop recursion
    Eigen::VectorXd q = grad;
    std::vector<double> alphas(s_list.size());
    for (int i = static_cast<int>(s_list.size()) - 1; i >= 0; --i) {
      double rho = 1.0 / y_list[i].dot(s_list[i]);
      alphas[i] = rho * s_list[i].dot(q);
      q -= alphas[i] * y_list[i];
    }
    if (!s_list.empty()) {
      const auto& s = s_list.back();
      const auto& y = y_list.back();
      q *= s.dot(y) / y.dot(y);
    } else {
      q /= std::max(1.0, gnorm);  // conservative first step
    }
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      double rho = 1.0 / y_list[i].dot(s_list[i]);
      double beta = rho * y_list[i].dot(q);
      q += (alphas[i] - beta) * s_list[i];
    }
    Eigen::VectorXd dir = -q;
    double slope = grad.dot(dir);
    if (slope >= 0) {  // fall back to steepest descent
      dir = -grad;
      slope = -gnorm * gnorm;
    }

    double step = 1.0;
    Eigen::VectorXd theta_new;
    Eigen::VectorXd grad_new(theta.size());
    double value_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      theta_new = theta + step * dir;
      value_new = fg(theta_new, grad_new);
      if (value_new <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd s = theta_new - theta;
    Eigen::VectorXd y = grad_new - grad;
    double ys = y.dot(s);
    if (ys > 1e-12 * y.norm() * s.norm()) {
      s_list.push_back(std::move(s));
      y_list.push_back(std::move(y));
      if (static_cast<int>(s_list.size()) > memory) {
        s_list.pop_front();
        y_list.pop_front();
      }
    }
    theta = std::move(theta_new);
    grad = std::move(grad_new);
    double improvement = value - value_new;
    value = value_new;
    if (improvement < 1e-14 * std::max(1.0, std::abs(value))) break;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Chart-side flow with an adjoint gradient sweep.

struct FieldJacobians {
  // d (X_i^r) / d x_s as polynomials, indexed [i][r][s]
  std::vector<std::vector<std::vector<frame::Poly>>> d;

  explicit FieldJacobians(const frame::Frame& f) {
    const int m = f.chart_dim();
    d.resize(f.n_fields());
    for (int i = 0; i < f.n_fields(); ++i) {
      d[i].resize(m);
      for (int r = 0; r < m; ++r) {
        d[i][r].reserve(m);
        for (int s = 0; s < m; ++s)
          d[i][r].push_back(f.fields()[i].components[r].derivative(s));
      }
    }
  }
};

Eigen::VectorXd field_velocity(const frame::Frame& f,
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

Eigen::MatrixXd field_jacobian(const frame::Frame& f, const FieldJacobians& fj,
                               const Eigen::RowVectorXd& u,
                               const Eigen::VectorXd& x) {
  const int m = f.chart_dim();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < f.n_fields(); ++i) {
    if (u[i] == 0.0) continue;
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s)
        j(r, s) += u[i] * fj.d[i][r][s].eval(x).real();
  }
  return j;
}

// Forward RK4 storing substep points; false when the trajectory escapes.
bool forward_sweep(const frame::Frame& f, const Eigen::VectorXd& x0,
                   const Eigen::MatrixXd& controls, int substeps,
                   std::vector<Eigen::VectorXd>& points) {
  const int steps = static_cast<int>(controls.rows());
  const double h = 1.0 / (steps * substeps);
  points.clear();
  points.reserve(steps * substeps + 1);
  Eigen::VectorXd x = x0;
  points.push_back(x);
  for (int k = 0; k < steps; ++k) {
    Eigen::RowVectorXd uk = controls.row(k);
    for (int s = 0; s < substeps; ++s) {
      Eigen::VectorXd k1 = field_velocity(f, uk, x);
      Eigen::VectorXd k2 = field_velocity(f, uk, x + 0.5 * h * k1);
      Eigen::VectorXd k3 = field_velocity(f, uk, x + 0.5 * h * k2);
      Eigen::VectorXd k4 = field_velocity(f, uk, x + h * k3);
      x += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
      if (!x.allFinite() || !f.in_chart(x)) return false;
      points.push_back(x);
    }
  }
  return true;
}

// Penalized energy objective with an adjoint-sweep gradient.
class ChartObjective {
public:
  ChartObjective(const frame::Frame& f, const FieldJacobians& fj,
                 Eigen::VectorXd x0, Eigen::VectorXd target, int steps,
                 int substeps)
      : f_(f),
        fj_(fj),
        x0_(std::move(x0)),
        target_(std::move(target)),
        steps_(steps),
        substeps_(substeps) {}

  void set_penalty(double rho) { rho_ = rho; }

  double operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    const int n = f_.n_fields();
    Eigen::MatrixXd controls =
        Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps_, n);
    std::vector<Eigen::VectorXd> pts;
    if (!forward_sweep(f_, x0_, controls, substeps_, pts)) {
      grad.setZero(theta.size());
      return std::numeric_limits<double>::infinity();
    }
    const double dt = 1.0 / steps_;
    const double h = dt / substeps_;
    const Eigen::VectorXd& endpoint = pts.back();
    double energy = 0.0;
    for (int k = 0; k < steps_; ++k)
      energy += controls.row(k).squaredNorm() * dt;
    Eigen::VectorXd gap = endpoint - target_;
    double value = energy + rho_ * gap.squaredNorm();

    // adjoint sweep on the stored grid
    Eigen::MatrixXd gcontrols = 2.0 * dt * controls;
    Eigen::VectorXd lambda = 2.0 * rho_ * gap;
    for (int k = steps_ - 1; k >= 0; --k) {
      Eigen::RowVectorXd uk = controls.row(k);
      for (int s = substeps_ - 1; s >= 0; --s) {
        const Eigen::VectorXd& x = pts[k * substeps_ + s];
        for (int i = 0; i < n; ++i) {
          double sens = 0.0;
          for (int r = 0; r < f_.chart_dim(); ++r)
            sens += lambda[r] * f_.fields()[i].components[r].eval(x).real();
          gcontrols(k, i) += h * sens;
        }
        lambda += h * field_jacobian(f_, fj_, uk, x).transpose() * lambda;
      }
    }
    grad = Eigen::Map<Eigen::VectorXd>(gcontrols.data(), theta.size());
    return value;
  }

private:
  const frame::Frame& f_;
  const FieldJacobians& fj_;
  Eigen::VectorXd x0_, target_;
  int steps_, substeps_;
  double rho_ = 1.0;
};

struct RestartResult {
  double length = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd controls;
  bool converged = false;
};

template <class RunRestart>
DistanceEstimate multi_start(int restarts, int threads,
                             const RunRestart& run_one) {
  std::vector<RestartResult> results(restarts);
  parallel_for(restarts, threads, [&](int r) { results[r] = run_one(r); });
  DistanceEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  best.endpoint_residual = std::numeric_limits<double>::infinity();
  best.restarts_used = restarts;
  for (const auto& res : results) {
    bool better;
    if (res.converged != best.converged)
      better = res.converged;
    else if (res.converged)
      better = res.length < best.value;
    else
      better = res.residual < best.endpoint_residual;
    if (better) {
      best.value = res.length;
      best.endpoint_residual = res.residual;
      best.converged = res.converged;
      best.controls.controls = res.controls;
    }
  }
  return best;
}

}  // namespace

DistanceEstimate cc_distance(const frame::Frame& f, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y,
                             const SolverOptions& opts) {
  if (x.size() != f.chart_dim() || y.size() != f.chart_dim())
    throw_usage("cc_distance: point size mismatch");
  if (!f.in_chart(x) || !f.in_chart(y))
    throw_domain("cc_distance endpoints must lie in the chart");
  auto hreport = f.check_hormander(x);
  if (!hreport.satisfied)
    throw_domain("bracket condition fails at the start point");

  const int n = f.n_fields();
  const int steps = std::max(1, opts.steps);
  FieldJacobians fj(f);

  const double gap0 = (y - x).norm();
  if (gap0 == 0.0) {
    DistanceEstimate out;
    out.value = 0.0;
    out.endpoint_residual = 0.0;
    out.converged = true;
    out.controls.controls = Eigen::MatrixXd::Zero(steps, n);
    return out;
  }

  auto run_one = [&](int restart) -> RestartResult {
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + restart + 1);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    Eigen::MatrixXd controls = Eigen::MatrixXd::Zero(steps, n);
    if (restart > 0) {
      // low-frequency seeds: white noise tends to lock in multi-swing
      // local minima on degenerate frames
      double scale = std::max(gap0, std::sqrt(gap0));
      int harmonic = 1 + (restart - 1) % 2;
      for (int i = 0; i < n; ++i) {
        double a = scale * gauss(rng);
        double bias = 0.5 * scale * gauss(rng);
        double phase = unif(rng);
        for (int k = 0; k < steps; ++k) {
          double tau = (k + 0.5) / steps;
          controls(k, i) = a * std::sin(M_PI * harmonic * tau + phase) + bias;
        }
      }
    }
    ChartObjective obj(f, fj, x, y, steps, opts.substeps);
    Eigen::VectorXd theta =
        Eigen::Map<Eigen::VectorXd>(controls.data(), steps * n);
    // weak penalties must not crush the endpoint term against the energy
    // at short gaps
    double rho = opts.penalty_init * std::max(1.0, 1.0 / gap0);
    RestartResult res;
    for (int round = 0; round < opts.max_penalty_rounds; ++round) {
      obj.set_penalty(rho);
      lbfgs_minimize([&](const Eigen::VectorXd& th,
                         Eigen::VectorXd& g) { return obj(th, g); },
                     theta, opts.max_iterations);
      rho *= opts.penalty_factor;
      if (round + 1 >= opts.penalty_rounds) {
        Eigen::MatrixXd cand =
            Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps, n);
        std::vector<Eigen::VectorXd> pts;
        if (forward_sweep(f, x, cand, opts.substeps, pts) &&
            (pts.back() - y).norm() <= opts.endpoint_tol)
          break;
      }
    }
    res.controls = Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps, n);
    std::vector<Eigen::VectorXd> pts;
    if (forward_sweep(f, x, res.controls, 2 * opts.substeps, pts)) {
      res.residual = (pts.back() - y).norm();
      ControlPath cp{res.controls};
      res.length = path_length(cp);
      res.converged = res.residual <= opts.endpoint_tol;
    }
    return res;
  };

  return multi_start(std::max(1, opts.restarts), opts.threads, run_one);
}

namespace {

// Group-side flow: exact per-interval left translations through the group
// law; endpoint residual is the coset gap at exp(v) H.
class GroupObjective {
public:
  GroupObjective(const lie::HallBasis& b, const cones::Subspace& h,
                 Eigen::VectorXd v, int steps)
      : b_(b), h_(h), v_(std::move(v)), steps_(steps) {}

  void set_penalty(double rho) { rho_ = rho; }

  Eigen::VectorXd flow_endpoint(const Eigen::MatrixXd& controls) const {
    const double dt = 1.0 / steps_;
    std::vector<double> g(b_.dim(), 0.0);
    std::vector<double> w(b_.dim(), 0.0);
    for (int k = 0; k < steps_; ++k) {
      std::fill(w.begin(), w.end(), 0.0);
      for (int i = 0; i < static_cast<int>(controls.cols()); ++i)
        w[i] = controls(k, i) * dt;
      g = b_.bch_double(g, w);
    }
    return Eigen::Map<Eigen::VectorXd>(g.data(), g.size());
  }

  double coset_residual(const Eigen::VectorXd& endpoint) const {
    Eigen::VectorXd diff = lie::bch(b_, Eigen::VectorXd(-v_), endpoint);
    return h_.dim() == 0
               ? diff.norm()
               : (diff - h_.ortho().transpose() * (h_.ortho() * diff)).norm();
  }

  double value(const Eigen::VectorXd& theta) const {
    const int n = b_.generators();
    Eigen::MatrixXd controls =
        Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps_, n);
    double energy = 0.0;
    for (int k = 0; k < steps_; ++k)
      energy += controls.row(k).squaredNorm() / steps_;
    double r = coset_residual(flow_endpoint(controls));
    return energy + rho_ * r * r;
  }

  double operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    double v0 = value(theta);
    grad.resize(theta.size());
    // central differences; the group flow is cheap and smooth
    Eigen::VectorXd probe = theta;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      double eps = 1e-6 * std::max(1.0, std::abs(theta[i]));
      probe[i] = theta[i] + eps;
      double vp = value(probe);
      probe[i] = theta[i] - eps;
      double vm = value(probe);
      probe[i] = theta[i];
      grad[i] = (vp - vm) / (2 * eps);
    }
    return v0;
  }

private:
  const lie::HallBasis& b_;
  const cones::Subspace& h_;
  Eigen::VectorXd v_;
  int steps_;
  double rho_ = 1.0;
};

}  // namespace

DistanceEstimate group_cc_distance(const lie::HallBasis& b,
                                   const cones::Subspace& h,
                                   const Eigen::VectorXd& v,
                                   const SolverOptions& opts) {
  if (v.size() != b.dim()) throw_usage("group_cc_distance: element size");
  if (h.dim() > 0 && h.ambient_dim() != b.dim())
    throw_usage("group_cc_distance: subspace ambient size");
  const int n = b.generators();
  const int steps = std::max(1, std::min(opts.steps, 32));

  if (v.norm() == 0.0) {
    DistanceEstimate out;
    out.converged = true;
    out.controls.controls = Eigen::MatrixXd::Zero(steps, n);
    return out;
  }

  auto run_one = [&](int restart) -> RestartResult {
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + restart + 101);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd controls = Eigen::MatrixXd::Zero(steps, n);
    // generator components of v give the natural first guess
    for (int k = 0; k < steps; ++k)
      for (int i = 0; i < n; ++i) controls(k, i) = v[i];
    if (restart > 0) {
      double scale = std::max(1.0, v.norm());
      for (int k = 0; k < steps; ++k)
        for (int i = 0; i < n; ++i) controls(k, i) += scale * gauss(rng);
    }
    GroupObjective obj(b, h, v, steps);
    Eigen::VectorXd theta =
        Eigen::Map<Eigen::VectorXd>(controls.data(), steps * n);
    double rho = opts.penalty_init;
    RestartResult res;
    for (int round = 0; round < opts.max_penalty_rounds; ++round) {
      obj.set_penalty(rho);
      lbfgs_minimize([&](const Eigen::VectorXd& th,
                         Eigen::VectorXd& g) { return obj(th, g); },
                     theta, opts.max_iterations);
      rho *= opts.penalty_factor;
      if (round + 1 >= opts.penalty_rounds) {
        Eigen::MatrixXd cand =
            Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps, n);
        if (obj.coset_residual(obj.flow_endpoint(cand)) <= opts.endpoint_tol)
          break;
      }
    }
    res.controls = Eigen::Map<const Eigen::MatrixXd>(theta.data(), steps, n);
    res.residual = obj.coset_residual(obj.flow_endpoint(res.controls));
    ControlPath cp{res.controls};
    res.length = path_length(cp);
    res.converged = res.residual <= opts.endpoint_tol;
    return res;
  };

  return multi_start(std::max(1, opts.restarts), opts.threads, run_one);
}

ConeCheckTable cone_convergence_check(const frame::Frame& f,
                                      const Eigen::VectorXd& x,
                                      const cones::Subspace& h,
                                      const std::vector<Eigen::VectorXd>& dirs,
                                      const std::vector<double>& t_grid,
                                      const SolverOptions& opts) {
  ConeCheckTable out;
  const auto& b = f.basis();
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    DistanceEstimate group = group_cc_distance(b, h, dirs[di], opts);
    std::vector<double> residuals;
    for (double t : t_grid) {
      ConeCheckCell cell;
      cell.direction = static_cast<int>(di);
      cell.t = t;
      cell.group_distance = group.value;
      cell.group_converged = group.converged;
      Eigen::VectorXd vt = lie::dilate(b, t, dirs[di]);
      Trajectory traj = flow_anchored(f, vt, x, std::max(16, opts.steps / 2));
      DistanceEstimate chart = cc_distance(f, x, traj.endpoint(), opts);
      cell.chart_distance = chart.value;
      cell.chart_converged = chart.converged;
      cell.residual = std::abs(chart.value / t - group.value);
      residuals.push_back(cell.residual);
      out.cells.push_back(cell);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < residuals.size(); ++i)
      if (residuals[i] > residuals[i - 1] * 1.02 + 1e-12) monotone = false;
    out.monotone_per_direction.push_back(monotone);
  }
  return out;
}

}  // namespace hypocone::metric
