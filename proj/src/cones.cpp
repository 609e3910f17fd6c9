#include "hypocone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypocone/errors.hpp"
#include "hypocone/lie_ops.hpp"
#include "hypocone/ratlinalg.hpp"

namespace hypocone::cones {

namespace {

constexpr int kMaxHalvings = 60;
constexpr double kGeometricCut = 0.9;

Eigen::MatrixXd dilate_rows(const lie::HallBasis& b, double inv_t,
                            Eigen::MatrixXd rows) {
  // scale column k by t^{-deg k}, then renormalize rows to keep the SVD well
  // scaled; the span is unchanged.
  for (int k = 0; k < b.dim(); ++k)
    rows.col(k) *= std::pow(inv_t, b.degree(k));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    double n = rows.row(r).norm();
    if (n > 0) rows.row(r) /= n;
  }
  return rows;
}

}  // namespace

ApproachPath fixed_point_path(const Eigen::VectorXd& x) {
  ApproachPath p;
  p.x_of_s = [x](double) { return x; };
  p.t_of_s = [](double s) { return s; };
  p.label = "fixed";
  return p;
}

ApproachPath linear_ratio_path(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& dir, double c) {
  ApproachPath p;
  p.x_of_s = [x, dir, c](double s) { return x + c * s * dir; };
  p.t_of_s = [](double s) { return s; };
  std::ostringstream os;
  os << "ratio=" << c;
  p.label = os.str();
  return p;
}

ApproachPath sqrt_ratio_path(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& dir) {
  ApproachPath p;
  p.x_of_s = [x, dir](double s) { return x + std::sqrt(s) * dir; };
  p.t_of_s = [](double s) { return s; };
  p.label = "infinity";
  return p;
}

Subspace dilated_kernel(const frame::Frame& f, const Eigen::VectorXd& x,
                        double t) {
  if (!(t > 0.0)) throw_usage("dilated_kernel: t must be positive");
  Subspace ker = f.kernel_at(x);
  if (ker.dim() == 0) return ker;
  return Subspace::from_rows(dilate_rows(f.basis(), 1.0 / t, ker.ortho()));
}

std::optional<Subspace> dilated_kernel_exact(const frame::Frame& f,
                                             const RatVec& x,
                                             const Rational& t) {
  if (sgn(t) <= 0) throw_usage("dilated_kernel: t must be positive");
  Subspace ker = f.kernel_at(x);
  if (!ker.exact().has_value()) return std::nullopt;
  const auto& b = f.basis();
  RatMat rows = *ker.exact();
  Rational inv = 1 / t;
  for (auto& row : rows) {
    for (int k = 0; k < b.dim(); ++k) {
      Rational p(1);
      for (int d = 0; d < b.degree(k); ++d) p *= inv;
      row[k] *= p;
    }
  }
  return Subspace::from_exact(rows, b.dim());
}

bool is_subalgebra(const lie::HallBasis& b, const Subspace& s, double tol) {
  if (s.exact().has_value()) {
    const RatMat& rows = *s.exact();
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        if (!in_row_span(rows, lie::bracket(b, rows[i], rows[j])))
          return false;
    return true;
  }
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = i + 1; j < s.dim(); ++j) {
      Eigen::VectorXd u = s.ortho().row(i), v = s.ortho().row(j);
      Eigen::VectorXd w = lie::bracket(b, u, v);
      if (s.residual(w) > tol * std::max(1.0, w.norm())) return false;
    }
  }
  return true;
}

LimitResult limit_along(const frame::Frame& f, const ApproachPath& path,
                        double tol) {
  LimitResult out;
  std::vector<double> gaps;
  double s = path.s0;
  std::optional<Subspace> cur;
  for (int k = 0; k <= kMaxHalvings; ++k, s /= 2) {
    Eigen::VectorXd x = path.x_of_s(s);
    double t = path.t_of_s(s);
    if (!(t > 0)) throw_usage("approach path must keep t positive");
    auto rep = f.check_hormander(x);
    if (!rep.satisfied)
      throw_domain("bracket condition fails along approach path at s=" +
                   std::to_string(s));
    Subspace next = dilated_kernel(f, x, t);
    if (cur) {
      double d = grassmann_distance(*cur, next);
      gaps.push_back(d);
      out.iterations = k;
      const std::size_t m = gaps.size();
      if (m >= 2 && gaps[m - 2] <= tol && gaps[m - 1] <= tol) {
        // Cauchy below tol twice in a row; Richardson-extrapolate the
        // projectors with the observed geometric rate.
        double rho =
            gaps[m - 2] > 0 ? std::min(gaps[m - 1] / gaps[m - 2], 0.99) : 0.0;
        Subspace limit = next;
        if (rho > 1e-3 && next.dim() > 0) {
          Eigen::MatrixXd pc = cur->projector();
          Eigen::MatrixXd pn = next.projector();
          Eigen::MatrixXd pstar = pn + (pn - pc) * (rho / (1.0 - rho));
          pstar = 0.5 * (pstar + pstar.transpose());
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pstar);
          Eigen::MatrixXd rows(next.dim(), next.ambient_dim());
          // eigenvalues ascend: the top dim() eigenvectors span the limit
          for (int r = 0; r < next.dim(); ++r)
            rows.row(r) =
                eig.eigenvectors().col(next.ambient_dim() - 1 - r).transpose();
          limit = Subspace::from_rows(rows);
        }
        out.residual = grassmann_distance(limit, next);
        out.subalgebra =
            is_subalgebra(f.basis(), limit, std::max(tol * 100, 1e-8));
        if (!out.subalgebra) {
          out.divergence = DivergenceReport{
              "converged subspace fails the subalgebra check", gaps};
          return out;
        }
        out.limit = std::move(limit);
        return out;
      }
      // No decay over a long window: report divergence/oscillation.
      if (m >= 8) {
        double recent = *std::max_element(gaps.end() - 4, gaps.end());
        double older = *std::max_element(gaps.end() - 8, gaps.end() - 4);
        if (recent > kGeometricCut * older && recent > tol * 1e3) {
          out.divergence =
              DivergenceReport{"Grassmannian gaps are not contracting", gaps};
          return out;
        }
      }
    }
    cur = next;
  }
  out.divergence =
      DivergenceReport{"no convergence before parameter underflow", gaps};
  return out;
}

namespace {

std::vector<Eigen::VectorXd> default_directions(int m) {
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  return dirs;
}

double nearest_distance(const Subspace& s,
                        const std::vector<ConeStratum>& strata) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& st : strata)
    if (st.subspace.dim() == s.dim())
      best = std::min(best, grassmann_distance(s, st.subspace));
  return best;
}

Subspace adjoint_image(const lie::HallBasis& b, const Eigen::VectorXd& g,
                       const Subspace& s) {
  if (s.dim() == 0) return s;
  Eigen::MatrixXd rows(s.dim(), s.ambient_dim());
  for (int r = 0; r < s.dim(); ++r)
    rows.row(r) = lie::adjoint(b, g, Eigen::VectorXd(s.ortho().row(r)));
  return Subspace::from_rows(rows);
}

}  // namespace

ConeSample cone_g0(const frame::Frame& f, const Eigen::VectorXd& x,
                   const ConeSampling& sampling) {
  auto rep = f.check_hormander(x);
  if (!rep.satisfied)
    throw_domain("bracket condition fails at the cone base point");

  ConeSample out;
  std::vector<Eigen::VectorXd> dirs = sampling.directions.empty()
                                          ? default_directions(f.chart_dim())
                                          : sampling.directions;

  std::vector<std::pair<ApproachPath, double>> paths;
  paths.emplace_back(fixed_point_path(x), 0.0);
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    for (double lam : sampling.lambda_grid) {
      if (lam == 0.0) continue;  // covered by the fixed path
      ApproachPath p = linear_ratio_path(x, dirs[di], lam);
      p.label = "dir" + std::to_string(di) + ":" + p.label;
      paths.emplace_back(std::move(p), lam);
    }
    if (sampling.include_infinity) {
      ApproachPath p = sqrt_ratio_path(x, dirs[di]);
      p.label = "dir" + std::to_string(di) + ":" + p.label;
      paths.emplace_back(std::move(p),
                         std::numeric_limits<double>::infinity());
    }
  }

  for (auto& [path, param] : paths) {
    LimitResult res = limit_along(f, path, sampling.limit_tol);
    if (!res.converged()) {
      out.divergences.emplace_back(path.label, *res.divergence);
      continue;
    }
    if (nearest_distance(*res.limit, out.strata) < sampling.merge_tol)
      continue;
    ConeStratum st;
    st.subspace = *res.limit;
    st.label = path.label;
    st.approach_param = param;
    st.subalgebra = res.subalgebra;
    st.limit_residual = res.residual;
    out.strata.push_back(std::move(st));
  }

  // Adjoint-closure diagnostic: conjugating by small group elements must
  // land near the sampled set.
  const auto& b = f.basis();
  for (auto& st : out.strata) {
    bool closed = true;
    for (int i = 0; i < b.dim() && closed; ++i) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(b.dim());
        g[i] = sign * sampling.adjoint_scale;
        Subspace im = adjoint_image(b, g, st.subspace);
        double d = nearest_distance(im, out.strata);
        if (d > std::max(sampling.merge_tol, 2.0 * sampling.adjoint_scale)) {
          closed = false;
          break;
        }
      }
    }
    st.adjoint_closed = closed;
  }
  return out;
}

Eigen::VectorXd composed_functional(const frame::Frame& f,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& xi, double t) {
  if (xi.size() != f.chart_dim())
    throw_usage("composed_functional: cotangent size mismatch");
  const auto& b = f.basis();
  Eigen::MatrixXd a = f.anchor_matrix(x);
  Eigen::VectorXd eta(b.dim());
  for (int k = 0; k < b.dim(); ++k)
    eta[k] = std::pow(t, b.degree(k)) * a.col(k).dot(xi);
  return eta;
}

namespace {

// Annihilation residual of xi against a subspace: |proj_H xi| / |xi|.
double annihilation_residual(const Subspace& h, const Eigen::VectorXd& xi) {
  double n = xi.norm();
  if (n == 0.0) return 0.0;
  if (h.dim() == 0) return 0.0;  // every xi annihilates the zero subspace
  return (h.ortho() * xi).norm() / n;
}

}  // namespace

HnMembership hn_membership_def2(const frame::Frame& f,
                                const Eigen::VectorXd& x,
                                const Eigen::VectorXd& xi,
                                const ConeSampling& sampling, double tol) {
  HnMembership out;
  if (xi.norm() == 0.0) {
    out.member = true;
    out.witness = "zero-functional";
    return out;
  }
  ConeSample cone = cone_g0(f, x, sampling);
  out.residual = std::numeric_limits<double>::infinity();
  for (const auto& st : cone.strata) {
    double r = annihilation_residual(st.subspace, xi);
    if (r < out.residual) {
      out.residual = r;
      out.witness = st.label;
    }
  }
  if (out.residual <= tol) {
    out.member = true;
    return out;
  }

  // Optimize the ratio parameter continuously over each direction family.
  std::vector<Eigen::VectorXd> dirs = sampling.directions.empty()
                                          ? default_directions(f.chart_dim())
                                          : sampling.directions;
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    auto residual_at = [&](double lam) -> double {
      LimitResult res = limit_along(f, linear_ratio_path(x, dirs[di], lam),
                                    sampling.limit_tol);
      if (!res.converged()) return std::numeric_limits<double>::infinity();
      return annihilation_residual(*res.limit, xi);
    };
    // Coarse sweep on a tangent-spread grid, then golden-section refine.
    double best_lam = 0.0, best_r = residual_at(0.0);
    const int kGrid = 33;
    for (int i = 0; i < kGrid; ++i) {
      double theta = -1.55 + 3.10 * i / (kGrid - 1);
      double lam = std::tan(theta);
      double r = residual_at(lam);
      if (r < best_r) {
        best_r = r;
        best_lam = lam;
      }
    }
    double lo = best_lam - std::max(0.5, std::abs(best_lam) * 0.5);
    double hi = best_lam + std::max(0.5, std::abs(best_lam) * 0.5);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, bb = hi;
    double c1 = bb - gr * (bb - a), c2 = a + gr * (bb - a);
    double f1 = residual_at(c1), f2 = residual_at(c2);
    for (int it = 0; it < 48 && (bb - a) > 1e-12; ++it) {
      if (f1 < f2) {
        bb = c2;
        c2 = c1;
        f2 = f1;
        c1 = bb - gr * (bb - a);
        f1 = residual_at(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + gr * (bb - a);
        f2 = residual_at(c2);
      }
    }
    double refined = std::min(f1, f2);
    double lam_star = f1 < f2 ? c1 : c2;
    if (refined < out.residual) {
      out.residual = refined;
      std::ostringstream os;
      os << "dir" << di << ":ratio=" << lam_star;
      out.witness = os.str();
    }
    if (out.residual <= tol) break;
  }
  out.member = out.residual <= tol;
  return out;
}

namespace {

FunctionalLimit vector_limit(const std::function<Eigen::VectorXd(double)>& eta,
                             double s0, double tol) {
  FunctionalLimit out;
  std::vector<double> gaps;
  double s = s0;
  std::optional<Eigen::VectorXd> cur;
  for (int k = 0; k <= kMaxHalvings; ++k, s /= 2) {
    Eigen::VectorXd next = eta(s);
    if (!next.allFinite()) {
      out.divergence =
          DivergenceReport{"functional blows up along path", gaps};
      return out;
    }
    if (cur) {
      double d = (next - *cur).norm();
      gaps.push_back(d);
      out.iterations = k;
      const std::size_t m = gaps.size();
      if (m >= 2 && gaps[m - 2] <= tol && gaps[m - 1] <= tol) {
        double rho =
            gaps[m - 2] > 0 ? std::min(gaps[m - 1] / gaps[m - 2], 0.99) : 0.0;
        Eigen::VectorXd limit = next;
        if (rho > 1e-3) limit = next + (next - *cur) * (rho / (1.0 - rho));
        out.residual = (limit - next).norm();
        out.limit = std::move(limit);
        return out;
      }
      if (m >= 8) {
        double recent = *std::max_element(gaps.end() - 4, gaps.end());
        double older = *std::max_element(gaps.end() - 8, gaps.end() - 4);
        if (recent > kGeometricCut * older && recent > tol * 1e3) {
          out.divergence =
              DivergenceReport{"functional gaps are not contracting", gaps};
          return out;
        }
      }
    }
    cur = next;
  }
  out.divergence =
      DivergenceReport{"no convergence before parameter underflow", gaps};
  return out;
}

}  // namespace

FunctionalLimit hn_sample_def1(const frame::Frame& f, const CovectorPath& path,
                               double tol) {
  return vector_limit(
      [&](double s) {
        return composed_functional(f, path.x_of_s(s), path.xi_of_s(s),
                                   path.t_of_s(s));
      },
      path.s0, tol);
}

FunctionalLimit hn_attain_def1(const frame::Frame& f, const ApproachPath& path,
                               const Eigen::VectorXd& target, double tol) {
  if (target.size() != f.basis().dim())
    throw_usage("hn_attain_def1: target must live in the dual of g");
  const auto& b = f.basis();
  auto eta = [&](double s) {
    Eigen::VectorXd x = path.x_of_s(s);
    double t = path.t_of_s(s);
    Eigen::MatrixXd a = f.anchor_matrix(x);
    Eigen::MatrixXd m(b.dim(), f.chart_dim());
    for (int k = 0; k < b.dim(); ++k)
      m.row(k) = std::pow(t, b.degree(k)) * a.col(k).transpose();
    Eigen::VectorXd xi_hat = m.completeOrthogonalDecomposition().solve(target);
    return Eigen::VectorXd(m * xi_hat);
  };
  return vector_limit(eta, path.s0, tol);
}

}  // namespace hypocone::cones
