#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hypocone/cones.hpp"
#include "hypocone/errors.hpp"
#include "hypocone/lie_ops.hpp"

using namespace hypocone;
using namespace hypocone::cones;
using testutil::vec2;
using testutil::vec3;

namespace {

Subspace line3(double a, double b, double c) {
  Eigen::MatrixXd row(1, 3);
  row << a, b, c;
  return Subspace::from_rows(row);
}

}  // namespace

TEST_CASE("dilated Grushin kernel is span{(0, t, -x)} exactly") {
  auto f = testutil::grushin();
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Rational x(num(rng), den(rng)), t(std::abs(num(rng)) + 1, den(rng));
    x.canonicalize();
    t.canonicalize();
    RatVec pt{x, Rational(num(rng))};
    auto sub = dilated_kernel_exact(f, pt, t);
    REQUIRE(sub.has_value());
    REQUIRE(sub->exact().has_value());
    const RatMat& rows = *sub->exact();
    REQUIRE(rows.size() == 1);
    // proportional to (0, t, -x): check v3 * t = -x * v2
    CHECK(is_zero(rows[0][0]));
    CHECK(rows[0][2] * t == -x * rows[0][1]);
  }
}

TEST_CASE("dilated kernel at t = 1 equals the kernel") {
  auto f = testutil::grushin();
  Eigen::VectorXd x = vec2(0.7, -0.2);
  CHECK(grassmann_distance(dilated_kernel(f, x, 1.0), f.kernel_at(x)) < 1e-12);
}

TEST_CASE("dilation group property: K(x, s*t) = alpha_{1/s} K(x, t)") {
  auto f = testutil::grushin();
  Eigen::VectorXd x = vec2(0.4, 1.0);
  double s = 0.3, t = 0.8;
  Subspace lhs = dilated_kernel(f, x, s * t);
  Subspace base = dilated_kernel(f, x, t);
  // apply alpha_{1/s} to the base rows
  Eigen::MatrixXd rows = base.ortho();
  for (int k = 0; k < f.basis().dim(); ++k)
    rows.col(k) *= std::pow(1.0 / s, f.basis().degree(k));
  CHECK(grassmann_distance(lhs, Subspace::from_rows(rows)) < 1e-12);
}

TEST_CASE("Grushin limits: fixed x != 0 gives the center line") {
  auto f = testutil::grushin();
  auto res = limit_along(f, fixed_point_path(vec2(1.0, 0.0)), 1e-8);
  REQUIRE(res.converged());
  CHECK(res.residual < 1e-8);
  CHECK(res.subalgebra);
  CHECK(grassmann_distance(*res.limit, line3(0, 0, 1)) < 1e-7);
}

TEST_CASE("Grushin limits: x(s) = -lambda t(s) at the origin gives the "
          "lambda family") {
  auto f = testutil::grushin();
  Eigen::VectorXd origin = vec2(0, 0);
  Eigen::VectorXd ex = vec2(1, 0);
  for (double lam : {0.0, 0.5, -1.0, 2.0}) {
    auto res = limit_along(f, linear_ratio_path(origin, ex, -lam), 1e-8);
    REQUIRE(res.converged());
    CHECK(res.subalgebra);
    // kernel (0, t, -x) with x = -lam t is (0, 1, lam)
    CHECK(grassmann_distance(*res.limit, line3(0, 1, lam)) < 1e-7);
  }
}

TEST_CASE("Grushin limits: x(s) = sqrt(s) drives the ratio to infinity") {
  auto f = testutil::grushin();
  auto res = limit_along(f, sqrt_ratio_path(vec2(0, 0), vec2(1, 0)), 1e-8);
  REQUIRE(res.converged());
  CHECK(grassmann_distance(*res.limit, line3(0, 0, 1)) < 1e-6);
}

TEST_CASE("subalgebra checks in g(2,2) and g(2,3)") {
  auto b22 = lie::HallBasis::build(2, 2);
  CHECK(is_subalgebra(b22, line3(0, 0, 1), 1e-10));  // the center
  CHECK(is_subalgebra(b22, line3(1, 2, 3), 1e-10));  // any line
  // span{X1, X2} in g(2,3) is not a subalgebra: [X1,X2] escapes.
  auto b23 = lie::HallBasis::build(2, 3);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2, b23.dim());
  rows(0, 0) = 1;
  rows(1, 1) = 1;
  CHECK(!is_subalgebra(b23, Subspace::from_rows(rows), 1e-10));
  // exact variant agrees
  RatMat exact_rows(2, RatVec(b23.dim(), Rational(0)));
  exact_rows[0][0] = 1;
  exact_rows[1][1] = 1;
  CHECK(!is_subalgebra(b23, Subspace::from_exact(exact_rows, b23.dim()),
                       1e-10));
}

TEST_CASE("cone over Grushin x != 0 is exactly the center line") {
  auto f = testutil::grushin();
  auto cone = cone_g0(f, vec2(1.0, 0.5));
  REQUIRE(cone.strata.size() == 1);
  CHECK(grassmann_distance(cone.strata[0].subspace, line3(0, 0, 1)) < 1e-7);
  CHECK(cone.strata[0].subalgebra);
  CHECK(cone.strata[0].adjoint_closed);
}

TEST_CASE("cone over Grushin x = 0 carries the whole ratio family") {
  auto f = testutil::grushin();
  auto cone = cone_g0(f, vec2(0.0, 0.0));
  // fixed path gives ratio 0; each nonzero grid ratio (both x directions
  // collapse to the same line for +-lambda pairs) and infinity appear.
  REQUIRE(cone.strata.size() >= 6);
  bool has_center = false;
  int family = 0;
  for (const auto& st : cone.strata) {
    CHECK(st.subalgebra);
    CHECK(st.adjoint_closed);
    if (grassmann_distance(st.subspace, line3(0, 0, 1)) < 1e-6)
      has_center = true;
    else
      ++family;
  }
  CHECK(has_center);
  CHECK(family >= 5);
}

TEST_CASE("cone over the elliptic frame is the zero subspace alone") {
  auto f = testutil::elliptic();
  auto cone = cone_g0(f, vec2(0.3, 0.4));
  REQUIRE(cone.strata.size() == 1);
  CHECK(cone.strata[0].subspace.dim() == 0);
  CHECK(cone.strata[0].subalgebra);
}

TEST_CASE("membership via annihilators at Grushin x != 0") {
  auto f = testutil::grushin();
  ConeSampling sampling;
  Eigen::VectorXd x = vec2(1.0, 0.0);
  // f3 = 0: member
  auto yes = hn_membership_def2(f, x, vec3(1.0, -2.0, 0.0), sampling, 1e-6);
  CHECK(yes.member);
  // f3 != 0: not a member
  auto no = hn_membership_def2(f, x, vec3(0.0, 0.0, 1.0), sampling, 1e-6);
  CHECK(!no.member);
  CHECK(no.residual > 0.5);
}

TEST_CASE("membership at Grushin x = 0 covers all of the dual space") {
  auto f = testutil::grushin();
  ConeSampling sampling;
  Eigen::VectorXd origin = vec2(0.0, 0.0);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd xi(3);
    for (int i = 0; i < 3; ++i) xi[i] = g(rng);
    auto res = hn_membership_def2(f, origin, xi, sampling, 1e-6);
    CHECK(res.member);
  }
  // zero functional is always a member
  CHECK(hn_membership_def2(f, origin, Eigen::VectorXd::Zero(3), sampling,
                           1e-6)
            .member);
}

TEST_CASE("composed functional carries positive dilation powers") {
  auto f = testutil::grushin();
  Eigen::VectorXd eta =
      composed_functional(f, vec2(0.0, 0.0), vec2(3.0, 5.0), 0.25);
  // columns at origin: (1,0), (0,0), (0,1); degrees 1,1,2
  CHECK(eta[0] == doctest::Approx(0.25 * 3.0));
  CHECK(eta[1] == doctest::Approx(0.0));
  CHECK(eta[2] == doctest::Approx(0.25 * 0.25 * 5.0));
}

TEST_CASE("def-1 limit with constant cotangent is the zero functional") {
  auto f = testutil::grushin();
  CovectorPath p;
  p.x_of_s = [](double) { return vec2(0.5, 0.0); };
  p.xi_of_s = [](double) { return vec2(1.0, 2.0); };
  p.t_of_s = [](double s) { return s; };
  auto res = hn_sample_def1(f, p, 1e-10);
  REQUIRE(res.converged());
  CHECK(res.limit->norm() < 1e-9);
}

TEST_CASE("def-1 path with xi = (0, c/t^2) reaches the center direction") {
  auto f = testutil::grushin();
  const double c = 2.5;
  CovectorPath p;
  p.x_of_s = [](double) { return vec2(0.0, 0.0); };
  p.t_of_s = [](double s) { return s; };
  p.xi_of_s = [](double s) { return vec2(0.0, 2.5 / (s * s)); };
  auto res = hn_sample_def1(f, p, 1e-10);
  REQUIRE(res.converged());
  CHECK((*res.limit - vec3(0.0, 0.0, c)).norm() < 1e-9);
}

TEST_CASE("def-1 attainability construction hits requested functionals") {
  auto f = testutil::grushin();
  Eigen::VectorXd origin = vec2(0.0, 0.0);
  // at x = 0 the whole dual space is attainable
  for (auto target : {vec3(0, 0, 1), vec3(1, 0, 0), vec3(2, 0, -3)}) {
    auto res = hn_attain_def1(f, fixed_point_path(origin), target, 1e-10);
    REQUIRE(res.converged());
    CHECK((*res.limit - target).norm() < 1e-8);
  }
  // at x = 1 only f3 = 0 functionals are attainable along the fixed path
  auto res =
      hn_attain_def1(f, fixed_point_path(vec2(1.0, 0.0)), vec3(1, 2, 0),
                     1e-10);
  REQUIRE(res.converged());
  CHECK((*res.limit - vec3(1, 2, 0)).norm() < 1e-8);
}

TEST_CASE("def-1 limits are def-2 members (sampled cross-containment)") {
  auto f = testutil::grushin();
  ConeSampling sampling;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  const double tol = 1e-7;
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::VectorXd x0 = vec2(0.25 * g(rng), 0.25 * g(rng));
    Eigen::VectorXd target(3);
    for (int i = 0; i < 3; ++i) target[i] = g(rng);
    auto lim = hn_attain_def1(f, fixed_point_path(x0), target, 1e-10);
    if (!lim.converged() || lim.limit->norm() < 1e-9) continue;
    auto mem = hn_membership_def2(f, x0, *lim.limit, sampling, 10 * tol);
    CHECK(mem.member);
    ++checked;
  }
  CHECK(checked > 10);
}
