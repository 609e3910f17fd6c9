#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hypocone/errors.hpp"
#include "hypocone/symbols.hpp"

using namespace hypocone;
using namespace hypocone::symbols;
using testutil::vec2;

namespace {

// D_ell = X1^2 + X2^2 + i ell (X1 X2 - X2 X1), constant ell.
NCPoly d_ell(double ell_num, double ell_den = 1.0) {
  Rational ell(static_cast<long>(ell_num * ell_den), static_cast<long>(ell_den));
  ell.canonicalize();
  NCPoly p(2, 2);
  frame::Poly one = frame::Poly::constant(2, RationalC(Rational(1)));
  p.add_term(one, {1, 1});
  p.add_term(one, {2, 2});
  frame::Poly il = frame::Poly::constant(2, RationalC(Rational(0), ell));
  p.add_term(il, {1, 2});
  p.add_term(-il, {2, 1});
  return p;
}

}  // namespace

TEST_CASE("declared degree and top part behave as specified") {
  NCPoly d = d_ell(3);
  CHECK(d.hormander_degree() == 2);

  NCPoly empty(2, 2);
  CHECK(empty.hormander_degree() == NCPoly::kDegreeNegInf);

  // constant term only
  NCPoly c(2, 2);
  c.add_term(frame::Poly::constant(2, RationalC(Rational(5))), {});
  CHECK(c.hormander_degree() == 0);

  // P = X1 + f(x): top part drops the lower-degree term
  NCPoly p(2, 2);
  p.add_term(frame::Poly::constant(2, RationalC(Rational(1))), {1});
  p.add_term(frame::Poly::variable(2, 0), {});
  auto top = p.top_part_at(vec2(7.0, 0.0));
  REQUIRE(top.size() == 1);
  CHECK(top[0].word == std::vector<int>{1});

  // coefficient evaluation: sin(x) at pi/2 -> 1
  frame::Monomial sinx;
  sinx.coeff = RationalC(Rational(1));
  sinx.exponents = {0, 0};
  sinx.harmonics = {1, 0};
  sinx.phase = frame::Phase::sin;
  NCPoly q(2, 2);
  q.add_term(frame::Poly::monomial(sinx), {1});
  auto tq = q.top_part_at(vec2(M_PI / 2, 0.0));
  REQUIRE(tq.size() == 1);
  CHECK(tq[0].coeff.real() == doctest::Approx(1.0));
}

TEST_CASE("Hermite ladder-operator oracle: a = (t + d/dt)/sqrt2") {
  const int K = 32;
  Eigen::MatrixXcd t = hermite_position(K);
  Eigen::MatrixXcd d = hermite_derivative(K);
  Eigen::MatrixXcd a = (t + d) / std::sqrt(2.0);
  Eigen::MatrixXcd adag = (t - d) / std::sqrt(2.0);
  // a h_k = sqrt(k) h_{k-1}; adag h_k = sqrt(k+1) h_{k+1}
  for (int k = 1; k < K; ++k)
    CHECK(std::abs(a(k - 1, k) - std::sqrt(double(k))) < 1e-13);
  for (int k = 0; k + 1 < K; ++k)
    CHECK(std::abs(adag(k + 1, k) - std::sqrt(double(k + 1))) < 1e-13);
  // [a, adag] = I on the truncation interior
  Eigen::MatrixXcd comm = a * adag - adag * a;
  for (int k = 0; k < K - 1; ++k)
    for (int j = 0; j < K - 1; ++j)
      CHECK(std::abs(comm(k, j) - (k == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("dpi images: characters, Schrodinger tridiagonals, commutators") {
  auto b = lie::HallBasis::build(2, 2);
  Character c;
  c.mu = vec2(0.7, -0.3);
  auto im1 = dpi(c, b, 0);
  CHECK(im1.is_scalar);
  CHECK(im1.value == std::complex<double>(0.0, 0.7));
  CHECK(dpi(c, b, 2).value == std::complex<double>(0.0, 0.0));

  Schrodinger s;
  s.epsilon = -1;
  s.truncation = 64;
  auto x1 = dpi(s, b, 0);
  auto x2 = dpi(s, b, 1);
  auto x3 = dpi(s, b, 2);
  // it is tridiagonal with entries i sqrt(k/2), i sqrt((k+1)/2)
  for (int k = 0; k + 1 < 64; ++k) {
    std::complex<double> expect(0.0, std::sqrt((k + 1) / 2.0));
    CHECK(std::abs(x2.matrix(k + 1, k) - expect) < 1e-13);
    CHECK(std::abs(x2.matrix(k, k + 1) - expect) < 1e-13);
  }
  // [dpi(X1), dpi(X2)] = dpi(X3) = i eps on the interior block
  Eigen::MatrixXcd comm = x1.matrix * x2.matrix - x2.matrix * x1.matrix;
  for (int k = 0; k < 32; ++k)
    for (int j = 0; j < 32; ++j)
      CHECK(std::abs(comm(k, j) - x3.matrix(k, j)) < 1e-12);
}

TEST_CASE("custom representations validate their bracket relations") {
  auto b = lie::HallBasis::build(2, 2);
  const int K = 16;
  Custom good;
  good.images = {hermite_derivative(K),
                 std::complex<double>(0, 1) * hermite_position(K),
                 std::complex<double>(0, 1) *
                     Eigen::MatrixXcd::Identity(K, K)};
  good.tolerance = 1.0;  // truncation edge effects allowed
  CHECK_NOTHROW(validate_representation(good, b));
  Custom bad = good;
  bad.images[2] = 5.0 * bad.images[2];
  bad.tolerance = 1e-8;
  CHECK_THROWS_AS(validate_representation(bad, b), Error);
}

TEST_CASE("scalar symbol: sigma(D_ell, x, char(a,b)) = -(a^2+b^2)") {
  auto b = lie::HallBasis::build(2, 2);
  for (double ell : {0.0, 2.0, 3.0}) {
    NCPoly d = d_ell(ell);
    for (auto [av, bv] : {std::pair{1.0, 0.0}, {0.6, -0.8}, {2.0, 1.0}}) {
      Character c;
      c.mu = vec2(av, bv);
      auto s = symbol(d, vec2(0.3, 0.9), c, b);
      REQUIRE(s.is_scalar);
      CHECK(std::abs(s.value - std::complex<double>(-(av * av + bv * bv), 0)) <
            1e-12);
    }
  }
  // exact path
  NCPoly d3 = d_ell(3);
  auto exact = symbol_exact(d3, RatVec{Rational(0), Rational(1)},
                            {Rational(1), Rational(2)});
  REQUIRE(exact.has_value());
  CHECK(exact->re == Rational(-5));
  CHECK(is_zero(exact->im));
}

TEST_CASE("matrix symbol of D_ell is diagonal -(2k+1) - ell eps inside") {
  auto b = lie::HallBasis::build(2, 2);
  for (double ell : {0.0, 3.0}) {
    for (int eps : {1, -1}) {
      Schrodinger s;
      s.epsilon = eps;
      s.truncation = 64;
      auto sym = symbol(d_ell(ell), vec2(0.0, 1.0), s, b);
      REQUIRE(!sym.is_scalar);
      for (int k = 0; k < 32; ++k) {
        for (int j = 0; j < 32; ++j) {
          std::complex<double> expect =
              (k == j) ? std::complex<double>(-(2 * k + 1) - ell * eps, 0.0)
                       : std::complex<double>(0.0, 0.0);
          CHECK(std::abs(sym.matrix(k, j) - expect) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("zero polynomial maps to the zero operator") {
  auto b = lie::HallBasis::build(2, 2);
  NCPoly zero(2, 2);
  Schrodinger s;
  s.truncation = 16;
  auto sym = symbol(zero, vec2(0, 0), s, b);
  CHECK(sym.matrix.norm() == 0.0);
  CHECK(injectivity_margin(sym) == 0.0);
  Character c;
  c.mu = vec2(1, 0);
  CHECK(injectivity_margin(symbol(zero, vec2(0, 0), c, b)) == 0.0);
}

TEST_CASE("injectivity margins: harmonic oscillator spectrum") {
  auto b = lie::HallBasis::build(2, 2);
  Schrodinger s;
  s.truncation = 128;
  // ell = 0: margin 1 (spectrum -(2k+1))
  s.epsilon = 1;
  CHECK(injectivity_margin(symbol(d_ell(0), vec2(0, 0), s, b)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // ell = 3, eps = -1: eigenvalue -(2*1+1) + 3 = 0
  s.epsilon = -1;
  CHECK(injectivity_margin(symbol(d_ell(3), vec2(0, 0), s, b)) < 1e-6);
}

TEST_CASE("symbol multiplicativity for homogeneous word polynomials") {
  auto b = lie::HallBasis::build(2, 2);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> gen(1, 2);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Schrodinger s;
  s.truncation = 48;
  Eigen::VectorXd x = vec2(0.5, -0.5);
  for (int trial = 0; trial < 10; ++trial) {
    NCPoly p(2, 2), q(2, 2);
    for (int t = 0; t < 2; ++t) {
      p.add_term(frame::Poly::constant(2, RationalC(Rational(coeff(rng)))),
                 {gen(rng), gen(rng)});
      q.add_term(frame::Poly::constant(2, RationalC(Rational(coeff(rng)))),
                 {gen(rng)});
    }
    auto sp = symbol(p, x, s, b);
    auto sq = symbol(q, x, s, b);
    auto spq = symbol(p * q, x, s, b);
    CHECK((spq.matrix - sp.matrix * sq.matrix).norm() < 1e-10);
  }
}

TEST_CASE("unit-scale margins extend by homogeneity to other orbit scales") {
  auto b = lie::HallBasis::build(2, 2);
  NCPoly d = d_ell(2);
  Schrodinger unit;
  unit.epsilon = -1;
  unit.truncation = 96;
  double m1 = injectivity_margin(symbol(d, vec2(0, 0), unit, b));
  for (double r : {0.5, 1.0, 2.0}) {  // orbit scales 1/4, 1, 4
    auto scaled = scale_representation(Representation(unit), r);
    double mr = injectivity_margin(symbol(d, vec2(0, 0), scaled, b));
    CHECK(mr == doctest::Approx(r * r * m1).epsilon(1e-9));
  }
  Character c;
  c.mu = vec2(0.6, -0.8);
  double c1 = injectivity_margin(symbol(d, vec2(0, 0), c, b));
  auto c4 = scale_representation(Representation(c), 2.0);
  CHECK(injectivity_margin(symbol(d, vec2(0, 0), c4, b)) ==
        doctest::Approx(4.0 * c1).epsilon(1e-9));
}

TEST_CASE("characters agree with the classical elliptic symbol") {
  // elliptic frame, D = X1^2 + X2^2: sigma on char(xi1, xi2) = -(xi1^2+xi2^2)
  auto b = lie::HallBasis::build(2, 1);
  NCPoly lap(2, 2);
  frame::Poly one = frame::Poly::constant(2, RationalC(Rational(1)));
  lap.add_term(one, {1, 1});
  lap.add_term(one, {2, 2});
  Character c;
  c.mu = vec2(3.0, 4.0);
  auto s = symbol(lap, vec2(0, 0), c, b);
  CHECK(std::abs(s.value - std::complex<double>(-25.0, 0.0)) < 1e-12);
}

TEST_CASE("presentation independence holds on cone representations only") {
  auto b = lie::HallBasis::build(2, 2);
  // D = (1+x) d_y presented two ways at the same declared degree 2:
  // P_A = (1+x)(X1X2 - X2X1); P_B = (X1X2 - X2X1) + X2.
  frame::Poly one = frame::Poly::constant(2, RationalC(Rational(1)));
  frame::Poly onepx = one + frame::Poly::variable(2, 0);
  NCPoly pa(2, 2), pb(2, 2);
  pa.add_term(onepx, {1, 2});
  pa.add_term(-onepx, {2, 1});
  pb.add_term(one, {1, 2});
  pb.add_term(-one, {2, 1});
  pb.add_term(one, {2});

  Schrodinger s;
  s.truncation = 64;
  // at x = 0 the Schrodinger representations belong to the cone: agree
  for (int eps : {1, -1}) {
    s.epsilon = eps;
    auto sa = symbol(pa, vec2(0, 0), s, b);
    auto sb = symbol(pb, vec2(0, 0), s, b);
    CHECK((sa.matrix - sb.matrix).topLeftCorner(32, 32).norm() < 1e-12);
  }
  // characters (the x != 0 cone) also agree: both symbols vanish
  Character c;
  c.mu = vec2(1.0, 0.0);
  CHECK(std::abs(symbol(pa, vec2(1, 0), c, b).value) < 1e-12);
  CHECK(std::abs(symbol(pb, vec2(1, 0), c, b).value) < 1e-12);
  // off the cone at x = 1 the Schrodinger symbols differ: the criterion
  // only ever consults cone representations
  s.epsilon = 1;
  auto off_a = symbol(pa, vec2(1, 0), s, b);
  auto off_b = symbol(pb, vec2(1, 0), s, b);
  CHECK((off_a.matrix - off_b.matrix).topLeftCorner(32, 32).norm() > 0.5);
}

TEST_CASE("hypoellipticity criterion on the Grushin frame") {
  auto f = testutil::grushin();
  auto catalog = default_catalog(96, 8);
  std::vector<Eigen::VectorXd> grid{vec2(0, 0), vec2(0.5, 0), vec2(1, 0)};

  auto r0 = check_max_hypoelliptic(f, d_ell(0), grid, catalog);
  CHECK(r0.global);

  auto r2 = check_max_hypoelliptic(f, d_ell(2), grid, catalog);
  CHECK(r2.global);

  auto r3 = check_max_hypoelliptic(f, d_ell(3), grid, catalog);
  CHECK(!r3.global);
  CHECK(!r3.points[0].hypoelliptic);  // fails at the origin
  CHECK(r3.points[0].min_margin < 1e-6);
  CHECK(r3.points[1].hypoelliptic);  // passes away from x = 0
  CHECK(r3.points[2].hypoelliptic);
}

TEST_CASE("elliptic frames pass through the abelian catalog") {
  auto f = testutil::elliptic();
  auto catalog = default_catalog(64, 8);
  NCPoly lap(2, 2);
  frame::Poly one = frame::Poly::constant(2, RationalC(Rational(1)));
  lap.add_term(one, {1, 1});
  lap.add_term(one, {2, 2});
  auto rep = check_max_hypoelliptic(f, lap, {vec2(0.2, 0.4)}, catalog);
  CHECK(rep.global);
  CHECK(rep.points[0].min_margin == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unclassified strata raise an explicit error") {
  // g(2,3) has no built-in classifier
  using namespace hypocone::frame;
  Poly one = Poly::constant(2, RationalC(Rational(1)));
  Poly zero(2);
  Poly x = Poly::variable(2, 0);
  PolyVF x1{{one, zero}}, x2{{zero, x}};
  Frame f = Frame::build(2, {false, false}, 3, {x1, x2});
  NCPoly p(2, 2);
  p.add_term(one, {1, 1});
  auto catalog = default_catalog(32, 4);
  CHECK_THROWS_AS(
      check_max_hypoelliptic(f, p, {vec2(1.0, 0.0)}, catalog), Error);
}
