#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "hypocone/errors.hpp"
#include "hypocone/frame.hpp"
#include "hypocone/ratlinalg.hpp"

using namespace hypocone;
using namespace hypocone::frame;
using testutil::vec2;

TEST_CASE("[d_x, x d_y] = d_y") {
  PolyVF dx{{testutil::one2(), testutil::zero2()}};
  PolyVF xdy{{testutil::zero2(), testutil::x_var()}};
  PolyVF br = vf_bracket(dx, xdy);
  CHECK(br.components[0].is_zero());
  CHECK(br.components[1].str() == "1");
}

TEST_CASE("[X, X] = 0 for polynomial fields") {
  PolyVF x{{testutil::x_var() * testutil::x_var(), testutil::one2()}};
  PolyVF br = vf_bracket(x, x);
  CHECK(br.is_zero());
}

TEST_CASE("[d_x, sin(x) d_y] = cos(x) d_y") {
  Monomial sinx;
  sinx.coeff = RationalC(Rational(1));
  sinx.exponents = {0, 0};
  sinx.harmonics = {1, 0};
  sinx.phase = Phase::sin;
  PolyVF dx{{testutil::one2(), testutil::zero2()}};
  PolyVF sdy{{testutil::zero2(), Poly::monomial(sinx)}};
  PolyVF br = vf_bracket(dx, sdy);
  CHECK(br.components[0].is_zero());
  CHECK(br.components[1].str() == "cos(x1)");
}

TEST_CASE("vf_bracket satisfies Jacobi exactly on random polynomial fields") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> expo(0, 2);
  auto random_field = [&]() {
    PolyVF f;
    for (int c = 0; c < 2; ++c) {
      std::vector<Monomial> terms;
      for (int t = 0; t < 2; ++t) {
        Monomial m;
        m.coeff = RationalC(Rational(num(rng)));
        m.exponents = {expo(rng), expo(rng)};
        m.harmonics = {0, 0};
        terms.push_back(m);
      }
      f.components.push_back(normalized(2, terms));
    }
    return f;
  };
  for (int trial = 0; trial < 20; ++trial) {
    PolyVF a = random_field(), b = random_field(), c = random_field();
    PolyVF lhs = vf_bracket(a, vf_bracket(b, c));
    PolyVF r1 = vf_bracket(vf_bracket(a, b), c);
    PolyVF r2 = vf_bracket(b, vf_bracket(a, c));
    for (int k = 0; k < 2; ++k)
      CHECK(lhs.components[k] == r1.components[k] + r2.components[k]);
  }
}

TEST_CASE("Grushin anchor evaluation: (v1, v2 x + v3)") {
  Frame f = testutil::grushin();
  REQUIRE(f.basis().dim() == 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    RatVec v{Rational(num(rng)), Rational(num(rng)), Rational(num(rng))};
    RatVec x{Rational(num(rng)), Rational(num(rng))};
    auto tv = f.anchor_at(v, x);
    REQUIRE(tv.has_value());
    CHECK((*tv)[0] == v[0]);
    CHECK((*tv)[1] == v[1] * x[0] + v[2]);
  }
}

TEST_CASE("anchor is linear and vanishes on zero") {
  Frame f = testutil::grushin();
  Eigen::VectorXd x = vec2(0.3, -0.8);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  CHECK(f.anchor_at(zero, x).norm() == 0.0);
  std::mt19937_64 rng(91);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd v(3), w(3);
    for (int i = 0; i < 3; ++i) {
      v[i] = g(rng);
      w[i] = g(rng);
    }
    Eigen::VectorXd sum = f.anchor_at(v + w, x);
    Eigen::VectorXd parts = f.anchor_at(v, x) + f.anchor_at(w, x);
    CHECK((sum - parts).norm() < 1e-14);
  }
}

TEST_CASE("bracket condition on the Grushin frame") {
  Frame f = testutil::grushin();
  RatVec origin{Rational(0), Rational(0)};
  auto rep0 = f.check_hormander(origin);
  CHECK(rep0.satisfied);
  CHECK(rep0.depth == 2);
  RatVec off{Rational(1), Rational(0)};
  auto rep1 = f.check_hormander(off);
  CHECK(rep1.satisfied);
  CHECK(rep1.depth == 1);
}

TEST_CASE("a single field on a 2-chart can never satisfy the condition") {
  PolyVF dx{{testutil::one2(), testutil::zero2()}};
  Frame f = Frame::build(2, {false, false}, 3, {dx});
  auto rep = f.check_hormander(RatVec{Rational(0), Rational(0)});
  CHECK(!rep.satisfied);
  CHECK(rep.max_rank == 1);
}

TEST_CASE("Grushin kernel: span{X2 - x X3}, exact at rational points") {
  Frame f = testutil::grushin();
  for (int xi = -3; xi <= 3; ++xi) {
    RatVec x{Rational(xi), Rational(2)};
    auto ker = f.kernel_at(x);
    CHECK(ker.dim() == 1);  // rank-nullity: 3 - 2
    REQUIRE(ker.exact().has_value());
    const RatMat& rows = *ker.exact();
    REQUIRE(rows.size() == 1);
    // proportional to (0, 1, -x)
    CHECK(is_zero(rows[0][0]));
    CHECK(rows[0][2] == -Rational(xi) * rows[0][1]);
  }
}

TEST_CASE("kernel avoids generator directions where fields are independent") {
  Frame f = testutil::grushin();
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> num(1, 6);
  for (int trial = 0; trial < 10; ++trial) {
    RatVec x{Rational(num(rng)), Rational(num(rng))};  // x != 0
    auto ker = f.kernel_at(x);
    REQUIRE(ker.exact().has_value());
    // No kernel vector may be a pure generator combination: with x != 0 the
    // generator block has full rank, so v1 = v2 = 0 must force v3 = 0.
    for (const auto& row : *ker.exact()) {
      bool pure_generator = is_zero(row[2]);
      CHECK(!pure_generator);
    }
  }
}

TEST_CASE("kernel_at rejects points violating surjectivity") {
  PolyVF dx{{testutil::one2(), testutil::zero2()}};
  Frame f = Frame::build(2, {false, false}, 2, {dx});
  CHECK_THROWS_AS(f.kernel_at(RatVec{Rational(0), Rational(0)}), Error);
}

TEST_CASE("anchor surjectivity holds wherever the bracket condition does") {
  Frame f = testutil::grushin();
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    RatVec x{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    for (auto& c : x) c.canonicalize();
    auto rep = f.check_hormander(x);
    REQUIRE(rep.satisfied);
    auto m = f.anchor_matrix_exact(x, f.step());
    REQUIRE(m.has_value());
    CHECK(rank(*m) == 2);
  }
}

TEST_CASE("periodic axes reject polynomial coordinate factors") {
  PolyVF bad{{testutil::x_var(), testutil::zero2()}};
  CHECK_THROWS_AS(Frame::build(2, {true, false}, 2, {bad}), Error);
}
