#ifndef HYPOCONE_TEST_HELPERS_HPP
#define HYPOCONE_TEST_HELPERS_HPP

#include <Eigen/Dense>

#include "hypocone/frame.hpp"

namespace testutil {

using hypocone::Rational;
using hypocone::RationalC;
using hypocone::frame::Frame;
using hypocone::frame::Monomial;
using hypocone::frame::Phase;
using hypocone::frame::Poly;
using hypocone::frame::PolyVF;

inline Poly zero2() { return Poly(2); }
inline Poly one2() { return Poly::constant(2, RationalC(Rational(1))); }
inline Poly x_var() { return Poly::variable(2, 0); }

// X1 = d/dx, X2 = x d/dy on the plane chart.
inline Frame grushin() {
  PolyVF x1{{one2(), zero2()}};
  PolyVF x2{{zero2(), x_var()}};
  return Frame::build(2, {false, false}, 2, {x1, x2});
}

// X1 = d/dx, X2 = d/dy, step 1 (abelian model algebra).
inline Frame elliptic() {
  PolyVF x1{{one2(), zero2()}};
  PolyVF x2{{zero2(), one2()}};
  return Frame::build(2, {false, false}, 1, {x1, x2});
}

// X1 = d/dx, X2 = sin(x) d/dy on the torus.
inline Frame grushin_torus() {
  Monomial sinx;
  sinx.coeff = RationalC(Rational(1));
  sinx.exponents = {0, 0};
  sinx.harmonics = {1, 0};
  sinx.phase = Phase::sin;
  PolyVF x1{{one2(), zero2()}};
  PolyVF x2{{zero2(), Poly::monomial(sinx)}};
  return Frame::build(2, {true, true}, 2, {x1, x2});
}

inline Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

inline Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace testutil

#endif
