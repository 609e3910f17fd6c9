#ifndef HYPOCONE_LIE_OPS_HPP
#define HYPOCONE_LIE_OPS_HPP

#include <Eigen/Dense>

#include "hypocone/hall.hpp"

namespace hypocone::lie {

// Elements of g and of g* are coordinate vectors in the Hall basis and its
// dual basis. Exact-rational vectors are authoritative; the double overloads
// are derived views for the numerical layers.

RatVec bracket(const HallBasis& b, const RatVec& a, const RatVec& c);
Eigen::VectorXd bracket(const HallBasis& b, const Eigen::VectorXd& a,
                        const Eigen::VectorXd& c);

// Graded dilation: the degree-d coordinate is scaled by t^d. Requires t > 0
// for the double overload; the rational overload accepts any t != 0 so that
// alpha_{1/t} stays exact.
RatVec dilate(const HallBasis& b, const Rational& t, const RatVec& a);
Eigen::VectorXd dilate(const HallBasis& b, double t, const Eigen::VectorXd& a);

// Group law of G in exponential coordinates: log(exp(a) exp(c)) evaluated in
// the degree-truncated free associative algebra.
RatVec bch(const HallBasis& b, const RatVec& a, const RatVec& c);
Eigen::VectorXd bch(const HallBasis& b, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& c);

inline RatVec group_inverse(RatVec a) {
  for (auto& x : a) x = -x;
  return a;
}
inline Eigen::VectorXd group_inverse(const Eigen::VectorXd& a) { return -a; }

// Ad_{exp(g)} v = e^{ad_g} v (finite sum by nilpotency).
RatVec adjoint(const HallBasis& b, const RatVec& g, const RatVec& v);
Eigen::VectorXd adjoint(const HallBasis& b, const Eigen::VectorXd& g,
                        const Eigen::VectorXd& v);

// Matrix of Ad_{exp(g)} in the Hall basis; column k is adjoint(g, e_k).
RatMat adjoint_matrix(const HallBasis& b, const RatVec& g);
Eigen::MatrixXd adjoint_matrix(const HallBasis& b, const Eigen::VectorXd& g);

// Coadjoint action (g . xi)(v) = xi(Ad_{g^{-1}} v) of the group point
// exp(g) on xi in g*.
RatVec coadjoint(const HallBasis& b, const RatVec& g, const RatVec& xi);
Eigen::VectorXd coadjoint(const HallBasis& b, const Eigen::VectorXd& g,
                          const Eigen::VectorXd& xi);

RatVec to_rational(const Eigen::VectorXd& v);
Eigen::VectorXd to_eigen(const RatVec& v);

}  // namespace hypocone::lie

#endif
