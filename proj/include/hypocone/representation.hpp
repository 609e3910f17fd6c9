#ifndef HYPOCONE_REPRESENTATION_HPP
#define HYPOCONE_REPRESENTATION_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "hypocone/hall.hpp"

namespace hypocone::symbols {

// A character of G: generators map to i mu_j, all brackets to 0.
struct Character {
  Eigen::VectorXd mu;

  std::string describe() const;
};

// Truncated Schrodinger representation of the Heisenberg group g(2,2) in the
// Hermite-function basis (physicists' convention, ladder a = (t + d/dt)/sqrt2).
// scale r realizes the graded orbit dilation: central parameter r^2 epsilon.
struct Schrodinger {
  int epsilon = 1;  // +-1
  int truncation = 128;
  double scale = 1.0;

  std::string describe() const;
};

// User-supplied generator images, one per Hall basis element.
struct Custom {
  std::vector<Eigen::MatrixXcd> images;
  double tolerance = 1e-8;

  std::string describe() const;
};

using Representation = std::variant<Character, Schrodinger, Custom>;

std::string describe(const Representation& rep);

// 0 for scalar (character) representations.
int rep_dimension(const Representation& rep);

// Checks structural consistency: Schrodinger needs the Heisenberg basis;
// Custom images must reproduce the structure constants within tolerance.
// Throws ErrorCode::model on violation.
void validate_representation(const Representation& rep,
                             const lie::HallBasis& b);

struct SymbolOperator {
  bool is_scalar = true;
  std::complex<double> value{0.0, 0.0};
  Eigen::MatrixXcd matrix;
};

// Matrix of multiplication by t in the Hermite basis (symmetric tridiagonal).
Eigen::MatrixXcd hermite_position(int K);
// Matrix of d/dt in the Hermite basis (antisymmetric tridiagonal).
Eigen::MatrixXcd hermite_derivative(int K);

// Image of the Hall basis element under the differentiated representation.
SymbolOperator dpi(const Representation& rep, const lie::HallBasis& b,
                   int word_index);

// Orbit dilation: characters scale mu linearly; Schrodinger scales the
// central parameter quadratically.
Representation scale_representation(const Representation& rep, double r);

}  // namespace hypocone::symbols

#endif
