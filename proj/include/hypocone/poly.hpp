#ifndef HYPOCONE_POLY_HPP
#define HYPOCONE_POLY_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hypocone/rational.hpp"

namespace hypocone::frame {

// Coefficient functions are polynomials with optional trigonometric factors
// cos(k.x) / sin(k.x): the smallest class containing the shipped models that
// is closed under products and derivatives with exact rational coefficients.

enum class Phase { cos, sin };

struct Monomial {
  RationalC coeff;
  std::vector<int> exponents;  // one per chart variable, >= 0
  std::vector<int> harmonics;  // integer frequency vector; all zero = pure
  Phase phase = Phase::cos;    // the trig factor; cos with zero harmonics = 1
};

class Poly {
public:
  Poly() = default;
  explicit Poly(int vars) : vars_(vars) {}

  static Poly constant(int vars, RationalC c);
  static Poly variable(int vars, int axis);
  static Poly monomial(Monomial m);

  int vars() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  bool has_trig() const;
  // Largest |harmonic| over all axes and terms (0 for pure polynomials).
  int max_harmonic() const;
  int max_exponent_on(int axis) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const RationalC& c) const;

  Poly derivative(int axis) const;

  // Exact evaluation; nullopt when a trig factor has a nonzero phase angle
  // (its value is then irrational in general).
  std::optional<RationalC> eval_exact(const RatVec& x) const;
  std::complex<double> eval(const Eigen::VectorXd& x) const;

  std::string str() const;

  bool operator==(const Poly& o) const;

private:
  void add_term(Monomial m);
  friend Poly normalized(int vars, std::vector<Monomial> raw);

  int vars_ = 0;
  std::vector<Monomial> terms_;  // canonically ordered, no zero coeffs
};

// Canonicalizes a raw term list (merging duplicates, fixing trig sign
// conventions, pruning zeros).
Poly normalized(int vars, std::vector<Monomial> raw);

}  // namespace hypocone::frame

#endif
