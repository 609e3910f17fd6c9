#ifndef HYPOCONE_NCPOLY_HPP
#define HYPOCONE_NCPOLY_HPP

#include <climits>
#include <complex>
#include <optional>
#include <vector>

#include "hypocone/poly.hpp"

namespace hypocone::symbols {

// One term of a noncommutative operator polynomial: a coefficient function
// of the base point times a word in the generators (1-based indices; the
// empty word is the constant term).
struct NCTerm {
  frame::Poly coeff;
  std::vector<int> word;
};

class NCPoly {
public:
  NCPoly(int chart_vars, int generators)
      : vars_(chart_vars), n_(generators) {}

  int chart_vars() const { return vars_; }
  int generators() const { return n_; }
  const std::vector<NCTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Merges into canonical form; rejects out-of-range generator indices.
  void add_term(frame::Poly coeff, std::vector<int> word);

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator*(const NCPoly& o) const;  // word concatenation
  NCPoly scaled(const RationalC& c) const;

  // Declared degree: max word length (not the minimal rewriting degree).
  static constexpr int kDegreeNegInf = INT_MIN;
  int hormander_degree() const;

  // Top homogeneous part with coefficients evaluated at x.
  struct TopTerm {
    std::complex<double> coeff;
    std::vector<int> word;
  };
  std::vector<TopTerm> top_part_at(const Eigen::VectorXd& x) const;

  struct TopTermExact {
    RationalC coeff;
    std::vector<int> word;
  };
  // nullopt when a coefficient cannot be evaluated exactly at x.
  std::optional<std::vector<TopTermExact>> top_part_at_exact(
      const RatVec& x) const;

private:
  int vars_;
  int n_;
  std::vector<NCTerm> terms_;
};

}  // namespace hypocone::symbols

#endif
