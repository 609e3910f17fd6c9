#ifndef HYPOCONE_SYMBOLS_HPP
#define HYPOCONE_SYMBOLS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypocone/cones.hpp"
#include "hypocone/frame.hpp"
#include "hypocone/ncpoly.hpp"
#include "hypocone/representation.hpp"

namespace hypocone::symbols {

// sigma(D, x, pi): the top homogeneous part of P frozen at x, evaluated on
// the differentiated representation (matrices multiplied in word order).
SymbolOperator symbol(const NCPoly& p, const Eigen::VectorXd& x,
                      const Representation& rep, const lie::HallBasis& b);

// Exact scalar symbol for characters with rational data; nullopt when the
// coefficients cannot be evaluated exactly at x.
std::optional<RationalC> symbol_exact(const NCPoly& p, const RatVec& x,
                                      const std::vector<Rational>& mu);

// Numerical injectivity proxy: |value| for scalars, smallest singular value
// of the leading interior block for matrices.
double injectivity_margin(const SymbolOperator& s,
                          double interior_fraction = 0.5);

// Maps a discovered cone stratum to the unit-scale representation
// representatives to test; nullopt marks an unclassified stratum.
struct RepCatalog {
  std::function<std::optional<std::vector<Representation>>(
      const lie::HallBasis&, const cones::Subspace&)>
      classify;
  std::string name;
};

// Built-in classifiers: characters on the unit sphere of the annihilator
// for abelian (step-1) algebras; characters + both Schrodinger signs for
// the Heisenberg algebra g(2,2). Anything else is unclassified.
RepCatalog default_catalog(int schrodinger_truncation = 128,
                           int character_samples = 8);

struct PointVerdict {
  Eigen::VectorXd x;
  double min_margin = 0.0;
  std::string worst_rep;
  std::string worst_stratum;
  bool hypoelliptic = false;
  int strata_count = 0;
};

struct HypoReport {
  std::vector<PointVerdict> points;
  bool global = false;
  double tol = 0.0;
};

// Point verdict: min margin over the stratum catalog > tol; global verdict:
// conjunction over the grid. Unclassified strata raise ErrorCode::model.
HypoReport check_max_hypoelliptic(
    const frame::Frame& f, const NCPoly& p,
    const std::vector<Eigen::VectorXd>& grid, const RepCatalog& catalog,
    double tol = 1e-6, const cones::ConeSampling& sampling = {});

}  // namespace hypocone::symbols

#endif
