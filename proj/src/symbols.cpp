#include "hypocone/symbols.hpp"

#include <cmath>
#include <limits>

#include "hypocone/errors.hpp"

namespace hypocone::symbols {

SymbolOperator symbol(const NCPoly& p, const Eigen::VectorXd& x,
                      const Representation& rep, const lie::HallBasis& b) {
  if (p.generators() != b.generators())
    throw_usage("operator generator count does not match the basis");
  auto top = p.top_part_at(x);
  SymbolOperator out;
  if (std::holds_alternative<Character>(rep)) {
    const auto& mu = std::get<Character>(rep).mu;
    if (mu.size() != b.generators())
      throw_usage("character size does not match the generator count");
    out.is_scalar = true;
    out.value = {0.0, 0.0};
    for (const auto& t : top) {
      std::complex<double> w(1.0, 0.0);
      for (int g : t.word) w *= std::complex<double>(0.0, mu[g - 1]);
      out.value += t.coeff * w;
    }
    return out;
  }
  const int K = rep_dimension(rep);
  out.is_scalar = false;
  out.matrix = Eigen::MatrixXcd::Zero(K, K);
  // generator images only: words are generator sequences
  std::vector<Eigen::MatrixXcd> gen(b.generators());
  for (int g = 0; g < b.generators(); ++g) gen[g] = dpi(rep, b, g).matrix;
  for (const auto& t : top) {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(K, K);
    for (int g : t.word) w *= gen[g - 1];
    out.matrix += t.coeff * w;
  }
  return out;
}

std::optional<RationalC> symbol_exact(const NCPoly& p, const RatVec& x,
                                      const std::vector<Rational>& mu) {
  auto top = p.top_part_at_exact(x);
  if (!top) return std::nullopt;
  RationalC acc;
  const RationalC i_unit(Rational(0), Rational(1));
  for (const auto& t : *top) {
    RationalC w(Rational(1));
    for (int g : t.word) {
      if (g < 1 || g > (int)mu.size())
        throw_usage("character size does not match the generator count");
      w *= i_unit * RationalC(mu[g - 1]);
    }
    acc += t.coeff * w;
  }
  return acc;
}

double injectivity_margin(const SymbolOperator& s, double interior_fraction) {
  if (s.is_scalar) return std::abs(s.value);
  const int K = static_cast<int>(s.matrix.rows());
  int inner = std::max(1, static_cast<int>(std::ceil(interior_fraction * K)));
  inner = std::min(inner, K);
  Eigen::MatrixXcd block = s.matrix.topLeftCorner(inner, inner);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  return svd.singularValues().minCoeff();
}

namespace {

// Orthonormal basis (rows) of the annihilator of H, optionally intersected
// with the span of the degree-1 coordinates.
Eigen::MatrixXd annihilator_rows(const lie::HallBasis& b,
                                 const cones::Subspace& h,
                                 bool degree_one_only) {
  const int dim = b.dim();
  std::vector<Eigen::RowVectorXd> rows;
  for (int r = 0; r < h.dim(); ++r) rows.push_back(h.ortho().row(r));
  if (degree_one_only) {
    for (int k = 0; k < dim; ++k) {
      if (b.degree(k) > 1) {
        Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(dim);
        e[k] = 1.0;
        rows.push_back(e);
      }
    }
  }
  Eigen::MatrixXd m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i];
  if (rows.empty()) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  int rank = 0;
  const auto& sv = svd.singularValues();
  double tol = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return svd.matrixV().rightCols(dim - rank).transpose();
}

// Deterministic unit samples of the sphere in the row span.
std::vector<Eigen::VectorXd> sphere_samples(const Eigen::MatrixXd& rows,
                                            int count) {
  std::vector<Eigen::VectorXd> out;
  const int p = static_cast<int>(rows.rows());
  if (p == 0) return out;
  if (p == 1) {
    out.push_back(rows.row(0));
    out.push_back(-rows.row(0));
    return out;
  }
  if (p == 2) {
    for (int i = 0; i < count; ++i) {
      double theta = 2.0 * M_PI * i / count;
      out.push_back(std::cos(theta) * rows.row(0) +
                    std::sin(theta) * rows.row(1));
    }
    return out;
  }
  // higher-dimensional annihilators: a deterministic spiral sample
  for (int i = 0; i < count * p; ++i) {
    Eigen::VectorXd c(p);
    for (int j = 0; j < p; ++j)
      c[j] = std::cos(0.5 + 2.399963 * i + 1.7 * j) *
             (1.0 + 0.3 * std::sin(1.3 * i + j));
    c.normalize();
    out.push_back(rows.transpose() * c);
  }
  return out;
}

}  // namespace

RepCatalog default_catalog(int schrodinger_truncation, int character_samples) {
  RepCatalog cat;
  cat.name = "builtin";
  cat.classify = [schrodinger_truncation, character_samples](
                     const lie::HallBasis& b, const cones::Subspace& h)
      -> std::optional<std::vector<Representation>> {
    std::vector<Representation> reps;
    const bool heisenberg = (b.generators() == 2 && b.step() == 2);
    if (b.step() == 1) {
      // abelian: irreducibles are characters; sample the annihilator sphere
      Eigen::MatrixXd ann = annihilator_rows(b, h, false);
      for (const auto& xi : sphere_samples(ann, character_samples)) {
        Character c;
        c.mu = xi;  // dim == generators for step 1
        reps.emplace_back(std::move(c));
      }
      return reps;
    }
    if (!heisenberg) return std::nullopt;

    // characters live on the annihilator functionals with no center
    // component
    Eigen::MatrixXd ann1 = annihilator_rows(b, h, true);
    for (const auto& xi : sphere_samples(ann1, character_samples)) {
      Character c;
      c.mu = xi.head(2);
      if (c.mu.norm() < 1e-12) continue;
      c.mu.normalize();
      reps.emplace_back(std::move(c));
    }
    // the center is annihilated iff X3 lies in H
    Eigen::VectorXd e3 = Eigen::VectorXd::Zero(b.dim());
    e3[2] = 1.0;
    const bool center_in_h = h.dim() > 0 && h.residual(e3) < 1e-9;
    if (!center_in_h) {
      for (int eps : {1, -1}) {
        Schrodinger s;
        s.epsilon = eps;
        s.truncation = schrodinger_truncation;
        reps.emplace_back(std::move(s));
      }
    }
    return reps;
  };
  return cat;
}

HypoReport check_max_hypoelliptic(const frame::Frame& f, const NCPoly& p,
                                  const std::vector<Eigen::VectorXd>& grid,
                                  const RepCatalog& catalog, double tol,
                                  const cones::ConeSampling& sampling) {
  if (grid.empty()) throw_usage("hypoellipticity check needs a point grid");
  HypoReport report;
  report.tol = tol;
  report.global = true;
  for (const auto& x : grid) {
    cones::ConeSample cone = cones::cone_g0(f, x, sampling);
    PointVerdict verdict;
    verdict.x = x;
    verdict.strata_count = static_cast<int>(cone.strata.size());
    verdict.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& stratum : cone.strata) {
      auto reps = catalog.classify(f.basis(), stratum.subspace);
      if (!reps)
        throw_model("unclassified stratum '" + stratum.label +
                    "' in catalog '" + catalog.name + "'");
      for (const auto& rep : *reps) {
        validate_representation(rep, f.basis());
        double margin = injectivity_margin(symbol(p, x, rep, f.basis()));
        if (margin < verdict.min_margin) {
          verdict.min_margin = margin;
          verdict.worst_rep = describe(rep);
          verdict.worst_stratum = stratum.label;
        }
      }
    }
    verdict.hypoelliptic = verdict.min_margin > tol;
    report.global = report.global && verdict.hypoelliptic;
    report.points.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace hypocone::symbols
