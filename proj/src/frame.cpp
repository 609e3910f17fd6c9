#include "hypocone/frame.hpp"

#include <sstream>

#include "hypocone/errors.hpp"
#include "hypocone/ratlinalg.hpp"

namespace hypocone::frame {

bool PolyVF::is_zero() const {
  for (const auto& p : components)
    if (!p.is_zero()) return false;
  return true;
}

PolyVF vf_bracket(const PolyVF& x, const PolyVF& y) {
  const int m = x.chart_dim();
  if (y.chart_dim() != m) throw_usage("vf_bracket: chart dimension mismatch");
  PolyVF out;
  out.components.reserve(m);
  for (int k = 0; k < m; ++k) {
    Poly acc(m);
    for (int j = 0; j < m; ++j) {
      acc = acc + x.components[j] * y.components[k].derivative(j) -
            y.components[j] * x.components[k].derivative(j);
    }
    out.components.push_back(std::move(acc));
  }
  return out;
}

Frame Frame::build(int chart_dim, std::vector<bool> periodic, int step,
                   std::vector<PolyVF> fields,
                   std::vector<std::pair<double, double>> domain,
                   int dim_cap) {
  if (chart_dim < 1) throw_model("chart dimension must be >= 1");
  if (fields.empty()) throw_model("frame needs at least one field");
  if (periodic.empty()) periodic.assign(chart_dim, false);
  if (static_cast<int>(periodic.size()) != chart_dim)
    throw_model("periodic flag count does not match chart dimension");
  for (const auto& f : fields) {
    if (f.chart_dim() != chart_dim)
      throw_model("field component count does not match chart dimension");
    for (int axis = 0; axis < chart_dim; ++axis) {
      for (const auto& p : f.components) {
        if (!p.is_real()) throw_model("frame fields must be real");
        if (periodic[axis] && p.max_exponent_on(axis) > 0)
          throw_model("polynomial coordinate factor on periodic axis " +
                      std::to_string(axis + 1));
      }
    }
  }
  if (domain.empty())
    domain.assign(chart_dim, {-1e3, 1e3});
  if (static_cast<int>(domain.size()) != chart_dim)
    throw_model("domain box count does not match chart dimension");

  Frame fr;
  fr.m_ = chart_dim;
  fr.periodic_ = std::move(periodic);
  fr.basis_ = std::make_shared<lie::HallBasis>(
      lie::HallBasis::build(static_cast<int>(fields.size()), step, dim_cap));
  fr.fields_ = std::move(fields);
  fr.domain_ = std::move(domain);

  const auto& words = fr.basis_->words();
  fr.anchor_.reserve(words.size());
  for (const auto& w : words) {
    if (w.is_generator()) {
      fr.anchor_.push_back(fr.fields_[w.generator - 1]);
    } else {
      fr.anchor_.push_back(
          vf_bracket(fr.anchor_[w.left], fr.anchor_[w.right]));
    }
  }
  return fr;
}

bool Frame::in_chart(const Eigen::VectorXd& x) const {
  if (x.size() != m_) return false;
  for (int i = 0; i < m_; ++i) {
    if (periodic_[i]) continue;
    if (x[i] < domain_[i].first || x[i] > domain_[i].second) return false;
  }
  return true;
}

Eigen::VectorXd Frame::anchor_at(const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& x) const {
  if (v.size() != basis_->dim()) throw_usage("anchor_at: element size");
  return anchor_matrix(x) * v;
}

Eigen::MatrixXd Frame::anchor_matrix(const Eigen::VectorXd& x) const {
  if (x.size() != m_) throw_usage("anchor_matrix: point size");
  Eigen::MatrixXd a(m_, basis_->dim());
  for (int k = 0; k < basis_->dim(); ++k)
    for (int r = 0; r < m_; ++r)
      a(r, k) = anchor_[k].components[r].eval(x).real();
  return a;
}

std::optional<RatMat> Frame::anchor_matrix_exact(const RatVec& x,
                                                 int max_degree) const {
  if (static_cast<int>(x.size()) != m_) throw_usage("anchor_matrix: point size");
  RatMat a(m_);
  int cols = 0;
  for (int k = 0; k < basis_->dim(); ++k)
    if (basis_->degree(k) <= max_degree) ++cols;
  for (auto& row : a) row.assign(cols, Rational(0));
  int col = 0;
  for (int k = 0; k < basis_->dim(); ++k) {
    if (basis_->degree(k) > max_degree) continue;
    for (int r = 0; r < m_; ++r) {
      auto v = anchor_[k].components[r].eval_exact(x);
      if (!v) return std::nullopt;
      if (!v->is_real())
        throw Error(ErrorCode::internal, "anchored field is not real");
      a[r][col] = v->re;
    }
    ++col;
  }
  return a;
}

std::optional<RatVec> Frame::anchor_at(const RatVec& v, const RatVec& x) const {
  if (static_cast<int>(v.size()) != basis_->dim())
    throw_usage("anchor_at: element size");
  auto m = anchor_matrix_exact(x, basis_->step());
  if (!m) return std::nullopt;
  RatVec out(m_, Rational(0));
  for (int r = 0; r < m_; ++r)
    for (int k = 0; k < basis_->dim(); ++k) out[r] += (*m)[r][k] * v[k];
  return out;
}

namespace {

std::string point_str(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ",";
    os << x[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

HormanderReport Frame::check_hormander(const Eigen::VectorXd& x) const {
  HormanderReport rep;
  Eigen::MatrixXd a = anchor_matrix(x);
  for (int d = 1; d <= basis_->step(); ++d) {
    int cols = 0;
    for (int k = 0; k < basis_->dim(); ++k)
      if (basis_->degree(k) <= d) ++cols;
    Eigen::MatrixXd sub(m_, cols);
    int c = 0;
    for (int k = 0; k < basis_->dim(); ++k)
      if (basis_->degree(k) <= d) sub.col(c++) = a.col(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    const auto& sv = svd.singularValues();
    double tol = kRankTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol) ++rank;
    rep.max_rank = rank;
    if (rank == m_) {
      rep.satisfied = true;
      rep.depth = d;
      return rep;
    }
  }
  return rep;
}

HormanderReport Frame::check_hormander(const RatVec& x) const {
  HormanderReport rep;
  for (int d = 1; d <= basis_->step(); ++d) {
    auto sub = anchor_matrix_exact(x, d);
    if (!sub) {
      // Trig coefficients force the float path.
      Eigen::VectorXd xf(m_);
      for (int i = 0; i < m_; ++i) xf[i] = to_double(x[i]);
      return check_hormander(xf);
    }
    int rank = static_cast<int>(hypocone::rank(*sub));
    rep.max_rank = rank;
    if (rank == m_) {
      rep.satisfied = true;
      rep.depth = d;
      return rep;
    }
  }
  return rep;
}

cones::Subspace Frame::kernel_at(const RatVec& x) const {
  auto a = anchor_matrix_exact(x, basis_->step());
  if (!a) {
    Eigen::VectorXd xf(m_);
    for (int i = 0; i < m_; ++i) xf[i] = to_double(x[i]);
    return kernel_at(xf);
  }
  if (static_cast<int>(hypocone::rank(*a)) != m_) {
    Eigen::VectorXd xf(m_);
    for (int i = 0; i < m_; ++i) xf[i] = to_double(x[i]);
    throw_domain("anchor evaluation is not surjective at " + point_str(xf));
  }
  RatMat basis_rows = nullspace(*a);
  return cones::Subspace::from_exact(basis_rows, basis_->dim());
}

cones::Subspace Frame::kernel_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd a = anchor_matrix(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeFullV | Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double tol = kRankTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  if (rank != m_)
    throw_domain("anchor evaluation is not surjective at " + point_str(x));
  Eigen::MatrixXd v = svd.matrixV();
  Eigen::MatrixXd rows = v.rightCols(basis_->dim() - rank).transpose();
  return cones::Subspace::from_rows(rows);
}

RatVec to_rational_point(const Eigen::VectorXd& x) {
  RatVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = Rational(x[i]);
  return out;
}

}  // namespace hypocone::frame
