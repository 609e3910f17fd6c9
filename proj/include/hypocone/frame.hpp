#ifndef HYPOCONE_FRAME_HPP
#define HYPOCONE_FRAME_HPP

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "hypocone/hall.hpp"
#include "hypocone/poly.hpp"
#include "hypocone/subspace.hpp"

namespace hypocone::frame {

// A polynomial vector field on an m-dimensional chart: one coefficient
// function per coordinate direction.
struct PolyVF {
  std::vector<Poly> components;

  int chart_dim() const { return static_cast<int>(components.size()); }
  bool is_zero() const;
};

// [X,Y]^k = sum_j (X^j d_j Y^k - Y^j d_j X^k), exact in the term algebra.
PolyVF vf_bracket(const PolyVF& x, const PolyVF& y);

struct HormanderReport {
  bool satisfied = false;
  int depth = 0;     // smallest bracket length whose span fills T_x M
  int max_rank = 0;  // rank achieved at full depth
};

// A frame of n polynomial vector fields with the anchor from Hall words to
// iterated brackets, built once at construction. Immutable afterwards.
class Frame {
public:
  // fields: n vector fields, all real, matching chart_dim; step: nilpotency
  // step N of the model algebra; periodic: per-axis chart flags; domain:
  // per-axis [lo, hi] bounds for non-periodic axes.
  static Frame build(int chart_dim, std::vector<bool> periodic, int step,
                     std::vector<PolyVF> fields,
                     std::vector<std::pair<double, double>> domain = {},
                     int dim_cap = lie::HallBasis::kDefaultDimCap);

  int chart_dim() const { return m_; }
  int n_fields() const { return static_cast<int>(fields_.size()); }
  int step() const { return basis_->step(); }
  const std::vector<bool>& periodic() const { return periodic_; }
  const lie::HallBasis& basis() const { return *basis_; }
  const std::vector<PolyVF>& fields() const { return fields_; }
  // Anchored field of Hall word k (iterated vf_bracket of its children).
  const PolyVF& anchor(int k) const { return anchor_[k]; }
  const std::vector<std::pair<double, double>>& domain() const {
    return domain_;
  }

  bool in_chart(const Eigen::VectorXd& x) const;

  // Pointwise anchor evaluation: sum_k v_k anchor_k(x) in T_x M.
  Eigen::VectorXd anchor_at(const Eigen::VectorXd& v,
                            const Eigen::VectorXd& x) const;
  // Exact variant; nullopt when a trig coefficient prevents exact
  // evaluation at x.
  std::optional<RatVec> anchor_at(const RatVec& v, const RatVec& x) const;

  // m x dim(g) matrix of the evaluation map; columns are anchored Hall
  // words at x. Exact variant restricted to words of degree <= max_degree.
  Eigen::MatrixXd anchor_matrix(const Eigen::VectorXd& x) const;
  std::optional<RatMat> anchor_matrix_exact(const RatVec& x,
                                            int max_degree) const;

  HormanderReport check_hormander(const Eigen::VectorXd& x) const;
  HormanderReport check_hormander(const RatVec& x) const;

  // ker of the evaluation map at x; requires surjectivity (the bracket
  // condition at x), else throws ErrorCode::domain naming x.
  cones::Subspace kernel_at(const Eigen::VectorXd& x) const;
  cones::Subspace kernel_at(const RatVec& x) const;

  // Relative singular-value threshold for float rank decisions.
  static constexpr double kRankTol = 1e-10;

private:
  Frame() = default;

  int m_ = 0;
  std::vector<bool> periodic_;
  std::vector<PolyVF> fields_;
  std::shared_ptr<const lie::HallBasis> basis_;
  std::vector<PolyVF> anchor_;
  std::vector<std::pair<double, double>> domain_;
};

RatVec to_rational_point(const Eigen::VectorXd& x);

}  // namespace hypocone::frame

#endif
