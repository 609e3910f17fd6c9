#include "hypocone/lie_ops.hpp"

#include "hypocone/errors.hpp"

namespace hypocone::lie {

namespace {

void check_sized(const HallBasis& b, std::size_t n, const char* what) {
  if (static_cast<int>(n) != b.dim())
    throw_usage(std::string(what) + ": coordinate length " +
                std::to_string(n) + " does not match dim " +
                std::to_string(b.dim()));
}

}  // namespace

RatVec to_rational(const Eigen::VectorXd& v) {
  RatVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

Eigen::VectorXd to_eigen(const RatVec& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

RatVec bracket(const HallBasis& b, const RatVec& a, const RatVec& c) {
  check_sized(b, a.size(), "bracket");
  check_sized(b, c.size(), "bracket");
  RatVec out(b.dim(), Rational(0));
  for (int i = 0; i < b.dim(); ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; j < b.dim(); ++j) {
      if (is_zero(c[j])) continue;
      for (const auto& [k, s] : b.basis_bracket(i, j)) out[k] += a[i] * c[j] * s;
    }
  }
  return out;
}

Eigen::VectorXd bracket(const HallBasis& b, const Eigen::VectorXd& a,
                        const Eigen::VectorXd& c) {
  check_sized(b, a.size(), "bracket");
  check_sized(b, c.size(), "bracket");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < b.dim(); ++j) {
      if (c[j] == 0.0) continue;
      for (const auto& [k, s] : b.basis_bracket(i, j))
        out[k] += a[i] * c[j] * to_double(s);
    }
  }
  return out;
}

RatVec dilate(const HallBasis& b, const Rational& t, const RatVec& a) {
  check_sized(b, a.size(), "dilate");
  if (is_zero(t)) throw_usage("dilate: t must be nonzero");
  RatVec out(b.dim(), Rational(0));
  for (int k = 0; k < b.dim(); ++k) {
    if (is_zero(a[k])) continue;
    Rational p(1);
    for (int d = 0; d < b.degree(k); ++d) p *= t;
    out[k] = p * a[k];
  }
  return out;
}

Eigen::VectorXd dilate(const HallBasis& b, double t, const Eigen::VectorXd& a) {
  check_sized(b, a.size(), "dilate");
  if (!(t > 0.0)) throw_usage("dilate: t must be positive");
  Eigen::VectorXd out(b.dim());
  for (int k = 0; k < b.dim(); ++k) out[k] = std::pow(t, b.degree(k)) * a[k];
  return out;
}

namespace {

WordPoly to_word_poly(const HallBasis& b, const RatVec& a) {
  WordPoly p;
  for (int k = 0; k < b.dim(); ++k)
    if (!is_zero(a[k])) wp_axpy(p, a[k], b.expansion(k));
  return p;
}

}  // namespace

RatVec bch(const HallBasis& b, const RatVec& a, const RatVec& c) {
  check_sized(b, a.size(), "bch");
  check_sized(b, c.size(), "bch");
  const int N = b.step();
  WordPoly ga = wp_exp(to_word_poly(b, a), N);
  WordPoly gc = wp_exp(to_word_poly(b, c), N);
  WordPoly z = wp_log(wp_mul(ga, gc, N), N);
  return b.coords_of_word_poly(z);
}

Eigen::VectorXd bch(const HallBasis& b, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& c) {
  std::vector<double> av(a.data(), a.data() + a.size());
  std::vector<double> cv(c.data(), c.data() + c.size());
  std::vector<double> out = b.bch_double(av, cv);
  return Eigen::Map<Eigen::VectorXd>(out.data(), out.size());
}

RatVec adjoint(const HallBasis& b, const RatVec& g, const RatVec& v) {
  check_sized(b, g.size(), "adjoint");
  check_sized(b, v.size(), "adjoint");
  RatVec out = v;
  RatVec term = v;  // ad_g^k v / k!
  for (int k = 1; k <= b.step(); ++k) {
    term = bracket(b, g, term);
    bool zero = true;
    for (auto& x : term) {
      x /= k;
      if (!is_zero(x)) zero = false;
    }
    if (zero) break;
    for (int i = 0; i < b.dim(); ++i) out[i] += term[i];
  }
  return out;
}

Eigen::VectorXd adjoint(const HallBasis& b, const Eigen::VectorXd& g,
                        const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v;
  Eigen::VectorXd term = v;
  for (int k = 1; k <= b.step(); ++k) {
    term = bracket(b, g, term) / double(k);
    if (term.isZero(0.0)) break;
    out += term;
  }
  return out;
}

RatMat adjoint_matrix(const HallBasis& b, const RatVec& g) {
  RatMat m(b.dim(), RatVec(b.dim(), Rational(0)));
  for (int k = 0; k < b.dim(); ++k) {
    RatVec e(b.dim(), Rational(0));
    e[k] = 1;
    RatVec col = adjoint(b, g, e);
    for (int j = 0; j < b.dim(); ++j) m[j][k] = col[j];
  }
  return m;
}

Eigen::MatrixXd adjoint_matrix(const HallBasis& b, const Eigen::VectorXd& g) {
  Eigen::MatrixXd m(b.dim(), b.dim());
  for (int k = 0; k < b.dim(); ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(b.dim());
    e[k] = 1.0;
    m.col(k) = adjoint(b, g, e);
  }
  return m;
}

RatVec coadjoint(const HallBasis& b, const RatVec& g, const RatVec& xi) {
  check_sized(b, g.size(), "coadjoint");
  check_sized(b, xi.size(), "coadjoint");
  RatMat ad_inv = adjoint_matrix(b, group_inverse(g));
  RatVec out(b.dim(), Rational(0));
  for (int k = 0; k < b.dim(); ++k) {
    Rational s(0);
    for (int j = 0; j < b.dim(); ++j) s += xi[j] * ad_inv[j][k];
    out[k] = s;
  }
  return out;
}

Eigen::VectorXd coadjoint(const HallBasis& b, const Eigen::VectorXd& g,
                          const Eigen::VectorXd& xi) {
  Eigen::MatrixXd ad_inv = adjoint_matrix(b, Eigen::VectorXd(-g));
  return ad_inv.transpose() * xi;
}

}  // namespace hypocone::lie
