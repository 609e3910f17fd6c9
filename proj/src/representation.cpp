#include "hypocone/representation.hpp"

#include <cmath>
#include <sstream>

#include "hypocone/errors.hpp"

namespace hypocone::symbols {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

std::string Character::describe() const {
  std::ostringstream os;
  os << "char(";
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (i) os << ",";
    os << mu[i];
  }
  os << ")";
  return os.str();
}

std::string Schrodinger::describe() const {
  std::ostringstream os;
  os << "schrodinger(eps=" << (epsilon > 0 ? "+1" : "-1")
     << ",K=" << truncation;
  if (scale != 1.0) os << ",scale=" << scale;
  os << ")";
  return os.str();
}

std::string Custom::describe() const {
  std::ostringstream os;
  os << "custom(dim=" << (images.empty() ? 0 : images[0].rows()) << ")";
  return os.str();
}

std::string describe(const Representation& rep) {
  return std::visit([](const auto& r) { return r.describe(); }, rep);
}

int rep_dimension(const Representation& rep) {
  if (std::holds_alternative<Character>(rep)) return 0;
  if (const auto* s = std::get_if<Schrodinger>(&rep)) return s->truncation;
  return static_cast<int>(std::get<Custom>(rep).images[0].rows());
}

Eigen::MatrixXcd hermite_position(int K) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(K, K);
  for (int k = 0; k + 1 < K; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    t(k + 1, k) = v;
    t(k, k + 1) = v;
  }
  return t;
}

Eigen::MatrixXcd hermite_derivative(int K) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(K, K);
  for (int k = 0; k + 1 < K; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    d(k + 1, k) = -v;
    d(k, k + 1) = v;
  }
  return d;
}

void validate_representation(const Representation& rep,
                             const lie::HallBasis& b) {
  if (const auto* c = std::get_if<Character>(&rep)) {
    if (c->mu.size() != b.generators())
      throw_model("character parameter count must equal the generator count");
    return;
  }
  if (const auto* s = std::get_if<Schrodinger>(&rep)) {
    if (b.generators() != 2 || b.step() != 2)
      throw_model("Schrodinger representations require the Heisenberg "
                  "algebra g(2,2)");
    if (s->epsilon != 1 && s->epsilon != -1)
      throw_model("Schrodinger epsilon must be +-1");
    if (s->truncation < 4) throw_model("Schrodinger truncation too small");
    if (!(s->scale > 0)) throw_model("Schrodinger scale must be positive");
    return;
  }
  const auto& cu = std::get<Custom>(rep);
  if ((int)cu.images.size() != b.dim())
    throw_model("custom representation needs one image per basis element");
  const Eigen::Index K = cu.images[0].rows();
  for (const auto& m : cu.images)
    if (m.rows() != K || m.cols() != K)
      throw_model("custom representation images must share one square size");
  // commutation relations within the declared tolerance
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = i + 1; j < b.dim(); ++j) {
      Eigen::MatrixXcd comm =
          cu.images[i] * cu.images[j] - cu.images[j] * cu.images[i];
      for (const auto& [k, c] : b.basis_bracket(i, j))
        comm -= to_double(c) * cu.images[k];
      double scale = std::max(1.0, cu.images[i].norm() * cu.images[j].norm());
      if (comm.norm() > cu.tolerance * scale)
        throw_model("custom representation violates the bracket relations "
                    "beyond its declared tolerance (pair " +
                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

SymbolOperator dpi(const Representation& rep, const lie::HallBasis& b,
                   int word_index) {
  if (word_index < 0 || word_index >= b.dim())
    throw_usage("dpi: basis index out of range");
  SymbolOperator out;
  if (const auto* c = std::get_if<Character>(&rep)) {
    const auto& w = b.words()[word_index];
    out.is_scalar = true;
    out.value = w.is_generator() ? kI * c->mu[w.generator - 1]
                                 : std::complex<double>(0.0, 0.0);
    return out;
  }
  if (const auto* s = std::get_if<Schrodinger>(&rep)) {
    const int K = s->truncation;
    const double r = s->scale;
    out.is_scalar = false;
    if (word_index == 0)
      out.matrix = (r * s->epsilon) * hermite_derivative(K);
    else if (word_index == 1)
      out.matrix = (kI * r) * hermite_position(K);
    else
      out.matrix = (kI * (r * r * s->epsilon)) *
                   Eigen::MatrixXcd::Identity(K, K);
    return out;
  }
  const auto& cu = std::get<Custom>(rep);
  out.is_scalar = false;
  out.matrix = cu.images[word_index];
  return out;
}

Representation scale_representation(const Representation& rep, double r) {
  if (!(r > 0)) throw_usage("representation scale must be positive");
  if (const auto* c = std::get_if<Character>(&rep)) {
    Character out = *c;
    out.mu *= r;
    return out;
  }
  if (const auto* s = std::get_if<Schrodinger>(&rep)) {
    Schrodinger out = *s;
    out.scale *= r;
    return out;
  }
  throw_usage("custom representations carry no canonical dilation");
}

}  // namespace hypocone::symbols
