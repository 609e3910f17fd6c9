#include "hypocone/ncpoly.hpp"

#include <algorithm>

#include "hypocone/errors.hpp"

namespace hypocone::symbols {

void NCPoly::add_term(frame::Poly coeff, std::vector<int> word) {
  if (coeff.vars() != vars_) throw_usage("NCPoly coefficient arity mismatch");
  for (int g : word)
    if (g < 1 || g > n_)
      throw_model("generator index " + std::to_string(g) +
                  " out of range 1.." + std::to_string(n_));
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), word,
      [](const NCTerm& t, const std::vector<int>& w) { return t.word < w; });
  if (it != terms_.end() && it->word == word) {
    it->coeff = it->coeff + coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, NCTerm{std::move(coeff), std::move(word)});
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  if (vars_ != o.vars_ || n_ != o.n_) throw_usage("NCPoly shape mismatch");
  NCPoly out = *this;
  for (const auto& t : o.terms_) out.add_term(t.coeff, t.word);
  return out;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  if (vars_ != o.vars_ || n_ != o.n_) throw_usage("NCPoly shape mismatch");
  NCPoly out(vars_, n_);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<int> w = a.word;
      w.insert(w.end(), b.word.begin(), b.word.end());
      out.add_term(a.coeff * b.coeff, std::move(w));
    }
  }
  return out;
}

NCPoly NCPoly::scaled(const RationalC& c) const {
  NCPoly out(vars_, n_);
  for (const auto& t : terms_) out.add_term(t.coeff.scaled(c), t.word);
  return out;
}

int NCPoly::hormander_degree() const {
  if (terms_.empty()) return kDegreeNegInf;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, (int)t.word.size());
  return d;
}

std::vector<NCPoly::TopTerm> NCPoly::top_part_at(
    const Eigen::VectorXd& x) const {
  std::vector<TopTerm> out;
  int d = hormander_degree();
  if (d == kDegreeNegInf) return out;
  for (const auto& t : terms_) {
    if ((int)t.word.size() != d) continue;
    std::complex<double> c = t.coeff.eval(x);
    if (c != std::complex<double>(0.0, 0.0)) out.push_back({c, t.word});
  }
  return out;
}

std::optional<std::vector<NCPoly::TopTermExact>> NCPoly::top_part_at_exact(
    const RatVec& x) const {
  std::vector<TopTermExact> out;
  int d = hormander_degree();
  if (d == kDegreeNegInf) return out;
  for (const auto& t : terms_) {
    if ((int)t.word.size() != d) continue;
    auto c = t.coeff.eval_exact(x);
    if (!c) return std::nullopt;
    if (!c->is_zero()) out.push_back({*c, t.word});
  }
  return out;
}

}  // namespace hypocone::symbols
