#include "hypocone/hall.hpp"

#include <algorithm>
#include <cassert>

#include "hypocone/errors.hpp"
#include "hypocone/ratlinalg.hpp"

namespace hypocone::lie {

WordPoly wp_mul(const WordPoly& a, const WordPoly& b, int max_degree) {
  WordPoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > max_degree) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      Rational c = ca * cb;
      auto it = out.find(w);
      if (it == out.end())
        out.emplace(std::move(w), std::move(c));
      else {
        it->second += c;
        if (is_zero(it->second)) out.erase(it);
      }
    }
  }
  return out;
}

void wp_axpy(WordPoly& acc, const Rational& c, const WordPoly& p) {
  if (is_zero(c)) return;
  for (const auto& [w, x] : p) {
    auto it = acc.find(w);
    if (it == acc.end()) {
      acc.emplace(w, c * x);
    } else {
      it->second += c * x;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

WordPoly wp_commutator(const WordPoly& a, const WordPoly& b, int max_degree) {
  WordPoly out = wp_mul(a, b, max_degree);
  wp_axpy(out, Rational(-1), wp_mul(b, a, max_degree));
  return out;
}

WordPoly wp_exp(const WordPoly& a, int max_degree) {
  assert(a.find(Word{}) == a.end());
  WordPoly out;
  out[Word{}] = 1;
  WordPoly term;  // a^k / k!
  term[Word{}] = 1;
  for (int k = 1; k <= max_degree; ++k) {
    term = wp_mul(term, a, max_degree);
    if (term.empty()) break;
    for (auto& [w, c] : term) c /= k;
    wp_axpy(out, Rational(1), term);
  }
  return out;
}

WordPoly wp_log(const WordPoly& g, int max_degree) {
  WordPoly z = g;
  auto unit = z.find(Word{});
  if (unit == z.end() || unit->second != 1)
    throw_size("wp_log: constant term must be 1");
  z.erase(unit);
  WordPoly out;
  WordPoly power;
  power[Word{}] = 1;
  Rational sign(1);
  for (int k = 1; k <= max_degree; ++k) {
    power = wp_mul(power, z, max_degree);
    if (power.empty()) break;
    wp_axpy(out, sign / k, power);
    sign = -sign;
  }
  return out;
}

long long HallBasis::witt_dimension(int n, int d) {
  // (1/d) sum_{e | d} mu(e) n^{d/e}
  auto mobius = [](int m) {
    int mu = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        mu = -mu;
      }
    }
    if (m > 1) mu = -mu;
    return mu;
  };
  long long total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    int mu = mobius(e);
    if (mu == 0) continue;
    long long pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= n;
    total += mu * pw;
  }
  return total / d;
}

HallBasis HallBasis::build(int n, int step, int dim_cap) {
  if (n < 1) throw_usage("generator count must be >= 1");
  if (step < 1) throw_usage("nilpotency step must be >= 1");

  long long dim = 0;
  for (int d = 1; d <= step; ++d) {
    dim += witt_dimension(n, d);
    if (dim > dim_cap)
      throw_size("free nilpotent algebra dimension " + std::to_string(dim) +
                 "+ exceeds cap " + std::to_string(dim_cap));
  }

  HallBasis b;
  b.n_ = n;
  b.step_ = step;
  b.graded_dims_.assign(step, 0);

  for (int i = 1; i <= n; ++i) {
    HallWord w;
    w.generator = i;
    w.degree = 1;
    b.words_.push_back(w);
    WordPoly p;
    p[Word{i}] = 1;
    b.expansions_.push_back(std::move(p));
  }
  b.graded_dims_[0] = n;

  // Degree by degree: [b_i, b_j] is admissible when i < j and the right
  // factor is a generator or b_j = [b_l, b_m] with l <= i.
  std::vector<int> degree_of;
  for (int i = 0; i < n; ++i) degree_of.push_back(1);
  for (int d = 2; d <= step; ++d) {
    const int before = static_cast<int>(b.words_.size());
    for (int i = 0; i < before; ++i) {
      for (int j = i + 1; j < before; ++j) {
        if (degree_of[i] + degree_of[j] != d) continue;
        const HallWord& right = b.words_[j];
        if (!right.is_generator() && right.left > i) continue;
        HallWord w;
        w.left = i;
        w.right = j;
        w.degree = d;
        b.words_.push_back(w);
        degree_of.push_back(d);
        b.expansions_.push_back(
            wp_commutator(b.expansions_[i], b.expansions_[j], step));
        ++b.graded_dims_[d - 1];
      }
    }
  }

  if (static_cast<long long>(b.words_.size()) != dim)
    throw Error(ErrorCode::internal,
                "Hall construction dimension mismatch: built " +
                    std::to_string(b.words_.size()) + ", counted " +
                    std::to_string(dim));

  b.compute_structure_constants();
  return b;
}

const HallBasis::DegreeSolver& HallBasis::solver_for_degree(int d) const {
  if (solvers_.empty()) solvers_.resize(step_ + 1);
  DegreeSolver& s = solvers_[d];
  if (!s.members.empty() || graded_dims_[d - 1] == 0) return s;

  for (int k = 0; k < dim(); ++k)
    if (degree(k) == d) s.members.push_back(k);
  const std::size_t m = s.members.size();

  // Column order: every word appearing in the expansions of this degree.
  std::map<Word, std::size_t> col;
  for (int k : s.members)
    for (const auto& [w, c] : expansions_[k])
      col.emplace(w, col.size());
  std::vector<Word> col_words(col.size());
  for (const auto& [w, idx] : col) col_words[idx] = w;

  RatMat rows(m, RatVec(col.size(), Rational(0)));
  for (std::size_t r = 0; r < m; ++r)
    for (const auto& [w, c] : expansions_[s.members[r]]) rows[r][col.at(w)] = c;

  // Pick pivot words making the restriction square and invertible.
  RatMat ech = rows;
  auto pivots = rref(ech);
  if (pivots.size() != m)
    throw Error(ErrorCode::internal, "Hall expansions of degree " +
                                         std::to_string(d) +
                                         " are not independent");
  for (auto p : pivots) s.pivot_words.push_back(col_words[p]);

  // Invert S^T where S[r][p] = rows[r][pivots[p]]; then coords = inv * t.
  RatMat st(m, RatVec(2 * m, Rational(0)));
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t r = 0; r < m; ++r) st[p][r] = rows[r][pivots[p]];
    st[p][m + p] = 1;
  }
  auto piv2 = rref(st);
  if (piv2.size() != m)
    throw Error(ErrorCode::internal, "degenerate Hall pivot system");
  s.solve_matrix.assign(m, RatVec(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s.solve_matrix[i][j] = st[i][m + j];
  return s;
}

RatVec HallBasis::coords_of_word_poly(const WordPoly& p) const {
  RatVec coords(dim(), Rational(0));
  // Split by degree and solve each homogeneous layer.
  std::vector<WordPoly> layers(step_ + 1);
  for (const auto& [w, c] : p) {
    if (w.empty() || static_cast<int>(w.size()) > step_)
      throw Error(ErrorCode::internal,
                  "word polynomial is not a Lie element (bad degree)");
    layers[w.size()][w] = c;
  }
  WordPoly check;
  for (int d = 1; d <= step_; ++d) {
    if (layers[d].empty()) continue;
    const DegreeSolver& s = solver_for_degree(d);
    const std::size_t m = s.members.size();
    RatVec t(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      auto it = layers[d].find(s.pivot_words[i]);
      if (it != layers[d].end()) t[i] = it->second;
    }
    for (std::size_t i = 0; i < m; ++i) {
      Rational c(0);
      for (std::size_t j = 0; j < m; ++j) c += s.solve_matrix[i][j] * t[j];
      coords[s.members[i]] = c;
      if (!is_zero(c)) wp_axpy(check, c, expansions_[s.members[i]]);
    }
  }
  // Exactness guard: the reconstruction must reproduce p identically.
  wp_axpy(check, Rational(-1), p);
  if (!check.empty())
    throw Error(ErrorCode::internal,
                "word polynomial is not in the span of the Hall basis");
  return coords;
}

void HallBasis::compute_structure_constants() {
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      const int d = degree(i) + degree(j);
      if (d > step_) continue;
      // Admissible pairs are basis elements themselves.
      const HallWord& right = words_[j];
      int direct = -1;
      if (right.is_generator() || right.left <= i) {
        for (int k = 0; k < dim(); ++k) {
          const HallWord& w = words_[k];
          if (!w.is_generator() && w.left == i && w.right == j) {
            direct = k;
            break;
          }
        }
      }
      std::vector<std::pair<int, Rational>> out;
      if (direct >= 0) {
        out.emplace_back(direct, Rational(1));
      } else {
        WordPoly comm = wp_commutator(expansions_[i], expansions_[j], step_);
        RatVec coords = coords_of_word_poly(comm);
        for (int k = 0; k < dim(); ++k)
          if (!is_zero(coords[k])) out.emplace_back(k, coords[k]);
      }
      table_.emplace(static_cast<long long>(i) * dim() + j, std::move(out));
    }
  }
}

std::vector<std::pair<int, Rational>> HallBasis::basis_bracket(int i,
                                                               int j) const {
  if (i == j) return {};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  if (degree(i) + degree(j) > step_) return {};
  auto it = table_.find(static_cast<long long>(i) * dim() + j);
  if (it == table_.end()) return {};
  auto out = it->second;
  if (flip)
    for (auto& [k, c] : out) c = -c;
  return out;
}

std::string HallBasis::word_name(int k) const {
  const HallWord& w = words_[k];
  if (w.is_generator()) return "X" + std::to_string(w.generator);
  return "[" + word_name(w.left) + "," + word_name(w.right) + "]";
}

namespace {

using WordPolyD = std::map<Word, double>;

WordPolyD wpd_mul(const WordPolyD& a, const WordPolyD& b, int max_degree) {
  WordPolyD out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > max_degree) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  }
  return out;
}

void wpd_axpy(WordPolyD& acc, double c, const WordPolyD& p) {
  if (c == 0.0) return;
  for (const auto& [w, x] : p) acc[w] += c * x;
}

}  // namespace

std::vector<double> HallBasis::bch_double(const std::vector<double>& a,
                                          const std::vector<double>& c) const {
  if (static_cast<int>(a.size()) != dim() ||
      static_cast<int>(c.size()) != dim())
    throw_usage("bch: coordinate length mismatch");
  if (step_ <= 3) {
    // truncated series in closed form: a + b + [a,b]/2 (+ degree-3 terms)
    auto br = [&](const std::vector<double>& u, const std::vector<double>& v) {
      std::vector<double> out(dim(), 0.0);
      for (int i = 0; i < dim(); ++i) {
        if (u[i] == 0.0) continue;
        for (int j = 0; j < dim(); ++j) {
          if (v[j] == 0.0) continue;
          for (const auto& [k, q] : basis_bracket(i, j))
            out[k] += u[i] * v[j] * to_double(q);
        }
      }
      return out;
    };
    std::vector<double> z(dim());
    std::vector<double> ab = br(a, c);
    for (int k = 0; k < dim(); ++k) z[k] = a[k] + c[k] + 0.5 * ab[k];
    if (step_ == 3) {
      std::vector<double> aab = br(a, ab);
      std::vector<double> bab = br(c, ab);
      for (int k = 0; k < dim(); ++k)
        z[k] += (aab[k] - bab[k]) / 12.0;
    }
    return z;
  }
  if (!dcache_.built) {
    dcache_.expansions.resize(dim());
    for (int k = 0; k < dim(); ++k)
      for (const auto& [w, q] : expansions_[k])
        dcache_.expansions[k][w] = to_double(q);
    for (int d = 1; d <= step_; ++d) {
      const DegreeSolver& s = solver_for_degree(d);
      auto& sd = const_cast<DegreeSolver&>(s);
      if (sd.solve_matrix_d.empty() && !s.members.empty()) {
        sd.solve_matrix_d.assign(s.members.size(),
                                 std::vector<double>(s.members.size(), 0.0));
        for (std::size_t i = 0; i < s.members.size(); ++i)
          for (std::size_t j = 0; j < s.members.size(); ++j)
            sd.solve_matrix_d[i][j] = to_double(s.solve_matrix[i][j]);
      }
    }
    dcache_.built = true;
  }
  const int N = step_;
  auto to_poly = [&](const std::vector<double>& v) {
    WordPolyD p;
    for (int k = 0; k < dim(); ++k)
      if (v[k] != 0.0) wpd_axpy(p, v[k], dcache_.expansions[k]);
    return p;
  };
  auto exp_poly = [&](const WordPolyD& p) {
    WordPolyD out;
    out[Word{}] = 1.0;
    WordPolyD term;
    term[Word{}] = 1.0;
    for (int k = 1; k <= N; ++k) {
      term = wpd_mul(term, p, N);
      if (term.empty()) break;
      for (auto& [w, x] : term) x /= k;
      wpd_axpy(out, 1.0, term);
    }
    return out;
  };
  WordPolyD prod = wpd_mul(exp_poly(to_poly(a)), exp_poly(to_poly(c)), N);
  // log(1 + z)
  WordPolyD z = prod;
  z.erase(Word{});
  WordPolyD logp;
  WordPolyD power;
  power[Word{}] = 1.0;
  double sign = 1.0;
  for (int k = 1; k <= N; ++k) {
    power = wpd_mul(power, z, N);
    if (power.empty()) break;
    wpd_axpy(logp, sign / k, power);
    sign = -sign;
  }
  std::vector<double> out(dim(), 0.0);
  for (int d = 1; d <= N; ++d) {
    const DegreeSolver& s = solver_for_degree(d);
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s.members.size(); ++j) {
        auto it = logp.find(s.pivot_words[j]);
        if (it != logp.end()) acc += s.solve_matrix_d[i][j] * it->second;
      }
      out[s.members[i]] = acc;
    }
  }
  return out;
}

}  // namespace hypocone::lie
