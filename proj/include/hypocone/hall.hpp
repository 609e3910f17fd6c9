#ifndef HYPOCONE_HALL_HPP
#define HYPOCONE_HALL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypocone/rational.hpp"

namespace hypocone::lie {

// A Hall word is a binary bracketing tree over generator indices. In an
// admissible Hall set both children of an internal node are themselves Hall
// basis elements, so trees are stored as index pairs into the basis list.
struct HallWord {
  int generator = 0;  // 1-based generator index for leaves, 0 for brackets
  int left = -1;      // basis index of the left factor (brackets only)
  int right = -1;     // basis index of the right factor (brackets only)
  int degree = 1;     // number of leaves

  bool is_generator() const { return generator > 0; }
};

// Words in the free associative algebra on generators 1..n; the empty word
// is the unit. Sparse polynomials over them carry the exact arithmetic for
// bracket expansion and the exp/log group law.
using Word = std::vector<int>;
using WordPoly = std::map<Word, Rational>;

WordPoly wp_mul(const WordPoly& a, const WordPoly& b, int max_degree);
void wp_axpy(WordPoly& acc, const Rational& c, const WordPoly& p);
WordPoly wp_commutator(const WordPoly& a, const WordPoly& b, int max_degree);
// exp of a polynomial with zero constant term / log of 1 + nilpotent.
WordPoly wp_exp(const WordPoly& a, int max_degree);
WordPoly wp_log(const WordPoly& g, int max_degree);

// Free nilpotent Lie algebra g(n, N): ordered Hall words, degrees and the
// exact structure-constant table [b_i, b_j] = sum_k c_ij^k b_k.
class HallBasis {
public:
  // Throws ErrorCode::size when the dimension would exceed dim_cap.
  static HallBasis build(int n, int step, int dim_cap = kDefaultDimCap);

  static constexpr int kDefaultDimCap = 1000;

  int generators() const { return n_; }
  int step() const { return step_; }
  int dim() const { return static_cast<int>(words_.size()); }
  const std::vector<HallWord>& words() const { return words_; }
  int degree(int k) const { return words_[k].degree; }
  // Number of basis words of each degree 1..N.
  const std::vector<int>& graded_dims() const { return graded_dims_; }

  // [b_i, b_j] as a sparse vector of (k, c_ij^k); antisymmetry and the
  // degree filter are applied here, so any (i, j) is valid.
  std::vector<std::pair<int, Rational>> basis_bracket(int i, int j) const;

  // Expansion of b_k in the free associative algebra.
  const WordPoly& expansion(int k) const { return expansions_[k]; }

  // Hall coordinates of a Lie element given by its word expansion; exact,
  // throws ErrorCode::internal if the polynomial is not a Lie element of
  // degree <= N.
  RatVec coords_of_word_poly(const WordPoly& p) const;

  // "X1", "[X1,X2]", "[X1,[X1,X2]]", ...
  std::string word_name(int k) const;

  // Number of basis words of degree d for a free nilpotent algebra on n
  // generators (necklace/Moebius count); used for the size precheck.
  static long long witt_dimension(int n, int d);

  // Fast double-precision group law for the numerical layers (same exp/log
  // evaluation, float coefficients); the rational path stays authoritative.
  std::vector<double> bch_double(const std::vector<double>& a,
                                 const std::vector<double>& c) const;

private:
  HallBasis() = default;
  void compute_structure_constants();

  struct DegreeSolver {
    std::vector<int> members;     // basis indices of this degree
    std::vector<Word> pivot_words;
    RatMat solve_matrix;          // coords = solve_matrix * target(pivot_words)
    std::vector<std::vector<double>> solve_matrix_d;
  };
  const DegreeSolver& solver_for_degree(int d) const;
  struct DoubleCache {
    bool built = false;
    std::vector<std::map<Word, double>> expansions;
  };

  int n_ = 0;
  int step_ = 0;
  std::vector<HallWord> words_;
  std::vector<int> graded_dims_;
  std::vector<WordPoly> expansions_;
  // key: i * dim + j with i < j and deg_i + deg_j <= N
  std::map<long long, std::vector<std::pair<int, Rational>>> table_;
  mutable std::vector<DegreeSolver> solvers_;  // indexed by degree, lazy
  mutable DoubleCache dcache_;
};

}  // namespace hypocone::lie

#endif
