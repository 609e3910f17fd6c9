#include "hypocone/ratlinalg.hpp"

#include <cassert>

namespace hypocone {

std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!is_zero(m[i][c])) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMat m) { return rref(m).size(); }

RatMat nullspace(const RatMat& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  RatMat a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(RatMat m, RatVec b) {
  if (m.empty()) {
    for (const auto& x : b)
      if (!is_zero(x)) return std::nullopt;
    return RatVec{};
  }
  const std::size_t rows = m.size(), cols = m[0].size();
  assert(b.size() == rows);
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  auto pivots = rref(m);
  RatVec x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // pivot in augmented column
    x[pivots[r]] = m[r][cols];
  }
  return x;
}

bool in_row_span(const RatMat& basis, const RatVec& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  }
  // v in span(rows) iff rank unchanged when appending v.
  RatMat m = basis;
  std::size_t r0 = rank(m);
  m.push_back(v);
  return rank(m) == r0;
}

}  // namespace hypocone
