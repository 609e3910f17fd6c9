#ifndef HYPOCONE_RATLINALG_HPP
#define HYPOCONE_RATLINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hypocone/rational.hpp"

namespace hypocone {

// Exact Gaussian elimination over the rationals. Matrices are row-major
// vectors of rows; all rows must share a length.

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row (in order).
std::vector<std::size_t> rref(RatMat& m);

std::size_t rank(RatMat m);

// Basis of the right kernel {v : m v = 0}, one row per basis vector.
RatMat nullspace(const RatMat& m);

// Solves m x = b exactly; nullopt if inconsistent. m need not be square;
// when underdetermined an arbitrary (pivot-based) solution is returned.
std::optional<RatVec> solve(RatMat m, RatVec b);

// True iff v lies in the row span of basis.
bool in_row_span(const RatMat& basis, const RatVec& v);

}  // namespace hypocone

#endif
