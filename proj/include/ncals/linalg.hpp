#pragma once

#include <optional>

#include "ncals/freepoly.hpp"
#include "ncals/matrix.hpp"

namespace ncals {

using RatMatrix = Matrix<Rational>;

/// Solves A x = b exactly (b is r x 1). Pivots on the first nonzero entry in
/// column order; free variables are set to zero. Returns nullopt when the
/// system is inconsistent.
std::optional<RatMatrix> solveLinear(const RatMatrix& a, const RatMatrix& b);

std::size_t rank(RatMatrix a);

/// Throws std::invalid_argument for non-square input.
bool isInvertible(const RatMatrix& a);

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
std::vector<std::size_t> reduceRowEchelon(RatMatrix& m);

}  // namespace ncals
