#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncals/realization.hpp"

namespace ncals {

/// Block view of a system around pivot k (1-based):
///
///   [ A11 A12 A13 ]       [ v1 ]
///   [  .  a22 A23 ]  s =  [ v2 ]
///   [  .   .  A33 ]       [ v3 ]
///
/// with A11 of size k-1 and A33 of size n-k. Only valid for upper
/// unitriangular systems, where the blocks below the diagonal are zero.
struct BlockDecomposition {
  std::size_t k = 0;
  Alphabet alphabet;
  EntryMatrix a11, a12, a13;
  LinearEntry a22;
  EntryMatrix a23, a33;
  std::vector<Rational> v1;
  Rational v2;
  std::vector<Rational> v3;

  /// Throws std::out_of_range for k outside 1..n, std::invalid_argument
  /// when `a` is not upper unitriangular.
  static BlockDecomposition of(const Als& a, std::size_t k);
  [[nodiscard]] Als reassemble() const;
};

/// Row/column block pair (T, U) solving one set of minimization equations.
/// Left solutions are rows of length n-k, right solutions columns of
/// length k-1.
struct MinimizationSolution {
  std::vector<Rational> t;
  std::vector<Rational> u;
};

/// Left minimization equations at pivot k (1-based, 1 <= k <= n-1):
/// U + A23 + T A33 = 0 and v2 + T v3 = 0. At k = 1 the transformation only
/// stays admissible with U = 0, which is imposed. Free unknowns are zero.
std::optional<MinimizationSolution> solveLeftMinimization(const Als& a, std::size_t k);
/// Right minimization equations at pivot k (1-based, 2 <= k <= n):
/// A11 U + A12 + T = 0, with U_1 = 0 so the first row of Q stays e_1.
std::optional<MinimizationSolution> solveRightMinimization(const Als& a, std::size_t k);

/// (P(T) A Q(U)) without row/column k; the removed row is zero off the
/// diagonal with zero right-hand side.
Als applyLeftStep(const Als& a, std::size_t k, const MinimizationSolution& sol);
/// (P(T) A Q(U)) without row/column k; the removed column is e_k.
Als applyRightStep(const Als& a, std::size_t k, const MinimizationSolution& sol);

/// Transformation pairs as full matrices, for verification.
AdmissibleTransformation leftTransformation(std::size_t n, std::size_t k, const MinimizationSolution& sol);
AdmissibleTransformation rightTransformation(std::size_t n, std::size_t k, const MinimizationSolution& sol);

struct MinimizationStep {
  enum class Side { Left, Right };
  Side side;
  std::size_t k;    // removed row/column, 1-based, in the system before removal
  std::size_t dim;  // dimension after removal
};

std::string toString(const MinimizationStep& step);  // "L k=3 dim=4"

/// Scans pivots as in the classical minimization algorithm for polynomial
/// systems: for k = 2, 3, ... first tries a left step at n+1-k, then a right
/// step at k. Input must be upper unitriangular; v may be arbitrary. Returns
/// the empty system iff the represented polynomial is zero.
PolynomialAls minimize(const Als& a, std::vector<MinimizationStep>* trace = nullptr);

/// Minimal polynomial system for p, built by adding monomials in descending
/// deglex order and minimizing after every addition.
PolynomialAls buildAls(const NcPolynomial& p);

std::size_t rankOf(const NcPolynomial& p);

/// Both families K-linearly independent. Throws std::invalid_argument for
/// systems that are not upper unitriangular.
bool isMinimal(const Als& a);

/// Rank of the coefficient matrix of `family` over the union of supports.
std::size_t familyRank(const std::vector<NcPolynomial>& family);

}  // namespace ncals
