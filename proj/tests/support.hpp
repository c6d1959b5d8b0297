#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncals/evaluator.hpp"
#include "ncals/table.hpp"

namespace ncals::testing {

using RatTuple = MatrixTuple<Rational>;

// ------------------------------------------------------------ generators

struct PolySpec {
  std::size_t letters = 3;
  std::size_t maxDegree = 4;
  std::size_t maxTerms = 6;
  int coefRange = 3;  // coefficients in [-range, range] \ {0}
};

Alphabet lettersAlphabet(std::size_t d);  // x1, x2, ... or x,y,z,w for d <= 4
Word randomWord(std::mt19937_64& rng, std::size_t letters, std::size_t maxLength);
NcPolynomial randomPolynomial(std::mt19937_64& rng, const Alphabet& ab, const PolySpec& spec);
NcPolynomial randomNonzeroPolynomial(std::mt19937_64& rng, const Alphabet& ab, const PolySpec& spec);
/// Entries num/den with |num| <= range, 1 <= den <= range.
RatTuple randomTuple(std::mt19937_64& rng, std::size_t m, std::size_t d, int range = 4);

// --------------------------------------------------------------- oracles

/// Gaussian elimination on a local copy; independent of the library solver.
std::size_t oracleRank(std::vector<std::vector<Rational>> rows);
/// Coefficient of w in p*q summed over every split point of w.
NcPolynomial convolutionProduct(const NcPolynomial& p, const NcPolynomial& q);
/// Rank of the Hankel matrix (u, v) -> coefficient of uv; equals the
/// dimension of a minimal linear representation.
std::size_t hankelRank(const NcPolynomial& p);
/// Sum of c_w X_w computed word by word with explicit loops.
Matrix<Rational> wordEvaluate(const NcPolynomial& p, const RatTuple& x);
/// s_1 of (A_0 (x) I + sum A_l (x) X_l) S = v (x) I, solved as one dense
/// nm x nm system; works for any invertible pencil value.
Matrix<Rational> kroneckerEvaluate(const Als& a, const RatTuple& x);
/// ((X + a_{k-1}) X + a_{k-2}) X + ... + a_0 for monic coefficients a.
Matrix<Rational> hornerEvaluate(const std::vector<Rational>& a, const Matrix<Rational>& x);

// -------------------------------------------------------------- fixtures

NcPolynomial poly(const std::string& text, const Alphabet& ab);
NcPolynomial poly(const std::string& text);  // alphabet inferred

extern const char* const kCaminoPolynomial;
extern const char* const kOliveiraPolynomial;

/// Four-dimensional system for x - xyx.
Als introSystem();
/// Seven-dimensional Horner system for ab(xyz + yz + z + 1) + acxyz and
/// its six-dimensional reduction.
Als hornerSystem7();
Als hornerSystem6();
Alphabet hornerAlphabet();
/// Five-dimensional minimal system of 2aexc + 2bxc - aexd - bxd.
Als oliveiraSystem();
/// Minimal anticommutator system with zeros at (1,4) and (2,3).
Als anticommutatorSystem();
/// Systems for x, 1 - yx, their raw sum and raw product.
Als xSystem();
Als oneMinusYxSystem();
Als h1RawSystem();
Als h2RawSystem();
/// Raw and minimal product systems for (xy + 1)(zx - 3).
Als pqRawSystem();
Als pqMinimalSystem();

/// (X1 X2 X3 + X4) Y Z1 Z2 Z3 written as a chain of seven matrices.
BlockFactorization caminoBlocks(const Alphabet& ab);

}  // namespace ncals::testing
