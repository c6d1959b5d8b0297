#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <variant>

#include "ncals/factorizer.hpp"

namespace ncals {

enum class Side { Left, Right };

template <typename T>
struct EvalReport {
  Matrix<T> result;
  /// Matrix-matrix products actually executed.
  std::size_t multCount = 0;
  Side side = Side::Left;
};

/// Back substitution s_n = lambda I, s_i = -sum_{j>i} a_ij(X) s_j. Values
/// that are scalar multiples of I are tracked as scalars, so only products
/// of a non-scalar entry with a full matrix are executed and counted.
template <typename T>
EvalReport<T> evaluateLeft(const PolynomialAls& a, const MatrixTuple<T>& x);
/// Forward substitution t_1 = I, t_j = -sum_{i<j} t_i a_ij(X), result
/// lambda t_n; same counting rule.
template <typename T>
EvalReport<T> evaluateRight(const PolynomialAls& a, const MatrixTuple<T>& x);
/// Row-vector accumulator multiplied through the factors left to right;
/// same counting rule per cell.
template <typename T>
EvalReport<T> evaluateBlockFactorization(const BlockFactorization& bf, const MatrixTuple<T>& x);

/// a(X) = c0 I + sum c_l X_l.
template <typename T>
Matrix<T> evaluateEntry(const LinearEntry& e, const MatrixTuple<T>& x);

/// Non-scalar entries a_ij with i < j inside rows/columns 1..n-1.
std::size_t countNs(const PolynomialAls& a);
/// Non-scalar entries a_ij with i < j inside rows/columns 2..n.
std::size_t countNt(const PolynomialAls& a);
std::size_t countN(const PolynomialAls& a);

/// (n - 2, (n - 1)(n - 2) / 2). Throws std::invalid_argument for n < 2.
std::pair<std::size_t, std::size_t> complexityBounds(std::size_t n);

// ----------------------------------------------------------- matrix files

using AnyTuple = std::variant<MatrixTuple<Rational>, MatrixTuple<double>>;

/// "m d mode" header (mode rat or f64), then d blocks of m rows of m
/// entries, "num/den" or decimal. Throws FormatError.
AnyTuple readMatrixTuple(std::istream& is);
void writeMatrixTuple(std::ostream& os, const MatrixTuple<Rational>& t);
void writeMatrixTuple(std::ostream& os, const MatrixTuple<double>& t);

/// Entries num/den with |num| <= range and 1 <= den <= range.
MatrixTuple<Rational> randomRationalTuple(std::size_t m, std::size_t d, std::mt19937_64& rng, int range = 5);
/// Entries uniform in [-1, 1].
MatrixTuple<double> randomDoubleTuple(std::size_t m, std::size_t d, std::mt19937_64& rng);

MatrixTuple<double> toDouble(const MatrixTuple<Rational>& t);

std::string formatMatrix(const Matrix<Rational>& m);
std::string formatMatrix(const Matrix<double>& m);

}  // namespace ncals
