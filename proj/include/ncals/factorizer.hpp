#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ncals/minimizer.hpp"

namespace ncals {

/// A polynomial system transformed so that rows 1..n1-1 and columns
/// n1+1..n (1-based) form a zero block; p then factors as q1 * q2 with
/// rank(q1) = n1 and rank(q2) = n2 = n + 1 - n1.
struct FactorSplit {
  PolynomialAls transformed;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  AdmissibleTransformation transformation;
};

struct SplitOptions {
  /// When set, split positions are tried in a seeded random order instead
  /// of ascending n1.
  std::optional<std::uint64_t> seed;
};

/// Cellwise check of the zero block for a given n1.
bool hasZeroBlock(const Als& a, std::size_t n1);

/// Searches polynomial transformations with non-overlapping row and column
/// operations: for every n1, rows only, columns only, then up to three
/// row/column partitions around n1. Each attempt is one exact linear solve.
/// Returns nullopt for n < 3 or when nothing is found; this does not prove
/// that p is an atom. Throws std::invalid_argument for non-minimal input.
std::optional<FactorSplit> findSplit(const PolynomialAls& a, const SplitOptions& options = {});

/// Left factor on rows/columns 1..n1 with v = e_n1, right factor on
/// rows/columns n1..n with the original lambda. Throws std::logic_error if
/// their product does not reproduce the split polynomial.
std::pair<PolynomialAls, PolynomialAls> extractFactors(const FactorSplit& split);

/// Minimal systems of the atoms found by repeated splitting, left to right.
std::vector<PolynomialAls> factorSystems(const PolynomialAls& a, const SplitOptions& options = {});
/// Atoms of p (p not constant). Returns {p} when no split is found.
std::vector<NcPolynomial> factorAtoms(const NcPolynomial& p, const SplitOptions& options = {});

/// Chains the factor systems with alsMul and removes the column at every
/// junction, giving the staircase system of dimension sum(n_i) - (r - 1).
PolynomialAls productSystem(const std::vector<PolynomialAls>& factors);

/// Rectangular matrices with linear entries whose product is 1 x 1.
class BlockFactorization {
 public:
  /// Throws std::invalid_argument when the dimension chain is broken.
  BlockFactorization(Alphabet alphabet, std::vector<EntryMatrix> factors);

  [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
  [[nodiscard]] const std::vector<EntryMatrix>& factors() const { return factors_; }

 private:
  Alphabet alphabet_;
  std::vector<EntryMatrix> factors_;
};

/// Builds a matrix of linear entries from polynomial cell texts.
EntryMatrix entryMatrix(const Alphabet& alphabet, const std::vector<std::vector<std::string>>& cells);

/// Product of the factors in the free algebra.
NcPolynomial blockProduct(const BlockFactorization& bf);
bool verifyBlockFactorization(const BlockFactorization& bf, const NcPolynomial& p);
/// Polynomial system with block sizes 1, k1, ..., k_{r-1}, 1, the negated
/// factors on the block superdiagonal and v = e_N.
PolynomialAls blockAls(const BlockFactorization& bf);

/// Pattern of k-reducibility at i (1-based), read off the given system
/// without any search: zero block in rows 1..i, columns i+k+1..n; identity
/// in rows and columns i+1..i+k; zeros left of and below that block.
/// Throws std::out_of_range unless n >= 3, 1 <= k <= n-2, 1 <= i <= n-k-1.
bool checkKReducibilityPattern(const PolynomialAls& a, std::size_t i, std::size_t k);

/// Text format: header, alphabet, factor count, then each factor as
/// "matrix r c" followed by r rows of cells.
void writeBlockFactorization(std::ostream& os, const BlockFactorization& bf);
BlockFactorization readBlockFactorization(std::istream& is);

}  // namespace ncals
