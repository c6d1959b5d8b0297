#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ncals/freepoly.hpp"
#include "ncals/linalg.hpp"

namespace ncals {

/// Affine-linear form c0 + c1 x_1 + ... + cd x_d; one cell of a system
/// matrix. Index 0 is the constant, index l+1 belongs to letter l.
class LinearEntry {
 public:
  LinearEntry() : coeffs_(1) {}
  explicit LinearEntry(std::size_t letters) : coeffs_(letters + 1) {}

  static LinearEntry scalar(std::size_t letters, const Rational& c);
  static LinearEntry letter(std::size_t letters, std::size_t index, const Rational& c = 1);
  /// Throws std::invalid_argument if `p` has degree > 1.
  static LinearEntry fromPolynomial(const NcPolynomial& p);

  [[nodiscard]] std::size_t letterCount() const { return coeffs_.size() - 1; }
  [[nodiscard]] const Rational& constant() const { return coeffs_[0]; }
  /// Component access: 0 is the constant, l + 1 is letter l.
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }

  [[nodiscard]] bool isZero() const;
  /// No letter has a nonzero coefficient.
  [[nodiscard]] bool isScalar() const;

  /// this += c * o
  void addScaled(const LinearEntry& o, const Rational& c);
  LinearEntry& operator+=(const LinearEntry& o);
  LinearEntry& operator*=(const Rational& c);
  friend LinearEntry operator-(LinearEntry e) { return e *= Rational(-1); }

  [[nodiscard]] NcPolynomial toPolynomial(const Alphabet& alphabet) const;

  friend bool operator==(const LinearEntry& a, const LinearEntry& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

using EntryMatrix = Matrix<LinearEntry>;

/// Admissible linear system A s = v with u = e_1 implicit. The represented
/// polynomial is s_1. The dimension-0 system represents zero.
///
/// Construction does not force A to be upper unitriangular (a general
/// admissible transformation may break that); every algorithm that needs
/// the triangular shape checks isUpperUnitriangular() first.
class Als {
 public:
  Als() = default;
  /// Identity system matrix and zero right-hand side.
  Als(Alphabet alphabet, std::size_t n);

  static Als empty(Alphabet alphabet) { return Als(std::move(alphabet), 0); }
  /// Builds a system from cell texts parsed with the polynomial grammar,
  /// e.g. {{"1", "-x"}, {"0", "1"}} and v = {"0", "1"}. Mostly for tests and
  /// hand-written inputs.
  static Als fromText(const Alphabet& alphabet, const std::vector<std::vector<std::string>>& rows,
                      const std::vector<std::string>& v);

  [[nodiscard]] std::size_t dim() const { return v_.size(); }
  [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
  [[nodiscard]] std::size_t letterCount() const { return alphabet_.size(); }

  LinearEntry& at(std::size_t i, std::size_t j) { return a_(i, j); }
  [[nodiscard]] const LinearEntry& at(std::size_t i, std::size_t j) const { return a_(i, j); }
  [[nodiscard]] const EntryMatrix& matrix() const { return a_; }
  Rational& rhs(std::size_t i) { return v_[i]; }
  [[nodiscard]] const Rational& rhs(std::size_t i) const { return v_[i]; }
  [[nodiscard]] const std::vector<Rational>& rhs() const { return v_; }

  /// Coefficient matrix of one pencil component (0 = constant part).
  [[nodiscard]] RatMatrix component(std::size_t l) const;

  [[nodiscard]] bool isUpperUnitriangular() const;
  /// v = (0, ..., 0, lambda) with lambda != 0.
  [[nodiscard]] bool hasPolynomialRhs() const;

  /// row `target` += c * row `source`, including the right-hand side.
  void addRowMultiple(std::size_t target, std::size_t source, const Rational& c);
  /// column `target` += c * column `source`.
  void addColumnMultiple(std::size_t target, std::size_t source, const Rational& c);
  [[nodiscard]] Als withoutRowColumn(std::size_t k) const;
  /// Rows/columns [first, last) with the given right-hand side.
  [[nodiscard]] Als principalBlock(std::size_t first, std::size_t last) const;

  friend bool operator==(const Als& a, const Als& b) {
    return a.alphabet_ == b.alphabet_ && a.a_ == b.a_ && a.v_ == b.v_;
  }

 private:
  Alphabet alphabet_;
  EntryMatrix a_;
  std::vector<Rational> v_;
};

/// ALS with upper unitriangular A and v = (0, ..., 0, lambda), lambda != 0;
/// or the empty system for zero.
class PolynomialAls {
 public:
  /// Throws std::invalid_argument when `als` is not of polynomial shape.
  explicit PolynomialAls(Als als);

  [[nodiscard]] const Als& system() const { return als_; }
  [[nodiscard]] std::size_t dim() const { return als_.dim(); }
  [[nodiscard]] const Alphabet& alphabet() const { return als_.alphabet(); }
  [[nodiscard]] Rational lambda() const;
  [[nodiscard]] const LinearEntry& at(std::size_t i, std::size_t j) const { return als_.at(i, j); }

  friend bool operator==(const PolynomialAls& a, const PolynomialAls& b) { return a.als_ == b.als_; }

 private:
  Als als_;
};

/// Pair (P, Q) of invertible scalar matrices with Q's first row e_1.
class AdmissibleTransformation {
 public:
  AdmissibleTransformation(RatMatrix p, RatMatrix q);
  static AdmissibleTransformation identity(std::size_t n);

  [[nodiscard]] const RatMatrix& p() const { return p_; }
  [[nodiscard]] const RatMatrix& q() const { return q_; }
  [[nodiscard]] std::size_t dim() const { return p_.rows(); }
  /// Both unitriangular, Q without first-row off-diagonal entries.
  [[nodiscard]] bool isPolynomial() const;

 private:
  RatMatrix p_;
  RatMatrix q_;
};

/// Left family s = A^{-1} v by back substitution (A upper unitriangular).
std::vector<NcPolynomial> leftFamily(const Als& a);
/// Right family t = e_1 A^{-1} by forward substitution.
std::vector<NcPolynomial> rightFamily(const Als& a);
/// First component of the left family; zero for the empty system.
NcPolynomial representedPolynomial(const Als& a);

/// Bidiagonal system of dimension |w|+1 for c*w (c != 0).
PolynomialAls minimalMonomial(const Alphabet& alphabet, const Word& w, const Rational& c = 1);
/// Dimension-1 system for a constant, the empty system for zero.
PolynomialAls constantAls(const Alphabet& alphabet, const Rational& c);

/// Block system for p + q, dimension n_p + n_q, coupling -e_1 e_1^T.
Als alsAdd(const Als& p, const Als& q);
/// Block system for p * q, dimension n_p + n_q, coupling -v_p e_1^T.
Als alsMul(const Als& p, const Als& q);

/// (P A Q, P v). Throws on dimension mismatch.
Als applyTransformation(const Als& a, const AdmissibleTransformation& t);

/// Adds multiples of the last row to earlier rows until v = (0,...,0,v_n).
/// Requires A upper unitriangular and v_n != 0.
PolynomialAls restorePolynomialForm(const Als& a);

/// System for q_m ... q_1 + a_{m-1} q_{m-1} ... q_1 + ... + a_1 q_1 + a_0
/// (first row carries the coefficients).
PolynomialAls leftCompanion(std::span<const LinearEntry> q, std::span<const Rational> a,
                            const Alphabet& alphabet);
/// System for a_0 + a_1 q_1 + a_2 q_1 q_2 + ... + q_1 ... q_m (last column
/// carries the coefficients).
PolynomialAls rightCompanion(std::span<const LinearEntry> q, std::span<const Rational> a,
                             const Alphabet& alphabet);

// ----------------------------------------------------------- text formats

/// Cell encoding shared by the ALS and block-factorization formats:
/// "[c0 c1 ... cd]" with every coefficient written as num/den.
std::string formatCell(const LinearEntry& e);
LinearEntry parseCell(std::string_view text, std::size_t letters);

/// Stable text serialization; write(read(text)) reproduces canonical text
/// byte for byte.
void writeAls(std::ostream& os, const Als& a);
Als readAls(std::istream& is);
std::string alsToString(const Als& a);
Als alsFromString(const std::string& text);

/// Human-oriented rendering with polynomial cells and '.' for zero.
std::string renderAls(const Als& a);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncals
