#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ncals/matrix.hpp"

namespace ncals {

using Rational = mpq_class;

/// Parses "n" or "n/d" (d > 0). Throws std::invalid_argument.
Rational parseRational(std::string_view text);
/// Shortest form: "3", "-1/2".
std::string formatRational(const Rational& q);
/// Always "num/den", used by the bit-exact file formats.
std::string formatFraction(const Rational& q);

/// Ordered set of distinct letter names. Letter indices are 0-based and
/// stable for the lifetime of the object; copies share storage.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);
  /// "x,y,z" or "x y z".
  static Alphabet parse(std::string_view list);

  [[nodiscard]] std::size_t size() const { return letters_ ? letters_->size() : 0; }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] const std::string& letter(std::size_t i) const { return (*letters_)[i]; }
  [[nodiscard]] const std::vector<std::string>& letters() const;
  [[nodiscard]] std::optional<std::size_t> indexOf(std::string_view name) const;
  /// True when every letter is a single character, which enables
  /// juxtaposition ("xy" = x*y) in the parser.
  [[nodiscard]] bool singleCharacter() const;
  [[nodiscard]] std::string toString() const;  // "x,y,z"

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::shared_ptr<const std::vector<std::string>> letters_;
};

bool isIdentifier(std::string_view s);

using Word = std::vector<std::uint32_t>;

/// Degree-lexicographic order: shorter words first, then by letter index.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class AlphabetMismatch : public std::invalid_argument {
 public:
  AlphabetMismatch() : std::invalid_argument("operands use different alphabets") {}
};

/// Element of the free associative algebra over the rationals: a finite sum
/// of words with nonzero coefficients.
class NcPolynomial {
 public:
  using TermMap = std::map<Word, Rational, DegLexLess>;

  explicit NcPolynomial(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  static NcPolynomial constant(Alphabet alphabet, const Rational& c);
  static NcPolynomial monomial(Alphabet alphabet, Word w, const Rational& c = 1);
  static NcPolynomial letter(Alphabet alphabet, std::size_t index);

  [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t termCount() const { return terms_.size(); }
  [[nodiscard]] bool isZero() const { return terms_.empty(); }
  /// Zero or a nonzero constant.
  [[nodiscard]] bool isConstant() const;
  [[nodiscard]] std::size_t degree() const;  // 0 for constants and zero
  [[nodiscard]] Rational coefficient(const Word& w) const;

  /// Adds c*w, dropping the term if the coefficient cancels.
  void addTerm(const Word& w, const Rational& c);

  NcPolynomial& operator+=(const NcPolynomial& q);
  NcPolynomial& operator-=(const NcPolynomial& q);
  NcPolynomial& operator*=(const Rational& c);

  friend NcPolynomial operator+(NcPolynomial p, const NcPolynomial& q) { return p += q; }
  friend NcPolynomial operator-(NcPolynomial p, const NcPolynomial& q) { return p -= q; }
  friend NcPolynomial operator-(NcPolynomial p) { return p *= Rational(-1); }
  friend NcPolynomial operator*(NcPolynomial p, const Rational& c) { return p *= c; }
  friend NcPolynomial operator*(const NcPolynomial& p, const NcPolynomial& q);

  friend bool operator==(const NcPolynomial& p, const NcPolynomial& q) {
    return p.alphabet_ == q.alphabet_ && p.terms_ == q.terms_;
  }

 private:
  Alphabet alphabet_;
  TermMap terms_;
};

NcPolynomial add(const NcPolynomial& p, const NcPolynomial& q);
NcPolynomial mul(const NcPolynomial& p, const NcPolynomial& q);
NcPolynomial power(const NcPolynomial& p, unsigned exponent);

/// Word rendered with '*' separators, "1" for the empty word.
std::string wordToString(const Word& w, const Alphabet& alphabet);
/// Canonical text form in deglex order; "0" for the zero polynomial.
std::string toString(const NcPolynomial& p);

/// Matrix-matrix products used when every word is evaluated on its own,
/// left to right: sum over terms of max(|w| - 1, 0).
std::size_t naiveMultCount(const NcPolynomial& p);

/// Word-by-word evaluation oracle: sum of c_w * X_{i1} ... X_{ik}, with the
/// empty word contributing c * I.
template <typename T>
Matrix<T> naiveEvaluate(const NcPolynomial& p, const MatrixTuple<T>& mats);

/// Value at a commutative point: every letter replaced by a scalar.
Rational evaluateCommutative(const NcPolynomial& p, const std::vector<Rational>& point);

// ---------------------------------------------------------------- parsing

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownIdentifier };
  ParseError(Kind kind, std::size_t position, const std::string& message);
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the polynomial grammar:
///   expression := term (('+'|'-') term)*
///   term       := coeff? factor ('*'? factor)*
///   factor     := identifier power? | '(' expression ')' power?
///   power      := '^' positive-integer
///   coeff      := integer | integer '/' positive-integer
/// A leading sign and numeric factors after '*' are also accepted.
NcPolynomial parsePolynomial(std::string_view text, const Alphabet& alphabet);

/// Collects the maximal identifiers occurring in `text` in order of first
/// appearance; falls back to the single letter "x" when there are none.
Alphabet inferAlphabet(std::string_view text);

}  // namespace ncals
