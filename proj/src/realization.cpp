#include "ncals/realization.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncals {

// ------------------------------------------------------------ LinearEntry

LinearEntry LinearEntry::scalar(std::size_t letters, const Rational& c) {
  LinearEntry e(letters);
  e.coeffs_[0] = c;
  return e;
}

LinearEntry LinearEntry::letter(std::size_t letters, std::size_t index, const Rational& c) {
  if (index >= letters) throw std::out_of_range("letter index outside alphabet");
  LinearEntry e(letters);
  e.coeffs_[index + 1] = c;
  return e;
}

LinearEntry LinearEntry::fromPolynomial(const NcPolynomial& p) {
  LinearEntry e(p.alphabet().size());
  for (const auto& [w, c] : p.terms()) {
    if (w.size() > 1) throw std::invalid_argument("entry '" + toString(p) + "' is not affine-linear");
    e.coeffs_[w.empty() ? 0 : w[0] + 1] = c;
  }
  return e;
}

bool LinearEntry::isZero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool LinearEntry::isScalar() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

void LinearEntry::addScaled(const LinearEntry& o, const Rational& c) {
  if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("linear entries over different alphabets");
  if (sgn(c) == 0) return;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(o.coeffs_[i]) != 0) coeffs_[i] += c * o.coeffs_[i];
}

LinearEntry& LinearEntry::operator+=(const LinearEntry& o) {
  addScaled(o, 1);
  return *this;
}

LinearEntry& LinearEntry::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

NcPolynomial LinearEntry::toPolynomial(const Alphabet& alphabet) const {
  if (alphabet.size() != letterCount()) throw AlphabetMismatch();
  NcPolynomial p(alphabet);
  p.addTerm({}, coeffs_[0]);
  for (std::size_t l = 0; l < letterCount(); ++l)
    p.addTerm(Word{static_cast<std::uint32_t>(l)}, coeffs_[l + 1]);
  return p;
}

// -------------------------------------------------------------------- Als

Als::Als(Alphabet alphabet, std::size_t n)
    : alphabet_(std::move(alphabet)), a_(n, n, LinearEntry(alphabet_.size())), v_(n) {
  for (std::size_t i = 0; i < n; ++i) a_(i, i)[0] = 1;
}

Als Als::fromText(const Alphabet& alphabet, const std::vector<std::vector<std::string>>& rows,
                  const std::vector<std::string>& v) {
  const std::size_t n = v.size();
  if (rows.size() != n) throw std::invalid_argument("row count does not match right-hand side");
  Als a(alphabet, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("system matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& cell = rows[i][j];
      a.a_(i, j) = (cell == "." || cell.empty()) ? LinearEntry(alphabet.size())
                                                 : LinearEntry::fromPolynomial(parsePolynomial(cell, alphabet));
    }
    a.v_[i] = (v[i] == "." || v[i].empty()) ? Rational(0) : parseRational(v[i]);
  }
  return a;
}

RatMatrix Als::component(std::size_t l) const {
  RatMatrix m(dim(), dim(), Rational(0));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = a_(i, j)[l];
  return m;
}

bool Als::isUpperUnitriangular() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    const LinearEntry& d = a_(i, i);
    if (!d.isScalar() || d[0] != 1) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!a_(i, j).isZero()) return false;
  }
  return true;
}

bool Als::hasPolynomialRhs() const {
  const std::size_t n = dim();
  if (n == 0) return true;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (sgn(v_[i]) != 0) return false;
  return sgn(v_[n - 1]) != 0;
}

void Als::addRowMultiple(std::size_t target, std::size_t source, const Rational& c) {
  if (sgn(c) == 0) return;
  for (std::size_t j = 0; j < dim(); ++j) a_(target, j).addScaled(a_(source, j), c);
  v_[target] += c * v_[source];
}

void Als::addColumnMultiple(std::size_t target, std::size_t source, const Rational& c) {
  if (sgn(c) == 0) return;
  for (std::size_t i = 0; i < dim(); ++i) a_(i, target).addScaled(a_(i, source), c);
}

Als Als::withoutRowColumn(std::size_t k) const {
  const std::size_t n = dim();
  if (k >= n) throw std::out_of_range("row/column index out of range");
  Als out(alphabet_, n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == k) continue;
    for (std::size_t j = 0, oj = 0; j < n; ++j) {
      if (j == k) continue;
      out.a_(oi, oj++) = a_(i, j);
    }
    out.v_[oi++] = v_[i];
  }
  return out;
}

Als Als::principalBlock(std::size_t first, std::size_t last) const {
  if (first > last || last > dim()) throw std::out_of_range("block range out of range");
  Als out(alphabet_, last - first);
  for (std::size_t i = first; i < last; ++i) {
    for (std::size_t j = first; j < last; ++j) out.a_(i - first, j - first) = a_(i, j);
    out.v_[i - first] = v_[i];
  }
  return out;
}

// ---------------------------------------------------------- PolynomialAls

PolynomialAls::PolynomialAls(Als als) : als_(std::move(als)) {
  if (!als_.isUpperUnitriangular()) throw std::invalid_argument("polynomial ALS needs an upper unitriangular matrix");
  if (!als_.hasPolynomialRhs()) throw std::invalid_argument("polynomial ALS needs v = (0, ..., 0, lambda), lambda != 0");
}

Rational PolynomialAls::lambda() const { return dim() == 0 ? Rational(0) : als_.rhs(dim() - 1); }

// ---------------------------------------------- AdmissibleTransformation

AdmissibleTransformation::AdmissibleTransformation(RatMatrix p, RatMatrix q) : p_(std::move(p)), q_(std::move(q)) {
  if (!p_.isSquare() || !q_.isSquare() || p_.rows() != q_.rows())
    throw std::invalid_argument("transformation matrices must be square and of equal size");
  const std::size_t n = q_.rows();
  if (n > 0) {
    if (q_(0, 0) != 1) throw std::invalid_argument("first row of Q must be e_1");
    for (std::size_t j = 1; j < n; ++j)
      if (sgn(q_(0, j)) != 0) throw std::invalid_argument("first row of Q must be e_1");
  }
  if (!isInvertible(p_)) throw std::invalid_argument("P is singular");
  if (!isInvertible(q_)) throw std::invalid_argument("Q is singular");
}

AdmissibleTransformation AdmissibleTransformation::identity(std::size_t n) {
  return {RatMatrix::identity(n), RatMatrix::identity(n)};
}

bool AdmissibleTransformation::isPolynomial() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational want = i == j ? 1 : 0;
      if (p_(i, j) != want || q_(i, j) != want) return false;
    }
  return true;
}

// ---------------------------------------------------------------- families

namespace {

void requireTriangular(const Als& a) {
  if (!a.isUpperUnitriangular()) throw std::invalid_argument("system matrix is not upper unitriangular");
}

/// Adds c * e * s (entry on the left) to acc.
void accumulateLeft(NcPolynomial& acc, const LinearEntry& e, const NcPolynomial& s, const Rational& c) {
  for (const auto& [w, coeff] : s.terms()) {
    if (sgn(e[0]) != 0) acc.addTerm(w, c * e[0] * coeff);
    Word pw(w.size() + 1);
    std::copy(w.begin(), w.end(), pw.begin() + 1);
    for (std::size_t l = 1; l < e.size(); ++l) {
      if (sgn(e[l]) == 0) continue;
      pw[0] = static_cast<std::uint32_t>(l - 1);
      acc.addTerm(pw, c * e[l] * coeff);
    }
  }
}

/// Adds c * t * e (entry on the right) to acc.
void accumulateRight(NcPolynomial& acc, const NcPolynomial& t, const LinearEntry& e, const Rational& c) {
  for (const auto& [w, coeff] : t.terms()) {
    if (sgn(e[0]) != 0) acc.addTerm(w, c * e[0] * coeff);
    Word pw(w);
    pw.push_back(0);
    for (std::size_t l = 1; l < e.size(); ++l) {
      if (sgn(e[l]) == 0) continue;
      pw.back() = static_cast<std::uint32_t>(l - 1);
      acc.addTerm(pw, c * e[l] * coeff);
    }
  }
}

}  // namespace

std::vector<NcPolynomial> leftFamily(const Als& a) {
  requireTriangular(a);
  const std::size_t n = a.dim();
  std::vector<NcPolynomial> s(n, NcPolynomial(a.alphabet()));
  for (std::size_t i = n; i-- > 0;) {
    s[i].addTerm({}, a.rhs(i));
    for (std::size_t j = i + 1; j < n; ++j)
      if (!a.at(i, j).isZero()) accumulateLeft(s[i], a.at(i, j), s[j], -1);
  }
  return s;
}

std::vector<NcPolynomial> rightFamily(const Als& a) {
  requireTriangular(a);
  const std::size_t n = a.dim();
  std::vector<NcPolynomial> t(n, NcPolynomial(a.alphabet()));
  if (n == 0) return t;
  t[0].addTerm({}, 1);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!a.at(i, j).isZero()) accumulateRight(t[j], t[i], a.at(i, j), -1);
  return t;
}

NcPolynomial representedPolynomial(const Als& a) {
  if (a.dim() == 0) return NcPolynomial(a.alphabet());
  return leftFamily(a).front();
}

// ------------------------------------------------------------ constructors

PolynomialAls minimalMonomial(const Alphabet& alphabet, const Word& w, const Rational& c) {
  if (sgn(c) == 0) return PolynomialAls(Als::empty(alphabet));
  const std::size_t n = w.size() + 1;
  Als a(alphabet, n);
  for (std::size_t i = 0; i < w.size(); ++i) a.at(i, i + 1) = LinearEntry::letter(alphabet.size(), w[i], -1);
  a.rhs(n - 1) = c;
  return PolynomialAls(std::move(a));
}

PolynomialAls constantAls(const Alphabet& alphabet, const Rational& c) { return minimalMonomial(alphabet, {}, c); }

Als alsAdd(const Als& p, const Als& q) {
  if (!(p.alphabet() == q.alphabet())) throw AlphabetMismatch();
  if (p.dim() == 0) return q;
  if (q.dim() == 0) return p;
  const std::size_t np = p.dim(), nq = q.dim();
  Als out(p.alphabet(), np + nq);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) out.at(i, j) = p.at(i, j);
    // -A_p u_p^T u_q: the first column of A_p placed in the first column of the q block.
    out.at(i, np) = -p.at(i, 0);
    out.rhs(i) = p.rhs(i);
  }
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) out.at(np + i, np + j) = q.at(i, j);
    out.rhs(np + i) = q.rhs(i);
  }
  return out;
}

Als alsMul(const Als& p, const Als& q) {
  if (!(p.alphabet() == q.alphabet())) throw AlphabetMismatch();
  if (p.dim() == 0 || q.dim() == 0) return Als::empty(p.alphabet());
  auto isUnitScalar = [](const Als& a) { return a.dim() == 1 && a.isUpperUnitriangular(); };
  if (isUnitScalar(p)) {
    Als out = q;
    for (std::size_t i = 0; i < out.dim(); ++i) out.rhs(i) *= p.rhs(0);
    return out;
  }
  if (isUnitScalar(q)) {
    Als out = p;
    for (std::size_t i = 0; i < out.dim(); ++i) out.rhs(i) *= q.rhs(0);
    return out;
  }
  const std::size_t np = p.dim(), nq = q.dim();
  const std::size_t d = p.letterCount();
  Als out(p.alphabet(), np + nq);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) out.at(i, j) = p.at(i, j);
    out.at(i, np) = LinearEntry::scalar(d, -p.rhs(i));
  }
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) out.at(np + i, np + j) = q.at(i, j);
    out.rhs(np + i) = q.rhs(i);
  }
  return out;
}

Als applyTransformation(const Als& a, const AdmissibleTransformation& t) {
  const std::size_t n = a.dim();
  if (t.dim() != n) throw std::invalid_argument("transformation dimension does not match the system");
  const RatMatrix& p = t.p();
  const RatMatrix& q = t.q();
  const std::size_t d = a.letterCount();
  Als pa(a.alphabet(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearEntry e(d);
      for (std::size_t r = 0; r < n; ++r) e.addScaled(a.at(r, j), p(i, r));
      pa.at(i, j) = std::move(e);
    }
    Rational v = 0;
    for (std::size_t r = 0; r < n; ++r) v += p(i, r) * a.rhs(r);
    pa.rhs(i) = v;
  }
  Als out(a.alphabet(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearEntry e(d);
      for (std::size_t c = 0; c < n; ++c) e.addScaled(pa.at(i, c), q(c, j));
      out.at(i, j) = std::move(e);
    }
    out.rhs(i) = pa.rhs(i);
  }
  return out;
}

PolynomialAls restorePolynomialForm(const Als& a) {
  requireTriangular(a);
  const std::size_t n = a.dim();
  if (n == 0) return PolynomialAls(a);
  if (sgn(a.rhs(n - 1)) == 0) throw std::domain_error("cannot restore polynomial form: last entry of v is zero");
  Als out = a;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sgn(out.rhs(i)) == 0) continue;
    out.addRowMultiple(i, n - 1, -out.rhs(i) / out.rhs(n - 1));
  }
  return PolynomialAls(std::move(out));
}

namespace {

void checkCompanionInput(std::span<const LinearEntry> q, std::span<const Rational> a, const Alphabet& alphabet) {
  if (q.empty()) throw std::invalid_argument("companion system needs at least one factor");
  if (a.size() != q.size()) throw std::invalid_argument("companion system needs one coefficient per factor");
  for (const auto& e : q) {
    if (e.letterCount() != alphabet.size()) throw AlphabetMismatch();
    if (e.isScalar()) throw std::invalid_argument("companion factors must be non-scalar");
  }
}

}  // namespace

PolynomialAls leftCompanion(std::span<const LinearEntry> q, std::span<const Rational> a, const Alphabet& alphabet) {
  checkCompanionInput(q, a, alphabet);
  const std::size_t m = q.size();
  const std::size_t d = alphabet.size();
  Als out(alphabet, m + 1);
  // Row 1: [1, -q_m - a_{m-1}, -a_{m-2}, ..., -a_0].
  LinearEntry first = -q[m - 1];
  first[0] -= a[m - 1];
  out.at(0, 1) = first;
  for (std::size_t j = 2; j <= m; ++j) out.at(0, j) = LinearEntry::scalar(d, -a[m - j]);
  // Row i (1-based i = 2..m) carries -q_{m+1-i} on the superdiagonal.
  for (std::size_t i = 1; i < m; ++i) out.at(i, i + 1) = -q[m - 1 - i];
  out.rhs(m) = 1;
  return PolynomialAls(std::move(out));
}

PolynomialAls rightCompanion(std::span<const LinearEntry> q, std::span<const Rational> a, const Alphabet& alphabet) {
  checkCompanionInput(q, a, alphabet);
  const std::size_t m = q.size();
  const std::size_t d = alphabet.size();
  Als out(alphabet, m + 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    out.at(i, i + 1) = -q[i];
    out.at(i, m) = LinearEntry::scalar(d, -a[i]);
  }
  LinearEntry last = -q[m - 1];
  last[0] -= a[m - 1];
  out.at(m - 1, m) = last;
  out.rhs(m) = 1;
  return PolynomialAls(std::move(out));
}

}  // namespace ncals
