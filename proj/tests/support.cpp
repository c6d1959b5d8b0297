#include "support.hpp"

#include <set>
#include <stdexcept>

namespace ncals::testing {

Alphabet lettersAlphabet(std::size_t d) {
  static const char* const names[] = {"x", "y", "z", "w"};
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < d; ++i) letters.push_back(d <= 4 ? names[i] : "x" + std::to_string(i + 1));
  return Alphabet(letters);
}

Word randomWord(std::mt19937_64& rng, std::size_t letters, std::size_t maxLength) {
  std::uniform_int_distribution<std::size_t> len(0, maxLength);
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(letters - 1));
  Word w(len(rng));
  for (auto& l : w) l = letter(rng);
  return w;
}

NcPolynomial randomPolynomial(std::mt19937_64& rng, const Alphabet& ab, const PolySpec& spec) {
  std::uniform_int_distribution<std::size_t> count(0, spec.maxTerms);
  std::uniform_int_distribution<int> coef(1, spec.coefRange);
  std::bernoulli_distribution negative(0.5);
  NcPolynomial p(ab);
  const std::size_t terms = count(rng);
  for (std::size_t i = 0; i < terms; ++i) {
    int c = coef(rng);
    p.addTerm(randomWord(rng, ab.size(), spec.maxDegree), negative(rng) ? -c : c);
  }
  return p;
}

NcPolynomial randomNonzeroPolynomial(std::mt19937_64& rng, const Alphabet& ab, const PolySpec& spec) {
  for (;;) {
    NcPolynomial p = randomPolynomial(rng, ab, spec);
    if (!p.isZero()) return p;
  }
}

RatTuple randomTuple(std::mt19937_64& rng, std::size_t m, std::size_t d, int range) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, range);
  std::vector<Matrix<Rational>> mats;
  for (std::size_t l = 0; l < d; ++l) {
    Matrix<Rational> x(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        x(i, j) = Rational(num(rng), den(rng));
        x(i, j).canonicalize();
      }
    mats.push_back(std::move(x));
  }
  return RatTuple(std::move(mats));
}

std::size_t oracleRank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

NcPolynomial convolutionProduct(const NcPolynomial& p, const NcPolynomial& q) {
  std::set<Word, DegLexLess> candidates;
  for (const auto& [u, cu] : p.terms())
    for (const auto& [v, cv] : q.terms()) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      candidates.insert(w);
    }
  NcPolynomial r(p.alphabet());
  for (const Word& w : candidates) {
    Rational c = 0;
    for (std::size_t k = 0; k <= w.size(); ++k)
      c += p.coefficient(Word(w.begin(), w.begin() + k)) * q.coefficient(Word(w.begin() + k, w.end()));
    r.addTerm(w, c);
  }
  return r;
}

std::size_t hankelRank(const NcPolynomial& p) {
  std::set<Word, DegLexLess> prefixes, suffixes;
  for (const auto& [w, c] : p.terms())
    for (std::size_t k = 0; k <= w.size(); ++k) {
      prefixes.insert(Word(w.begin(), w.begin() + k));
      suffixes.insert(Word(w.begin() + k, w.end()));
    }
  std::vector<std::vector<Rational>> h;
  for (const Word& u : prefixes) {
    std::vector<Rational> row;
    for (const Word& v : suffixes) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      row.push_back(p.coefficient(w));
    }
    h.push_back(std::move(row));
  }
  return oracleRank(std::move(h));
}

Matrix<Rational> wordEvaluate(const NcPolynomial& p, const RatTuple& x) {
  const std::size_t m = x.size();
  Matrix<Rational> sum(m, m, Rational(0));
  for (const auto& [w, c] : p.terms()) {
    Matrix<Rational> prod = Matrix<Rational>::identity(m);
    for (std::uint32_t l : w) {
      Matrix<Rational> next(m, m, Rational(0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t j = 0; j < m; ++j) next(i, j) += prod(i, k) * x[l](k, j);
      prod = std::move(next);
    }
    sum.addScaled(prod, c);
  }
  return sum;
}

Matrix<Rational> kroneckerEvaluate(const Als& a, const RatTuple& x) {
  const std::size_t n = a.dim(), m = x.size(), big = n * m;
  if (n == 0) return Matrix<Rational>(m, m, Rational(0));
  // augmented [M | B], M big x big, B big x m
  std::vector<std::vector<Rational>> rows(big, std::vector<Rational>(big + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LinearEntry& e = a.at(i, j);
      for (std::size_t r = 0; r < m; ++r) {
        rows[i * m + r][j * m + r] += e[0];
        for (std::size_t l = 0; l < x.count(); ++l) {
          if (e[l + 1] == 0) continue;
          for (std::size_t c = 0; c < m; ++c) rows[i * m + r][j * m + c] += e[l + 1] * x[l](r, c);
        }
      }
    }
    for (std::size_t r = 0; r < m; ++r) rows[i * m + r][big + r] = a.rhs(i);
  }
  for (std::size_t c = 0; c < big; ++c) {
    std::size_t piv = c;
    while (piv < big && rows[piv][c] == 0) ++piv;
    if (piv == big) throw std::runtime_error("pencil value is singular");
    std::swap(rows[c], rows[piv]);
    Rational inv = 1 / rows[c][c];
    for (auto& e : rows[c]) e *= inv;
    for (std::size_t i = 0; i < big; ++i) {
      if (i == c || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < big + m; ++j) rows[i][j] -= f * rows[c][j];
    }
  }
  Matrix<Rational> s1(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) s1(r, c) = rows[r][big + c];
  return s1;
}

Matrix<Rational> hornerEvaluate(const std::vector<Rational>& a, const Matrix<Rational>& x) {
  const std::size_t m = x.rows();
  Matrix<Rational> acc = Matrix<Rational>::identity(m);
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * x;
    acc.addScaled(Matrix<Rational>::identity(m), a[i]);
  }
  return acc;
}

NcPolynomial poly(const std::string& text, const Alphabet& ab) { return parsePolynomial(text, ab); }
NcPolynomial poly(const std::string& text) { return parsePolynomial(text, inferAlphabet(text)); }

const char* const kCaminoPolynomial =
    "3*c*y*x*b + 3*x*b*y*x*b + 2*c*y*x*a*x + c*y*b*x*b - c*y*a*x*b - 2*x*b*y*x*a*x"
    " + 4*x*b*y*b*x*b - 3*x*b*y*a*x*b + 3*x*a*x*y*x*b - 3*b*x*b*y*x*b + 6*a*x*b*y*x*b"
    " + 2*x*a*x*y*x*a*x + x*a*x*y*b*x*b - x*a*x*y*a*x*b - 2*b*x*b*y*x*a*x"
    " - b*x*b*y*b*x*b + b*x*b*y*a*x*b + 5*a*x*b*y*b*x*b - 4*a*x*b*y*a*x*b";

const char* const kOliveiraPolynomial = "2*a*e*x*c + 2*b*x*c - a*e*x*d - b*x*d";

namespace {
Alphabet xy() { return Alphabet::parse("x,y"); }
Alphabet xyz() { return Alphabet::parse("x,y,z"); }
}  // namespace

Als introSystem() {
  return Als::fromText(xy(),
                       {{"1", "-x", ".", "-x"},  //
                        {".", "1", "y", "."},
                        {".", ".", "1", "-x"},
                        {".", ".", ".", "1"}},
                       {".", ".", ".", "1"});
}

Alphabet hornerAlphabet() { return Alphabet::parse("a,b,c,x,y,z"); }

Als hornerSystem7() {
  return Als::fromText(hornerAlphabet(),
                       {{"1", "-a", ".", ".", ".", ".", "."},
                        {".", "1", "-b", "-c", ".", ".", "."},
                        {".", ".", "1", "-1", "-1", "-1", "-1"},
                        {".", ".", ".", "1", "-x", ".", "."},
                        {".", ".", ".", ".", "1", "-y", "."},
                        {".", ".", ".", ".", ".", "1", "-z"},
                        {".", ".", ".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", ".", ".", "1"});
}

Als hornerSystem6() {
  return Als::fromText(hornerAlphabet(),
                       {{"1", "-a", ".", ".", ".", "."},
                        {".", "1", "-b-c", "-b", "-b", "-b"},
                        {".", ".", "1", "-x", ".", "."},
                        {".", ".", ".", "1", "-y", "."},
                        {".", ".", ".", ".", "1", "-z"},
                        {".", ".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", ".", "1"});
}

Als oliveiraSystem() {
  return Als::fromText(Alphabet::parse("a,b,c,d,e,x"),
                       {{"1", "-a", "-b", "-a", "."},
                        {".", "1", "-e", ".", "2c-d"},
                        {".", ".", "1", "-x", "."},
                        {".", ".", ".", "1", "d-2c"},
                        {".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", "1"});
}

Als anticommutatorSystem() {
  return Als::fromText(xy(),
                       {{"1", "-x", "-y", "0"},  //
                        {".", "1", "0", "-y"},
                        {".", ".", "1", "-x"},
                        {".", ".", ".", "1"}},
                       {".", ".", ".", "1"});
}

Als xSystem() { return Als::fromText(xy(), {{"1", "-x"}, {".", "1"}}, {".", "1"}); }

Als oneMinusYxSystem() {
  return Als::fromText(xy(), {{"1", "y", "-1"}, {".", "1", "-x"}, {".", ".", "1"}}, {".", ".", "1"});
}

Als h1RawSystem() {
  return Als::fromText(xy(),
                       {{"1", "-x", "-1", ".", "."},
                        {".", "1", ".", ".", "."},
                        {".", ".", "1", "y", "-1"},
                        {".", ".", ".", "1", "-x"},
                        {".", ".", ".", ".", "1"}},
                       {".", "1", ".", ".", "1"});
}

Als h2RawSystem() {
  return Als::fromText(xy(),
                       {{"1", "-x", ".", ".", "."},
                        {".", "1", "-1", ".", "."},
                        {".", ".", "1", "y", "-1"},
                        {".", ".", ".", "1", "-x"},
                        {".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", "1"});
}

Als pqRawSystem() {
  return Als::fromText(xyz(),
                       {{"1", "-x", "-1", ".", ".", "."},
                        {".", "1", "-y", ".", ".", "."},
                        {".", ".", "1", "-1", ".", "."},
                        {".", ".", ".", "1", "-z", "3"},
                        {".", ".", ".", ".", "1", "-x"},
                        {".", ".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", ".", "1"});
}

Als pqMinimalSystem() {
  return Als::fromText(xyz(),
                       {{"1", "-x", "-1", "0", "0"},
                        {".", "1", "-y", "0", "0"},
                        {".", ".", "1", "-z", "3"},
                        {".", ".", ".", "1", "-x"},
                        {".", ".", ".", ".", "1"}},
                       {".", ".", ".", ".", "1"});
}

BlockFactorization caminoBlocks(const Alphabet& ab) {
  std::vector<EntryMatrix> f;
  // [X1 | X4], diag(X2, I2), [X3 ; I2]
  f.push_back(entryMatrix(ab, {{"1+a", "1+b", "x", ".", "c"}}));
  f.push_back(entryMatrix(ab, {{"x", ".", ".", ".", "."},
                               {".", "x", ".", ".", "."},
                               {".", ".", "a", ".", "."},
                               {".", ".", ".", "1", "."},
                               {".", ".", ".", ".", "1"}}));
  f.push_back(entryMatrix(ab, {{"b", "."}, {".", "-b"}, {".", "x"}, {"1", "."}, {".", "1"}}));
  f.push_back(entryMatrix(ab, {{"y", "."}, {".", "y"}}));
  f.push_back(entryMatrix(ab, {{"6+5b-4a", "."}, {"3+b-a", "2x"}}));
  f.push_back(entryMatrix(ab, {{".", "x"}, {"a", "."}}));
  f.push_back(entryMatrix(ab, {{"x"}, {"b"}}));
  return BlockFactorization(ab, std::move(f));
}

}  // namespace ncals::testing
