#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"

using namespace ncals;
using namespace ncals::testing;

namespace {

const Alphabet kXY = Alphabet::parse("x,y");

PolynomialAls rightCompanionOf(const std::vector<Rational>& a) {
  Alphabet ab = Alphabet::parse("x");
  std::vector<LinearEntry> q(a.size(), LinearEntry::letter(1, 0));
  return rightCompanion(q, a, ab);
}

double maxRelativeError(const Matrix<double>& got, const Matrix<Rational>& exact) {
  double worst = 0, scale = 1;
  for (const auto& e : exact.data()) scale = std::max(scale, std::abs(e.get_d()));
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      worst = std::max(worst, std::abs(got(i, j) - exact(i, j).get_d()) / scale);
  return worst;
}

}  // namespace

TEST_CASE("x - xyx system evaluates with two products") {
  std::mt19937_64 rng(61);
  RatTuple x = randomTuple(rng, 3, 2);
  PolynomialAls a(introSystem());
  Matrix<Rational> expected = x[0] - x[0] * x[1] * x[0];
  EvalReport<Rational> left = evaluateLeft(a, x);
  EvalReport<Rational> right = evaluateRight(a, x);
  CHECK(left.result == expected);
  CHECK(left.multCount == 2);
  CHECK(left.side == Side::Left);
  CHECK(right.result == expected);
  CHECK(right.multCount == 2);
  CHECK(right.side == Side::Right);
}

TEST_CASE("scalar and linear systems need no products") {
  std::mt19937_64 rng(62);
  RatTuple x = randomTuple(rng, 2, 2);
  PolynomialAls five = constantAls(kXY, 5);
  EvalReport<Rational> r = evaluateLeft(five, x);
  CHECK(r.result == Matrix<Rational>::identity(2) * Rational(5));
  CHECK(r.multCount == 0);
  CHECK(evaluateRight(five, x).multCount == 0);

  PolynomialAls lin(xSystem());
  CHECK(evaluateRight(lin, x).result == x[0]);
  CHECK(evaluateRight(lin, x).multCount == 0);
  CHECK(evaluateLeft(lin, x).multCount == 0);
}

TEST_CASE("cube of x + y + z uses two products") {
  Alphabet ab = Alphabet::parse("x,y,z");
  NcPolynomial p = pFamily(3);
  PolynomialAls a = buildAls(p);
  std::mt19937_64 rng(63);
  RatTuple x = randomTuple(rng, 3, 3);
  EvalReport<Rational> r = evaluateLeft(a, x);
  CHECK(r.result == wordEvaluate(p, x));
  CHECK(r.multCount == 2);
}

TEST_CASE("Horner system and its minimal counterpart") {
  PolynomialAls a7(hornerSystem7());
  PolynomialAls a6(hornerSystem6());
  NcPolynomial p = poly("a*b*(x*y*z + y*z + z + 1) + a*c*x*y*z", hornerAlphabet());
  CHECK(representedPolynomial(a7.system()) == p);
  CHECK(representedPolynomial(a6.system()) == p);
  CHECK(countNs(a7) == 5);
  CHECK(countNt(a7) == 5);
  CHECK(countN(a7) == 5);
  CHECK(countNs(a6) == 6);
  CHECK(countNt(a6) == 7);
  CHECK(countN(a6) == 6);
  // |w| - 1 per term: 4 + 3 + 2 + 1 + 4
  CHECK(naiveMultCount(p) == 14);

  std::mt19937_64 rng(64);
  RatTuple x = randomTuple(rng, 3, 6);
  Matrix<Rational> expected = wordEvaluate(p, x);
  EvalReport<Rational> l7 = evaluateLeft(a7, x), r7 = evaluateRight(a7, x);
  CHECK(l7.result == expected);
  CHECK(r7.result == expected);
  CHECK(l7.multCount == 5);
  CHECK(r7.multCount == 5);
  CHECK(evaluateLeft(a6, x).result == expected);
  CHECK(evaluateRight(a6, x).result == expected);
}

TEST_CASE("static counts of monomials") {
  Alphabet ab = Alphabet::parse("x,y,z");
  for (std::size_t k = 1; k <= 6; ++k) {
    Word w(k, 0);
    for (std::size_t i = 0; i < k; ++i) w[i] = static_cast<std::uint32_t>(i % 3);
    PolynomialAls m = minimalMonomial(ab, w);
    CHECK(countNs(m) == k - 1);
    CHECK(countNt(m) == k - 1);
  }
  CHECK(countN(constantAls(ab, 1)) == 0);
}

TEST_CASE("complexity bounds") {
  CHECK(complexityBounds(16) == std::pair<std::size_t, std::size_t>{14, 105});
  CHECK(complexityBounds(2) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(complexityBounds(5) == std::pair<std::size_t, std::size_t>{3, 6});
  CHECK_THROWS_AS(complexityBounds(1), std::invalid_argument);
}

TEST_CASE("block factorization evaluation counts") {
  NcPolynomial camino = poly(kCaminoPolynomial);
  BlockFactorization bf = caminoBlocks(camino.alphabet());
  std::mt19937_64 rng(65);
  RatTuple x = randomTuple(rng, 3, camino.alphabet().size());
  EvalReport<Rational> r = evaluateBlockFactorization(bf, x);
  CHECK(r.result == wordEvaluate(camino, x));
  CHECK(r.multCount == 15);

  BlockFactorization anti(kXY, {entryMatrix(kXY, {{"x", "y"}}), entryMatrix(kXY, {{"y"}, {"x"}})});
  RatTuple y = randomTuple(rng, 3, 2);
  EvalReport<Rational> a = evaluateBlockFactorization(anti, y);
  CHECK(a.result == y[0] * y[1] + y[1] * y[0]);
  CHECK(a.multCount == 2);

  BlockFactorization single(kXY, {entryMatrix(kXY, {{"x"}})});
  EvalReport<Rational> s = evaluateBlockFactorization(single, y);
  CHECK(s.result == y[0]);
  CHECK(s.multCount == 0);
}

TEST_CASE("right companion of x^2 + 1 uses one product") {
  PolynomialAls c = rightCompanionOf({1, 0});
  std::mt19937_64 rng(66);
  RatTuple x = randomTuple(rng, 4, 1);
  EvalReport<Rational> r = evaluateRight(c, x);
  CHECK(r.multCount == 1);
  CHECK(r.result == x[0] * x[0] + Matrix<Rational>::identity(4));
}

TEST_CASE("entry evaluation") {
  std::mt19937_64 rng(67);
  RatTuple x = randomTuple(rng, 2, 2);
  LinearEntry e = LinearEntry::fromPolynomial(poly("3 - 2*y + x", kXY));
  CHECK(evaluateEntry(e, x) == Matrix<Rational>::identity(2) * Rational(3) - x[1] * Rational(2) + x[0]);
}

TEST_CASE("matrix files") {
  std::istringstream rat("2 2 rat\n1 1/2\n0 -3\n0.25 0\n0 1\n");
  AnyTuple t = readMatrixTuple(rat);
  REQUIRE(std::holds_alternative<MatrixTuple<Rational>>(t));
  const auto& r = std::get<MatrixTuple<Rational>>(t);
  CHECK(r.size() == 2);
  CHECK(r.count() == 2);
  CHECK(r[0](0, 1) == Rational(1, 2));
  CHECK(r[1](0, 0) == Rational(1, 4));

  std::ostringstream os;
  writeMatrixTuple(os, r);
  std::istringstream back(os.str());
  CHECK(std::get<MatrixTuple<Rational>>(readMatrixTuple(back)).matrices() == r.matrices());

  std::istringstream f64("1 1 f64\n0.5\n");
  AnyTuple d = readMatrixTuple(f64);
  REQUIRE(std::holds_alternative<MatrixTuple<double>>(d));
  CHECK(std::get<MatrixTuple<double>>(d)[0](0, 0) == 0.5);

  std::istringstream badMode("1 1 int\n1\n");
  CHECK_THROWS_AS(readMatrixTuple(badMode), FormatError);
  std::istringstream shortFile("2 1 rat\n1 2\n");
  CHECK_THROWS_AS(readMatrixTuple(shortFile), FormatError);
}

// ------------------------------------------------------------- properties

TEST_CASE("both sides equal the oracle and respect the static counts") {
  std::mt19937_64 rng(68);
  Alphabet ab = lettersAlphabet(3);
  PolySpec spec{3, 4, 8, 3};
  for (int trial = 0; trial < 60; ++trial) {
    NcPolynomial p = randomPolynomial(rng, ab, spec);
    PolynomialAls a = buildAls(p);
    RatTuple x = randomTuple(rng, 3, 3);
    Matrix<Rational> expected = wordEvaluate(p, x);
    EvalReport<Rational> l = evaluateLeft(a, x), r = evaluateRight(a, x);
    CHECK(l.result == expected);
    CHECK(r.result == expected);
    if (a.dim() >= 2) {
      CHECK(l.multCount <= countNs(a));
      CHECK(r.multCount <= countNt(a));
      auto [lo, hi] = complexityBounds(a.dim());
      CHECK(countN(a) >= lo);
      CHECK(countN(a) <= hi);
    }
  }
}

TEST_CASE("right companion needs degree minus one products") {
  std::mt19937_64 rng(69);
  std::uniform_int_distribution<int> degree(1, 10), coef(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> a(degree(rng));
    for (auto& c : a) c = coef(rng);
    PolynomialAls c = rightCompanionOf(a);
    RatTuple x = randomTuple(rng, 3, 1);
    EvalReport<Rational> r = evaluateRight(c, x), l = evaluateLeft(c, x);
    CHECK(r.multCount == a.size() - 1);
    CHECK(l.multCount == a.size() - 1);
    CHECK(r.result == hornerEvaluate(a, x[0]));
    CHECK(l.result == hornerEvaluate(a, x[0]));
  }
}

TEST_CASE("floating point evaluation tracks the exact value") {
  std::mt19937_64 rng(70);
  Alphabet ab = lettersAlphabet(3);
  PolySpec spec{3, 4, 8, 3};
  for (int trial = 0; trial < 30; ++trial) {
    NcPolynomial p = randomPolynomial(rng, ab, spec);
    PolynomialAls a = buildAls(p);
    std::size_t m = 1 + trial % 8;
    MatrixTuple<double> xd = randomDoubleTuple(m, 3, rng);
    std::vector<Matrix<Rational>> exact;
    for (const auto& md : xd.matrices()) {
      Matrix<Rational> mr(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mr(i, j) = Rational(md(i, j));
      exact.push_back(mr);
    }
    RatTuple xr(exact);
    Matrix<Rational> expected = wordEvaluate(p, xr);
    CHECK(maxRelativeError(evaluateLeft(a, xd).result, expected) < 1e-9);
    CHECK(maxRelativeError(evaluateRight(a, xd).result, expected) < 1e-9);
    CHECK(evaluateLeft(a, xd).multCount == evaluateLeft(a, xr).multCount);
  }
}
