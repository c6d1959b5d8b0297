#include "ncals/factorizer.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ncals {

bool hasZeroBlock(const Als& a, std::size_t n1) {
  const std::size_t n = a.dim();
  if (n1 < 2 || n1 + 1 > n) throw std::out_of_range("split position outside 2..n-1");
  for (std::size_t r = 0; r + 1 < n1; ++r)
    for (std::size_t c = n1; c < n; ++c)
      if (!a.at(r, c).isZero()) return false;
  return true;
}

namespace {

/// One linear attempt for split n1 (1-based). Columns 2..s1 may be added to
/// later target columns, rows s1+1..n-1 to earlier target rows. Row sources
/// lie strictly below column sources, so the bilinear term vanishes.
std::optional<AdmissibleTransformation> attemptSplit(const Als& a, std::size_t n1, std::size_t s1) {
  const std::size_t n = a.dim();
  const std::size_t d = a.letterCount();
  const std::size_t targetRows = n1 - 1;  // 0-based rows 0..n1-2
  const std::size_t firstTargetCol = n1;  // 0-based columns n1..n-1

  // alpha(r, i): row i added to target row r, i in R = {s1..n-2} (0-based), i > r.
  // beta(j, c): column j added to target column c, j in C = {1..s1-1}, j < c.
  struct Var {
    std::size_t from, to;
  };
  std::vector<Var> alphas, betas;
  for (std::size_t r = 0; r < targetRows; ++r)
    for (std::size_t i = std::max(s1, r + 1); i + 1 < n; ++i) alphas.push_back({i, r});
  for (std::size_t c = firstTargetCol; c < n; ++c)
    for (std::size_t j = 1; j < s1 && j < c; ++j) betas.push_back({j, c});

  const std::size_t unknowns = alphas.size() + betas.size();
  const std::size_t rows = targetRows * (n - firstTargetCol) * (d + 1);
  RatMatrix m(rows, unknowns, Rational(0));
  RatMatrix rhs(rows, 1, Rational(0));
  std::size_t eq = 0;
  bool anyNonzero = false;
  for (std::size_t r = 0; r < targetRows; ++r) {
    for (std::size_t c = firstTargetCol; c < n; ++c) {
      for (std::size_t l = 0; l <= d; ++l, ++eq) {
        rhs(eq, 0) = -a.at(r, c)[l];
        if (sgn(rhs(eq, 0)) != 0) anyNonzero = true;
        for (std::size_t x = 0; x < alphas.size(); ++x)
          if (alphas[x].to == r) m(eq, x) = a.at(alphas[x].from, c)[l];
        for (std::size_t y = 0; y < betas.size(); ++y)
          if (betas[y].to == c) m(eq, alphas.size() + y) = a.at(r, betas[y].from)[l];
      }
    }
  }

  RatMatrix p = RatMatrix::identity(n), q = RatMatrix::identity(n);
  if (anyNonzero) {
    if (unknowns == 0) return std::nullopt;
    auto sol = solveLinear(m, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t x = 0; x < alphas.size(); ++x) p(alphas[x].to, alphas[x].from) = (*sol)(x, 0);
    for (std::size_t y = 0; y < betas.size(); ++y) q(betas[y].from, betas[y].to) = (*sol)(alphas.size() + y, 0);
  }
  return AdmissibleTransformation(std::move(p), std::move(q));
}

std::vector<std::size_t> partitionsFor(std::size_t n, std::size_t n1) {
  // s1 = 1: rows only; s1 = n-1: columns only; then three mixed partitions.
  std::vector<std::size_t> out{1, n - 1};
  for (std::size_t s : {n1 - 1, n1, n1 + 1}) {
    std::size_t c = std::clamp<std::size_t>(s, 2, n >= 4 ? n - 2 : 2);
    if (c >= n - 1) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

}  // namespace

std::optional<FactorSplit> findSplit(const PolynomialAls& a, const SplitOptions& options) {
  const std::size_t n = a.dim();
  if (n < 3) return std::nullopt;
  if (!isMinimal(a.system())) throw std::invalid_argument("split search needs a minimal system");

  std::vector<std::size_t> order(n - 2);
  std::iota(order.begin(), order.end(), 2);
  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  for (std::size_t n1 : order) {
    for (std::size_t s1 : partitionsFor(n, n1)) {
      auto t = attemptSplit(a.system(), n1, s1);
      if (!t) continue;
      Als transformed = applyTransformation(a.system(), *t);
      if (!hasZeroBlock(transformed, n1) || !t->isPolynomial())
        throw std::logic_error("split certificate failed after a successful solve");
      return FactorSplit{PolynomialAls(std::move(transformed)), n1, n + 1 - n1, std::move(*t)};
    }
  }
  return std::nullopt;
}

std::pair<PolynomialAls, PolynomialAls> extractFactors(const FactorSplit& split) {
  const Als& a = split.transformed.system();
  const std::size_t n = a.dim();
  if (split.n1 < 2 || split.n1 + 1 > n || split.n1 + split.n2 != n + 1 || !hasZeroBlock(a, split.n1))
    throw std::invalid_argument("split is not certified");
  Als left = a.principalBlock(0, split.n1);
  for (std::size_t i = 0; i < split.n1; ++i) left.rhs(i) = 0;
  left.rhs(split.n1 - 1) = 1;
  Als right = a.principalBlock(split.n1 - 1, n);
  PolynomialAls q1(std::move(left)), q2(std::move(right));
  if (representedPolynomial(q1.system()) * representedPolynomial(q2.system()) != representedPolynomial(a))
    throw std::logic_error("extracted factors do not multiply to the polynomial");
  return {std::move(q1), std::move(q2)};
}

std::vector<PolynomialAls> factorSystems(const PolynomialAls& a, const SplitOptions& options) {
  auto split = findSplit(a, options);
  if (!split) return {a};
  auto [q1, q2] = extractFactors(*split);
  auto out = factorSystems(q1, options);
  auto rest = factorSystems(q2, options);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<NcPolynomial> factorAtoms(const NcPolynomial& p, const SplitOptions& options) {
  if (p.isConstant()) throw std::invalid_argument("constants have no atom factorization");
  std::vector<NcPolynomial> out;
  for (const auto& f : factorSystems(buildAls(p), options)) out.push_back(representedPolynomial(f.system()));
  return out;
}

PolynomialAls productSystem(const std::vector<PolynomialAls>& factors) {
  if (factors.empty()) throw std::invalid_argument("product of no factors");
  Als acc = factors.front().system();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Als& next = factors[f].system();
    const std::size_t na = acc.dim();
    Als prod = alsMul(acc, next);
    if (na >= 2 && next.dim() >= 2) {
      auto sol = solveRightMinimization(prod, na + 1);
      if (!sol) throw std::logic_error("junction column of a product is not removable");
      prod = applyRightStep(prod, na + 1, *sol);
    }
    acc = std::move(prod);
  }
  return restorePolynomialForm(acc);
}

// ------------------------------------------------------ BlockFactorization

BlockFactorization::BlockFactorization(Alphabet alphabet, std::vector<EntryMatrix> factors)
    : alphabet_(std::move(alphabet)), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("block factorization needs at least one factor");
  if (factors_.front().rows() != 1) throw std::invalid_argument("first factor must have one row");
  if (factors_.back().cols() != 1) throw std::invalid_argument("last factor must have one column");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.rows() == 0 || f.cols() == 0) throw std::invalid_argument("empty factor");
    if (i + 1 < factors_.size() && f.cols() != factors_[i + 1].rows())
      throw std::invalid_argument("factor " + std::to_string(i + 1) + " has " + std::to_string(f.cols()) +
                                  " columns but factor " + std::to_string(i + 2) + " has " +
                                  std::to_string(factors_[i + 1].rows()) + " rows");
    for (const auto& e : f.data())
      if (e.letterCount() != alphabet_.size()) throw AlphabetMismatch();
  }
}

EntryMatrix entryMatrix(const Alphabet& alphabet, const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty() || cells.front().empty()) throw std::invalid_argument("empty matrix");
  EntryMatrix m(cells.size(), cells.front().size(), LinearEntry(alphabet.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string& c = cells[i][j];
      if (c != "." && !c.empty()) m(i, j) = LinearEntry::fromPolynomial(parsePolynomial(c, alphabet));
    }
  }
  return m;
}

NcPolynomial blockProduct(const BlockFactorization& bf) {
  const Alphabet& ab = bf.alphabet();
  std::vector<NcPolynomial> row{NcPolynomial::constant(ab, 1)};
  for (const auto& f : bf.factors()) {
    std::vector<NcPolynomial> next(f.cols(), NcPolynomial(ab));
    for (std::size_t i = 0; i < f.rows(); ++i) {
      if (row[i].isZero()) continue;
      for (std::size_t j = 0; j < f.cols(); ++j)
        if (!f(i, j).isZero()) next[j] += row[i] * f(i, j).toPolynomial(ab);
    }
    row = std::move(next);
  }
  return row.front();
}

bool verifyBlockFactorization(const BlockFactorization& bf, const NcPolynomial& p) {
  if (!(bf.alphabet() == p.alphabet())) throw AlphabetMismatch();
  return blockProduct(bf) == p;
}

PolynomialAls blockAls(const BlockFactorization& bf) {
  std::vector<std::size_t> offset{0};
  std::size_t n = 1;
  for (const auto& f : bf.factors()) {
    offset.push_back(n);
    n += f.cols();
  }
  Als a(bf.alphabet(), n);
  for (std::size_t t = 0; t < bf.factors().size(); ++t) {
    const auto& f = bf.factors()[t];
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) a.at(offset[t] + i, offset[t + 1] + j) = -f(i, j);
  }
  a.rhs(n - 1) = 1;
  return PolynomialAls(std::move(a));
}

bool checkKReducibilityPattern(const PolynomialAls& a, std::size_t i, std::size_t k) {
  const std::size_t n = a.dim();
  if (n < 3 || k < 1 || k + 2 > n || i < 1 || i + k + 1 > n)
    throw std::out_of_range("k-reducibility pattern needs n >= 3, 1 <= k <= n-2, 1 <= i <= n-k-1");
  for (std::size_t r = 0; r < i; ++r)
    for (std::size_t c = i + k; c < n; ++c)
      if (!a.at(r, c).isZero()) return false;
  for (std::size_t r = i; r < i + k; ++r) {
    for (std::size_t c = 0; c < i + k; ++c) {
      const LinearEntry& e = a.at(r, c);
      if (c == r) {
        if (!e.isScalar() || e[0] != 1) return false;
      } else if (!e.isZero()) {
        return false;
      }
    }
  }
  for (std::size_t r = i + k; r < n; ++r)
    for (std::size_t c = 0; c < i + k; ++c)
      if (!a.at(r, c).isZero()) return false;
  return true;
}

// -------------------------------------------------------------- text format

namespace {

constexpr const char* kBlockMagic = "ncals-blocks 1";

std::string nextContentLine(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
  }
  throw FormatError("unexpected end of block factorization");
}

std::vector<std::string> splitCells(const std::string& row) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    auto open = row.find('[', pos);
    if (open == std::string::npos) break;
    if (row.find_first_not_of(" \t", pos) != open) throw FormatError("stray text in row '" + row + "'");
    auto close = row.find(']', open);
    if (close == std::string::npos) throw FormatError("unterminated cell in row '" + row + "'");
    cells.push_back(row.substr(open, close - open + 1));
    pos = close + 1;
  }
  if (row.find_first_not_of(" \t", pos) != std::string::npos) throw FormatError("stray text in row '" + row + "'");
  return cells;
}

}  // namespace

void writeBlockFactorization(std::ostream& os, const BlockFactorization& bf) {
  os << kBlockMagic << '\n';
  os << "alphabet " << bf.alphabet().toString() << '\n';
  os << "factors " << bf.factors().size() << '\n';
  for (const auto& f : bf.factors()) {
    os << "matrix " << f.rows() << ' ' << f.cols() << '\n';
    for (std::size_t i = 0; i < f.rows(); ++i) {
      for (std::size_t j = 0; j < f.cols(); ++j) os << (j ? " " : "") << formatCell(f(i, j));
      os << '\n';
    }
  }
}

BlockFactorization readBlockFactorization(std::istream& is) {
  if (nextContentLine(is) != kBlockMagic) throw FormatError("not a block factorization file");
  std::istringstream head(nextContentLine(is));
  std::string key, letters;
  head >> key >> letters;
  if (key != "alphabet") throw FormatError("expected 'alphabet'");
  Alphabet ab;
  try {
    ab = Alphabet::parse(letters);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  std::istringstream cnt(nextContentLine(is));
  std::size_t count = 0;
  if (!(cnt >> key >> count) || key != "factors" || count == 0) throw FormatError("expected 'factors <count>'");
  std::vector<EntryMatrix> factors;
  for (std::size_t f = 0; f < count; ++f) {
    std::istringstream dims(nextContentLine(is));
    std::size_t r = 0, c = 0;
    if (!(dims >> key >> r >> c) || key != "matrix" || r == 0 || c == 0)
      throw FormatError("expected 'matrix <rows> <cols>'");
    EntryMatrix m(r, c, LinearEntry(ab.size()));
    for (std::size_t i = 0; i < r; ++i) {
      auto cells = splitCells(nextContentLine(is));
      if (cells.size() != c) throw FormatError("matrix row has " + std::to_string(cells.size()) + " cells, expected " +
                                               std::to_string(c));
      for (std::size_t j = 0; j < c; ++j) m(i, j) = parseCell(cells[j], ab.size());
    }
    factors.push_back(std::move(m));
  }
  try {
    return BlockFactorization(ab, std::move(factors));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace ncals
