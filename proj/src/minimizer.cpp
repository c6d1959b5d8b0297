#include "ncals/minimizer.hpp"

#include <map>
#include <stdexcept>

namespace ncals {

namespace {

void requireTriangular(const Als& a) {
  if (!a.isUpperUnitriangular()) throw std::invalid_argument("system matrix is not upper unitriangular");
}

/// Collects the rows of a linear system in `unknowns` variables, dropping
/// trivial rows. Reports inconsistency as soon as a row reads 0 = b, b != 0.
class EquationBuilder {
 public:
  explicit EquationBuilder(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Returns false when the row is inconsistent on its own.
  bool add(std::vector<Rational> coeffs, Rational rhs) {
    bool trivial = true;
    for (const auto& c : coeffs)
      if (sgn(c) != 0) {
        trivial = false;
        break;
      }
    if (trivial) return sgn(rhs) == 0;
    coeffs_.push_back(std::move(coeffs));
    rhs_.push_back(std::move(rhs));
    return true;
  }

  /// Solution with free unknowns at zero, or nullopt.
  std::optional<std::vector<Rational>> solve() const {
    std::vector<Rational> x(unknowns_, Rational(0));
    if (coeffs_.empty()) return x;
    RatMatrix a(coeffs_.size(), unknowns_, Rational(0));
    RatMatrix b(coeffs_.size(), 1, Rational(0));
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
      for (std::size_t c = 0; c < unknowns_; ++c) a(r, c) = coeffs_[r][c];
      b(r, 0) = rhs_[r];
    }
    auto sol = solveLinear(a, b);
    if (!sol) return std::nullopt;
    for (std::size_t c = 0; c < unknowns_; ++c) x[c] = (*sol)(c, 0);
    return x;
  }

 private:
  std::size_t unknowns_;
  std::vector<std::vector<Rational>> coeffs_;
  std::vector<Rational> rhs_;
};

}  // namespace

// ------------------------------------------------------ BlockDecomposition

BlockDecomposition BlockDecomposition::of(const Als& a, std::size_t k) {
  const std::size_t n = a.dim();
  if (k < 1 || k > n) throw std::out_of_range("pivot outside 1..n");
  requireTriangular(a);
  const std::size_t p = k - 1;
  const std::size_t d = a.letterCount();
  const LinearEntry zero(d);
  BlockDecomposition b;
  b.k = k;
  b.alphabet = a.alphabet();
  b.a11 = EntryMatrix(p, p, zero);
  b.a12 = EntryMatrix(p, 1, zero);
  b.a13 = EntryMatrix(p, n - k, zero);
  b.a23 = EntryMatrix(1, n - k, zero);
  b.a33 = EntryMatrix(n - k, n - k, zero);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) b.a11(i, j) = a.at(i, j);
    b.a12(i, 0) = a.at(i, p);
    for (std::size_t j = k; j < n; ++j) b.a13(i, j - k) = a.at(i, j);
    b.v1.push_back(a.rhs(i));
  }
  b.a22 = a.at(p, p);
  for (std::size_t j = k; j < n; ++j) b.a23(0, j - k) = a.at(p, j);
  b.v2 = a.rhs(p);
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = k; j < n; ++j) b.a33(i - k, j - k) = a.at(i, j);
    b.v3.push_back(a.rhs(i));
  }
  return b;
}

Als BlockDecomposition::reassemble() const {
  const std::size_t p = k - 1;
  const std::size_t n = p + 1 + v3.size();
  Als a(alphabet, n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) a.at(i, j) = a11(i, j);
    a.at(i, p) = a12(i, 0);
    for (std::size_t j = k; j < n; ++j) a.at(i, j) = a13(i, j - k);
    a.rhs(i) = v1[i];
  }
  a.at(p, p) = a22;
  for (std::size_t j = k; j < n; ++j) a.at(p, j) = a23(0, j - k);
  a.rhs(p) = v2;
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = k; j < n; ++j) a.at(i, j) = a33(i - k, j - k);
    a.rhs(i) = v3[i - k];
  }
  return a;
}

// --------------------------------------------------- minimization equations

std::optional<MinimizationSolution> solveLeftMinimization(const Als& a, std::size_t k) {
  const std::size_t n = a.dim();
  if (k < 1 || k + 1 > n) throw std::out_of_range("left minimization pivot outside 1..n-1");
  requireTriangular(a);
  const std::size_t p = k - 1;
  const std::size_t m = n - k;  // unknowns T_i for rows p+1..n-1
  const std::size_t d = a.letterCount();
  EquationBuilder eq(m);
  const std::size_t firstComponent = k == 1 ? 0 : 1;
  for (std::size_t l = firstComponent; l <= d; ++l) {
    for (std::size_t j = p + 1; j < n; ++j) {
      std::vector<Rational> row(m);
      for (std::size_t t = 0; t < m; ++t) row[t] = a.at(p + 1 + t, j)[l];
      if (!eq.add(std::move(row), -a.at(p, j)[l])) return std::nullopt;
    }
  }
  {
    std::vector<Rational> row(m);
    for (std::size_t t = 0; t < m; ++t) row[t] = a.rhs(p + 1 + t);
    if (!eq.add(std::move(row), -a.rhs(p))) return std::nullopt;
  }
  auto t = eq.solve();
  if (!t) return std::nullopt;
  MinimizationSolution sol{std::move(*t), std::vector<Rational>(m)};
  for (std::size_t j = p + 1; j < n; ++j) {
    Rational s = a.at(p, j)[0];
    for (std::size_t i = 0; i < m; ++i) s += sol.t[i] * a.at(p + 1 + i, j)[0];
    sol.u[j - p - 1] = -s;
  }
  return sol;
}

std::optional<MinimizationSolution> solveRightMinimization(const Als& a, std::size_t k) {
  const std::size_t n = a.dim();
  if (k < 2 || k > n) throw std::out_of_range("right minimization pivot outside 2..n");
  requireTriangular(a);
  const std::size_t c = k - 1;  // pivot column; unknowns U_1..U_{c-1} (U_0 = 0)
  const std::size_t d = a.letterCount();
  EquationBuilder eq(c - 1);
  for (std::size_t l = 1; l <= d; ++l) {
    for (std::size_t r = 0; r < c; ++r) {
      std::vector<Rational> row(c - 1);
      for (std::size_t i = 1; i < c; ++i) row[i - 1] = a.at(r, i)[l];
      if (!eq.add(std::move(row), -a.at(r, c)[l])) return std::nullopt;
    }
  }
  auto u = eq.solve();
  if (!u) return std::nullopt;
  MinimizationSolution sol{std::vector<Rational>(c), std::vector<Rational>(c)};
  for (std::size_t i = 1; i < c; ++i) sol.u[i] = (*u)[i - 1];
  for (std::size_t r = 0; r < c; ++r) {
    Rational s = a.at(r, c)[0];
    for (std::size_t i = 1; i < c; ++i) s += a.at(r, i)[0] * sol.u[i];
    sol.t[r] = -s;
  }
  return sol;
}

Als applyLeftStep(const Als& a, std::size_t k, const MinimizationSolution& sol) {
  const std::size_t n = a.dim();
  const std::size_t p = k - 1;
  if (k < 1 || k > n || sol.t.size() != n - k || sol.u.size() != n - k)
    throw std::invalid_argument("left step does not match the system");
  Als b = a;
  for (std::size_t i = 0; i < sol.t.size(); ++i) b.addRowMultiple(p, p + 1 + i, sol.t[i]);
  for (std::size_t j = 0; j < sol.u.size(); ++j) b.addColumnMultiple(p + 1 + j, p, sol.u[j]);
  for (std::size_t j = p + 1; j < n; ++j)
    if (!b.at(p, j).isZero()) throw std::logic_error("left minimization step left a nonzero row entry");
  if (sgn(b.rhs(p)) != 0) throw std::logic_error("left minimization step left a nonzero right-hand side");
  return b.withoutRowColumn(p);
}

Als applyRightStep(const Als& a, std::size_t k, const MinimizationSolution& sol) {
  const std::size_t n = a.dim();
  const std::size_t c = k - 1;
  if (k < 2 || k > n || sol.t.size() != c || sol.u.size() != c)
    throw std::invalid_argument("right step does not match the system");
  Als b = a;
  for (std::size_t i = 0; i < c; ++i) b.addColumnMultiple(c, i, sol.u[i]);
  for (std::size_t r = 0; r < c; ++r) b.addRowMultiple(r, c, sol.t[r]);
  for (std::size_t r = 0; r < c; ++r)
    if (!b.at(r, c).isZero()) throw std::logic_error("right minimization step left a nonzero column entry");
  return b.withoutRowColumn(c);
}

AdmissibleTransformation leftTransformation(std::size_t n, std::size_t k, const MinimizationSolution& sol) {
  if (k < 1 || k > n || sol.t.size() != n - k || sol.u.size() != n - k)
    throw std::invalid_argument("left step does not match the dimension");
  RatMatrix p = RatMatrix::identity(n), q = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n - k; ++i) {
    p(k - 1, k + i) = sol.t[i];
    q(k - 1, k + i) = sol.u[i];
  }
  return {p, q};
}

AdmissibleTransformation rightTransformation(std::size_t n, std::size_t k, const MinimizationSolution& sol) {
  if (k < 2 || k > n || sol.t.size() != k - 1 || sol.u.size() != k - 1)
    throw std::invalid_argument("right step does not match the dimension");
  RatMatrix p = RatMatrix::identity(n), q = RatMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    p(i, k - 1) = sol.t[i];
    q(i, k - 1) = sol.u[i];
  }
  return {p, q};
}

std::string toString(const MinimizationStep& step) {
  return std::string(step.side == MinimizationStep::Side::Left ? "L" : "R") + " k=" + std::to_string(step.k) +
         " dim=" + std::to_string(step.dim);
}

// ---------------------------------------------------------------- minimize

PolynomialAls minimize(const Als& a, std::vector<MinimizationStep>* trace) {
  requireTriangular(a);
  Als cur = a;
  auto record = [&](MinimizationStep::Side side, std::size_t k) {
    if (trace) trace->push_back({side, k, cur.dim()});
  };
  // v_n = 0 means s_n = 0; the last row/column then carries nothing.
  auto dropZeroTail = [&] {
    while (cur.dim() > 0 && sgn(cur.rhs(cur.dim() - 1)) == 0) {
      const std::size_t n = cur.dim();
      cur = cur.withoutRowColumn(n - 1);
      record(MinimizationStep::Side::Left, n);
    }
  };

  dropZeroTail();
  if (cur.dim() == 0) return PolynomialAls(Als::empty(a.alphabet()));
  cur = restorePolynomialForm(cur).system();

  std::size_t k = 2;
  while (k <= cur.dim()) {
    const std::size_t n = cur.dim();
    const std::size_t kp = n + 1 - k;
    const bool decrement = k > 2 && 2 * k > n + 1;
    if (auto sol = solveLeftMinimization(cur, kp)) {
      if (kp == 1) {
        cur = Als::empty(a.alphabet());
        record(MinimizationStep::Side::Left, 1);
        return PolynomialAls(cur);
      }
      cur = applyLeftStep(cur, kp, *sol);
      record(MinimizationStep::Side::Left, kp);
      if (decrement) --k;
      continue;
    }
    if (auto sol = solveRightMinimization(cur, k)) {
      cur = applyRightStep(cur, k, *sol);
      record(MinimizationStep::Side::Right, k);
      dropZeroTail();
      if (cur.dim() == 0) return PolynomialAls(cur);
      if (decrement) --k;
      continue;
    }
    ++k;
  }
  dropZeroTail();
  if (cur.dim() == 0) return PolynomialAls(Als::empty(a.alphabet()));
  return restorePolynomialForm(cur);
}

PolynomialAls buildAls(const NcPolynomial& p) {
  Als acc = Als::empty(p.alphabet());
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Als sum = alsAdd(acc, minimalMonomial(p.alphabet(), it->first, it->second).system());
    acc = minimize(sum).system();
  }
  return PolynomialAls(std::move(acc));
}

std::size_t rankOf(const NcPolynomial& p) { return buildAls(p).dim(); }

std::size_t familyRank(const std::vector<NcPolynomial>& family) {
  std::map<Word, std::size_t, DegLexLess> column;
  for (const auto& f : family)
    for (const auto& [w, c] : f.terms()) column.try_emplace(w, 0);
  std::size_t next = 0;
  for (auto& [w, idx] : column) idx = next++;
  RatMatrix m(family.size(), column.size(), Rational(0));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (const auto& [w, c] : family[i].terms()) m(i, column.at(w)) = c;
  return rank(std::move(m));
}

bool isMinimal(const Als& a) {
  requireTriangular(a);
  const std::size_t n = a.dim();
  if (n == 0) return true;
  return familyRank(leftFamily(a)) == n && familyRank(rightFamily(a)) == n;
}

}  // namespace ncals
