#include "ncals/linalg.hpp"

#include <stdexcept>

namespace ncals {

std::vector<std::size_t> reduceRowEchelon(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational factor;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swapRows(row, piv);
    if (m(row, col) != 1) {
      Rational inv = 1 / m(row, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::optional<RatMatrix> solveLinear(const RatMatrix& a, const RatMatrix& b) {
  if (b.cols() != 1 || b.rows() != a.rows())
    throw std::invalid_argument("solveLinear: right-hand side must be a column with matching rows");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1, Rational(0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b(r, 0);
  }
  auto pivots = reduceRowEchelon(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RatMatrix x(n, 1, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r], 0) = aug(r, n);
  return x;
}

std::size_t rank(RatMatrix a) { return reduceRowEchelon(a).size(); }

bool isInvertible(const RatMatrix& a) {
  if (!a.isSquare()) throw std::invalid_argument("isInvertible: matrix is not square");
  return rank(a) == a.rows();
}

}  // namespace ncals
