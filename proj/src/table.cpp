#include "ncals/table.hpp"

#include <algorithm>

#include "ncals/evaluator.hpp"

namespace ncals {

NcPolynomial pFamily(unsigned k) {
  Alphabet ab = Alphabet::parse("x,y,z");
  return power(parsePolynomial("x + y + z", ab), k);
}

NcPolynomial qFamily(unsigned k) {
  std::vector<std::string> letters;
  for (unsigned i = 1; i <= std::max(k, 1u); ++i)
    for (const char* c : {"x", "y", "z"}) letters.push_back(c + std::to_string(i));
  Alphabet ab(letters);
  std::vector<NcPolynomial> q{NcPolynomial::constant(ab, 1)};
  for (unsigned j = 1; j <= k; ++j) {
    NcPolynomial next(ab);
    for (unsigned i = 1; i <= j; ++i) {
      NcPolynomial linear(ab);
      for (std::uint32_t c = 0; c < 3; ++c) linear.addTerm(Word{3 * (i - 1) + c}, 1);
      next += linear * q[j - i];
    }
    q.push_back(std::move(next));
  }
  return q[k];
}

TableRow tableRow(unsigned k, const NcPolynomial& p) {
  PolynomialAls a = buildAls(p);
  TableRow row;
  row.k = k;
  row.rank = a.dim();
  row.terms = p.termCount();
  row.naiveMults = naiveMultCount(p);
  row.n = countN(a);
  row.minimal = isMinimal(a.system());
  return row;
}

std::vector<TableRow> pFamilyTable(unsigned kMax) {
  std::vector<TableRow> rows;
  for (unsigned k = 0; k <= kMax; ++k) rows.push_back(tableRow(k, pFamily(k)));
  return rows;
}

std::vector<TableRow> qFamilyTable(unsigned kMax) {
  std::vector<TableRow> rows;
  for (unsigned k = 0; k <= kMax; ++k) rows.push_back(tableRow(k, qFamily(k)));
  return rows;
}

}  // namespace ncals
