#pragma once

#include <string>
#include <vector>

#include "ncals/minimizer.hpp"

namespace ncals {

/// p_k = (x + y + z)^k over {x, y, z}.
NcPolynomial pFamily(unsigned k);
/// q_0 = 1, q_k = (x1+y1+z1) q_{k-1} + ... + (xk+yk+zk) q_0 over
/// x1,y1,z1,...,xk,yk,zk (x1,y1,z1 for k = 0).
NcPolynomial qFamily(unsigned k);

struct TableRow {
  unsigned k = 0;
  std::size_t rank = 0;
  std::size_t terms = 0;
  std::size_t naiveMults = 0;
  std::size_t n = 0;  // N of the minimal system
  bool minimal = false;
};

/// Builds the minimal system of the polynomial and reads off the counts.
TableRow tableRow(unsigned k, const NcPolynomial& p);

std::vector<TableRow> pFamilyTable(unsigned kMax);
std::vector<TableRow> qFamilyTable(unsigned kMax);

}  // namespace ncals
