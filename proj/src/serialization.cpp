#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ncals/realization.hpp"

namespace ncals {

namespace {

constexpr const char* kMagic = "ncals-als 1";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string nextLine(std::istream& is, const char* what) {
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (!t.empty() && t[0] != '#') return t;
  }
  throw FormatError(std::string("unexpected end of input, expected ") + what);
}

/// "key value" header line.
std::string headerValue(std::istream& is, const std::string& key) {
  std::string line = nextLine(is, key.c_str());
  if (line.rfind(key, 0) != 0 || (line.size() > key.size() && line[key.size()] != ' '))
    throw FormatError("expected '" + key + "', got '" + line + "'");
  return trim(std::string_view(line).substr(key.size()));
}

std::size_t parseCount(const std::string& text, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw FormatError("malformed " + what + " '" + text + "'");
  return std::stoul(text);
}

std::size_t lambdaPosition(const Als& a) {
  for (std::size_t i = a.dim(); i-- > 0;)
    if (sgn(a.rhs(i)) != 0) return i + 1;
  return 0;
}

}  // namespace

std::string formatCell(const LinearEntry& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += formatFraction(e[i]);
  }
  out += ']';
  return out;
}

LinearEntry parseCell(std::string_view text, std::size_t letters) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw FormatError("malformed cell '" + t + "'");
  std::istringstream in(t.substr(1, t.size() - 2));
  LinearEntry e(letters);
  std::string tok;
  std::size_t i = 0;
  while (in >> tok) {
    if (i > letters) throw FormatError("cell '" + t + "' has too many coefficients");
    try {
      e[i++] = parseRational(tok);
    } catch (const std::invalid_argument& ex) {
      throw FormatError(ex.what());
    }
  }
  if (i != letters + 1) throw FormatError("cell '" + t + "' has too few coefficients");
  return e;
}

void writeAls(std::ostream& os, const Als& a) {
  os << kMagic << '\n';
  os << "dimension " << a.dim() << '\n';
  os << "alphabet " << a.alphabet().toString() << '\n';
  os << "lambda-position " << lambdaPosition(a) << '\n';
  os << "A\n";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) os << (j ? " " : "") << formatCell(a.at(i, j));
    os << '\n';
  }
  os << 'v';
  for (std::size_t i = 0; i < a.dim(); ++i) os << ' ' << formatFraction(a.rhs(i));
  os << '\n';
}

Als readAls(std::istream& is) {
  if (nextLine(is, "header") != kMagic) throw FormatError("not an ALS file (missing '" + std::string(kMagic) + "')");
  const std::size_t n = parseCount(headerValue(is, "dimension"), "dimension");
  Alphabet alphabet;
  try {
    alphabet = Alphabet::parse(headerValue(is, "alphabet"));
  } catch (const std::invalid_argument& ex) {
    throw FormatError(ex.what());
  }
  const std::size_t lambdaPos = parseCount(headerValue(is, "lambda-position"), "lambda-position");
  if (nextLine(is, "'A'") != "A") throw FormatError("expected 'A' section");

  Als a(alphabet, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string row = nextLine(is, "matrix row");
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      auto open = row.find('[', pos);
      auto close = open == std::string::npos ? open : row.find(']', open);
      if (close == std::string::npos) throw FormatError("row " + std::to_string(i + 1) + " has too few cells");
      if (!trim(std::string_view(row).substr(pos, open - pos)).empty())
        throw FormatError("stray text in row " + std::to_string(i + 1));
      a.at(i, j) = parseCell(std::string_view(row).substr(open, close - open + 1), alphabet.size());
      pos = close + 1;
    }
    if (!trim(std::string_view(row).substr(pos)).empty())
      throw FormatError("row " + std::to_string(i + 1) + " has too many cells");
  }

  std::string vline = nextLine(is, "'v' line");
  std::istringstream vin(vline);
  std::string tok;
  vin >> tok;
  if (tok != "v") throw FormatError("expected 'v' line");
  std::size_t i = 0;
  while (vin >> tok) {
    if (i >= n) throw FormatError("v has too many entries");
    try {
      a.rhs(i++) = parseRational(tok);
    } catch (const std::invalid_argument& ex) {
      throw FormatError(ex.what());
    }
  }
  if (i != n) throw FormatError("v has too few entries");
  if (lambdaPosition(a) != lambdaPos) throw FormatError("lambda-position does not match v");
  return a;
}

std::string alsToString(const Als& a) {
  std::ostringstream os;
  writeAls(os, a);
  return os.str();
}

Als alsFromString(const std::string& text) {
  std::istringstream is(text);
  return readAls(is);
}

std::string renderAls(const Als& a) {
  const std::size_t n = a.dim();
  if (n == 0) return "(empty system)\n";
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n + 1));
  std::vector<std::size_t> width(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LinearEntry& e = a.at(i, j);
      cells[i][j] = e.isZero() ? "." : toString(e.toPolynomial(a.alphabet()));
      width[j] = std::max(width[j], cells[i][j].size());
    }
    cells[i][n] = sgn(a.rhs(i)) == 0 ? "." : formatRational(a.rhs(i));
    width[n] = std::max(width[n], cells[i][n].size());
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < n; ++i) {
    os << "[ ";
    for (std::size_t j = 0; j < n; ++j) {
      os << cells[i][j] << std::string(width[j] - cells[i][j].size(), ' ') << (j + 1 < n ? "  " : "");
    }
    os << " ] s = [ " << cells[i][n] << std::string(width[n] - cells[i][n].size(), ' ') << " ]\n";
  }
  return os.str();
}

}  // namespace ncals
