// ncals: build, minimize, factor and evaluate non-commutative polynomials
// through admissible linear systems.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ncals/evaluator.hpp"
#include "ncals/table.hpp"

using namespace ncals;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;

enum class Format { Text, Csv, Json };

struct Session {
  std::string alphabet;
  std::uint64_t seed = 1;
  Format format = Format::Text;
};

/// Raised when a computed result fails its own check.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// "@path" reads the polynomial from a file.
std::string polynomialText(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? readFile(arg.substr(1)) : arg; }

NcPolynomial loadPolynomial(const Session& s, const std::string& arg) {
  std::string text = polynomialText(arg);
  Alphabet ab = s.alphabet.empty() ? inferAlphabet(text) : Alphabet::parse(s.alphabet);
  return parsePolynomial(text, ab);
}

Als loadAls(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return readAls(in);
}

void writeText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

std::string summaryLine(const PolynomialAls& a) {
  std::ostringstream os;
  os << "dim=" << a.dim() << " Ns=" << countNs(a) << " Nt=" << countNt(a) << " N=" << countN(a);
  if (a.dim() >= 2) {
    auto [lo, hi] = complexityBounds(a.dim());
    os << " bounds=[" << lo << "," << hi << "]";
  } else {
    os << " bounds=[0,0]";
  }
  return os.str();
}

json summaryJson(const PolynomialAls& a) {
  json j{{"dim", a.dim()}, {"Ns", countNs(a)}, {"Nt", countNt(a)}, {"N", countN(a)}};
  auto b = a.dim() >= 2 ? complexityBounds(a.dim()) : std::pair<std::size_t, std::size_t>{0, 0};
  j["bounds"] = {b.first, b.second};
  return j;
}

// ------------------------------------------------------------------ rank

int cmdRank(const Session& s, const std::string& poly) {
  std::size_t r = rankOf(loadPolynomial(s, poly));
  if (s.format == Format::Json) {
    std::cout << json{{"rank", r}}.dump() << '\n';
  } else {
    std::cout << r << '\n';
  }
  return 0;
}

// --------------------------------------------------------------- compile

int cmdCompile(const Session& s, const std::string& poly, const std::string& out, bool render) {
  NcPolynomial p = loadPolynomial(s, poly);
  PolynomialAls a = buildAls(p);
  if (!out.empty()) writeText(out, alsToString(a.system()));
  if (s.format == Format::Json) {
    json j = summaryJson(a);
    if (out.empty()) j["als"] = alsToString(a.system());
    std::cout << j.dump() << '\n';
    return 0;
  }
  if (render) std::cout << renderAls(a.system());
  if (out.empty() && !render) std::cout << alsToString(a.system());
  std::cout << summaryLine(a) << '\n';
  return 0;
}

// -------------------------------------------------------------- minimize

int cmdMinimize(const Session& s, const std::string& path, const std::string& out, bool trace) {
  Als a = loadAls(path);
  std::vector<MinimizationStep> steps;
  PolynomialAls m = minimize(a, &steps);
  if (!out.empty()) writeText(out, alsToString(m.system()));
  if (s.format == Format::Json) {
    json j = summaryJson(m);
    json st = json::array();
    for (const auto& step : steps) st.push_back(toString(step));
    j["steps"] = st;
    if (out.empty()) j["als"] = alsToString(m.system());
    std::cout << j.dump() << '\n';
    return 0;
  }
  if (trace)
    for (const auto& step : steps) std::cout << toString(step) << '\n';
  if (out.empty()) std::cout << alsToString(m.system());
  std::cout << summaryLine(m) << '\n';
  return 0;
}

// ------------------------------------------------------------------ eval

template <typename T>
bool closeEnough(const Matrix<T>& a, const Matrix<T>& b) {
  if constexpr (std::is_same_v<T, double>) {
    double scale = 1.0, diff = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
      scale = std::max(scale, std::abs(b.data()[i]));
      diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
    }
    return diff <= 1e-9 * scale;
  } else {
    return a == b;
  }
}

template <typename T>
int evalWith(const Session& s, const PolynomialAls& a, const MatrixTuple<T>& x, const std::string& side) {
  NcPolynomial p = representedPolynomial(a.system());
  Matrix<T> oracle = naiveEvaluate(p, x);
  std::vector<EvalReport<T>> reports;
  if (side == "left" || side == "both") reports.push_back(evaluateLeft(a, x));
  if (side == "right" || side == "both") reports.push_back(evaluateRight(a, x));
  bool ok = true;
  for (const auto& r : reports) ok = ok && closeEnough(r.result, oracle);
  if (s.format == Format::Json) {
    json j{{"oracle", ok ? "match" : "mismatch"}, {"naive_mults", naiveMultCount(p)}};
    for (const auto& r : reports) {
      std::string key = r.side == Side::Left ? "left" : "right";
      j[key] = {{"mults", r.multCount}, {"result", formatMatrix(r.result)}};
    }
    std::cout << j.dump() << '\n';
  } else {
    for (const auto& r : reports) {
      std::cout << (r.side == Side::Left ? "left" : "right") << " mults=" << r.multCount << '\n';
      std::cout << formatMatrix(r.result);
    }
    std::cout << "naive mults=" << naiveMultCount(p) << '\n';
    std::cout << "oracle=" << (ok ? "match" : "mismatch") << '\n';
  }
  return ok ? 0 : kExitVerify;
}

int cmdEval(const Session& s, const std::string& alsPath, const std::string& matrixPath, const std::string& side,
            std::size_t m, const std::string& mode) {
  Als raw = loadAls(alsPath);
  PolynomialAls a(raw);
  if (!matrixPath.empty()) {
    std::ifstream in(matrixPath);
    if (!in) throw FormatError("cannot open '" + matrixPath + "'");
    AnyTuple x = readMatrixTuple(in);
    return std::visit([&](const auto& t) { return evalWith(s, a, t, side); }, x);
  }
  std::mt19937_64 rng(s.seed);
  if (mode == "f64") return evalWith(s, a, randomDoubleTuple(m, a.alphabet().size(), rng), side);
  return evalWith(s, a, randomRationalTuple(m, a.alphabet().size(), rng), side);
}

// ---------------------------------------------------------------- factor

int cmdFactor(const Session& s, const std::string& poly) {
  NcPolynomial p = loadPolynomial(s, poly);
  if (p.isConstant()) throw std::invalid_argument("constants have no factorization into atoms");
  SplitOptions opts;
  std::vector<PolynomialAls> atoms = factorSystems(buildAls(p), opts);
  PolynomialAls product = productSystem(atoms);
  if (representedPolynomial(product.system()) != p) throw VerificationFailure("product of atoms differs from input");
  std::vector<std::string> texts;
  for (const auto& a : atoms) texts.push_back(toString(representedPolynomial(a.system())));
  const bool none = atoms.size() == 1;
  if (s.format == Format::Json) {
    json j{{"atoms", texts}, {"naive_mults", naiveMultCount(p)}, {"factored", summaryJson(product)}};
    if (none) j["note"] = "no split found (not a proof of irreducibility)";
    std::cout << j.dump() << '\n';
    return 0;
  }
  if (none) std::cout << "no split found (not a proof of irreducibility)\n";
  std::cout << "atoms=" << atoms.size() << '\n';
  for (const auto& t : texts) std::cout << "  (" << t << ")\n";
  std::cout << renderAls(product.system());
  std::cout << "naive mults=" << naiveMultCount(p) << '\n';
  std::cout << summaryLine(product) << '\n';
  return 0;
}

// ---------------------------------------------------------- verify-block

int cmdVerifyBlock(const Session& s, const std::string& path, const std::string& poly, std::size_t m) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  BlockFactorization bf = readBlockFactorization(in);
  std::string text = polynomialText(poly);
  Alphabet ab = s.alphabet.empty() ? bf.alphabet() : Alphabet::parse(s.alphabet);
  NcPolynomial p = parsePolynomial(text, ab);
  bool ok = verifyBlockFactorization(bf, p);
  std::mt19937_64 rng(s.seed);
  auto x = randomRationalTuple(m, ab.size(), rng);
  auto rep = evaluateBlockFactorization(bf, x);
  bool evalOk = rep.result == naiveEvaluate(p, x);
  if (s.format == Format::Json) {
    std::cout << json{{"verified", ok}, {"mults", rep.multCount}, {"naive_mults", naiveMultCount(p)},
                      {"oracle", evalOk ? "match" : "mismatch"}}
                     .dump()
              << '\n';
  } else {
    std::cout << (ok ? "verified" : "mismatch") << '\n';
    if (ok) std::cout << renderAls(blockAls(bf).system());
    std::cout << "mults=" << rep.multCount << " naive mults=" << naiveMultCount(p) << '\n';
    std::cout << "oracle=" << (evalOk ? "match" : "mismatch") << '\n';
  }
  return ok && evalOk ? 0 : kExitVerify;
}

// ----------------------------------------------------------------- table

int cmdTable(const Session& s, unsigned kMaxP, unsigned kMaxQ) {
  auto p = pFamilyTable(kMaxP);
  auto q = qFamilyTable(kMaxQ);
  bool allMinimal = true;
  for (const auto& r : p) allMinimal = allMinimal && r.minimal;
  for (const auto& r : q) allMinimal = allMinimal && r.minimal;
  if (s.format == Format::Json) {
    auto rows = [](const std::vector<TableRow>& t) {
      json a = json::array();
      for (const auto& r : t)
        a.push_back({{"k", r.k}, {"rank", r.rank}, {"terms", r.terms}, {"naive_mults", r.naiveMults}, {"N", r.n}});
      return a;
    };
    std::cout << json{{"p", rows(p)}, {"q", rows(q)}}.dump() << '\n';
  } else if (s.format == Format::Csv) {
    std::cout << "family,k,rank,terms,naive_mults,N\n";
    for (const auto& r : p) std::cout << "p," << r.k << ',' << r.rank << ',' << r.terms << ',' << r.naiveMults << ',' << r.n << '\n';
    for (const auto& r : q) std::cout << "q," << r.k << ',' << r.rank << ',' << r.terms << ',' << r.naiveMults << ',' << r.n << '\n';
  } else {
    auto print = [](const char* name, const std::vector<TableRow>& t) {
      std::cout << name << '\n';
      std::cout << std::setw(3) << "k" << std::setw(6) << "rank" << std::setw(8) << "terms" << std::setw(9) << "mults"
                << std::setw(5) << "N" << '\n';
      for (const auto& r : t)
        std::cout << std::setw(3) << r.k << std::setw(6) << r.rank << std::setw(8) << r.terms << std::setw(9)
                  << r.naiveMults << std::setw(5) << r.n << '\n';
    };
    print("p_k = (x+y+z)^k", p);
    print("q_k = (x1+y1+z1) q_{k-1} + ... + (xk+yk+zk) q_0", q);
  }
  return allMinimal ? 0 : kExitVerify;
}

// -------------------------------------------------------------- selftest

int cmdSelftest(const Session& s) {
  struct Check {
    std::string name;
    bool ok;
  };
  std::vector<Check> checks;
  auto rankIs = [](const char* text, std::size_t want) {
    return rankOf(parsePolynomial(text, inferAlphabet(text))) == want;
  };
  checks.push_back({"rank x - x*y*x = 4", rankIs("x - x*y*x", 4)});
  checks.push_back({"rank x + 1 - y*x = 3", rankIs("x + 1 - y*x", 3)});
  checks.push_back({"rank (x*y+1)*(z*x-3) = 5", rankIs("(x*y+1)*(z*x-3)", 5)});
  {
    const char* text = "x*y + y*x";
    PolynomialAls a = buildAls(parsePolynomial(text, inferAlphabet(text)));
    checks.push_back({"anticommutator N = 2", countN(a) == 2 && isMinimal(a.system())});
  }
  {
    const char* text = "2*a*e*x*c + 2*b*x*c - a*e*x*d - b*x*d";
    NcPolynomial p = parsePolynomial(text, inferAlphabet(text));
    checks.push_back({"factor count 3", factorAtoms(p).size() == 3});
  }
  {
    std::mt19937_64 rng(s.seed);
    const char* text = "x - x*y*x";
    NcPolynomial p = parsePolynomial(text, inferAlphabet(text));
    PolynomialAls a = buildAls(p);
    auto x = randomRationalTuple(3, 2, rng);
    auto l = evaluateLeft(a, x);
    auto r = evaluateRight(a, x);
    Matrix<Rational> o = naiveEvaluate(p, x);
    checks.push_back({"evaluation matches oracle", l.result == o && r.result == o && l.multCount == 2});
  }
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.ok;
    std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << '\n';
  }
  return all ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Admissible linear systems for non-commutative polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  Session session;
  std::string format = "text";
  app.add_option("--alphabet", session.alphabet, "Letters, e.g. \"x,y,z\" (default: inferred from the input)");
  app.add_option("--seed", session.seed, "Seed for random matrices and split order")->default_val(1);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}))->default_val("text");

  std::string poly, out, alsPath, matrixPath, side = "both", mode = "rat", blockPath;
  bool trace = false, render = false;
  std::size_t m = 3;
  unsigned kMaxP = 6, kMaxQ = 5;

  auto* rank = app.add_subcommand("rank", "Rank of a polynomial (dimension of a minimal system)");
  rank->add_option("polynomial", poly, "Polynomial text or @file")->required();

  auto* compile = app.add_subcommand("compile", "Build a minimal polynomial system");
  compile->add_option("polynomial", poly, "Polynomial text or @file")->required();
  compile->add_option("-o,--output", out, "Write the system to this file");
  compile->add_flag("--render", render, "Print the system in readable form");

  auto* minimizeCmd = app.add_subcommand("minimize", "Minimize a system read from a file");
  minimizeCmd->add_option("als", alsPath, "System file")->required();
  minimizeCmd->add_option("-o,--output", out, "Write the minimized system to this file");
  minimizeCmd->add_flag("--trace", trace, "Print one line per removed row/column");

  auto* eval = app.add_subcommand("eval", "Evaluate a system on matrices and compare with the word-by-word oracle");
  eval->add_option("als", alsPath, "System file")->required();
  eval->add_option("matrices", matrixPath, "Matrix file (random matrices when omitted)");
  eval->add_option("--side", side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}));
  eval->add_option("--m", m, "Size of random matrices")->check(CLI::Range(1, 512));
  eval->add_option("--mode", mode, "rat or f64 for random matrices")->check(CLI::IsMember({"rat", "f64"}));

  auto* factor = app.add_subcommand("factor", "Factor a polynomial into atoms");
  factor->add_option("polynomial", poly, "Polynomial text or @file")->required();

  auto* verify = app.add_subcommand("verify-block", "Check a block factorization against a polynomial");
  verify->add_option("blocks", blockPath, "Block factorization file")->required();
  verify->add_option("polynomial", poly, "Polynomial text or @file")->required();
  verify->add_option("--m", m, "Size of random matrices")->check(CLI::Range(1, 512));

  auto* table = app.add_subcommand("table", "Counts for the families (x+y+z)^k and q_k");
  table->add_option("--kmax-p", kMaxP, "Largest k for p_k")->check(CLI::Range(0, 9));
  table->add_option("--kmax-q", kMaxQ, "Largest k for q_k")->check(CLI::Range(0, 7));

  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  session.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  try {
    if (*rank) return cmdRank(session, poly);
    if (*compile) return cmdCompile(session, poly, out, render);
    if (*minimizeCmd) return cmdMinimize(session, alsPath, out, trace);
    if (*eval) return cmdEval(session, alsPath, matrixPath, side, m, mode);
    if (*factor) return cmdFactor(session, poly);
    if (*verify) return cmdVerifyBlock(session, blockPath, poly, m);
    if (*table) return cmdTable(session, kMaxP, kMaxQ);
    if (*selftest) return cmdSelftest(session);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitParse;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
