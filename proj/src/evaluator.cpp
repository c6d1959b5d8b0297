#include "ncals/evaluator.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace ncals {

namespace {

template <typename T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    return q;
  }
}

/// Zero, a scalar multiple of I, or a full matrix.
template <typename T>
struct Tracked {
  enum class Kind { Zero, Scalar, Full };
  Kind kind = Kind::Zero;
  T scalar = T(0);
  Matrix<T> full;

  static Tracked ofScalar(const T& c) {
    Tracked t;
    if (c != T(0)) {
      t.kind = Kind::Scalar;
      t.scalar = c;
    }
    return t;
  }

  void add(const Tracked& o, std::size_t m) {
    if (o.kind == Kind::Zero) return;
    if (kind == Kind::Zero) {
      *this = o;
      return;
    }
    if (kind == Kind::Scalar && o.kind == Kind::Scalar) {
      scalar += o.scalar;
      if (scalar == T(0)) kind = Kind::Zero;
      return;
    }
    if (kind == Kind::Scalar) {
      Matrix<T> f = o.full;
      for (std::size_t i = 0; i < m; ++i) f(i, i) += scalar;
      full = std::move(f);
      kind = Kind::Full;
      return;
    }
    if (o.kind == Kind::Scalar) {
      for (std::size_t i = 0; i < m; ++i) full(i, i) += o.scalar;
    } else {
      full += o.full;
    }
  }

  void negate() {
    if (kind == Kind::Scalar) scalar = -scalar;
    if (kind == Kind::Full) full *= T(-1);
  }

  [[nodiscard]] Matrix<T> materialize(std::size_t m) const {
    if (kind == Kind::Full) return full;
    Matrix<T> r(m, m, T(0));
    if (kind == Kind::Scalar)
      for (std::size_t i = 0; i < m; ++i) r(i, i) = scalar;
    return r;
  }
};

/// entry(X) * value when entryOnLeft, value * entry(X) otherwise.
template <typename T>
Tracked<T> multiply(const LinearEntry& e, const Tracked<T>& value, const MatrixTuple<T>& x, bool entryOnLeft,
                    std::size_t& count) {
  using Kind = typename Tracked<T>::Kind;
  Tracked<T> out;
  if (e.isZero() || value.kind == Kind::Zero) return out;
  if (e.isScalar()) {
    out = value;
    const T c = convert<T>(e[0]);
    if (out.kind == Kind::Scalar) {
      out.scalar *= c;
    } else {
      out.full *= c;
    }
    return out;
  }
  Matrix<T> ex = evaluateEntry(e, x);
  out.kind = Kind::Full;
  if (value.kind == Kind::Scalar) {
    out.full = std::move(ex);
    out.full *= value.scalar;
    return out;
  }
  ++count;
  out.full = entryOnLeft ? ex * value.full : value.full * ex;
  return out;
}

template <typename T>
void checkTuple(const Alphabet& alphabet, const MatrixTuple<T>& x) {
  if (x.count() != alphabet.size())
    throw std::invalid_argument("matrix tuple has " + std::to_string(x.count()) + " matrices for " +
                                std::to_string(alphabet.size()) + " letters");
}

}  // namespace

template <typename T>
Matrix<T> evaluateEntry(const LinearEntry& e, const MatrixTuple<T>& x) {
  const std::size_t m = x.size();
  if (e.letterCount() != x.count()) throw std::invalid_argument("entry and matrix tuple use different alphabets");
  Matrix<T> r(m, m, T(0));
  const T c0 = convert<T>(e[0]);
  if (c0 != T(0))
    for (std::size_t i = 0; i < m; ++i) r(i, i) = c0;
  for (std::size_t l = 0; l < e.letterCount(); ++l)
    if (sgn(e[l + 1]) != 0) r.addScaled(x[l], convert<T>(e[l + 1]));
  return r;
}

template <typename T>
EvalReport<T> evaluateLeft(const PolynomialAls& a, const MatrixTuple<T>& x) {
  checkTuple(a.alphabet(), x);
  const std::size_t m = x.size();
  const std::size_t n = a.dim();
  EvalReport<T> rep{Matrix<T>(m, m, T(0)), 0, Side::Left};
  if (n == 0) return rep;
  std::vector<Tracked<T>> s(n);
  s[n - 1] = Tracked<T>::ofScalar(convert<T>(a.lambda()));
  for (std::size_t i = n - 1; i-- > 0;) {
    Tracked<T> acc;
    for (std::size_t j = i + 1; j < n; ++j) acc.add(multiply(a.at(i, j), s[j], x, true, rep.multCount), m);
    acc.negate();
    s[i] = std::move(acc);
  }
  rep.result = s[0].materialize(m);
  return rep;
}

template <typename T>
EvalReport<T> evaluateRight(const PolynomialAls& a, const MatrixTuple<T>& x) {
  checkTuple(a.alphabet(), x);
  const std::size_t m = x.size();
  const std::size_t n = a.dim();
  EvalReport<T> rep{Matrix<T>(m, m, T(0)), 0, Side::Right};
  if (n == 0) return rep;
  std::vector<Tracked<T>> t(n);
  t[0] = Tracked<T>::ofScalar(T(1));
  for (std::size_t j = 1; j < n; ++j) {
    Tracked<T> acc;
    for (std::size_t i = 0; i < j; ++i) acc.add(multiply(a.at(i, j), t[i], x, false, rep.multCount), m);
    acc.negate();
    t[j] = std::move(acc);
  }
  Matrix<T> r = t[n - 1].materialize(m);
  r *= convert<T>(a.lambda());
  rep.result = std::move(r);
  return rep;
}

template <typename T>
EvalReport<T> evaluateBlockFactorization(const BlockFactorization& bf, const MatrixTuple<T>& x) {
  checkTuple(bf.alphabet(), x);
  const std::size_t m = x.size();
  EvalReport<T> rep{Matrix<T>(m, m, T(0)), 0, Side::Right};
  std::vector<Tracked<T>> row(1, Tracked<T>::ofScalar(T(1)));
  for (const auto& f : bf.factors()) {
    std::vector<Tracked<T>> next(f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) next[j].add(multiply(f(i, j), row[i], x, false, rep.multCount), m);
    row = std::move(next);
  }
  rep.result = row.front().materialize(m);
  return rep;
}

template Matrix<Rational> evaluateEntry(const LinearEntry&, const MatrixTuple<Rational>&);
template Matrix<double> evaluateEntry(const LinearEntry&, const MatrixTuple<double>&);
template EvalReport<Rational> evaluateLeft(const PolynomialAls&, const MatrixTuple<Rational>&);
template EvalReport<double> evaluateLeft(const PolynomialAls&, const MatrixTuple<double>&);
template EvalReport<Rational> evaluateRight(const PolynomialAls&, const MatrixTuple<Rational>&);
template EvalReport<double> evaluateRight(const PolynomialAls&, const MatrixTuple<double>&);
template EvalReport<Rational> evaluateBlockFactorization(const BlockFactorization&, const MatrixTuple<Rational>&);
template EvalReport<double> evaluateBlockFactorization(const BlockFactorization&, const MatrixTuple<double>&);

// ------------------------------------------------------------------ counts

std::size_t countNs(const PolynomialAls& a) {
  const std::size_t n = a.dim();
  if (n < 2) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      if (!a.at(i, j).isScalar()) ++count;
  return count;
}

std::size_t countNt(const PolynomialAls& a) {
  const std::size_t n = a.dim();
  if (n < 2) return 0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!a.at(i, j).isScalar()) ++count;
  return count;
}

std::size_t countN(const PolynomialAls& a) { return std::min(countNs(a), countNt(a)); }

std::pair<std::size_t, std::size_t> complexityBounds(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complexity bounds need rank n >= 2");
  return {n - 2, (n - 1) * (n - 2) / 2};
}

// ----------------------------------------------------------- matrix files

namespace {

/// "num/den", integer, or decimal "-1.25e3" as an exact rational.
Rational parseExact(const std::string& tok) {
  if (tok.find_first_of(".eE") == std::string::npos) return parseRational(tok);
  std::size_t pos = 0;
  bool neg = false;
  if (pos < tok.size() && (tok[pos] == '-' || tok[pos] == '+')) neg = tok[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seenDot = false, any = false;
  for (; pos < tok.size() && tok[pos] != 'e' && tok[pos] != 'E'; ++pos) {
    char c = tok[pos];
    if (c == '.' && !seenDot) {
      seenDot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (seenDot) --exponent;
    } else {
      throw std::invalid_argument("malformed number '" + tok + "'");
    }
  }
  if (!any) throw std::invalid_argument("malformed number '" + tok + "'");
  if (pos < tok.size()) {
    std::string e = tok.substr(pos + 1);
    std::size_t used = 0;
    long ev = 0;
    try {
      ev = std::stol(e, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + tok + "'");
    }
    if (used != e.size() || std::labs(ev) > 10000) throw std::invalid_argument("malformed exponent in '" + tok + "'");
    exponent += ev;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

double parseDouble(const std::string& tok) {
  if (tok.find('/') != std::string::npos) return parseRational(tok).get_d();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("malformed number '" + tok + "'");
  return v;
}

template <typename T, typename Parse>
MatrixTuple<T> readBlocks(std::istream& is, std::size_t m, std::size_t d, Parse parse) {
  std::vector<Matrix<T>> mats;
  std::string tok;
  for (std::size_t l = 0; l < d; ++l) {
    Matrix<T> x(m, m, T(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (!(is >> tok)) throw FormatError("matrix file ends early (matrix " + std::to_string(l + 1) + ")");
        try {
          x(i, j) = parse(tok);
        } catch (const std::invalid_argument& e) {
          throw FormatError(e.what());
        }
      }
    mats.push_back(std::move(x));
  }
  if (is >> tok) throw FormatError("trailing data in matrix file: '" + tok + "'");
  return MatrixTuple<T>(std::move(mats));
}

}  // namespace

AnyTuple readMatrixTuple(std::istream& is) {
  std::string header;
  while (std::getline(is, header)) {
    auto b = header.find_first_not_of(" \t\r");
    if (b != std::string::npos && header[b] != '#') break;
  }
  std::istringstream hs(header);
  long long m = 0, d = 0;
  std::string mode, extra;
  if (!(hs >> m >> d >> mode) || (hs >> extra) || m <= 0 || d <= 0)
    throw FormatError("matrix file header must be 'm d mode' with positive m and d");
  if (mode == "rat") return readBlocks<Rational>(is, m, d, parseExact);
  if (mode == "f64") return readBlocks<double>(is, m, d, parseDouble);
  throw FormatError("unknown matrix mode '" + mode + "' (expected rat or f64)");
}

void writeMatrixTuple(std::ostream& os, const MatrixTuple<Rational>& t) {
  os << t.size() << ' ' << t.count() << " rat\n";
  for (const auto& x : t.matrices()) os << formatMatrix(x);
}

void writeMatrixTuple(std::ostream& os, const MatrixTuple<double>& t) {
  os << t.size() << ' ' << t.count() << " f64\n";
  for (const auto& x : t.matrices()) os << formatMatrix(x);
}

MatrixTuple<Rational> randomRationalTuple(std::size_t m, std::size_t d, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  std::vector<Matrix<Rational>> mats;
  for (std::size_t l = 0; l < d; ++l) {
    Matrix<Rational> x(m, m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        x(i, j) = q;
      }
    mats.push_back(std::move(x));
  }
  return MatrixTuple<Rational>(std::move(mats));
}

MatrixTuple<double> randomDoubleTuple(std::size_t m, std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Matrix<double>> mats;
  for (std::size_t l = 0; l < d; ++l) {
    Matrix<double> x(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) x(i, j) = u(rng);
    mats.push_back(std::move(x));
  }
  return MatrixTuple<double>(std::move(mats));
}

MatrixTuple<double> toDouble(const MatrixTuple<Rational>& t) {
  std::vector<Matrix<double>> mats;
  for (const auto& x : t.matrices()) {
    Matrix<double> y(x.rows(), x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) = x(i, j).get_d();
    mats.push_back(std::move(y));
  }
  return MatrixTuple<double>(std::move(mats));
}

std::string formatMatrix(const Matrix<Rational>& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << formatRational(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string formatMatrix(const Matrix<double>& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace ncals
