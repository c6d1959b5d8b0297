#include "ncals/freepoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <type_traits>
#include <unordered_set>
#include <utility>

namespace ncals {

Rational parseRational(std::string_view text) {
  auto slash = text.find('/');
  auto digits = [](std::string_view s, bool allowSign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allowSign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

std::string formatRational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string formatFraction(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool isIdentifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

Alphabet::Alphabet(std::vector<std::string> letters) {
  if (letters.empty()) throw std::invalid_argument("alphabet must contain at least one letter");
  std::unordered_set<std::string> seen;
  for (const auto& l : letters) {
    if (!isIdentifier(l)) throw std::invalid_argument("invalid letter name '" + l + "'");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate letter '" + l + "'");
  }
  letters_ = std::make_shared<const std::vector<std::string>>(std::move(letters));
}

Alphabet Alphabet::parse(std::string_view list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return Alphabet(std::move(out));
}

const std::vector<std::string>& Alphabet::letters() const {
  static const std::vector<std::string> none;
  return letters_ ? *letters_ : none;
}

std::optional<std::size_t> Alphabet::indexOf(std::string_view name) const {
  const auto& ls = letters();
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == name) return i;
  return std::nullopt;
}

bool Alphabet::singleCharacter() const {
  const auto& ls = letters();
  return std::all_of(ls.begin(), ls.end(), [](const std::string& l) { return l.size() == 1; });
}

std::string Alphabet::toString() const {
  std::string out;
  for (const auto& l : letters()) {
    if (!out.empty()) out += ',';
    out += l;
  }
  return out;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.letters_ == b.letters_) return true;
  return a.letters() == b.letters();
}

// ------------------------------------------------------------ NcPolynomial

NcPolynomial NcPolynomial::constant(Alphabet alphabet, const Rational& c) {
  NcPolynomial p(std::move(alphabet));
  p.addTerm({}, c);
  return p;
}

NcPolynomial NcPolynomial::monomial(Alphabet alphabet, Word w, const Rational& c) {
  for (auto l : w)
    if (l >= alphabet.size()) throw std::out_of_range("letter index outside alphabet");
  NcPolynomial p(std::move(alphabet));
  p.addTerm(w, c);
  return p;
}

NcPolynomial NcPolynomial::letter(Alphabet alphabet, std::size_t index) {
  return monomial(std::move(alphabet), Word{static_cast<std::uint32_t>(index)});
}

bool NcPolynomial::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::size_t NcPolynomial::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

Rational NcPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NcPolynomial::addTerm(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& q) {
  if (!(alphabet_ == q.alphabet_)) throw AlphabetMismatch();
  for (const auto& [w, c] : q.terms_) addTerm(w, c);
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& q) {
  if (!(alphabet_ == q.alphabet_)) throw AlphabetMismatch();
  for (const auto& [w, c] : q.terms_) addTerm(w, -c);
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

NcPolynomial operator*(const NcPolynomial& p, const NcPolynomial& q) {
  if (!(p.alphabet_ == q.alphabet_)) throw AlphabetMismatch();
  NcPolynomial r(p.alphabet_);
  Word w;
  for (const auto& [u, a] : p.terms_) {
    for (const auto& [v, b] : q.terms_) {
      w.assign(u.begin(), u.end());
      w.insert(w.end(), v.begin(), v.end());
      r.addTerm(w, a * b);
    }
  }
  return r;
}

NcPolynomial add(const NcPolynomial& p, const NcPolynomial& q) { return p + q; }
NcPolynomial mul(const NcPolynomial& p, const NcPolynomial& q) { return p * q; }

NcPolynomial power(const NcPolynomial& p, unsigned exponent) {
  NcPolynomial r = NcPolynomial::constant(p.alphabet(), 1);
  for (unsigned i = 0; i < exponent; ++i) r = r * p;
  return r;
}

std::string wordToString(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += alphabet.letter(w[i]);
  }
  return out;
}

std::string toString(const NcPolynomial& p) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (w.empty()) {
      os << formatRational(mag);
    } else {
      if (mag != 1) os << formatRational(mag) << '*';
      os << wordToString(w, p.alphabet());
    }
  }
  return os.str();
}

std::size_t naiveMultCount(const NcPolynomial& p) {
  std::size_t n = 0;
  for (const auto& [w, c] : p.terms())
    if (w.size() > 1) n += w.size() - 1;
  return n;
}

template <typename T>
Matrix<T> naiveEvaluate(const NcPolynomial& p, const MatrixTuple<T>& mats) {
  if (mats.count() != p.alphabet().size())
    throw std::invalid_argument("matrix tuple size does not match the alphabet");
  const std::size_t m = mats.size();
  Matrix<T> result(m, m, T(0));
  for (const auto& [w, c] : p.terms()) {
    T coeff;
    if constexpr (std::is_same_v<T, double>) {
      coeff = c.get_d();
    } else {
      coeff = c;
    }
    if (w.empty()) {
      for (std::size_t i = 0; i < m; ++i) result(i, i) += coeff;
      continue;
    }
    Matrix<T> prod = mats[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) prod = prod * mats[w[i]];
    result.addScaled(prod, coeff);
  }
  return result;
}

template Matrix<Rational> naiveEvaluate(const NcPolynomial&, const MatrixTuple<Rational>&);
template Matrix<double> naiveEvaluate(const NcPolynomial&, const MatrixTuple<double>&);

Rational evaluateCommutative(const NcPolynomial& p, const std::vector<Rational>& point) {
  if (point.size() != p.alphabet().size())
    throw std::invalid_argument("point size does not match the alphabet");
  Rational total = 0;
  for (const auto& [w, c] : p.terms()) {
    Rational t = c;
    for (auto l : w) t *= point[l];
    total += t;
  }
  return total;
}

}  // namespace ncals
