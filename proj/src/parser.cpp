#include <algorithm>
#include <cctype>
#include <string>

#include "ncals/freepoly.hpp"

namespace ncals {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      kind_(kind),
      position_(position) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(c)) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError(ParseError::Kind::Syntax, i, std::string("unexpected character '") + s[i] + "'");
    }
    out.push_back({k, std::string(1, s[i]), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet)
      : toks_(tokenize(text)), alphabet_(alphabet), juxtapose_(alphabet.singleCharacter()) {}

  NcPolynomial run() {
    NcPolynomial p = expression();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, peek().pos, msg);
  }

  NcPolynomial expression() {
    NcPolynomial acc(alphabet_);
    bool negate = false;
    if (accept(Tok::Minus)) negate = true;
    else accept(Tok::Plus);
    for (;;) {
      NcPolynomial t = term();
      if (negate) acc -= t;
      else acc += t;
      if (accept(Tok::Plus)) negate = false;
      else if (accept(Tok::Minus)) negate = true;
      else break;
    }
    return acc;
  }

  static bool startsFactor(Tok k) { return k == Tok::Ident || k == Tok::LParen; }

  NcPolynomial term() {
    NcPolynomial acc = NcPolynomial::constant(alphabet_, 1);
    if (peek().kind == Tok::Number) {
      acc = factor();
      if (!accept(Tok::Star) && !startsFactor(peek().kind)) return acc;
    } else if (!startsFactor(peek().kind)) {
      fail(peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    }
    for (;;) {
      acc = acc * factor();
      if (accept(Tok::Star)) continue;
      if (startsFactor(peek().kind)) continue;
      break;
    }
    return acc;
  }

  unsigned exponent() {
    if (peek().kind != Tok::Number) fail("expected exponent");
    const Token& t = next();
    if (t.text.size() > 4) throw ParseError(ParseError::Kind::Syntax, t.pos, "exponent too large");
    const auto e = static_cast<unsigned>(std::stoul(t.text));
    if (e == 0) throw ParseError(ParseError::Kind::Syntax, t.pos, "exponent must be positive");
    return e;
  }

  NcPolynomial factor() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      std::string text = t.text;
      if (accept(Tok::Slash)) {
        if (peek().kind != Tok::Number) fail("expected denominator");
        const Token& d = next();
        if (d.text.find_first_not_of('0') == std::string::npos)
          throw ParseError(ParseError::Kind::Syntax, d.pos, "zero denominator");
        text += "/" + d.text;
      }
      NcPolynomial c = NcPolynomial::constant(alphabet_, parseRational(text));
      if (accept(Tok::Caret)) c = power(c, exponent());
      return c;
    }
    if (t.kind == Tok::LParen) {
      next();
      NcPolynomial inner = expression();
      if (!accept(Tok::RParen)) fail("expected ')'");
      if (accept(Tok::Caret)) inner = power(inner, exponent());
      return inner;
    }
    if (t.kind == Tok::Ident) {
      next();
      Word w;
      if (auto idx = alphabet_.indexOf(t.text)) {
        w.push_back(static_cast<std::uint32_t>(*idx));
      } else if (juxtapose_ && t.text.find_first_not_of(
                                   "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ") == std::string::npos) {
        for (std::size_t i = 0; i < t.text.size(); ++i) {
          auto li = alphabet_.indexOf(t.text.substr(i, 1));
          if (!li)
            throw ParseError(ParseError::Kind::UnknownIdentifier, t.pos + i,
                             "unknown letter '" + t.text.substr(i, 1) + "'");
          w.push_back(static_cast<std::uint32_t>(*li));
        }
      } else {
        throw ParseError(ParseError::Kind::UnknownIdentifier, t.pos, "unknown identifier '" + t.text + "'");
      }
      if (accept(Tok::Caret)) {
        // In "xy^2" the power binds to the last letter only.
        unsigned e = exponent();
        Word last{w.back()};
        w.pop_back();
        NcPolynomial head = NcPolynomial::monomial(alphabet_, w);
        return head * power(NcPolynomial::monomial(alphabet_, last), e);
      }
      return NcPolynomial::monomial(alphabet_, w);
    }
    fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Alphabet& alphabet_;
  bool juxtapose_;
};

}  // namespace

NcPolynomial parsePolynomial(std::string_view text, const Alphabet& alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
  return Parser(text, alphabet).run();
}

Alphabet inferAlphabet(std::string_view text) {
  std::vector<std::string> letters;
  for (const auto& t : tokenize(text)) {
    if (t.kind != Tok::Ident) continue;
    if (std::find(letters.begin(), letters.end(), t.text) == letters.end()) letters.push_back(t.text);
  }
  if (letters.empty()) letters.emplace_back("x");
  return Alphabet(std::move(letters));
}

}  // namespace ncals
