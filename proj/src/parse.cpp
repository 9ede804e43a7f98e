#include "toral/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "toral/errors.hpp"

namespace toral {
namespace {

enum class Tok { Number, Imag, Var, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;  // digits for numbers
  Rational value;    // for Number
  std::size_t var = 0;
};

Rational decimal_value(const std::string& whole, const std::string& frac) {
  Integer num(whole.empty() ? "0" : whole);
  Integer den(1);
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](std::size_t& j) {
    std::size_t start = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return std::string(s.substr(start, j - start));
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t pos = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string whole = digits(i);
      std::string frac;
      bool decimal = false;
      if (i < s.size() && s[i] == '.') {
        decimal = true;
        ++i;
        frac = digits(i);
        if (whole.empty() && frac.empty()) throw ParseError("malformed number", pos);
      }
      Rational value = decimal_value(whole, frac);
      if (i < s.size() && s[i] == '/') {
        if (decimal) throw ParseError("fraction with decimal numerator", pos);
        ++i;
        std::string den = digits(i);
        if (den.empty()) throw ParseError("missing fraction denominator", i);
        Integer d(den);
        if (d == 0) throw ParseError("zero denominator", pos);
        value = Rational(Integer(whole), d);
        value.canonicalize();
      }
      Token t{Tok::Number, pos, std::string(s.substr(pos, i - pos)), value};
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string word(s.substr(i, j - i));
      Token t{Tok::Var, pos, word, Rational(0)};
      if (word == "i") {
        t.kind = Tok::Imag;
      } else if (word == "z") {
        t.var = 0;
      } else if (word == "w") {
        t.var = 1;
      } else if (word.size() > 1 && word[0] == 'z' &&
                 word.find_first_not_of("0123456789", 1) == std::string::npos && word[1] != '0') {
        if (word.size() > 4) throw ParseError("variable index too large", pos);
        t.var = static_cast<std::size_t>(std::stoul(word.substr(1))) - 1;
      } else {
        throw ParseError("unknown identifier '" + word + "'", pos);
      }
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back(Token{kind, pos, std::string(1, c), Rational(0)});
    ++i;
  }
  out.push_back(Token{Tok::End, s.size(), "", Rational(0)});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t nvars) : toks_(std::move(tokens)), nvars_(nvars) {}

  MultiPoly run() {
    MultiPoly p = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  MultiPoly expr() {
    MultiPoly p = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      MultiPoly t = term();
      if (minus) p -= t; else p += t;
    }
    return p;
  }

  MultiPoly term() {
    MultiPoly p = unary();
    while (peek().kind == Tok::Star) {
      next();
      p = p * unary();
    }
    return p;
  }

  MultiPoly unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek().kind == Tok::Caret) {
      next();
      const Token& t = next();
      if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("exponent must be a nonnegative integer literal", t.pos);
      if (t.text.size() > 4) throw ParseError("exponent too large", t.pos);
      if (peek().kind == Tok::Caret) throw ParseError("chained exponent needs parentheses", peek().pos);
      base = pow(base, static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  MultiPoly primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return MultiPoly(nvars_, GaussianRational(t.value));
      case Tok::Imag: return MultiPoly(nvars_, GaussianRational::i());
      case Tok::Var: return MultiPoly::variable(nvars_, t.var);
      case Tok::LParen: {
        MultiPoly p = expr();
        const Token& close = next();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return p;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t nvars_;
  std::size_t i_ = 0;
};

}  // namespace

MultiPoly parse(std::string_view text, std::size_t min_vars) {
  auto tokens = tokenize(text);
  std::size_t nvars = std::max<std::size_t>(min_vars, 1);
  for (const auto& t : tokens)
    if (t.kind == Tok::Var) nvars = std::max(nvars, t.var + 1);
  // Two operands in a row means implicit multiplication.
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    auto operand_end = [](Tok t) { return t == Tok::Number || t == Tok::Imag || t == Tok::Var || t == Tok::RParen; };
    auto operand_start = [](Tok t) { return t == Tok::Number || t == Tok::Imag || t == Tok::Var || t == Tok::LParen; };
    if (operand_end(tokens[k - 1].kind) && operand_start(tokens[k].kind))
      throw ParseError("implicit multiplication is not allowed", tokens[k].pos);
  }
  return Parser(std::move(tokens), nvars).run();
}

GaussianRational parse_scalar(std::string_view text) {
  MultiPoly p = parse(text, 1);
  if (!p.is_constant()) throw ParseError("expected a constant", 0);
  return p.constant_term();
}

}  // namespace toral
