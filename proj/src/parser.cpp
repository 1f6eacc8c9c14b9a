#include "takiff/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "takiff/errors.hpp"

namespace takiff {

namespace {

struct Token {
  enum Kind { IDENT, NUMBER, PLUS, MINUS, STAR, CARET, SLASH, LPAREN, RPAREN, END };
  Kind kind = END;
  std::string text;
  std::size_t pos = 0;  // 1-based character position
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t pos = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::IDENT, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::NUMBER, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::PLUS; break;
      case '-': k = Token::MINUS; break;
      case '*': k = Token::STAR; break;
      case '^': k = Token::CARET; break;
      case '/': k = Token::SLASH; break;
      case '(': k = Token::LPAREN; break;
      case ')': k = Token::RPAREN; break;
      default:
        throw SyntaxError("position " + std::to_string(pos) + ": unexpected character '" +
                          std::string(1, c) + "'");
    }
    out.push_back({k, std::string(1, c), pos});
    ++i;
  }
  out.push_back({Token::END, "", s.size() + 1});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Token::END) return "end of input";
  return "'" + t.text + "'";
}

constexpr unsigned kMaxExponent = 1000000;

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Token::END)
      fail(peek(), "'+', '-', '*', '^' or end of input");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  [[noreturn]] static void fail(const Token& got, const std::string& expected) {
    throw SyntaxError("position " + std::to_string(got.pos) + ": unexpected " + describe(got) +
                      "; expected " + expected);
  }

  static ExprPtr node(ExprAST a) { return std::make_shared<const ExprAST>(std::move(a)); }

  static ExprPtr binary(ExprAST::Kind k, ExprPtr a, ExprPtr b) {
    ExprAST n;
    n.kind = k;
    n.children = {std::move(a), std::move(b)};
    return node(std::move(n));
  }

  ExprPtr expr() {
    ExprPtr a = term();
    while (peek().kind == Token::PLUS || peek().kind == Token::MINUS) {
      const bool plus = take().kind == Token::PLUS;
      ExprPtr b = term();
      if (!plus) {
        ExprAST n;
        n.kind = ExprAST::Kind::NEG;
        n.children = {std::move(b)};
        b = node(std::move(n));
      }
      a = binary(ExprAST::Kind::SUM, std::move(a), std::move(b));
    }
    return a;
  }

  static bool starts_factor(const Token& t) {
    return t.kind == Token::IDENT || t.kind == Token::NUMBER || t.kind == Token::LPAREN;
  }

  ExprPtr term() {
    ExprPtr a = factor();
    for (;;) {
      if (peek().kind == Token::STAR) {
        take();
        a = binary(ExprAST::Kind::PRODUCT, std::move(a), factor());
      } else if (starts_factor(peek())) {
        a = binary(ExprAST::Kind::PRODUCT, std::move(a), factor());
      } else {
        break;
      }
    }
    return a;
  }

  ExprPtr factor() {
    ExprPtr a = atom();
    if (peek().kind == Token::CARET) {
      take();
      if (peek().kind != Token::NUMBER) fail(peek(), "a natural number exponent");
      const Token t = take();
      unsigned long n = 0;
      try {
        n = std::stoul(t.text);
      } catch (const std::exception&) {
        n = kMaxExponent + 1;
      }
      if (n > kMaxExponent)
        throw SyntaxError("position " + std::to_string(t.pos) + ": exponent " + t.text +
                          " exceeds the limit " + std::to_string(kMaxExponent));
      ExprAST p;
      p.kind = ExprAST::Kind::POWER;
      p.exponent = static_cast<unsigned>(n);
      p.children = {std::move(a)};
      a = node(std::move(p));
    }
    return a;
  }

  ExprPtr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Token::MINUS: {
        take();
        ExprAST n;
        n.kind = ExprAST::Kind::NEG;
        n.children = {atom()};
        return node(std::move(n));
      }
      case Token::NUMBER: {
        take();
        std::string text = t.text;
        if (peek().kind == Token::SLASH) {
          take();
          if (peek().kind != Token::NUMBER) fail(peek(), "a natural number denominator");
          const Token d = take();
          if (d.text.find_first_not_of('0') == std::string::npos)
            throw SyntaxError("position " + std::to_string(d.pos) + ": denominator must be nonzero");
          text += "/" + d.text;
        }
        ExprAST n;
        n.kind = ExprAST::Kind::RATIONAL;
        n.value = rat_parse(text);
        return node(std::move(n));
      }
      case Token::IDENT: {
        take();
        ExprAST n;
        if (t.text == "C" || t.text == "Cb" || t.text == "Cas") {
          n.kind = ExprAST::Kind::BUILTIN;
          n.builtin = t.text;
          return node(std::move(n));
        }
        if (auto g = generator_from_name(t.text)) {
          n.kind = ExprAST::Kind::GEN;
          n.gen = *g;
          return node(std::move(n));
        }
        if (auto p = param_from_name(t.text)) {
          n.kind = ExprAST::Kind::PARAM;
          n.param = *p;
          return node(std::move(n));
        }
        throw SyntaxError("position " + std::to_string(t.pos) + ": unknown name '" + t.text +
                          "'; expected a generator (e, f, h, eb, fb, hb, C, Cb, Cas) or a "
                          "parameter (lam, s, theta, mu, mub, pa, pb, pc)");
      }
      case Token::LPAREN: {
        take();
        ExprPtr e = expr();
        if (peek().kind != Token::RPAREN) fail(peek(), "')'");
        take();
        return e;
      }
      default:
        fail(t, "a generator, number, parameter, '(' or '-'");
    }
  }
};

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).run(); }

AlgebraElement eval_expr(const ExprAST& ast) {
  switch (ast.kind) {
    case ExprAST::Kind::GEN:
      return AlgebraElement::generator(ast.gen);
    case ExprAST::Kind::RATIONAL:
      return AlgebraElement::scalar(Poly(ast.value));
    case ExprAST::Kind::PARAM:
      return AlgebraElement::scalar(Poly::param(ast.param));
    case ExprAST::Kind::BUILTIN:
      if (ast.builtin == "C") return central_C();
      if (ast.builtin == "Cb") return central_Cbar();
      return sl2_casimir();
    case ExprAST::Kind::NEG:
      return -eval_expr(*ast.children[0]);
    case ExprAST::Kind::SUM:
      return eval_expr(*ast.children[0]) + eval_expr(*ast.children[1]);
    case ExprAST::Kind::PRODUCT:
      return eval_expr(*ast.children[0]) * eval_expr(*ast.children[1]);
    case ExprAST::Kind::POWER:
      return eval_expr(*ast.children[0]).pow(ast.exponent);
  }
  throw InvalidParams("corrupt expression tree");
}

AlgebraElement parse_element(const std::string& text) { return eval_expr(*parse(text)); }

}  // namespace takiff
