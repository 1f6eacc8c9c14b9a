#pragma once

#include <memory>
#include <string>
#include <vector>

#include "takiff/algebra.hpp"

namespace takiff {

/// Parse tree for algebra expressions; products keep their written order.
struct ExprAST {
  enum class Kind {
    GEN,       // one of e, f, h, eb, fb, hb
    RATIONAL,  // literal such as 3 or 5/2
    PARAM,     // formal parameter such as lam or theta
    BUILTIN,   // named element: C, Cb, Cas
    NEG,       // unary minus, one child
    SUM,       // children[0] + children[1]
    PRODUCT,   // children[0] * children[1], noncommutative
    POWER,     // children[0] ^ exponent
  };

  Kind kind = Kind::RATIONAL;
  Generator gen = Generator::FB;    // for GEN
  Rational value{0};                // for RATIONAL
  Param param = Param::LAM;         // for PARAM
  std::string builtin;              // for BUILTIN
  unsigned exponent = 0;            // for POWER
  std::vector<std::shared_ptr<const ExprAST>> children;
};

using ExprPtr = std::shared_ptr<const ExprAST>;

/// Parses an expression; SyntaxError messages carry the character position
/// and the tokens that would have been accepted there.
///
/// Grammar:
///   expr     := term (("+" | "-") term)*
///   term     := factor (("*")? factor)*
///   factor   := atom ("^" nat)?
///   atom     := gen | rational | param | "(" expr ")" | "-" atom
///   gen      := "e" | "f" | "h" | "eb" | "fb" | "hb" | "C" | "Cb" | "Cas"
///   param    := "lam" | "s" | "theta" | "mu" | "mub" | "pa" | "pb" | "pc"
///   rational := int ("/" nat)?
///
/// Juxtaposition ("e^2 f") is the same noncommutative product as "*".
ExprPtr parse(const std::string& text);

/// Evaluates a parse tree to a normally ordered element; the builtins C, Cb
/// and Cas expand to central_C(), central_Cbar() and sl2_casimir().
AlgebraElement eval_expr(const ExprAST& ast);

/// Convenience wrapper: parse then evaluate.
AlgebraElement parse_element(const std::string& text);

}  // namespace takiff
