#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "takiff/errors.hpp"
#include "takiff/parser.hpp"

using namespace takiff;

namespace {

AlgebraElement gen(Generator g) { return AlgebraElement::generator(g); }

void check_error_mentions(const std::string& text, const std::string& fragment) {
  try {
    parse(text);
    FAIL("expected SyntaxError for: ", text);
  } catch (const SyntaxError& e) {
    const std::string msg = e.what();
    CHECK_MESSAGE(msg.find(fragment) != std::string::npos,
                  "message '", msg, "' lacks '", fragment, "'");
  }
}

// Random normally ordered element: up to four monomials of degree <= 4 with
// rational or single-parameter coefficients.
AlgebraElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4);
  std::uniform_int_distribution<int> exp(0, 2);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> coeff_kind(0, 3);
  std::uniform_int_distribution<int> which_param(0, 7);
  AlgebraElement x;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Mono m{};
    int deg = 0;
    for (int g = 0; g < kNumGens; ++g) {
      const int e = exp(rng);
      if (deg + e > 4) continue;
      m[g] = e;
      deg += e;
    }
    Poly c(rat(num(rng), den(rng)));
    if (coeff_kind(rng) == 0)
      c = c + Poly::param(static_cast<Param>(which_param(rng)), 1 + exp(rng));
    x.add_term(m, c);
  }
  return x;
}

}  // namespace

TEST_CASE("Named elements and normal ordering through the parser") {
  CHECK(parse_element("hb*h + 2*fb*e + 2*eb*f") == central_C());
  CHECK(parse_element("C") == central_C());
  CHECK(parse_element("Cb") == central_Cbar());
  CHECK(parse_element("hb^2 + 4*fb*eb") == central_Cbar());
  CHECK(parse_element("Cas") == sl2_casimir());
  CHECK(parse_element("h^2 + 2*h + 1 + 4*f*e") == sl2_casimir());

  // e*f straightens to f*e + h.
  const AlgebraElement ef = parse_element("e*f");
  AlgebraElement expected = AlgebraElement::monomial({0, 0, 0, 1, 0, 1}) + gen(Generator::H);
  CHECK(ef == expected);

  // The central elements commute with everything even via the text route.
  for (const char* g : {"e", "f", "h", "eb", "fb", "hb"}) {
    CHECK(parse_element(std::string("C*") + g + " - " + g + "*C").is_zero());
    CHECK(parse_element(std::string("Cb*") + g + " - " + g + "*Cb").is_zero());
  }
}

TEST_CASE("Juxtaposition, precedence and unary minus") {
  CHECK(parse_element("e^2 f") == parse_element("e^2*f"));
  CHECK(parse_element("e f e") == parse_element("(e*f)*e"));
  CHECK(parse_element("2 + 3*4") == AlgebraElement::scalar(Poly(14L)));
  CHECK(parse_element("2*e^3") == Poly(2L) * gen(Generator::E).pow(3));
  CHECK(parse_element("e - e").is_zero());
  CHECK(parse_element("f - 2*f") == -gen(Generator::F));
  // "-e^2" binds the minus inside the power: (-e)^2 = e^2.
  CHECK(parse_element("-e^2") == gen(Generator::E).pow(2));
  CHECK(parse_element("-(e^2)") == -gen(Generator::E).pow(2));
  CHECK(parse_element("e^2*f - f*e^2") ==
        parse_element("e^2") * gen(Generator::F) - gen(Generator::F) * parse_element("e^2"));
}

TEST_CASE("Rational literals") {
  CHECK(parse_element("5/2") == AlgebraElement::scalar(Poly(rat(5, 2))));
  CHECK(parse_element("3/6*e") == Poly(rat(1, 2)) * gen(Generator::E));
  CHECK(parse_element("-3/4") == AlgebraElement::scalar(Poly(rat(-3, 4))));
  CHECK(parse_element("007") == AlgebraElement::scalar(Poly(7L)));
  CHECK(parse_element("2 3") == AlgebraElement::scalar(Poly(6L)));
}

TEST_CASE("Parameters evaluate to scalar coefficients") {
  const AlgebraElement x = parse_element("mub*(mu + 2)");
  Poly expected = Poly::param(Param::MUB) * (Poly::param(Param::MU) + Poly(2L));
  CHECK(x == AlgebraElement::scalar(expected));
  CHECK(parse_element("lam^2 - s^2").is_zero() == false);
  CHECK(parse_element("theta*e - e*theta").is_zero());
  CHECK(parse_element("(pa + pb + pc)*h") ==
        (Poly::param(Param::PA) + Poly::param(Param::PB) + Poly::param(Param::PC)) * gen(Generator::H));
}

TEST_CASE("Parse tree shape") {
  const ExprPtr t = parse("e^2*f - f*e^2");
  REQUIRE(t->kind == ExprAST::Kind::SUM);
  REQUIRE(t->children.size() == 2);
  const ExprPtr lhs = t->children[0];
  CHECK(lhs->kind == ExprAST::Kind::PRODUCT);
  CHECK(lhs->children[0]->kind == ExprAST::Kind::POWER);
  CHECK(lhs->children[0]->exponent == 2);
  CHECK(lhs->children[0]->children[0]->kind == ExprAST::Kind::GEN);
  CHECK(t->children[1]->kind == ExprAST::Kind::NEG);
}

TEST_CASE("Syntax errors carry position and expectation") {
  check_error_mentions("h^-1", "position 3");
  check_error_mentions("h^-1", "natural number exponent");
  check_error_mentions("(e", "')'");
  check_error_mentions("(e", "end of input");
  check_error_mentions("e )", "position 3");
  check_error_mentions("xyz", "unknown name 'xyz'");
  check_error_mentions("xyz", "parameter");
  check_error_mentions("1/0", "denominator must be nonzero");
  check_error_mentions("1/e", "natural number denominator");
  check_error_mentions("", "end of input");
  check_error_mentions("e^^2", "natural number exponent");
  check_error_mentions("@", "unexpected character '@'");
  check_error_mentions("e^9999999", "exceeds the limit");
  check_error_mentions("e + + f", "position 5");
  CHECK_THROWS_AS(parse("h^-1"), SyntaxError);
}

TEST_CASE("Printed elements reparse to equal elements") {
  std::mt19937_64 rng(20240814);
  for (int trial = 0; trial < 200; ++trial) {
    const AlgebraElement x = random_element(rng);
    const std::string s = x.str();
    CAPTURE(s);
    const AlgebraElement back = parse_element(s);
    CHECK(back == x);
  }
  CHECK(parse_element("0").is_zero());
  CHECK(parse_element(AlgebraElement().str()).is_zero());
}
