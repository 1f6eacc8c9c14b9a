#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "takiff/poly.hpp"

using namespace takiff;

namespace {

Poly P(Param p) { return Poly::param(p); }

Poly random_poly(std::mt19937_64& g) {
  Poly r;
  int nterms = static_cast<int>(g() % 4);
  for (int t = 0; t < nterms; ++t) {
    ParamExp e{};
    for (int reps = static_cast<int>(g() % 3); reps > 0; --reps)
      e[g() % kNumParams] += static_cast<int>(g() % 3);
    long num = static_cast<long>(g() % 19) - 9;
    long den = 1 + static_cast<long>(g() % 3);
    r.add_term(e, rat(num, den));
  }
  return r;
}

} // namespace

TEST_CASE("rational parsing and canonical text") {
  CHECK(rat_str(rat_parse("3/6")) == "1/2");
  CHECK(rat_str(rat_parse("-8/6")) == "-4/3");
  CHECK(rat_str(rat_parse("0")) == "0");
  CHECK(rat(7, 2) == rat_parse("7/2"));
  CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
}

TEST_CASE("addition") {
  CHECK(P(Param::LAM) + Poly(1L) + Poly(-1L) == P(Param::LAM));
  std::mt19937_64 g(7);
  Poly p = random_poly(g);
  CHECK(Poly() + p == p);
  CHECK(P(Param::THETA) - Poly(2L) + (P(Param::THETA) + Poly(2L)) == Poly(2L) * P(Param::THETA));
}

TEST_CASE("multiplication") {
  CHECK(P(Param::S) * P(Param::S) == Poly::param(Param::S, 2));
  CHECK((P(Param::LAM) - Poly(1L)) * P(Param::LAM) ==
        Poly::param(Param::LAM, 2) - P(Param::LAM));
  std::mt19937_64 g(11);
  Poly p = random_poly(g);
  CHECK(Poly(1L) * p == p);
}

TEST_CASE("eval") {
  Poly scalar = P(Param::MUB) * (P(Param::MU) + Poly(2L));
  CHECK(scalar.eval({{Param::MU, rat(3)}, {Param::MUB, rat(2)}}) == Poly(10L));
  CHECK(Poly::param(Param::S, 2).eval({{Param::S, rat(1)}}) == Poly(1L));
  CHECK(P(Param::LAM).eval({}) == P(Param::LAM));
  // partial binding leaves the rest formal
  CHECK(scalar.eval({{Param::MUB, rat(2)}}) == Poly(2L) * P(Param::MU) + Poly(4L));
}

TEST_CASE("ring axioms on random samples") {
  std::mt19937_64 g(20260814);
  for (int n = 0; n < 500; ++n) {
    Poly a = random_poly(g), b = random_poly(g), c = random_poly(g);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("eval is a ring homomorphism") {
  std::mt19937_64 g(99);
  std::map<Param, Rational> bind{{Param::LAM, rat(1, 2)}, {Param::THETA, rat(-3)},
                                 {Param::S, rat(2, 3)}};
  for (int n = 0; n < 200; ++n) {
    Poly a = random_poly(g), b = random_poly(g);
    CHECK((a * b).eval(bind) == a.eval(bind) * b.eval(bind));
    CHECK((a + b).eval(bind) == a.eval(bind) + b.eval(bind));
  }
}

TEST_CASE("canonical form: a - b is zero iff equal") {
  std::mt19937_64 g(5);
  for (int n = 0; n < 100; ++n) {
    Poly a = random_poly(g), b = random_poly(g);
    CHECK(((a - b).is_zero()) == (a == b));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("printing follows descending graded-lex") {
  Poly p = Poly::param(Param::LAM, 2) + Poly(2L) * P(Param::THETA) - Poly(1L);
  CHECK(p.str() == "lam^2 + 2*theta - 1");
  CHECK(Poly().str() == "0");
  CHECK((-P(Param::MU)).str() == "-mu");
  CHECK((rat(1, 2) * P(Param::S)).str() == "1/2*s");
  CHECK((P(Param::PA) * P(Param::PB) * P(Param::PC)).str() == "pa*pb*pc");
}

TEST_CASE("degree and constants") {
  CHECK(Poly().degree() == 0);
  CHECK(Poly(3L).is_constant());
  CHECK(Poly(3L).constant() == 3);
  CHECK(Poly().constant() == 0);
  CHECK(Poly::param(Param::LAM, 2).degree() == 2);
  CHECK_THROWS_AS(P(Param::LAM).constant(), std::logic_error);
}
