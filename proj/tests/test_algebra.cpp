#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <takiff/algebra.hpp>

#include <array>
#include <random>
#include <vector>

using namespace takiff;

namespace {

AlgebraElement gen(Generator g) { return AlgebraElement::generator(g); }

AlgebraElement gen_pow(Generator g, unsigned n) { return gen(g).pow(n); }

// h + c as an element, for closed-form right hand sides.
AlgebraElement h_plus(long c) {
  return gen(Generator::H) + AlgebraElement::scalar(Poly(c));
}

const std::array<Generator, 6> kAllGens = {
    Generator::FB, Generator::HB, Generator::EB,
    Generator::F,  Generator::H,  Generator::E};

Mono random_mono(std::mt19937_64& rng, int max_degree) {
  Mono m{0, 0, 0, 0, 0, 0};
  int budget = static_cast<int>(rng() % (max_degree + 1));
  for (int step = 0; step < budget; ++step) m[rng() % 6] += 1;
  return m;
}

}  // namespace

TEST_CASE("generator brackets match the defining relations") {
  CHECK(bracket(Generator::E, Generator::F) == gen(Generator::H));
  CHECK(bracket(Generator::H, Generator::E) == Poly(2) * gen(Generator::E));
  CHECK(bracket(Generator::H, Generator::F) == Poly(-2) * gen(Generator::F));

  // One copy of t moves into the result.
  CHECK(bracket(Generator::E, Generator::FB) == gen(Generator::HB));
  CHECK(bracket(Generator::EB, Generator::F) == gen(Generator::HB));
  CHECK(bracket(Generator::H, Generator::EB) == Poly(2) * gen(Generator::EB));
  CHECK(bracket(Generator::HB, Generator::E) == Poly(2) * gen(Generator::EB));
  CHECK(bracket(Generator::HB, Generator::F) == Poly(-2) * gen(Generator::FB));

  // Two copies of t vanish.
  CHECK(bracket(Generator::EB, Generator::FB).is_zero());
  CHECK(bracket(Generator::HB, Generator::EB).is_zero());
  CHECK(bracket(Generator::HB, Generator::FB).is_zero());

  // Pairs that commute outright.
  CHECK(bracket(Generator::E, Generator::EB).is_zero());
  CHECK(bracket(Generator::H, Generator::HB).is_zero());
  CHECK(bracket(Generator::F, Generator::FB).is_zero());
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi on all triples") {
  for (Generator x : kAllGens) {
    for (Generator y : kAllGens) {
      CHECK(bracket(x, y) == -bracket(y, x));
      for (Generator z : kAllGens) {
        AlgebraElement cyc =
            commutator(bracket(x, y), gen(z)) +
            commutator(bracket(y, z), gen(x)) +
            commutator(bracket(z, x), gen(y));
        CHECK(cyc.is_zero());
      }
    }
  }
}

TEST_CASE("bracket agrees with the product commutator") {
  for (Generator x : kAllGens)
    for (Generator y : kAllGens)
      CHECK(bracket(x, y) == gen(x) * gen(y) - gen(y) * gen(x));
}

TEST_CASE("single swaps straighten as expected") {
  CHECK(gen(Generator::E) * gen(Generator::F) ==
        gen(Generator::F) * gen(Generator::E) + gen(Generator::H));
  CHECK(gen(Generator::H) * gen(Generator::EB) ==
        gen(Generator::EB) * gen(Generator::H) +
            Poly(2) * gen(Generator::EB));
  CHECK(gen(Generator::F) * gen(Generator::HB) ==
        gen(Generator::HB) * gen(Generator::F) +
            Poly(2) * gen(Generator::FB));
}

TEST_CASE("multiplication has unit and matches hand samples") {
  AlgebraElement one = AlgebraElement::one();
  AlgebraElement x = gen(Generator::E) * gen(Generator::F) +
                     Poly::param(Param::THETA) * gen(Generator::HB);
  CHECK(one * x == x);
  CHECK(x * one == x);

  // ef - fe = h even after assembling through normalized products.
  CHECK(gen(Generator::E) * gen(Generator::F) -
            gen(Generator::F) * gen(Generator::E) ==
        gen(Generator::H));
}

TEST_CASE("multiplication is associative on random monomials") {
  std::mt19937_64 rng(20260814u);
  for (int trial = 0; trial < 300; ++trial) {
    AlgebraElement a = AlgebraElement::monomial(random_mono(rng, 3), Poly(1));
    AlgebraElement b = AlgebraElement::monomial(random_mono(rng, 3), Poly(1));
    AlgebraElement c = AlgebraElement::monomial(random_mono(rng, 3), Poly(1));
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("C and Cbar are central") {
  for (Generator g : kAllGens) {
    CHECK(commutator(central_C(), gen(g)).is_zero());
    CHECK(commutator(central_Cbar(), gen(g)).is_zero());
  }
  CHECK(commutator(central_C(), central_Cbar()).is_zero());
}

TEST_CASE("iterated adjoint action") {
  CHECK(ad_power(gen(Generator::H), 1, gen(Generator::E)) ==
        Poly(2) * gen(Generator::E));
  AlgebraElement e2 = gen_pow(Generator::E, 2);
  CHECK(ad_power(gen(Generator::F), 0, e2) == e2);
  CHECK(ad_power(gen(Generator::HB), 2, e2) ==
        Poly(8) * gen_pow(Generator::EB, 2));
}

TEST_CASE("ad_h is diagonal with the expected integer weights") {
  for (const Mono& m : degree_filtration(4)) {
    AlgebraElement x = AlgebraElement::monomial(m, Poly(1));
    CHECK(ad_power(gen(Generator::H), 1, x) == Poly(weight_of(m)) * x);
  }
}

TEST_CASE("weight bookkeeping") {
  CHECK(weight_of(Mono{0, 0, 0, 0, 0, 1}) == 2);
  CHECK(weight_of(Mono{1, 1, 0, 1, 1, 1}) == -2);
  CHECK(weight_of(Mono{0, 0, 0, 0, 0, 0}) == 0);
  CHECK(weight_of(Mono{2, 0, 1, 0, 3, 0}) == -2);
}

TEST_CASE("closed form: h^i y = y (h+2)^i for raising y") {
  for (Generator y : {Generator::EB, Generator::E}) {
    for (unsigned i = 0; i <= 5; ++i) {
      CHECK(gen_pow(Generator::H, i) * gen(y) ==
            gen(y) * h_plus(2).pow(i));
    }
  }
}

TEST_CASE("closed form: e^i hb = -2i eb e^{i-1} + hb e^i") {
  for (unsigned i = 1; i <= 5; ++i) {
    AlgebraElement lhs = gen_pow(Generator::E, i) * gen(Generator::HB);
    AlgebraElement rhs =
        Poly(-2 * static_cast<long>(i)) * gen(Generator::EB) *
            gen_pow(Generator::E, i - 1) +
        gen(Generator::HB) * gen_pow(Generator::E, i);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closed form: e f^i = i f^{i-1} (h-i+1) + f^i e") {
  for (unsigned i = 1; i <= 5; ++i) {
    AlgebraElement lhs = gen(Generator::E) * gen_pow(Generator::F, i);
    AlgebraElement rhs =
        Poly(static_cast<long>(i)) * gen_pow(Generator::F, i - 1) *
            h_plus(1 - static_cast<long>(i)) +
        gen_pow(Generator::F, i) * gen(Generator::E);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closed form: h y^i = y^i (h+2i) for raising y") {
  for (Generator y : {Generator::EB, Generator::E}) {
    for (unsigned i = 0; i <= 5; ++i) {
      CHECK(gen(Generator::H) * gen_pow(y, i) ==
            gen_pow(y, i) * h_plus(2 * static_cast<long>(i)));
    }
  }
}

TEST_CASE("closed form: f^i hb = 2i fb f^{i-1} + hb f^i") {
  for (unsigned i = 1; i <= 5; ++i) {
    AlgebraElement lhs = gen_pow(Generator::F, i) * gen(Generator::HB);
    AlgebraElement rhs =
        Poly(2 * static_cast<long>(i)) * gen(Generator::FB) *
            gen_pow(Generator::F, i - 1) +
        gen(Generator::HB) * gen_pow(Generator::F, i);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closed form: h f^i = f^i (h-2i)") {
  for (unsigned i = 0; i <= 5; ++i) {
    CHECK(gen(Generator::H) * gen_pow(Generator::F, i) ==
          gen_pow(Generator::F, i) * h_plus(-2 * static_cast<long>(i)));
  }
}

TEST_CASE("degree filtration sizes and ordering") {
  CHECK(degree_filtration(0).size() == 1);
  CHECK(degree_filtration(1).size() == 7);
  CHECK(degree_filtration(2).size() == 28);

  auto monos = degree_filtration(3);
  MonoLess less;
  for (std::size_t i = 1; i < monos.size(); ++i)
    CHECK(less(monos[i - 1], monos[i]));
}

TEST_CASE("straightening respects a custom generator order") {
  // Order f < fb < h < hb < e < eb, used by lowest-weight style evaluations.
  std::array<int, 6> prio{};
  prio[static_cast<int>(Generator::F)] = 0;
  prio[static_cast<int>(Generator::FB)] = 1;
  prio[static_cast<int>(Generator::H)] = 2;
  prio[static_cast<int>(Generator::HB)] = 3;
  prio[static_cast<int>(Generator::E)] = 4;
  prio[static_cast<int>(Generator::EB)] = 5;

  Word ef{static_cast<char>(Generator::E), static_cast<char>(Generator::F)};
  auto out = straighten_word(ef, prio);
  Word fe{static_cast<char>(Generator::F), static_cast<char>(Generator::E)};
  Word h{static_cast<char>(Generator::H)};
  REQUIRE(out.size() == 2);
  CHECK(out.at(fe) == Rational(1));
  CHECK(out.at(h) == Rational(1));

  // Already sorted words pass through untouched.
  auto idem = straighten_word(fe, prio);
  REQUIRE(idem.size() == 1);
  CHECK(idem.at(fe) == Rational(1));
}

TEST_CASE("canonical printing") {
  CHECK(central_C().str() == "2*eb*f + hb*h + 2*fb*e");
  CHECK(central_Cbar().str() == "hb^2 + 4*fb*eb");
  CHECK(AlgebraElement().str() == "0");
  CHECK(AlgebraElement::one().str() == "1");
  CHECK((Poly::param(Param::THETA) * gen(Generator::E) -
         AlgebraElement::one())
            .str() == "-1 + theta*e");
  CHECK(sl2_casimir().str() == "1 + 2*h + h^2 + 4*f*e");
}
