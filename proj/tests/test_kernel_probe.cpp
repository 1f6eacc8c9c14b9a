#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <takiff/kernel_probe.hpp>

#include <map>
#include <random>

using namespace takiff;

namespace {

AlgebraElement gen(Generator g) { return AlgebraElement::generator(g); }

Vec coords(const AlgebraElement& x, const std::vector<Mono>& cols) {
  std::map<Mono, std::size_t> pos;
  for (std::size_t j = 0; j < cols.size(); ++j) pos[cols[j]] = j;
  Vec v(cols.size(), Rational(0));
  for (const auto& [m, c] : x.terms()) v[pos.at(m)] = c.constant();
  return v;
}

RowSpan element_span(const std::vector<AlgebraElement>& xs, const std::vector<Mono>& cols) {
  RowSpan span(cols.size());
  for (const AlgebraElement& x : xs) span.insert(coords(x, cols));
  return span;
}

}  // namespace

TEST_CASE("Kernel on L(2): the barred part and the shifted Casimir") {
  const ModulePtr h = make_L(Poly(2L), 0);

  const KernelReport r1 = ann_kernel(h, 1);
  CHECK(r1.kernel_dim == 3);
  CHECK(r1.degree_bound == 1);
  CHECK(r1.interior_margin == 1);
  CHECK(r1.module_descriptor == h->descriptor());
  CHECK(r1.probes == 3);
  const auto cols1 = degree_filtration(1);
  const RowSpan s1 = element_span(r1.kernel_basis, cols1);
  for (Generator g : {Generator::FB, Generator::HB, Generator::EB})
    CHECK(s1.contains(coords(gen(g), cols1)));

  // At degree 2 the kernel also picks up Cas - 9, the sl2 annihilator of the
  // three-dimensional simple: 15 barred-containing quadratics + 3 barred
  // generators + 1.
  const KernelReport r2 = ann_kernel(h, 2);
  CHECK(r2.kernel_dim == 19);
  const auto cols2 = degree_filtration(2);
  const RowSpan s2 = element_span(r2.kernel_basis, cols2);
  CHECK(s2.contains(coords(sl2_casimir() - AlgebraElement::scalar(Poly(9L)), cols2)));
}

TEST_CASE("Kernel on Q(lam) is zero up to degree 2") {
  for (const Rational& lam : {Rational(1, 2), Rational(1, 3)}) {
    const ModulePtr h = make_Q(Poly(lam), 8, 8);
    const KernelReport r = ann_kernel(h, 2);
    CHECK(r.kernel_dim == 0);
    CHECK(r.probes == 588);  // 84 barred monomials of degree <= 6 times 7 depths
    CHECK(ann_kernel(h, 1).kernel_dim == 0);
  }
}

TEST_CASE("Kernel on the Verma module matches the central-character ideal") {
  const ModulePtr h = make_verma(Poly(-1L), Poly(1L), 6);
  const KernelReport r = ann_kernel(h, 2);
  REQUIRE(r.kernel_dim == 2);

  // Both directions: each kernel element lies in I(1,1), and both generators
  // lie in the kernel span.
  const IdealSpec ideal = IdealSpec::i_chi_theta(Rational(1), Rational(1));
  for (const AlgebraElement& x : r.kernel_basis) CHECK(ideal_membership(x, ideal));
  const auto cols = degree_filtration(2);
  const RowSpan s = element_span(r.kernel_basis, cols);
  CHECK(s.contains(coords(central_C() - AlgebraElement::one(), cols)));
  CHECK(s.contains(coords(central_Cbar() - AlgebraElement::one(), cols)));
}

TEST_CASE("Kernel on N(1,2,-1) lands inside I(0,0)") {
  const ModulePtr h = make_N_abc(Rational(1), Rational(2), Rational(-1), 8);
  const KernelReport r = ann_kernel(h, 2);
  REQUIRE(r.kernel_dim == 2);
  const IdealSpec ideal = IdealSpec::i_chi_theta(Rational(0), Rational(0));
  for (const AlgebraElement& x : r.kernel_basis) CHECK(ideal_membership(x, ideal));
  const auto cols = degree_filtration(2);
  const RowSpan s = element_span(r.kernel_basis, cols);
  CHECK(s.contains(coords(central_C(), cols)));
  CHECK(s.contains(coords(central_Cbar(), cols)));
}

TEST_CASE("Kernel soundness and degree monotonicity") {
  const ModulePtr h = make_verma(Poly(-1L), Poly(1L), 6);
  const KernelReport r2 = ann_kernel(h, 2);
  const KernelReport r3 = ann_kernel(h, 3);

  // Soundness: kernel elements kill random interior vectors exactly.
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < h->dim(); ++i)
    if (h->margin(i) >= 2) interior.push_back(i);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int t = 0; t < 50; ++t) {
    ModuleVector v = h->zero();
    for (int s = 0; s < 3; ++s) v.add_term(interior[pick(rng)], Poly(Rational(coeff(rng))));
    for (const AlgebraElement& x : r2.kernel_basis) CHECK(act(x, v).is_zero());
  }

  // Monotonicity: the degree-2 kernel embeds into the degree-3 kernel span.
  const auto cols3 = degree_filtration(3);
  const RowSpan s3 = element_span(r3.kernel_basis, cols3);
  for (const AlgebraElement& x : r2.kernel_basis) CHECK(s3.contains(coords(x, cols3)));

  CHECK_THROWS_AS(ann_kernel(make_L(Poly(Rational(1, 2)), 2), 3), TruncationTooShallow);
}

TEST_CASE("Ideal membership through the central-character reduction") {
  const IdealSpec ideal = IdealSpec::i_chi_theta(Rational(1), Rational(1));
  CHECK(ideal_membership(central_C() - AlgebraElement::one(), ideal));
  CHECK_FALSE(ideal_membership(gen(Generator::E), ideal));
  // Two-sided combination (C-1) f + fb (Cb-1).
  const AlgebraElement x = (central_C() - AlgebraElement::one()) * gen(Generator::F) +
                           gen(Generator::FB) * (central_Cbar() - AlgebraElement::one());
  CHECK(ideal_membership(x, ideal));
  CHECK_THROWS_AS(ideal_membership(gen(Generator::E), IdealSpec::frak_i(Rational(2))),
                  Unsupported);
  CHECK_THROWS_AS(ideal_membership(gen(Generator::E), IdealSpec::frak_f(3)), Unsupported);
  CHECK(IdealSpec::i_chi_theta(Rational(1, 2), Rational(3)).str() == "I(chi=1/2, theta=3)");
  CHECK(IdealSpec::frak_f(3).str() == "frak_f(n=3)");
}

TEST_CASE("Annihilation witnesses on Q(1/2)") {
  const Rational lam(1, 2);
  const ModulePtr h = make_Q(Poly(lam), 6, 6);
  const ModuleVector anchor = h->basis_vector(h->anchor_index());

  const ModuleVector u = annihilation_witness(h, gen(Generator::EB));
  CHECK(u == anchor);
  CHECK_FALSE(act(gen(Generator::EB), u).is_zero());

  // h - (lam - 4) acts by 4 - 2m on 1 (x) f^m v: zero only at m = 2, so the
  // scan certifies non-annihilation at the anchor already.
  const AlgebraElement x = gen(Generator::H) + AlgebraElement::scalar(Poly(Rational(7, 2)));
  CHECK(annihilation_witness(h, x) == anchor);
  const ModuleVector u2 = h->basis_vector(h->find_label({0, 0, 0, 2}).value());
  CHECK(act(x, u2).is_zero());

  // An element vanishing on every exactly reachable scan vector is reported
  // as out of reach, not as an annihilator.
  AlgebraElement far = AlgebraElement::one();
  for (int m = 0; m <= 3; ++m) {
    const Poly eigen = Poly(lam) - Poly(2L * m);
    far = far * (gen(Generator::H) - AlgebraElement::scalar(eigen));
  }
  CHECK_THROWS_AS(annihilation_witness(h, far), WitnessNotFound);

  CHECK_THROWS_AS(annihilation_witness(h, AlgebraElement()), InvalidParams);
  CHECK_THROWS_AS(annihilation_witness(make_L(Poly(2L), 0), gen(Generator::E)), InvalidParams);
}
