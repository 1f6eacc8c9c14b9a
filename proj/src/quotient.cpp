#include "takiff/quotient.hpp"

#include <set>

namespace takiff {

CentralCharacter CentralCharacter::symbolic() {
  return {Poly::param(Param::THETA), Poly::param(Param::S).pow(2)};
}

CentralCharacter CentralCharacter::at(const Rational& theta, const Rational& chi) {
  return {Poly(theta), Poly(chi)};
}

bool CentralCharacter::is_rational() const {
  return theta.is_constant() && chi.is_constant();
}

std::pair<Rational, Rational> CentralCharacter::rational_values() const {
  return {theta.constant(), chi.constant()};
}

bool is_a_monomial(const Mono& m) {
  return m[1] <= 1 && (m[2] == 0 || m[3] == 0);
}

std::vector<Mono> a_monomials(int max_degree) {
  std::vector<Mono> out;
  for (const Mono& m : degree_filtration(max_degree))
    if (is_a_monomial(m)) out.push_back(m);
  return out;
}

QuotientElement QuotientElement::from_reduced(AlgebraElement x) {
  for (const auto& [m, c] : x.terms())
    if (!is_a_monomial(m)) throw InvalidParams("term outside the basis A: " + x.str());
  QuotientElement r;
  r.rep_ = std::move(x);
  return r;
}

QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
  return QuotientElement::from_reduced(a.rep_ + b.rep_);
}

QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
  return QuotientElement::from_reduced(a.rep_ - b.rep_);
}

QuotientElement operator*(const Poly& c, const QuotientElement& a) {
  return QuotientElement::from_reduced(c * a.rep_);
}

namespace {

void push(std::map<Mono, Poly, MonoLess>& work, const Mono& m, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = work.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) work.erase(it);
  }
}

}  // namespace

QuotientElement reduce(const AlgebraElement& x, const CentralCharacter& cc) {
  std::map<Mono, Poly, MonoLess> work(x.terms().begin(), x.terms().end());
  AlgebraElement out;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Mono m = node.key();
    const Poly c = std::move(node.mapped());
    if (m[1] >= 2) {
      // hb^2 = chi - 4 fb eb; the barred block is commutative, so both
      // replacement monomials are still in PBW order.
      Mono a = m;
      a[1] -= 2;
      Mono b = a;
      b[0] += 1;
      b[2] += 1;
      push(work, a, c * cc.chi);
      push(work, b, Poly(-4L) * c);
    } else if (m[2] >= 1 && m[3] >= 1) {
      // One eb meets one f: eb f = theta/2 - (hb h)/2 - fb e, with the spare
      // barred factor commuted into the left block and the spare plain
      // factor re-straightened by the engine.
      Mono rest{0, 0, 0, m[3] - 1, m[4], m[5]};
      Mono scalar_part = m;
      scalar_part[2] -= 1;
      scalar_part[3] -= 1;
      push(work, scalar_part, rat(1, 2) * (c * cc.theta));

      Mono left_h{m[0], m[1] + 1, m[2] - 1, 0, 0, 0};
      AlgebraElement mid = AlgebraElement::monomial(left_h) *
                           (AlgebraElement::generator(Generator::H) *
                            AlgebraElement::monomial(rest));
      for (const auto& [mm, k] : mid.terms())
        push(work, mm, rat(-1, 2) * (c * k));

      Mono left_e{m[0] + 1, m[1], m[2] - 1, 0, 0, 0};
      AlgebraElement tail = AlgebraElement::monomial(left_e) *
                            (AlgebraElement::generator(Generator::E) *
                             AlgebraElement::monomial(rest));
      for (const auto& [mm, k] : tail.terms()) push(work, mm, -(c * k));
    } else {
      out.add_term(m, c);
    }
  }
  return QuotientElement::from_reduced(std::move(out));
}

QuotientElement quotient_mul(const QuotientElement& a, const QuotientElement& b,
                             const CentralCharacter& cc) {
  return reduce(a.element() * b.element(), cc);
}

namespace {

AlgebraElement gen(Generator g) { return AlgebraElement::generator(g); }

// (h + shift)^p as an element.
AlgebraElement hpow(long shift, int p) {
  return (gen(Generator::H) + AlgebraElement::scalar(Poly(shift))).pow(p);
}

AlgebraElement epow(int q) { return AlgebraElement::monomial(Mono{0, 0, 0, 0, 0, q}); }

// c * fb^i hb^eps eb^k f^j * hpoly * e^q; zero when any exponent is negative
// (the closed forms drop such terms).
AlgebraElement term(const Poly& c, int i, int eps, int k, int j,
                    const AlgebraElement& hpoly, int q) {
  if (i < 0 || k < 0 || j < 0 || q < 0) return {};
  return c * (AlgebraElement::monomial(Mono{i, eps, k, j, 0, 0}) * hpoly * epow(q));
}

ClaimCheck finish(ClaimCheck r, const AlgebraElement& lhs, const AlgebraElement& rhs,
                  const CentralCharacter& cc) {
  r.discrepancy = (reduce(lhs, cc) - reduce(rhs, cc)).element();
  r.holds = r.discrepancy.is_zero();
  return r;
}

ClaimCheck check_hb_f_family(int i, int j, int p, int q, int eps,
                             const CentralCharacter& cc) {
  ClaimCheck r{.family = "hb_on_f_family"};
  if (j < 1) {
    // Without an f-power the monomial belongs to the eb family.
    r.applicable = false;
    r.holds = true;
    return r;
  }
  AlgebraElement lhs =
      commutator(gen(Generator::HB), AlgebraElement::monomial(Mono{i, eps, 0, j, p, q}));
  const Poly& th = cc.theta;
  const Poly& ch = cc.chi;
  AlgebraElement rhs;
  if (eps == 1) {
    rhs += term(Poly(static_cast<long>(q)) * th, i, 1, 0, j - 1, hpow(2, p), q - 1);
    rhs += term(Poly(-2L * (q + j)), i + 1, 1, 0, j - 1, hpow(0, p), q);
    rhs += term(Poly(-static_cast<long>(q)) * ch, i, 0, 0, j - 1, hpow(2, p + 1), q - 1);
    rhs += term(Poly(2L * q) * th, i + 1, 0, 0, j - 2, hpow(2, p + 1), q - 1);
    rhs += term(Poly(-2L * q), i + 1, 1, 0, j - 2, hpow(3 - j, 1) * hpow(2, p + 1), q - 1);
    rhs += term(Poly(-4L * q), i + 2, 0, 0, j - 2, hpow(0, p + 1), q);
    rhs += term(Poly(-4L * q * (j - 2)), i + 2, 0, 0, j - 3,
                hpow(3 - j, 1) * hpow(2, p + 1), q - 1);
    if (j == 1) {
      // At j = 1 the closed form needs one cross-family term that its
      // negative-exponent convention drops; the commutator engine pins it.
      rhs += term(Poly(4L * q), i + 1, 0, 1, 0, hpow(2, p + 1), q - 1);
      r.corrected = true;
    }
  } else {
    rhs += term(Poly(static_cast<long>(q)) * th, i, 0, 0, j - 1, hpow(2, p), q - 1);
    rhs += term(Poly(-2L * (q + j)), i + 1, 0, 0, j - 1, hpow(0, p), q);
    rhs += term(Poly(-static_cast<long>(q)), i, 1, 0, j - 1, hpow(2, p + 1), q - 1);
    rhs += term(Poly(-2L * q * (j - 1)), i + 1, 0, 0, j - 2, hpow(2, p + 1), q - 1);
  }
  return finish(std::move(r), lhs, rhs, cc);
}

ClaimCheck check_weight(const char* name, const Mono& m, int weight,
                        const CentralCharacter& cc) {
  ClaimCheck r{.family = name};
  AlgebraElement src = AlgebraElement::monomial(m);
  AlgebraElement lhs = commutator(gen(Generator::H), src);
  return finish(std::move(r), lhs, Poly(static_cast<long>(weight)) * src, cc);
}

ClaimCheck check_e_on_barred(int i, int j, int eps, const CentralCharacter& cc) {
  ClaimCheck r{.family = "e_on_barred"};
  AlgebraElement lhs =
      commutator(gen(Generator::E), AlgebraElement::monomial(Mono{i, eps, j, 0, 0, 0}));
  AlgebraElement rhs;
  if (eps == 1) {
    rhs += term(Poly(static_cast<long>(i)) * cc.chi, i - 1, 0, j, 0, hpow(0, 0), 0);
    rhs += term(Poly(-(4L * i + 2)), i, 0, j + 1, 0, hpow(0, 0), 0);
  } else {
    rhs += term(Poly(static_cast<long>(i)), i - 1, 1, j, 0, hpow(0, 0), 0);
  }
  return finish(std::move(r), lhs, rhs, cc);
}

ClaimCheck check_f_on_ebar(int i, int eps, const CentralCharacter& cc) {
  ClaimCheck r{.family = "f_on_ebar_powers"};
  AlgebraElement lhs =
      commutator(gen(Generator::F), AlgebraElement::monomial(Mono{0, eps, i, 0, 0, 0}));
  AlgebraElement rhs;
  if (eps == 1) {
    rhs += term(Poly(4L * i + 2), 1, 0, i, 0, hpow(0, 0), 0);
    rhs += term(Poly(-static_cast<long>(i)) * cc.chi, 0, 0, i - 1, 0, hpow(0, 0), 0);
  } else {
    rhs += term(Poly(-static_cast<long>(i)), 0, 1, i - 1, 0, hpow(0, 0), 0);
  }
  return finish(std::move(r), lhs, rhs, cc);
}

ClaimCheck check_hb_e_family(int i, int j, int p, int q, int eps,
                             const CentralCharacter& cc) {
  ClaimCheck r{.family = "hb_on_eb_family"};
  AlgebraElement lhs =
      commutator(gen(Generator::HB), AlgebraElement::monomial(Mono{i, eps, j, 0, p, q}));
  AlgebraElement rhs = term(Poly(2L * q), i, eps, j + 1, 0, hpow(2, p), q - 1);
  return finish(std::move(r), lhs, rhs, cc);
}

ClaimCheck check_eb_e_family(int i, int j, int p, int q, int eps,
                             const CentralCharacter& cc) {
  ClaimCheck r{.family = "eb_on_eb_family"};
  AlgebraElement lhs =
      commutator(gen(Generator::EB), AlgebraElement::monomial(Mono{i, eps, j, 0, p, q}));
  AlgebraElement rhs = term(Poly(1L), i, eps, j + 1, 0, hpow(0, p) - hpow(2, p), q);
  return finish(std::move(r), lhs, rhs, cc);
}

}  // namespace

std::vector<ClaimCheck> verify_claim1(int i, int j, int p, int q, int eps,
                                      const CentralCharacter& cc) {
  std::vector<ClaimCheck> out;
  out.push_back(check_hb_f_family(i, j, p, q, eps, cc));
  out.push_back(check_weight("h_on_f_family", Mono{i, eps, 0, j, p, q},
                             2 * (q - i - j), cc));
  out.push_back(check_weight("h_on_eb_family", Mono{i, eps, j, 0, p, q},
                             2 * (q + j - i), cc));
  out.push_back(check_e_on_barred(i, j, eps, cc));
  out.push_back(check_f_on_ebar(i, eps, cc));
  out.push_back(check_hb_e_family(i, j, p, q, eps, cc));
  out.push_back(check_eb_e_family(i, j, p, q, eps, cc));
  return out;
}

namespace {

int max_exp(const QuotientElement& y, int slot) {
  int best = 0;
  for (const auto& [m, c] : y.element().terms()) best = std::max(best, m[slot]);
  return best;
}

int max_barred_grade(const QuotientElement& y) {
  int best = 0;
  for (const auto& [m, c] : y.element().terms())
    best = std::max(best, 2 * m[0] + m[1]);
  return best;
}

}  // namespace

SaturationResult saturate_to_unit(const QuotientElement& x, const CentralCharacter& cc,
                                  unsigned budget) {
  if (!cc.is_rational())
    throw InvalidParams("saturate_to_unit needs a rational central character");
  if (x.is_zero()) throw InvalidParams("saturate_to_unit needs a nonzero element");
  for (const auto& [m, c] : x.element().terms())
    if (!c.is_constant())
      throw InvalidParams("saturate_to_unit needs rational coefficients");
  auto [theta, chi] = cc.rational_values();

  SaturationResult res;
  QuotientElement y = x;

  auto spend = [&](const std::string& label) {
    if (res.steps >= budget) return false;
    ++res.steps;
    res.trace.push_back(label);
    return true;
  };
  auto give_up = [&](const std::string& why) {
    res.trace.push_back(why);
    res.last = y;
    return res;
  };
  auto ad = [&](Generator g) {
    return reduce(commutator(gen(g), y.element()), cc);
  };
  auto is_unit_multiple = [&] {
    const auto& t = y.element().terms();
    return t.size() == 1 && t.begin()->first == Mono{};
  };

  if (is_unit_multiple()) {
    res.reached_unit = true;
    res.last = y;
    return res;
  }

  // Project onto the ad_h eigencomponent of the leading term; the basis A is
  // ad_h diagonal, so the product of shifted ad_h factors is an exact cutoff.
  {
    std::set<int> weights;
    for (const auto& [m, c] : y.element().terms()) weights.insert(weight_of(m));
    int w0 = weight_of(y.element().terms().rbegin()->first);
    for (int w : weights) {
      if (w == w0) continue;
      if (!spend("project: (ad_h - " + std::to_string(w) + ")")) return give_up("budget exhausted");
      y = Poly(rat(1, w0 - w)) * (ad(Generator::H) - Poly(static_cast<long>(w)) * y);
    }
  }

  // Ad towers from the simplicity proof. Each loop strictly lowers its
  // exponent: ad_hb trades the top f-power for fb, ad_eb lowers h-powers,
  // ad_hb lowers e-powers once f and h are gone, ad_e walks the barred
  // grade 2i + eps down to pure eb-powers.
  while (max_exp(y, 3) > 0) {
    if (!spend("ad_hb")) return give_up("budget exhausted");
    y = ad(Generator::HB);
    if (y.is_zero()) return give_up("dead end: ad_hb vanished");
  }
  while (max_exp(y, 4) > 0) {
    if (!spend("ad_eb")) return give_up("budget exhausted");
    y = ad(Generator::EB);
    if (y.is_zero()) return give_up("dead end: ad_eb vanished");
  }
  while (max_exp(y, 5) > 0) {
    if (!spend("ad_hb")) return give_up("budget exhausted");
    y = ad(Generator::HB);
    if (y.is_zero()) return give_up("dead end: ad_hb vanished");
  }
  while (max_barred_grade(y) > 0) {
    if (!spend("ad_e")) return give_up("budget exhausted");
    y = ad(Generator::E);
    if (y.is_zero()) return give_up("dead end: ad_e vanished");
  }

  // y is now supported on pure eb-powers; filter down to a single one.
  while (y.element().terms().size() > 1) {
    int top = max_exp(y, 2);
    if (!spend("filter: ad_h - " + std::to_string(2 * top))) return give_up("budget exhausted");
    y = ad(Generator::H) - Poly(2L * top) * y;
  }
  y = Poly(Rational(1) / y.element().terms().begin()->second.constant()) * y;

  // Multiplication ladder: knock eb^s down to eb^{s-1} using whichever of
  // chi, theta is nonzero.
  while (true) {
    int s = y.element().terms().begin()->first[2];
    if (s == 0) {
      res.reached_unit = true;
      res.last = y;
      return res;
    }
    if (chi != 0) {
      if (!spend("ad_f")) return give_up("budget exhausted");
      QuotientElement hbe = Poly(rat(-1, s)) * reduce(commutator(gen(Generator::F), y.element()), cc);
      if (!spend("lmul_hb")) return give_up("budget exhausted");
      QuotientElement t1 = reduce(gen(Generator::HB) * hbe.element(), cc);
      if (!spend("lmul_fb")) return give_up("budget exhausted");
      QuotientElement t2 = reduce(gen(Generator::FB) * y.element(), cc);
      y = Poly(Rational(1) / chi) * (t1 + Poly(4L) * t2);
    } else if (theta != 0) {
      if (!spend("ad_f")) return give_up("budget exhausted");
      QuotientElement hbe = Poly(rat(-1, s)) * reduce(commutator(gen(Generator::F), y.element()), cc);
      if (!spend("ad_f")) return give_up("budget exhausted");
      QuotientElement fbe = Poly(rat(1, 4 * s - 2)) *
                            reduce(commutator(gen(Generator::F), hbe.element()), cc);
      if (!spend("rmul_f")) return give_up("budget exhausted");
      QuotientElement u1 = reduce(y.element() * gen(Generator::F), cc);
      if (!spend("rmul_h")) return give_up("budget exhausted");
      QuotientElement u2 = reduce(hbe.element() * gen(Generator::H), cc);
      if (!spend("rmul_e")) return give_up("budget exhausted");
      QuotientElement u3 = reduce(fbe.element() * gen(Generator::E), cc);
      y = Poly(Rational(2) / theta) * (u1 + Poly(rat(1, 2)) * u2 + u3);
    } else {
      return give_up("dead end: theta = chi = 0 leaves a proper ideal seed");
    }
    if (y.is_zero()) return give_up("dead end: ladder vanished");
    y = Poly(Rational(1) / y.element().terms().begin()->second.constant()) * y;
  }
}

}  // namespace takiff
