#pragma once

#include "takiff/algebra.hpp"
#include "takiff/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace takiff {

/// The pair of scalars (or parameter polynomials) fixing a central character:
/// C acts as theta, Cbar as chi.
struct CentralCharacter {
  Poly theta{0L};
  Poly chi{0L};

  /// Fully symbolic character: theta is the free parameter of that name and
  /// chi = s^2, so highest-weight specializations (chi a perfect square) stay
  /// polynomial in the parameters.
  static CentralCharacter symbolic();
  static CentralCharacter at(const Rational& theta, const Rational& chi);

  bool is_rational() const;
  /// The rational pair; requires is_rational().
  std::pair<Rational, Rational> rational_values() const;
};

/// Membership in the canonical basis A of the quotient: hb-exponent <= 1 and
/// no monomial carries both an eb-power and an f-power.
bool is_a_monomial(const Mono& m);

/// All A-monomials of total degree <= d, in (degree, lex) order.
std::vector<Mono> a_monomials(int max_degree);

/// Element of the central-character quotient written in the span of A.
/// Wraps its canonical lift to U(L); every stored monomial is an A-monomial
/// and no zero coefficients are kept.
class QuotientElement {
 public:
  QuotientElement() = default;

  /// Validates the A-span invariant; throws InvalidParams on violation.
  static QuotientElement from_reduced(AlgebraElement x);

  const AlgebraElement& element() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  int degree() const { return rep_.degree(); }
  std::string str() const { return rep_.str(); }

  bool operator==(const QuotientElement& o) const { return rep_ == o.rep_; }
  bool operator!=(const QuotientElement& o) const { return !(*this == o); }

  friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b);
  friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b);
  friend QuotientElement operator*(const Poly& c, const QuotientElement& a);

 private:
  AlgebraElement rep_;
};

/// Image of x in U(L)/(C - theta, Cbar - chi), expressed in the span of A.
/// Linear, idempotent on A-spans, multiplicative up to re-reduction.
QuotientElement reduce(const AlgebraElement& x, const CentralCharacter& cc);

/// Lift both factors, multiply in U(L), reduce.
QuotientElement quotient_mul(const QuotientElement& a, const QuotientElement& b,
                             const CentralCharacter& cc);

/// Verdict for one commutator identity family at one index tuple.
struct ClaimCheck {
  std::string family;
  bool applicable = true;  // false when the family is undefined at the tuple
  bool corrected = false;  // true when the known corrective term was added
  bool holds = false;
  AlgebraElement discrepancy;  // reduced LHS - RHS; zero iff holds
};

/// Checks the closed commutator formulas that drive the simplicity proof at
/// the index tuple (i, j, p, q, eps), with both sides reduced against cc.
/// One record per family; family names describe the acting generator and the
/// monomial family acted on.
std::vector<ClaimCheck> verify_claim1(int i, int j, int p, int q, int eps,
                                      const CentralCharacter& cc);

/// Outcome of the ideal-saturation schedule.
struct SaturationResult {
  bool reached_unit = false;
  std::vector<std::string> trace;  // one entry per primitive move
  QuotientElement last;            // final element reached
  unsigned steps = 0;              // primitive moves consumed
};

/// Drives the two-sided ideal generated by x to the unit, replaying the
/// simplicity proof: weight projection, the ad-towers by hb, eb, h, e down to
/// a pure eb-power, then the chi != 0 or theta != 0 multiplication ladder.
/// Every move (one ad, one left or right multiplication) costs one budget
/// step. Returns reached_unit = false when the budget runs out or when no
/// ladder applies (theta = chi = 0 from a positive eb-power).
/// Requires x != 0 and a rational cc; throws InvalidParams otherwise.
SaturationResult saturate_to_unit(const QuotientElement& x, const CentralCharacter& cc,
                                  unsigned budget);

}  // namespace takiff
