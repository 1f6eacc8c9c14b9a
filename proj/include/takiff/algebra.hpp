#pragma once

#include "takiff/poly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace takiff {

/// Generators in the fixed PBW order: fb, hb, eb are f, h, e tensored with t
/// (the "barred" copies, t^2 = 0), then the plain sl2 triple.
enum class Generator : int { FB = 0, HB, EB, F, H, E };

inline constexpr int kNumGens = 6;
inline constexpr std::array<const char*, kNumGens> kGenNames{"fb", "hb", "eb", "f", "h", "e"};

std::optional<Generator> generator_from_name(const std::string& name);

/// Brackets of two generators are always a single integer multiple of one
/// generator (or zero), so the table value is this pair.
struct GenBracket {
  long coeff;
  Generator gen;
};

/// Lie bracket table entry [x, y]; nullopt means zero.
std::optional<GenBracket> bracket_gen(Generator x, Generator y);

/// Exponent 6-tuple (i,j,k,p,q,l) for fb^i hb^j eb^k f^p h^q e^l.
using Mono = std::array<int, kNumGens>;

int mono_degree(const Mono& m);

/// Canonical term order: total degree, then lex on the exponent tuple.
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Element of U(L): finite sparse sum of Poly coefficients times PBW monomials.
/// No zero coefficients stored; structural equality is mathematical equality.
class AlgebraElement {
 public:
  using TermMap = std::map<Mono, Poly, MonoLess>;

  AlgebraElement() = default;

  static AlgebraElement one() { return monomial(Mono{}); }
  static AlgebraElement scalar(const Poly& c) { return monomial(Mono{}, c); }
  static AlgebraElement generator(Generator g);
  static AlgebraElement monomial(const Mono& m, const Poly& c = Poly(1L));

  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const TermMap& terms() const { return terms_; }
  void add_term(const Mono& m, const Poly& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  AlgebraElement operator-() const;
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Poly& c, const AlgebraElement& a);
  AlgebraElement pow(unsigned n) const;

  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  /// Canonical text, terms in (degree, lex) order: "2*eb*f + hb*h + 2*fb*e".
  std::string str() const;

 private:
  TermMap terms_;
};

/// [x, y] as a degree-<=1 element.
AlgebraElement bracket(Generator x, Generator y);

/// The product m1*m2 rewritten into PBW order. Exact; memoized.
AlgebraElement normalize_product(const Mono& m1, const Mono& m2);

inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

/// ab - ba in normal form.
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// (ad_x)^n (y).
AlgebraElement ad_power(const AlgebraElement& x, unsigned n, const AlgebraElement& y);

AlgebraElement central_C();     // hb*h + 2*fb*e + 2*eb*f
AlgebraElement central_Cbar();  // hb^2 + 4*fb*eb
AlgebraElement sl2_casimir();   // (h+1)^2 + 4*f*e, expanded

/// ad_h eigenvalue 2(k + l - i - p) of the monomial (i,j,k,p,q,l).
int weight_of(const Mono& m);

/// All PBW monomials of total degree <= d, in (degree, lex) order.
std::vector<Mono> degree_filtration(int d);

// Low-level straightening engine, shared with the module evaluation orders.
// A word is a sequence of generator indices (one byte each). straighten_word
// rewrites it into weakly increasing priority via xy -> yx + [x,y], leftmost
// out-of-order pair first; terminates by the (length, inversions) measure.
using Word = std::string;

Word mono_to_word(const Mono& m);

std::map<Word, Rational> straighten_word(const Word& w, const std::array<int, kNumGens>& priority);

} // namespace takiff
