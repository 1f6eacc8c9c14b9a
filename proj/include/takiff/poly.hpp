#pragma once

#include "takiff/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace takiff {

/// The closed set of formal parameters. S stands for the square root of chi,
/// so chi = s^2 stays polynomial everywhere.
enum class Param : int { LAM = 0, S, THETA, MU, MUB, PA, PB, PC };

inline constexpr int kNumParams = 8;
inline constexpr std::array<const char*, kNumParams> kParamNames{
    "lam", "s", "theta", "mu", "mub", "pa", "pb", "pc"};

std::optional<Param> param_from_name(const std::string& name);

/// Exponent vector over the fixed parameter order.
using ParamExp = std::array<int, kNumParams>;

/// Graded-lex: total degree first, then lex on the fixed parameter order.
struct ParamExpLess {
  bool operator()(const ParamExp& a, const ParamExp& b) const;
};

/// Sparse multivariate polynomial over Rational in the fixed parameters.
/// Canonical: no zero coefficients stored, so structural equality is
/// mathematical equality.
class Poly {
 public:
  using TermMap = std::map<ParamExp, Rational, ParamExpLess>;

  Poly() = default;
  Poly(const Rational& c);
  Poly(long n);
  static Poly param(Param p, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws std::logic_error otherwise.
  Rational constant() const;
  int degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly pow(unsigned n) const;

  /// Substitutes bound parameters exactly; unbound ones stay formal.
  Poly eval(const std::map<Param, Rational>& bindings) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Terms joined in descending graded-lex order, e.g. "lam^2 + 2*theta - 1".
  std::string str() const;

  const TermMap& terms() const { return terms_; }
  void add_term(const ParamExp& e, const Rational& c);

 private:
  TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return Poly(c) * p; }

} // namespace takiff
