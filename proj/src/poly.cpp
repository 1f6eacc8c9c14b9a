#include "takiff/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace takiff {

std::optional<Param> param_from_name(const std::string& name) {
  for (int i = 0; i < kNumParams; ++i)
    if (name == kParamNames[i]) return static_cast<Param>(i);
  return std::nullopt;
}

static int total_degree(const ParamExp& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool ParamExpLess::operator()(const ParamExp& a, const ParamExp& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(ParamExp{}, c);
}

Poly::Poly(long n) : Poly(Rational(n)) {}

Poly Poly::param(Param p, int exp) {
  Poly r;
  if (exp < 0) throw std::invalid_argument("negative parameter exponent");
  ParamExp e{};
  e[static_cast<int>(p)] = exp;
  r.terms_.emplace(e, Rational(1));
  return r;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ParamExp{});
}

Rational Poly::constant() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("Poly::constant on non-constant polynomial");
  return terms_.begin()->second;
}

int Poly::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

void Poly::add_term(const ParamExp& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      ParamExp e;
      for (int i = 0; i < kNumParams; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, Rational(ca * cb));
    }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rational(-c));
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r(1L);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

Poly Poly::eval(const std::map<Param, Rational>& bindings) const {
  Poly r;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    ParamExp rest = e;
    for (const auto& [p, x] : bindings) {
      int idx = static_cast<int>(p);
      for (int k = 0; k < e[idx]; ++k) v *= x;
      rest[idx] = 0;
    }
    r.add_term(rest, v);
  }
  return r;
}

// One monomial, without its coefficient: "lam^2*s" ("" for the constant term).
static std::string mono_str(const ParamExp& e) {
  std::string s;
  for (int i = 0; i < kNumParams; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += kParamNames[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational ac = c < 0 ? Rational(-c) : c;
    std::string m = mono_str(e);
    std::string body = m.empty() ? rat_str(ac) : (ac == 1 ? m : rat_str(ac) + "*" + m);
    if (out.empty())
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out;
}

} // namespace takiff
