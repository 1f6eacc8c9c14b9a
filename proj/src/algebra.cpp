#include <cctype>
#include "takiff/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace takiff {

std::optional<Generator> generator_from_name(const std::string& name) {
  for (int i = 0; i < kNumGens; ++i)
    if (name == kGenNames[i]) return static_cast<Generator>(i);
  return std::nullopt;
}

// sl2 structure constants on base indices f=0, h=1, e=2: [e,f]=h, [h,e]=2e,
// [h,f]=-2f. Returns {coeff, base index} or nullopt.
static std::optional<std::pair<long, int>> sl2_bracket(int x, int y) {
  if (x == y) return std::nullopt;
  if (x == 2 && y == 0) return {{1, 1}};
  if (x == 0 && y == 2) return {{-1, 1}};
  if (x == 1 && y == 2) return {{2, 2}};
  if (x == 2 && y == 1) return {{-2, 2}};
  if (x == 1 && y == 0) return {{-2, 0}};
  if (x == 0 && y == 1) return {{2, 0}};
  return std::nullopt;
}

std::optional<GenBracket> bracket_gen(Generator x, Generator y) {
  int xi = static_cast<int>(x), yi = static_cast<int>(y);
  int bars = (xi < 3) + (yi < 3);
  if (bars == 2) return std::nullopt; // t^2 = 0
  auto base = sl2_bracket(xi % 3, yi % 3);
  if (!base) return std::nullopt;
  int gen = bars == 1 ? base->second : base->second + 3;
  return GenBracket{base->first, static_cast<Generator>(gen)};
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (int x : m) d += x;
  return d;
}

AlgebraElement AlgebraElement::generator(Generator g) {
  Mono m{};
  m[static_cast<int>(g)] = 1;
  return monomial(m);
}

AlgebraElement AlgebraElement::monomial(const Mono& m, const Poly& c) {
  AlgebraElement r;
  r.add_term(m, c);
  return r;
}

int AlgebraElement::degree() const {
  return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first);
}

void AlgebraElement::add_term(const Mono& m, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

AlgebraElement operator*(const Poly& c, const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& [m, x] : a.terms()) r.add_term(m, c * x);
  return r;
}

AlgebraElement AlgebraElement::pow(unsigned n) const {
  AlgebraElement r = one();
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

Word mono_to_word(const Mono& m) {
  Word w;
  for (int g = 0; g < kNumGens; ++g)
    for (int k = 0; k < m[g]; ++k) w.push_back(static_cast<char>(g));
  return w;
}

std::map<Word, Rational> straighten_word(const Word& w,
                                         const std::array<int, kNumGens>& priority) {
  std::map<Word, Rational> work{{w, Rational(1)}}, done;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Word& word = node.key();
    Rational c = std::move(node.mapped());
    int swap_at = -1;
    for (int t = 0; t + 1 < static_cast<int>(word.size()); ++t)
      if (priority[static_cast<int>(word[t])] > priority[static_cast<int>(word[t + 1])]) {
        swap_at = t;
        break;
      }
    if (swap_at < 0) {
      auto [it, fresh] = done.emplace(word, c);
      if (!fresh && (it->second += c) == 0) done.erase(it);
      continue;
    }
    Word swapped = word;
    std::swap(swapped[swap_at], swapped[swap_at + 1]);
    auto [it, fresh] = work.emplace(std::move(swapped), c);
    if (!fresh && (it->second += c) == 0) work.erase(it);
    auto br = bracket_gen(static_cast<Generator>(word[swap_at]),
                          static_cast<Generator>(word[swap_at + 1]));
    if (br) {
      Word shorter = word.substr(0, swap_at);
      shorter.push_back(static_cast<char>(br->gen));
      shorter += word.substr(swap_at + 2);
      Rational cc = c * br->coeff;
      auto [it2, fresh2] = work.emplace(std::move(shorter), cc);
      if (!fresh2 && (it2->second += cc) == 0) work.erase(it2);
    }
  }
  return done;
}

static const std::array<int, kNumGens> kCanonicalPriority{0, 1, 2, 3, 4, 5};

static Mono word_to_mono_sorted(const Word& w) {
  Mono m{};
  for (char g : w) ++m[static_cast<int>(g)];
  return m;
}

AlgebraElement normalize_product(const Mono& m1, const Mono& m2) {
  static std::map<std::pair<Mono, Mono>, AlgebraElement> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({m1, m2});
    if (it != cache.end()) return it->second;
  }
  AlgebraElement r;
  for (const auto& [word, c] : straighten_word(mono_to_word(m1) + mono_to_word(m2),
                                               kCanonicalPriority))
    r.add_term(word_to_mono_sorted(word), Poly(c));
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(m1, m2), r);
  return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Poly c = ca * cb;
      AlgebraElement prod = normalize_product(ma, mb);
      for (const auto& [m, k] : prod.terms()) r.add_term(m, c * k);
    }
  return r;
}

AlgebraElement bracket(Generator x, Generator y) {
  auto br = bracket_gen(x, y);
  if (!br) return {};
  return Poly(Rational(br->coeff)) * AlgebraElement::generator(br->gen);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return a * b - b * a;
}

AlgebraElement ad_power(const AlgebraElement& x, unsigned n, const AlgebraElement& y) {
  AlgebraElement r = y;
  for (unsigned i = 0; i < n; ++i) r = commutator(x, r);
  return r;
}

AlgebraElement central_C() {
  AlgebraElement r;
  r.add_term(Mono{0, 1, 0, 0, 1, 0}, Poly(1L));
  r.add_term(Mono{1, 0, 0, 0, 0, 1}, Poly(2L));
  r.add_term(Mono{0, 0, 1, 1, 0, 0}, Poly(2L));
  return r;
}

AlgebraElement central_Cbar() {
  AlgebraElement r;
  r.add_term(Mono{0, 2, 0, 0, 0, 0}, Poly(1L));
  r.add_term(Mono{1, 0, 1, 0, 0, 0}, Poly(4L));
  return r;
}

AlgebraElement sl2_casimir() {
  AlgebraElement r;
  r.add_term(Mono{0, 0, 0, 0, 2, 0}, Poly(1L));
  r.add_term(Mono{0, 0, 0, 0, 1, 0}, Poly(2L));
  r.add_term(Mono{}, Poly(1L));
  r.add_term(Mono{0, 0, 0, 1, 0, 1}, Poly(4L));
  return r;
}

int weight_of(const Mono& m) { return 2 * (m[2] + m[5] - m[0] - m[3]); }

static void enumerate_rec(int pos, int left, Mono& m, std::vector<Mono>& out) {
  if (pos == kNumGens) {
    out.push_back(m);
    return;
  }
  for (int x = 0; x <= left; ++x) {
    m[pos] = x;
    enumerate_rec(pos + 1, left - x, m, out);
  }
  m[pos] = 0;
}

std::vector<Mono> degree_filtration(int d) {
  std::vector<Mono> out;
  Mono m{};
  enumerate_rec(0, d, m, out);
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

// ---- printing ----

static std::string mono_str(const Mono& m) {
  std::string s;
  for (int g = 0; g < kNumGens; ++g) {
    if (m[g] == 0) continue;
    if (!s.empty()) s += "*";
    s += kGenNames[g];
    if (m[g] > 1) s += "^" + std::to_string(m[g]);
  }
  return s;
}

// A leading "-name^k" would reparse as (-name)^k, so such bodies get an
// explicit "-1*" prefix instead of a bare sign.
static bool needs_sign_guard(const std::string& body) {
  std::size_t i = 0;
  while (i < body.size() &&
         (std::isalnum(static_cast<unsigned char>(body[i])) || body[i] == '/'))
    ++i;
  return i > 0 && i < body.size() && body[i] == '^';
}

std::string AlgebraElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string ms = mono_str(m);
    bool neg = false;
    std::string body;
    if (c.is_constant()) {
      Rational v = c.constant();
      neg = v < 0;
      Rational av = neg ? Rational(-v) : v;
      body = ms.empty() ? rat_str(av) : (av == 1 ? ms : rat_str(av) + "*" + ms);
    } else {
      std::string cs = c.str();
      bool multi = cs.find(" + ") != std::string::npos ||
                   cs.find(" - ") != std::string::npos;
      if (!multi && cs[0] == '-') {
        neg = true;
        cs.erase(0, 1);
      }
      body = multi ? "(" + cs + ")" : cs;
      if (!ms.empty()) body += "*" + ms;
    }
    if (out.empty())
      out = neg ? (needs_sign_guard(body) ? "-1*" + body : "-" + body) : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

} // namespace takiff
