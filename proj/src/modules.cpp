#include "takiff/modules.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace takiff {

namespace {

void add_poly(std::map<std::size_t, Poly>& m, std::size_t j, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

void add_rat(std::map<std::array<int, 3>, Rational>& m, const std::array<int, 3>& k,
             const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

Rational rat_pow(const Rational& b, int e) {
  Rational r(1);
  for (int t = 0; t < e; ++t) r *= b;
  return r;
}

Rational binom_rat(int n, int k) {
  Rational r(1);
  for (int t = 1; t <= k; ++t) r = r * Rational(n - t + 1) / Rational(t);
  return r;
}

Rational rat_coeff(const Poly& p) {
  if (!p.is_constant())
    throw InvalidParams("symbolic coefficient where a rational value is required");
  return p.constant();
}

int gen_weight(Generator g) {
  switch (g) {
    case Generator::FB:
    case Generator::F:
      return -2;
    case Generator::HB:
    case Generator::H:
      return 0;
    default:
      return 2;
  }
}

// Highest-weight factor bounds: complete at integral lambda, else truncated.
struct LBounds {
  bool finite;
  int mmax;
};

LBounds l_bounds(const Poly& lambda, int depth) {
  if (lambda.is_constant()) {
    const Rational lc = lambda.constant();
    if (lc.get_den() == 1 && lc.get_num() >= 0) {
      if (lc.get_num() > 100000)
        throw InvalidParams("integral highest weight too large to realize");
      return {true, static_cast<int>(lc.get_num().get_si())};
    }
  }
  return {false, depth};
}

// Straightening priorities, indexed by Generator: value = rank in the target
// normal order.
constexpr std::array<int, kNumGens> kVermaPriority{1, 3, 5, 0, 2, 4};    // f fb h hb e eb
constexpr std::array<int, kNumGens> kInducedPriority{3, 4, 5, 0, 1, 2};  // f h e fb hb eb

// hb^j -> (chi - 4 fb eb)^(j/2) hb^(j mod 2), expanded binomially over the
// commuting barred letters; accumulates coefficients on (i', eps, k').
void chi_push(std::map<std::array<int, 3>, Poly>& acc, int i, int j, int k, const Poly& c,
              const Poly& chi) {
  const int s = j / 2, eps = j % 2;
  Poly minus4t(1L);
  for (int t = 0; t <= s; ++t) {
    const Poly val = c * Poly(binom_rat(s, t)) * chi.pow(s - t) * minus4t;
    if (!val.is_zero()) {
      const std::array<int, 3> key{i + t, eps, k + t};
      auto [it, inserted] = acc.try_emplace(key, val);
      if (!inserted) {
        it->second += val;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
    minus4t = Poly(-4L) * minus4t;
  }
}

}  // namespace

const char* kind_name(ModuleKind k) {
  switch (k) {
    case ModuleKind::L:
      return "l";
    case ModuleKind::VERMA:
      return "verma";
    case ModuleKind::Q:
      return "q";
    case ModuleKind::Q_CHI:
      return "q_chi";
    case ModuleKind::Q_CHI_THETA:
      return "q_chi_theta";
    case ModuleKind::M_ABC:
      return "m_abc";
    case ModuleKind::N_ABC:
      return "n_abc";
    case ModuleKind::TENSOR:
      return "tensor";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ModuleVector

void ModuleVector::add_term(std::size_t index, const Poly& c) { add_poly(terms_, index, c); }

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  if (!handle_) handle_ = o.handle_;
  else if (o.handle_ && o.handle_.get() != handle_.get())
    throw InvalidParams("module vectors belong to different modules");
  for (const auto& [i, c] : o.terms_) add_term(i, c);
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  if (!handle_) handle_ = o.handle_;
  else if (o.handle_ && o.handle_.get() != handle_.get())
    throw InvalidParams("module vectors belong to different modules");
  for (const auto& [i, c] : o.terms_) add_term(i, -c);
  return *this;
}

ModuleVector operator*(const Poly& c, ModuleVector v) {
  if (c.is_zero()) {
    v.terms_.clear();
    return v;
  }
  for (auto& [i, p] : v.terms_) p = c * p;
  return v;
}

std::string ModuleVector::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    const std::string ls = "[" + (handle_ ? handle_->label(i) : std::to_string(i)) + "]";
    bool neg = false;
    std::string body;
    if (c == Poly(1L)) {
      body = ls;
    } else if (c == Poly(-1L)) {
      neg = true;
      body = ls;
    } else {
      std::string cs = c.str();
      const bool multi =
          cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      if (!multi && cs[0] == '-') {
        neg = true;
        cs.erase(0, 1);
      }
      body = (multi ? "(" + cs + ")" : cs) + "*" + ls;
    }
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// TakiffModule accessors

std::string TakiffModule::label(std::size_t i) const {
  const auto& t = labels_.at(i);
  const auto append_pow = [](std::string& s, const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += name;
    if (e > 1) {
      s += '^';
      s += std::to_string(e);
    }
  };
  switch (kind_) {
    case ModuleKind::L: {
      std::string s;
      append_pow(s, "f", t[0]);
      if (!s.empty()) s += ' ';
      return s + "v";
    }
    case ModuleKind::VERMA: {
      std::string s;
      append_pow(s, "f", t[0]);
      append_pow(s, "fb", t[1]);
      if (!s.empty()) s += ' ';
      return s + "v";
    }
    case ModuleKind::Q:
    case ModuleKind::Q_CHI: {
      std::string g;
      append_pow(g, "fb", t[0]);
      append_pow(g, "hb", t[1]);
      append_pow(g, "eb", t[2]);
      if (g.empty()) g = "1";
      std::string l;
      append_pow(l, "f", t[3]);
      if (!l.empty()) l += ' ';
      return g + " (x) " + l + "v";
    }
    case ModuleKind::Q_CHI_THETA:
      return coset_labels_.at(i);
    case ModuleKind::M_ABC: {
      std::string s;
      append_pow(s, "f", t[0]);
      append_pow(s, "h", t[1]);
      append_pow(s, "e", t[2]);
      if (s.empty()) s = "1";
      return s + " (x) 1";
    }
    case ModuleKind::N_ABC: {
      std::string s;
      append_pow(s, "f", t[0]);
      append_pow(s, "h", t[1]);
      if (!s.empty()) s += ' ';
      return s + "1N";
    }
    case ModuleKind::TENSOR:
      return factors_[0]->label(static_cast<std::size_t>(t[0])) + " (x) " +
             factors_[1]->label(static_cast<std::size_t>(t[1]));
  }
  return "?";
}

std::optional<std::size_t> TakiffModule::find_label(const std::array<int, 4>& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Poly& TakiffModule::anchor_weight() const {
  if (!weight_module_) throw InvalidParams(std::string(kind_name(kind_)) + " is not a weight module");
  return anchor_;
}

int TakiffModule::weight_offset(std::size_t i) const {
  if (!weight_module_) throw InvalidParams(std::string(kind_name(kind_)) + " is not a weight module");
  return offsets_.at(i);
}

std::vector<std::size_t> TakiffModule::weight_space(int offset) const {
  if (!weight_module_) throw InvalidParams(std::string(kind_name(kind_)) + " is not a weight module");
  auto it = weight_index_.find(offset);
  if (it == weight_index_.end()) return {};
  return it->second;
}

const std::map<int, std::vector<std::size_t>>& TakiffModule::weight_spaces() const {
  if (!weight_module_) throw InvalidParams(std::string(kind_name(kind_)) + " is not a weight module");
  return weight_index_;
}

bool TakiffModule::generator_exact(Generator g, std::size_t i) const {
  return !escape_[static_cast<int>(g)].at(i);
}

const std::map<std::size_t, Poly>& TakiffModule::gen_column(Generator g, std::size_t i) const {
  if (escape_[static_cast<int>(g)].at(i))
    throw std::logic_error("gen_column queried on an escaping basis vector");
  return cols_[static_cast<int>(g)][i];
}

ModuleVector TakiffModule::basis_vector(std::size_t i) const {
  if (i >= labels_.size()) throw InvalidParams("basis index out of range");
  ModuleVector v(shared_from_this());
  v.add_term(i, Poly(1L));
  return v;
}

ModuleVector TakiffModule::zero() const { return ModuleVector(shared_from_this()); }

void TakiffModule::finalize() {
  const std::size_t n = labels_.size();
  rational_params_ = true;
  for (const auto& [name, p] : params_)
    if (!p.is_constant()) rational_params_ = false;
  if (kind_ == ModuleKind::TENSOR)
    rational_params_ = factors_[0]->rational_params() && factors_[1]->rational_params();

  if (weight_module_)
    for (std::size_t i = 0; i < n; ++i) weight_index_[offsets_[i]].push_back(i);

  // Escape distance: margin 0 at an escaping label, else one more than the
  // closest escape reachable through any generator image (Bellman-Ford).
  margins_.assign(n, kMarginInfinite);
  for (std::size_t i = 0; i < n; ++i) {
    for (int g = 0; g < kNumGens; ++g)
      if (escape_[g][i]) margins_[i] = 0;
    if (!margin_cap_.empty()) margins_[i] = std::min(margins_[i], margin_cap_[i]);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (margins_[i] == 0) continue;
      int best = kMarginInfinite;
      for (int g = 0; g < kNumGens; ++g)
        for (const auto& [j, c] : cols_[g][i]) best = std::min(best, margins_[j] + 1);
      if (best < margins_[i]) {
        margins_[i] = best;
        changed = true;
      }
    }
  }

  if (kind_ == ModuleKind::TENSOR) {
    descriptor_ = "tensor(" + factors_[0]->descriptor() + " (x) " + factors_[1]->descriptor() + ")";
  } else {
    descriptor_ = kind_name(kind_);
    descriptor_ += '(';
    bool first = true;
    for (const auto& [k, v] : params_) {
      if (!first) descriptor_ += ", ";
      descriptor_ += k + "=" + v.str();
      first = false;
    }
    if (!depths_.empty()) {
      descriptor_ += "; ";
      first = true;
      for (const auto& [k, v] : depths_) {
        if (!first) descriptor_ += ", ";
        descriptor_ += k + "=" + std::to_string(v);
        first = false;
      }
    }
    descriptor_ += ')';
  }
}

// ---------------------------------------------------------------------------
// Factories

ModulePtr make_L(const Poly& lambda, int depth) {
  if (depth < 0) throw InvalidParams("make_L: depth must be nonnegative");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::L;
  h->params_ = {{"lam", lambda}};
  h->depths_ = {{"depth", depth}};
  const LBounds lb = l_bounds(lambda, depth);
  for (int m = 0; m <= lb.mmax; ++m) {
    h->index_[{m, 0, 0, 0}] = h->labels_.size();
    h->labels_.push_back({m, 0, 0, 0});
  }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  h->weight_module_ = true;
  h->anchor_ = lambda;
  h->offsets_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int m = h->labels_[i][0];
    h->offsets_[i] = -2 * m;
    add_poly(h->cols_[static_cast<int>(Generator::H)][i], i, lambda - Poly(2L * m));
    if (m > 0)
      add_poly(h->cols_[static_cast<int>(Generator::E)][i], i - 1,
               Poly(static_cast<long>(m)) * (lambda - Poly(static_cast<long>(m) - 1)));
    if (m < lb.mmax)
      add_poly(h->cols_[static_cast<int>(Generator::F)][i], i + 1, Poly(1L));
    else if (!lb.finite)
      h->escape_[static_cast<int>(Generator::F)][i] = 1;
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

ModulePtr make_verma(const Poly& mu, const Poly& mub, int depth) {
  if (depth < 1) throw InvalidParams("make_verma: depth must be at least 1");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::VERMA;
  h->params_ = {{"mu", mu}, {"mub", mub}};
  h->depths_ = {{"depth", depth}};
  for (int d = 0; d <= depth; ++d)
    for (int a = 0; a <= d; ++a) {
      h->index_[{a, d - a, 0, 0}] = h->labels_.size();
      h->labels_.push_back({a, d - a, 0, 0});
    }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  h->weight_module_ = true;
  h->anchor_ = mu;
  h->offsets_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = h->labels_[i][0], b = h->labels_[i][1];
    h->offsets_[i] = -2 * (a + b);
    for (int g = 0; g < kNumGens; ++g) {
      Word w;
      w.push_back(static_cast<char>(g));
      w.append(static_cast<std::size_t>(a), static_cast<char>(Generator::F));
      w.append(static_cast<std::size_t>(b), static_cast<char>(Generator::FB));
      std::map<std::size_t, Poly> col;
      bool esc = false;
      for (const auto& [word, r] : straighten_word(w, kVermaPriority)) {
        std::array<int, kNumGens> cnt{};
        for (char ch : word) ++cnt[static_cast<int>(static_cast<unsigned char>(ch))];
        if (cnt[static_cast<int>(Generator::E)] || cnt[static_cast<int>(Generator::EB)]) continue;
        const int fa = cnt[static_cast<int>(Generator::F)];
        const int fb = cnt[static_cast<int>(Generator::FB)];
        if (fa + fb > depth) {
          esc = true;
          break;
        }
        Poly c{r};
        if (const int e = cnt[static_cast<int>(Generator::H)]; e > 0) c = c * mu.pow(e);
        if (const int e = cnt[static_cast<int>(Generator::HB)]; e > 0) c = c * mub.pow(e);
        add_poly(col, h->index_.at({fa, fb, 0, 0}), c);
      }
      if (esc)
        h->escape_[g][i] = 1;
      else
        h->cols_[g][i] = std::move(col);
    }
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

namespace {

// Shared basis/column assembly for Q(lambda) and Q(lambda, chi). with_chi
// selects the hb-reduced labels (i, eps, k) over the plain (i, j, k).
void build_induced_q(TakiffModule& M, const Poly& lambda, const Poly* chi, int depth_gbar,
                     int depth_L, std::vector<std::array<int, 4>>& labels,
                     std::map<std::array<int, 4>, std::size_t>& index) {
  const LBounds lb = l_bounds(lambda, depth_L);
  for (int d = 0; d <= depth_gbar; ++d)
    for (int i = 0; i <= d; ++i) {
      const int jmax = chi ? std::min(1, d - i) : d - i;
      for (int j = 0; j <= jmax; ++j) {
        const int k = d - i - j;
        for (int m = 0; m <= lb.mmax; ++m) {
          index[{i, j, k, m}] = labels.size();
          labels.push_back({i, j, k, m});
        }
      }
    }
  (void)M;
}

}  // namespace

ModulePtr make_Q(const Poly& lambda, int depth_gbar, int depth_L) {
  if (depth_gbar < 0 || depth_L < 0) throw InvalidParams("make_Q: depths must be nonnegative");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::Q;
  h->params_ = {{"lam", lambda}};
  h->depths_ = {{"depth_gbar", depth_gbar}, {"depth_L", depth_L}};
  const LBounds lb = l_bounds(lambda, depth_L);
  build_induced_q(*h, lambda, nullptr, depth_gbar, depth_L, h->labels_, h->index_);
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  h->weight_module_ = true;
  h->anchor_ = lambda;
  h->offsets_.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto [i, j, k, m] = h->labels_[idx];
    const int d = i + j + k;
    h->offsets_[idx] = 2 * (k - i) - 2 * m;
    // Barred generators: left multiplication in the polynomial gbar-factor.
    if (d == depth_gbar) {
      h->escape_[static_cast<int>(Generator::FB)][idx] = 1;
      h->escape_[static_cast<int>(Generator::HB)][idx] = 1;
      h->escape_[static_cast<int>(Generator::EB)][idx] = 1;
    } else {
      h->cols_[static_cast<int>(Generator::FB)][idx][h->index_.at({i + 1, j, k, m})] = Poly(1L);
      h->cols_[static_cast<int>(Generator::HB)][idx][h->index_.at({i, j + 1, k, m})] = Poly(1L);
      h->cols_[static_cast<int>(Generator::EB)][idx][h->index_.at({i, j, k + 1, m})] = Poly(1L);
    }
    // sl2 generators: derivation on the gbar-factor plus the L(lambda) action.
    for (Generator g : {Generator::F, Generator::H, Generator::E}) {
      std::map<std::size_t, Poly> col;
      bool esc = false;
      const AlgebraElement ad = commutator(AlgebraElement::generator(g),
                                           AlgebraElement::monomial(Mono{i, j, k, 0, 0, 0}));
      for (const auto& [mm, c] : ad.terms()) {
        if (mm[3] || mm[4] || mm[5]) throw std::logic_error("sl2 bracket left the gbar-factor");
        add_poly(col, h->index_.at({mm[0], mm[1], mm[2], m}), c);
      }
      if (g == Generator::H) add_poly(col, idx, lambda - Poly(2L * m));
      if (g == Generator::E && m > 0)
        add_poly(col, h->index_.at({i, j, k, m - 1}),
                 Poly(static_cast<long>(m)) * (lambda - Poly(static_cast<long>(m) - 1)));
      if (g == Generator::F) {
        if (m < lb.mmax)
          add_poly(col, h->index_.at({i, j, k, m + 1}), Poly(1L));
        else if (!lb.finite)
          esc = true;
      }
      if (esc)
        h->escape_[static_cast<int>(g)][idx] = 1;
      else
        h->cols_[static_cast<int>(g)][idx] = std::move(col);
    }
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

ModulePtr make_Q_chi(const Poly& lambda, const Poly& chi, int depth_gbar, int depth_L) {
  if (depth_gbar < 0 || depth_L < 0)
    throw InvalidParams("make_Q_chi: depths must be nonnegative");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::Q_CHI;
  h->params_ = {{"lam", lambda}, {"chi", chi}};
  h->depths_ = {{"depth_gbar", depth_gbar}, {"depth_L", depth_L}};
  const LBounds lb = l_bounds(lambda, depth_L);
  build_induced_q(*h, lambda, &chi, depth_gbar, depth_L, h->labels_, h->index_);
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  h->weight_module_ = true;
  h->anchor_ = lambda;
  h->offsets_.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto [i, eps, k, m] = h->labels_[idx];
    const int d = i + eps + k;
    h->offsets_[idx] = 2 * (k - i) - 2 * m;
    // Barred generators. Every branch raises the gbar-degree somewhere, so
    // the boundary layer escapes for all three.
    if (d == depth_gbar) {
      h->escape_[static_cast<int>(Generator::FB)][idx] = 1;
      h->escape_[static_cast<int>(Generator::HB)][idx] = 1;
      h->escape_[static_cast<int>(Generator::EB)][idx] = 1;
    } else {
      h->cols_[static_cast<int>(Generator::FB)][idx][h->index_.at({i + 1, eps, k, m})] = Poly(1L);
      h->cols_[static_cast<int>(Generator::EB)][idx][h->index_.at({i, eps, k + 1, m})] = Poly(1L);
      auto& hb = h->cols_[static_cast<int>(Generator::HB)][idx];
      if (eps == 0) {
        hb[h->index_.at({i, 1, k, m})] = Poly(1L);
      } else {
        add_poly(hb, h->index_.at({i, 0, k, m}), chi);
        add_poly(hb, h->index_.at({i + 1, 0, k + 1, m}), Poly(-4L));
      }
    }
    // sl2 generators: derivation, then hb-reduction, then the L(lambda) part.
    for (Generator g : {Generator::F, Generator::H, Generator::E}) {
      std::map<std::size_t, Poly> col;
      bool esc = false;
      const AlgebraElement ad = commutator(AlgebraElement::generator(g),
                                           AlgebraElement::monomial(Mono{i, eps, k, 0, 0, 0}));
      std::map<std::array<int, 3>, Poly> red;
      for (const auto& [mm, c] : ad.terms()) {
        if (mm[3] || mm[4] || mm[5]) throw std::logic_error("sl2 bracket left the gbar-factor");
        chi_push(red, mm[0], mm[1], mm[2], c, chi);
      }
      for (const auto& [t3, c] : red) add_poly(col, h->index_.at({t3[0], t3[1], t3[2], m}), c);
      if (g == Generator::H) add_poly(col, idx, lambda - Poly(2L * m));
      if (g == Generator::E && m > 0)
        add_poly(col, h->index_.at({i, eps, k, m - 1}),
                 Poly(static_cast<long>(m)) * (lambda - Poly(static_cast<long>(m) - 1)));
      if (g == Generator::F) {
        if (m < lb.mmax)
          add_poly(col, h->index_.at({i, eps, k, m + 1}), Poly(1L));
        else if (!lb.finite)
          esc = true;
      }
      if (esc)
        h->escape_[static_cast<int>(g)][idx] = 1;
      else
        h->cols_[static_cast<int>(g)][idx] = std::move(col);
    }
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

ModulePtr make_Q_chi_theta(const Rational& lam, const Rational& chi, const Rational& theta,
                           int depth) {
  if (depth < 2) throw InvalidParams("make_Q_chi_theta: depth must be at least 2");
  const ModulePtr parent = make_Q_chi(Poly(lam), Poly(chi), depth, depth);
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::Q_CHI_THETA;
  h->params_ = {{"lam", Poly(lam)}, {"chi", Poly(chi)}, {"theta", Poly(theta)}};
  h->depths_ = {{"depth", depth}};
  h->weight_module_ = true;
  h->anchor_ = Poly(lam);

  const AlgebraElement cm = central_C() - AlgebraElement::scalar(Poly(theta));

  struct WeightBlock {
    std::vector<std::size_t> order;             // deep-first coordinate order
    std::map<std::size_t, std::size_t> pos;     // parent index -> coordinate
    RowSpan rels{0};
    std::vector<std::size_t> reps;              // surviving parent indices, ascending
    std::map<std::size_t, std::size_t> qindex;  // parent index -> local r
  };
  std::map<int, WeightBlock> blocks;

  for (const auto& [t, space] : parent->weight_spaces()) {
    WeightBlock blk;
    blk.order = space;
    std::sort(blk.order.begin(), blk.order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ta = parent->label_tuple(a);
      const auto& tb = parent->label_tuple(b);
      const int da = ta[0] + ta[1] + ta[2], db = tb[0] + tb[1] + tb[2];
      if (da != db) return da > db;
      return ta > tb;
    });
    for (std::size_t p = 0; p < blk.order.size(); ++p) blk.pos[blk.order[p]] = p;
    blk.rels = RowSpan(blk.order.size());
    for (std::size_t b : space) {
      if (parent->margin(b) < 1) continue;
      // C - theta needs at most one window-raising step per monomial, so its
      // image is exact from every non-escaping label.
      ModuleVector w(parent);
      try {
        w = act(cm, parent->basis_vector(b));
      } catch (const TruncationTooShallow&) {
        continue;
      }
      Vec row(blk.order.size(), Rational(0));
      for (const auto& [j, c] : w.terms()) row[blk.pos.at(j)] = rat_coeff(c);
      blk.rels.insert(std::move(row));
    }
    std::vector<char> ispivot(blk.order.size(), 0);
    for (const std::size_t pc : blk.rels.pivot_columns()) ispivot[pc] = 1;
    for (std::size_t p = 0; p < blk.order.size(); ++p)
      if (!ispivot[p]) blk.reps.push_back(blk.order[p]);
    std::sort(blk.reps.begin(), blk.reps.end());
    for (std::size_t r = 0; r < blk.reps.size(); ++r) blk.qindex[blk.reps[r]] = r;
    blocks.emplace(t, std::move(blk));
  }

  for (const auto& [t, blk] : blocks)
    for (std::size_t r = 0; r < blk.reps.size(); ++r) {
      h->index_[{t, static_cast<int>(r), 0, 0}] = h->labels_.size();
      h->labels_.push_back({t, static_cast<int>(r), 0, 0});
      h->offsets_.push_back(t);
      h->coset_labels_.push_back("[" + parent->label(blk.reps[r]) + "]");
      h->margin_cap_.push_back(parent->margin(blk.reps[r]));
    }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }

  std::size_t gi = 0;
  for (const auto& [t, blk] : blocks) {
    for (std::size_t r = 0; r < blk.reps.size(); ++r, ++gi) {
      const std::size_t b = blk.reps[r];
      for (int g = 0; g < kNumGens; ++g) {
        if (!parent->generator_exact(static_cast<Generator>(g), b)) {
          h->escape_[g][gi] = 1;
          continue;
        }
        const auto& col = parent->gen_column(static_cast<Generator>(g), b);
        if (col.empty()) continue;
        const int t2 = t + gen_weight(static_cast<Generator>(g));
        const WeightBlock& dst = blocks.at(t2);
        Vec row(dst.order.size(), Rational(0));
        for (const auto& [j, c] : col) row[dst.pos.at(j)] = rat_coeff(c);
        const Vec red = dst.rels.reduce_copy(std::move(row));
        for (std::size_t p = 0; p < red.size(); ++p) {
          if (red[p] == 0) continue;
          const std::size_t qr = dst.qindex.at(dst.order[p]);
          h->cols_[g][gi][h->index_.at({t2, static_cast<int>(qr), 0, 0})] = Poly(red[p]);
        }
      }
    }
  }

  h->anchor_index_ = 0;
  if (const auto itb = blocks.find(0); itb != blocks.end()) {
    const auto qit = itb->second.qindex.find(parent->anchor_index());
    if (qit != itb->second.qindex.end())
      h->anchor_index_ = h->index_.at({0, static_cast<int>(qit->second), 0, 0});
  }
  h->finalize();
  return h;
}

ModulePtr make_M_abc(const Poly& a, const Poly& b, const Poly& c, int depth) {
  if (depth < 0) throw InvalidParams("make_M_abc: depth must be nonnegative");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::M_ABC;
  h->params_ = {{"a", a}, {"b", b}, {"c", c}};
  h->depths_ = {{"depth", depth}};
  for (int d = 0; d <= depth; ++d)
    for (int p = 0; p <= d; ++p)
      for (int q = 0; q <= d - p; ++q) {
        const int l = d - p - q;
        h->index_[{p, q, l, 0}] = h->labels_.size();
        h->labels_.push_back({p, q, l, 0});
      }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, q, l, unused] = h->labels_[i];
    for (int g = 0; g < kNumGens; ++g) {
      Word w;
      w.push_back(static_cast<char>(g));
      w.append(static_cast<std::size_t>(p), static_cast<char>(Generator::F));
      w.append(static_cast<std::size_t>(q), static_cast<char>(Generator::H));
      w.append(static_cast<std::size_t>(l), static_cast<char>(Generator::E));
      std::map<std::size_t, Poly> col;
      bool esc = false;
      for (const auto& [word, r] : straighten_word(w, kInducedPriority)) {
        std::array<int, kNumGens> cnt{};
        for (char ch : word) ++cnt[static_cast<int>(static_cast<unsigned char>(ch))];
        const int np = cnt[static_cast<int>(Generator::F)];
        const int nq = cnt[static_cast<int>(Generator::H)];
        const int nl = cnt[static_cast<int>(Generator::E)];
        if (np + nq + nl > depth) {
          esc = true;
          break;
        }
        Poly cc{r};
        if (const int e = cnt[static_cast<int>(Generator::FB)]; e > 0) cc = cc * a.pow(e);
        if (const int e = cnt[static_cast<int>(Generator::HB)]; e > 0) cc = cc * b.pow(e);
        if (const int e = cnt[static_cast<int>(Generator::EB)]; e > 0) cc = cc * c.pow(e);
        add_poly(col, h->index_.at({np, nq, nl, 0}), cc);
      }
      if (esc)
        h->escape_[g][i] = 1;
      else
        h->cols_[g][i] = std::move(col);
    }
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

ModulePtr make_N_abc(const Rational& a, const Rational& b, const Rational& c, int depth) {
  if (a == 0)
    throw InvalidParams("make_N_abc: a must be nonzero (the e-substitution divides by 2a)");
  if (depth < 0) throw InvalidParams("make_N_abc: depth must be nonnegative");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::N_ABC;
  h->params_ = {{"a", Poly(a)}, {"b", Poly(b)}, {"c", Poly(c)}};
  h->depths_ = {{"depth", depth}};
  for (int d = 0; d <= depth; ++d)
    for (int p = 0; p <= d; ++p) {
      h->index_[{p, d - p, 0, 0}] = h->labels_.size();
      h->labels_.push_back({p, d - p, 0, 0});
    }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  // e . 1 = -(b/2a) h . 1 - (c/a) f . 1
  const Rational sub_h = -b / (2 * a);
  const Rational sub_f = -c / a;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, q, unused2, unused3] = h->labels_[i];
    for (int g = 0; g < kNumGens; ++g) {
      Word w;
      w.push_back(static_cast<char>(g));
      w.append(static_cast<std::size_t>(p), static_cast<char>(Generator::F));
      w.append(static_cast<std::size_t>(q), static_cast<char>(Generator::H));
      std::map<std::array<int, 3>, Rational> work;
      for (const auto& [word, r] : straighten_word(w, kInducedPriority)) {
        std::array<int, kNumGens> cnt{};
        for (char ch : word) ++cnt[static_cast<int>(static_cast<unsigned char>(ch))];
        Rational cc = r;
        cc *= rat_pow(a, cnt[static_cast<int>(Generator::FB)]);
        cc *= rat_pow(b, cnt[static_cast<int>(Generator::HB)]);
        cc *= rat_pow(c, cnt[static_cast<int>(Generator::EB)]);
        add_rat(work,
                {cnt[static_cast<int>(Generator::F)], cnt[static_cast<int>(Generator::H)],
                 cnt[static_cast<int>(Generator::E)]},
                cc);
      }
      // Eliminate e: the rightmost e hits the generator line and is replaced
      // through the defining relation; the e-count strictly decreases.
      std::map<std::size_t, Poly> col;
      bool esc = false;
      while (!work.empty() && !esc) {
        const auto [key, r] = *work.begin();
        work.erase(work.begin());
        const auto [np, nq, nl] = key;
        if (nl == 0) {
          if (np + nq > depth) {
            esc = true;
            break;
          }
          add_poly(col, h->index_.at({np, nq, 0, 0}), Poly(r));
          continue;
        }
        for (const auto& [tail, factor] :
             {std::pair<Generator, Rational>{Generator::H, sub_h}, {Generator::F, sub_f}}) {
          if (factor == 0) continue;
          Word w2;
          w2.append(static_cast<std::size_t>(np), static_cast<char>(Generator::F));
          w2.append(static_cast<std::size_t>(nq), static_cast<char>(Generator::H));
          w2.append(static_cast<std::size_t>(nl - 1), static_cast<char>(Generator::E));
          w2.push_back(static_cast<char>(tail));
          for (const auto& [word2, r2] : straighten_word(w2, kInducedPriority)) {
            std::array<int, kNumGens> cnt{};
            for (char ch : word2) ++cnt[static_cast<int>(static_cast<unsigned char>(ch))];
            add_rat(work,
                    {cnt[static_cast<int>(Generator::F)], cnt[static_cast<int>(Generator::H)],
                     cnt[static_cast<int>(Generator::E)]},
                    r * factor * r2);
          }
        }
      }
      if (esc)
        h->escape_[g][i] = 1;
      else
        h->cols_[g][i] = std::move(col);
    }
  }
  h->anchor_index_ = 0;
  h->finalize();
  return h;
}

ModulePtr make_tensor(const ModulePtr& left, const ModulePtr& right) {
  if (!left || !right) throw InvalidParams("make_tensor: null factor");
  if (left->kind() != ModuleKind::L)
    throw InvalidParams("make_tensor: the left factor must be L-kind");
  std::shared_ptr<TakiffModule> h(new TakiffModule());
  h->kind_ = ModuleKind::TENSOR;
  h->factors_ = {left, right};
  h->weight_module_ = left->is_weight_module() && right->is_weight_module();
  if (h->weight_module_) h->anchor_ = left->anchor_weight() + right->anchor_weight();
  const std::size_t n1 = left->dim(), n2 = right->dim();
  const auto id = [n2](std::size_t i1, std::size_t i2) { return i1 * n2 + i2; };
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      h->index_[{static_cast<int>(i1), static_cast<int>(i2), 0, 0}] = h->labels_.size();
      h->labels_.push_back({static_cast<int>(i1), static_cast<int>(i2), 0, 0});
      if (h->weight_module_)
        h->offsets_.push_back(left->weight_offset(i1) + right->weight_offset(i2));
    }
  const std::size_t n = h->labels_.size();
  for (int g = 0; g < kNumGens; ++g) {
    h->cols_[g].assign(n, {});
    h->escape_[g].assign(n, 0);
  }
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const std::size_t i = id(i1, i2);
      for (int g = 0; g < kNumGens; ++g) {
        const auto gg = static_cast<Generator>(g);
        if (!left->generator_exact(gg, i1) || !right->generator_exact(gg, i2)) {
          h->escape_[g][i] = 1;
          continue;
        }
        auto& col = h->cols_[g][i];
        for (const auto& [j1, c] : left->gen_column(gg, i1)) add_poly(col, id(j1, i2), c);
        for (const auto& [j2, c] : right->gen_column(gg, i2)) add_poly(col, id(i1, j2), c);
      }
    }
  h->anchor_index_ = id(0, right->anchor_index());
  h->finalize();
  return h;
}

// ---------------------------------------------------------------------------
// Actions

ModuleVector act_generator(Generator g, const ModuleVector& v) {
  if (!v.handle()) return v;
  const TakiffModule& M = *v.handle();
  ModuleVector r(v.handle());
  for (const auto& [i, c] : v.terms()) {
    if (!M.generator_exact(g, i))
      throw TruncationTooShallow(std::string("action of ") + kGenNames[static_cast<int>(g)] +
                                 " on " + M.label(i) + " leaves the truncation window");
    for (const auto& [j, k] : M.gen_column(g, i)) r.add_term(j, c * k);
  }
  return r;
}

ModuleVector act(const AlgebraElement& x, const ModuleVector& v) {
  if (!v.handle()) return v;
  ModuleVector out(v.handle());
  for (const auto& [m, c] : x.terms()) {
    ModuleVector w = v;
    for (int gi = kNumGens - 1; gi >= 0; --gi)
      for (int t = 0; t < m[gi]; ++t) w = act_generator(static_cast<Generator>(gi), w);
    out += c * w;
  }
  return out;
}

Poly central_scalar(const ModulePtr& h, CentralKind which) {
  if (!h) throw InvalidParams("central_scalar: null module");
  const AlgebraElement x = which == CentralKind::C ? central_C() : central_Cbar();
  std::optional<Poly> s;
  bool probed = false;
  for (std::size_t i = 0; i < h->dim(); ++i) {
    if (h->margin(i) < 2) continue;
    probed = true;
    const ModuleVector w = act(x, h->basis_vector(i));
    Poly ci{0L};
    bool diagonal = w.is_zero();
    if (w.terms().size() == 1 && w.terms().begin()->first == i) {
      diagonal = true;
      ci = w.terms().begin()->second;
    }
    if (!diagonal)
      throw NotScalar("central element is not diagonal on " + h->label(i));
    if (!s)
      s = ci;
    else if (*s != ci)
      throw NotScalar("central element acts by different scalars on the probed basis");
  }
  if (!probed)
    throw TruncationTooShallow("central_scalar: no basis vector of margin >= 2");
  return *s;
}

namespace {

std::vector<ModuleVector> weight_kernel(const ModulePtr& h, int offset,
                                        const std::vector<Generator>& gens) {
  if (!h) throw InvalidParams("null module");
  if (!h->is_weight_module())
    throw InvalidParams(std::string(kind_name(h->kind())) + " is not a weight module");
  if (!h->rational_params())
    throw InvalidParams("weight-space elimination requires rational parameters");
  std::vector<std::size_t> cand;
  for (const std::size_t i : h->weight_space(offset)) {
    bool ok = true;
    for (const Generator g : gens) ok = ok && h->generator_exact(g, i);
    if (ok) cand.push_back(i);
  }
  if (cand.empty())
    throw TruncationTooShallow("no exact basis vectors at weight offset " +
                               std::to_string(offset));
  std::map<std::pair<int, std::size_t>, Vec> rows;  // (generator slot, output label)
  for (std::size_t cj = 0; cj < cand.size(); ++cj)
    for (std::size_t gs = 0; gs < gens.size(); ++gs)
      for (const auto& [o, c] : h->gen_column(gens[gs], cand[cj])) {
        auto& row = rows[{static_cast<int>(gs), o}];
        if (row.empty()) row.assign(cand.size(), Rational(0));
        row[cj] += rat_coeff(c);
      }
  Matr a;
  a.reserve(rows.size());
  for (auto& [key, row] : rows) a.push_back(std::move(row));
  std::vector<ModuleVector> out;
  for (const Vec& kv : kernel_basis(a, cand.size())) {
    ModuleVector v(h);
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (kv[j] != 0) v.add_term(cand[j], Poly(kv[j]));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<ModuleVector> highest_weight_vectors(const ModulePtr& h, int offset) {
  return weight_kernel(h, offset, {Generator::E});
}

std::vector<ModuleVector> singular_vectors(const ModulePtr& h, int offset) {
  return weight_kernel(h, offset, {Generator::E, Generator::EB});
}

std::map<int, std::size_t> sl2_decomposition(const ModulePtr& h, const std::vector<int>& offsets) {
  std::map<int, std::size_t> out;
  for (const int t : offsets) out[t] = highest_weight_vectors(h, t).size();
  return out;
}

std::map<int, std::size_t> ClosureResult::dims() const {
  std::map<int, std::size_t> d;
  for (const auto& [t, span] : spans) d[t] = span.dim();
  return d;
}

ClosureResult submodule_closure(const ModulePtr& h, const std::vector<ModuleVector>& seeds) {
  if (!h) throw InvalidParams("null module");
  if (!h->is_weight_module())
    throw InvalidParams(std::string(kind_name(h->kind())) + " is not a weight module");
  if (!h->rational_params())
    throw InvalidParams("submodule_closure requires rational parameters");
  ClosureResult res;
  std::map<std::size_t, std::size_t> pos;
  for (const auto& [t, space] : h->weight_spaces()) {
    res.weight_labels[t] = space;
    res.spans.emplace(t, RowSpan(space.size()));
    for (std::size_t p = 0; p < space.size(); ++p) pos[space[p]] = p;
  }
  std::deque<ModuleVector> work;
  const auto insert_vec = [&](const ModuleVector& v) {
    if (v.is_zero()) return;
    const int t = h->weight_offset(v.terms().begin()->first);
    Vec row(res.weight_labels.at(t).size(), Rational(0));
    for (const auto& [i, c] : v.terms()) row[pos.at(i)] = rat_coeff(c);
    if (res.spans.at(t).insert(std::move(row))) work.push_back(v);
  };
  for (const ModuleVector& s : seeds) {
    if (s.handle() && s.handle().get() != h.get())
      throw InvalidParams("seed vector belongs to another module");
    std::map<int, ModuleVector> comps;
    for (const auto& [i, c] : s.terms()) {
      auto [it, inserted] = comps.try_emplace(h->weight_offset(i), ModuleVector(h));
      it->second.add_term(i, c);
    }
    for (const auto& [t, mv] : comps) insert_vec(mv);
  }
  while (!work.empty()) {
    const ModuleVector v = std::move(work.front());
    work.pop_front();
    for (int g = 0; g < kNumGens; ++g) {
      bool ok = true;
      for (const auto& [i, c] : v.terms()) ok = ok && h->generator_exact(static_cast<Generator>(g), i);
      if (!ok) continue;
      insert_vec(act_generator(static_cast<Generator>(g), v));
    }
  }
  return res;
}

bool closure_covers_interior(const ModulePtr& h, const ClosureResult& c, int min_margin) {
  if (!h) throw InvalidParams("null module");
  for (std::size_t i = 0; i < h->dim(); ++i) {
    if (h->margin(i) < min_margin) continue;
    const int t = h->weight_offset(i);
    const auto its = c.spans.find(t);
    const auto itl = c.weight_labels.find(t);
    if (its == c.spans.end() || itl == c.weight_labels.end()) return false;
    const auto& labels = itl->second;
    const auto itp = std::lower_bound(labels.begin(), labels.end(), i);
    if (itp == labels.end() || *itp != i) throw std::logic_error("weight table out of sync");
    Vec e(labels.size(), Rational(0));
    e[static_cast<std::size_t>(itp - labels.begin())] = 1;
    if (!its->second.contains(std::move(e))) return false;
  }
  return true;
}

bool free_C_action_check(const ModulePtr& h, const ModuleVector& w0, unsigned j_max) {
  if (!h) throw InvalidParams("null module");
  if (!h->rational_params()) throw InvalidParams("free_C_action_check requires rational parameters");
  if (w0.handle().get() != h.get()) throw InvalidParams("vector belongs to another module");
  const auto coords = [&](const ModuleVector& v) {
    Vec row(h->dim(), Rational(0));
    for (const auto& [i, c] : v.terms()) row[i] = rat_coeff(c);
    return row;
  };
  RowSpan span(h->dim());
  const AlgebraElement c = central_C();
  ModuleVector w = w0;
  if (!span.insert(coords(w))) return false;
  for (unsigned j = 1; j <= j_max; ++j) {
    w = act(c, w);
    if (!span.insert(coords(w))) return false;
  }
  return true;
}

bool cyclicity_probe(const ModulePtr& h, const ModuleVector& v, unsigned budget) {
  if (!h || h->kind() != ModuleKind::N_ABC)
    throw InvalidParams("cyclicity_probe expects an N-kind module");
  if (v.handle().get() != h.get() || v.is_zero())
    throw InvalidParams("cyclicity_probe needs a nonzero vector of the module");
  const Rational a = h->params()[0].second.constant();
  const Rational b = h->params()[1].second.constant();
  ModuleVector w = v;
  unsigned steps = 0;
  const auto ladder = [&](Generator g, const Rational& shift, int slot) {
    while (true) {
      int top = 0;
      for (const auto& [i, c] : w.terms()) top = std::max(top, h->label_tuple(i)[slot]);
      if (top == 0) break;
      if (steps == budget) throw BudgetExhausted("cyclicity ladder budget exhausted");
      w = act_generator(g, w) - Poly(shift) * w;
      ++steps;
    }
  };
  ladder(Generator::HB, b, 0);  // (hb - b)-steps clear the f-exponents
  ladder(Generator::FB, a, 1);  // (fb - a)-steps clear the h-exponents
  return w.terms().size() == 1 && w.terms().begin()->first == h->anchor_index();
}

}  // namespace takiff
