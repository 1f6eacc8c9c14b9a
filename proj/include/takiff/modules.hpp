#pragma once

#include "takiff/algebra.hpp"
#include "takiff/errors.hpp"
#include "takiff/linalg.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace takiff {

/// The realized module constructions. L is the highest-weight sl2-module
/// L(lambda) inflated to the full algebra (barred generators act as zero).
/// VERMA is the highest-weight module M(mu, mub). Q is the module induced
/// from L(lambda) over sl2; Q_CHI and Q_CHI_THETA are its quotients by
/// (Cbar - chi) and then (C - theta). M_ABC is induced from the
/// one-dimensional gbar-character (fb, hb, eb) -> (a, b, c) and N_ABC is its
/// quotient by (b h + 2a e + 2c f). TENSOR pairs an L-kind left factor with
/// any module under the Leibniz action.
enum class ModuleKind { L, VERMA, Q, Q_CHI, Q_CHI_THETA, M_ABC, N_ABC, TENSOR };

const char* kind_name(ModuleKind k);

class TakiffModule;
using ModulePtr = std::shared_ptr<const TakiffModule>;

/// Sparse vector in a truncated module: basis index -> coefficient,
/// no zero coefficients stored.
class ModuleVector {
 public:
  ModuleVector() = default;
  explicit ModuleVector(ModulePtr handle) : handle_(std::move(handle)) {}

  const ModulePtr& handle() const { return handle_; }
  const std::map<std::size_t, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::size_t index, const Poly& c);

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Poly& c, ModuleVector v);

  bool operator==(const ModuleVector& o) const { return terms_ == o.terms_; }
  bool operator!=(const ModuleVector& o) const { return !(*this == o); }

  /// Canonical text with bracketed basis labels, e.g. "2*[fb (x) v] - [1 (x) f v]".
  std::string str() const;

 private:
  ModulePtr handle_;
  std::map<std::size_t, Poly> terms_;
};

/// Immutable exact truncation of one module construction. All six generator
/// actions are precomputed as sparse columns over the finite basis, each with
/// an escape flag set when the true image leaves the truncation window (that
/// column is then not usable). margin(i) counts how many single-generator
/// steps from basis vector i are guaranteed exact in the worst case;
/// kMarginInfinite means the realization is complete.
class TakiffModule : public std::enable_shared_from_this<TakiffModule> {
 public:
  static constexpr int kMarginInfinite = 1 << 20;

  ModuleKind kind() const { return kind_; }
  /// Bound parameters in declaration order; symbolic entries are allowed
  /// where the factory accepts them.
  const std::vector<std::pair<std::string, Poly>>& params() const { return params_; }
  /// Truncation bounds in declaration order, e.g. {"depth_gbar", 8}.
  const std::vector<std::pair<std::string, int>>& depths() const { return depths_; }
  bool rational_params() const { return rational_params_; }
  /// One-line summary, e.g. "verma(mu=-1, mub=1; depth=6)".
  const std::string& descriptor() const { return descriptor_; }

  std::size_t dim() const { return labels_.size(); }
  const std::array<int, 4>& label_tuple(std::size_t i) const { return labels_[i]; }
  /// Printable basis label, e.g. "f^2 fb v" or "fb eb^2 (x) f v".
  std::string label(std::size_t i) const;
  std::optional<std::size_t> find_label(const std::array<int, 4>& t) const;
  /// Index of the cyclic generator (highest-weight line where one exists).
  std::size_t anchor_index() const { return anchor_index_; }

  bool is_weight_module() const { return weight_module_; }
  /// Weight of the anchor vector as a polynomial in the bound parameters.
  const Poly& anchor_weight() const;
  /// Even integer offset of basis vector i's weight from the anchor weight.
  int weight_offset(std::size_t i) const;
  /// Basis indices at the given offset, ascending; empty when none.
  std::vector<std::size_t> weight_space(int offset) const;
  /// offset -> basis indices, every offset present in the truncation.
  const std::map<int, std::vector<std::size_t>>& weight_spaces() const;

  /// True when the single-generator image of basis vector i is exact.
  bool generator_exact(Generator g, std::size_t i) const;
  /// The exact image column; requires generator_exact(g, i).
  const std::map<std::size_t, Poly>& gen_column(Generator g, std::size_t i) const;
  int margin(std::size_t i) const { return margins_[i]; }

  ModuleVector basis_vector(std::size_t i) const;
  ModuleVector zero() const;

 private:
  TakiffModule() = default;

  /// Computes margins, the weight index, and the descriptor.
  void finalize();

  ModuleKind kind_ = ModuleKind::L;
  std::vector<std::pair<std::string, Poly>> params_;
  std::vector<std::pair<std::string, int>> depths_;
  std::string descriptor_;
  std::vector<std::array<int, 4>> labels_;
  std::map<std::array<int, 4>, std::size_t> index_;
  std::array<std::vector<std::map<std::size_t, Poly>>, kNumGens> cols_;
  std::array<std::vector<char>, kNumGens> escape_;
  std::vector<int> margins_;
  std::vector<int> margin_cap_;  // optional per-label bound applied before relaxation
  bool weight_module_ = false;
  bool rational_params_ = true;
  Poly anchor_{0L};
  std::vector<int> offsets_;
  std::map<int, std::vector<std::size_t>> weight_index_;
  std::size_t anchor_index_ = 0;
  std::array<ModulePtr, 2> factors_{};            // TENSOR only
  std::vector<std::string> coset_labels_;         // Q_CHI_THETA only

  friend ModulePtr make_L(const Poly&, int);
  friend ModulePtr make_verma(const Poly&, const Poly&, int);
  friend ModulePtr make_Q(const Poly&, int, int);
  friend ModulePtr make_Q_chi(const Poly&, const Poly&, int, int);
  friend ModulePtr make_Q_chi_theta(const Rational&, const Rational&, const Rational&, int);
  friend ModulePtr make_M_abc(const Poly&, const Poly&, const Poly&, int);
  friend ModulePtr make_N_abc(const Rational&, const Rational&, const Rational&, int);
  friend ModulePtr make_tensor(const ModulePtr&, const ModulePtr&);
};

/// L(lambda) with basis f^m v. Complete when lambda is a nonnegative integer
/// (m <= lambda); otherwise truncated at m <= depth. lambda may be symbolic.
ModulePtr make_L(const Poly& lambda, int depth);

/// Verma module M(mu, mub) with basis f^a fb^b v, a + b <= depth. Actions are
/// computed by straightening against the bracket table and evaluating
/// h -> mu, hb -> mub, e -> 0, eb -> 0 on the highest-weight line.
ModulePtr make_verma(const Poly& mu, const Poly& mub, int depth);

/// Q(lambda): basis fb^i hb^j eb^k (x) f^m v with i+j+k <= depth_gbar and the
/// L(lambda) factor truncated at depth_L (complete at integral lambda).
ModulePtr make_Q(const Poly& lambda, int depth_gbar, int depth_L);

/// Q(lambda, chi): the hb-exponent is reduced below 2 through
/// hb^2 -> chi - 4 fb eb, so labels carry eps in {0, 1}.
ModulePtr make_Q_chi(const Poly& lambda, const Poly& chi, int depth_gbar, int depth_L);

/// Q(lambda, chi, theta): each weight space of Q(lambda, chi) modulo the
/// exactly computed image of (C - theta) there, with elimination pivots on
/// the deepest gbar-labels so coset representatives stay shallow.
ModulePtr make_Q_chi_theta(const Rational& lambda, const Rational& chi, const Rational& theta,
                           int depth);

/// Module induced from the one-dimensional gbar-character
/// fb -> a, hb -> b, eb -> c, with basis f^p h^q e^l (x) 1, p+q+l <= depth.
ModulePtr make_M_abc(const Poly& a, const Poly& b, const Poly& c, int depth);

/// N(a,b,c) = M(a,b,c) / (b h + 2a e + 2c f) M(a,b,c) with basis f^p h^q;
/// e is eliminated through e.1 = -(1/2a)(b h + 2c f).1, so a must be a
/// nonzero rational.
ModulePtr make_N_abc(const Rational& a, const Rational& b, const Rational& c, int depth);

/// Leibniz tensor product x(u (x) w) = xu (x) w + u (x) xw; the left factor
/// must be L-kind.
ModulePtr make_tensor(const ModulePtr& left, const ModulePtr& right);

/// One exact generator step; throws TruncationTooShallow when any support
/// label escapes under g.
ModuleVector act_generator(Generator g, const ModuleVector& v);

/// Exact action of an algebra element, applied one generator at a time in
/// PBW order (rightmost factor first). Linear in both arguments.
ModuleVector act(const AlgebraElement& x, const ModuleVector& v);

enum class CentralKind { C, CBAR };

/// The scalar by which the central element acts, verified on every basis
/// vector of margin >= 2. Throws NotScalar on any disagreement and
/// TruncationTooShallow when no vector is that deep.
Poly central_scalar(const ModulePtr& h, CentralKind which);

/// Basis of ker(e) on the weight space at the given offset, computed by exact
/// elimination over the e-exact labels there. Requires rational parameters.
std::vector<ModuleVector> highest_weight_vectors(const ModulePtr& h, int offset);

/// Basis of ker(e) ∩ ker(eb) on the weight space at the given offset, over
/// the labels exact under both.
std::vector<ModuleVector> singular_vectors(const ModulePtr& h, int offset);

/// offset -> dim ker(e) there: the multiplicity of the sl2-type whose highest
/// weight sits at that offset.
std::map<int, std::size_t> sl2_decomposition(const ModulePtr& h, const std::vector<int>& offsets);

/// Weight-graded span closed under all exact generator steps from the seeds.
struct ClosureResult {
  std::map<int, std::vector<std::size_t>> weight_labels;  // offset -> coordinate labels
  std::map<int, RowSpan> spans;                           // same keys

  std::map<int, std::size_t> dims() const;
};

/// Closes the seeds under the six generators, exploring only exact steps;
/// deterministic (fixed generator order, canonical spans).
ClosureResult submodule_closure(const ModulePtr& h, const std::vector<ModuleVector>& seeds);

/// True when the closure contains every basis vector of margin >= min_margin.
bool closure_covers_interior(const ModulePtr& h, const ClosureResult& c, int min_margin);

/// True iff {C^j w0 : 0 <= j <= J} is linearly independent, each power
/// computed exactly.
bool free_C_action_check(const ModulePtr& h, const ModuleVector& w0, unsigned J);

/// Replays the cyclicity ladder on N(a,b,c): (hb - b)-steps clear the
/// f-exponents, then (fb - a)-steps clear the h-exponents, landing on the
/// generator line. Each ladder application costs one budget step; returns
/// true when a nonzero multiple of the generator is reached.
bool cyclicity_probe(const ModulePtr& h, const ModuleVector& v, unsigned budget);

}  // namespace takiff
