#include "takiff/kernel_probe.hpp"

#include "takiff/linalg.hpp"

namespace takiff {

namespace {

Rational rat_coeff(const Poly& p) {
  if (!p.is_constant())
    throw InvalidParams("symbolic coefficient where a rational value is required");
  return p.constant();
}

}  // namespace

IdealSpec IdealSpec::i_chi_theta(const Rational& chi, const Rational& theta) {
  IdealSpec s;
  s.kind = Kind::I_CHI_THETA;
  s.chi = chi;
  s.theta = theta;
  return s;
}

IdealSpec IdealSpec::frak_i(const Rational& mu) {
  IdealSpec s;
  s.kind = Kind::FRAK_I;
  s.mu = mu;
  return s;
}

IdealSpec IdealSpec::frak_f(long n) {
  IdealSpec s;
  s.kind = Kind::FRAK_F;
  s.n = n;
  return s;
}

std::string IdealSpec::str() const {
  switch (kind) {
    case Kind::I_CHI_THETA:
      return "I(chi=" + rat_str(chi) + ", theta=" + rat_str(theta) + ")";
    case Kind::FRAK_I:
      return "frak_i(mu=" + rat_str(mu) + ")";
    case Kind::FRAK_F:
      return "frak_f(n=" + std::to_string(n) + ")";
  }
  return "?";
}

KernelReport ann_kernel(const ModulePtr& h, int d) {
  if (!h) throw InvalidParams("ann_kernel: null module");
  if (d < 0) throw InvalidParams("ann_kernel: degree bound must be nonnegative");
  const std::vector<Mono> cols = degree_filtration(d);
  const std::size_t nc = cols.size();

  KernelReport rep;
  rep.degree_bound = d;
  rep.module_descriptor = h->descriptor();
  rep.interior_margin = d;

  // Rows are indexed by (probe vector, output label); they are compressed
  // through a row span on the fly, so elimination never sees more than nc
  // independent rows.
  RowSpan span(nc);
  std::size_t probed = 0;
  for (std::size_t i = 0; i < h->dim(); ++i) {
    if (h->margin(i) < d) continue;
    ++probed;
    if (span.dim() == nc) continue;  // already full rank: kernel is 0
    const ModuleVector v = h->basis_vector(i);
    std::map<std::size_t, Vec> rows;
    for (std::size_t j = 0; j < nc; ++j) {
      const ModuleVector w = act(AlgebraElement::monomial(cols[j]), v);
      for (const auto& [o, c] : w.terms()) {
        auto& row = rows[o];
        if (row.empty()) row.assign(nc, Rational(0));
        row[j] = rat_coeff(c);
      }
    }
    for (auto& [o, row] : rows) span.insert(std::move(row));
  }
  if (probed == 0)
    throw TruncationTooShallow("ann_kernel: no basis vector has margin >= " + std::to_string(d));
  rep.probes = probed;

  Matr a = span.rows();
  for (const Vec& kv : kernel_basis(a, nc)) {
    AlgebraElement x;
    for (std::size_t j = 0; j < nc; ++j)
      if (kv[j] != 0) x.add_term(cols[j], Poly(kv[j]));
    rep.kernel_basis.push_back(std::move(x));
  }
  rep.kernel_dim = rep.kernel_basis.size();
  return rep;
}

bool ideal_membership(const AlgebraElement& x, const IdealSpec& spec) {
  if (spec.kind != IdealSpec::Kind::I_CHI_THETA)
    throw Unsupported("ideal membership is decided only for I(chi, theta)");
  const QuotientElement r = reduce(x, CentralCharacter::at(spec.theta, spec.chi));
  return r.is_zero();
}

ModuleVector annihilation_witness(const ModulePtr& h, const AlgebraElement& x) {
  if (!h || h->kind() != ModuleKind::Q)
    throw InvalidParams("annihilation_witness expects a Q-kind module");
  if (x.is_zero()) throw InvalidParams("annihilation_witness needs a nonzero element");
  const int dx = x.degree();
  for (int m = 0;; ++m) {
    const auto idx = h->find_label({0, 0, 0, m});
    if (!idx || h->margin(*idx) < dx) break;
    const ModuleVector u = h->basis_vector(*idx);
    if (!act(x, u).is_zero()) return u;
  }
  throw WitnessNotFound(
      "no witness among the exactly reachable vectors 1 (x) f^m v; deepen the truncation");
}

}  // namespace takiff
