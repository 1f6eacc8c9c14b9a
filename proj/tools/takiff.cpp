// Command-line front end: normal ordering, commutators, central-character
// reduction, module constructions, annihilator kernels, ideal saturation and
// the verification suite. Every subcommand emits either human-readable text
// or a stable JSON document (--format json).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "takiff/errors.hpp"
#include "takiff/kernel_probe.hpp"
#include "takiff/modules.hpp"
#include "takiff/parser.hpp"
#include "takiff/quotient.hpp"
#include "takiff/suite.hpp"

using namespace takiff;
using ordered_json = nlohmann::ordered_json;

namespace {

bool g_json = false;

void emit(const ordered_json& doc, const std::string& text) {
  if (g_json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

ordered_json element_json(const AlgebraElement& x) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : x.terms()) {
    ordered_json t;
    t["coeff"] = c.str();
    t["mono"] = {m[0], m[1], m[2], m[3], m[4], m[5]};
    arr.push_back(std::move(t));
  }
  return arr;
}

ordered_json vector_json(const ModulePtr& h, const ModuleVector& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& [i, c] : v.terms()) {
    ordered_json t;
    t["basis"] = h->label(i);
    t["coeff"] = c.str();
    arr.push_back(std::move(t));
  }
  return arr;
}

Rational flag_rat(const std::string& text, const std::string& name) {
  try {
    return rat_parse(text);
  } catch (const std::invalid_argument&) {
    throw InvalidParams("--" + name + " expects a rational like 5/2, got '" + text + "'");
  }
}

// Shared module-construction flags for the module and ann-kernel commands.
struct ModuleFlags {
  std::string kind = "verma";
  std::string lam = "0", mu = "0", mub = "0", chi = "0", theta = "0";
  std::string a = "0", b = "0", c = "0";
  int depth = 6;
  int depth_gbar = -1;  // falls back to depth
  int depth_l = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "module kind: l, verma, q, q_chi, q_chi_theta, m_abc, n_abc")
        ->required();
    cmd->add_option("--lam", lam, "highest weight (l, q, q_chi, q_chi_theta)");
    cmd->add_option("--mu", mu, "Verma parameter mu");
    cmd->add_option("--mub", mub, "Verma parameter mub");
    cmd->add_option("--chi", chi, "value of Cb (q_chi, q_chi_theta)");
    cmd->add_option("--theta", theta, "value of C (q_chi_theta)");
    cmd->add_option("--a", a, "barred character of fb (m_abc, n_abc)");
    cmd->add_option("--b", b, "barred character of hb (m_abc, n_abc)");
    cmd->add_option("--c", c, "barred character of eb (m_abc, n_abc)");
    cmd->add_option("--depth", depth, "truncation depth")->check(CLI::Range(0, 64));
    cmd->add_option("--depth-gbar", depth_gbar, "barred-direction depth (default: --depth)");
    cmd->add_option("--depth-l", depth_l, "sl2-direction depth (default: --depth)");
  }

  ModulePtr build() const {
    const int dg = depth_gbar < 0 ? depth : depth_gbar;
    const int dl = depth_l < 0 ? depth : depth_l;
    if (kind == "l") return make_L(Poly(flag_rat(lam, "lam")), depth);
    if (kind == "verma")
      return make_verma(Poly(flag_rat(mu, "mu")), Poly(flag_rat(mub, "mub")), depth);
    if (kind == "q") return make_Q(Poly(flag_rat(lam, "lam")), dg, dl);
    if (kind == "q_chi")
      return make_Q_chi(Poly(flag_rat(lam, "lam")), Poly(flag_rat(chi, "chi")), dg, dl);
    if (kind == "q_chi_theta")
      return make_Q_chi_theta(flag_rat(lam, "lam"), flag_rat(chi, "chi"),
                              flag_rat(theta, "theta"), depth);
    if (kind == "m_abc")
      return make_M_abc(Poly(flag_rat(a, "a")), Poly(flag_rat(b, "b")), Poly(flag_rat(c, "c")),
                        depth);
    if (kind == "n_abc")
      return make_N_abc(flag_rat(a, "a"), flag_rat(b, "b"), flag_rat(c, "c"), depth);
    throw InvalidParams("unknown module kind '" + kind + "'");
  }
};

ordered_json module_header(const ModulePtr& h) {
  ordered_json doc;
  doc["module"] = h->descriptor();
  doc["dim"] = h->dim();
  doc["anchor"] = h->label(h->anchor_index());
  return doc;
}

std::array<int, 4> parse_tuple(const std::string& text) {
  std::array<int, 4> t{0, 0, 0, 0};
  std::size_t pos = 0, slot = 0;
  while (pos < text.size() && slot < 4) {
    std::size_t used = 0;
    t[slot++] = std::stoi(text.substr(pos), &used);
    pos += used;
    if (pos < text.size()) {
      if (text[pos] != ',') throw InvalidParams("--on expects comma-separated integers");
      ++pos;
    }
  }
  if (pos < text.size()) throw InvalidParams("--on accepts at most four integers");
  return t;
}

int cmd_normalize(const std::string& expr) {
  const AlgebraElement x = parse_element(expr);
  ordered_json doc;
  doc["input"] = expr;
  doc["element"] = element_json(x);
  doc["degree"] = x.degree();
  emit(doc, x.str() + "\n");
  return 0;
}

int cmd_comm(const std::string& ea, const std::string& eb) {
  const AlgebraElement x = commutator(parse_element(ea), parse_element(eb));
  ordered_json doc;
  doc["lhs"] = ea;
  doc["rhs"] = eb;
  doc["element"] = element_json(x);
  emit(doc, x.str() + "\n");
  return 0;
}

int cmd_reduce(const std::string& expr, const std::optional<std::string>& theta,
               const std::optional<std::string>& chi) {
  CentralCharacter cc = CentralCharacter::symbolic();
  if (theta || chi)
    cc = CentralCharacter::at(flag_rat(theta.value_or("0"), "theta"),
                              flag_rat(chi.value_or("0"), "chi"));
  const QuotientElement r = reduce(parse_element(expr), cc);
  ordered_json doc;
  doc["input"] = expr;
  doc["theta"] = cc.theta.str();
  doc["chi"] = cc.chi.str();
  doc["element"] = element_json(r.element());
  emit(doc, r.str() + "\n");
  return 0;
}

int run_report(const SuiteManifest& manifest) {
  const SuiteReport report = run_suite(manifest);
  ordered_json doc;
  doc["checks"] = ordered_json::array();
  std::size_t ok = 0;
  for (const CheckResult& r : report.results) {
    ordered_json c;
    c["name"] = r.name;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    doc["checks"].push_back(std::move(c));
    if (r.passed) ++ok;
  }
  doc["passed"] = ok;
  doc["total"] = report.results.size();
  doc["all_passed"] = report.all_passed();
  emit(doc, report_text(report));
  return report.all_passed() ? 0 : 1;
}

int cmd_claim1(int max_index, const std::optional<std::string>& theta,
               const std::optional<std::string>& chi) {
  SuiteCheck check;
  check.name = "claim1";
  check.params["max_index"] = Rational(max_index);
  if (theta) check.params["theta"] = flag_rat(*theta, "theta");
  if (chi) check.params["chi"] = flag_rat(*chi, "chi");
  SuiteManifest m;
  m.checks = {check};
  return run_report(m);
}

int cmd_module_make(const ModuleFlags& mf) {
  const ModulePtr h = mf.build();
  ordered_json doc = module_header(h);
  doc["labels"] = ordered_json::array();
  std::string text = h->descriptor() + "\n  dim " + std::to_string(h->dim()) + ", anchor " +
                     h->label(h->anchor_index()) + "\n";
  for (std::size_t i = 0; i < h->dim(); ++i) {
    ordered_json l;
    l["label"] = h->label(i);
    l["weight_offset"] = h->weight_offset(i);
    if (h->margin(i) >= TakiffModule::kMarginInfinite)
      l["margin"] = nullptr;  // complete direction: no boundary to escape
    else
      l["margin"] = h->margin(i);
    doc["labels"].push_back(std::move(l));
  }
  text += "  " + std::to_string(h->dim()) + " basis labels (listed in --format json)\n";
  emit(doc, text);
  return 0;
}

int cmd_module_act(const ModuleFlags& mf, const std::string& expr, const std::string& on) {
  const ModulePtr h = mf.build();
  const auto idx = on.empty() ? std::optional<std::size_t>(h->anchor_index())
                              : h->find_label(parse_tuple(on));
  if (!idx) throw InvalidParams("label tuple (" + on + ") is not in the realized window");
  const AlgebraElement x = parse_element(expr);
  const ModuleVector w = act(x, h->basis_vector(*idx));
  ordered_json doc = module_header(h);
  doc["expr"] = expr;
  doc["on"] = h->label(*idx);
  doc["result"] = vector_json(h, w);
  emit(doc, "(" + x.str() + ") . [" + h->label(*idx) + "] = " + w.str() + "\n");
  return 0;
}

int cmd_module_singular(const ModuleFlags& mf, const std::vector<int>& offsets) {
  const ModulePtr h = mf.build();
  ordered_json doc = module_header(h);
  doc["singular"] = ordered_json::array();
  std::string text = h->descriptor() + "\n";
  for (int off : offsets) {
    const auto vs = singular_vectors(h, off);
    ordered_json o;
    o["offset"] = off;
    o["vectors"] = ordered_json::array();
    for (const ModuleVector& v : vs) o["vectors"].push_back(vector_json(h, v));
    doc["singular"].push_back(std::move(o));
    text += "  offset " + std::to_string(off) + ": " + std::to_string(vs.size()) +
            " singular vector(s)";
    for (const ModuleVector& v : vs) text += "  " + v.str();
    text += "\n";
  }
  emit(doc, text);
  return 0;
}

int cmd_module_closure(const ModuleFlags& mf, const std::vector<int>& seed_offsets, int margin) {
  const ModulePtr h = mf.build();
  std::vector<ModuleVector> seeds;
  for (int off : seed_offsets)
    for (const ModuleVector& v : highest_weight_vectors(h, off)) seeds.push_back(v);
  if (seeds.empty()) throw InvalidParams("no highest-weight seeds at the given offsets");
  const ClosureResult c = submodule_closure(h, seeds);
  const bool covers = closure_covers_interior(h, c, margin);
  ordered_json doc = module_header(h);
  doc["seed_offsets"] = seed_offsets;
  doc["seeds"] = seeds.size();
  doc["margin"] = margin;
  doc["dims"] = ordered_json::object();
  std::string text = h->descriptor() + "\n  closure from " + std::to_string(seeds.size()) +
                     " highest-weight seed(s):\n";
  for (const auto& [off, d] : c.dims()) {
    doc["dims"][std::to_string(off)] = d;
    text += "    offset " + std::to_string(off) + ": dim " + std::to_string(d) + "\n";
  }
  doc["covers_interior"] = covers;
  text += covers ? "  covers the margin-" + std::to_string(margin) + " interior\n"
                 : "  proper: misses part of the margin-" + std::to_string(margin) + " interior\n";
  emit(doc, text);
  return 0;
}

int cmd_module_decomp(const ModuleFlags& mf, const std::vector<int>& offsets) {
  const ModulePtr h = mf.build();
  const auto dec = sl2_decomposition(h, offsets);
  ordered_json doc = module_header(h);
  doc["multiplicities"] = ordered_json::object();
  std::string text = h->descriptor() + "\n";
  for (const auto& [off, mult] : dec) {
    doc["multiplicities"][std::to_string(off)] = mult;
    text += "  offset " + std::to_string(off) + ": multiplicity " + std::to_string(mult) + "\n";
  }
  emit(doc, text);
  return 0;
}

int cmd_module_scalars(const ModuleFlags& mf) {
  const ModulePtr h = mf.build();
  ordered_json doc = module_header(h);
  std::string text = h->descriptor() + "\n";
  const std::array<std::pair<const char*, CentralKind>, 2> kinds{
      {{"C", CentralKind::C}, {"Cb", CentralKind::CBAR}}};
  for (const auto& [name, kind] : kinds) {
    try {
      const Poly s = central_scalar(h, kind);
      doc[name] = s.str();
      text += std::string("  ") + name + " acts by " + s.str() + "\n";
    } catch (const NotScalar&) {
      doc[name] = nullptr;
      text += std::string("  ") + name + " does not act by a scalar\n";
    }
  }
  emit(doc, text);
  return 0;
}

int cmd_ann_kernel(const ModuleFlags& mf, int deg) {
  const ModulePtr h = mf.build();
  const KernelReport r = ann_kernel(h, deg);
  ordered_json doc;
  doc["module"] = r.module_descriptor;
  doc["degree_bound"] = r.degree_bound;
  doc["interior_margin"] = r.interior_margin;
  doc["probes"] = r.probes;
  doc["kernel_dim"] = r.kernel_dim;
  doc["kernel_basis"] = ordered_json::array();
  std::string text = r.module_descriptor + "\n  degree bound " + std::to_string(r.degree_bound) +
                     ", " + std::to_string(r.probes) + " probes at interior margin >= " +
                     std::to_string(r.interior_margin) + "\n  kernel dimension " +
                     std::to_string(r.kernel_dim) + "\n";
  for (const AlgebraElement& x : r.kernel_basis) {
    doc["kernel_basis"].push_back(element_json(x));
    text += "    " + x.str() + "\n";
  }
  emit(doc, text);
  return 0;
}

int cmd_saturate(const std::string& expr, const std::string& theta, const std::string& chi,
                 unsigned budget) {
  const CentralCharacter cc =
      CentralCharacter::at(flag_rat(theta, "theta"), flag_rat(chi, "chi"));
  const QuotientElement x = reduce(parse_element(expr), cc);
  const SaturationResult r = saturate_to_unit(x, cc, budget);
  ordered_json doc;
  doc["input"] = expr;
  doc["theta"] = flag_rat(theta, "theta").get_str();
  doc["chi"] = flag_rat(chi, "chi").get_str();
  doc["reached_unit"] = r.reached_unit;
  doc["steps"] = r.steps;
  doc["last"] = element_json(r.last.element());
  doc["trace"] = r.trace;
  std::string text = (r.reached_unit ? "reached the unit in " : "stalled after ") +
                     std::to_string(r.steps) + " moves\n";
  for (const std::string& move : r.trace) text += "  " + move + "\n";
  if (!r.reached_unit) text += "  last element: " + r.last.str() + "\n";
  emit(doc, text);
  return r.reached_unit ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic kernel for the enveloping algebra of the Takiff sl2 algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string expr_a, expr_b, on_label, manifest_path;
  std::optional<std::string> theta_opt, chi_opt;
  std::string theta = "0", chi = "0";
  int max_index = 3, deg = 2, margin = 1;
  unsigned budget = 10000;
  std::vector<int> offsets{-2, -4, -6};
  std::vector<int> seed_offsets{0};
  std::vector<int> decomp_offsets{0, 2, 4, 6};

  CLI::App* normalize = app.add_subcommand("normalize", "parse and normally order an expression");
  normalize->fallthrough();
  normalize->add_option("expr", expr_a, "expression")->required();

  CLI::App* comm = app.add_subcommand("comm", "commutator of two expressions");
  comm->fallthrough();
  comm->add_option("lhs", expr_a, "left expression")->required();
  comm->add_option("rhs", expr_b, "right expression")->required();

  CLI::App* red = app.add_subcommand("reduce", "reduce modulo the central character");
  red->fallthrough();
  red->add_option("expr", expr_a, "expression")->required();
  red->add_option("--theta", theta_opt, "value of C (default: symbolic)");
  red->add_option("--chi", chi_opt, "value of Cb (default: symbolic)");

  CLI::App* claim = app.add_subcommand("claim1", "verify the commutator identity families");
  claim->fallthrough();
  claim->add_option("--max-index", max_index, "largest index per slot")->check(CLI::Range(0, 8));
  claim->add_option("--theta", theta_opt, "specialize C (default: symbolic)");
  claim->add_option("--chi", chi_opt, "specialize Cb (default: symbolic)");

  CLI::App* module = app.add_subcommand("module", "construct and probe modules");
  module->require_subcommand(1);
  module->fallthrough();
  ModuleFlags make_f, act_f, sing_f, clos_f, dec_f, scal_f;
  CLI::App* mk = module->add_subcommand("make", "realize a module window");
  mk->fallthrough();
  make_f.attach(mk);
  CLI::App* act_c = module->add_subcommand("act", "apply an expression to a basis vector");
  act_c->fallthrough();
  act_f.attach(act_c);
  act_c->add_option("expr", expr_a, "expression")->required();
  act_c->add_option("--on", on_label, "basis label tuple, e.g. 0,1 (default: anchor)");
  CLI::App* sing = module->add_subcommand("singular", "singular vectors at weight offsets");
  sing->fallthrough();
  sing_f.attach(sing);
  sing->add_option("--offset", offsets, "weight offsets to scan");
  CLI::App* clos = module->add_subcommand("closure", "submodule closure from highest-weight seeds");
  clos->fallthrough();
  clos_f.attach(clos);
  clos->add_option("--seed-offset", seed_offsets, "offsets providing the seeds");
  clos->add_option("--margin", margin, "interior margin for the coverage verdict");
  CLI::App* dec = module->add_subcommand("decomp", "highest-weight multiplicities");
  dec->fallthrough();
  dec_f.attach(dec);
  dec->add_option("--offset", decomp_offsets, "weight offsets");
  CLI::App* scal = module->add_subcommand("scalars", "action of the central elements");
  scal->fallthrough();
  scal_f.attach(scal);

  CLI::App* ann = app.add_subcommand("ann-kernel", "degree-bounded annihilator kernel");
  ann->fallthrough();
  ModuleFlags ann_f;
  ann_f.attach(ann);
  ann->add_option("--deg", deg, "degree bound")->check(CLI::Range(0, 6));

  CLI::App* sat = app.add_subcommand("saturate", "drive a principal ideal to the unit");
  sat->fallthrough();
  sat->add_option("expr", expr_a, "expression")->required();
  sat->add_option("--theta", theta, "value of C")->required();
  sat->add_option("--chi", chi, "value of Cb")->required();
  sat->add_option("--budget", budget, "move budget");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->fallthrough();
  verify->add_option("--manifest", manifest_path, "JSON manifest of checks to run");

  CLI11_PARSE(app, argc, argv);
  g_json = format == "json";

  try {
    if (*normalize) return cmd_normalize(expr_a);
    if (*comm) return cmd_comm(expr_a, expr_b);
    if (*red) return cmd_reduce(expr_a, theta_opt, chi_opt);
    if (*claim) return cmd_claim1(max_index, theta_opt, chi_opt);
    if (*module) {
      if (*mk) return cmd_module_make(make_f);
      if (*act_c) return cmd_module_act(act_f, expr_a, on_label);
      if (*sing) return cmd_module_singular(sing_f, offsets);
      if (*clos) return cmd_module_closure(clos_f, seed_offsets, margin);
      if (*dec) return cmd_module_decomp(dec_f, decomp_offsets);
      if (*scal) return cmd_module_scalars(scal_f);
    }
    if (*ann) return cmd_ann_kernel(ann_f, deg);
    if (*sat) return cmd_saturate(expr_a, theta, chi, budget);
    if (*verify)
      return run_report(manifest_path.empty() ? default_manifest()
                                              : load_manifest(manifest_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
