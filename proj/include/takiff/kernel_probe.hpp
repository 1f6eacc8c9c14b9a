#pragma once

#include "takiff/modules.hpp"
#include "takiff/quotient.hpp"

#include <string>
#include <vector>

namespace takiff {

/// Label of a distinguished two-sided ideal of the enveloping algebra.
/// Membership is decidable only for the central-character ideal; the other
/// two kinds are carried as labels.
struct IdealSpec {
  enum class Kind { I_CHI_THETA, FRAK_I, FRAK_F };

  Kind kind = Kind::I_CHI_THETA;
  Rational chi{0};    // I_CHI_THETA only
  Rational theta{0};  // I_CHI_THETA only
  Rational mu{0};     // FRAK_I only
  long n = 0;         // FRAK_F only

  /// The ideal generated by C - theta and Cb - chi.
  static IdealSpec i_chi_theta(const Rational& chi, const Rational& theta);
  /// The ideal generated by the barred part and Cas - (mu+1)^2.
  static IdealSpec frak_i(const Rational& mu);
  /// The ideal generated by the barred part and the annihilator of the
  /// (n+1)-dimensional simple sl2-module.
  static IdealSpec frak_f(long n);

  std::string str() const;
};

/// Exact kernel of x -> (x . v)_{v in probe set} over the degree-bounded PBW
/// monomials, together with the bounds that qualify the claim.
struct KernelReport {
  int degree_bound = 0;
  std::string module_descriptor;
  std::size_t kernel_dim = 0;
  std::vector<AlgebraElement> kernel_basis;
  int interior_margin = 0;  // margin threshold defining the probe set
  std::size_t probes = 0;   // basis vectors actually probed
};

/// Kernel of the action of the degree-<= d monomial span on every basis
/// vector of margin >= d, by exact elimination. Dimension 0 certifies that no
/// annihilator exists up to degree d at this truncation. Throws
/// TruncationTooShallow when no basis vector is d-interior.
KernelReport ann_kernel(const ModulePtr& h, int d);

/// Membership in I(chi, theta), decided by reducing x modulo the two central
/// generators; throws Unsupported for the other ideal kinds.
bool ideal_membership(const AlgebraElement& x, const IdealSpec& spec);

/// First vector of the scan 1 (x) v, 1 (x) f v, 1 (x) f^2 v, ... (on a Q-kind
/// module) that x does not annihilate; the pair (x, u) is re-verifiable by
/// act. Throws WitnessNotFound when the scan exhausts the exactly reachable
/// depth, which signals a too-shallow truncation, never a vanishing claim.
ModuleVector annihilation_witness(const ModulePtr& h, const AlgebraElement& x);

}  // namespace takiff
