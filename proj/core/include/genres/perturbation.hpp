#pragma once

// Stability of a generalized inverse T⁺ under a perturbation T̄ = T + ΔT.
//
// When ‖T⁺‖·‖ΔT‖ < 1 the matrix B = T⁺(I + ΔT·T⁺)⁻¹ = (I + T⁺ΔT)⁻¹T⁺ is
// defined, and the following are equivalent:
//   (1) B is a generalized inverse of T̄
//   (2) R(T̄) ∩ N(T⁺) = {0}
//   (3) Y = R(T̄) ⊕ N(T⁺)
//   (4) X = N(T̄) ⊕ R(T⁺)

#include "genres/geninv.hpp"

namespace genres {

enum class PerturbedClass { Generalized, OuterOnly };

const char* to_string(PerturbedClass c);

struct PerturbationResult {
  CMat b;
  PerturbedClass classification = PerturbedClass::OuterOnly;
  double inner_residual = 0.0;
  double outer_residual = 0.0;
  double smallness = 0.0;     // ‖T⁺‖₂·‖T̄ − T‖₂
  double formula_gap = 0.0;   // relative gap between the two factorizations
  bool outer_verified = false;  // BT̄B = B held on this call
  bool transversal = false;     // R(T̄) ∩ N(T⁺) = {0}
  /// Classification and transversality agree, as the equivalence requires.
  bool consistent() const {
    return (classification == PerturbedClass::Generalized) == transversal;
  }
};

/// R(T̄) ∩ N(T⁺) = {0}.
bool transversal(const CMat& tbar, const GenInverse& g,
                 const TolerancePolicy& tol = {});

/// ‖T⁺‖₂·‖T̄ − T‖₂.
double smallness(const GenInverse& g, const CMat& tbar);

/// Builds B by solving (I + T⁺ΔT)·B = T⁺ and cross-checks it against
/// T⁺(I + ΔT·T⁺)⁻¹. Throws PerturbationTooLarge when smallness ≥ 1.
PerturbationResult perturbed_inverse(const GenInverse& g, const CMat& tbar,
                                     const TolerancePolicy& tol = {});

struct SplittingReport {
  bool b_generalized = false;   // (1)
  bool transversal = false;     // (2)
  bool codomain_split = false;  // (3) Y = R(T̄) ⊕ N(T⁺)
  bool domain_split = false;    // (4) X = N(T̄) ⊕ R(T⁺)
  double smallness = 0.0;
  bool all_agree() const {
    return b_generalized == transversal && transversal == codomain_split &&
           codomain_split == domain_split;
  }
};

/// Evaluates the four equivalent statements independently.
SplittingReport splitting_checks(const CMat& tbar, const GenInverse& g,
                                 const TolerancePolicy& tol = {});

struct EquivalenceReport {
  bool verdict1 = false;
  bool verdict2 = false;
  bool agree = false;
};

/// Transversality of T̄ against two different generalized inverses of the
/// same T. Agreement is guaranteed only for ‖T̄ − T‖ below an unspecified
/// radius, so disagreement is reported, not thrown. The caller bounds
/// ‖T̄ − T‖₂ by `perturbation_bound` (PerturbationTooLarge otherwise).
EquivalenceReport equivalence_check(const CMat& tbar, const GenInverse& g1,
                                    const GenInverse& g2,
                                    double perturbation_bound,
                                    const TolerancePolicy& tol = {});

}  // namespace genres
