#include "genres/perturbation.hpp"

#include <string>

#include "genres/errors.hpp"

namespace genres {

const char* to_string(PerturbedClass c) {
  return c == PerturbedClass::Generalized ? "Generalized" : "OuterOnly";
}

namespace {

void require_same_shape(const CMat& tbar, const GenInverse& g) {
  if (tbar.rows() != g.rows() || tbar.cols() != g.cols()) {
    throw DimensionMismatch("perturbed operator is " +
                            std::to_string(tbar.rows()) + "×" +
                            std::to_string(tbar.cols()) + ", base operator is " +
                            std::to_string(g.rows()) + "×" +
                            std::to_string(g.cols()));
  }
}

double checked_smallness(const GenInverse& g, const CMat& tbar) {
  const double s = smallness(g, tbar);
  if (!(s < 1.0)) {
    throw PerturbationTooLarge(
        "‖T⁺‖·‖T̄−T‖ = " + std::to_string(s) + " is not below 1", s);
  }
  return s;
}

}  // namespace

bool transversal(const CMat& tbar, const GenInverse& g,
                 const TolerancePolicy& tol) {
  require_same_shape(tbar, g);
  return intersection_trivial(range_basis(tbar, tol),
                              kernel_basis(g.tplus(), tol), tol);
}

double smallness(const GenInverse& g, const CMat& tbar) {
  require_same_shape(tbar, g);
  require_finite(tbar, "perturbed operator");
  return op_norm2(g.tplus()) * op_norm2(tbar - g.t());
}

PerturbationResult perturbed_inverse(const GenInverse& g, const CMat& tbar,
                                     const TolerancePolicy& tol) {
  PerturbationResult out;
  out.smallness = checked_smallness(g, tbar);
  const CMat delta = tbar - g.t();
  const Eigen::Index n = g.cols();
  const Eigen::Index m = g.rows();

  out.b = solve(CMat::Identity(n, n) + g.tplus() * delta, g.tplus(), tol);

  // T⁺(I + ΔT·T⁺)⁻¹, via the adjoint system.
  const CMat right = solve((CMat::Identity(m, m) + delta * g.tplus()).adjoint(),
                           g.tplus().adjoint(), tol)
                         .adjoint();
  out.formula_gap = relative_residual(out.b, right, op_norm2(g.tplus()));
  if (out.formula_gap > tol.residual_tol) {
    throw ContractViolation("the two factorizations of B differ by " +
                            std::to_string(out.formula_gap));
  }

  const GenInverseCheck check = verify_gen_inverse(tbar, out.b, tol);
  out.inner_residual = check.inner_residual;
  out.outer_residual = check.outer_residual;
  out.outer_verified = check.outer_residual <= tol.residual_tol;
  out.classification = check.verdict == InverseVerdict::Generalized
                           ? PerturbedClass::Generalized
                           : PerturbedClass::OuterOnly;
  out.transversal = transversal(tbar, g, tol);
  return out;
}

SplittingReport splitting_checks(const CMat& tbar, const GenInverse& g,
                                 const TolerancePolicy& tol) {
  const PerturbationResult pert = perturbed_inverse(g, tbar, tol);
  SplittingReport out;
  out.smallness = pert.smallness;
  out.b_generalized = pert.classification == PerturbedClass::Generalized;
  out.transversal = pert.transversal;
  out.codomain_split = direct_sum_check(range_basis(tbar, tol),
                                        kernel_basis(g.tplus(), tol), tol);
  out.domain_split = direct_sum_check(kernel_basis(tbar, tol),
                                      range_basis(g.tplus(), tol), tol);
  return out;
}

EquivalenceReport equivalence_check(const CMat& tbar, const GenInverse& g1,
                                    const GenInverse& g2,
                                    double perturbation_bound,
                                    const TolerancePolicy& tol) {
  require_same_shape(tbar, g1);
  require_same_shape(tbar, g2);
  const double scale = op_norm2(g1.t());
  if (relative_residual(g1.t(), g2.t(), scale) > tol.residual_tol) {
    throw DimensionMismatch(
        "equivalence_check: the two inverses belong to different operators");
  }
  const double dist = op_norm2(tbar - g1.t());
  if (!(dist < perturbation_bound)) {
    throw PerturbationTooLarge("‖T̄−T‖ = " + std::to_string(dist) +
                                   " is not below the supplied bound " +
                                   std::to_string(perturbation_bound),
                               dist);
  }
  EquivalenceReport out;
  out.verdict1 = transversal(tbar, g1, tol);
  out.verdict2 = transversal(tbar, g2, tol);
  out.agree = out.verdict1 == out.verdict2;
  return out;
}

}  // namespace genres
