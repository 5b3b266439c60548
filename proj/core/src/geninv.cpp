#include "genres/geninv.hpp"

#include <algorithm>
#include <string>

#include "genres/errors.hpp"

namespace genres {

const char* to_string(InverseKind kind) {
  switch (kind) {
    case InverseKind::MoorePenrose: return "MoorePenrose";
    case InverseKind::FromComplements: return "FromComplements";
    case InverseKind::UserSupplied: return "UserSupplied";
  }
  return "?";
}

const char* to_string(InverseVerdict verdict) {
  switch (verdict) {
    case InverseVerdict::Generalized: return "Generalized";
    case InverseVerdict::InnerOnly: return "InnerOnly";
    case InverseVerdict::OuterOnly: return "OuterOnly";
    case InverseVerdict::Neither: return "Neither";
  }
  return "?";
}

namespace {

void require_inverse_shape(const CMat& t, const CMat& b, const char* op) {
  if (b.rows() != t.cols() || b.cols() != t.rows()) {
    throw DimensionMismatch(std::string(op) + ": candidate inverse is " +
                            std::to_string(b.rows()) + "×" +
                            std::to_string(b.cols()) + ", expected " +
                            std::to_string(t.cols()) + "×" +
                            std::to_string(t.rows()));
  }
}

}  // namespace

GenInverse::GenInverse(CMat t, CMat tplus, InverseKind kind)
    : t_(std::move(t)), tplus_(std::move(tplus)), kind_(kind) {
  p_ = t_ * tplus_;
  q_ = tplus_ * t_;
}

GenInverse GenInverse::make(CMat t, CMat tplus, InverseKind kind,
                            const TolerancePolicy& tol) {
  require_finite(t, "operator");
  require_finite(tplus, "generalized inverse");
  const GenInverseCheck check = verify_gen_inverse(t, tplus, tol);
  if (check.verdict != InverseVerdict::Generalized) {
    throw InvalidGenInverse(
        std::string("matrix is not a generalized inverse (verdict ") +
            to_string(check.verdict) + ", inner residual " +
            std::to_string(check.inner_residual) + ", outer residual " +
            std::to_string(check.outer_residual) + ")",
        check.inner_residual, check.outer_residual);
  }
  return GenInverse(std::move(t), std::move(tplus), kind);
}

GenInverse mp_inverse(const CMat& t, const TolerancePolicy& tol) {
  const Svd d = svd(t);
  const double cutoff = rank_cutoff(d.sigma, t.rows(), t.cols(), tol);
  CMat tplus = CMat::Zero(t.cols(), t.rows());
  for (Eigen::Index i = 0; i < d.sigma.size() && d.sigma(i) > cutoff; ++i) {
    tplus.noalias() += (1.0 / d.sigma(i)) * d.v.col(i) * d.u.col(i).adjoint();
  }
  return GenInverse::make(t, std::move(tplus), InverseKind::MoorePenrose, tol);
}

GenInverse geninv_from_complements(const CMat& t, const ComplementPair& c,
                                   const TolerancePolicy& tol) {
  if (c.e.ambient_dim() != t.cols() || c.f.ambient_dim() != t.rows()) {
    throw DimensionMismatch("complement pair does not match operator shape");
  }
  const SubspaceBasis kernel = kernel_basis(t, tol);
  const SubspaceBasis range = range_basis(t, tol);
  if (!direct_sum_check(kernel, c.e, tol)) {
    throw InvalidComplement("X = N(T) ⊕ E fails: E (dim " +
                                std::to_string(c.e.dim()) +
                                ") does not complement N(T) (dim " +
                                std::to_string(kernel.dim()) + ")",
                            InvalidComplement::Side::Domain);
  }
  if (!direct_sum_check(range, c.f, tol)) {
    throw InvalidComplement("Y = R(T) ⊕ F fails: F (dim " +
                                std::to_string(c.f.dim()) +
                                ") does not complement R(T) (dim " +
                                std::to_string(range.dim()) + ")",
                            InvalidComplement::Side::Codomain);
  }
  const Eigen::Index r = range.dim();
  const Eigen::Index m = t.rows();
  if (r == 0) {
    return GenInverse::make(t, CMat::Zero(t.cols(), m),
                            InverseKind::FromComplements, tol);
  }

  // R-coordinates of y in the splitting Y = R(T) ⊕ F.
  CMat frame(m, m);
  frame << range.basis(), c.f.basis();
  const CMat coords = solve(frame, CMat::Identity(m, m), tol).topRows(r);

  // T maps E bijectively onto R(T); in R-coordinates this is r×r.
  const CMat restricted = range.basis().adjoint() * t * c.e.basis();
  CMat tplus = c.e.basis() * solve(restricted, coords, tol);
  return GenInverse::make(t, std::move(tplus), InverseKind::FromComplements,
                          tol);
}

ComplementPair complements_of(const GenInverse& g, const TolerancePolicy& tol) {
  return ComplementPair{range_basis(g.tplus(), tol),
                        kernel_basis(g.tplus(), tol)};
}

GenInverseCheck verify_gen_inverse(const CMat& t, const CMat& b,
                                   const TolerancePolicy& tol) {
  require_inverse_shape(t, b, "verify_gen_inverse");
  GenInverseCheck out;
  out.inner_residual = relative_residual(t * b * t, t, op_norm2(t));
  out.outer_residual = relative_residual(b * t * b, b, op_norm2(b));
  const bool inner = out.inner_residual <= tol.residual_tol;
  const bool outer = out.outer_residual <= tol.residual_tol;
  if (inner && outer) {
    out.verdict = InverseVerdict::Generalized;
  } else if (inner) {
    out.verdict = InverseVerdict::InnerOnly;
  } else if (outer) {
    out.verdict = InverseVerdict::OuterOnly;
  } else {
    out.verdict = InverseVerdict::Neither;
  }
  return out;
}

MpAxiomCheck verify_mp_axioms(const CMat& t, const CMat& b,
                              const TolerancePolicy& tol) {
  require_inverse_shape(t, b, "verify_mp_axioms");
  const GenInverseCheck gen = verify_gen_inverse(t, b, tol);
  MpAxiomCheck out;
  out.inner_residual = gen.inner_residual;
  out.outer_residual = gen.outer_residual;
  const CMat tb = t * b;
  const CMat bt = b * t;
  out.range_hermitian_residual =
      relative_residual(tb.adjoint(), tb, std::max(op_norm2(tb), 1.0));
  out.domain_hermitian_residual =
      relative_residual(bt.adjoint(), bt, std::max(op_norm2(bt), 1.0));
  out.holds = out.inner_residual <= tol.residual_tol &&
              out.outer_residual <= tol.residual_tol &&
              out.range_hermitian_residual <= tol.residual_tol &&
              out.domain_hermitian_residual <= tol.residual_tol;
  return out;
}

}  // namespace genres
