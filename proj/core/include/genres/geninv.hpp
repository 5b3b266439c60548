#pragma once

// Generalized inverses T⁺ (TT⁺T = T and T⁺TT⁺ = T⁺) and the complement
// pairs (E, F) with X = N(T) ⊕ E, Y = R(T) ⊕ F that determine them.

#include "genres/numerics.hpp"

namespace genres {

enum class InverseKind { MoorePenrose, FromComplements, UserSupplied };

const char* to_string(InverseKind kind);

/// A verified generalized inverse T⁺ of T together with its projectors
/// P = T·T⁺ (onto R(T)) and Q = T⁺·T (along N(T)).
class GenInverse {
 public:
  /// Validates both axioms and rejects with InvalidGenInverse on failure.
  static GenInverse make(CMat t, CMat tplus, InverseKind kind,
                         const TolerancePolicy& tol = {});

  const CMat& t() const noexcept { return t_; }
  const CMat& tplus() const noexcept { return tplus_; }
  const CMat& p() const noexcept { return p_; }
  const CMat& q() const noexcept { return q_; }
  InverseKind kind() const noexcept { return kind_; }

  Eigen::Index rows() const noexcept { return t_.rows(); }
  Eigen::Index cols() const noexcept { return t_.cols(); }

 private:
  GenInverse(CMat t, CMat tplus, InverseKind kind);
  CMat t_;
  CMat tplus_;
  CMat p_;
  CMat q_;
  InverseKind kind_;
};

/// E complements N(T) in the domain, F complements R(T) in the codomain.
struct ComplementPair {
  SubspaceBasis e;
  SubspaceBasis f;
};

/// Moore-Penrose inverse by inverting the singular values above the rank
/// cutoff; values at or below the cutoff are zeroed.
GenInverse mp_inverse(const CMat& t, const TolerancePolicy& tol = {});

/// The generalized inverse with R(T⁺) = E and N(T⁺) = F.
///
/// T restricted to E is a bijection onto R(T). With R an orthonormal basis of
/// R(T), T⁺ = E·(RᴴTE)⁻¹·C where C takes the R-coordinates of y in the
/// splitting Y = R(T) ⊕ F. Throws InvalidComplement naming the failing
/// direct sum.
GenInverse geninv_from_complements(const CMat& t, const ComplementPair& c,
                                   const TolerancePolicy& tol = {});

/// The complements (R(T⁺), N(T⁺)) realized by an existing inverse.
ComplementPair complements_of(const GenInverse& g,
                              const TolerancePolicy& tol = {});

enum class InverseVerdict { Generalized, InnerOnly, OuterOnly, Neither };

const char* to_string(InverseVerdict verdict);

struct GenInverseCheck {
  double inner_residual = 0.0;  // ‖TBT − T‖ / ‖T‖
  double outer_residual = 0.0;  // ‖BTB − B‖ / ‖B‖
  InverseVerdict verdict = InverseVerdict::Neither;
};

/// Classifies B as an inner and/or outer inverse of T.
GenInverseCheck verify_gen_inverse(const CMat& t, const CMat& b,
                                   const TolerancePolicy& tol = {});

struct MpAxiomCheck {
  double inner_residual = 0.0;          // TBT = T
  double outer_residual = 0.0;          // BTB = B
  double range_hermitian_residual = 0.0;   // (TB)ᴴ = TB
  double domain_hermitian_residual = 0.0;  // (BT)ᴴ = BT
  bool holds = false;
};

/// Residuals of the four Moore-Penrose axioms.
MpAxiomCheck verify_mp_axioms(const CMat& t, const CMat& b,
                              const TolerancePolicy& tol = {});

}  // namespace genres
