#pragma once

// Generalized resolvents of the linear pencil λ ↦ T − λS.
//
// A family G(λ) is a generalized resolvent on U when, for all λ, μ ∈ U,
//   (1) (T − λS)·G(λ)·(T − λS) = T − λS
//   (2) G(λ)·(T − λS)·G(λ)     = G(λ)
//   (3) G(λ) − G(μ)            = (λ − μ)·G(λ)·S·G(μ).
// Given a generalized inverse T⁺ of T, the family G(λ) = T⁺(I − λST⁺)⁻¹ is
// one exactly when R(T − λS) ∩ N(T⁺) = {0} near 0. Every check here is
// evaluated on a finite DiskGrid of sample points, so a positive verdict
// certifies the sampled points only.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "genres/geninv.hpp"

namespace genres {

/// λ ↦ T − λS with T and S of identical shape.
class Pencil {
 public:
  Pencil(CMat t, CMat s);

  /// The pencil λ ↦ T − λI of a square matrix.
  static Pencil shifted(CMat t);

  const CMat& t() const noexcept { return t_; }
  const CMat& s() const noexcept { return s_; }
  Eigen::Index rows() const noexcept { return t_.rows(); }
  Eigen::Index cols() const noexcept { return t_.cols(); }

  CMat at(Complex lambda) const { return t_ - lambda * s_; }

 private:
  CMat t_;
  CMat s_;
};

/// Finite sample of the disk |λ| ≤ radius; always contains 0.
class DiskGrid {
 public:
  /// 0 followed by rings of 8 equally spaced points at radius·k/rings,
  /// k = 1..rings, with rings = ⌈(count−1)/8⌉. The default count of 25 gives
  /// three rings. The outermost ring holds any remainder.
  static DiskGrid make(double radius, std::size_t count = 25);

  /// Explicit points; 0 is prepended if absent. Throws InvalidArgument when a
  /// point lies outside the radius.
  static DiskGrid from_points(double radius, std::vector<Complex> points);

  double radius() const noexcept { return radius_; }
  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  DiskGrid(double radius, std::vector<Complex> points)
      : radius_(radius), points_(std::move(points)) {}
  double radius_;
  std::vector<Complex> points_;
};

inline constexpr double kRadiusCap = 1e12;
inline constexpr double kRadiusEps = 1e-14;

/// G(λ) = T⁺(I − λST⁺)⁻¹ for a fixed pencil and generalized inverse.
class ResolventFamily {
 public:
  ResolventFamily(Pencil pencil, GenInverse g);

  const Pencil& pencil() const noexcept { return pencil_; }
  const GenInverse& inverse() const noexcept { return g_; }
  const CMat& st_plus() const noexcept { return st_plus_; }
  double st_plus_norm() const noexcept { return st_plus_norm_; }
  /// min(kRadiusCap, 1/‖ST⁺‖₂); kRadiusCap when ‖ST⁺‖₂ ≤ kRadiusEps.
  double radius() const noexcept { return radius_; }

  /// |λ|·‖ST⁺‖₂ < 1.
  bool in_radius(Complex lambda) const;

  /// Half the family radius, the default sampling radius.
  DiskGrid default_grid(std::size_t count = 25) const;

 private:
  Pencil pencil_;
  GenInverse g_;
  CMat st_plus_;
  double st_plus_norm_;
  double radius_;
};

struct TransversalityPoint {
  Complex lambda;
  bool transversal = false;
};

enum class ExistenceCriterion {
  Transversality,
  DomainSplitting,
  CodomainSplitting,
  FixedComplements,
};

const char* to_string(ExistenceCriterion c);

struct ExistenceCertificate {
  bool verdict = false;
  std::vector<TransversalityPoint> per_point;
  ExistenceCriterion criterion = ExistenceCriterion::Transversality;
};

/// R(T − λS) ∩ N(T⁺) = {0} at every grid point.
ExistenceCertificate existence_check(const Pencil& p, const GenInverse& g,
                                     const DiskGrid& grid,
                                     const TolerancePolicy& tol = {});

ResolventFamily build_family(const Pencil& p, const GenInverse& g);

/// G(λ) by a direct solve; G(0) = T⁺. Throws OutOfRadius unless
/// |λ|·‖ST⁺‖₂ < 1.
CMat evaluate(const ResolventFamily& f, Complex lambda,
              const TolerancePolicy& tol = {});

/// Σ_{k<terms} λᵏ T⁺(ST⁺)ᵏ. Oracle for `evaluate`; the truncation error is
/// at most ‖T⁺‖·rᵗᵉʳᵐˢ/(1 − r) with r = |λ|·‖ST⁺‖₂.
CMat evaluate_neumann(const ResolventFamily& f, Complex lambda, int terms);

/// ‖G(λ) − G(μ) − (λ − μ)G(λ)SG(μ)‖₂ / ‖T⁺‖₂ for the family.
double resolvent_identity_residual(const ResolventFamily& f, Complex lambda,
                                   Complex mu, const TolerancePolicy& tol = {});

/// Same residual for arbitrary values G(λ), G(μ), normalized by `scale`.
double identity_residual(const CMat& g_lambda, const CMat& g_mu,
                         const CMat& s, Complex lambda, Complex mu,
                         double scale);

struct AxiomPoint {
  Complex lambda;
  bool in_radius = true;
  double inner_residual = 0.0;  // condition (1)
  double outer_residual = 0.0;  // condition (2)
};

struct AxiomReport {
  std::vector<AxiomPoint> points;
  std::vector<Complex> out_of_radius;
  std::size_t pairs_checked = 0;
  bool pairs_subsampled = false;
  double max_inner_residual = 0.0;
  double max_outer_residual = 0.0;
  double max_identity_residual = 0.0;  // condition (3)
  Complex worst_pair_lambda{};
  Complex worst_pair_mu{};
  bool holds = false;
};

/// Pair budget for condition (3): all ordered pairs up to this many grid
/// points, a seeded subsample of kPairSample pairs above.
inline constexpr std::size_t kFullPairLimit = 40;
inline constexpr std::size_t kPairSample = 1600;

/// Conditions (1)–(3) across the grid. Out-of-radius points are listed and
/// skipped; they make `holds` false.
AxiomReport check_resolvent_axioms(const ResolventFamily& f,
                                   const DiskGrid& grid,
                                   const TolerancePolicy& tol = {},
                                   std::uint64_t seed = 0);

/// Ordered index pairs sampled for condition (3).
std::vector<std::pair<std::size_t, std::size_t>> grid_pairs(std::size_t n,
                                                            std::uint64_t seed);

/// P(λ) = (T − λS)G(λ) and Q(λ) = G(λ)(T − λS), with idempotency residuals
/// and the subspace gaps that should vanish when the resolvent exists:
/// R(P) = R(T − λS), N(P) = N(T⁺), R(Q) = R(T⁺), N(Q) = N(T − λS).
struct ProjectorPair {
  CMat p_lambda;
  CMat q_lambda;
  double p_idempotency = 0.0;
  double q_idempotency = 0.0;
  double p_range_gap = 0.0;
  double p_kernel_gap = 0.0;
  double q_range_gap = 0.0;
  double q_kernel_gap = 0.0;
};

ProjectorPair projector_family(const ResolventFamily& f, Complex lambda,
                               const TolerancePolicy& tol = {});

struct SplitPoint {
  Complex lambda;
  bool domain_split = false;    // X = N(T − λS) ⊕ E
  bool codomain_split = false;  // Y = R(T − λS) ⊕ F
};

struct FixedComplementsReport {
  std::vector<SplitPoint> per_point;
  bool verdict = false;
};

/// Whether a single pair (E, F) complements N(T − λS) and R(T − λS) at every
/// grid point.
FixedComplementsReport fixed_complements_check(const Pencil& p,
                                               const ComplementPair& c,
                                               const DiskGrid& grid,
                                               const TolerancePolicy& tol = {});

struct DirectSumCriteria {
  std::vector<SplitPoint> per_point;       // against R(T⁺), N(T⁺) of `g`
  bool domain_split = false;               // X = N(T − λS) ⊕ R(T⁺)
  bool codomain_split = false;             // Y = R(T − λS) ⊕ N(T⁺)
  std::optional<bool> all_domain_split;    // for every supplied inverse
  std::optional<bool> all_codomain_split;  // for every supplied inverse
};

/// Direct-sum characterizations for one generalized inverse.
DirectSumCriteria direct_sum_criteria(const Pencil& p, const GenInverse& g,
                                      const DiskGrid& grid,
                                      const TolerancePolicy& tol = {});

/// As above for `inverses.front()`, plus the for-every-inverse flavor over
/// the whole list.
DirectSumCriteria direct_sum_criteria(const Pencil& p,
                                      std::span<const GenInverse> inverses,
                                      const DiskGrid& grid,
                                      const TolerancePolicy& tol = {});

using InverseFamily = std::function<CMat(Complex)>;

struct ContinuityPoint {
  Complex lambda;
  double deviation = 0.0;        // ‖(T − λS)⁺ − T⁺‖₂ / ‖T⁺‖₂
  double kernel_shift = 0.0;     // ‖P_λ − P₀‖₂·‖P₀‖₂
  double w_min_singular = 0.0;   // σ_min(W), W = I + (P_λ − P₀)P₀
  bool w_invertible = false;
};

struct ContinuityReport {
  std::vector<ContinuityPoint> per_point;
  double max_deviation = 0.0;
  bool continuous = false;        // max_deviation ≤ 1 up to residual_tol
  bool banach_condition = false;  // kernel_shift < 1 at every point
  bool w_invertible_everywhere = false;
  bool existence_verdict = false;  // existence_check with T⁺ = family(0)
  /// Hypotheses imply existence: !(continuous && banach_condition) ||
  /// existence_verdict.
  bool conclusion_consistent = false;
};

/// Checks a caller-supplied family of generalized inverses for the
/// continuity hypothesis at 0 and the operator W = I − P₀ + P_λP₀ with
/// P_λ = I − (T − λS)⁺(T − λS). Throws InvalidFamily naming λ when a member
/// is not a generalized inverse of T − λS.
ContinuityReport continuity_check(const Pencil& p, const InverseFamily& family,
                                  const DiskGrid& grid,
                                  const TolerancePolicy& tol = {});

}  // namespace genres
