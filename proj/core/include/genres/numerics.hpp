#pragma once

// Dense complex linear algebra used by every other part of the library:
// SVD, numerical rank, kernel/range bases, orthogonal and oblique projectors,
// the spectral norm, subspace comparison and square solves.
//
// All functions are pure. Scalars are complex throughout; real data is
// promoted by the caller (see tools/ for file loading).

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace genres {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Cutoffs shared by every module.
///
/// A singular value is treated as zero when it is at most
/// `rank_rtol * sigma_max * max(rows, cols)`. Matrix-equation residuals are
/// relative and compared against `residual_tol`. Two subspaces are equal when
/// their gap is at most `gap_tol`.
struct TolerancePolicy {
  double rank_rtol = std::numeric_limits<double>::epsilon();
  double residual_tol = 1e-9;
  double gap_tol = 1e-8;
};

/// Guards relative residuals against division by the norm of a zero matrix.
inline constexpr double kNormFloor = 1e-300;

/// Orthonormal column basis of a subspace of C^ambient_dim.
///
/// The zero subspace is represented by a basis with no columns.
class SubspaceBasis {
 public:
  /// The zero subspace of C^ambient_dim.
  static SubspaceBasis zero(Eigen::Index ambient_dim);

  /// The whole space C^ambient_dim (identity basis).
  static SubspaceBasis whole(Eigen::Index ambient_dim);

  /// Wraps columns that are already orthonormal; throws InvalidArgument when
  /// ‖BᴴB − I‖ exceeds `tol.residual_tol` or there are more columns than rows.
  static SubspaceBasis from_orthonormal(CMat basis,
                                        const TolerancePolicy& tol = {});

  /// Orthonormal basis of the column span of `vectors` (rank-revealing).
  static SubspaceBasis span_of(const CMat& vectors,
                               const TolerancePolicy& tol = {});

  Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const CMat& basis() const noexcept { return basis_; }

  /// Orthogonal projector B·Bᴴ onto the subspace.
  CMat projector() const;

 private:
  explicit SubspaceBasis(CMat basis) : basis_(std::move(basis)) {}
  CMat basis_;
};

struct Svd {
  CMat u;        // rows × rows, unitary
  RVec sigma;    // min(rows, cols) values, descending
  CMat v;        // cols × cols, unitary
};

/// Full SVD A = U·diag(sigma)·Vᴴ.
Svd svd(const CMat& a);

/// Singular value cutoff `rank_rtol * sigma_max * max(rows, cols)`.
double rank_cutoff(const RVec& sigma, Eigen::Index rows, Eigen::Index cols,
                   const TolerancePolicy& tol);

Eigen::Index numerical_rank(const CMat& a, const TolerancePolicy& tol = {});

/// Rank together with a flag raised when the smallest retained singular value
/// sits within 10× the cutoff, where the rank decision is fragile.
struct RankInfo {
  Eigen::Index rank = 0;
  bool marginal = false;
};
RankInfo rank_info(const CMat& a, const TolerancePolicy& tol = {});

SubspaceBasis kernel_basis(const CMat& a, const TolerancePolicy& tol = {});
SubspaceBasis range_basis(const CMat& a, const TolerancePolicy& tol = {});

/// Spectral norm (largest singular value); 0 for an empty matrix.
double op_norm2(const CMat& a);

/// ‖P_M − P_N‖₂ for the orthogonal projectors onto M and N.
double subspace_gap(const SubspaceBasis& m, const SubspaceBasis& n);

/// Subspace equality: equal dimension and gap ≤ gap_tol.
bool same_subspace(const SubspaceBasis& m, const SubspaceBasis& n,
                   const TolerancePolicy& tol = {});

/// M ∩ N = {0}, decided by the rank of the concatenated basis [M | N].
bool intersection_trivial(const SubspaceBasis& m, const SubspaceBasis& n,
                          const TolerancePolicy& tol = {});

/// Ambient space = M ⊕ N.
bool direct_sum_check(const SubspaceBasis& m, const SubspaceBasis& n,
                      const TolerancePolicy& tol = {});

/// Projector onto M along N, built by a block solve against [M | N].
/// Requires ambient = M ⊕ N (throws SingularSystem otherwise).
CMat oblique_projector(const SubspaceBasis& onto, const SubspaceBasis& along,
                       const TolerancePolicy& tol = {});

/// Solves A·X = B for square, numerically invertible A. Throws
/// SingularSystem (carrying a condition estimate) when rcond of A falls to
/// the rank cutoff.
CMat solve(const CMat& a, const CMat& b, const TolerancePolicy& tol = {});

/// 2-norm condition number σ_max/σ_min (infinity when singular).
double condition_number(const CMat& a);

/// Throws InvalidArgument unless every entry is finite.
void require_finite(const CMat& a, const char* what);

/// ‖A − B‖₂ / max(‖scale‖₂, kNormFloor).
double relative_residual(const CMat& a, const CMat& b, double scale);

}  // namespace genres
