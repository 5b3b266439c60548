#include "genres/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genres/errors.hpp"

namespace genres {

namespace {

void require_same_ambient(const SubspaceBasis& m, const SubspaceBasis& n,
                          const char* op) {
  if (m.ambient_dim() != n.ambient_dim()) {
    throw DimensionMismatch(std::string(op) + ": ambient dimensions " +
                            std::to_string(m.ambient_dim()) + " and " +
                            std::to_string(n.ambient_dim()) + " differ");
  }
}

}  // namespace

SubspaceBasis SubspaceBasis::zero(Eigen::Index ambient_dim) {
  return SubspaceBasis(CMat(ambient_dim, 0));
}

SubspaceBasis SubspaceBasis::whole(Eigen::Index ambient_dim) {
  return SubspaceBasis(CMat::Identity(ambient_dim, ambient_dim));
}

SubspaceBasis SubspaceBasis::from_orthonormal(CMat basis,
                                              const TolerancePolicy& tol) {
  if (basis.cols() > basis.rows()) {
    throw InvalidArgument("subspace basis has more columns than rows");
  }
  require_finite(basis, "subspace basis");
  if (basis.cols() > 0) {
    const CMat gram = basis.adjoint() * basis;
    const double err =
        op_norm2(gram - CMat::Identity(basis.cols(), basis.cols()));
    if (err > tol.residual_tol) {
      throw InvalidArgument("subspace basis columns are not orthonormal (‖BᴴB−I‖=" +
                            std::to_string(err) + ")");
    }
  }
  return SubspaceBasis(std::move(basis));
}

SubspaceBasis SubspaceBasis::span_of(const CMat& vectors,
                                     const TolerancePolicy& tol) {
  return range_basis(vectors, tol);
}

CMat SubspaceBasis::projector() const { return basis_ * basis_.adjoint(); }

void require_finite(const CMat& a, const char* what) {
  if (!a.allFinite()) {
    throw InvalidArgument(std::string(what) + " has non-finite entries");
  }
}

Svd svd(const CMat& a) {
  if (a.size() == 0) {
    throw InvalidArgument("svd of an empty matrix");
  }
  require_finite(a, "svd input");
  Eigen::JacobiSVD<CMat> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    throw FactorizationFailure("Jacobi SVD did not converge");
  }
  return Svd{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double rank_cutoff(const RVec& sigma, Eigen::Index rows, Eigen::Index cols,
                   const TolerancePolicy& tol) {
  if (sigma.size() == 0) return 0.0;
  return tol.rank_rtol * sigma(0) *
         static_cast<double>(std::max(rows, cols));
}

namespace {

Eigen::Index count_above(const RVec& sigma, double cutoff) {
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cutoff) ++r;
  return r;
}

RVec singular_values(const CMat& a) {
  require_finite(a, "matrix");
  Eigen::JacobiSVD<CMat> dec(a);
  if (dec.info() != Eigen::Success) {
    throw FactorizationFailure("Jacobi SVD did not converge");
  }
  return dec.singularValues();
}

}  // namespace

RankInfo rank_info(const CMat& a, const TolerancePolicy& tol) {
  if (a.size() == 0) return {};
  const RVec sigma = singular_values(a);
  const double cutoff = rank_cutoff(sigma, a.rows(), a.cols(), tol);
  RankInfo info;
  info.rank = count_above(sigma, cutoff);
  if (info.rank > 0 && sigma(info.rank - 1) <= 10.0 * cutoff) {
    info.marginal = true;
  }
  return info;
}

Eigen::Index numerical_rank(const CMat& a, const TolerancePolicy& tol) {
  return rank_info(a, tol).rank;
}

SubspaceBasis kernel_basis(const CMat& a, const TolerancePolicy& tol) {
  if (a.cols() == 0) return SubspaceBasis::zero(0);
  if (a.rows() == 0) return SubspaceBasis::whole(a.cols());
  const Svd d = svd(a);
  const Eigen::Index r =
      count_above(d.sigma, rank_cutoff(d.sigma, a.rows(), a.cols(), tol));
  return SubspaceBasis::from_orthonormal(d.v.rightCols(a.cols() - r));
}

SubspaceBasis range_basis(const CMat& a, const TolerancePolicy& tol) {
  if (a.rows() == 0) return SubspaceBasis::zero(0);
  if (a.cols() == 0) return SubspaceBasis::zero(a.rows());
  const Svd d = svd(a);
  const Eigen::Index r =
      count_above(d.sigma, rank_cutoff(d.sigma, a.rows(), a.cols(), tol));
  return SubspaceBasis::from_orthonormal(d.u.leftCols(r));
}

double op_norm2(const CMat& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double subspace_gap(const SubspaceBasis& m, const SubspaceBasis& n) {
  require_same_ambient(m, n, "subspace_gap");
  if (m.dim() == 0 && n.dim() == 0) return 0.0;
  return op_norm2(m.projector() - n.projector());
}

bool same_subspace(const SubspaceBasis& m, const SubspaceBasis& n,
                   const TolerancePolicy& tol) {
  require_same_ambient(m, n, "same_subspace");
  if (m.dim() != n.dim()) return false;
  return subspace_gap(m, n) <= tol.gap_tol;
}

bool intersection_trivial(const SubspaceBasis& m, const SubspaceBasis& n,
                          const TolerancePolicy& tol) {
  require_same_ambient(m, n, "intersection_trivial");
  const Eigen::Index total = m.dim() + n.dim();
  if (m.dim() == 0 || n.dim() == 0) return true;
  if (total > m.ambient_dim()) return false;
  CMat joined(m.ambient_dim(), total);
  joined << m.basis(), n.basis();
  return numerical_rank(joined, tol) == total;
}

bool direct_sum_check(const SubspaceBasis& m, const SubspaceBasis& n,
                      const TolerancePolicy& tol) {
  require_same_ambient(m, n, "direct_sum_check");
  return m.dim() + n.dim() == m.ambient_dim() &&
         intersection_trivial(m, n, tol);
}

CMat oblique_projector(const SubspaceBasis& onto, const SubspaceBasis& along,
                       const TolerancePolicy& tol) {
  require_same_ambient(onto, along, "oblique_projector");
  const Eigen::Index n = onto.ambient_dim();
  if (onto.dim() + along.dim() != n) {
    throw DimensionMismatch("oblique_projector: dimensions " +
                            std::to_string(onto.dim()) + " + " +
                            std::to_string(along.dim()) +
                            " do not fill the ambient space");
  }
  if (onto.dim() == 0) return CMat::Zero(n, n);
  CMat joined(n, n);
  joined << onto.basis(), along.basis();
  // Coordinates of x in the [M | N] frame; keep the M part.
  const CMat coords = solve(joined, CMat::Identity(n, n), tol);
  return onto.basis() * coords.topRows(onto.dim());
}

CMat solve(const CMat& a, const CMat& b, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("solve: coefficient matrix is " +
                            std::to_string(a.rows()) + "×" +
                            std::to_string(a.cols()) + ", not square");
  }
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve: right-hand side has " +
                            std::to_string(b.rows()) + " rows, expected " +
                            std::to_string(a.rows()));
  }
  if (a.rows() == 0) return b;
  require_finite(a, "solve coefficient matrix");
  require_finite(b, "solve right-hand side");
  const Eigen::PartialPivLU<CMat> lu(a);
  // rcond() misreports exactly zero pivots; the pivot ratio of U bounds it.
  const RVec pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double pivot_ratio =
      pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
  const double rcond = std::min(lu.rcond(), pivot_ratio);
  const double floor = tol.rank_rtol * static_cast<double>(a.rows());
  if (!(rcond > floor)) {
    throw SingularSystem("solve: matrix is singular to working precision",
                         rcond > 0.0 ? 1.0 / rcond
                                     : std::numeric_limits<double>::infinity());
  }
  CMat x = lu.solve(b);
  if (!x.allFinite()) {
    throw SingularSystem("solve: non-finite solution", 1.0 / rcond);
  }
  return x;
}

double condition_number(const CMat& a) {
  if (a.size() == 0) return 1.0;
  const RVec sigma = singular_values(a);
  const double smin = sigma(sigma.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smin;
}

double relative_residual(const CMat& a, const CMat& b, double scale) {
  return op_norm2(a - b) / std::max(scale, kNormFloor);
}

}  // namespace genres
