#pragma once

// Existence criteria phrased through rank, kernel and range of T − λS.
//
// In finite dimensions every matrix is finite-rank and Fredholm, and
// rank + nullity = cols, rank + corank = rows. The finite-rank criterion
// (rank constancy), the Fredholm criterion (nullity or corank constancy) and
// the semi-Fredholm criterion (the same with vacuous finiteness qualifiers)
// therefore coincide; the implementations check that they do.

#include <string>
#include <vector>

#include "genres/resolvent.hpp"

namespace genres {

struct RankProfile {
  std::vector<Complex> points;
  std::vector<Eigen::Index> rank;
  std::vector<Eigen::Index> nullity;  // cols − rank
  std::vector<Eigen::Index> corank;   // rows − rank
  std::vector<bool> marginal;         // rank decision within 10× the cutoff
};

RankProfile rank_profile(const Pencil& p, const DiskGrid& grid,
                         const TolerancePolicy& tol = {});

struct FiniteRankVerdict {
  bool verdict = false;  // rank(T − λS) = rank T on the whole grid
  RankProfile profile;
};

FiniteRankVerdict finite_rank_criterion(const Pencil& p, const DiskGrid& grid,
                                        const TolerancePolicy& tol = {});

struct FredholmVerdict {
  bool nullity_constant = false;
  bool corank_constant = false;
  bool verdict = false;  // nullity_constant || corank_constant
  std::string note;
};

/// Throws ContractViolation if nullity and corank constancy ever disagree
/// (impossible by rank–nullity).
FredholmVerdict fredholm_criterion(const Pencil& p, const DiskGrid& grid,
                                   const TolerancePolicy& tol = {});

FredholmVerdict semi_fredholm_criterion(const Pencil& p, const DiskGrid& grid,
                                        const TolerancePolicy& tol = {});

struct MPResolventReport {
  std::vector<Complex> points;
  std::vector<double> kernel_gap;  // gap(N(T − λS), N(T))
  std::vector<double> range_gap;   // gap(R(T − λS), R(T))
  double max_identity_residual = 0.0;
  bool mp_axioms_hold = false;
  bool constancy_verdict = false;
  bool identity_verdict = false;
  bool agree() const { return constancy_verdict == identity_verdict; }
};

/// Whether the Moore-Penrose family (T − λS)† is a generalized resolvent,
/// decided two independent ways: kernel/range constancy, and the resolvent
/// identity applied to (T − λS)† computed from scratch at every point.
MPResolventReport mp_resolvent_characterization(const Pencil& p,
                                                const DiskGrid& grid,
                                                const TolerancePolicy& tol = {},
                                                std::uint64_t seed = 0);

struct InvertibilityReport {
  bool mp_resolvent_ok = false;
  bool t_invertible = false;
  /// Per grid point, when T is invertible: ‖(T − λI)† − (T − λI)⁻¹‖₂ and
  /// the condition number of T − λI.
  std::vector<double> classical_deviation;
  std::vector<double> condition;
  /// Every deviation is within residual_tol·condition.
  bool classical_match = false;
  MPResolventReport mp;
  bool agree() const { return mp_resolvent_ok == t_invertible; }
};

/// The Moore-Penrose family of T − λI is a generalized resolvent exactly when
/// T is invertible, in which case it is the classical resolvent.
InvertibilityReport invertibility_corollary(const CMat& t, const DiskGrid& grid,
                                            const TolerancePolicy& tol = {});

struct Region {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int steps = 21;  // samples per axis

  /// Row-major over the grid: imaginary part outer (ascending), real part
  /// inner (ascending).
  std::vector<Complex> points() const;
};

struct SpectrumPoint {
  Complex lambda;
  Eigen::Index rank = 0;
  bool is_drop = false;   // rank below the region maximum
  bool marginal = false;
};

/// Rank of T − λS over a rectangular region; drop points form the
/// generalized spectrum as seen at the grid resolution.
std::vector<SpectrumPoint> generalized_spectrum_scan(
    const Pencil& p, const Region& region, const TolerancePolicy& tol = {});

}  // namespace genres
