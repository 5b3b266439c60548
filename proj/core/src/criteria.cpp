#include "genres/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "genres/errors.hpp"

namespace genres {

RankProfile rank_profile(const Pencil& p, const DiskGrid& grid,
                         const TolerancePolicy& tol) {
  RankProfile out;
  for (const Complex& lambda : grid.points()) {
    const RankInfo info = rank_info(p.at(lambda), tol);
    out.points.push_back(lambda);
    out.rank.push_back(info.rank);
    out.nullity.push_back(p.cols() - info.rank);
    out.corank.push_back(p.rows() - info.rank);
    out.marginal.push_back(info.marginal);
  }
  return out;
}

namespace {

// Index of λ = 0 in the profile; DiskGrid guarantees it is present.
std::size_t origin_index(const std::vector<Complex>& points) {
  const auto it = std::find(points.begin(), points.end(), Complex(0.0, 0.0));
  return static_cast<std::size_t>(it - points.begin());
}

bool all_equal_to(const std::vector<Eigen::Index>& values, Eigen::Index anchor) {
  return std::all_of(values.begin(), values.end(),
                     [anchor](Eigen::Index v) { return v == anchor; });
}

FredholmVerdict index_constancy(const Pencil& p, const DiskGrid& grid,
                                const TolerancePolicy& tol) {
  const RankProfile profile = rank_profile(p, grid, tol);
  const std::size_t o = origin_index(profile.points);
  FredholmVerdict out;
  out.nullity_constant = all_equal_to(profile.nullity, profile.nullity[o]);
  out.corank_constant = all_equal_to(profile.corank, profile.corank[o]);
  if (out.nullity_constant != out.corank_constant) {
    throw ContractViolation("nullity and corank constancy disagree");
  }
  out.verdict = out.nullity_constant || out.corank_constant;
  return out;
}

}  // namespace

FiniteRankVerdict finite_rank_criterion(const Pencil& p, const DiskGrid& grid,
                                        const TolerancePolicy& tol) {
  FiniteRankVerdict out;
  out.profile = rank_profile(p, grid, tol);
  const std::size_t o = origin_index(out.profile.points);
  out.verdict = all_equal_to(out.profile.rank, out.profile.rank[o]);
  return out;
}

FredholmVerdict fredholm_criterion(const Pencil& p, const DiskGrid& grid,
                                   const TolerancePolicy& tol) {
  FredholmVerdict out = index_constancy(p, grid, tol);
  out.note =
      "finite dimension: nullity and corank constancy are both equivalent to "
      "rank constancy";
  return out;
}

FredholmVerdict semi_fredholm_criterion(const Pencil& p, const DiskGrid& grid,
                                        const TolerancePolicy& tol) {
  FredholmVerdict out = index_constancy(p, grid, tol);
  out.note =
      "finite dimension: the finiteness qualifiers on nullity and corank hold "
      "vacuously; the test reduces to rank constancy";
  return out;
}

MPResolventReport mp_resolvent_characterization(const Pencil& p,
                                                const DiskGrid& grid,
                                                const TolerancePolicy& tol,
                                                std::uint64_t seed) {
  MPResolventReport out;
  const SubspaceBasis kernel0 = kernel_basis(p.t(), tol);
  const SubspaceBasis range0 = range_basis(p.t(), tol);

  std::vector<CMat> family;
  out.mp_axioms_hold = true;
  double t_dagger_norm = 0.0;
  for (const Complex& lambda : grid.points()) {
    const CMat a = p.at(lambda);
    // Computed from scratch at each point, never through G(λ) = T†(I − λST†)⁻¹.
    GenInverse g = mp_inverse(a, tol);
    out.mp_axioms_hold = out.mp_axioms_hold && verify_mp_axioms(a, g.tplus(), tol).holds;
    const SubspaceBasis kernel = kernel_basis(a, tol);
    const SubspaceBasis range = range_basis(a, tol);
    out.points.push_back(lambda);
    out.kernel_gap.push_back(subspace_gap(kernel, kernel0));
    out.range_gap.push_back(subspace_gap(range, range0));
    if (lambda == Complex(0.0, 0.0)) t_dagger_norm = op_norm2(g.tplus());
    family.push_back(g.tplus());
  }

  const std::vector<Complex>& pts = out.points;
  for (const auto& [i, j] : grid_pairs(pts.size(), seed)) {
    out.max_identity_residual =
        std::max(out.max_identity_residual,
                 identity_residual(family[i], family[j], p.s(), pts[i], pts[j],
                                   t_dagger_norm));
  }

  out.constancy_verdict = true;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    out.constancy_verdict = out.constancy_verdict &&
                            out.kernel_gap[k] <= tol.gap_tol &&
                            out.range_gap[k] <= tol.gap_tol;
  }
  out.identity_verdict =
      out.mp_axioms_hold && out.max_identity_residual <= tol.residual_tol;
  return out;
}

InvertibilityReport invertibility_corollary(const CMat& t, const DiskGrid& grid,
                                            const TolerancePolicy& tol) {
  if (t.rows() != t.cols()) {
    throw DimensionMismatch("invertibility_corollary needs a square matrix");
  }
  const Pencil p = Pencil::shifted(t);
  InvertibilityReport out;
  out.mp = mp_resolvent_characterization(p, grid, tol);
  out.mp_resolvent_ok = out.mp.constancy_verdict && out.mp.identity_verdict;
  out.t_invertible = numerical_rank(t, tol) == t.rows();
  if (out.t_invertible && out.mp_resolvent_ok) {
    const Eigen::Index n = t.rows();
    out.classical_match = true;
    for (const Complex& lambda : grid.points()) {
      const CMat a = p.at(lambda);
      const CMat classical = solve(a, CMat::Identity(n, n), tol);
      const CMat dagger = mp_inverse(a, tol).tplus();
      out.classical_deviation.push_back(op_norm2(dagger - classical));
      out.condition.push_back(condition_number(a));
      out.classical_match =
          out.classical_match &&
          out.classical_deviation.back() <= tol.residual_tol * out.condition.back();
    }
  }
  return out;
}

std::vector<Complex> Region::points() const {
  if (steps < 1) throw InvalidArgument("region needs at least one step per axis");
  if (!(re_min <= re_max) || !(im_min <= im_max)) {
    throw InvalidArgument("region bounds are inverted or not numbers");
  }
  auto axis = [this](double lo, double hi, int k) {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  };
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(steps) * static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    for (int r = 0; r < steps; ++r) {
      pts.emplace_back(axis(re_min, re_max, r), axis(im_min, im_max, i));
    }
  }
  return pts;
}

std::vector<SpectrumPoint> generalized_spectrum_scan(const Pencil& p,
                                                     const Region& region,
                                                     const TolerancePolicy& tol) {
  std::vector<SpectrumPoint> out;
  Eigen::Index max_rank = 0;
  for (const Complex& lambda : region.points()) {
    const RankInfo info = rank_info(p.at(lambda), tol);
    out.push_back({lambda, info.rank, false, info.marginal});
    max_rank = std::max(max_rank, info.rank);
  }
  if (out.empty()) throw InvalidArgument("empty scan region");
  for (SpectrumPoint& pt : out) pt.is_drop = pt.rank < max_rank;
  return out;
}

}  // namespace genres
