#include "genres/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "genres/errors.hpp"

namespace genres {

namespace {

std::string format_lambda(Complex lambda) {
  return "(" + std::to_string(lambda.real()) + "," +
         std::to_string(lambda.imag()) + ")";
}

void require_inverts(const Pencil& p, const GenInverse& g,
                     const TolerancePolicy& tol) {
  if (g.rows() != p.rows() || g.cols() != p.cols()) {
    throw DimensionMismatch("generalized inverse belongs to a " +
                            std::to_string(g.rows()) + "×" +
                            std::to_string(g.cols()) + " operator, pencil is " +
                            std::to_string(p.rows()) + "×" +
                            std::to_string(p.cols()));
  }
  const GenInverseCheck check = verify_gen_inverse(p.t(), g.tplus(), tol);
  if (check.verdict != InverseVerdict::Generalized) {
    throw InvalidGenInverse("supplied inverse is not a generalized inverse of T",
                            check.inner_residual, check.outer_residual);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Pencil, DiskGrid, ResolventFamily

Pencil::Pencil(CMat t, CMat s) : t_(std::move(t)), s_(std::move(s)) {
  if (t_.rows() != s_.rows() || t_.cols() != s_.cols()) {
    throw DimensionMismatch("pencil: T is " + std::to_string(t_.rows()) + "×" +
                            std::to_string(t_.cols()) + " but S is " +
                            std::to_string(s_.rows()) + "×" +
                            std::to_string(s_.cols()));
  }
  if (t_.size() == 0) throw InvalidArgument("pencil: empty operator");
  require_finite(t_, "T");
  require_finite(s_, "S");
}

Pencil Pencil::shifted(CMat t) {
  if (t.rows() != t.cols()) {
    throw DimensionMismatch("shifted pencil needs a square matrix");
  }
  CMat s = CMat::Identity(t.rows(), t.cols());
  return Pencil(std::move(t), std::move(s));
}

DiskGrid DiskGrid::make(double radius, std::size_t count) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("grid radius must be positive and finite");
  }
  if (count == 0) throw InvalidArgument("grid needs at least one point");
  std::vector<Complex> points{Complex(0.0, 0.0)};
  const std::size_t remaining = count - 1;
  const std::size_t rings = (remaining + 7) / 8;
  for (std::size_t k = 1; k <= rings; ++k) {
    const std::size_t on_ring = std::min<std::size_t>(8, remaining - 8 * (k - 1));
    const double r = radius * static_cast<double>(k) / static_cast<double>(rings);
    for (std::size_t j = 0; j < on_ring; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(on_ring);
      points.push_back(std::polar(r, angle));
    }
  }
  return DiskGrid(radius, std::move(points));
}

DiskGrid DiskGrid::from_points(double radius, std::vector<Complex> points) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("grid radius must be positive and finite");
  }
  for (const Complex& z : points) {
    if (!(std::abs(z) <= radius * (1.0 + 1e-12))) {
      throw InvalidArgument("grid point " + format_lambda(z) +
                            " lies outside radius " + std::to_string(radius));
    }
  }
  if (std::find(points.begin(), points.end(), Complex(0.0, 0.0)) ==
      points.end()) {
    points.insert(points.begin(), Complex(0.0, 0.0));
  }
  return DiskGrid(radius, std::move(points));
}

ResolventFamily::ResolventFamily(Pencil pencil, GenInverse g)
    : pencil_(std::move(pencil)), g_(std::move(g)) {
  require_inverts(pencil_, g_, {});
  st_plus_ = pencil_.s() * g_.tplus();
  st_plus_norm_ = op_norm2(st_plus_);
  radius_ = st_plus_norm_ <= kRadiusEps
                ? kRadiusCap
                : std::min(kRadiusCap, 1.0 / st_plus_norm_);
}

bool ResolventFamily::in_radius(Complex lambda) const {
  return std::abs(lambda) * st_plus_norm_ < 1.0;
}

DiskGrid ResolventFamily::default_grid(std::size_t count) const {
  return DiskGrid::make(0.5 * radius_, count);
}

const char* to_string(ExistenceCriterion c) {
  switch (c) {
    case ExistenceCriterion::Transversality: return "transversality";
    case ExistenceCriterion::DomainSplitting: return "domain_splitting";
    case ExistenceCriterion::CodomainSplitting: return "codomain_splitting";
    case ExistenceCriterion::FixedComplements: return "fixed_complements";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Existence and evaluation

ExistenceCertificate existence_check(const Pencil& p, const GenInverse& g,
                                     const DiskGrid& grid,
                                     const TolerancePolicy& tol) {
  require_inverts(p, g, tol);
  const SubspaceBasis inverse_kernel = kernel_basis(g.tplus(), tol);
  ExistenceCertificate cert;
  cert.criterion = ExistenceCriterion::Transversality;
  cert.verdict = true;
  for (const Complex& lambda : grid.points()) {
    const bool ok =
        intersection_trivial(range_basis(p.at(lambda), tol), inverse_kernel, tol);
    cert.per_point.push_back({lambda, ok});
    cert.verdict = cert.verdict && ok;
  }
  return cert;
}

ResolventFamily build_family(const Pencil& p, const GenInverse& g) {
  return ResolventFamily(p, g);
}

CMat evaluate(const ResolventFamily& f, Complex lambda,
              const TolerancePolicy& tol) {
  if (!f.in_radius(lambda)) {
    const double r = std::abs(lambda) * f.st_plus_norm();
    throw OutOfRadius("λ=" + format_lambda(lambda) + " has |λ|·‖ST⁺‖ = " +
                          std::to_string(r) + " ≥ 1",
                      r);
  }
  const CMat& tplus = f.inverse().tplus();
  if (lambda == Complex(0.0, 0.0)) return tplus;
  const Eigen::Index m = f.st_plus().rows();
  // G(I − λST⁺) = T⁺, solved through the adjoint system.
  const CMat lhs = (CMat::Identity(m, m) - lambda * f.st_plus()).adjoint();
  return solve(lhs, tplus.adjoint(), tol).adjoint();
}

CMat evaluate_neumann(const ResolventFamily& f, Complex lambda, int terms) {
  if (terms < 1) throw InvalidArgument("Neumann series needs at least one term");
  if (!f.in_radius(lambda)) {
    const double r = std::abs(lambda) * f.st_plus_norm();
    throw OutOfRadius("λ=" + format_lambda(lambda) + " outside series radius", r);
  }
  const CMat step = lambda * f.st_plus();
  CMat term = f.inverse().tplus();
  CMat sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * step;
    sum += term;
  }
  return sum;
}

double identity_residual(const CMat& g_lambda, const CMat& g_mu, const CMat& s,
                         Complex lambda, Complex mu, double scale) {
  if (lambda == mu) return 0.0;
  const CMat rhs = (lambda - mu) * (g_lambda * s * g_mu);
  return relative_residual(g_lambda - g_mu, rhs, scale);
}

double resolvent_identity_residual(const ResolventFamily& f, Complex lambda,
                                   Complex mu, const TolerancePolicy& tol) {
  const CMat gl = evaluate(f, lambda, tol);
  const CMat gm = evaluate(f, mu, tol);
  return identity_residual(gl, gm, f.pencil().s(), lambda, mu,
                           op_norm2(f.inverse().tplus()));
}

std::vector<std::pair<std::size_t, std::size_t>> grid_pairs(std::size_t n,
                                                            std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n == 0) return pairs;
  if (n <= kFullPairLimit) {
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  std::mt19937_64 rng(seed);
  pairs.reserve(kPairSample);
  for (std::size_t k = 0; k < kPairSample; ++k) {
    // Modulo keeps the sequence identical across standard libraries.
    const std::size_t i = static_cast<std::size_t>(rng() % n);
    const std::size_t j = static_cast<std::size_t>(rng() % n);
    pairs.emplace_back(i, j);
  }
  return pairs;
}

AxiomReport check_resolvent_axioms(const ResolventFamily& f,
                                   const DiskGrid& grid,
                                   const TolerancePolicy& tol,
                                   std::uint64_t seed) {
  AxiomReport report;
  const Pencil& p = f.pencil();
  std::vector<Complex> inside;
  std::vector<CMat> values;
  for (const Complex& lambda : grid.points()) {
    AxiomPoint pt{lambda, f.in_radius(lambda), 0.0, 0.0};
    if (!pt.in_radius) {
      report.out_of_radius.push_back(lambda);
      report.points.push_back(pt);
      continue;
    }
    CMat g = evaluate(f, lambda, tol);
    const CMat a = p.at(lambda);
    pt.inner_residual = relative_residual(a * g * a, a, op_norm2(a));
    pt.outer_residual = relative_residual(g * a * g, g, op_norm2(g));
    report.max_inner_residual = std::max(report.max_inner_residual, pt.inner_residual);
    report.max_outer_residual = std::max(report.max_outer_residual, pt.outer_residual);
    report.points.push_back(pt);
    inside.push_back(lambda);
    values.push_back(std::move(g));
  }

  const double scale = op_norm2(f.inverse().tplus());
  const auto pairs = grid_pairs(inside.size(), seed);
  report.pairs_subsampled = inside.size() > kFullPairLimit;
  report.pairs_checked = pairs.size();
  for (const auto& [i, j] : pairs) {
    const double r = identity_residual(values[i], values[j], p.s(), inside[i],
                                       inside[j], scale);
    if (r > report.max_identity_residual) {
      report.max_identity_residual = r;
      report.worst_pair_lambda = inside[i];
      report.worst_pair_mu = inside[j];
    }
  }
  report.holds = report.out_of_radius.empty() &&
                 report.max_inner_residual <= tol.residual_tol &&
                 report.max_outer_residual <= tol.residual_tol &&
                 report.max_identity_residual <= tol.residual_tol;
  return report;
}

ProjectorPair projector_family(const ResolventFamily& f, Complex lambda,
                               const TolerancePolicy& tol) {
  const CMat g = evaluate(f, lambda, tol);
  const CMat a = f.pencil().at(lambda);
  ProjectorPair out;
  out.p_lambda = a * g;
  out.q_lambda = g * a;
  out.p_idempotency = relative_residual(out.p_lambda * out.p_lambda, out.p_lambda,
                                        std::max(op_norm2(out.p_lambda), 1.0));
  out.q_idempotency = relative_residual(out.q_lambda * out.q_lambda, out.q_lambda,
                                        std::max(op_norm2(out.q_lambda), 1.0));
  const CMat& tplus = f.inverse().tplus();
  out.p_range_gap = subspace_gap(range_basis(out.p_lambda, tol), range_basis(a, tol));
  out.p_kernel_gap =
      subspace_gap(kernel_basis(out.p_lambda, tol), kernel_basis(tplus, tol));
  out.q_range_gap =
      subspace_gap(range_basis(out.q_lambda, tol), range_basis(tplus, tol));
  out.q_kernel_gap =
      subspace_gap(kernel_basis(out.q_lambda, tol), kernel_basis(a, tol));
  return out;
}

// ---------------------------------------------------------------------------
// Direct-sum characterizations

FixedComplementsReport fixed_complements_check(const Pencil& p,
                                               const ComplementPair& c,
                                               const DiskGrid& grid,
                                               const TolerancePolicy& tol) {
  if (c.e.ambient_dim() != p.cols() || c.f.ambient_dim() != p.rows()) {
    throw DimensionMismatch("complements live in C^" +
                            std::to_string(c.e.ambient_dim()) + " and C^" +
                            std::to_string(c.f.ambient_dim()) +
                            ", pencil maps C^" + std::to_string(p.cols()) +
                            " to C^" + std::to_string(p.rows()));
  }
  FixedComplementsReport out;
  out.verdict = true;
  for (const Complex& lambda : grid.points()) {
    const CMat a = p.at(lambda);
    SplitPoint pt{lambda, direct_sum_check(kernel_basis(a, tol), c.e, tol),
                  direct_sum_check(range_basis(a, tol), c.f, tol)};
    out.verdict = out.verdict && pt.domain_split && pt.codomain_split;
    out.per_point.push_back(pt);
  }
  return out;
}

DirectSumCriteria direct_sum_criteria(const Pencil& p, const GenInverse& g,
                                      const DiskGrid& grid,
                                      const TolerancePolicy& tol) {
  require_inverts(p, g, tol);
  const FixedComplementsReport split =
      fixed_complements_check(p, complements_of(g, tol), grid, tol);
  DirectSumCriteria out;
  out.per_point = split.per_point;
  out.domain_split = std::all_of(out.per_point.begin(), out.per_point.end(),
                                 [](const SplitPoint& s) { return s.domain_split; });
  out.codomain_split =
      std::all_of(out.per_point.begin(), out.per_point.end(),
                  [](const SplitPoint& s) { return s.codomain_split; });
  return out;
}

DirectSumCriteria direct_sum_criteria(const Pencil& p,
                                      std::span<const GenInverse> inverses,
                                      const DiskGrid& grid,
                                      const TolerancePolicy& tol) {
  if (inverses.empty()) {
    throw InvalidArgument("direct_sum_criteria needs at least one inverse");
  }
  DirectSumCriteria out = direct_sum_criteria(p, inverses.front(), grid, tol);
  bool all_domain = out.domain_split;
  bool all_codomain = out.codomain_split;
  for (const GenInverse& g : inverses.subspan(1)) {
    const DirectSumCriteria other = direct_sum_criteria(p, g, grid, tol);
    all_domain = all_domain && other.domain_split;
    all_codomain = all_codomain && other.codomain_split;
  }
  out.all_domain_split = all_domain;
  out.all_codomain_split = all_codomain;
  return out;
}

// ---------------------------------------------------------------------------
// Continuity

ContinuityReport continuity_check(const Pencil& p, const InverseFamily& family,
                                  const DiskGrid& grid,
                                  const TolerancePolicy& tol) {
  const Eigen::Index n = p.cols();
  const CMat identity = CMat::Identity(n, n);

  auto member = [&](Complex lambda) {
    CMat g = family(lambda);
    const CMat a = p.at(lambda);
    if (g.rows() != p.cols() || g.cols() != p.rows()) {
      throw InvalidFamily("family member at λ=" + format_lambda(lambda) +
                              " has the wrong shape",
                          lambda);
    }
    if (!g.allFinite() ||
        verify_gen_inverse(a, g, tol).verdict != InverseVerdict::Generalized) {
      throw InvalidFamily("family member at λ=" + format_lambda(lambda) +
                              " is not a generalized inverse of T − λS",
                          lambda);
    }
    return g;
  };

  const CMat tplus = member(Complex(0.0, 0.0));
  const double tplus_norm = op_norm2(tplus);
  const CMat p0 = identity - tplus * p.t();
  const double p0_norm = op_norm2(p0);

  ContinuityReport out;
  out.banach_condition = true;
  out.w_invertible_everywhere = true;
  for (const Complex& lambda : grid.points()) {
    const CMat g = member(lambda);
    const CMat p_lambda = identity - g * p.at(lambda);
    ContinuityPoint pt;
    pt.lambda = lambda;
    pt.deviation = relative_residual(g, tplus, tplus_norm);
    pt.kernel_shift = op_norm2(p_lambda - p0) * p0_norm;
    const CMat w = identity + (p_lambda - p0) * p0;
    const Svd d = svd(w);
    pt.w_min_singular = d.sigma(d.sigma.size() - 1);
    pt.w_invertible = pt.w_min_singular > rank_cutoff(d.sigma, n, n, tol);
    out.max_deviation = std::max(out.max_deviation, pt.deviation);
    out.banach_condition = out.banach_condition && pt.kernel_shift < 1.0;
    out.w_invertible_everywhere = out.w_invertible_everywhere && pt.w_invertible;
    out.per_point.push_back(pt);
  }
  // The analytic family has relative deviation at most r/(1 − r) with
  // r = |λ|·‖ST⁺‖, which reaches 1 at half the radius.
  out.continuous = out.max_deviation <= 1.0 + tol.residual_tol;

  const GenInverse g0 =
      GenInverse::make(p.t(), tplus, InverseKind::UserSupplied, tol);
  out.existence_verdict = existence_check(p, g0, grid, tol).verdict;
  out.conclusion_consistent =
      !(out.continuous && out.banach_condition) || out.existence_verdict;
  return out;
}

}  // namespace genres
