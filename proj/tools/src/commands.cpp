#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "genres/errors.hpp"
#include "genres/perturbation.hpp"
#include "genres/version.hpp"

namespace genres::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Maps library and input errors onto exit codes 2 and 3.
template <class Body>
CommandResult guarded(Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return {kExitUsage, "", e.what()};
  } catch (const DimensionMismatch& e) {
    return {kExitUsage, "", e.what()};
  } catch (const InvalidArgument& e) {
    return {kExitUsage, "", e.what()};
  } catch (const ContractViolation& e) {
    return {kExitContract, "", std::string("contract violation: ") + e.what()};
  } catch (const Error& e) {
    return {kExitContract, "", std::string("numerical failure: ") + e.what()};
  }
}

void validate(const Options& opt) {
  const TolerancePolicy& t = opt.tol;
  auto nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!nonneg(t.rank_rtol)) throw InvalidArgument("--rank-rtol must be a finite value ≥ 0");
  if (!nonneg(t.residual_tol)) throw InvalidArgument("--residual-tol must be a finite value ≥ 0");
  if (!nonneg(t.gap_tol)) throw InvalidArgument("--gap-tol must be a finite value ≥ 0");
  if (opt.grid_points < 1) throw InvalidArgument("--grid-points must be at least 1");
  if (opt.grid_radius && !(std::isfinite(*opt.grid_radius) && *opt.grid_radius > 0.0)) {
    throw InvalidArgument("--grid-radius must be a finite positive value");
  }
}

// Default: half the family radius. An explicit radius must stay inside it.
DiskGrid make_grid(const Options& opt, const ResolventFamily& f) {
  const double radius = opt.grid_radius.value_or(0.5 * f.radius());
  if (radius >= f.radius()) {
    throw InvalidArgument("--grid-radius " + format_double(radius) +
                          " is not inside the family radius " + format_double(f.radius()));
  }
  return DiskGrid::make(radius, opt.grid_points);
}

Json input_json(const LoadedMatrix& m) {
  Json j;
  j["path"] = m.path;
  j["sha256"] = m.sha256;
  j["rows"] = m.value.rows();
  j["cols"] = m.value.cols();
  return j;
}

Json tolerance_json(const TolerancePolicy& t) {
  Json j;
  j["rank_rtol"] = t.rank_rtol;
  j["residual_tol"] = t.residual_tol;
  j["gap_tol"] = t.gap_tol;
  return j;
}

Json grid_json(const DiskGrid& grid, std::uint64_t seed) {
  Json j;
  j["radius"] = grid.radius();
  j["points"] = grid.size();
  j["seed"] = seed;
  j["note"] = "verdicts certify the sampled grid points only";
  return j;
}

Json fredholm_json(const FredholmVerdict& v) {
  Json j;
  j["nullity_constant"] = v.nullity_constant;
  j["corank_constant"] = v.corank_constant;
  j["verdict"] = v.verdict;
  j["note"] = v.note;
  return j;
}

Json header(const char* command) {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  return j;
}

CommandResult finish(Json report, int code, const char* status, const Options& opt,
                     Clock::time_point start, std::string diagnostic = {}) {
  report["status"] = status;
  report["exit_code"] = code;
  if (opt.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  return {code, dump_report(report), std::move(diagnostic)};
}

}  // namespace

CommandResult cmd_analyze(const std::filesystem::path& t_path,
                          const std::filesystem::path& s_path, const Options& opt) {
  return guarded([&] {
    const auto start = Clock::now();
    validate(opt);
    const LoadedMatrix t = load_matrix(t_path);
    const LoadedMatrix s = load_matrix(s_path);
    const Pencil p(t.value, s.value);
    const GenInverse g = mp_inverse(p.t(), opt.tol);
    const ResolventFamily f = build_family(p, g);
    const DiskGrid grid = make_grid(opt, f);

    const ExistenceCertificate existence = existence_check(p, g, grid, opt.tol);
    const AxiomReport axioms = check_resolvent_axioms(f, grid, opt.tol, opt.seed);
    const FiniteRankVerdict finite = finite_rank_criterion(p, grid, opt.tol);
    const FredholmVerdict fredholm = fredholm_criterion(p, grid, opt.tol);
    const FredholmVerdict semi = semi_fredholm_criterion(p, grid, opt.tol);

    Json report = header("analyze");
    report["inputs"] = {{"t", input_json(t)}, {"s", input_json(s)}};
    report["tolerances"] = tolerance_json(opt.tol);
    report["grid"] = grid_json(grid, opt.seed);
    report["inverse"] = {{"kind", to_string(g.kind())}, {"norm", op_norm2(g.tplus())}};
    report["family"] = {{"st_plus_norm", f.st_plus_norm()}, {"radius", f.radius()}};

    Json failing = Json::array();
    for (const TransversalityPoint& pt : existence.per_point) {
      if (!pt.transversal) failing.push_back(complex_to_json(pt.lambda));
    }
    report["existence"] = existence.verdict;
    report["existence_certificate"] = {{"criterion", to_string(existence.criterion)},
                                       {"failing_points", std::move(failing)}};
    report["axioms"] = {{"holds", axioms.holds},
                        {"max_inner_residual", axioms.max_inner_residual},
                        {"max_outer_residual", axioms.max_outer_residual},
                        {"max_identity_residual", axioms.max_identity_residual},
                        {"worst_pair", {complex_to_json(axioms.worst_pair_lambda),
                                        complex_to_json(axioms.worst_pair_mu)}},
                        {"pairs_checked", axioms.pairs_checked},
                        {"pairs_subsampled", axioms.pairs_subsampled}};
    report["criteria"] = {{"finite_rank", finite.verdict},
                          {"fredholm", fredholm_json(fredholm)},
                          {"semi_fredholm", fredholm_json(semi)}};
    Json marginal = Json::array();
    for (std::size_t k = 0; k < finite.profile.points.size(); ++k) {
      if (finite.profile.marginal[k]) {
        marginal.push_back(complex_to_json(finite.profile.points[k]));
      }
    }
    report["marginal_points"] = std::move(marginal);

    const bool criteria_agree = finite.verdict == existence.verdict &&
                                fredholm.verdict == existence.verdict &&
                                semi.verdict == existence.verdict;
    if (!criteria_agree) {
      return finish(std::move(report), kExitContract, "contract_violation", opt, start,
                    "contract violation: rank criteria disagree with transversality");
    }
    if (existence.verdict != axioms.holds) {
      return finish(std::move(report), kExitContract, "contract_violation", opt, start,
                    "contract violation: transversality and the resolvent conditions "
                    "disagree");
    }
    if (existence.verdict) {
      return finish(std::move(report), kExitHolds, "resolvent_exists", opt, start);
    }
    return finish(std::move(report), kExitFails, "no_resolvent", opt, start);
  });
}

CommandResult cmd_mp_check(const std::filesystem::path& t_path,
                           const std::filesystem::path& s_path, const Options& opt) {
  return guarded([&] {
    const auto start = Clock::now();
    validate(opt);
    const LoadedMatrix t = load_matrix(t_path);
    const LoadedMatrix s = load_matrix(s_path);
    const Pencil p(t.value, s.value);
    const ResolventFamily f = build_family(p, mp_inverse(p.t(), opt.tol));
    const DiskGrid grid = make_grid(opt, f);
    const MPResolventReport mp = mp_resolvent_characterization(p, grid, opt.tol, opt.seed);

    Json report = header("mp-check");
    report["inputs"] = {{"t", input_json(t)}, {"s", input_json(s)}};
    report["tolerances"] = tolerance_json(opt.tol);
    report["grid"] = grid_json(grid, opt.seed);
    Json points = Json::array();
    for (std::size_t k = 0; k < mp.points.size(); ++k) {
      points.push_back({{"lambda", complex_to_json(mp.points[k])},
                        {"kernel_gap", mp.kernel_gap[k]},
                        {"range_gap", mp.range_gap[k]}});
    }
    report["points"] = std::move(points);
    report["max_identity_residual"] = mp.max_identity_residual;
    report["mp_axioms_hold"] = mp.mp_axioms_hold;
    report["constancy_verdict"] = mp.constancy_verdict;
    report["identity_verdict"] = mp.identity_verdict;
    report["agree"] = mp.agree();

    if (!mp.agree()) {
      return finish(std::move(report), kExitContract, "contract_violation", opt, start,
                    "contract violation: kernel/range constancy and the resolvent "
                    "identity disagree");
    }
    if (mp.constancy_verdict) {
      return finish(std::move(report), kExitHolds, "mp_resolvent", opt, start);
    }
    return finish(std::move(report), kExitFails, "not_mp_resolvent", opt, start);
  });
}

CommandResult cmd_spectrum(const std::filesystem::path& t_path,
                           const std::filesystem::path& s_path, const Region& region,
                           const Options& opt) {
  return guarded([&] {
    validate(opt);
    const LoadedMatrix t = load_matrix(t_path);
    const LoadedMatrix s = load_matrix(s_path);
    const Pencil p(t.value, s.value);
    const std::vector<SpectrumPoint> scan = generalized_spectrum_scan(p, region, opt.tol);

    std::ostringstream csv;
    csv << "re,im,rank,is_drop\n";
    std::size_t marginal = 0;
    for (const SpectrumPoint& pt : scan) {
      csv << format_double(pt.lambda.real()) << ',' << format_double(pt.lambda.imag())
          << ',' << pt.rank << ',' << (pt.is_drop ? 1 : 0) << '\n';
      marginal += pt.marginal ? 1 : 0;
    }
    std::string diagnostic;
    if (marginal > 0) {
      diagnostic = std::to_string(marginal) +
                   " point(s) have a rank decision within 10x of the cutoff";
    }
    return CommandResult{kExitHolds, csv.str(), diagnostic};
  });
}

CommandResult cmd_perturb(const std::filesystem::path& t_path,
                          const std::filesystem::path& tbar_path, const Options& opt) {
  return guarded([&] {
    const auto start = Clock::now();
    validate(opt);
    const LoadedMatrix t = load_matrix(t_path);
    const LoadedMatrix tbar = load_matrix(tbar_path);
    if (t.value.rows() != tbar.value.rows() || t.value.cols() != tbar.value.cols()) {
      throw DimensionMismatch("T and T̄ must have the same shape");
    }
    const GenInverse g = mp_inverse(t.value, opt.tol);

    Json report = header("perturb");
    report["inputs"] = {{"t", input_json(t)}, {"tbar", input_json(tbar)}};
    report["tolerances"] = tolerance_json(opt.tol);
    report["inverse"] = {{"kind", to_string(g.kind())}, {"norm", op_norm2(g.tplus())}};
    const double sm = smallness(g, tbar.value);
    report["smallness"] = sm;
    if (!(sm < 1.0)) {
      return finish(std::move(report), kExitFails, "perturbation_too_large", opt, start,
                    "‖T⁺‖·‖T̄ − T‖ = " + format_double(sm) + " is not below 1");
    }

    const PerturbationResult pr = perturbed_inverse(g, tbar.value, opt.tol);
    const SplittingReport split = splitting_checks(tbar.value, g, opt.tol);
    report["b"] = matrix_to_json(pr.b);
    report["classification"] = to_string(pr.classification);
    report["inner_residual"] = pr.inner_residual;
    report["outer_residual"] = pr.outer_residual;
    report["formula_gap"] = pr.formula_gap;
    report["outer_verified"] = pr.outer_verified;
    report["splitting"] = {{"b_generalized", split.b_generalized},
                           {"transversal", split.transversal},
                           {"codomain_split", split.codomain_split},
                           {"domain_split", split.domain_split},
                           {"all_agree", split.all_agree()}};

    const bool generalized = pr.classification == PerturbedClass::Generalized;
    if (!split.all_agree() || !pr.consistent() || !pr.outer_verified ||
        generalized != split.b_generalized) {
      return finish(std::move(report), kExitContract, "contract_violation", opt, start,
                    "contract violation: the splitting conditions disagree");
    }
    return finish(std::move(report), kExitHolds,
                  generalized ? "generalized_inverse" : "outer_inverse_only", opt, start);
  });
}

CommandResult cmd_version() {
  return {kExitHolds, std::string("genres ") + kVersion + "\n", ""};
}

}  // namespace genres::cli
