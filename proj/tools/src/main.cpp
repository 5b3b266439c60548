#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using genres::cli::CommandResult;
using genres::cli::Options;

void add_common(CLI::App* cmd, Options& opt, std::string& out) {
  cmd->add_option("--grid-radius", opt.grid_radius,
                  "Disk radius for the λ grid (default: half the family radius)");
  cmd->add_option("--grid-points", opt.grid_points, "Number of grid points")
      ->capture_default_str();
  cmd->add_option("--rank-rtol", opt.tol.rank_rtol, "Relative singular-value cutoff")
      ->capture_default_str();
  cmd->add_option("--residual-tol", opt.tol.residual_tol, "Relative residual bound")
      ->capture_default_str();
  cmd->add_option("--gap-tol", opt.tol.gap_tol, "Subspace gap bound")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Seed for pair subsampling on large grids")
      ->capture_default_str();
  cmd->add_option("--out", out, "Write the report to this file instead of stdout");
  cmd->add_flag("--timing", opt.timing, "Include wall-clock time in the report");
}

int emit(const CommandResult& r, const std::string& out) {
  if (!r.diagnostic.empty()) std::cerr << "genres: " << r.diagnostic << '\n';
  if (r.output.empty()) return r.exit_code;
  if (out.empty()) {
    std::cout << r.output << std::flush;
  } else {
    try {
      genres::cli::save_text(r.output, out);
    } catch (const genres::cli::InputError& e) {
      std::cerr << "genres: " << e.what() << '\n';
      return genres::cli::kExitUsage;
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized resolvents of linear pencils T − λS"};
  app.require_subcommand(1);

  Options opt;
  std::string out;
  std::string t_path;
  std::string s_path;
  genres::Region region;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Existence of a generalized resolvent near λ = 0");
  analyze->add_option("t", t_path, "Matrix file for T")->required();
  analyze->add_option("s", s_path, "Matrix file for S")->required();
  add_common(analyze, opt, out);

  CLI::App* mp = app.add_subcommand(
      "mp-check", "Whether (T − λS)† is a generalized resolvent near λ = 0");
  mp->add_option("t", t_path, "Matrix file for T")->required();
  mp->add_option("s", s_path, "Matrix file for S")->required();
  add_common(mp, opt, out);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Rank of T − λS over a rectangle, as CSV");
  spectrum->add_option("t", t_path, "Matrix file for T")->required();
  spectrum->add_option("s", s_path, "Matrix file for S")->required();
  spectrum->add_option("--re-min", region.re_min)->capture_default_str();
  spectrum->add_option("--re-max", region.re_max)->capture_default_str();
  spectrum->add_option("--im-min", region.im_min)->capture_default_str();
  spectrum->add_option("--im-max", region.im_max)->capture_default_str();
  spectrum->add_option("--steps", region.steps, "Samples per axis")->capture_default_str();
  add_common(spectrum, opt, out);

  CLI::App* perturb = app.add_subcommand(
      "perturb", "Perturbed inverse of T at T̄ and its classification");
  perturb->add_option("t", t_path, "Matrix file for T")->required();
  perturb->add_option("tbar", s_path, "Matrix file for T̄")->required();
  add_common(perturb, opt, out);

  CLI::App* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return genres::cli::kExitUsage;
  }

  if (analyze->parsed()) return emit(genres::cli::cmd_analyze(t_path, s_path, opt), out);
  if (mp->parsed()) return emit(genres::cli::cmd_mp_check(t_path, s_path, opt), out);
  if (spectrum->parsed()) {
    return emit(genres::cli::cmd_spectrum(t_path, s_path, region, opt), out);
  }
  if (perturb->parsed()) return emit(genres::cli::cmd_perturb(t_path, s_path, opt), out);
  if (version->parsed()) return emit(genres::cli::cmd_version(), out);
  return genres::cli::kExitUsage;
}
