#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tiltsocp/report.hpp"

namespace {

void add_common(CLI::App* cmd, tiltsocp::CommonArgs& a) {
  cmd->add_option("file", a.instance_path, "instance JSON")->required();
  cmd->add_option("--report", a.report_path, "write the JSON report here instead of stdout");
  cmd->add_option("--tol-cone", a.tol_cone, "cone membership tolerance");
  cmd->add_option("--tol-rank", a.tol_rank, "relative rank cutoff");
  cmd->add_option("--margin", a.margin, "strict margin for verdicts");
  cmd->add_option("--seed", a.seed, "RNG seed (defaults to the instance seed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tilt stability analysis for second-order cone programs"};
  app.require_subcommand(1);

  tiltsocp::AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand("analyze", "classify the base point of an instance");
  add_common(analyze, an);
  analyze->add_option("--budget", an.budget, "local refinements per search")->check(CLI::PositiveNumber);
  analyze->add_option("--grid-h", an.grid_h, "sphere grid spacing")->check(CLI::PositiveNumber);
  analyze->add_flag("--empirical", an.empirical, "also estimate the tilt modulus numerically");
  analyze->add_option("--gamma", an.gamma, "localization radius")->check(CLI::PositiveNumber);
  analyze->add_option("--r-tilt", an.r_tilt, "tilt grid radius")->check(CLI::PositiveNumber);
  analyze->add_option("--grid-size", an.grid_size, "tilt grid points per axis")->check(CLI::PositiveNumber);

  tiltsocp::FalsifyArgs fa;
  CLI::App* falsify = app.add_subcommand("falsify", "search for counterexamples by sampling");
  falsify->add_option("mode", fa.mode, "mscq or neighborhood")->required()->check(CLI::IsMember({"mscq", "neighborhood"}));
  add_common(falsify, fa);
  falsify->add_option("--samples", fa.samples, "number of samples")->check(CLI::NonNegativeNumber);
  falsify->add_option("--kappa", fa.kappa, "modulus to test (neighborhood)");
  falsify->add_option("--eta", fa.eta, "neighborhood radius")->check(CLI::PositiveNumber);
  falsify->add_option("--radius", fa.radius, "sampling radius (mscq)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }
  try {
    if (*analyze) return tiltsocp::run_analyze(an);
    return tiltsocp::run_falsify(fa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
}
