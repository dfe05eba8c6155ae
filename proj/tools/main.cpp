#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jetvar/errors.hpp"
#include "jetvar/problem.hpp"

namespace {

struct Common {
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool out_is_csv) {
  cmd->add_option("--spec", c.spec_path, "Problem spec (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "RNG seed (overrides the spec)");
  cmd->add_option("--samples", c.samples, "Number of sample points (overrides the spec)")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "Relative tolerance (overrides the spec)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", c.out, out_is_csv ? "Trajectory CSV file" : "Also write the report to this file");
}

jetvar::ProblemSpec load(const Common& c) {
  jetvar::ProblemSpec spec = jetvar::load_problem(c.spec_path);
  if (c.seed) spec.seed = *c.seed;
  if (c.samples) spec.samples = *c.samples;
  if (c.tol) spec.tol = *c.tol;
  return spec;
}

int emit(const jetvar::CommandResult& res, const std::string& out) {
  const std::string text = res.report.dump(2);
  std::cout << text << '\n';
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw jetvar::InputError("cannot write '" + out + "'");
    f << text << '\n';
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational calculus on higher-order jet spaces"};
  app.require_subcommand(1);

  Common derive_opts;
  auto* derive = app.add_subcommand("derive", "Derive the Euler-Lagrange semispray of a Lagrangian");
  add_common(derive, derive_opts, false);

  Common check_opts;
  std::string which;
  auto* check = app.add_subcommand("check", "Run one family of checks");
  check->add_option("which", which, "regular|zermelo|finsler|homogeneous|spray|projective|metrizable|pc-identities")
      ->required()
      ->check(CLI::IsMember({"regular", "zermelo", "finsler", "homogeneous", "spray", "projective", "metrizable",
                             "pc-identities"}));
  add_common(check, check_opts, false);

  Common verify_opts;
  auto* verify = app.add_subcommand("verify-identities", "Randomized bracket identity suite");
  add_common(verify, verify_opts, false);

  Common integ_opts;
  std::string init_path;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1000;
  auto* integ = app.add_subcommand("integrate", "Integrate a semispray with fixed-step RK4");
  add_common(integ, integ_opts, true);
  integ->add_option("--init", init_path, "Initial point (JSON array)")->required()->check(CLI::ExistingFile);
  integ->add_option("--t0", t0, "Start time");
  integ->add_option("--t1", t1, "End time");
  integ->add_option("--steps", steps, "Number of RK4 steps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*derive) return emit(jetvar::cmd_derive(load(derive_opts)), derive_opts.out);
    if (*check) return emit(jetvar::cmd_check(load(check_opts), which), check_opts.out);
    if (*verify) return emit(jetvar::cmd_verify_identities(load(verify_opts)), verify_opts.out);
    const jetvar::ProblemSpec spec = load(integ_opts);
    const auto init = jetvar::load_initial_point(init_path);
    jetvar::CommandResult res;
    if (integ_opts.out.empty()) {
      std::ostringstream sink;
      res = jetvar::cmd_integrate(spec, init, t0, t1, steps, sink);
      std::cerr << "note: no --out given, trajectory discarded\n";
    } else {
      std::ofstream csv(integ_opts.out);
      if (!csv) throw jetvar::InputError("cannot write '" + integ_opts.out + "'");
      res = jetvar::cmd_integrate(spec, init, t0, t1, steps, csv);
    }
    std::cout << res.report.dump(2) << '\n';
    return res.exit_code;
  } catch (const std::exception& e) {
    const int code = jetvar::exit_code_for_current_exception();
    std::cerr << "error: " << e.what() << '\n';
    return code;
  }
}
