#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/problem.hpp"

using namespace jetvar;
using nlohmann::json;

namespace {

json warped_metric() { return json::array({json::array({"1", "0"}), json::array({"0", "1 + x1^2"})}); }

json builder_doc(const char* builder, int seed = 3) {
  return {{"dim", 2}, {"builder", builder}, {"metric", warped_metric()}, {"seed", seed}, {"samples", 40}};
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "jetvar_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(JETVAR_CLI_PATH) + " " + args + " > " + (scratch_dir() / "stdout").string() +
                          " 2> " + (scratch_dir() / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ProblemSpec, SchemaErrors) {
  EXPECT_THROW(parse_problem(json::array()), InputError);
  EXPECT_THROW(parse_problem({{"dim", 0}}), InputError);
  EXPECT_THROW(parse_problem({{"dim", "two"}}), InputError);
  EXPECT_THROW(parse_problem({{"dim", 2}, {"order", 0}}), InputError);
  EXPECT_THROW(parse_problem({{"dim", 2}, {"samples", 0}}), InputError);
  EXPECT_THROW(parse_problem({{"dim", 2}, {"builder", "L3"}}), InputError);
  const ProblemSpec ok = parse_problem(builder_doc("L1"));
  EXPECT_EQ(ok.dim, 2);
  EXPECT_EQ(ok.samples, 40);
  EXPECT_DOUBLE_EQ(ok.tol, 1e-9);
}

TEST(ProblemSpec, DigestIgnoresKeyOrder) {
  const json a = json::parse(R"({"dim": 2, "builder": "L1", "seed": 1})");
  const json b = json::parse(R"({"seed": 1, "builder": "L1", "dim": 2})");
  EXPECT_EQ(input_digest(a), input_digest(b));
  EXPECT_EQ(input_digest(a).size(), 16u);
  EXPECT_NE(input_digest(a), input_digest(json::parse(R"({"dim": 2, "builder": "L1", "seed": 2})")));
}

TEST(Commands, DeriveReportShape) {
  const CommandResult r = cmd_derive(parse_problem(builder_doc("L1")));
  EXPECT_EQ(r.exit_code, 0);
  for (const char* key : {"command", "version", "input_digest", "seed", "samples", "tol", "checks", "verdict"})
    EXPECT_TRUE(r.report.contains(key)) << key;
  EXPECT_EQ(r.report["command"], "derive");
  EXPECT_EQ(r.report["version"], kVersion);
  EXPECT_EQ(r.report["verdict"], "pass");
}

TEST(Commands, CheckOutcomes) {
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("L1")), "regular").exit_code, 0);
  // [C1,S] = S holds but [C2,S] = 2 C1 does not for the biharmonic semispray.
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("L2")), "spray").exit_code, 1);
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("L2")), "homogeneous").exit_code, 1);
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("L1")), "zermelo").exit_code, 1);
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("F1")), "metrizable").exit_code, 0);
  EXPECT_EQ(cmd_check(parse_problem(builder_doc("F2", 5)), "finsler").exit_code, 0);
  EXPECT_THROW(cmd_check(parse_problem(builder_doc("L1")), "nonsense"), InputError);
  EXPECT_THROW(cmd_check(parse_problem(builder_doc("L1")), "projective"), InputError);
}

TEST(Commands, ReportsAreDeterministic) {
  const ProblemSpec spec = parse_problem(builder_doc("L2"));
  EXPECT_EQ(cmd_check(spec, "pc-identities").report.dump(), cmd_check(spec, "pc-identities").report.dump());
  const ProblemSpec bare = parse_problem({{"dim", 2}, {"order", 1}, {"seed", 9}, {"samples", 10}});
  EXPECT_EQ(cmd_verify_identities(bare).report.dump(), cmd_verify_identities(bare).report.dump());
}

TEST(Commands, IntegrateWritesCsv) {
  std::ostringstream csv;
  const CommandResult r = cmd_integrate(parse_problem(builder_doc("L1")), {0.1, 0.2, 0.5, -0.3}, 0.0, 1.0, 10, csv);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(csv.str().rfind("t,x1,x2,y1_1,y1_2\n", 0), 0u);
  std::ostringstream sink;
  EXPECT_THROW(cmd_integrate(parse_problem(builder_doc("L1")), {0.1, 0.2}, 0.0, 1.0, 10, sink), InputError);
}

TEST(Cli, ExitCodes) {
  const auto l1 = write_file("l1.json", builder_doc("L1").dump());
  const auto l2 = write_file("l2.json", builder_doc("L2").dump());
  const auto broken = write_file("broken.json", "{\"dim\": 2,");
  const auto bad_expr = write_file("bad_expr.json", R"({"dim": 1, "order": 1, "lagrangian": "y1_1^2 +"})");
  const auto singular = write_file("singular.json", R"({"dim": 2, "order": 1, "lagrangian": "0.5 * y1_1^2"})");
  const auto init = write_file("init.json", "[0.1, 0.2, 0.5, -0.3]");

  EXPECT_EQ(run_cli("derive --spec " + l1.string()), 0);
  EXPECT_NE(slurp(scratch_dir() / "stdout").find("\"verdict\": \"pass\""), std::string::npos);
  EXPECT_EQ(run_cli("check homogeneous --spec " + l2.string()), 1);
  EXPECT_EQ(run_cli("derive --spec " + singular.string()), 2);
  EXPECT_EQ(run_cli("derive --spec " + broken.string()), 3);
  EXPECT_EQ(run_cli("derive --spec " + bad_expr.string()), 3);
  EXPECT_EQ(run_cli("derive --spec /nonexistent/spec.json"), 3);
  EXPECT_EQ(run_cli("check bogus --spec " + l1.string()), 3);
  EXPECT_EQ(run_cli("derive"), 3);

  const auto csv = scratch_dir() / "traj.csv";
  EXPECT_EQ(run_cli("integrate --spec " + l1.string() + " --init " + init.string() + " --steps 20 --out " +
                    csv.string()),
            0);
  EXPECT_EQ(slurp(csv).rfind("t,x1,x2,y1_1,y1_2\n", 0), 0u);
}

TEST(Cli, OutputFileMatchesStdout) {
  const auto l1 = write_file("l1.json", builder_doc("L1").dump());
  const auto out = scratch_dir() / "report.json";
  ASSERT_EQ(run_cli("derive --spec " + l1.string() + " --out " + out.string()), 0);
  const std::string printed = slurp(scratch_dir() / "stdout");
  const std::string saved = slurp(out);
  EXPECT_FALSE(saved.empty());
  EXPECT_EQ(printed, saved);
  ASSERT_EQ(run_cli("derive --spec " + l1.string()), 0);
  EXPECT_EQ(slurp(scratch_dir() / "stdout"), printed);
}
