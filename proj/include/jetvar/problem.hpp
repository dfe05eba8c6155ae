#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace jetvar {

inline constexpr const char* kVersion = "0.1.0";

/// External problem description, read from JSON:
///
///   dim        n (required)
///   order      k for a Lagrangian/Finsler function, r for a bare semispray
///   metric     n x n array of expression strings in x1..xn
///   builder    "L1" | "F1" | "L2" | "F2" (uses metric, Euclidean if absent)
///   lagrangian / finsler   expression string
///   semispray  n expression strings G^i
///   compare_semispray      n expression strings (projective checks)
///   seed, samples, tol
struct ProblemSpec {
  int dim = 0;
  std::optional<int> order;
  std::optional<std::vector<std::vector<std::string>>> metric;
  std::optional<std::string> builder;
  std::optional<std::string> lagrangian;
  std::optional<std::string> finsler;
  std::optional<std::vector<std::string>> semispray;
  std::optional<std::vector<std::string>> compare_semispray;
  std::uint64_t seed = 0;
  int samples = 100;
  double tol = 1e-9;
  /// The document as read, used for the input digest.
  nlohmann::json raw;
};

/// Throws InputError on schema violations.
ProblemSpec parse_problem(const nlohmann::json& doc);
ProblemSpec load_problem(const std::string& path);

/// FNV-1a 64 of the canonical (sorted-key) serialization, as 16 hex digits.
std::string input_digest(const nlohmann::json& doc);

struct CommandResult {
  nlohmann::json report;
  /// 0 pass, 1 a check failed.
  int exit_code = 0;
};

// Numeric failures propagate as the library's exceptions (DomainError,
// SingularHessian, ...); malformed input as InputError or ParseError.

CommandResult cmd_derive(const ProblemSpec& spec);
/// which: regular, zermelo, finsler, homogeneous, spray, projective,
/// metrizable, pc-identities.
CommandResult cmd_check(const ProblemSpec& spec, const std::string& which);
CommandResult cmd_verify_identities(const ProblemSpec& spec);
/// Writes the trajectory CSV to `csv` and returns a summary report.
CommandResult cmd_integrate(const ProblemSpec& spec, const std::vector<double>& init, double t0, double t1, int steps,
                            std::ostream& csv);

/// Initial point file: a flat JSON array, or an object with a "point" array.
std::vector<double> load_initial_point(const std::string& path);

/// Stable exit code for an in-flight exception: 2 numeric, 3 input.
int exit_code_for_current_exception() noexcept;

}  // namespace jetvar
