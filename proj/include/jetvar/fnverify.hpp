#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jetvar/jetspace.hpp"
#include "jetvar/sampling.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// One parameter combination inside an identity check.
struct IdentityCase {
  std::string params;
  double max_dev = 0.0;
  bool passed = false;
};

struct IdentityReport {
  std::string name;
  int n = 0;
  int r = 0;
  /// Human-readable parameter range, e.g. "alpha=1..3, beta=1..3".
  std::string params;
  std::uint64_t seed = 0;
  int samples = 0;
  double max_dev = 0.0;
  bool verdict = false;
  /// For identities with competing range conditions: which one the direct
  /// computation agrees with. Empty otherwise.
  std::string condition_variant;
  /// (condition, max deviation) for every candidate condition.
  std::vector<std::pair<std::string, double>> variants;
  std::vector<IdentityCase> cases;
};

/// Random polynomial of degree <= 2 in every coordinate of `space`,
/// coefficients uniform in [-1, 1).
Expr random_polynomial(const JetSpace& space, SampleRng& rng);
/// Semispray with random polynomial coefficients, deterministic in `seed`.
Semispray random_semispray(const JetSpace& space, std::uint64_t seed);
/// Semi-basic form of the given order with random polynomial components.
SemiBasicForm random_semi_basic(const JetSpace& space, int order, SampleRng& rng);

/// [C_a, C_b] computed directly, compared against (a-b) C_{a+b-1} under the
/// two candidate range conditions "a+b-1 <= r" and "a+b <= r-1".
IdentityReport verify_cacb(const JetSpace& space, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// [C_a, J^b] = -b J^{a+b-1} if a+b <= r+1, else 0.
IdentityReport verify_cajb(const JetSpace& space, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// [C_a, S] - a C_{a-1} (C_0 = S) has no components below order r.
IdentityReport verify_cas(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed,
                          double tol = kDefaultTolerance);
IdentityReport verify_cas(const JetSpace& space, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// J^a [S, J^b] = -b J^{a+b-1} if a+b <= r+1, else 0.
IdentityReport verify_jasjb(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed,
                            double tol = kDefaultTolerance);
IdentityReport verify_jasjb(const JetSpace& space, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// i_{[S, J^b]} theta = -b i_{J^{b-1}} theta for theta semi-basic of every order.
IdentityReport verify_isjbt(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed,
                            double tol = kDefaultTolerance);
IdentityReport verify_isjbt(const JetSpace& space, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// Reconstruction of i_{J^g} theta_L from L for g = 0..k-1, with a random
/// semispray (the identity holds for every semispray).
IdentityReport verify_tabg(const Lagrangian& l, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// L_{C_1} theta_L = theta_{C_1(L)-L}; i_{C_a} theta_L for a < k by the
/// alternating formula; i_{C_a} theta_L = 0 for k <= a <= 2k-1.
IdentityReport verify_ictl(const Lagrangian& l, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

/// The five space-level identities with one random semispray.
std::vector<IdentityReport> verify_space_identities(const JetSpace& space, int samples, std::uint64_t seed,
                                                    double tol = kDefaultTolerance);

}  // namespace jetvar
