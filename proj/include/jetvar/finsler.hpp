#pragma once

#include <optional>
#include <vector>

#include "jetvar/exprmatrix.hpp"
#include "jetvar/jetspace.hpp"
#include "jetvar/sampling.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// A candidate higher-order Finsler function F on T^k_0M. Positivity and the
/// rank condition are validated at sample points, never assumed.
class FinslerCandidate : public Lagrangian {
 public:
  using Lagrangian::Lagrangian;
};

struct ZermeloReport {
  /// max relative deviation of C_1 F from F.
  double c1_residual = 0.0;
  /// max |C_a F| for a = 2..k (entry a-2).
  std::vector<double> calpha_residual;
  bool passed = false;
};

/// C_1 F = F and C_a F = 0 for 2 <= a <= k.
ZermeloReport zermelo_check(const FinslerCandidate& f, const PointSet& points, double tol = kDefaultTolerance);

/// h_ij = F^{2k-1} d^2F / dy^{(k)i} dy^{(k)j}.
ExprMatrix angular_tensor(const FinslerCandidate& f);

struct FinslerValidation {
  bool is_finsler = false;
  bool zermelo_ok = false;
  bool positivity_ok = false;
  int min_rank = 0;
  int max_rank = 0;
  double min_value = 0.0;
};

/// Zermelo conditions, F > 0, and rank h = n-1 at every point.
FinslerValidation finsler_validate(const FinslerCandidate& f, const PointSet& points, double tol = kDefaultTolerance);

struct FormHomogeneity {
  /// max |i_{C_a} theta| and max |L_{C_a} theta| for a = 1..r (entry a-1).
  std::vector<double> interior;
  std::vector<double> lie;
  bool homogeneous = false;
};

FormHomogeneity homogeneous_form_check(const OneForm& theta, const PointSet& points, double tol = kDefaultTolerance);

struct AlphaHomogeneity {
  int alpha = 0;
  /// max |R_a| over components of order < r, R_a = [C_a, S] - a C_{a-1}.
  double lower_order = 0.0;
  /// max relative deviation of R_a^{(r)i} from P_a y^{(1)i}.
  double proportionality = 0.0;
  std::vector<double> p_samples;
  bool proportional = false;
};

struct HomogeneityReport {
  std::vector<AlphaHomogeneity> alphas;
  bool homogeneous = false;
  /// Homogeneous with P_1 = 0 and, for r >= 2, [C_2, S] = 2 C_1.
  bool spray = false;
  /// First alpha whose residual is not a multiple of C_r, 0 if none.
  int failing_alpha = 0;
};

/// [C_a, S] = a C_{a-1} + P_a C_r for a = 1..r, with C_0 = S. Points must be
/// regular.
HomogeneityReport semispray_homogeneity_check(const Semispray& s, const PointSet& points,
                                              double tol = kDefaultTolerance);
/// Throws NotProportional naming the failing alpha.
void require_homogeneous(const HomogeneityReport& report);

struct SprayReport {
  double c1_residual = 0.0;
  /// Absent when r = 1.
  std::optional<double> c2_residual;
  bool spray = false;
};

/// [C_1, S] = S and, for r >= 2, [C_2, S] = 2 C_1.
SprayReport spray_check(const Semispray& s, const PointSet& points, double tol = kDefaultTolerance);
inline bool is_spray(const Semispray& s, const PointSet& points, double tol = kDefaultTolerance) {
  return spray_check(s, points, tol).spray;
}

struct ProjectiveReport {
  bool equivalent = false;
  double residual = 0.0;
  std::vector<double> p_samples;
};

/// G_1 - G_2 = P y^{(1)} for a common scalar P.
ProjectiveReport projective_equivalent(const Semispray& s1, const Semispray& s2, const PointSet& points,
                                       double tol = kDefaultTolerance);

struct MetrizabilityReport {
  /// max |L_S theta_F - dF| per point, relative to the sup norm of both sides.
  double oneform_residual = 0.0;
  /// i_S omega_F = d(i_S theta_F) - L_S theta_F, measured the same way.
  double two_form_residual = 0.0;
  /// Homogeneity is implied by vanishing residuals, so it is reported only.
  bool semispray_homogeneous = false;
  bool passed = false;
};

MetrizabilityReport metrizability_residual(const Semispray& s, const FinslerCandidate& f, const PointSet& points,
                                           double tol = kDefaultTolerance);

struct FinslerEnergyReport {
  /// max relative deviation of i_S theta_F from F.
  double contraction = 0.0;
  /// max |E_F|.
  double energy = 0.0;
  /// max |i_{C_a} omega_F| for a = 1..r.
  std::vector<double> liouville;
  bool passed = false;
};

FinslerEnergyReport finsler_energy_checks(const FinslerCandidate& f, const Semispray& s, const PointSet& points,
                                          double tol = kDefaultTolerance);

/// One semispray whose Euler-Lagrange residual for F vanishes. The residual
/// system A G = b is singular along y^{(1)}, so G solves
/// (A + y^{(1)} y^{(1)T}) G = b; any other member of the projective class
/// works equally well.
Semispray metrizing_semispray(const FinslerCandidate& f);

}  // namespace jetvar
