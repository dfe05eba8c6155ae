#include "jetvar/fnverify.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetvar {
namespace {

constexpr std::uint64_t kDataStream = 0x9E3779B97F4A7C15ULL;

std::string range(const char* name, int lo, int hi) {
  return std::string(name) + "=" + std::to_string(lo) + ".." + std::to_string(hi);
}

IdentityReport start(const char* name, const JetSpace& space, std::string params, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("identity checks need at least one sample");
  IdentityReport rep;
  rep.name = name;
  rep.n = space.n();
  rep.r = space.r();
  rep.params = std::move(params);
  rep.seed = seed;
  rep.samples = samples;
  rep.verdict = true;
  return rep;
}

void add_case(IdentityReport& rep, std::string params, double dev, double tol) {
  const bool ok = dev <= tol;
  rep.cases.push_back({std::move(params), dev, ok});
  rep.max_dev = std::max(rep.max_dev, dev);
  rep.verdict = rep.verdict && ok;
}

PointSet points_for(const JetSpace& space, int samples, std::uint64_t seed) {
  return sample_points(space, static_cast<std::size_t>(samples), seed);
}

double deviation(std::span<const Expr> lhs, std::span<const Expr> rhs, const PointSet& points) {
  return max_deviation(lhs, rhs, points);
}

double deviation_from_zero(std::span<const Expr> lhs, const PointSet& points) {
  if (lhs.empty()) return 0.0;
  return max_abs_value(lhs, points);
}

std::string ab(int a, int b) { return "alpha=" + std::to_string(a) + ", beta=" + std::to_string(b); }

Tensor11 expected_shift(const JetSpace& space, int a, int b) {
  // -b J^{a+b-1} when a+b <= r+1, else 0
  if (a + b <= space.r() + 1) return Expr(static_cast<double>(-b)) * tangent_tensor(space, a + b - 1);
  return Tensor11(space);
}

}  // namespace

Expr random_polynomial(const JetSpace& space, SampleRng& rng) {
  const int d = space.dim();
  Expr p = Expr(rng.uniform());
  for (int a = 0; a < d; ++a) p += Expr(rng.uniform()) * Expr::coord(space.coord(a));
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      p += Expr(rng.uniform()) * Expr::coord(space.coord(a)) * Expr::coord(space.coord(b));
  return p;
}

Semispray random_semispray(const JetSpace& space, std::uint64_t seed) {
  SampleRng rng(seed ^ kDataStream);
  std::vector<Expr> g;
  for (int i = 0; i < space.n(); ++i) g.push_back(random_polynomial(space, rng));
  return Semispray(space, std::move(g));
}

SemiBasicForm random_semi_basic(const JetSpace& space, int order, SampleRng& rng) {
  if (order < 1 || order > space.r() + 1) throw std::out_of_range("semi-basic order outside [1, r+1]");
  OneForm theta(space);
  for (int a = 0; a < space.dim(); ++a)
    if (space.coord(a).order < order) theta[a] = random_polynomial(space, rng);
  return {std::move(theta), order};
}

IdentityReport verify_cacb(const JetSpace& space, int samples, std::uint64_t seed, double tol) {
  const int r = space.r();
  IdentityReport rep = start("cacb", space, range("alpha", 1, r) + ", " + range("beta", 1, r), samples, seed);
  const PointSet pts = points_for(space, samples, seed);

  const char* kShifted = "alpha+beta-1 <= r";
  const char* kStrict = "alpha+beta <= r-1";
  double dev_shifted = 0.0;
  double dev_strict = 0.0;
  for (int a = 1; a <= r; ++a)
    for (int b = 1; b <= r; ++b) {
      const VectorField direct = lie_bracket(liouville(space, a), liouville(space, b));
      const VectorField full = a + b - 1 <= r && a != b
                                   ? Expr(static_cast<double>(a - b)) * liouville(space, a + b - 1)
                                   : VectorField(space);
      const VectorField strict = a + b <= r - 1 ? full : VectorField(space);
      const double d1 = deviation(direct.components(), full.components(), pts);
      const double d2 = deviation(direct.components(), strict.components(), pts);
      dev_shifted = std::max(dev_shifted, d1);
      dev_strict = std::max(dev_strict, d2);
      rep.cases.push_back({ab(a, b), d1, d1 <= tol});
    }
  rep.variants = {{kShifted, dev_shifted}, {kStrict, dev_strict}};
  const bool m1 = dev_shifted <= tol;
  const bool m2 = dev_strict <= tol;
  rep.condition_variant = m1 && m2 ? "both" : m1 ? kShifted : m2 ? kStrict : "neither";
  rep.verdict = m1 || m2;
  rep.max_dev = m1 ? dev_shifted : m2 ? dev_strict : std::min(dev_shifted, dev_strict);
  return rep;
}

IdentityReport verify_cajb(const JetSpace& space, int samples, std::uint64_t seed, double tol) {
  const int r = space.r();
  IdentityReport rep = start("cajb", space, range("alpha", 1, r) + ", " + range("beta", 1, r + 1), samples, seed);
  const PointSet pts = points_for(space, samples, seed);
  for (int a = 1; a <= r; ++a)
    for (int b = 1; b <= r + 1; ++b) {
      const Tensor11 lhs = fn_bracket(liouville(space, a), tangent_tensor(space, b));
      const Tensor11 rhs = expected_shift(space, a, b);
      add_case(rep, ab(a, b), deviation(lhs.entries(), rhs.entries(), pts), tol);
    }
  return rep;
}

IdentityReport verify_cas(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed, double tol) {
  const int r = space.r();
  IdentityReport rep = start("cas", space, range("alpha", 1, r), samples, seed);
  const PointSet pts = points_for(space, samples, seed);
  const VectorField sf = s.field();
  for (int a = 1; a <= r; ++a) {
    const VectorField lower = a == 1 ? sf : liouville(space, a - 1);
    const VectorField residual = lie_bracket(liouville(space, a), sf) - Expr(static_cast<double>(a)) * lower;
    const auto comps = residual.components().first(static_cast<std::size_t>(r * space.n()));
    add_case(rep, "alpha=" + std::to_string(a), deviation_from_zero(comps, pts), tol);
  }
  return rep;
}

IdentityReport verify_cas(const JetSpace& space, int samples, std::uint64_t seed, double tol) {
  return verify_cas(space, random_semispray(space, seed), samples, seed, tol);
}

IdentityReport verify_jasjb(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed, double tol) {
  const int r = space.r();
  IdentityReport rep = start("jasjb", space, range("alpha", 1, r + 1) + ", " + range("beta", 1, r), samples, seed);
  const PointSet pts = points_for(space, samples, seed);
  const VectorField sf = s.field();
  for (int b = 1; b <= r; ++b) {
    const Tensor11 bracket = fn_bracket(sf, tangent_tensor(space, b));
    for (int a = 1; a <= r + 1; ++a) {
      const Tensor11 lhs = compose(tangent_tensor(space, a), bracket);
      const Tensor11 rhs = expected_shift(space, a, b);
      add_case(rep, ab(a, b), deviation(lhs.entries(), rhs.entries(), pts), tol);
    }
  }
  return rep;
}

IdentityReport verify_jasjb(const JetSpace& space, int samples, std::uint64_t seed, double tol) {
  return verify_jasjb(space, random_semispray(space, seed), samples, seed, tol);
}

IdentityReport verify_isjbt(const JetSpace& space, const Semispray& s, int samples, std::uint64_t seed, double tol) {
  const int r = space.r();
  IdentityReport rep = start("isjbt", space, range("order", 1, r) + ", " + range("beta", 1, r), samples, seed);
  const PointSet pts = points_for(space, samples, seed);
  SampleRng rng(seed ^ (kDataStream >> 1));
  const VectorField sf = s.field();
  std::vector<SemiBasicForm> forms;
  for (int order = 1; order <= r; ++order) forms.push_back(random_semi_basic(space, order, rng));
  for (int b = 1; b <= r; ++b) {
    const Tensor11 bracket = fn_bracket(sf, tangent_tensor(space, b));
    for (const SemiBasicForm& theta : forms) {
      const OneForm lhs = contract(bracket, theta.form);
      const OneForm shifted = b == 1 ? theta.form : i_J_alpha(theta.form, b - 1);
      const OneForm rhs = Expr(static_cast<double>(-b)) * shifted;
      add_case(rep, "order=" + std::to_string(theta.order) + ", beta=" + std::to_string(b),
               deviation(lhs.components(), rhs.components(), pts), tol);
    }
  }
  return rep;
}

IdentityReport verify_isjbt(const JetSpace& space, int samples, std::uint64_t seed, double tol) {
  return verify_isjbt(space, random_semispray(space, seed), samples, seed, tol);
}

IdentityReport verify_tabg(const Lagrangian& l, int samples, std::uint64_t seed, double tol) {
  const JetSpace& space = l.space();
  const int k = l.k();
  IdentityReport rep = start("tabg", space, "k=" + std::to_string(k) + ", " + range("gamma", 0, k - 1), samples, seed);
  const PointSet pts = sample_regular(space, static_cast<std::size_t>(samples), seed);
  const Semispray s = random_semispray(space, seed);
  const OneForm theta = poincare_cartan(l).form;

  const OneForm order_one = lie_derivative(s.field(), theta) - exterior_d(space, l.function());
  add_case(rep, "L_S theta - dL order 1", deviation_from_zero(semi_basic_violation(order_one, 1), pts), tol);

  for (int gamma = 0; gamma < k; ++gamma) {
    const OneForm lhs = gamma == 0 ? theta : i_J_alpha(theta, gamma);
    const OneForm rhs = tabg_rhs(s, l.function(), k, gamma);
    add_case(rep, "gamma=" + std::to_string(gamma), deviation(lhs.components(), rhs.components(), pts), tol);
  }
  return rep;
}

IdentityReport verify_ictl(const Lagrangian& l, int samples, std::uint64_t seed, double tol) {
  const JetSpace& space = l.space();
  const int k = l.k();
  const int r = space.r();
  IdentityReport rep = start("ictl", space, "k=" + std::to_string(k) + ", " + range("alpha", 1, r), samples, seed);
  const PointSet pts = sample_regular(space, static_cast<std::size_t>(samples), seed);
  const Semispray s = random_semispray(space, seed);
  const OneForm theta = poincare_cartan(l).form;

  {
    const OneForm lhs = lie_derivative(liouville(space, 1), theta);
    const Lagrangian shifted(l.n(), k, apply(liouville(space, 1), l.function()) - l.function());
    const OneForm rhs = poincare_cartan(shifted).form;
    add_case(rep, "L_C1 theta_L = theta_{C1(L)-L}", deviation(lhs.components(), rhs.components(), pts), tol);
  }
  for (int a = 1; a < k; ++a) {
    Expr rhs;
    for (int b = 1; b <= k - a; ++b) {
      const double c = (b % 2 == 1 ? 1.0 : -1.0) * factorial(a) / factorial(a + b);
      rhs += Expr(c) * semispray_power(s, apply(liouville(space, a + b), l.function()), b - 1);
    }
    const Expr lhs[] = {interior(liouville(space, a), theta)};
    const Expr rhs_arr[] = {rhs};
    add_case(rep, "alpha=" + std::to_string(a), deviation(lhs, rhs_arr, pts), tol);
  }
  for (int a = k; a <= r; ++a) {
    const Expr lhs[] = {interior(liouville(space, a), theta)};
    add_case(rep, "alpha=" + std::to_string(a) + " (vanishing)", deviation_from_zero(lhs, pts), tol);
  }
  return rep;
}

std::vector<IdentityReport> verify_space_identities(const JetSpace& space, int samples, std::uint64_t seed,
                                                    double tol) {
  const Semispray s = random_semispray(space, seed);
  return {verify_cacb(space, samples, seed, tol), verify_cajb(space, samples, seed, tol),
          verify_cas(space, s, samples, seed, tol), verify_jasjb(space, s, samples, seed, tol),
          verify_isjbt(space, s, samples, seed, tol)};
}

}  // namespace jetvar
