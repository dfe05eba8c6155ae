#include "jetvar/problem.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/finsler.hpp"
#include "jetvar/fnverify.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/tape.hpp"
#include "jetvar/variational.hpp"
#include "jetvar/worked.hpp"

namespace jetvar {

using nlohmann::json;

namespace {

template <class T>
std::optional<T> optional_field(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

int builder_order(const std::string& tag) {
  if (tag == "L1" || tag == "F1") return 1;
  if (tag == "L2" || tag == "F2") return 2;
  throw InputError("unknown builder '" + tag + "' (expected L1, F1, L2 or F2)");
}

json check(const std::string& name, double value, bool passed) {
  return json{{"name", name}, {"max_dev", value}, {"passed", passed}};
}

json rendered(std::span<const Expr> es) {
  json out = json::array();
  for (const Expr& e : es) out.push_back(render(e));
  return out;
}

json identity_json(const IdentityReport& rep) {
  json cases = json::array();
  for (const auto& c : rep.cases) cases.push_back({{"params", c.params}, {"max_dev", c.max_dev}, {"passed", c.passed}});
  json out{{"name", rep.name},       {"n", rep.n},
           {"r", rep.r},             {"params", rep.params},
           {"seed", rep.seed},       {"samples", rep.samples},
           {"max_dev", rep.max_dev}, {"verdict", rep.verdict ? "pass" : "fail"},
           {"cases", cases}};
  if (!rep.condition_variant.empty()) {
    out["condition_variant"] = rep.condition_variant;
    json variants = json::object();
    for (const auto& [cond, dev] : rep.variants) variants[cond] = dev;
    out["variants"] = variants;
  }
  return out;
}

// Resolves the roles a command needs from a ProblemSpec.
class Problem {
 public:
  explicit Problem(const ProblemSpec& spec) : spec_(spec) {}

  const ProblemSpec& spec() const { return spec_; }

  bool has_function() const { return spec_.lagrangian || spec_.finsler || spec_.builder; }

  int function_order() const {
    if (spec_.builder && !spec_.lagrangian && !spec_.finsler) return builder_order(*spec_.builder);
    if (!spec_.order) throw InputError("'order' is required with a lagrangian or finsler expression");
    return *spec_.order;
  }

  Metric metric() const {
    if (!spec_.metric) return Metric::euclidean(spec_.dim);
    const auto& rows = *spec_.metric;
    const auto n = static_cast<std::size_t>(spec_.dim);
    if (rows.size() != n) throw InputError("metric must have " + std::to_string(n) + " rows");
    const JetSpace base(spec_.dim, 1);
    ExprMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw InputError("metric row " + std::to_string(i + 1) + " has the wrong length");
      for (std::size_t j = 0; j < n; ++j) g(i, j) = parse(rows[i][j], base);
    }
    try {
      return Metric(std::move(g));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }

  Expr function_expr(const std::optional<std::string>& preferred, const std::optional<std::string>& other) const {
    const int k = function_order();
    const JetSpace space = lagrangian_space(spec_.dim, k);
    if (preferred) return parse(*preferred, space);
    if (other) return parse(*other, space);
    if (!spec_.builder) throw InputError("command needs a lagrangian, finsler or builder entry");
    const Metric g = metric();
    const std::string& tag = *spec_.builder;
    if (tag == "L1") return build_l1(g).function();
    if (tag == "F1") return build_f1(g).function();
    if (tag == "L2") return build_l2(g).function();
    return build_f2(g).function();
  }

  Lagrangian lagrangian() const {
    return make<Lagrangian>(function_expr(spec_.lagrangian, spec_.finsler));
  }
  FinslerCandidate finsler() const { return make<FinslerCandidate>(function_expr(spec_.finsler, spec_.lagrangian)); }

  JetSpace semispray_space() const {
    if (has_function()) return lagrangian_space(spec_.dim, function_order());
    if (!spec_.order) throw InputError("'order' is required for a bare semispray");
    return JetSpace(spec_.dim, *spec_.order);
  }

  Semispray parse_semispray(const std::vector<std::string>& g) const {
    const JetSpace space = semispray_space();
    if (g.size() != static_cast<std::size_t>(spec_.dim))
      throw InputError("semispray needs " + std::to_string(spec_.dim) + " coefficients");
    std::vector<Expr> coeffs;
    for (const auto& text : g) coeffs.push_back(parse(text, space));
    return Semispray(space, std::move(coeffs));
  }

  bool finsler_role() const {
    return spec_.finsler || (!spec_.lagrangian && spec_.builder && spec_.builder->front() == 'F');
  }

  /// Given semispray, or the one determined by the function role.
  Semispray semispray(const PointSet& points) const {
    if (spec_.semispray) return parse_semispray(*spec_.semispray);
    if (!has_function()) throw InputError("command needs a semispray or a function to derive one from");
    if (finsler_role()) return metrizing_semispray(finsler());
    return derive_semispray(lagrangian(), points, std::max(spec_.tol, 1e-8)).semispray;
  }

  PointSet points(const JetSpace& space) const {
    PointFilter accept;
    if (spec_.builder && *spec_.builder == "F2" && !spec_.finsler && !spec_.lagrangian)
      accept = transverse_acceleration_filter(metric(), space);
    return sample_regular(space, static_cast<std::size_t>(spec_.samples), spec_.seed, std::move(accept));
  }

 private:
  template <class T>
  T make(Expr e) const {
    try {
      return T(spec_.dim, function_order(), std::move(e));
    } catch (const std::invalid_argument& ex) {
      throw InputError(ex.what());
    }
  }

  const ProblemSpec& spec_;
};

json base_report(const ProblemSpec& spec, const std::string& command) {
  return json{{"command", command},    {"version", kVersion},     {"input_digest", input_digest(spec.raw)},
              {"seed", spec.seed},     {"samples", spec.samples}, {"tol", spec.tol}};
}

CommandResult finish(json report, const json& checks) {
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.at("passed").get<bool>();
  report["checks"] = checks;
  report["verdict"] = ok ? "pass" : "fail";
  return {std::move(report), ok ? 0 : 1};
}

json vector_json(const std::vector<double>& v) { return json(v); }

}  // namespace

ProblemSpec parse_problem(const json& doc) {
  if (!doc.is_object()) throw InputError("problem spec must be a JSON object");
  ProblemSpec spec;
  spec.raw = doc;
  const auto dim = optional_field<int>(doc, "dim");
  if (!dim || *dim < 1) throw InputError("'dim' must be a positive integer");
  spec.dim = *dim;
  spec.order = optional_field<int>(doc, "order");
  if (spec.order && *spec.order < 1) throw InputError("'order' must be at least 1");
  spec.metric = optional_field<std::vector<std::vector<std::string>>>(doc, "metric");
  spec.builder = optional_field<std::string>(doc, "builder");
  if (spec.builder) builder_order(*spec.builder);
  spec.lagrangian = optional_field<std::string>(doc, "lagrangian");
  spec.finsler = optional_field<std::string>(doc, "finsler");
  spec.semispray = optional_field<std::vector<std::string>>(doc, "semispray");
  spec.compare_semispray = optional_field<std::vector<std::string>>(doc, "compare_semispray");
  if (auto seed = optional_field<std::uint64_t>(doc, "seed")) spec.seed = *seed;
  if (auto samples = optional_field<int>(doc, "samples")) spec.samples = *samples;
  if (auto tol = optional_field<double>(doc, "tol")) spec.tol = *tol;
  if (spec.samples < 1) throw InputError("'samples' must be at least 1");
  if (!(spec.tol >= 0.0)) throw InputError("'tol' must be non-negative");
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError("spec file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_problem(doc);
}

std::string input_digest(const json& doc) {
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CommandResult cmd_derive(const ProblemSpec& spec) {
  const Problem prob(spec);
  const Lagrangian l = prob.lagrangian();
  const PointSet pts = prob.points(l.space());
  const DerivedSemispray d = derive_semispray(l, pts, std::max(spec.tol, 1e-8));
  const OneForm residual = el_residual(l, d.semispray);
  const double el = max_abs_value(residual.components(), pts);

  json report = base_report(spec, "derive");
  report["k"] = l.k();
  report["r"] = l.space().r();
  report["G"] = rendered(d.semispray.coefficients());
  report["hessian_rank"] = d.hessian_rank;
  report["system_deviation"] = d.system_deviation;
  report["el_residual"] = el;
  json checks = json::array({check("el_residual", el, el <= spec.tol)});
  return finish(std::move(report), checks);
}

CommandResult cmd_check(const ProblemSpec& spec, const std::string& which) {
  const Problem prob(spec);
  json report = base_report(spec, "check " + which);
  json checks = json::array();
  const double tol = spec.tol;

  if (which == "regular") {
    const Lagrangian l = prob.lagrangian();
    const RegularityReport reg = regularity_check(l, prob.points(l.space()));
    report["min_rank"] = reg.min_rank;
    report["max_rank"] = reg.max_rank;
    checks.push_back({{"name", "hessian_rank"}, {"min_rank", reg.min_rank}, {"expected", l.n()}, {"passed", reg.regular}});
  } else if (which == "zermelo") {
    const FinslerCandidate f = prob.finsler();
    const ZermeloReport z = zermelo_check(f, prob.points(f.space()), tol);
    checks.push_back(check("C1F=F", z.c1_residual, z.c1_residual <= tol));
    for (std::size_t a = 0; a < z.calpha_residual.size(); ++a)
      checks.push_back(check("C" + std::to_string(a + 2) + "F=0", z.calpha_residual[a], z.calpha_residual[a] <= tol));
  } else if (which == "finsler") {
    const FinslerCandidate f = prob.finsler();
    const FinslerValidation v = finsler_validate(f, prob.points(f.space()), tol);
    report["min_rank"] = v.min_rank;
    report["max_rank"] = v.max_rank;
    report["min_value"] = v.min_value;
    checks.push_back({{"name", "zermelo"}, {"passed", v.zermelo_ok}});
    checks.push_back({{"name", "positivity"}, {"min_value", v.min_value}, {"passed", v.positivity_ok}});
    checks.push_back({{"name", "angular_rank"},
                      {"min_rank", v.min_rank},
                      {"max_rank", v.max_rank},
                      {"expected", f.n() - 1},
                      {"passed", v.min_rank == f.n() - 1 && v.max_rank == f.n() - 1}});
  } else if (which == "homogeneous") {
    const JetSpace space = prob.semispray_space();
    const PointSet pts = prob.points(space);
    if (spec.semispray || prob.has_function()) {
      const Semispray s = prob.semispray(pts);
      const HomogeneityReport h = semispray_homogeneity_check(s, pts, tol);
      json alphas = json::array();
      for (const auto& a : h.alphas) {
        alphas.push_back({{"alpha", a.alpha},
                          {"lower_order", a.lower_order},
                          {"proportionality", a.proportionality},
                          {"proportional", a.proportional}});
        checks.push_back(check("[C" + std::to_string(a.alpha) + ",S] proportional", std::max(a.lower_order, a.proportionality),
                               a.proportional));
      }
      report["alphas"] = alphas;
      report["failing_alpha"] = h.failing_alpha;
      report["spray"] = h.spray;
    }
    if (prob.finsler_role()) {
      const FinslerCandidate f = prob.finsler();
      const FormHomogeneity fh = homogeneous_form_check(poincare_cartan(f).form, pts, tol);
      for (std::size_t a = 0; a < fh.interior.size(); ++a) {
        const std::string c = "C" + std::to_string(a + 1);
        checks.push_back(check("i_" + c + " theta_F", fh.interior[a], fh.interior[a] <= tol));
        checks.push_back(check("L_" + c + " theta_F", fh.lie[a], fh.lie[a] <= tol));
      }
    }
  } else if (which == "spray") {
    const JetSpace space = prob.semispray_space();
    const PointSet pts = prob.points(space);
    const SprayReport s = spray_check(prob.semispray(pts), pts, tol);
    checks.push_back(check("[C1,S]=S", s.c1_residual, s.c1_residual <= tol));
    if (s.c2_residual) checks.push_back(check("[C2,S]=2C1", *s.c2_residual, *s.c2_residual <= tol));
  } else if (which == "projective") {
    if (!spec.compare_semispray) throw InputError("check projective needs 'compare_semispray'");
    const JetSpace space = prob.semispray_space();
    const PointSet pts = prob.points(space);
    const ProjectiveReport p =
        projective_equivalent(prob.semispray(pts), prob.parse_semispray(*spec.compare_semispray), pts, tol);
    report["P_samples"] = vector_json(p.p_samples);
    checks.push_back(check("G1-G2 = P y1", p.residual, p.equivalent));
  } else if (which == "metrizable") {
    const FinslerCandidate f = prob.finsler();
    const PointSet pts = prob.points(f.space());
    const Semispray s = prob.semispray(pts);
    const MetrizabilityReport m = metrizability_residual(s, f, pts, tol);
    const FinslerEnergyReport e = finsler_energy_checks(f, s, pts, tol);
    report["semispray_homogeneous"] = m.semispray_homogeneous;
    report["G"] = rendered(s.coefficients());
    checks.push_back(check("L_S theta_F = dF", m.oneform_residual, m.oneform_residual <= tol));
    checks.push_back(check("i_S omega_F = 0", m.two_form_residual, m.two_form_residual <= tol));
    checks.push_back(check("i_S theta_F = F", e.contraction, e.contraction <= tol));
    checks.push_back(check("E_F = 0", e.energy, e.energy <= tol));
  } else if (which == "pc-identities") {
    const Lagrangian l = prob.lagrangian();
    json identities = json::array();
    for (const IdentityReport& rep :
         {verify_tabg(l, spec.samples, spec.seed, tol), verify_ictl(l, spec.samples, spec.seed, tol)}) {
      identities.push_back(identity_json(rep));
      checks.push_back(check(rep.name, rep.max_dev, rep.verdict));
    }
    report["identities"] = identities;
  } else {
    throw InputError("unknown check '" + which + "'");
  }
  return finish(std::move(report), checks);
}

CommandResult cmd_verify_identities(const ProblemSpec& spec) {
  if (!spec.order) throw InputError("verify-identities needs 'order' (the jet order r)");
  const JetSpace space(spec.dim, *spec.order);
  json report = base_report(spec, "verify-identities");
  report["n"] = space.n();
  report["r"] = space.r();
  json identities = json::array();
  json checks = json::array();
  for (const IdentityReport& rep : verify_space_identities(space, spec.samples, spec.seed, spec.tol)) {
    identities.push_back(identity_json(rep));
    checks.push_back(check(rep.name, rep.max_dev, rep.verdict));
  }
  report["identities"] = identities;
  return finish(std::move(report), checks);
}

CommandResult cmd_integrate(const ProblemSpec& spec, const std::vector<double>& init, double t0, double t1, int steps,
                            std::ostream& csv) {
  const Problem prob(spec);
  const JetSpace space = prob.semispray_space();
  if (init.size() != static_cast<std::size_t>(space.dim()))
    throw InputError("initial point needs " + std::to_string(space.dim()) + " coordinates, got " +
                     std::to_string(init.size()));
  if (steps < 1) throw InputError("steps must be at least 1");
  const PointSet pts = prob.points(space);
  const Semispray s = prob.semispray(pts);
  const Trajectory traj = integrate(s, JetPoint(space, init), t0, t1, steps);
  write_csv(csv, traj);

  json report = base_report(spec, "integrate");
  report["t0"] = t0;
  report["t1"] = t1;
  report["steps"] = steps;
  report["step"] = traj.step;
  report["method"] = traj.method;
  const auto last = traj.states.row(traj.states.size() - 1);
  report["final_state"] = std::vector<double>(last.begin(), last.end());
  json checks = json::array();
  if (prob.has_function() && !spec.semispray) {
    // E_L is a first integral of the Euler-Lagrange flow.
    const Expr e = energy(prob.lagrangian());
    const Tape tape(space, e);
    const double e0 = tape.eval(traj.states.row(0))[0];
    double drift = 0.0;
    for (std::size_t p = 0; p < traj.states.size(); ++p)
      drift = std::max(drift, std::abs(tape.eval(traj.states.row(p))[0] - e0));
    report["energy_initial"] = e0;
    report["energy_drift"] = drift;
  }
  return finish(std::move(report), checks);
}

std::vector<double> load_initial_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open initial point file '" + path + "'");
  try {
    json doc;
    in >> doc;
    if (doc.is_object()) doc = doc.at("point");
    return doc.get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw InputError("initial point file '" + path + "': " + e.what());
  }
}

int exit_code_for_current_exception() noexcept {
  try {
    throw;
  } catch (const ParseError&) {
    return 3;
  } catch (const InputError&) {
    return 3;
  } catch (const DomainError&) {
    return 2;
  } catch (const SingularHessian&) {
    return 2;
  } catch (const SingularMetric&) {
    return 2;
  } catch (const SystemMismatch&) {
    return 2;
  } catch (const NotProportional&) {
    return 2;
  } catch (const OrderOverflow&) {
    return 2;
  } catch (const std::invalid_argument&) {
    return 3;
  } catch (...) {
    return 2;
  }
}

}  // namespace jetvar
