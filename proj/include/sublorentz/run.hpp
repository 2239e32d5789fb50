// Copyright 2026 The Sublorentz Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Subcommand dispatch and report emission for the command-line front end.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sublorentz/config.hpp"
#include "sublorentz/dynamics.hpp"
#include "sublorentz/solver.hpp"
#include "sublorentz/timeform.hpp"
#include "sublorentz/verify.hpp"

namespace sublorentz {

enum class Subcommand { kSolve, kCheckStructure, kCheckTimeform, kReach, kVerify };

inline std::optional<Subcommand> parse_subcommand(const std::string& s) {
  if (s == "solve") return Subcommand::kSolve;
  if (s == "check-structure") return Subcommand::kCheckStructure;
  if (s == "check-timeform") return Subcommand::kCheckTimeform;
  if (s == "reach") return Subcommand::kReach;
  if (s == "verify") return Subcommand::kVerify;
  return std::nullopt;
}

struct RunReport {
  int exit_code = 0;
  nlohmann::ordered_json summary;
  std::string text;
  std::map<std::string, std::string> files;  // file name -> contents
};

namespace detail {

inline nlohmann::ordered_json JsonVector(const Vector& v) {
  auto a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline nlohmann::ordered_json JsonExtended(const ExtendedReal& x) {
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

inline std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline RunReport RunSolve(const ProblemConfig& cfg) {
  RunReport r;
  const auto prob = cfg.instance();
  const SolveReport rep = solve_longest(prob, cfg.solver);
  r.exit_code = rep.status == SolveStatus::kSolved ? 0 : 1;
  auto& s = r.summary;
  s["status"] = to_string(rep.status);
  s["objective"] = JsonExtended(rep.objective);
  s["endpoint_residual"] = rep.endpoint_residual;
  s["iterations"] = rep.iterations;
  s["restart_index"] = rep.restart_index;
  s["segments"] = prob.segments;
  if (prob.model.is_abelian()) {
    s["abelian_oracle"] = JsonExtended(abelian_closed_form(prob.model, prob.nu, prob.cone, prob.x0, prob.x1));
  }
  if (prob.model.is_carnot()) s["abelianized_upper_bound"] = JsonExtended(abelianized_upper_bound(prob));

  std::ostringstream traj;
  write_trajectory_csv(traj, rep.trajectory);
  r.files["trajectory.csv"] = traj.str();
  std::ostringstream hist;
  hist << "iteration,objective\n";
  for (std::size_t i = 0; i < rep.history.size(); ++i) hist << i + 1 << ',' << FormatReal(rep.history[i]) << '\n';
  r.files["history.csv"] = hist.str();

  std::ostringstream t;
  t << "status: " << to_string(rep.status) << "\nobjective: ";
  if (rep.objective.is_finite()) t << Fixed(rep.objective.value()); else t << "-inf";
  t << "\nendpoint residual: " << rep.endpoint_residual << "\niterations: " << rep.iterations << '\n';
  r.text = t.str();
  return r;
}

inline RunReport RunCheckStructure(const ProblemConfig& cfg) {
  RunReport r;
  const auto axioms = check_antinorm_axioms(cfg.nu, cfg.cone, cfg.samples, cfg.seed);
  const bool pointed = is_pointed(cfg.cone);
  auto& s = r.summary;
  s["antinorm"]["pairs_checked"] = axioms.pairs_checked;
  s["antinorm"]["nonnegativity_violations"] = axioms.nonnegativity_violations;
  s["antinorm"]["homogeneity_violations"] = axioms.homogeneity_violations;
  s["antinorm"]["superadditivity_violations"] = axioms.superadditivity_violations;
  s["antinorm"]["interior_positivity_violations"] = axioms.interior_positivity_violations;
  s["antinorm"]["passed"] = axioms.passed();
  if (axioms.first_counterexample) {
    const auto& cx = *axioms.first_counterexample;
    s["antinorm"]["counterexample"] = {{"axiom", cx.axiom}, {"a", JsonVector(cx.a)}, {"b", JsonVector(cx.b)},
                                       {"lambda", cx.lambda}, {"lhs", cx.lhs}, {"rhs", cx.rhs}};
  }
  s["cone"]["pointed"] = pointed;
  bool ok = axioms.passed() && pointed;
  std::ostringstream t;
  t << "antinorm axioms: " << (axioms.passed() ? "pass" : "FAIL") << " (" << axioms.pairs_checked << " pairs)\n";
  t << "cone pointed: " << (pointed ? "yes" : "no") << '\n';
  if (pointed) {
    const auto tc = find_time_covector(cfg.cone);
    s["cone"]["time_covector"] = JsonVector(tc.tau.components);
    s["cone"]["margin"] = tc.margin;
    const GroupModel& model = cfg.model;
    const TimeForm form = model.is_hyperbolic() ? TimeForm::HyperbolicAB(tc.tau.components(0), tc.tau.components(1))
                                                : TimeForm::LeftInvariant(tc.tau, model);
    try {
      const double sup = section_sup_norm({cfg.cone, form, model.identity()}, cfg.metric, cfg.samples, cfg.seed);
      s["cone"]["section_sup_norm"] = sup;
      t << "unit-time section sup norm: " << Fixed(sup) << '\n';
    } catch (const UnboundedSection&) {
      s["cone"]["section_sup_norm"] = "unbounded";
      ok = false;
      t << "unit-time section: unbounded\n";
    }
  }
  r.exit_code = ok ? 0 : 1;
  r.text = t.str();
  return r;
}

inline RunReport RunCheckTimeform(const ProblemConfig& cfg) {
  RunReport r;
  if (!cfg.form) throw ConfigError(0, "timeform", "check-timeform needs a time form");
  const TimeForm& form = *cfg.form;
  const GroupModel& model = cfg.model;
  constexpr double kFdStep = 1e-3;
  constexpr double kClosedTol = 1e-8;
  std::mt19937_64 rng(cfg.seed);
  double max_dtau = 0.0;
  double max_dev = 0.0;  // from a / y^2 on the hyperbolic (a, b) form
  const auto* ab = std::get_if<HyperbolicABForm>(&form.variant());
  const std::size_t points = std::min<std::size_t>(cfg.samples, 200);
  for (std::size_t i = 0; i < points; ++i) {
    const GroupPoint p = RandomGroupPoint(model, rng);
    for (Eigen::Index a = 0; a < model.dim(); ++a) {
      for (Eigen::Index b = a + 1; b < model.dim(); ++b) {
        const double d = exterior_derivative_fd(form, p, Vector::Unit(model.dim(), a), Vector::Unit(model.dim(), b), kFdStep);
        max_dtau = std::max(max_dtau, std::abs(d));
        if (ab) max_dev = std::max(max_dev, std::abs(d - ab->a / (p.coords(1) * p.coords(1))));
      }
    }
  }
  const bool closed = max_dtau <= kClosedTol;
  const auto growth = check_growth_condition(form, cfg.cone, cfg.metric, cfg.samples, cfg.seed);

  auto& s = r.summary;
  s["closedness"] = {{"points", points}, {"fd_step", kFdStep}, {"max_abs_dtau", max_dtau}, {"closed", closed}};
  if (ab) s["closedness"]["max_deviation_from_a_over_y2"] = max_dev;
  s["growth"] = {{"passed", growth.passed}, {"epsilon", growth.epsilon}};
  if (growth.passed) {
    s["growth"]["rho"] = growth.rho;
    s["growth"]["scale_factor"] = growth.scale_factor;
    s["growth"]["holds_unscaled"] = growth.holds_unscaled();
  }
  bool potential_ok = true;
  if (closed && is_exact(form)) {
    double max_err = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      const ControlSignal u = random_admissible_control(cfg.cone, rng);
      const Trajectory traj = integrate(model, cfg.x0, u);
      double acc = 0.0;
      for (double v : tau_segment_integrals(traj, form)) acc += v;
      const double dt = potential(form, traj.end()) - potential(form, cfg.x0);
      max_err = std::max(max_err, std::abs(acc - dt) / std::max(1.0, std::abs(dt)));
    }
    potential_ok = max_err <= 1e-8;
    s["potential"] = {{"paths", cfg.samples}, {"max_relative_error", max_err}, {"consistent", potential_ok}};
  }
  r.exit_code = (closed && growth.passed && potential_ok) ? 0 : 1;
  std::ostringstream t;
  t << "closed: " << (closed ? "yes" : "no") << " (max |dtau| = " << max_dtau << ")\n";
  t << "growth condition: " << (growth.passed ? "pass" : "FAIL");
  if (growth.passed) t << " (rho = " << Fixed(growth.rho) << ", scale tau by " << Fixed(growth.scale_factor) << ")";
  t << '\n';
  if (s.contains("potential")) t << "potential consistency: " << (potential_ok ? "pass" : "FAIL") << '\n';
  r.text = t.str();
  return r;
}

inline RunReport RunReach(const ProblemConfig& cfg) {
  RunReport r;
  const auto cloud = reachability_sample(cfg.model, cfg.cone, cfg.x0, cfg.samples, cfg.seed);
  const bool with_t = cfg.form && is_exact(*cfg.form);
  std::ostringstream csv;
  for (Eigen::Index c = 0; c < cfg.model.dim(); ++c) csv << (c ? "," : "") << 'c' << c;
  if (with_t) csv << ",T";
  csv << '\n';
  for (const auto& p : cloud) {
    for (Eigen::Index c = 0; c < p.coords.size(); ++c) csv << (c ? "," : "") << FormatReal(p.coords(c));
    if (with_t) csv << ',' << FormatReal(potential(*cfg.form, p));
    csv << '\n';
  }
  r.files["cloud.csv"] = csv.str();
  r.summary["points"] = cloud.size();
  r.text = "reachability sample: " + std::to_string(cloud.size()) + " points\n";
  return r;
}

inline RunReport RunVerify(const ProblemConfig& cfg) {
  RunReport r;
  const auto results = verify_suite(cfg);
  auto arr = nlohmann::ordered_json::array();
  std::ostringstream t;
  bool all = true;
  for (const auto& inv : results) {
    arr.push_back({{"module", inv.module}, {"invariant", inv.name}, {"checked", inv.checked},
                   {"passed", inv.passed}, {"ok", inv.ok()}});
    if (!inv.detail.empty()) arr.back()["detail"] = inv.detail;
    t << (inv.ok() ? "PASS " : "FAIL ") << inv.module << ": " << inv.name << " (" << inv.passed << '/'
      << inv.checked << ")\n";
    all = all && inv.ok();
  }
  r.summary["invariants"] = arr;
  r.summary["all_passed"] = all;
  r.exit_code = all ? 0 : 1;
  r.text = t.str();
  return r;
}

}  // namespace detail

inline RunReport run_config(const ProblemConfig& cfg, Subcommand cmd) {
  RunReport r;
  switch (cmd) {
    case Subcommand::kSolve:
      r = detail::RunSolve(cfg);
      break;
    case Subcommand::kCheckStructure:
      r = detail::RunCheckStructure(cfg);
      break;
    case Subcommand::kCheckTimeform:
      r = detail::RunCheckTimeform(cfg);
      break;
    case Subcommand::kReach:
      r = detail::RunReach(cfg);
      break;
    case Subcommand::kVerify:
      r = detail::RunVerify(cfg);
      break;
  }
  nlohmann::ordered_json head;
  head["seed"] = cfg.seed;
  head["preset"] = cfg.preset;
  head["model"] = cfg.model.name();
  head["exit_code"] = r.exit_code;
  head.update(r.summary);
  r.summary = std::move(head);
  r.files["summary.json"] = r.summary.dump(2) + "\n";
  return r;
}

/// Writes every report file into dir, creating it if needed.
inline void emit_report(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : report.files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + (dir / name).string());
  }
}

}  // namespace sublorentz
