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

// Invariant suite over one configured problem: each entry counts how many
// sampled cases were checked and how many held.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sublorentz/config.hpp"
#include "sublorentz/cones.hpp"
#include "sublorentz/dynamics.hpp"
#include "sublorentz/groups.hpp"
#include "sublorentz/solver.hpp"
#include "sublorentz/timeform.hpp"

namespace sublorentz {

struct InvariantResult {
  std::string module;
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::string detail;
  [[nodiscard]] bool ok() const { return checked == passed; }
};

namespace detail {

template <class Rng>
GroupPoint RandomGroupPoint(const GroupModel& model, Rng& rng) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  Vector c(model.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = coord(rng);
  if (model.is_hyperbolic()) c(1) = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  return {c};
}

inline double RelErr(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace detail

inline std::vector<InvariantResult> verify_suite(const ProblemConfig& cfg) {
  std::vector<InvariantResult> out;
  const auto& model = cfg.model;
  const std::size_t n = cfg.samples;
  std::mt19937_64 rng(cfg.seed);

  {
    const auto rep = check_antinorm_axioms(cfg.nu, cfg.cone, n, cfg.seed);
    out.push_back({"cones", "antinorm axioms", rep.pairs_checked,
                   rep.pairs_checked - std::min(rep.pairs_checked,
                                                rep.superadditivity_violations + rep.homogeneity_violations +
                                                    rep.nonnegativity_violations),
                   rep.passed() ? "" : "counterexample found"});
    if (rep.interior_positivity_violations > 0) {
      out.back().passed = std::min(out.back().passed, out.back().checked - 1);
      out.back().detail = "antinorm vanishes somewhere on the interior";
    }
  }
  {
    const bool pointed = is_pointed(cfg.cone);
    InvariantResult r{"cones", "pointed with time covector", 1, 0, ""};
    if (pointed) {
      const auto tc = find_time_covector(cfg.cone);
      if (tc.margin > 0) r.passed = 1;
    }
    out.push_back(r);
  }
  {
    InvariantResult r{"cones", "projection lands in cone", 0, 0, ""};
    std::normal_distribution<double> g(0.0, 3.0);
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 500); ++i) {
      Vector v(cfg.cone.dim());
      for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = g(rng);
      ++r.checked;
      if (cone_contains(cfg.cone, project_onto_cone(cfg.cone, v), 1e-7)) ++r.passed;
    }
    out.push_back(r);
  }
  {
    InvariantResult assoc{"groups", "associativity", 0, 0, ""};
    InvariantResult explog{"groups", "exp/log round trip", 0, 0, ""};
    InvariantResult inv{"groups", "inverse", 0, 0, ""};
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = detail::RandomGroupPoint(model, rng);
      const auto b = detail::RandomGroupPoint(model, rng);
      const auto c = detail::RandomGroupPoint(model, rng);
      const Vector lhs = group_mul(model, group_mul(model, a, b), c).coords;
      const Vector rhs = group_mul(model, a, group_mul(model, b, c)).coords;
      ++assoc.checked;
      if ((lhs - rhs).norm() <= 1e-10 * std::max(1.0, lhs.norm())) ++assoc.passed;
      ++explog.checked;
      if ((group_exp(model, group_log(model, a)).coords - a.coords).norm() <= 1e-10 * std::max(1.0, a.coords.norm())) {
        ++explog.passed;
      }
      ++inv.checked;
      if (group_mismatch(model, model.identity(), group_mul(model, a, group_inv(model, a))) <= 1e-12) ++inv.passed;
    }
    out.push_back(assoc);
    out.push_back(explog);
    out.push_back(inv);
  }
  {
    InvariantResult adm{"dynamics", "random controls admissible", 0, 0, ""};
    InvariantResult reach{"dynamics", "first layer of reachable displacement in cone", 0, 0, ""};
    InvariantResult area{"dynamics", "oriented area identity", 0, 0, ""};
    const bool step2 = is_lorentz_step2(model);
    for (std::size_t i = 0; i < n; ++i) {
      const ControlSignal u = random_admissible_control(cfg.cone, rng);
      ++adm.checked;
      if (admissibility_check(cfg.cone, u).passed()) ++adm.passed;
      const Trajectory traj = integrate(model, cfg.x0, u);
      if (!model.is_hyperbolic()) {
        ++reach.checked;
        if (cone_contains(cfg.cone, first_layer_displacement(model, cfg.x0, traj.end()), 1e-7)) ++reach.passed;
      }
      if (step2 && cfg.x0.coords.isZero()) {
        for (int k = 1; k <= model.algebra().layer_dim(1) - 1; ++k) {
          ++area.checked;
          const double y = traj.end().coords(model.algebra().layer_offset(2) + k - 1);
          if (std::abs(y - oriented_area(model, traj, k)) <= 1e-8) ++area.passed;
        }
      }
    }
    out.push_back(adm);
    if (reach.checked) out.push_back(reach);
    if (area.checked) out.push_back(area);
  }
  if (cfg.form) {
    const TimeForm& form = *cfg.form;
    const auto growth = check_growth_condition(form, cfg.cone, cfg.metric, n, cfg.seed);
    out.push_back({"timeform", "growth condition", 1, growth.passed ? 1u : 0u,
                   growth.passed ? "" : "time form vanishes on the cone"});
    if (is_exact(form)) {
      InvariantResult pot{"timeform", "potential consistency", 0, 0, ""};
      for (std::size_t i = 0; i < n; ++i) {
        const ControlSignal u = random_admissible_control(cfg.cone, rng);
        const Trajectory traj = integrate(model, cfg.x0, u);
        const auto inc = tau_segment_integrals(traj, form);
        double s = 0.0;
        for (double v : inc) s += v;
        const double dt = potential(form, traj.end()) - potential(form, cfg.x0);
        ++pot.checked;
        if (std::abs(s - dt) <= 1e-8 * std::max(1.0, std::abs(dt))) ++pot.passed;
      }
      out.push_back(pot);
      const auto hyp = check_hyperbolicity_desk(cfg.instance(), form, n, cfg.seed);
      out.push_back({"solver", "potential increases along paths", hyp.paths_checked,
                     hyp.paths_checked - hyp.non_increasing_paths, ""});
    }
  }
  {
    const auto prob = cfg.instance();
    const SolveReport rep = solve_longest(prob, cfg.solver);
    InvariantResult feas{"solver", "solved reports are feasible", 0, 0, to_string(rep.status)};
    if (rep.status == SolveStatus::kSolved) {
      feas.checked = 1;
      if (rep.endpoint_residual <= cfg.solver.tol && admissibility_check(prob.cone, rep.control).passed()) {
        feas.passed = 1;
      }
    }
    out.push_back(feas);
    InvariantResult mono{"solver", "merit non-decreasing in inner loops", 1,
                         rep.merit_monotone ? 1u : 0u, ""};
    out.push_back(mono);
    if (rep.status == SolveStatus::kSolved && model.is_abelian()) {
      const double oracle = abelian_closed_form(model, prob.nu, prob.cone, prob.x0, prob.x1).to_double();
      out.push_back({"solver", "abelian oracle agreement", 1,
                     detail::RelErr(rep.objective.value(), oracle) <= 1e-3 ? 1u : 0u, ""});
    }
    if (rep.status == SolveStatus::kSolved && model.is_carnot()) {
      const double bound = abelianized_upper_bound(prob).to_double();
      out.push_back({"solver", "abelianized bound dominance", 1,
                     rep.objective.value() <= bound + 1e-9 ? 1u : 0u, ""});
    }
  }
  return out;
}

}  // namespace sublorentz
