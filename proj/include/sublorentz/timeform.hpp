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

// Causal 1-forms: evaluation, closedness, potentials, the growth condition
// and reparametrization by the time form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "sublorentz/common.hpp"
#include "sublorentz/cones.hpp"
#include "sublorentz/groups.hpp"
#include "sublorentz/trajectory.hpp"

namespace sublorentz {

/// Left-invariant spreading of a covector tau0 at the identity.
struct LeftInvariantForm {
  Covector tau0;
  GroupModel model;
};

/// (a dx + b dy) / y on the hyperbolic plane.
struct HyperbolicABForm {
  double a;
  double b;
};

class TimeForm {
 public:
  using Variant = std::variant<LeftInvariantForm, HyperbolicABForm>;

  /// On Carnot models a g_1 covector is extended by zero on [g, g].
  static TimeForm LeftInvariant(Covector tau0, GroupModel model) {
    if (model.is_carnot() && tau0.dim() == model.control_dim() && tau0.dim() != model.dim()) {
      Vector full = Vector::Zero(model.dim());
      full.head(tau0.dim()) = tau0.components;
      tau0 = Covector(full);
    }
    require_dim(model.dim(), tau0.dim());
    return TimeForm(LeftInvariantForm{std::move(tau0), std::move(model)});
  }
  static TimeForm HyperbolicAB(double a, double b) { return TimeForm(HyperbolicABForm{a, b}); }

  [[nodiscard]] const Variant& variant() const { return spec_; }

  [[nodiscard]] GroupModel model() const {
    if (const auto* li = std::get_if<LeftInvariantForm>(&spec_)) return li->model;
    return GroupModel::Hyperbolic();
  }

  /// The covector at the identity (both variants are left-invariant).
  [[nodiscard]] Covector at_identity() const {
    if (const auto* li = std::get_if<LeftInvariantForm>(&spec_)) return li->tau0;
    const auto& h = std::get<HyperbolicABForm>(spec_);
    Vector c(2);
    c << h.a, h.b;
    return Covector(c);
  }

  [[nodiscard]] TimeForm scaled(double factor) const {
    if (const auto* li = std::get_if<LeftInvariantForm>(&spec_)) {
      return LeftInvariant(Covector(factor * li->tau0.components), li->model);
    }
    const auto& h = std::get<HyperbolicABForm>(spec_);
    return HyperbolicAB(factor * h.a, factor * h.b);
  }

 private:
  explicit TimeForm(Variant v) : spec_(std::move(v)) {}
  Variant spec_;
};

/// tau_p(v) for a tangent vector v at p.
inline double evaluate(const TimeForm& form, const GroupPoint& p, const Vector& v) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HyperbolicABForm>) {
          GroupModel::Hyperbolic().validate(p);
          require_dim(2, v.size());
          return (f.a * v(0) + f.b * v(1)) / p.coords(1);
        } else {
          return f.tau0(pullback(f.model, p, v));
        }
      },
      form.variant());
}

/// Central finite-difference approximation of d tau_p(v, w) in the global
/// chart, with stencil spacing h; error O(h^2).
inline double exterior_derivative_fd(const TimeForm& form, const GroupPoint& p, const Vector& v,
                                     const Vector& w, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("stencil spacing must be positive");
  const GroupModel model = form.model();
  model.validate(p);
  require_dim(model.dim(), v.size());
  require_dim(model.dim(), w.size());
  auto shifted = [&](const Vector& dir, double sign) {
    GroupPoint q{p.coords + sign * h * dir};
    if (model.is_hyperbolic() && !(q.coords(1) > 0.0)) {
      throw InvalidPoint("finite-difference stencil leaves the half-plane y > 0");
    }
    return q;
  };
  const double dv_w = evaluate(form, shifted(v, 1.0), w) - evaluate(form, shifted(v, -1.0), w);
  const double dw_v = evaluate(form, shifted(w, 1.0), v) - evaluate(form, shifted(w, -1.0), v);
  return (dv_w - dw_v) / (2.0 * h);
}

/// Structural exactness: closed forms on these simply connected models are
/// exact, and closedness is d tau0 = -tau0([., .]) = 0 on the algebra.
inline bool is_exact(const TimeForm& form) {
  return std::visit(
      [&](const auto& f) -> bool {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HyperbolicABForm>) {
          return f.a == 0.0;
        } else {
          if (f.model.is_abelian()) return true;
          if (f.model.is_hyperbolic()) return f.tau0.components(0) == 0.0;
          const auto& alg = f.model.algebra();
          const auto tail = f.tau0.components.tail(alg.dim() - alg.layer_dim(1));
          return tail.size() == 0 || tail.cwiseAbs().maxCoeff() <= 1e-12 * f.tau0.norm();
        }
      },
      form.variant());
}

/// Potential T with dT = tau and T(identity) = 0.
inline double potential(const TimeForm& form, const GroupPoint& p) {
  if (!is_exact(form)) {
    throw NotExact("time form is not exact (hyperbolic a != 0, or tau0 nonzero on [g, g])");
  }
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HyperbolicABForm>) {
          GroupModel::Hyperbolic().validate(p);
          return f.b * std::log(p.coords(1));
        } else {
          f.model.validate(p);
          if (f.model.is_hyperbolic()) return f.tau0.components(1) * std::log(p.coords(1));
          return f.tau0(p.coords);
        }
      },
      form.variant());
}

// ---------------------------------------------------------------------------
// Growth condition and unit-time sections

namespace detail {

// Unit boundary rays of the cone, plus seeded samples, as tangent vectors at
// the identity of the form's model.
inline std::vector<Vector> ConeDirections(const ConeSpec& cone, const GroupModel& model,
                                          std::size_t samples, std::uint64_t seed) {
  std::vector<Vector> dirs;
  for (const auto& r : BoundaryRays(cone)) dirs.push_back(model.embed_control(r));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector v = sample_cone_point(cone, rng);
    if (v.norm() > 0) dirs.push_back(model.embed_control(v / v.norm()));
  }
  return dirs;
}

}  // namespace detail

struct GrowthReport {
  bool passed = false;
  /// sup over cone directions at the identity of |xi| / tau(xi).
  double rho = std::numeric_limits<double>::infinity();
  double epsilon = 0.05;
  /// Multiply tau by this so that |xi| / tau(xi) <= 1 / (1 + epsilon).
  double scale_factor = std::numeric_limits<double>::infinity();
  /// A cone direction where tau vanishes or is negative, when failing.
  std::optional<Vector> offending_direction;
  [[nodiscard]] bool holds_unscaled() const { return passed && rho < 1.0; }
};

/// Growth condition for invariant data: tau >= |xi| / c on the cone holds
/// globally once it holds at the identity with a constant bound.
inline GrowthReport check_growth_condition(const TimeForm& form, const ConeSpec& cone,
                                           const RiemannianMetric& metric, std::size_t samples,
                                           std::uint64_t seed, double epsilon = 0.05) {
  const GroupModel model = form.model();
  require_dim(model.control_dim(), cone.dim());
  if (!metric.is_left_invariant(model)) {
    throw std::invalid_argument("growth check needs an invariant metric for the model");
  }
  const GroupPoint id = model.identity();
  GrowthReport rep;
  rep.epsilon = epsilon;
  double rho = 0.0;
  for (const auto& xi : detail::ConeDirections(cone, model, samples, seed)) {
    const double len = riemannian_norm(metric, model, id, xi);
    const double t = evaluate(form, id, xi);
    if (!(t > 1e-12 * len)) {
      rep.offending_direction = xi;
      return rep;
    }
    rho = std::max(rho, len / t);
  }
  rep.passed = true;
  rep.rho = rho;
  rep.scale_factor = rho * (1.0 + epsilon);
  return rep;
}

/// U_x = {xi in C+_x : tau_x(xi) = 1} at base point x.
struct UnitTimeSection {
  ConeSpec cone;  // at the identity, spread by left translation
  TimeForm form;
  GroupPoint base;
};

/// sup |xi| over U_x. For polyhedral cones U_x is the polytope with vertices
/// g / tau(g) and the supremum is exact; Lorentz cones use the boundary rays
/// together with `samples` seeded directions.
inline double section_sup_norm(const UnitTimeSection& section, const RiemannianMetric& metric,
                               std::size_t samples, std::uint64_t seed) {
  const GroupModel model = section.form.model();
  model.validate(section.base);
  require_dim(model.control_dim(), section.cone.dim());
  double sup = 0.0;
  for (const auto& zeta : detail::ConeDirections(section.cone, model, samples, seed)) {
    const Vector xi = pushforward(model, section.base, zeta);
    const double t = evaluate(section.form, section.base, xi);
    const double len = riemannian_norm(metric, model, section.base, xi);
    if (!(t > 1e-12 * len)) {
      throw UnboundedSection("time form is not positive on the cone; unit section is unbounded");
    }
    sup = std::max(sup, len / t);
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Reparametrization

inline constexpr double kStallTolerance = 1e-10;

/// Generator u_k with points[k+1] = points[k] * exp(dt_k u_k) on each segment.
inline std::vector<Vector> segment_generators(const GroupModel& model, const Trajectory& traj) {
  traj.validate();
  std::vector<Vector> out;
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
    const GroupPoint rel = group_mul(model, group_inv(model, traj.points[k]), traj.points[k + 1]);
    out.push_back(group_log(model, rel) / (traj.times[k + 1] - traj.times[k]));
  }
  return out;
}

/// Integral of tau(xdot) over each segment. Left-invariant forms integrate
/// exactly (constant integrand); the hyperbolic (a, b) form uses composite
/// midpoint quadrature with 64 subsamples per segment.
inline std::vector<double> tau_segment_integrals(const Trajectory& traj, const TimeForm& form) {
  const GroupModel model = form.model();
  const auto gens = segment_generators(model, traj);
  std::vector<double> out;
  out.reserve(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    if (std::holds_alternative<LeftInvariantForm>(form.variant())) {
      out.push_back(dt * form.at_identity()(gens[k]));
      continue;
    }
    constexpr int kSubsamples = 64;
    double acc = 0.0;
    for (int j = 0; j < kSubsamples; ++j) {
      const double theta = (j + 0.5) / kSubsamples * dt;
      const GroupPoint g = exp_step(model, traj.points[k], gens[k], theta);
      acc += evaluate(form, g, pushforward(model, g, gens[k]));
    }
    out.push_back(dt * acc / kSubsamples);
  }
  return out;
}

struct ReparametrizedPath {
  Trajectory trajectory;  // times hold the s-grid
  double s_final = 0.0;
};

/// Re-grids the path by s(t) = int_0^t tau(xdot), so that tau(x'(s)) = 1.
/// Throws StalledParameter on a segment where tau(xdot) < 1e-10.
inline ReparametrizedPath reparametrize(const Trajectory& traj, const TimeForm& form) {
  const auto increments = tau_segment_integrals(traj, form);
  ReparametrizedPath out;
  out.trajectory.points = traj.points;
  out.trajectory.z = traj.z;
  out.trajectory.times.push_back(0.0);
  double s = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    if (increments[k] / dt < kStallTolerance) {
      throw StalledParameter("tau(xdot) vanishes on segment " + std::to_string(k));
    }
    s += increments[k];
    out.trajectory.times.push_back(s);
  }
  out.s_final = s;
  return out;
}

}  // namespace sublorentz
