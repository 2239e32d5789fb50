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

// Longest-path solver by direct transcription: piecewise-constant cone-valued
// controls, endpoint constraint in residual coordinates enforced by an
// augmented Lagrangian, projected gradient ascent inside. Also the analytic
// oracles/bounds and the desk-scale reachability diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sublorentz/common.hpp"
#include "sublorentz/cones.hpp"
#include "sublorentz/dynamics.hpp"
#include "sublorentz/groups.hpp"
#include "sublorentz/timeform.hpp"

namespace sublorentz {

struct ProblemInstance {
  GroupModel model;
  ConeSpec cone;  // at the identity, in control coordinates
  AntinormSpec nu;
  GroupPoint x0;
  GroupPoint x1;
  std::size_t segments = 50;

  void validate() const {
    model.validate(x0);
    model.validate(x1);
    require_dim(model.control_dim(), cone.dim());
    if (segments < 1) throw std::invalid_argument("segment count must be >= 1");
    if (!is_pointed(cone)) throw NotPointed("problem cone must be pointed");
  }
};

struct SolveOptions {
  double tol = 1e-6;
  int max_iter = 500;
  int restarts = 8;
  std::uint64_t seed = 0;
};

enum class SolveStatus { kSolved, kNoAdmissiblePath, kMaxIterations };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSolved:
      return "Solved";
    case SolveStatus::kNoAdmissiblePath:
      return "NoAdmissiblePath";
    case SolveStatus::kMaxIterations:
      return "MaxIterations";
  }
  return "?";
}

struct SolveReport {
  SolveStatus status = SolveStatus::kNoAdmissiblePath;
  ExtendedReal objective = ExtendedReal::neg_inf();
  ControlSignal control;
  Trajectory trajectory;
  double endpoint_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// Objective of the winning restart at the end of each outer iteration.
  std::vector<double> history;
  int restart_index = -1;
  /// Every inner loop kept the augmented-Lagrangian merit non-decreasing.
  bool merit_monotone = true;
};

// ---------------------------------------------------------------------------
// Oracles and bounds

/// First-layer part of log(x0^{-1} x1) (the whole log on abelian models).
inline Vector first_layer_displacement(const GroupModel& model, const GroupPoint& x0,
                                       const GroupPoint& x1) {
  if (model.is_hyperbolic()) throw WrongModel("first-layer displacement needs an abelian or Carnot model");
  const GroupPoint rel = group_mul(model, group_inv(model, x0), x1);
  if (model.is_abelian()) return rel.coords;
  return first_layer_projection(model.algebra(), rel.coords);
}

/// Exact distance on abelian models: nu(x1 - x0), by superadditivity and
/// homogeneity of nu; -inf when the displacement is off the cone.
inline ExtendedReal abelian_closed_form(const GroupModel& model, const AntinormSpec& nu,
                                        const ConeSpec& cone, const GroupPoint& x0,
                                        const GroupPoint& x1) {
  if (!model.is_abelian()) throw WrongModel("abelian closed form needs an abelian model");
  return antinorm_eval(nu, cone, x1.coords - x0.coords);
}

/// nu of the first-layer displacement: dominates every admissible
/// objective, -inf certifies that no admissible path exists.
inline ExtendedReal abelianized_upper_bound(const ProblemInstance& prob) {
  if (!prob.model.is_carnot()) throw WrongModel("abelianized bound needs a Carnot model");
  return antinorm_eval(prob.nu, prob.cone, first_layer_displacement(prob.model, prob.x0, prob.x1));
}

// ---------------------------------------------------------------------------
// Endpoint map

struct EndpointLinearization {
  Vector residual;            // c(U) = rc(E(U)) - rc(target)
  std::vector<Matrix> blocks;  // dc / du_k, one (dim x control_dim) block per segment
};

/// The map from controls U to residual_coordinates(prod_k exp(h u_k)) minus
/// those of the target x0^{-1} x1, with analytic per-segment Jacobians.
class EndpointMap {
 public:
  EndpointMap(GroupModel model, const GroupPoint& x0, const GroupPoint& x1)
      : model_(std::move(model)),
        target_(group_mul(model_, group_inv(model_, x0), x1)),
        target_rc_(residual_coordinates(model_, target_)) {}

  [[nodiscard]] const GroupModel& model() const { return model_; }
  [[nodiscard]] const GroupPoint& target() const { return target_; }

  [[nodiscard]] GroupPoint Endpoint(const std::vector<Vector>& u) const {
    const double h = 1.0 / static_cast<double>(u.size());
    GroupPoint e = model_.identity();
    for (const auto& v : u) e = exp_step(model_, e, v, h);
    return e;
  }

  [[nodiscard]] Vector Residual(const std::vector<Vector>& u) const {
    return residual_coordinates(model_, Endpoint(u)) - target_rc_;
  }

  [[nodiscard]] EndpointLinearization Linearize(const std::vector<Vector>& u) const {
    const auto n = u.size();
    const double h = 1.0 / static_cast<double>(n);
    const auto m = model_.control_dim();
    const auto d = model_.dim();
    EndpointLinearization lin;
    lin.blocks.assign(n, Matrix::Zero(d, m));

    if (model_.is_abelian()) {
      lin.residual = Residual(u);
      for (auto& b : lin.blocks) b = h * Matrix::Identity(d, m);
      return lin;
    }

    if (model_.is_hyperbolic()) {
      // E = P Q S with Q = exp(h u_k); x_E = px + py (qx + qy sx), ln y_E additive.
      std::vector<GroupPoint> q(n), prefix(n + 1), suffix(n + 1);
      for (std::size_t k = 0; k < n; ++k) q[k] = group_exp(model_, h * u[k]);
      prefix[0] = model_.identity();
      for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = group_mul(model_, prefix[k], q[k]);
      suffix[n] = model_.identity();
      for (std::size_t k = n; k-- > 0;) suffix[k] = group_mul(model_, q[k], suffix[k + 1]);
      lin.residual = residual_coordinates(model_, prefix[n]) - target_rc_;
      for (std::size_t k = 0; k < n; ++k) {
        const double alpha = u[k](0);
        const double beta = u[k](1);
        const double py = prefix[k].coords(1);
        const double sx = suffix[k + 1].coords(0);
        const double z = h * beta;
        auto& b = lin.blocks[k];
        b(0, 0) = py * h * detail::Phi1(z);
        b(0, 1) = py * (h * h * alpha * detail::Phi1Derivative(z) + h * std::exp(z) * sx);
        b(1, 0) = 0.0;
        b(1, 1) = h;
      }
      return lin;
    }

    // Carnot: E(u_k + delta) = E exp(Ad_{S_k^{-1}} h dexp_{-h u_k}(delta)).
    const auto& alg = model_.algebra();
    std::vector<Vector> full(n);
    for (std::size_t k = 0; k < n; ++k) full[k] = h * model_.embed_control(u[k]);
    std::vector<Vector> suffix(n + 1);
    suffix[n] = Vector::Zero(d);
    for (std::size_t k = n; k-- > 0;) suffix[k] = bch_log_product(alg, full[k], suffix[k + 1]);
    const Vector& log_e = suffix[0];
    lin.residual = log_e - target_rc_;
    for (std::size_t k = 0; k < n; ++k) {
      const Vector neg_sigma = -suffix[k + 1];
      for (Eigen::Index j = 0; j < m; ++j) {
        Vector v = h * exp_variation(alg, full[k], Vector::Unit(d, j));
        v = adjoint_action(alg, neg_sigma, v);
        lin.blocks[k].col(j) = right_log_derivative(alg, log_e, v);
      }
    }
    return lin;
  }

 private:
  GroupModel model_;
  GroupPoint target_;
  Vector target_rc_;
};

// ---------------------------------------------------------------------------
// Augmented Lagrangian engine

namespace detail {

using Controls = std::vector<Vector>;
using Projector = std::function<Vector(const Vector&)>;

struct EngineResult {
  Controls u;
  double objective = -std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> history;
  bool merit_monotone = true;
};

inline double Dot(const Controls& a, const Controls& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].dot(b[k]);
  return s;
}

class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const ProblemInstance& prob, const EndpointMap& map, Projector project,
                      const SolveOptions& opts)
      : prob_(prob),
        map_(map),
        project_(std::move(project)),
        opts_(opts),
        center_(interior_direction(prob.cone)) {}

  EngineResult Run(Controls u) {
    const std::size_t n = u.size();
    h_ = 1.0 / static_cast<double>(n);
    for (auto& v : u) v = project_(v);

    EngineResult res;
    lambda_ = InitialMultiplier(u);
    mu_ = 10.0;
    double prev_c = std::numeric_limits<double>::infinity();
    double prev_obj = -std::numeric_limits<double>::infinity();
    double best_c = std::numeric_limits<double>::infinity();
    int stalled = 0;

    for (int outer = 1; outer <= opts_.max_iter; ++outer) {
      barrier_ = 0.1 / outer;
      const bool converged_inner = Inner(u, res.merit_monotone);
      const Vector c = map_.Residual(u);
      const double cn = c.norm();
      const double obj = Objective(u);
      res.history.push_back(obj);
      res.iterations = outer;

      if (cn <= 0.1 * opts_.tol && converged_inner &&
          std::abs(obj - prev_obj) <= 1e-9 * std::max(1.0, std::abs(obj))) {
        break;
      }
      // Residual stagnation: the penalty cannot make further progress.
      if (cn < 0.9 * best_c) {
        best_c = cn;
        stalled = 0;
      } else if (++stalled >= 20) {
        break;
      }
      const Vector next_lambda = lambda_ + mu_ * c;
      if (!next_lambda.allFinite() || next_lambda.norm() > 1e12) break;
      lambda_ = next_lambda;
      if (cn > 0.25 * prev_c) mu_ = std::min(mu_ * 10.0, 1e9);
      prev_c = cn;
      prev_obj = obj;
    }

    Polish(u);
    res.residual = map_.Residual(u).norm();
    res.objective = Objective(u);
    res.u = std::move(u);
    return res;
  }

 private:
  [[nodiscard]] double Objective(const Controls& u) const {
    double f = 0.0;
    for (const auto& v : u) f += h_ * antinorm_value_unchecked(prob_.nu, v);
    return f;
  }

  [[nodiscard]] double Merit(const Controls& u) const {
    const Vector c = map_.Residual(u);
    return Objective(u) - lambda_.dot(c) - 0.5 * mu_ * c.squaredNorm();
  }

  // Supergradient of nu, taken at a point nudged into the relative interior
  // when u sits within the barrier band of the boundary.
  [[nodiscard]] Vector NuGradient(const Vector& v) const {
    const double len = v.norm();
    if (len == 0.0) return antinorm_supergradient(prob_.nu, center_);
    if (antinorm_value_unchecked(prob_.nu, v) < barrier_ * len) {
      return antinorm_supergradient(prob_.nu, v + barrier_ * len * center_);
    }
    return antinorm_supergradient(prob_.nu, v);
  }

  [[nodiscard]] Controls Ascent(const Controls& u) const {
    const auto lin = map_.Linearize(u);
    const Vector w = lambda_ + mu_ * lin.residual;
    Controls g(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
      g[k] = h_ * NuGradient(u[k]) - lin.blocks[k].transpose() * w;
    }
    return g;
  }

  // Least-squares estimate of the multiplier from grad f = J^T lambda.
  [[nodiscard]] Vector InitialMultiplier(const Controls& u) const {
    const auto lin = map_.Linearize(u);
    const auto d = lin.residual.size();
    Matrix jjt = Matrix::Zero(d, d);
    Vector jg = Vector::Zero(d);
    for (std::size_t k = 0; k < u.size(); ++k) {
      jjt += lin.blocks[k] * lin.blocks[k].transpose();
      jg += lin.blocks[k] * (h_ * antinorm_supergradient(prob_.nu, u[k].norm() > 0 ? u[k] : center_));
    }
    Vector lam = jjt.completeOrthogonalDecomposition().solve(jg);
    return lam.allFinite() ? lam : Vector(Vector::Zero(d));
  }

  // Projected gradient ascent with Barzilai-Borwein trial steps and Armijo
  // backtracking; the merit never decreases. Returns true on stationarity.
  bool Inner(Controls& u, bool& monotone) {
    constexpr int kMaxInner = 400;
    double merit = Merit(u);
    Controls g = Ascent(u);
    double step = step_;
    for (int it = 0; it < kMaxInner; ++it) {
      Controls trial(u.size());
      double gain = 0.0;
      double moved = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::size_t k = 0; k < u.size(); ++k) trial[k] = project_(u[k] + step * g[k]);
        gain = 0.0;
        moved = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
          const Vector dk = trial[k] - u[k];
          gain += g[k].dot(dk);
          moved += dk.squaredNorm();
        }
        bool finite = true;
        for (const auto& v : trial) finite = finite && v.allFinite();
        const double trial_merit = finite ? Merit(trial) : -std::numeric_limits<double>::infinity();
        if (trial_merit >= merit + 1e-4 * gain && trial_merit >= merit) {
          if (trial_merit < merit) monotone = false;
          merit = trial_merit;
          accepted = true;
          break;
        }
        step *= 0.5;
        if (step < 1e-16) break;
      }
      if (!accepted) return moved <= 1e-24;

      const Controls g_new = Ascent(trial);
      Controls s(u.size()), y(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) {
        s[k] = trial[k] - u[k];
        y[k] = g[k] - g_new[k];
      }
      const double sy = Dot(s, y);
      const double ss = Dot(s, s);
      step = (sy > 1e-300) ? std::clamp(ss / sy, 1e-12, 1e6) : std::min(step * 2.0, 1e6);
      u = std::move(trial);
      g = g_new;
      step_ = step;

      const double scale = 1.0 + std::sqrt(Dot(u, u));
      if (std::sqrt(moved) <= 1e-12 * scale) return true;
    }
    return false;
  }

  // Gauss-Newton minimum-norm corrections that drive the endpoint residual
  // to rounding level, keeping each control in its admissible set.
  void Polish(Controls& u) const {
    double cn = map_.Residual(u).norm();
    for (int it = 0; it < 30 && cn > 1e-14; ++it) {
      const auto lin = map_.Linearize(u);
      const auto d = lin.residual.size();
      Matrix jjt = Matrix::Zero(d, d);
      for (const auto& b : lin.blocks) jjt += b * b.transpose();
      const Vector y = jjt.completeOrthogonalDecomposition().solve(lin.residual);
      Controls trial(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) {
        trial[k] = project_(u[k] - lin.blocks[k].transpose() * y);
      }
      const double tn = map_.Residual(trial).norm();
      if (!(tn < cn)) break;
      u = std::move(trial);
      cn = tn;
    }
  }

  const ProblemInstance& prob_;
  const EndpointMap& map_;
  Projector project_;
  SolveOptions opts_;
  Vector center_;
  Vector lambda_;
  double mu_ = 10.0;
  double h_ = 1.0;
  double barrier_ = 0.1;
  double step_ = 1.0;
};

// Best restart: highest objective, then lowest residual, then lowest index.
inline bool Better(const EngineResult& a, int ia, const EngineResult& b, int ib) {
  if (a.objective != b.objective) return a.objective > b.objective;
  if (a.residual != b.residual) return a.residual < b.residual;
  return ia < ib;
}

inline SolveReport Assemble(const ProblemInstance& prob, const EngineResult& r, int index,
                            const SolveOptions& opts) {
  SolveReport rep;
  rep.control = ControlSignal(r.u);
  rep.objective = sl_length(prob.nu, prob.cone, rep.control);
  rep.trajectory = integrate(prob.model, prob.x0, rep.control);
  if (rep.objective.is_finite()) {
    rep.trajectory = with_objective(rep.trajectory, prob.nu, prob.cone, rep.control);
  }
  rep.endpoint_residual = group_mismatch(prob.model, rep.trajectory.end(), prob.x1);
  rep.iterations = r.iterations;
  rep.history = r.history;
  rep.restart_index = index;
  rep.merit_monotone = r.merit_monotone;
  const bool feasible = rep.endpoint_residual <= opts.tol &&
                        admissibility_check(prob.cone, rep.control).passed();
  rep.status = feasible ? SolveStatus::kSolved : SolveStatus::kMaxIterations;
  return rep;
}

// A feasible start whose length already equals the upper bound is optimal.
inline bool AttainsBound(const EndpointMap& map, const Controls& u, double bound, const AntinormSpec& nu,
                         double tol) {
  if (map.Residual(u).norm() > 0.1 * tol) return false;
  double f = 0.0;
  for (const auto& v : u) f += antinorm_value_unchecked(nu, v) / static_cast<double>(u.size());
  return f >= bound - 1e-12 * std::max(1.0, std::abs(bound));
}

inline SolveReport RunRestarts(const ProblemInstance& prob, const SolveOptions& opts,
                               const Projector& project, const Vector& constant_start,
                               std::optional<double> upper_bound) {
  const EndpointMap map(prob.model, prob.x0, prob.x1);
  const std::size_t n = prob.segments;
  std::optional<EngineResult> best;
  int best_index = -1;
  std::optional<EngineResult> best_any;
  int best_any_index = -1;
  const double scale = std::max(constant_start.norm(), 1e-3);

  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Controls start;
    if (r == 0) {
      start.assign(n, project(constant_start));
    } else {
      std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(r));
      std::uniform_real_distribution<double> factor(0.5, 1.5);
      for (std::size_t k = 0; k < n; ++k) {
        Vector v = sample_cone_point(prob.cone, rng, SampleRegion::kInterior);
        start.push_back(project(v * (scale * factor(rng) / v.norm())));
      }
    }
    EngineResult res;
    if (r == 0 && upper_bound && AttainsBound(map, start, *upper_bound, prob.nu, opts.tol)) {
      res.residual = map.Residual(start).norm();
      res.objective = *upper_bound;
      res.u = std::move(start);
    } else {
      AugmentedLagrangian al(prob, map, project, opts);
      res = al.Run(std::move(start));
    }

    if (!best_any || res.residual < best_any->residual) {
      best_any = res;
      best_any_index = r;
    }
    if (res.residual <= opts.tol && (!best || Better(res, r, *best, best_index))) {
      best = res;
      best_index = r;
    }
    // A feasible control attaining the upper bound is optimal.
    if (best && upper_bound && best->objective >= *upper_bound - 1e-12 * std::max(1.0, *upper_bound)) {
      break;
    }
  }
  if (best) return Assemble(prob, *best, best_index, opts);
  return Assemble(prob, *best_any, best_any_index, opts);
}

inline SolveReport NoPath(const ProblemInstance& prob) {
  SolveReport rep;
  rep.status = SolveStatus::kNoAdmissiblePath;
  rep.objective = ExtendedReal::neg_inf();
  rep.control = ControlSignal::Constant(Vector::Zero(prob.model.control_dim()), prob.segments);
  rep.trajectory = integrate(prob.model, prob.x0, rep.control);
  rep.endpoint_residual = group_mismatch(prob.model, rep.trajectory.end(), prob.x1);
  return rep;
}

// Constant control whose single exponential matches the first-layer
// displacement (the whole displacement on abelian and hyperbolic models).
inline Vector ConstantStart(const ProblemInstance& prob) {
  if (prob.model.is_hyperbolic()) {
    return group_log(prob.model, group_mul(prob.model, group_inv(prob.model, prob.x0), prob.x1));
  }
  return first_layer_displacement(prob.model, prob.x0, prob.x1);
}

}  // namespace detail

/// Maximizes sum_k h nu(u_k) over cone-valued piecewise-constant controls
/// with prod_k exp(h u_k) = x0^{-1} x1.
inline SolveReport solve_longest(const ProblemInstance& prob, const SolveOptions& opts = {}) {
  prob.validate();
  std::optional<double> bound;
  if (!prob.model.is_hyperbolic()) {
    const Vector d = first_layer_displacement(prob.model, prob.x0, prob.x1);
    const ExtendedReal b = antinorm_eval(prob.nu, prob.cone, d);
    if (b.is_neg_inf()) return detail::NoPath(prob);
    bound = b.value();
  }
  const ConeSpec& cone = prob.cone;
  return detail::RunRestarts(
      prob, opts, [&cone](const Vector& v) { return project_onto_cone(cone, v); },
      detail::ConstantStart(prob), bound);
}

/// The same problem in the parameter s = int tau(xdot): fixed horizon
/// s1 = T(x0^{-1} x1) and controls on the unit-time section, i.e.
/// tau0(u_k) = s1 on every segment.
inline SolveReport solve_longest_reparametrized(const ProblemInstance& prob, const TimeForm& form,
                                                const SolveOptions& opts = {}) {
  prob.validate();
  const GroupModel model = form.model();
  if (model.name() != prob.model.name() || model.dim() != prob.model.dim()) {
    throw WrongModel("time form and problem live on different models");
  }
  const GroupPoint rel = group_mul(prob.model, group_inv(prob.model, prob.x0), prob.x1);
  const double s1 = potential(form, rel);
  const Covector tau(form.at_identity().components.head(prob.model.control_dim()));
  if (!(covector_margin(prob.cone, tau) > 0.0)) {
    throw UnboundedSection("time form is not positive on the cone");
  }
  std::optional<double> bound;
  if (!prob.model.is_hyperbolic()) {
    const Vector d = first_layer_displacement(prob.model, prob.x0, prob.x1);
    const ExtendedReal b = antinorm_eval(prob.nu, prob.cone, d);
    if (b.is_neg_inf()) return detail::NoPath(prob);
    bound = b.value();
  }
  if (!(s1 > 0.0)) return detail::NoPath(prob);
  const ConeSpec& cone = prob.cone;
  return detail::RunRestarts(
      prob, opts,
      [&cone, tau, s1](const Vector& v) { return project_onto_slice(cone, tau, s1, v); },
      detail::ConstantStart(prob), bound);
}

// ---------------------------------------------------------------------------
// Reachability diagnostics

/// Random admissible control: 1-8 segments, cone samples with log-uniform
/// magnitudes.
template <class Rng>
ControlSignal random_admissible_control(const ConeSpec& cone, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 8);
  const int n = count(rng);
  std::vector<Vector> values;
  for (int k = 0; k < n; ++k) values.push_back(sample_cone_point(cone, rng));
  return ControlSignal(std::move(values));
}

/// Endpoints of n_samples random admissible controls from x0.
inline std::vector<GroupPoint> reachability_sample(const GroupModel& model, const ConeSpec& cone,
                                                   const GroupPoint& x0, std::size_t n_samples,
                                                   std::uint64_t seed) {
  require_dim(model.control_dim(), cone.dim());
  std::mt19937_64 rng(seed);
  std::vector<GroupPoint> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    out.push_back(integrate(model, x0, random_admissible_control(cone, rng)).end());
  }
  return out;
}

struct HyperbolicityReport {
  std::size_t paths_checked = 0;
  /// Paths of positive tau-duration along which T failed to increase.
  std::size_t non_increasing_paths = 0;
  std::size_t band_points = 0;
  /// Largest |log(x0^{-1} p)| over sampled points p in the band
  /// T(x0) <= T(p) <= T(x1).
  double radius = 0.0;
  std::vector<GroupPoint> band_samples;

  [[nodiscard]] bool passed() const {
    return non_increasing_paths == 0 && std::isfinite(radius);
  }
};

/// Desk-scale global hyperbolicity evidence for an exact time form:
/// T strictly increases along sampled admissible paths (no closed paths),
/// and the sampled part of A+(x0) inside the potential band stays within a
/// finite radius. Paths crossing the band ceiling are cut where T = T(x1).
inline HyperbolicityReport check_hyperbolicity_desk(const ProblemInstance& prob, const TimeForm& form,
                                                    std::size_t n_samples, std::uint64_t seed,
                                                    bool keep_band_samples = false) {
  if (!is_exact(form)) throw NotExact("hyperbolicity check needs an exact time form");
  prob.model.validate(prob.x0);
  prob.model.validate(prob.x1);
  const double t_start = potential(form, prob.x0);
  const double t_ceiling = potential(form, prob.x1);
  const Covector tau(form.at_identity().components.head(prob.model.control_dim()));
  std::mt19937_64 rng(seed);
  HyperbolicityReport rep;

  auto visit_band_point = [&](const GroupPoint& p) {
    ++rep.band_points;
    rep.radius = std::max(rep.radius, group_mismatch(prob.model, prob.x0, p));
    if (keep_band_samples) rep.band_samples.push_back(p);
  };

  for (std::size_t i = 0; i < n_samples; ++i) {
    const ControlSignal u = random_admissible_control(prob.cone, rng);
    const Trajectory traj = integrate(prob.model, prob.x0, u);
    ++rep.paths_checked;
    const double h = u.step();
    double duration = 0.0;
    bool monotone = true;
    bool in_band = true;
    double t_prev = t_start;
    for (std::size_t k = 0; k < u.segments(); ++k) {
      const double rate = tau(u.values[k]);
      const double t_next = potential(form, traj.points[k + 1]);
      duration += h * rate;
      if (h * rate > 1e-12 && !(t_next > t_prev)) monotone = false;
      if (in_band) {
        if (t_next <= t_ceiling) {
          visit_band_point(traj.points[k + 1]);
        } else {
          const double cut = (t_ceiling - t_prev) / rate;
          if (cut > 0) visit_band_point(exp_step(prob.model, traj.points[k], u.values[k], cut));
          in_band = false;
        }
      }
      t_prev = t_next;
    }
    const double t_end = potential(form, traj.end());
    if (duration > 1e-12 && !(t_end > t_start)) monotone = false;
    if (!monotone) ++rep.non_increasing_paths;
  }
  return rep;
}

}  // namespace sublorentz
