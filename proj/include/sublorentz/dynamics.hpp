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

// Admissible paths: exact integration of piecewise-constant left-invariant
// dynamics, the length functional, and the oriented-area identity on the
// step-2 groups.

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "sublorentz/common.hpp"
#include "sublorentz/cones.hpp"
#include "sublorentz/groups.hpp"
#include "sublorentz/trajectory.hpp"

namespace sublorentz {

/// x_{k+1} = x_k * exp(h u_k): exact for piecewise-constant controls.
inline Trajectory integrate(const GroupModel& model, const GroupPoint& x0, const ControlSignal& u) {
  u.validate();
  model.validate(x0);
  require_dim(model.control_dim(), u.values.front().size());
  const double h = u.step();
  Trajectory traj;
  traj.times.reserve(u.segments() + 1);
  traj.points.reserve(u.segments() + 1);
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  for (std::size_t k = 0; k < u.segments(); ++k) {
    traj.points.push_back(exp_step(model, traj.points.back(), u.values[k], h));
    traj.times.push_back(static_cast<double>(k + 1) / static_cast<double>(u.segments()));
  }
  traj.times.back() = 1.0;
  return traj;
}

/// sum_k h nu(u_k); -inf as soon as one segment leaves the cone.
inline ExtendedReal sl_length(const AntinormSpec& nu, const ConeSpec& cone, const ControlSignal& u) {
  u.validate();
  ExtendedReal total = 0.0;
  for (const auto& v : u.values) total += u.step() * antinorm_eval(nu, cone, v);
  return total;
}

/// Attaches the accumulated objective z_k = sum_{j<k} h nu(u_j). The control
/// must be admissible so that z is finite and non-decreasing.
inline Trajectory with_objective(Trajectory traj, const AntinormSpec& nu, const ConeSpec& cone,
                                 const ControlSignal& u) {
  if (traj.segments() != u.segments()) throw std::invalid_argument("control/trajectory size mismatch");
  std::vector<double> z{0.0};
  for (const auto& v : u.values) {
    const ExtendedReal inc = antinorm_eval(nu, cone, v);
    if (inc.is_neg_inf()) throw std::invalid_argument("objective track needs an admissible control");
    z.push_back(z.back() + u.step() * std::max(0.0, inc.value()));
  }
  traj.z = std::move(z);
  return traj;
}

struct AdmissibilityReport {
  std::vector<std::size_t> violating_segments;
  [[nodiscard]] bool passed() const { return violating_segments.empty(); }
};

inline AdmissibilityReport admissibility_check(const ConeSpec& cone, const ControlSignal& u,
                                               double tol = kDefaultConeTol) {
  u.validate();
  AdmissibilityReport rep;
  for (std::size_t k = 0; k < u.segments(); ++k) {
    if (!cone_contains(cone, u.values[k], tol)) rep.violating_segments.push_back(k);
  }
  return rep;
}

/// True for the step-2 groups built from R^{1,r} with g_2 = t ^ s.
inline bool is_lorentz_step2(const GroupModel& model) {
  if (!model.is_carnot()) return false;
  const auto& alg = model.algebra();
  if (alg.step() != 2) return false;
  const int r = alg.layer_dim(1) - 1;
  if (r < 1 || alg.layer_dim(2) != r) return false;
  return alg == CarnotAlgebra::LorentzStep2(r);
}

/// Signed area enclosed by the projection of the path onto span(e_0, e_i)
/// and the chord back to its start (shoelace over the grid nodes; exact for
/// piecewise-constant controls, whose first layer moves linearly).
inline double oriented_area(const GroupModel& model, const Trajectory& traj, int i) {
  if (!is_lorentz_step2(model)) throw WrongModel("oriented area needs the step-2 Lorentz group");
  const int r = model.algebra().layer_dim(1) - 1;
  if (i < 1 || i > r) throw std::out_of_range("area index must lie in 1..r");
  traj.validate();
  double twice = 0.0;
  const std::size_t n = traj.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& a = traj.points[k].coords;
    const Vector& b = traj.points[(k + 1) % n].coords;
    twice += a(0) * b(i) - a(i) * b(0);
  }
  return 0.5 * twice;
}

namespace detail {
inline std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// CSV with columns t, c0..c{n-1}, z; one row per grid node, 17 significant
/// digits. The z field is empty when the trajectory carries no objective.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  traj.validate();
  const auto dim = traj.points.front().coords.size();
  os << "t";
  for (Eigen::Index c = 0; c < dim; ++c) os << ",c" << c;
  os << ",z\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << detail::FormatReal(traj.times[k]);
    for (Eigen::Index c = 0; c < dim; ++c) os << ',' << detail::FormatReal(traj.points[k].coords(c));
    os << ',';
    if (traj.z) os << detail::FormatReal((*traj.z)[k]);
    os << '\n';
  }
}

}  // namespace sublorentz
