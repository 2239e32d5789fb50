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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sublorentz/common.hpp"
#include "sublorentz/groups.hpp"

namespace sublorentz {

/// Piecewise-constant control on the uniform grid k/N, k = 0..N.
struct ControlSignal {
  std::vector<Vector> values;

  ControlSignal() = default;
  explicit ControlSignal(std::vector<Vector> v) : values(std::move(v)) { validate(); }

  /// Constant control u on n segments.
  static ControlSignal Constant(const Vector& u, std::size_t n) {
    return ControlSignal(std::vector<Vector>(n, u));
  }

  [[nodiscard]] std::size_t segments() const { return values.size(); }
  [[nodiscard]] double step() const { return 1.0 / static_cast<double>(values.size()); }

  void validate() const {
    if (values.empty()) throw std::invalid_argument("control signal needs at least one segment");
    for (const auto& v : values) {
      require_dim(values.front().size(), v.size());
      if (!v.allFinite()) throw std::invalid_argument("control signal has non-finite values");
    }
  }
};

/// Grid nodes of an integrated path, optionally with the accumulated
/// objective z (the auxiliary-problem track, non-decreasing).
struct Trajectory {
  std::vector<double> times;
  std::vector<GroupPoint> points;
  std::optional<std::vector<double>> z;

  [[nodiscard]] std::size_t segments() const { return times.empty() ? 0 : times.size() - 1; }
  [[nodiscard]] const GroupPoint& start() const { return points.front(); }
  [[nodiscard]] const GroupPoint& end() const { return points.back(); }

  void validate() const {
    if (times.size() < 2 || points.size() != times.size()) {
      throw std::invalid_argument("trajectory needs matching times/points with >= 2 nodes");
    }
    if (times.front() != 0.0) throw std::invalid_argument("trajectory must start at parameter 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
      if (!(times[k] > times[k - 1])) throw std::invalid_argument("trajectory times must increase");
    }
    if (z) {
      if (z->size() != times.size()) throw std::invalid_argument("objective track size mismatch");
      for (std::size_t k = 1; k < z->size(); ++k) {
        if ((*z)[k] < (*z)[k - 1]) throw std::invalid_argument("objective track must not decrease");
      }
    }
  }
};

}  // namespace sublorentz
