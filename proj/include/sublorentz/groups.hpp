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

// Computable group models: abelian R^n, the hyperbolic plane R x| R_+, and
// Carnot groups in exponential coordinates of the first kind.

#include <cmath>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sublorentz/common.hpp"

namespace sublorentz {

// ---------------------------------------------------------------------------
// Carnot algebras

/// A stratified nilpotent Lie algebra g = g_1 + ... + g_s given by structure
/// constants in a graded basis. Validated eagerly: grading, antisymmetry,
/// Jacobi on basis triples, and generation [g_1, g_i] = g_{i+1}.
class CarnotAlgebra {
 public:
  /// [basis_i, basis_j] has component coeff on basis_k (0-based indices).
  struct BracketEntry {
    int i;
    int j;
    int k;
    double coeff;
  };

  static constexpr int kMaxBchStep = 4;

  static CarnotAlgebra Create(std::vector<int> layer_dims, const std::vector<BracketEntry>& table) {
    if (layer_dims.empty()) throw InvalidAlgebra("at least one layer is required");
    for (int d : layer_dims) {
      if (d <= 0) throw InvalidAlgebra("layer dimensions must be positive");
    }
    CarnotAlgebra alg;
    alg.layer_dims_ = std::move(layer_dims);
    int offset = 0;
    for (std::size_t l = 0; l < alg.layer_dims_.size(); ++l) {
      alg.layer_offsets_.push_back(offset);
      for (int c = 0; c < alg.layer_dims_[l]; ++c) alg.layer_of_.push_back(static_cast<int>(l) + 1);
      offset += alg.layer_dims_[l];
    }
    alg.dim_ = offset;
    const int n = alg.dim_;
    alg.constants_.assign(static_cast<std::size_t>(n) * n * n, 0.0);

    for (const auto& e : table) {
      if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n) {
        throw InvalidAlgebra("bracket index out of range");
      }
      if (!std::isfinite(e.coeff)) throw InvalidAlgebra("non-finite structure constant");
      if (e.coeff == 0.0) continue;
      if (e.i == e.j) throw InvalidAlgebra("[e_i, e_i] must vanish");
      if (alg.layer_of_[e.k] != alg.layer_of_[e.i] + alg.layer_of_[e.j]) {
        throw InvalidAlgebra("bracket violates the grading: [layer " +
                             std::to_string(alg.layer_of_[e.i]) + ", layer " +
                             std::to_string(alg.layer_of_[e.j]) + "] must land in layer " +
                             std::to_string(alg.layer_of_[e.i] + alg.layer_of_[e.j]));
      }
      double& ij = alg.at(e.i, e.j, e.k);
      double& ji = alg.at(e.j, e.i, e.k);
      if ((ij != 0.0 && ij != e.coeff) || (ji != 0.0 && ji != -e.coeff)) {
        throw InvalidAlgebra("conflicting or non-antisymmetric bracket entries");
      }
      ij = e.coeff;
      ji = -e.coeff;
    }

    // Jacobi identity on basis triples.
    double scale = 1.0;
    for (double c : alg.constants_) scale = std::max(scale, std::abs(c));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          const Vector ea = Vector::Unit(n, a), eb = Vector::Unit(n, b), ec = Vector::Unit(n, c);
          const Vector jac = alg.bracket(ea, alg.bracket(eb, ec)) +
                             alg.bracket(eb, alg.bracket(ec, ea)) +
                             alg.bracket(ec, alg.bracket(ea, eb));
          if (jac.cwiseAbs().maxCoeff() > 1e-12 * scale * scale) {
            throw InvalidAlgebra("Jacobi identity fails on basis triple (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
          }
        }
      }
    }

    // Generation: [g_1, g_l] spans g_{l+1}.
    for (int l = 1; l < alg.step(); ++l) {
      Matrix span(alg.layer_dim(l + 1), alg.layer_dim(1) * alg.layer_dim(l));
      int col = 0;
      for (int a = 0; a < alg.layer_dim(1); ++a) {
        for (int b = 0; b < alg.layer_dim(l); ++b) {
          const Vector br = alg.bracket(Vector::Unit(n, alg.layer_offset(1) + a),
                                        Vector::Unit(n, alg.layer_offset(l) + b));
          span.col(col++) = br.segment(alg.layer_offset(l + 1), alg.layer_dim(l + 1));
        }
      }
      Eigen::FullPivLU<Matrix> lu(span);
      lu.setThreshold(1e-10);
      if (lu.rank() != alg.layer_dim(l + 1)) {
        throw InvalidAlgebra("[g_1, g_" + std::to_string(l) + "] does not span g_" +
                             std::to_string(l + 1));
      }
    }
    return alg;
  }

  /// Step-1 algebra: R^n with zero bracket.
  static CarnotAlgebra Abelian(int n) { return Create({n}, {}); }

  /// g_1 = R^{1,r} with basis e_0..e_r, g_2 = span(e_0 ^ e_i) with
  /// [a, b]_i = a_0 b_i - b_0 a_i. r = 1 is the Heisenberg algebra.
  static CarnotAlgebra LorentzStep2(int r) {
    if (r < 1) throw InvalidAlgebra("step-2 Lorentz algebra needs r >= 1");
    std::vector<BracketEntry> table;
    for (int i = 1; i <= r; ++i) table.push_back({0, i, r + i, 1.0});
    return Create({r + 1, r}, table);
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int step() const { return static_cast<int>(layer_dims_.size()); }
  [[nodiscard]] const std::vector<int>& layer_dims() const { return layer_dims_; }
  /// 1-based layer numbering, as in g_1, ..., g_s.
  [[nodiscard]] int layer_dim(int layer) const { return layer_dims_.at(static_cast<std::size_t>(layer - 1)); }
  [[nodiscard]] int layer_offset(int layer) const {
    return layer_offsets_.at(static_cast<std::size_t>(layer - 1));
  }
  [[nodiscard]] int layer_of(int index) const { return layer_of_.at(static_cast<std::size_t>(index)); }
  [[nodiscard]] double structure_constant(int i, int j, int k) const {
    return constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }

  [[nodiscard]] std::vector<BracketEntry> table() const {
    std::vector<BracketEntry> out;
    for (int i = 0; i < dim_; ++i) {
      for (int j = i + 1; j < dim_; ++j) {
        for (int k = 0; k < dim_; ++k) {
          const double c = structure_constant(i, j, k);
          if (c != 0.0) out.push_back({i, j, k, c});
        }
      }
    }
    return out;
  }

  [[nodiscard]] Vector bracket(const Vector& a, const Vector& b) const {
    require_dim(dim_, a.size());
    require_dim(dim_, b.size());
    Vector out = Vector::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (a(i) == 0.0) continue;
      for (int j = 0; j < dim_; ++j) {
        const double ab = a(i) * b(j);
        if (ab == 0.0) continue;
        const double* row = &constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_];
        for (int k = 0; k < dim_; ++k) out(k) += ab * row[k];
      }
    }
    return out;
  }

  friend bool operator==(const CarnotAlgebra& x, const CarnotAlgebra& y) {
    return x.layer_dims_ == y.layer_dims_ && x.constants_ == y.constants_;
  }

 private:
  CarnotAlgebra() = default;
  double& at(int i, int j, int k) { return constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }

  std::vector<int> layer_dims_;
  std::vector<int> layer_offsets_;
  std::vector<int> layer_of_;
  int dim_ = 0;
  std::vector<double> constants_;
};

/// Parses the textual structure-constant table:
///
///     # comment
///     layers 2 1
///     0 1 2 1.0
///
/// One "i j k coeff" entry per line meaning [basis_i, basis_j] has component
/// coeff on basis_k. Errors carry the offending line number.
inline CarnotAlgebra parse_structure_constants(std::istream& in) {
  std::vector<int> layers;
  std::vector<CarnotAlgebra::BracketEntry> table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& what) {
      throw InvalidAlgebra("structure table line " + std::to_string(lineno) + ": " + what);
    };
    if (first == "layers") {
      if (!layers.empty()) fail("duplicate layers header");
      int d;
      while (ls >> d) layers.push_back(d);
      if (!ls.eof() || layers.empty()) fail("expected positive integers after 'layers'");
      continue;
    }
    if (layers.empty()) fail("'layers' header must come first");
    CarnotAlgebra::BracketEntry e{};
    std::istringstream entry(line);
    std::string extra;
    if (!(entry >> e.i >> e.j >> e.k >> e.coeff) || (entry >> extra)) {
      fail("expected 'i j k coeff'");
    }
    table.push_back(e);
  }
  if (layers.empty()) throw InvalidAlgebra("structure table: missing 'layers' header");
  return CarnotAlgebra::Create(std::move(layers), table);
}

/// log(exp(a) exp(b)) via the BCH series, exact for nilpotency step <= 4.
inline Vector bch_log_product(const CarnotAlgebra& alg, const Vector& a, const Vector& b) {
  const int s = alg.step();
  if (s > CarnotAlgebra::kMaxBchStep) {
    throw UnsupportedStep("BCH product is implemented through step 4, algebra has step " +
                          std::to_string(s));
  }
  Vector z = a + b;
  if (s >= 2) {
    const Vector ab = alg.bracket(a, b);
    z += 0.5 * ab;
    if (s >= 3) {
      const Vector a_ab = alg.bracket(a, ab);
      z += (a_ab - alg.bracket(b, ab)) / 12.0;
      if (s >= 4) z -= alg.bracket(b, a_ab) / 24.0;
    }
  }
  return z;
}

/// d/ds log(exp(xi) exp(s v)) at s = 0: v + 1/2 [xi, v] + 1/12 [xi, [xi, v]].
inline Vector right_log_derivative(const CarnotAlgebra& alg, const Vector& xi, const Vector& v) {
  Vector out = v;
  if (alg.step() >= 2) {
    const Vector xv = alg.bracket(xi, v);
    out += 0.5 * xv;
    if (alg.step() >= 3) out += alg.bracket(xi, xv) / 12.0;
  }
  return out;
}

/// Ad_{exp(sigma)} w = w + [sigma, w] + 1/2 [sigma, [sigma, w]] + 1/6 [...].
inline Vector adjoint_action(const CarnotAlgebra& alg, const Vector& sigma, const Vector& w) {
  Vector out = w;
  Vector term = w;
  double fact = 1.0;
  for (int k = 1; k < alg.step(); ++k) {
    term = alg.bracket(sigma, term);
    fact *= k;
    out += term / fact;
  }
  return out;
}

/// (1 - e^{-ad A}) / ad A applied to delta, so that
/// exp(A + delta) = exp(A) exp(this + O(delta^2)).
inline Vector exp_variation(const CarnotAlgebra& alg, const Vector& a, const Vector& delta) {
  Vector out = delta;
  Vector term = delta;
  double fact = 1.0;
  for (int k = 1; k < alg.step(); ++k) {
    term = alg.bracket(a, term);
    fact *= (k + 1);
    out += ((k % 2 == 1) ? -1.0 : 1.0) * term / fact;
  }
  return out;
}

/// Projection onto g_1 along [g, g].
inline Vector first_layer_projection(const CarnotAlgebra& alg, const Vector& xi) {
  require_dim(alg.dim(), xi.size());
  return xi.head(alg.layer_dim(1));
}

// ---------------------------------------------------------------------------
// Group models

struct AbelianModel {
  Eigen::Index dim;
};
struct HyperbolicModel {};
struct CarnotModel {
  std::shared_ptr<const CarnotAlgebra> algebra;
};

/// A point of a group model. Abelian and Carnot points are exponential
/// coordinates; hyperbolic points are (x, y) with y > 0.
struct GroupPoint {
  Vector coords;
};

class GroupModel {
 public:
  using Variant = std::variant<AbelianModel, HyperbolicModel, CarnotModel>;

  static GroupModel Abelian(Eigen::Index dim) {
    if (dim <= 0) throw std::invalid_argument("abelian model needs positive dimension");
    return GroupModel(AbelianModel{dim});
  }
  static GroupModel Hyperbolic() { return GroupModel(HyperbolicModel{}); }
  static GroupModel Carnot(CarnotAlgebra algebra) {
    return GroupModel(CarnotModel{std::make_shared<const CarnotAlgebra>(std::move(algebra))});
  }

  [[nodiscard]] const Variant& variant() const { return spec_; }
  [[nodiscard]] bool is_abelian() const { return std::holds_alternative<AbelianModel>(spec_); }
  [[nodiscard]] bool is_hyperbolic() const { return std::holds_alternative<HyperbolicModel>(spec_); }
  [[nodiscard]] bool is_carnot() const { return std::holds_alternative<CarnotModel>(spec_); }
  [[nodiscard]] const CarnotAlgebra& algebra() const {
    if (!is_carnot()) throw WrongModel("model is not a Carnot group");
    return *std::get<CarnotModel>(spec_).algebra;
  }

  /// Dimension of the manifold (and of its tangent spaces).
  [[nodiscard]] Eigen::Index dim() const {
    return std::visit(
        [](const auto& m) -> Eigen::Index {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, AbelianModel>) return m.dim;
          else if constexpr (std::is_same_v<T, HyperbolicModel>) return 2;
          else return m.algebra->dim();
        },
        spec_);
  }

  /// Dimension of admissible controls: g_1 for Carnot, the full tangent
  /// space otherwise.
  [[nodiscard]] Eigen::Index control_dim() const {
    return is_carnot() ? algebra().layer_dim(1) : dim();
  }

  [[nodiscard]] GroupPoint identity() const {
    Vector e = Vector::Zero(dim());
    if (is_hyperbolic()) e(1) = 1.0;
    return {e};
  }

  void validate(const GroupPoint& p) const {
    require_dim(dim(), p.coords.size());
    if (!p.coords.allFinite()) throw InvalidPoint("point has non-finite coordinates");
    if (is_hyperbolic() && !(p.coords(1) > 0.0)) {
      throw InvalidPoint("hyperbolic point requires y > 0");
    }
  }

  /// Pads a g_1 control to a full g-vector; other vectors pass through.
  [[nodiscard]] Vector embed_control(const Vector& u) const {
    if (u.size() == dim()) return u;
    if (is_carnot() && u.size() == control_dim()) {
      Vector full = Vector::Zero(dim());
      full.head(u.size()) = u;
      return full;
    }
    throw DimensionMismatch(control_dim(), u.size());
  }

  [[nodiscard]] std::string name() const {
    if (is_abelian()) return "abelian";
    if (is_hyperbolic()) return "hyperbolic";
    return "carnot";
  }

 private:
  explicit GroupModel(Variant v) : spec_(std::move(v)) {}
  Variant spec_;
};

namespace detail {

// expm1(z) / z, continuous at 0.
inline double Phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

// d/dz of Phi1.
inline double Phi1Derivative(double z) {
  if (std::abs(z) < 1e-3) return 0.5 + z / 3.0 + z * z / 8.0 + z * z * z / 30.0;
  return (z * std::exp(z) - std::expm1(z)) / (z * z);
}

}  // namespace detail

inline GroupPoint group_mul(const GroupModel& model, const GroupPoint& p, const GroupPoint& q) {
  model.validate(p);
  model.validate(q);
  return std::visit(
      [&](const auto& m) -> GroupPoint {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AbelianModel>) {
          return {p.coords + q.coords};
        } else if constexpr (std::is_same_v<T, HyperbolicModel>) {
          Vector r(2);
          r << p.coords(0) + p.coords(1) * q.coords(0), p.coords(1) * q.coords(1);
          return {r};
        } else {
          return {bch_log_product(*m.algebra, p.coords, q.coords)};
        }
      },
      model.variant());
}

inline GroupPoint group_inv(const GroupModel& model, const GroupPoint& p) {
  model.validate(p);
  if (model.is_hyperbolic()) {
    Vector r(2);
    r << -p.coords(0) / p.coords(1), 1.0 / p.coords(1);
    return {r};
  }
  return {-p.coords};
}

/// exp(u) for a tangent vector u at the identity.
inline GroupPoint group_exp(const GroupModel& model, const Vector& u) {
  const Vector v = model.embed_control(u);
  if (model.is_hyperbolic()) {
    const double alpha = v(0);
    const double beta = v(1);
    Vector r(2);
    r << alpha * detail::Phi1(beta), std::exp(beta);
    return {r};
  }
  return {v};
}

/// Inverse of group_exp.
inline Vector group_log(const GroupModel& model, const GroupPoint& p) {
  model.validate(p);
  if (model.is_hyperbolic()) {
    const double beta = std::log(p.coords(1));
    Vector r(2);
    r << p.coords(0) / detail::Phi1(beta), beta;
    return r;
  }
  return p.coords;
}

/// p * exp(h u), exact on every model.
inline GroupPoint exp_step(const GroupModel& model, const GroupPoint& p, const Vector& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("exp_step requires h > 0");
  return group_mul(model, p, group_exp(model, h * model.embed_control(u)));
}

/// Differential of left translation by p, mapping T_id to T_p.
inline Vector pushforward(const GroupModel& model, const GroupPoint& p, const Vector& v) {
  model.validate(p);
  const Vector w = model.embed_control(v);
  return std::visit(
      [&](const auto& m) -> Vector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AbelianModel>) return w;
        else if constexpr (std::is_same_v<T, HyperbolicModel>) return p.coords(1) * w;
        else return right_log_derivative(*m.algebra, p.coords, w);
      },
      model.variant());
}

/// Inverse of pushforward: pulls a tangent vector at p back to the identity.
inline Vector pullback(const GroupModel& model, const GroupPoint& p, const Vector& v) {
  model.validate(p);
  require_dim(model.dim(), v.size());
  return std::visit(
      [&](const auto& m) -> Vector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AbelianModel>) {
          return v;
        } else if constexpr (std::is_same_v<T, HyperbolicModel>) {
          return v / p.coords(1);
        } else {
          // pushforward = I + N with N nilpotent of order < step.
          Vector out = v;
          Vector term = v;
          for (int k = 1; k < m.algebra->step(); ++k) {
            term = -(right_log_derivative(*m.algebra, p.coords, term) - term);
            out += term;
          }
          return out;
        }
      },
      model.variant());
}

/// Coordinates used to measure endpoint mismatch: log coordinates for
/// abelian and Carnot, (x, ln y) for the hyperbolic plane.
inline Vector residual_coordinates(const GroupModel& model, const GroupPoint& p) {
  model.validate(p);
  if (model.is_hyperbolic()) {
    Vector r(2);
    r << p.coords(0), std::log(p.coords(1));
    return r;
  }
  return p.coords;
}

/// |residual_coordinates(p^{-1} q)|.
inline double group_mismatch(const GroupModel& model, const GroupPoint& p, const GroupPoint& q) {
  return residual_coordinates(model, group_mul(model, group_inv(model, p), q)).norm();
}

// ---------------------------------------------------------------------------
// Riemannian metrics

struct EuclideanMetric {};
struct LobachevskyMetric {};
struct LeftInvariantQuadraticMetric {
  Matrix form;  // positive definite, at the identity
};

class RiemannianMetric {
 public:
  using Variant = std::variant<EuclideanMetric, LobachevskyMetric, LeftInvariantQuadraticMetric>;

  static RiemannianMetric Euclidean() { return RiemannianMetric(EuclideanMetric{}); }
  /// (dx^2 + dy^2) / y^2 on the hyperbolic plane.
  static RiemannianMetric Lobachevsky() { return RiemannianMetric(LobachevskyMetric{}); }
  static RiemannianMetric LeftInvariantQuadratic(Matrix form) {
    if (form.rows() != form.cols()) throw std::invalid_argument("metric form must be square");
    Eigen::LLT<Matrix> llt(0.5 * (form + form.transpose()));
    if (llt.info() != Eigen::Success) throw std::invalid_argument("metric form must be positive definite");
    return RiemannianMetric(LeftInvariantQuadraticMetric{std::move(form)});
  }

  [[nodiscard]] const Variant& variant() const { return spec_; }
  [[nodiscard]] bool is_left_invariant(const GroupModel& model) const {
    if (std::holds_alternative<LeftInvariantQuadraticMetric>(spec_)) return true;
    if (std::holds_alternative<LobachevskyMetric>(spec_)) return model.is_hyperbolic();
    return model.is_abelian();
  }

 private:
  explicit RiemannianMetric(Variant v) : spec_(std::move(v)) {}
  Variant spec_;
};

inline double riemannian_norm(const RiemannianMetric& metric, const GroupModel& model,
                              const GroupPoint& p, const Vector& v) {
  model.validate(p);
  require_dim(model.dim(), v.size());
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, EuclideanMetric>) {
          return v.norm();
        } else if constexpr (std::is_same_v<T, LobachevskyMetric>) {
          if (!model.is_hyperbolic()) throw WrongModel("Lobachevsky metric needs the hyperbolic model");
          return v.norm() / p.coords(1);
        } else {
          require_dim(g.form.rows(), v.size());
          const Vector w = pullback(model, p, v);
          return std::sqrt(w.dot(g.form * w));
        }
      },
      metric.variant());
}

}  // namespace sublorentz
