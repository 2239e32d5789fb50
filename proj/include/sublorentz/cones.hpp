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

// Closed pointed convex cones, antinorms on them, and the polar-cone
// covector search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sublorentz/common.hpp"
#include "sublorentz/lp.hpp"

namespace sublorentz {

inline constexpr double kDefaultConeTol = 1e-9;

/// Cone spanned by nonnegative combinations of finitely many generators.
struct PolyhedralCone {
  std::vector<Vector> generators;
};

/// One nappe {v : g(v,v) >= 0, selector(v) >= 0} of a form g of signature (1,r).
struct LorentzCone {
  Matrix form;
  Covector nappe_selector;
};

class ConeSpec;

/// The image map(base) of another cone under an invertible linear map.
struct LinearImageCone {
  std::shared_ptr<const ConeSpec> base;
  Matrix map;
};

namespace detail {

// Every cone is reduced once, at construction, to either unit generators or
// an eigen-decomposed Lorentz form. LinearImage cones are pushed through
// their map so that all queries work on these two shapes.
struct CanonicalPolyhedral {
  Matrix unit_generators;  // columns, nonzero generators scaled to unit norm
};

struct CanonicalLorentz {
  Matrix form;
  Covector selector;
  Matrix eigenvectors;  // orthonormal columns
  Vector eigenvalues;
  Eigen::Index time_axis = 0;  // index of the single positive eigenvalue
  double orientation = 1.0;    // sign making the selected nappe t >= 0
  Vector spatial_scale;        // sqrt(|lambda_i| / lambda_time) for i != time_axis
};

using Canonical = std::variant<CanonicalPolyhedral, CanonicalLorentz>;

inline CanonicalLorentz MakeCanonicalLorentz(const Matrix& g, const Covector& selector) {
  const auto n = g.rows();
  if (g.cols() != n) throw std::invalid_argument("Lorentz form must be square");
  require_dim(n, selector.dim());
  if (!g.allFinite() || !selector.components.allFinite()) {
    throw std::invalid_argument("Lorentz form has non-finite entries");
  }
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("Lorentz form must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Vector& lambda = es.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  int positives = 0;
  Eigen::Index time_axis = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) <= 1e-12 * scale) {
      throw std::invalid_argument("Lorentz form is degenerate");
    }
    if (lambda(i) > 0) {
      ++positives;
      time_axis = i;
    }
  }
  if (positives != 1) throw std::invalid_argument("Lorentz form must have signature (1,r)");

  // The selector picks a nappe iff its kernel is spacelike, i.e. it is
  // timelike for the dual form.
  const Vector sc = es.eigenvectors().transpose() * selector.components;
  double dual = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) dual += sc(i) * sc(i) / lambda(i);
  if (!(dual > 1e-14 * sc.squaredNorm() / scale)) {
    throw std::invalid_argument("nappe selector must be strictly positive on the selected nappe");
  }

  CanonicalLorentz c;
  c.form = g;
  c.selector = selector;
  c.eigenvectors = es.eigenvectors();
  c.eigenvalues = lambda;
  c.time_axis = time_axis;
  c.orientation = sc(time_axis) > 0 ? 1.0 : -1.0;
  c.spatial_scale.resize(n - 1);
  for (Eigen::Index i = 0, k = 0; i < n; ++i) {
    if (i == time_axis) continue;
    c.spatial_scale(k++) = std::sqrt(std::abs(lambda(i)) / lambda(time_axis));
  }
  return c;
}

// Split into (t, z) coordinates where the nappe is t >= |spatial_scale * z|.
inline std::pair<double, Vector> ToNappeCoords(const CanonicalLorentz& c, const Vector& v) {
  const Vector e = c.eigenvectors.transpose() * v;
  Vector z(e.size() - 1);
  for (Eigen::Index i = 0, k = 0; i < e.size(); ++i) {
    if (i != c.time_axis) z(k++) = e(i);
  }
  return {c.orientation * e(c.time_axis), z};
}

inline Vector FromNappeCoords(const CanonicalLorentz& c, double t, const Vector& z) {
  Vector e(z.size() + 1);
  for (Eigen::Index i = 0, k = 0; i < e.size(); ++i) {
    e(i) = (i == c.time_axis) ? c.orientation * t : z(k++);
  }
  return c.eigenvectors * e;
}

inline Matrix UnitColumns(const std::vector<Vector>& gens, Eigen::Index dim) {
  std::vector<Vector> kept;
  for (const auto& g : gens) {
    const double nrm = g.norm();
    if (nrm > 0) kept.push_back(g / nrm);
  }
  Matrix m(dim, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = kept[j];
  return m;
}

}  // namespace detail

/// A closed convex cone in a model vector space. Immutable once built.
class ConeSpec {
 public:
  using Variant = std::variant<PolyhedralCone, LorentzCone, LinearImageCone>;

  static ConeSpec Polyhedral(std::vector<Vector> generators) {
    if (generators.empty()) throw std::invalid_argument("polyhedral cone needs generators");
    const auto dim = generators.front().size();
    if (dim <= 0) throw std::invalid_argument("polyhedral cone needs positive dimension");
    for (const auto& g : generators) {
      require_dim(dim, g.size());
      if (!g.allFinite()) throw std::invalid_argument("non-finite generator");
    }
    detail::CanonicalPolyhedral canon{detail::UnitColumns(generators, dim)};
    return ConeSpec(PolyhedralCone{std::move(generators)}, std::move(canon), dim);
  }

  static ConeSpec Lorentz(Matrix form, Covector nappe_selector) {
    auto canon = detail::MakeCanonicalLorentz(form, nappe_selector);
    const auto dim = form.rows();
    return ConeSpec(LorentzCone{std::move(form), std::move(nappe_selector)}, std::move(canon), dim);
  }

  /// The future cone x0 >= |(x1..xr)| of R^{1,r}.
  static ConeSpec StandardLorentz(Eigen::Index dim) {
    Matrix g = -Matrix::Identity(dim, dim);
    g(0, 0) = 1.0;
    return Lorentz(std::move(g), Covector(Vector::Unit(dim, 0)));
  }

  static ConeSpec LinearImage(const ConeSpec& base, Matrix map) {
    require_dim(base.dim(), map.cols());
    if (map.rows() != map.cols()) throw std::invalid_argument("linear image map must be square");
    Eigen::FullPivLU<Matrix> lu(map);
    if (!lu.isInvertible()) throw std::invalid_argument("linear image map must be invertible");
    const Matrix inv = lu.inverse();
    detail::Canonical canon = std::visit(
        [&](const auto& c) -> detail::Canonical {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
            std::vector<Vector> imaged;
            for (Eigen::Index j = 0; j < c.unit_generators.cols(); ++j) {
              imaged.emplace_back(map * c.unit_generators.col(j));
            }
            return detail::CanonicalPolyhedral{detail::UnitColumns(imaged, map.rows())};
          } else {
            Matrix g = inv.transpose() * c.form * inv;
            g = 0.5 * (g + g.transpose());
            return detail::MakeCanonicalLorentz(g, Covector(inv.transpose() * c.selector.components));
          }
        },
        *base.canonical_);
    const auto dim = map.rows();
    return ConeSpec(LinearImageCone{std::make_shared<const ConeSpec>(base), std::move(map)},
                    std::move(canon), dim);
  }

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] const Variant& variant() const { return spec_; }
  [[nodiscard]] const detail::Canonical& canonical() const { return *canonical_; }

  [[nodiscard]] bool is_polyhedral() const {
    return std::holds_alternative<detail::CanonicalPolyhedral>(*canonical_);
  }

 private:
  ConeSpec(Variant spec, detail::Canonical canon, Eigen::Index dim)
      : spec_(std::move(spec)),
        canonical_(std::make_shared<const detail::Canonical>(std::move(canon))),
        dim_(dim) {}

  Variant spec_;
  std::shared_ptr<const detail::Canonical> canonical_;
  Eigen::Index dim_;
};

// ---------------------------------------------------------------------------
// Membership and pointedness

namespace detail {

// Smallest l1 residual |G lambda - v|_1 over lambda >= 0.
inline double PolyhedralResidual(const Matrix& gens, const Vector& v) {
  const auto d = v.size();
  const auto k = gens.cols();
  if (k == 0) return v.cwiseAbs().sum();
  // Variables: lambda (k), s_plus (d), s_minus (d).
  const auto nvar = k + 2 * d;
  Vector cost = Vector::Zero(nvar);
  cost.tail(2 * d).setConstant(-1.0);
  std::vector<lp::Constraint> rows;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector row = Vector::Zero(nvar);
    row.head(k) = gens.row(i).transpose();
    row(k + i) = 1.0;
    row(k + d + i) = -1.0;
    rows.push_back({row, lp::Relation::kEqual, v(i)});
  }
  const auto res = lp::Maximize(cost, rows);
  if (res.status != lp::Status::kOptimal) return std::numeric_limits<double>::infinity();
  return -res.objective;
}

}  // namespace detail

/// True iff v lies within tol * |v| of the cone.
inline bool cone_contains(const ConeSpec& cone, const Vector& v, double tol = kDefaultConeTol) {
  require_dim(cone.dim(), v.size());
  const double nv = v.norm();
  if (nv == 0.0) return true;
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          return detail::PolyhedralResidual(c.unit_generators, v) <= tol * nv;
        } else {
          const double gv = v.dot(c.form * v);
          const double gscale = c.eigenvalues.cwiseAbs().maxCoeff();
          const double sv = c.selector(v);
          return gv >= -tol * gscale * nv * nv && sv >= -tol * c.selector.norm() * nv;
        }
      },
      cone.canonical());
}

/// True iff the cone contains no line.
inline bool is_pointed(const ConeSpec& cone) {
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          const auto& g = c.unit_generators;
          const auto k = g.cols();
          if (k == 0) return true;
          // max sum(lambda) s.t. G lambda = 0, sum(lambda) <= 1, lambda >= 0.
          std::vector<lp::Constraint> rows;
          for (Eigen::Index i = 0; i < g.rows(); ++i) {
            rows.push_back({g.row(i).transpose(), lp::Relation::kEqual, 0.0});
          }
          rows.push_back({Vector::Ones(k), lp::Relation::kLessEqual, 1.0});
          const auto res = lp::Maximize(Vector::Ones(k), rows);
          return res.status == lp::Status::kOptimal && res.objective <= 1e-9;
        } else {
          return true;
        }
      },
      cone.canonical());
}

// ---------------------------------------------------------------------------
// Boundary directions and sampling

namespace detail {

// Unit-norm boundary rays used wherever a supremum over the cone is taken.
// Exact for polyhedral cones (the extreme rays) and for Lorentz cones with
// r <= 1; for r >= 2 a dense deterministic sample of the light cone.
inline std::vector<Vector> BoundaryRays(const ConeSpec& cone) {
  std::vector<Vector> rays;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CanonicalPolyhedral>) {
          for (Eigen::Index j = 0; j < c.unit_generators.cols(); ++j) {
            rays.emplace_back(c.unit_generators.col(j));
          }
        } else {
          const auto r = c.spatial_scale.size();
          auto push = [&](const Vector& omega) {
            // t = 1, z chosen so |scale * z| = 1 along omega.
            Vector z = omega.cwiseQuotient(c.spatial_scale) / omega.norm();
            z /= (c.spatial_scale.cwiseProduct(z)).norm();
            const Vector v = FromNappeCoords(c, 1.0, z);
            rays.emplace_back(v / v.norm());
          };
          if (r == 0) {
            rays.emplace_back(FromNappeCoords(c, 1.0, Vector(0)).normalized());
          } else if (r == 1) {
            push(Vector::Constant(1, 1.0));
            push(Vector::Constant(1, -1.0));
          } else if (r == 2) {
            constexpr int kSteps = 3600;
            for (int i = 0; i < kSteps; ++i) {
              const double a = 2.0 * M_PI * i / kSteps;
              Vector w(2);
              w << std::cos(a), std::sin(a);
              push(w);
            }
          } else {
            std::mt19937_64 rng(0x5eedULL);
            std::normal_distribution<double> normal;
            for (Eigen::Index i = 0; i < r; ++i) {
              push(Vector::Unit(r, i));
              push(-Vector::Unit(r, i));
            }
            for (int i = 0; i < 8192; ++i) {
              Vector w(r);
              for (Eigen::Index j = 0; j < r; ++j) w(j) = normal(rng);
              push(w);
            }
          }
        }
      },
      cone.canonical());
  return rays;
}

}  // namespace detail

enum class SampleRegion { kAny, kInterior, kBoundary };

/// Random element of the cone with log-uniform magnitude in [0.1, 10].
/// kInterior draws from the relative interior, kBoundary from extreme rays
/// (polyhedral) or the light cone (Lorentz).
template <class Rng>
Vector sample_cone_point(const ConeSpec& cone, Rng& rng, SampleRegion region = SampleRegion::kAny) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> normal;
  if (region == SampleRegion::kAny) {
    const double u = unit(rng);
    region = u < 0.2 ? SampleRegion::kBoundary : SampleRegion::kInterior;
  }
  const double magnitude = std::exp(std::log(0.1) + unit(rng) * std::log(100.0));
  Vector v = std::visit(
      [&](const auto& c) -> Vector {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          const auto k = c.unit_generators.cols();
          if (k == 0) return Vector::Zero(cone.dim());
          if (region == SampleRegion::kBoundary) {
            std::uniform_int_distribution<Eigen::Index> pick(0, k - 1);
            return c.unit_generators.col(pick(rng));
          }
          Vector w(k);
          for (Eigen::Index j = 0; j < k; ++j) w(j) = expo(rng) + 0.05;
          return c.unit_generators * w;
        } else {
          const auto r = c.spatial_scale.size();
          Vector omega(r);
          for (Eigen::Index j = 0; j < r; ++j) omega(j) = normal(rng);
          double radius = 1.0;
          if (region == SampleRegion::kInterior) {
            radius = std::pow(unit(rng), 1.0 / static_cast<double>(std::max<Eigen::Index>(r, 1))) * 0.999;
          }
          Vector z = Vector::Zero(r);
          if (r > 0 && omega.norm() > 0) {
            omega.normalize();
            z = radius * omega.cwiseQuotient(c.spatial_scale);
          }
          return detail::FromNappeCoords(c, 1.0, z);
        }
      },
      cone.canonical());
  const double nv = v.norm();
  return nv > 0 ? Vector(v * (magnitude / nv)) : v;
}

// ---------------------------------------------------------------------------
// Projections

namespace detail {

// Lawson-Hanson nonnegative least squares: argmin |A x - b|, x >= 0.
inline Vector Nnls(const Matrix& a, const Vector& b) {
  const auto n = a.cols();
  Vector x = Vector::Zero(n);
  if (n == 0) return x;
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max(1.0, b.norm());
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Vector w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j]) idx.push_back(j);
      }
      Matrix ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t j = 0; j < idx.size(); ++j) ap.col(static_cast<Eigen::Index>(j)) = a.col(idx[j]);
      const Vector zp = ap.completeOrthogonalDecomposition().solve(b);
      Vector z = Vector::Zero(n);
      for (std::size_t j = 0; j < idx.size(); ++j) z(idx[j]) = zp(static_cast<Eigen::Index>(j));
      bool feasible = true;
      for (auto j : idx) feasible = feasible && z(j) > 0;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (auto j : idx) {
        if (z(j) <= 0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (auto j : idx) {
        if (x(j) <= 1e-15) {
          x(j) = 0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

inline Vector ProjectLorentz(const CanonicalLorentz& c, const Vector& v) {
  auto [t0, z0] = ToNappeCoords(c, v);
  const Vector& s = c.spatial_scale;
  const double inner = s.cwiseProduct(z0).norm();
  if (t0 >= inner) return v;
  const double polar = z0.cwiseQuotient(s).norm();
  if (-t0 >= polar) return Vector::Zero(v.size());
  auto z_of = [&](double eta) {
    const double t = t0 + eta;
    Vector z(z0.size());
    for (Eigen::Index i = 0; i < z0.size(); ++i) z(i) = z0(i) / (1.0 + eta * s(i) * s(i) / t);
    return z;
  };
  auto phi = [&](double eta) { return s.cwiseProduct(z_of(eta)).norm() - (t0 + eta); };
  double lo = std::max(0.0, -t0);
  double hi = std::max(1.0, 2.0 * std::abs(t0)) + inner;
  while (phi(hi) > 0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > 0 ? lo : hi) = mid;
  }
  const double eta = hi;
  return FromNappeCoords(c, t0 + eta, z_of(eta));
}

}  // namespace detail

/// Euclidean projection of v onto the cone.
inline Vector project_onto_cone(const ConeSpec& cone, const Vector& v) {
  require_dim(cone.dim(), v.size());
  return std::visit(
      [&](const auto& c) -> Vector {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          if (c.unit_generators.cols() == 0) return Vector::Zero(v.size());
          return c.unit_generators * detail::Nnls(c.unit_generators, v);
        } else {
          return detail::ProjectLorentz(c, v);
        }
      },
      cone.canonical());
}

/// Euclidean projection onto the slice {w in cone : tau(w) = level}, by
/// Dykstra's alternating projections between the cone and the hyperplane.
inline Vector project_onto_slice(const ConeSpec& cone, const Covector& tau, double level,
                                 const Vector& v) {
  require_dim(cone.dim(), v.size());
  require_dim(cone.dim(), tau.dim());
  const Vector& a = tau.components;
  const double aa = a.squaredNorm();
  auto to_plane = [&](const Vector& x) -> Vector { return x - ((a.dot(x) - level) / aa) * a; };
  Vector x = v;
  Vector q = Vector::Zero(v.size());
  for (int iter = 0; iter < 20000; ++iter) {
    const Vector y = to_plane(x);
    const Vector next = project_onto_cone(cone, y + q);
    q = y + q - next;
    const double change = (next - x).norm();
    x = next;
    if (change <= 1e-15 * std::max(1.0, x.norm())) break;
  }
  // Final snap onto the hyperplane keeps tau(w) = level to rounding.
  return to_plane(x);
}

// ---------------------------------------------------------------------------
// Time covector

struct TimeCovector {
  Covector tau;
  /// min over unit boundary rays g of tau(g) / |tau|.
  double margin = 0.0;
};

inline double covector_margin(const ConeSpec& cone, const Covector& tau) {
  require_dim(cone.dim(), tau.dim());
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& ray : detail::BoundaryRays(cone)) margin = std::min(margin, tau(ray));
  return margin / tau.norm();
}

/// A covector strictly positive on cone \ {0}, i.e. an interior point of the
/// polar cone. Throws NotPointed when no such covector exists.
inline TimeCovector find_time_covector(const ConeSpec& cone) {
  if (!is_pointed(cone)) throw NotPointed("cone contains a line; polar cone has empty interior");
  return std::visit(
      [&](const auto& c) -> TimeCovector {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          const auto d = cone.dim();
          const auto& g = c.unit_generators;
          if (g.cols() == 0) {
            return {Covector(Vector::Unit(d, 0)), std::numeric_limits<double>::infinity()};
          }
          // Variables: shifted tau' = tau + 1 in [0, 2]^d, margin t >= 0.
          // max t  s.t.  t - g_i . tau' <= -g_i . 1.
          Vector cost = Vector::Zero(d + 1);
          cost(d) = 1.0;
          std::vector<lp::Constraint> rows;
          for (Eigen::Index j = 0; j < g.cols(); ++j) {
            Vector row(d + 1);
            row.head(d) = -g.col(j);
            row(d) = 1.0;
            rows.push_back({row, lp::Relation::kLessEqual, -g.col(j).sum()});
          }
          for (Eigen::Index i = 0; i < d; ++i) {
            rows.push_back({Vector::Unit(d + 1, i), lp::Relation::kLessEqual, 2.0});
          }
          const auto res = lp::Maximize(cost, rows);
          if (res.status != lp::Status::kOptimal || res.objective <= 1e-12) {
            throw NotPointed("no covector is strictly positive on the cone");
          }
          Vector tau = res.x.head(d) - Vector::Ones(d);
          tau /= tau.norm();
          Covector cov(tau);
          return {cov, covector_margin(cone, cov)};
        } else {
          return {c.selector, covector_margin(cone, c.selector)};
        }
      },
      cone.canonical());
}

// ---------------------------------------------------------------------------
// Antinorms

/// nu(v) = sqrt(g(v, v)) on the cone.
struct LorentzSqrtAntinorm {
  Matrix form;
};

/// nu(v) = min_i l_i(v) on the cone. Not validated at construction;
/// check_antinorm_axioms decides whether a family is admissible.
struct MinOfLinearAntinorm {
  std::vector<Covector> family;
};

struct ZeroAntinorm {};

class AntinormSpec {
 public:
  using Variant = std::variant<LorentzSqrtAntinorm, MinOfLinearAntinorm, ZeroAntinorm>;

  static AntinormSpec LorentzSqrt(Matrix form) {
    if (form.rows() != form.cols()) throw std::invalid_argument("antinorm form must be square");
    return AntinormSpec(LorentzSqrtAntinorm{std::move(form)});
  }
  static AntinormSpec StandardLorentzSqrt(Eigen::Index dim) {
    Matrix g = -Matrix::Identity(dim, dim);
    g(0, 0) = 1.0;
    return LorentzSqrt(std::move(g));
  }
  static AntinormSpec MinOfLinear(std::vector<Covector> family) {
    if (family.empty()) throw std::invalid_argument("min-of-linear antinorm needs a family");
    for (const auto& l : family) require_dim(family.front().dim(), l.dim());
    return AntinormSpec(MinOfLinearAntinorm{std::move(family)});
  }
  static AntinormSpec Zero() { return AntinormSpec(ZeroAntinorm{}); }

  [[nodiscard]] const Variant& variant() const { return spec_; }

  /// nu_x(xi) = nu(map^{-1} xi): the antinorm carried along with a LinearImage cone.
  [[nodiscard]] AntinormSpec pushforward(const Matrix& map) const {
    const Matrix inv = map.inverse();
    return std::visit(
        [&](const auto& a) -> AntinormSpec {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, LorentzSqrtAntinorm>) {
            return LorentzSqrt(inv.transpose() * a.form * inv);
          } else if constexpr (std::is_same_v<T, MinOfLinearAntinorm>) {
            std::vector<Covector> fam;
            for (const auto& l : a.family) fam.emplace_back(inv.transpose() * l.components);
            return MinOfLinear(std::move(fam));
          } else {
            return Zero();
          }
        },
        spec_);
  }

 private:
  explicit AntinormSpec(Variant v) : spec_(std::move(v)) {}
  Variant spec_;
};

/// nu(v), or -inf when v is outside the cone.
inline ExtendedReal antinorm_eval(const AntinormSpec& nu, const ConeSpec& cone, const Vector& v,
                                  double tol = kDefaultConeTol) {
  require_dim(cone.dim(), v.size());
  if (!cone_contains(cone, v, tol)) return ExtendedReal::neg_inf();
  return std::visit(
      [&](const auto& a) -> ExtendedReal {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, LorentzSqrtAntinorm>) {
          require_dim(a.form.rows(), v.size());
          // sqrt amplifies rounding on the light cone; values of g(v, v)
          // within a few ulps of |g| |v|^2 count as lightlike.
          const double q = v.dot(a.form * v);
          const double band = 16.0 * std::numeric_limits<double>::epsilon() *
                              a.form.cwiseAbs().maxCoeff() * v.squaredNorm();
          return q <= band ? 0.0 : std::sqrt(q);
        } else if constexpr (std::is_same_v<T, MinOfLinearAntinorm>) {
          double m = std::numeric_limits<double>::infinity();
          double scale = 0.0;
          for (const auto& l : a.family) {
            m = std::min(m, l(v));
            scale = std::max(scale, l.norm());
          }
          // Boundary rounding: tiny negatives within the membership band are 0.
          if (m < 0 && m >= -tol * scale * v.norm()) m = 0.0;
          return m;
        } else {
          return 0.0;
        }
      },
      nu.variant());
}

/// nu(v) by formula alone, for callers that already keep v in the cone.
inline double antinorm_value_unchecked(const AntinormSpec& nu, const Vector& v) {
  return std::visit(
      [&](const auto& a) -> double {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, LorentzSqrtAntinorm>) {
          return std::sqrt(std::max(0.0, v.dot(a.form * v)));
        } else if constexpr (std::is_same_v<T, MinOfLinearAntinorm>) {
          double m = std::numeric_limits<double>::infinity();
          for (const auto& l : a.family) m = std::min(m, l(v));
          return m;
        } else {
          return 0.0;
        }
      },
      nu.variant());
}

/// Unit vector in the relative interior of the cone: the normalized sum of
/// unit generators, or the Lorentz axis.
inline Vector interior_direction(const ConeSpec& cone) {
  return std::visit(
      [&](const auto& c) -> Vector {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, detail::CanonicalPolyhedral>) {
          const Vector s = c.unit_generators.rowwise().sum();
          return s.norm() > 0 ? Vector(s / s.norm()) : Vector(Vector::Zero(cone.dim()));
        } else {
          return detail::FromNappeCoords(c, 1.0, Vector::Zero(c.spatial_scale.size())).normalized();
        }
      },
      cone.canonical());
}

/// A supergradient of nu at v, for v in the cone. At lightlike points of a
/// LorentzSqrt antinorm the gradient is unbounded; callers nudge v inward.
inline Vector antinorm_supergradient(const AntinormSpec& nu, const Vector& v) {
  return std::visit(
      [&](const auto& a) -> Vector {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, LorentzSqrtAntinorm>) {
          const Vector gv = a.form * v;
          const double val = std::sqrt(std::max(v.dot(gv), 1e-300));
          return gv / val;
        } else if constexpr (std::is_same_v<T, MinOfLinearAntinorm>) {
          std::size_t best = 0;
          for (std::size_t i = 1; i < a.family.size(); ++i) {
            if (a.family[i](v) < a.family[best](v)) best = i;
          }
          return a.family[best].components;
        } else {
          return Vector::Zero(v.size());
        }
      },
      nu.variant());
}

// ---------------------------------------------------------------------------
// Axiom checks

struct AxiomCounterexample {
  std::string axiom;
  Vector a;
  Vector b;
  double lambda = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomReport {
  std::size_t pairs_checked = 0;
  std::size_t nonnegativity_violations = 0;
  std::size_t homogeneity_violations = 0;
  std::size_t superadditivity_violations = 0;
  std::size_t interior_positivity_violations = 0;
  bool identically_zero = true;
  std::optional<AxiomCounterexample> first_counterexample;

  [[nodiscard]] bool passed() const {
    return nonnegativity_violations == 0 && homogeneity_violations == 0 &&
           superadditivity_violations == 0 && interior_positivity_violations == 0;
  }
};

/// Sample-level check of the antinorm axioms for any candidate functional
/// Vector -> ExtendedReal: nonnegativity on the cone, positive homogeneity
/// (1e-9 relative), superadditivity (1e-9 absolute) and, unless the
/// candidate vanishes on every sample, positivity on the relative interior.
/// Upper semicontinuity is not decidable from samples and is not checked.
template <class Candidate>
AxiomReport check_antinorm_axioms_with(const Candidate& nu, const ConeSpec& cone,
                                       std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  constexpr double kHomogeneityTol = 1e-9;
  constexpr double kSuperadditivityTol = 1e-9;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AxiomReport report;
  auto record = [&](AxiomCounterexample cx) {
    if (!report.first_counterexample) report.first_counterexample = std::move(cx);
  };
  auto value = [&](const Vector& v) -> double {
    const ExtendedReal r = nu(v);
    return r.to_double();
  };

  std::vector<Vector> interior;
  for (std::size_t n = 0; n < sample_count; ++n) {
    const Vector a = sample_cone_point(cone, rng);
    const Vector b = sample_cone_point(cone, rng);
    const double lambda = std::exp(std::log(1e-3) + unit(rng) * std::log(1e6));
    ++report.pairs_checked;

    const double na = value(a);
    const double nb = value(b);
    for (const auto* pv : {&a, &b}) {
      const double x = (pv == &a) ? na : nb;
      if (!(x >= -kSuperadditivityTol)) {
        ++report.nonnegativity_violations;
        record({"nonnegativity", *pv, *pv, 1.0, x, 0.0});
      }
      if (x > 1e-12) report.identically_zero = false;
    }

    const double scaled = value(lambda * a);
    const double expect = lambda * na;
    if (!(std::abs(scaled - expect) <= kHomogeneityTol * std::max(1.0, std::abs(expect)))) {
      ++report.homogeneity_violations;
      record({"homogeneity", a, a, lambda, scaled, expect});
    }

    const double sum = value(a + b);
    if (!(sum >= na + nb - kSuperadditivityTol)) {
      ++report.superadditivity_violations;
      record({"superadditivity", a, b, 1.0, sum, na + nb});
    }
    interior.push_back(sample_cone_point(cone, rng, SampleRegion::kInterior));
  }

  if (!report.identically_zero) {
    for (const auto& p : interior) {
      const double x = value(p);
      if (!(x > 0.0)) {
        ++report.interior_positivity_violations;
        record({"interior positivity", p, p, 1.0, x, 0.0});
      }
    }
  }
  return report;
}

inline AxiomReport check_antinorm_axioms(const AntinormSpec& nu, const ConeSpec& cone,
                                         std::size_t sample_count, std::uint64_t seed) {
  return check_antinorm_axioms_with(
      [&](const Vector& v) { return antinorm_eval(nu, cone, v); }, cone, sample_count, seed);
}

}  // namespace sublorentz
