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

// Problem configuration files (YAML, schema version 1).
//
//   version: 1
//   preset: minkowski11 | hyperbolic | heisenberg-sl     (optional)
//   model:    {kind: abelian, dim: 2}
//             {kind: hyperbolic}
//             {kind: carnot, algebra: lorentz-step2, r: 1}
//             {kind: carnot, structure_constants: file.txt}
//   cone:     {kind: standard-lorentz}
//             {kind: lorentz, form: [[..]], selector: [..]}
//             {kind: polyhedral, generators: [[..], ..]}
//   antinorm: {kind: standard-lorentz-sqrt | lorentz-sqrt | min-of-linear | zero,
//              form: [[..]], family: [[..], ..]}
//   timeform: {kind: left-invariant, tau0: [..]} | {kind: hyperbolic-ab, a: 0, b: 2}
//   metric:   {kind: euclidean | lobachevsky | quadratic, form: [[..]]}
//   x0, x1: [..]
//   segments, tol, max_iter, restarts, samples, seed
//
// A preset fills every section; explicit sections override it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "sublorentz/cones.hpp"
#include "sublorentz/groups.hpp"
#include "sublorentz/solver.hpp"
#include "sublorentz/timeform.hpp"

namespace sublorentz {

/// A schema or domain violation, located in the config file.
class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& msg)
      : Error(Format(line, field, msg)), line_(line), field_(std::move(field)) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  static std::string Format(int line, const std::string& field, const std::string& msg) {
    std::ostringstream os;
    os << "config error";
    if (line > 0) os << " at line " << line;
    if (!field.empty()) os << " in field '" << field << "'";
    os << ": " << msg;
    return os.str();
  }
  int line_;
  std::string field_;
};

struct ProblemConfig {
  int version = 1;
  std::string preset;  // empty when none
  GroupModel model = GroupModel::Abelian(2);
  ConeSpec cone = ConeSpec::StandardLorentz(2);
  AntinormSpec nu = AntinormSpec::StandardLorentzSqrt(2);
  std::optional<TimeForm> form;
  RiemannianMetric metric = RiemannianMetric::Euclidean();
  GroupPoint x0;
  GroupPoint x1;
  std::size_t segments = 50;
  SolveOptions solver;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;

  [[nodiscard]] ProblemInstance instance() const {
    return ProblemInstance{model, cone, nu, x0, x1, segments};
  }
};

namespace detail {

inline int LineOf(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

class ConfigReader {
 public:
  explicit ConfigReader(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

  ProblemConfig Read(const YAML::Node& root) {
    if (!root.IsMap()) throw ConfigError(LineOf(root), "", "top level must be a mapping");
    CheckKeys(root, "",
              {"version", "preset", "model", "cone", "antinorm", "timeform", "metric", "x0", "x1",
               "segments", "tol", "max_iter", "restarts", "samples", "seed"});
    ProblemConfig cfg;
    if (!root["version"]) throw ConfigError(LineOf(root), "version", "missing schema version");
    cfg.version = Int(root["version"], "version");
    if (cfg.version != 1) throw ConfigError(LineOf(root["version"]), "version", "unsupported schema version");

    bool has_model = false;
    bool has_cone = false;
    bool has_nu = false;
    bool has_metric = false;
    if (root["preset"]) {
      cfg.preset = Str(root["preset"], "preset");
      ApplyPreset(cfg, root["preset"]);
      has_model = has_cone = has_nu = has_metric = true;
    }
    if (root["model"]) {
      cfg.model = Model(root["model"]);
      has_model = true;
    }
    if (!has_model) throw ConfigError(LineOf(root), "model", "missing model (or preset)");
    if (root["cone"]) {
      cfg.cone = Cone(root["cone"], cfg.model);
      has_cone = true;
    }
    if (!has_cone) throw ConfigError(LineOf(root), "cone", "missing cone (or preset)");
    if (root["antinorm"]) {
      cfg.nu = Antinorm(root["antinorm"], cfg.cone.dim());
      has_nu = true;
    }
    if (!has_nu) throw ConfigError(LineOf(root), "antinorm", "missing antinorm (or preset)");
    if (root["timeform"]) cfg.form = Form(root["timeform"], cfg.model);
    if (root["metric"]) {
      cfg.metric = Metric(root["metric"], cfg.model);
      has_metric = true;
    }
    if (!has_metric) cfg.metric = NaturalMetric(cfg.model);

    if (cfg.cone.dim() != cfg.model.control_dim()) {
      throw ConfigError(LineOf(root["cone"] ? root["cone"] : root), "cone",
                        "cone dimension does not match the model's control dimension");
    }
    if (cfg.form && cfg.form->model().name() != cfg.model.name()) {
      throw ConfigError(LineOf(root["timeform"]), "timeform", "time form does not match the model");
    }

    cfg.x0 = cfg.model.identity();
    if (root["x0"]) cfg.x0 = Point(root["x0"], "x0", cfg.model);
    if (!root["x1"]) throw ConfigError(LineOf(root), "x1", "missing endpoint x1");
    cfg.x1 = Point(root["x1"], "x1", cfg.model);

    if (root["segments"]) cfg.segments = PositiveCount(root["segments"], "segments");
    if (root["tol"]) cfg.solver.tol = PositiveReal(root["tol"], "tol");
    if (root["max_iter"]) cfg.solver.max_iter = static_cast<int>(PositiveCount(root["max_iter"], "max_iter"));
    if (root["restarts"]) cfg.solver.restarts = static_cast<int>(PositiveCount(root["restarts"], "restarts"));
    if (root["samples"]) cfg.samples = PositiveCount(root["samples"], "samples");
    if (root["seed"]) cfg.seed = Seed(root["seed"], "seed");
    cfg.solver.seed = cfg.seed;

    try {
      if (!is_pointed(cfg.cone)) {
        throw ConfigError(LineOf(root["cone"] ? root["cone"] : root["preset"]), "cone", "cone is not pointed");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(LineOf(root), "cone", e.what());
    }
    return cfg;
  }

 private:
  static void CheckKeys(const YAML::Node& map, const std::string& where,
                        const std::set<std::string>& allowed) {
    if (!map.IsMap()) throw ConfigError(LineOf(map), where, "expected a mapping");
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        throw ConfigError(LineOf(kv.first), where.empty() ? key : where + "." + key, "unknown key");
      }
    }
  }

  template <class T>
  static T As(const YAML::Node& n, const std::string& field, const char* what) {
    try {
      if (!n.IsScalar()) throw YAML::Exception(n.Mark(), "");
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(LineOf(n), field, std::string("expected ") + what);
    }
  }
  static std::string Str(const YAML::Node& n, const std::string& f) { return As<std::string>(n, f, "a string"); }
  static int Int(const YAML::Node& n, const std::string& f) { return As<int>(n, f, "an integer"); }
  static double Real(const YAML::Node& n, const std::string& f) {
    const double v = As<double>(n, f, "a number");
    if (!std::isfinite(v)) throw ConfigError(LineOf(n), f, "expected a finite number");
    return v;
  }
  static double PositiveReal(const YAML::Node& n, const std::string& f) {
    const double v = Real(n, f);
    if (!(v > 0)) throw ConfigError(LineOf(n), f, "must be positive");
    return v;
  }
  static std::size_t PositiveCount(const YAML::Node& n, const std::string& f) {
    const long long v = As<long long>(n, f, "an integer");
    if (v < 1) throw ConfigError(LineOf(n), f, "must be >= 1");
    return static_cast<std::size_t>(v);
  }
  static std::uint64_t Seed(const YAML::Node& n, const std::string& f) {
    const long long v = As<long long>(n, f, "an integer");
    if (v < 0) throw ConfigError(LineOf(n), f, "must be >= 0");
    return static_cast<std::uint64_t>(v);
  }

  static Vector Vec(const YAML::Node& n, const std::string& f) {
    if (!n.IsSequence() || n.size() == 0) throw ConfigError(LineOf(n), f, "expected a non-empty list of numbers");
    Vector v(static_cast<Eigen::Index>(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i) v(static_cast<Eigen::Index>(i)) = Real(n[i], f);
    return v;
  }
  static Vector VecOfDim(const YAML::Node& n, const std::string& f, Eigen::Index dim) {
    Vector v = Vec(n, f);
    if (v.size() != dim) {
      throw ConfigError(LineOf(n), f, "expected " + std::to_string(dim) + " components, got " +
                                          std::to_string(v.size()));
    }
    return v;
  }
  static std::vector<Vector> Rows(const YAML::Node& n, const std::string& f, Eigen::Index dim) {
    if (!n.IsSequence() || n.size() == 0) throw ConfigError(LineOf(n), f, "expected a non-empty list of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n.size(); ++i) rows.push_back(VecOfDim(n[i], f, dim));
    return rows;
  }
  static Matrix SquareMatrix(const YAML::Node& n, const std::string& f, Eigen::Index dim) {
    const auto rows = Rows(n, f, dim);
    if (static_cast<Eigen::Index>(rows.size()) != dim) {
      throw ConfigError(LineOf(n), f, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) m.row(i) = rows[static_cast<std::size_t>(i)].transpose();
    return m;
  }

  static RiemannianMetric NaturalMetric(const GroupModel& model) {
    if (model.is_hyperbolic()) return RiemannianMetric::Lobachevsky();
    if (model.is_carnot()) return RiemannianMetric::LeftInvariantQuadratic(Matrix::Identity(model.dim(), model.dim()));
    return RiemannianMetric::Euclidean();
  }

  static void ApplyPreset(ProblemConfig& cfg, const YAML::Node& n) {
    const std::string name = cfg.preset;
    if (name == "minkowski11") {
      cfg.model = GroupModel::Abelian(2);
      cfg.cone = ConeSpec::StandardLorentz(2);
      cfg.nu = AntinormSpec::StandardLorentzSqrt(2);
      cfg.form = TimeForm::LeftInvariant(Covector(Vector::Unit(2, 0)), cfg.model);
    } else if (name == "hyperbolic") {
      // Future cone |dx| <= dy at the identity, which meets {(*, 0)} only at 0.
      Matrix g(2, 2);
      g << -1, 0, 0, 1;
      cfg.model = GroupModel::Hyperbolic();
      cfg.cone = ConeSpec::Lorentz(g, Covector(Vector::Unit(2, 1)));
      cfg.nu = AntinormSpec::LorentzSqrt(g);
      cfg.form = TimeForm::HyperbolicAB(0.0, 2.0);
    } else if (name == "heisenberg-sl") {
      cfg.model = GroupModel::Carnot(CarnotAlgebra::LorentzStep2(1));
      cfg.cone = ConeSpec::StandardLorentz(2);
      cfg.nu = AntinormSpec::StandardLorentzSqrt(2);
      cfg.form = TimeForm::LeftInvariant(Covector(Vector::Unit(2, 0)), cfg.model);
    } else {
      throw ConfigError(LineOf(n), "preset", "unknown preset '" + name +
                                                 "' (expected minkowski11, hyperbolic or heisenberg-sl)");
    }
    cfg.metric = NaturalMetric(cfg.model);
  }

  GroupModel Model(const YAML::Node& n) {
    CheckKeys(n, "model", {"kind", "dim", "algebra", "r", "structure_constants"});
    if (!n["kind"]) throw ConfigError(LineOf(n), "model.kind", "missing model kind");
    const auto kind = Str(n["kind"], "model.kind");
    if (kind == "abelian") {
      if (!n["dim"]) throw ConfigError(LineOf(n), "model.dim", "abelian model needs dim");
      return GroupModel::Abelian(static_cast<Eigen::Index>(PositiveCount(n["dim"], "model.dim")));
    }
    if (kind == "hyperbolic") return GroupModel::Hyperbolic();
    if (kind != "carnot") {
      throw ConfigError(LineOf(n["kind"]), "model.kind", "expected abelian, hyperbolic or carnot");
    }
    if (n["structure_constants"]) {
      const auto rel = Str(n["structure_constants"], "model.structure_constants");
      const auto path = base_dir_ / rel;
      std::ifstream in(path);
      if (!in) throw ConfigError(LineOf(n["structure_constants"]), "model.structure_constants", "cannot open " + path.string());
      try {
        return GroupModel::Carnot(parse_structure_constants(in));
      } catch (const InvalidAlgebra& e) {
        throw ConfigError(LineOf(n["structure_constants"]), "model.structure_constants", e.what());
      }
    }
    const auto alg = n["algebra"] ? Str(n["algebra"], "model.algebra") : std::string("lorentz-step2");
    if (alg != "lorentz-step2") throw ConfigError(LineOf(n["algebra"]), "model.algebra", "expected lorentz-step2");
    const int r = n["r"] ? static_cast<int>(PositiveCount(n["r"], "model.r")) : 1;
    return GroupModel::Carnot(CarnotAlgebra::LorentzStep2(r));
  }

  static ConeSpec Cone(const YAML::Node& n, const GroupModel& model) {
    CheckKeys(n, "cone", {"kind", "form", "selector", "generators"});
    if (!n["kind"]) throw ConfigError(LineOf(n), "cone.kind", "missing cone kind");
    const auto kind = Str(n["kind"], "cone.kind");
    const auto dim = model.control_dim();
    try {
      if (kind == "standard-lorentz") return ConeSpec::StandardLorentz(dim);
      if (kind == "lorentz") {
        if (!n["form"] || !n["selector"]) throw ConfigError(LineOf(n), "cone", "lorentz cone needs form and selector");
        return ConeSpec::Lorentz(SquareMatrix(n["form"], "cone.form", dim),
                                 Covector(VecOfDim(n["selector"], "cone.selector", dim)));
      }
      if (kind == "polyhedral") {
        if (!n["generators"]) throw ConfigError(LineOf(n), "cone.generators", "polyhedral cone needs generators");
        return ConeSpec::Polyhedral(Rows(n["generators"], "cone.generators", dim));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(LineOf(n), "cone", e.what());
    }
    throw ConfigError(LineOf(n["kind"]), "cone.kind", "expected standard-lorentz, lorentz or polyhedral");
  }

  static AntinormSpec Antinorm(const YAML::Node& n, Eigen::Index dim) {
    CheckKeys(n, "antinorm", {"kind", "form", "family"});
    if (!n["kind"]) throw ConfigError(LineOf(n), "antinorm.kind", "missing antinorm kind");
    const auto kind = Str(n["kind"], "antinorm.kind");
    if (kind == "standard-lorentz-sqrt") return AntinormSpec::StandardLorentzSqrt(dim);
    if (kind == "zero") return AntinormSpec::Zero();
    if (kind == "lorentz-sqrt") {
      if (!n["form"]) throw ConfigError(LineOf(n), "antinorm.form", "lorentz-sqrt needs form");
      return AntinormSpec::LorentzSqrt(SquareMatrix(n["form"], "antinorm.form", dim));
    }
    if (kind == "min-of-linear") {
      if (!n["family"]) throw ConfigError(LineOf(n), "antinorm.family", "min-of-linear needs family");
      std::vector<Covector> fam;
      for (auto& row : Rows(n["family"], "antinorm.family", dim)) fam.emplace_back(std::move(row));
      return AntinormSpec::MinOfLinear(std::move(fam));
    }
    throw ConfigError(LineOf(n["kind"]), "antinorm.kind",
                      "expected standard-lorentz-sqrt, lorentz-sqrt, min-of-linear or zero");
  }

  static TimeForm Form(const YAML::Node& n, const GroupModel& model) {
    CheckKeys(n, "timeform", {"kind", "tau0", "a", "b"});
    if (!n["kind"]) throw ConfigError(LineOf(n), "timeform.kind", "missing time form kind");
    const auto kind = Str(n["kind"], "timeform.kind");
    if (kind == "hyperbolic-ab") {
      if (!model.is_hyperbolic()) throw ConfigError(LineOf(n), "timeform.kind", "hyperbolic-ab needs the hyperbolic model");
      if (!n["a"] || !n["b"]) throw ConfigError(LineOf(n), "timeform", "hyperbolic-ab needs a and b");
      return TimeForm::HyperbolicAB(Real(n["a"], "timeform.a"), Real(n["b"], "timeform.b"));
    }
    if (kind == "left-invariant") {
      if (model.is_hyperbolic()) throw ConfigError(LineOf(n), "timeform.kind", "use hyperbolic-ab on the hyperbolic model");
      if (!n["tau0"]) throw ConfigError(LineOf(n), "timeform.tau0", "left-invariant form needs tau0");
      const Vector tau = Vec(n["tau0"], "timeform.tau0");
      if (tau.size() != model.control_dim() && tau.size() != model.dim()) {
        throw ConfigError(LineOf(n["tau0"]), "timeform.tau0", "wrong number of components");
      }
      return TimeForm::LeftInvariant(Covector(tau), model);
    }
    throw ConfigError(LineOf(n["kind"]), "timeform.kind", "expected left-invariant or hyperbolic-ab");
  }

  static RiemannianMetric Metric(const YAML::Node& n, const GroupModel& model) {
    CheckKeys(n, "metric", {"kind", "form"});
    if (!n["kind"]) throw ConfigError(LineOf(n), "metric.kind", "missing metric kind");
    const auto kind = Str(n["kind"], "metric.kind");
    if (kind == "euclidean") return RiemannianMetric::Euclidean();
    if (kind == "lobachevsky") {
      if (!model.is_hyperbolic()) throw ConfigError(LineOf(n), "metric.kind", "lobachevsky needs the hyperbolic model");
      return RiemannianMetric::Lobachevsky();
    }
    if (kind == "quadratic") {
      if (!n["form"]) throw ConfigError(LineOf(n), "metric.form", "quadratic metric needs form");
      try {
        return RiemannianMetric::LeftInvariantQuadratic(SquareMatrix(n["form"], "metric.form", model.dim()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(LineOf(n["form"]), "metric.form", e.what());
      }
    }
    throw ConfigError(LineOf(n["kind"]), "metric.kind", "expected euclidean, lobachevsky or quadratic");
  }

  static GroupPoint Point(const YAML::Node& n, const std::string& f, const GroupModel& model) {
    GroupPoint p{VecOfDim(n, f, model.dim())};
    try {
      model.validate(p);
    } catch (const Error& e) {
      throw ConfigError(LineOf(n), f, e.what());
    }
    return p;
  }

  std::filesystem::path base_dir_;
};

}  // namespace detail

/// Parses config text; relative file references resolve against base_dir.
inline ProblemConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".") {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.mark.line >= 0 ? e.mark.line + 1 : 0, "", e.msg);
  }
  return detail::ConfigReader(base_dir).Read(root);
}

inline ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace sublorentz
