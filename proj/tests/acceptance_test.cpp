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

// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sublorentz/config.hpp"
#include "sublorentz/dynamics.hpp"
#include "sublorentz/solver.hpp"
#include "sublorentz/timeform.hpp"

#ifndef SUBLORENTZ_CONFIGS
#error "SUBLORENTZ_CONFIGS must point at the configs directory"
#endif

namespace sublorentz {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::string Num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class Stopwatch {
 public:
  [[nodiscard]] double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

const GroupModel kMink = GroupModel::Abelian(2);
const GroupModel kHeis = GroupModel::Carnot(CarnotAlgebra::LorentzStep2(1));
const ConeSpec kCone2 = ConeSpec::StandardLorentz(2);
const AntinormSpec kNu2 = AntinormSpec::StandardLorentzSqrt(2);

Outcome MinkowskiOracle() {
  const ProblemInstance prob{kMink, kCone2, kNu2, {V({0, 0})}, {V({5, 3})}, 50};
  const Stopwatch sw;
  const SolveReport rep = solve_longest(prob);
  const double secs = sw.Seconds();
  const double oracle = std::sqrt(5.0 * 5.0 - 3.0 * 3.0);
  const double rel = std::abs(rep.objective.to_double() - oracle) / oracle;

  // Two half-segments a, b with (a + b) / 2 = (5, 3), both in the cone.
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0, 1);
  int tried = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100000 && tried < 10000; ++i) {
    const Vector a = V({10 * unit(rng), 10 * (2 * unit(rng) - 1)});
    const Vector b = 2.0 * V({5, 3}) - a;
    if (!oracle::StandardLorentzContains(a, 0) || !oracle::StandardLorentzContains(b, 0)) continue;
    ++tried;
    worst = std::max(worst, sl_length(kNu2, kCone2, ControlSignal({a, b})).to_double() - oracle);
  }
  const bool pass = rep.status == SolveStatus::kSolved && rel <= 1e-3 && secs < 5.0 && tried >= 1000 &&
                    worst <= 1e-9;
  return {pass, "objective=" + Num(rep.objective.to_double()) + " rel_err=" + Num(rel) + " time=" +
                    Num(secs) + "s two_segment_paths=" + std::to_string(tried) + " max_excess=" + Num(worst)};
}

Outcome AntinormAxioms() {
  constexpr std::size_t kPairs = 10000;
  const auto lorentz = check_antinorm_axioms(AntinormSpec::StandardLorentzSqrt(3), ConeSpec::StandardLorentz(3),
                                             kPairs, 201);
  const auto lorentz2 = check_antinorm_axioms(kNu2, kCone2, kPairs, 202);
  // Covectors with c0 >= |c_spatial| are nonnegative on the Lorentz cone.
  const auto family = AntinormSpec::MinOfLinear(
      {Covector(V({1, 0.5, 0})), Covector(V({1, 0, -0.7})), Covector(V({1, -0.4, 0.4}))});
  const auto min_linear = check_antinorm_axioms(family, ConeSpec::StandardLorentz(3), kPairs, 203);

  const auto cone = ConeSpec::StandardLorentz(2);
  auto euclid = [&](const Vector& v) -> ExtendedReal {
    if (!cone_contains(cone, v)) return ExtendedReal::neg_inf();
    return v.norm();
  };
  const auto bad = check_antinorm_axioms_with(euclid, cone, kPairs, 204);
  bool counterexample_ok = false;
  std::string cx_text = "none";
  if (bad.first_counterexample) {
    const auto& cx = *bad.first_counterexample;
    counterexample_ok = cx.axiom == "superadditivity" && (cx.a + cx.b).norm() < cx.a.norm() + cx.b.norm();
    cx_text = "a=(" + Num(cx.a(0)) + "," + Num(cx.a(1)) + ") b=(" + Num(cx.b(0)) + "," + Num(cx.b(1)) + ")";
  }
  auto violations = [](const AxiomReport& r) { return r.homogeneity_violations + r.superadditivity_violations; };
  const bool pass = lorentz.passed() && lorentz2.passed() && min_linear.passed() &&
                    lorentz.pairs_checked == kPairs && min_linear.pairs_checked == kPairs && !bad.passed() &&
                    counterexample_ok;
  return {pass, "lorentz_violations=" + std::to_string(violations(lorentz) + violations(lorentz2)) +
                    " min_of_linear_violations=" + std::to_string(violations(min_linear)) +
                    " euclidean_rejected=" + (bad.passed() ? std::string("no") : std::string("yes")) +
                    " counterexample " + cx_text};
}

Outcome ClosednessDichotomy() {
  const auto open = TimeForm::HyperbolicAB(1, 0);
  const auto closed = TimeForm::HyperbolicAB(0, 1);
  const Vector ex = V({1, 0}), ey = V({0, 1});
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> xs(-2, 2), ys(0.5, 3);
  double worst_err = 0, worst_closed = 0, min_order = 1e300, max_order = 0;
  for (int i = 0; i < 20; ++i) {
    const GroupPoint p{V({xs(rng), ys(rng)})};
    const double exact = 1.0 / (p.coords(1) * p.coords(1));
    const double e1 = std::abs(exterior_derivative_fd(open, p, ex, ey, 1e-3) - exact);
    const double e2 = std::abs(exterior_derivative_fd(open, p, ex, ey, 5e-4) - exact);
    worst_err = std::max(worst_err, e1);
    const double order = std::log2(e1 / e2);
    min_order = std::min(min_order, order);
    max_order = std::max(max_order, order);
    worst_closed = std::max(worst_closed, std::abs(exterior_derivative_fd(closed, p, ex, ey, 1e-3)));
  }
  const bool pass = worst_err <= 1e-4 && min_order >= 1.8 && max_order <= 2.2 && worst_closed <= 1e-8;
  return {pass, "max_err(a=1)=" + Num(worst_err) + " observed_order=[" + Num(min_order) + "," + Num(max_order) +
                    "] max|dtau|(a=0)=" + Num(worst_closed)};
}

Outcome PotentialIdentity() {
  const Stopwatch sw;
  double worst = 0;
  int count = 0;
  for (int r : {1, 2}) {
    const auto model = GroupModel::Carnot(CarnotAlgebra::LorentzStep2(r));
    const auto cone = ConeSpec::StandardLorentz(r + 1);
    Vector t0 = Vector::Zero(r + 1);
    t0(0) = 1.0;
    t0(1) = 0.3;
    const auto form = TimeForm::LeftInvariant(Covector(t0), model);
    std::mt19937_64 rng(400 + r);
    for (int i = 0; i < 50; ++i, ++count) {
      const auto u = random_admissible_control(cone, rng);
      double along = 0;
      for (const auto& v : u.values) along += u.step() * t0.dot(v);
      const auto traj = integrate(model, model.identity(), u);
      const double at_end = t0.dot(traj.end().coords.head(r + 1));
      double quadrature = 0;
      for (double s : tau_segment_integrals(traj, form)) quadrature += s;
      worst = std::max({worst, std::abs(along - at_end), std::abs(quadrature - potential(form, traj.end()))});
    }
  }
  const double secs = sw.Seconds();
  return {worst <= 1e-8 && secs < 2.0 && count == 100,
          "controls=" + std::to_string(count) + " max_gap=" + Num(worst) + " time=" + Num(secs) + "s"};
}

Outcome StokesIdentity() {
  double worst = 0;
  int count = 0;
  for (int r : {1, 2}) {
    const auto model = GroupModel::Carnot(CarnotAlgebra::LorentzStep2(r));
    const auto cone = ConeSpec::StandardLorentz(r + 1);
    std::mt19937_64 rng(500 + r);
    for (int i = 0; i < 200; ++i, ++count) {
      const auto traj = integrate(model, model.identity(), random_admissible_control(cone, rng));
      for (int c = 1; c <= r; ++c) {
        // Shoelace over the (t, s_c) projection closed by the chord.
        double twice = 0;
        const auto n = traj.points.size();
        for (std::size_t k = 0; k < n; ++k) {
          const Vector& a = traj.points[k].coords;
          const Vector& b = traj.points[(k + 1) % n].coords;
          twice += a(0) * b(c) - a(c) * b(0);
        }
        const double y = traj.end().coords(r + c);
        worst = std::max({worst, std::abs(y - 0.5 * twice), std::abs(y - oriented_area(model, traj, c))});
      }
    }
  }
  return {worst <= 1e-8 && count == 400, "controls=" + std::to_string(count) + " max_gap=" + Num(worst)};
}

Outcome BoundDominance() {
  const Stopwatch sw;
  SolveOptions opts;
  opts.restarts = 3;
  const auto ends = reachability_sample(kHeis, kCone2, kHeis.identity(), 50, 601);
  double worst_excess = -std::numeric_limits<double>::infinity();
  int solved = 0;
  for (const auto& p : ends) {
    const ProblemInstance prob{kHeis, kCone2, kNu2, kHeis.identity(), p, 50};
    const auto rep = solve_longest(prob, opts);
    if (rep.status == SolveStatus::kSolved) ++solved;
    worst_excess = std::max(worst_excess, rep.objective.to_double() - abelianized_upper_bound(prob).to_double());
  }
  // exp of a first-layer vector: the straight line attains the bound.
  std::mt19937_64 rng(602);
  double worst_gap = 0;
  int surface = 0;
  for (; surface < 10; ++surface) {
    const Vector g = sample_cone_point(kCone2, rng, SampleRegion::kInterior);
    const GroupPoint p = group_exp(kHeis, kHeis.embed_control(g));
    const ProblemInstance prob{kHeis, kCone2, kNu2, kHeis.identity(), p, 50};
    const auto rep = solve_longest(prob, opts);
    if (rep.status == SolveStatus::kSolved) ++solved;
    const double bound = abelianized_upper_bound(prob).to_double();
    worst_gap = std::max(worst_gap, std::abs(rep.objective.to_double() - bound));
  }
  const bool pass = solved == 60 && worst_excess <= 1e-9 && worst_gap <= 1e-3;
  return {pass, "solved=" + std::to_string(solved) + "/60 max(objective-bound)=" + Num(worst_excess) +
                    " surface_max_gap=" + Num(worst_gap) + " time=" + Num(sw.Seconds()) + "s"};
}

// Vertex enumeration: extreme generators g, scaled to tau(g) = 1.
double SectionVertexOracle(const std::vector<Vector>& gens, const Vector& tau) {
  double best = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (!others.empty() && oracle::PolyhedralContains(others, gens[i])) continue;
    best = std::max(best, gens[i].norm() / tau.dot(gens[i]));
  }
  return best;
}

Outcome SectionCompactness() {
  std::string detail;
  bool pass = true;
  for (const char* preset : {"minkowski11", "hyperbolic", "heisenberg-sl"}) {
    const std::string point = std::string(preset) == "heisenberg-sl" ? "[1, 0, 0]" : "[0, 2]";
    const auto cfg = parse_config(std::string("version: 1\npreset: ") + preset + "\nx1: " + point + "\n");
    const auto tc = find_time_covector(cfg.cone);
    const UnitTimeSection section{cfg.cone, TimeForm::LeftInvariant(tc.tau, cfg.model), cfg.model.identity()};
    const double sup = section_sup_norm(section, cfg.metric, 2000, 701);
    pass = pass && std::isfinite(sup) && sup > 0;
    detail += std::string(preset) + "=" + Num(sup) + " ";
  }

  std::vector<std::vector<Vector>> polyhedra{
      {V({1, 1, 1}), V({1, -1, 1}), V({1, 1, -1}), V({1, -1, -1})},
      {V({1, 0}), V({1, 1}), V({2, 1})},
      {V({1, 0.2, 0}), V({1, -0.3, 0.1}), V({1, 0, -0.5}), V({1, 0.1, 0.1}), V({1, 0.4, 0.4})}};
  const auto from_file = load_config(std::string(SUBLORENTZ_CONFIGS) + "/polyhedral_r3.yaml");
  double worst = 0;
  for (const auto& gens : polyhedra) {
    const auto cone = ConeSpec::Polyhedral(gens);
    const auto dim = static_cast<Eigen::Index>(gens.front().size());
    const auto model = GroupModel::Abelian(dim);
    const auto tc = find_time_covector(cone);
    const UnitTimeSection section{cone, TimeForm::LeftInvariant(tc.tau, model), model.identity()};
    const double sup = section_sup_norm(section, RiemannianMetric::Euclidean(), 500, 702);
    const double expect = SectionVertexOracle(gens, tc.tau.components);
    worst = std::max(worst, std::abs(sup - expect) / expect);
  }
  pass = pass && worst <= 1e-14 && from_file.cone.dim() == 3;
  detail += "polyhedral_max_rel_diff=" + Num(worst);

  // Tangent tau: tau vanishes on the generator (1, 0).
  bool tangent_unbounded = false;
  const auto quadrant = ConeSpec::Polyhedral({V({1, 0}), V({0, 1})});
  try {
    const UnitTimeSection section{quadrant, TimeForm::LeftInvariant(Covector(V({0, 1})), kMink), kMink.identity()};
    (void)section_sup_norm(section, RiemannianMetric::Euclidean(), 100, 703);
  } catch (const UnboundedSection&) {
    tangent_unbounded = true;
  }
  // Half-plane: contains a line, no time covector exists.
  bool unpointed_rejected = false;
  bool unpointed_unbounded = false;
  const auto half_plane = ConeSpec::Polyhedral({V({1, 0}), V({-1, 0}), V({0, 1})});
  try {
    (void)find_time_covector(half_plane);
  } catch (const NotPointed&) {
    unpointed_rejected = true;
  }
  try {
    const UnitTimeSection section{half_plane, TimeForm::LeftInvariant(Covector(V({0, 1})), kMink),
                                  kMink.identity()};
    (void)section_sup_norm(section, RiemannianMetric::Euclidean(), 100, 704);
  } catch (const UnboundedSection&) {
    unpointed_unbounded = true;
  }
  pass = pass && tangent_unbounded && unpointed_rejected && unpointed_unbounded;
  detail += std::string(" tangent=") + (tangent_unbounded ? "Unbounded" : "finite") +
            " unpointed=" + (unpointed_unbounded && unpointed_rejected ? "Unbounded" : "finite");
  return {pass, detail};
}

Outcome GradientCheck() {
  std::mt19937_64 rng(801);
  std::uniform_int_distribution<int> segs(2, 50);
  std::uniform_real_distribution<double> unit(0, 1);
  double worst = 0;
  int blocks = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = static_cast<std::size_t>(segs(rng));
    std::vector<Vector> u;
    for (std::size_t k = 0; k < n; ++k) u.push_back(sample_cone_point(kCone2, rng));
    const GroupPoint x0{V({unit(rng), unit(rng) - 0.5, unit(rng) - 0.5})};
    const GroupPoint x1{V({5 * unit(rng), unit(rng) - 0.5, 2 * unit(rng) - 1})};
    const EndpointMap map(kHeis, x0, x1);
    const auto lin = map.Linearize(u);
    for (std::size_t k = 0; k < n; ++k, ++blocks) {
      Matrix fd(kHeis.dim(), 2);
      for (Eigen::Index j = 0; j < 2; ++j) {
        auto f = [&](const Vector& s) {
          auto w = u;
          w[k] = s;
          return map.Residual(w);
        };
        fd.col(j) = oracle::CentralDifference(f, u[k], Vector::Unit(2, j), 1e-6);
      }
      worst = std::max(worst, (lin.blocks[k] - fd).norm() / fd.norm());
    }
  }
  return {worst <= 1e-5, "instances=20 blocks=" + std::to_string(blocks) + " max_rel_err=" + Num(worst)};
}

Outcome HyperbolicityDesk() {
  constexpr std::size_t kPaths = 10000;
  const auto mink = parse_config("version: 1\npreset: minkowski11\nx1: [5, 3]\n");
  const auto heis = parse_config("version: 1\npreset: heisenberg-sl\nx1: [5, 3, 0.7]\n");
  const auto rm = check_hyperbolicity_desk(mink.instance(), *mink.form, kPaths, 901);
  const auto rh = check_hyperbolicity_desk(heis.instance(), *heis.form, kPaths, 902);
  const double target = 5.0 * std::sqrt(2.0);
  const double rel = std::abs(rm.radius - target) / target;
  const bool pass = rm.paths_checked == kPaths && rh.paths_checked == kPaths && rm.non_increasing_paths == 0 &&
                    rh.non_increasing_paths == 0 && rh.passed() && rel <= 0.01;
  return {pass, "paths=" + std::to_string(rm.paths_checked + rh.paths_checked) +
                    " non_increasing=" + std::to_string(rm.non_increasing_paths + rh.non_increasing_paths) +
                    " minkowski_radius=" + Num(rm.radius) + " rel_err=" + Num(rel) +
                    " heisenberg_radius=" + Num(rh.radius)};
}

Outcome ReparametrizationEquivalence() {
  const Stopwatch sw;
  SolveOptions opts;
  opts.restarts = 3;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> unit(0, 1);
  double worst = 0;
  int solved = 0;
  for (int i = 0; i < 10; ++i) {
    const double t = 2 + 3 * unit(rng);
    const double x = (2 * unit(rng) - 1) * 0.6 * t;
    const double c = (2 * unit(rng) - 1) * 0.3 * (t * t - x * x) / 4;
    const ProblemInstance mink{kMink, kCone2, kNu2, kMink.identity(), {V({t, x})}, 50};
    const ProblemInstance heis{kHeis, kCone2, kNu2, kHeis.identity(), {V({t, x, c})}, 50};
    const auto fm = TimeForm::LeftInvariant(Covector(V({1, 0})), kMink);
    const auto fh = TimeForm::LeftInvariant(Covector(V({1, 0})), kHeis);
    for (const auto& [prob, form] : {std::pair{mink, fm}, std::pair{heis, fh}}) {
      const auto a = solve_longest(prob, opts);
      const auto b = solve_longest_reparametrized(prob, form, opts);
      if (a.status == SolveStatus::kSolved && b.status == SolveStatus::kSolved) ++solved;
      const double va = a.objective.to_double();
      const double vb = b.objective.to_double();
      worst = std::max(worst, std::abs(va - vb) / std::abs(va));
    }
  }
  return {solved == 20 && worst <= 1e-3, "instances=20 solved_pairs=" + std::to_string(solved) +
                                             " max_rel_diff=" + Num(worst) + " time=" + Num(sw.Seconds()) + "s"};
}

}  // namespace
}  // namespace sublorentz

int main() {
  using namespace sublorentz;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"minkowski oracle", MinkowskiOracle},
      {"antinorm axiom suite", AntinormAxioms},
      {"closedness dichotomy", ClosednessDichotomy},
      {"potential identity", PotentialIdentity},
      {"oriented area identity", StokesIdentity},
      {"abelianized bound dominance", BoundDominance},
      {"unit section compactness", SectionCompactness},
      {"endpoint gradient check", GradientCheck},
      {"hyperbolicity desk check", HyperbolicityDesk},
      {"reparametrization equivalence", ReparametrizationEquivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
