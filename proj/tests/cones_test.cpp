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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sublorentz/cones.hpp"

namespace sublorentz {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

TEST(ExtendedRealTest, NegInfPropagatesAndOrders) {
  const auto ninf = ExtendedReal::neg_inf();
  EXPECT_TRUE((ninf + ExtendedReal(3.0)).is_neg_inf());
  EXPECT_TRUE((2.0 * ninf).is_neg_inf());
  EXPECT_LT(ninf, ExtendedReal(-1e300));
  EXPECT_THROW((void)ninf.value(), std::logic_error);
  EXPECT_THROW((void)(0.0 * ExtendedReal(1.0)), std::domain_error);
  EXPECT_DOUBLE_EQ((ExtendedReal(1.5) + ExtendedReal(2.0)).value(), 3.5);
}

TEST(ConeContainsTest, MinkowskiExamples) {
  const auto c = ConeSpec::StandardLorentz(2);
  EXPECT_TRUE(cone_contains(c, V({2, 1})));
  EXPECT_FALSE(cone_contains(c, V({1, 2})));
  EXPECT_TRUE(cone_contains(c, V({1, 1})));
  EXPECT_FALSE(cone_contains(c, V({-2, 1})));
  EXPECT_THROW((void)cone_contains(c, V({1, 0, 0})), DimensionMismatch);
}

TEST(ConeContainsTest, AgreesWithBruteForcePolyhedral) {
  const std::vector<Vector> gens{V({1, 0, 0.2}), V({0.3, 1, 0}), V({0, 0.4, 1}), V({1, 1, 1})};
  const auto c = ConeSpec::Polyhedral(gens);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vector v = V({g(rng), g(rng), g(rng)});
    if (cone_contains(c, v, 1e-7) != oracle::PolyhedralContains(gens, v, 1e-7)) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(ConeContainsTest, AgreesWithQuadraticSignTest) {
  const auto c = ConeSpec::StandardLorentz(3);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vector v = V({g(rng), g(rng), g(rng)});
    if (cone_contains(c, v) != oracle::StandardLorentzContains(v)) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(ConeContainsTest, LinearImageMatchesPreimageMembership) {
  Matrix a(2, 2);
  a << 2, 1, 0, 1;
  const auto base = ConeSpec::StandardLorentz(2);
  const auto img = ConeSpec::LinearImage(base, a);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    const Vector v = V({g(rng), g(rng)});
    EXPECT_EQ(cone_contains(img, a * v), cone_contains(base, v)) << v.transpose();
  }
}

TEST(IsPointedTest, Examples) {
  EXPECT_TRUE(is_pointed(ConeSpec::StandardLorentz(3)));
  EXPECT_FALSE(is_pointed(ConeSpec::Polyhedral({V({1, 0}), V({-1, 0}), V({0, 1})})));
  EXPECT_TRUE(is_pointed(ConeSpec::Polyhedral({V({1, 0})})));
}

TEST(TimeCovectorTest, LorentzReturnsTimeAxis) {
  const auto tc = find_time_covector(ConeSpec::StandardLorentz(3));
  EXPECT_NEAR(tc.tau.components(0), 1.0, 1e-12);
  EXPECT_NEAR(tc.tau.components.tail(2).norm(), 0.0, 1e-12);
  EXPECT_GT(tc.margin, 0.0);
}

TEST(TimeCovectorTest, PolyhedralPositiveOnGenerators) {
  const std::vector<Vector> gens{V({1, 0}), V({1, 1})};
  const auto tc = find_time_covector(ConeSpec::Polyhedral(gens));
  const double nt = tc.tau.norm();
  for (const auto& g : gens) EXPECT_GT(tc.tau(g) / (nt * g.norm()), 1e-12);
  EXPECT_GT(tc.margin, 1e-12);
}

TEST(TimeCovectorTest, RandomPointedPolyhedra) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> gens;
    for (int j = 0; j < 5; ++j) gens.push_back(V({1.0, u(rng), u(rng)}));
    const auto tc = find_time_covector(ConeSpec::Polyhedral(gens));
    double m = 1e300;
    for (const auto& g : gens) m = std::min(m, tc.tau(g) / (tc.tau.norm() * g.norm()));
    EXPECT_GT(m, 1e-12);
  }
}

TEST(TimeCovectorTest, LineThrowsNotPointed) {
  EXPECT_THROW((void)find_time_covector(ConeSpec::Polyhedral({V({1, 0}), V({-1, 0}), V({0, 1})})),
               NotPointed);
}

TEST(AntinormTest, Examples) {
  const auto c = ConeSpec::StandardLorentz(2);
  const auto nu = AntinormSpec::StandardLorentzSqrt(2);
  EXPECT_NEAR(antinorm_eval(nu, c, V({5, 3})).value(), 4.0, 1e-15);
  EXPECT_NEAR(antinorm_eval(nu, c, V({1, 1})).value(), 0.0, 1e-15);
  EXPECT_TRUE(antinorm_eval(nu, c, V({1, 2})).is_neg_inf());
  EXPECT_NEAR(antinorm_eval(nu, c, V({10, 6})).value(), 8.0, 1e-14);
}

TEST(AntinormTest, ReverseTriangleExamplePair) {
  const auto c = ConeSpec::StandardLorentz(2);
  const auto nu = AntinormSpec::StandardLorentzSqrt(2);
  const double lhs = antinorm_eval(nu, c, V({4, 0})).value();
  const double rhs = antinorm_eval(nu, c, V({2, 1})).value() + antinorm_eval(nu, c, V({2, -1})).value();
  EXPECT_NEAR(lhs, 4.0, 1e-15);
  EXPECT_NEAR(rhs, 2 * std::sqrt(3.0), 1e-15);
  EXPECT_GE(lhs, rhs);
}

TEST(AntinormTest, MinOfLinearClampsBoundaryNoise) {
  const auto c = ConeSpec::Polyhedral({V({1, 0}), V({1, 1})});
  const auto nu = AntinormSpec::MinOfLinear({Covector(V({0, 1})), Covector(V({1, -1}))});
  EXPECT_EQ(antinorm_eval(nu, c, V({1, -1e-13})).value(), 0.0);
  EXPECT_NEAR(antinorm_eval(nu, c, V({2, 1})).value(), 1.0, 1e-15);
}

TEST(AxiomSuiteTest, LorentzSqrtPasses) {
  const auto rep = check_antinorm_axioms(AntinormSpec::StandardLorentzSqrt(3), ConeSpec::StandardLorentz(3), 10000, 1);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.pairs_checked, 10000u);
  EXPECT_FALSE(rep.first_counterexample.has_value());
}

TEST(AxiomSuiteTest, HomogeneityAndReverseTriangleOnManySamples) {
  const auto c = ConeSpec::StandardLorentz(2);
  const auto nu = AntinormSpec::StandardLorentzSqrt(2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lam(0.01, 100);
  for (int i = 0; i < 10000; ++i) {
    const Vector a = sample_cone_point(c, rng);
    const Vector b = sample_cone_point(c, rng);
    const double l = lam(rng);
    // Independent formula: sqrt(x0^2 - x1^2).
    auto f = [](const Vector& v) { return std::sqrt(std::max(0.0, v(0) * v(0) - v(1) * v(1))); };
    ASSERT_NEAR(antinorm_eval(nu, c, l * a).value(), l * f(a), 1e-9 * std::max(1.0, l * f(a)));
    ASSERT_GE(f(a + b), f(a) + f(b) - 1e-9);
  }
}

TEST(AxiomSuiteTest, ZeroAntinormIsValid) {
  const auto rep = check_antinorm_axioms(AntinormSpec::Zero(), ConeSpec::StandardLorentz(2), 500, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.identically_zero);
}

TEST(AxiomSuiteTest, EuclideanNormCandidateRejected) {
  const auto c = ConeSpec::StandardLorentz(2);
  auto euclid = [&](const Vector& v) -> ExtendedReal {
    if (!cone_contains(c, v)) return ExtendedReal::neg_inf();
    return v.norm();
  };
  const auto rep = check_antinorm_axioms_with(euclid, c, 1000, 4);
  EXPECT_FALSE(rep.passed());
  EXPECT_GT(rep.superadditivity_violations, 0u);
  ASSERT_TRUE(rep.first_counterexample.has_value());
  const auto& cx = *rep.first_counterexample;
  EXPECT_EQ(cx.axiom, "superadditivity");
  EXPECT_LT((cx.a + cx.b).norm(), cx.a.norm() + cx.b.norm());
  // The printed pair: |(1,1) + (1,-1)| = 2 < 2 sqrt 2.
  EXPECT_LT(euclid(V({2, 0})).value(), euclid(V({1, 1})).value() + euclid(V({1, -1})).value());
}

TEST(AxiomSuiteTest, BadMinOfLinearFamilyRejected) {
  // Negative on part of the cone.
  const auto rep = check_antinorm_axioms(AntinormSpec::MinOfLinear({Covector(V({0, 1}))}),
                                         ConeSpec::StandardLorentz(2), 500, 5);
  EXPECT_FALSE(rep.passed());
  EXPECT_GT(rep.nonnegativity_violations, 0u);
}

TEST(AxiomSuiteTest, Deterministic) {
  const auto c = ConeSpec::StandardLorentz(2);
  auto euclid = [&](const Vector& v) -> ExtendedReal {
    if (!cone_contains(c, v)) return ExtendedReal::neg_inf();
    return v.norm();
  };
  const auto a = check_antinorm_axioms_with(euclid, c, 300, 11);
  const auto b = check_antinorm_axioms_with(euclid, c, 300, 11);
  EXPECT_EQ(a.superadditivity_violations, b.superadditivity_violations);
  EXPECT_EQ(a.first_counterexample->a, b.first_counterexample->a);
}

TEST(ProjectionTest, LorentzProjectionIsNearestPoint) {
  const auto c = ConeSpec::StandardLorentz(3);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 2);
  for (int i = 0; i < 200; ++i) {
    const Vector v = V({g(rng), g(rng), g(rng)});
    const Vector p = project_onto_cone(c, v);
    ASSERT_TRUE(cone_contains(c, p, 1e-8));
    // Variational inequality: <v - p, q - p> <= 0 for q in the cone.
    for (int j = 0; j < 20; ++j) {
      const Vector q = sample_cone_point(c, rng);
      ASSERT_LE((v - p).dot(q - p), 1e-7 * (1 + v.norm() * q.norm()));
    }
  }
}

TEST(ProjectionTest, PolyhedralProjectionIsNearestPoint) {
  const auto c = ConeSpec::Polyhedral({V({1, 0, 0}), V({1, 1, 0}), V({1, 0, 1}), V({1, 1, 1})});
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0, 2);
  for (int i = 0; i < 200; ++i) {
    const Vector v = V({g(rng), g(rng), g(rng)});
    const Vector p = project_onto_cone(c, v);
    ASSERT_TRUE(cone_contains(c, p, 1e-8));
    for (int j = 0; j < 20; ++j) {
      const Vector q = sample_cone_point(c, rng);
      ASSERT_LE((v - p).dot(q - p), 1e-7 * (1 + v.norm() * q.norm()));
    }
  }
}

TEST(ProjectionTest, SliceProjectionLandsOnSlice) {
  const auto c = ConeSpec::StandardLorentz(2);
  const Covector tau(V({1, 0}));
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g(0, 3);
  for (int i = 0; i < 200; ++i) {
    const Vector p = project_onto_slice(c, tau, 2.5, V({g(rng), g(rng)}));
    ASSERT_NEAR(tau(p), 2.5, 1e-9);
    ASSERT_TRUE(cone_contains(c, p, 1e-8));
  }
  // Already on the slice: unchanged.
  EXPECT_NEAR((project_onto_slice(c, tau, 2.5, V({2.5, 1})) - V({2.5, 1})).norm(), 0.0, 1e-9);
}

TEST(SamplingTest, SamplesLieInCone) {
  const auto c = ConeSpec::Polyhedral({V({1, 0}), V({1, 1})});
  std::mt19937_64 rng(15);
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(cone_contains(c, sample_cone_point(c, rng)));
}

}  // namespace
}  // namespace sublorentz
