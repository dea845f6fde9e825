#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "s2o/errors.h"
#include "s2o/simplex.h"
#include "s2o/weight_fit.h"

namespace s2o {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Simplex, SmallProblemWithBounds) {
  // min -x - 2y  s.t.  x + y + s = 4,  0 <= x <= 3,  0 <= y <= 2,  s >= 0.
  LpProblem lp;
  lp.A.resize(1, 3);
  lp.A << 1, 1, 1;
  lp.b.resize(1);
  lp.b << 4;
  lp.c.resize(3);
  lp.c << -1, -2, 0;
  lp.lower = Eigen::VectorXd::Zero(3);
  lp.upper.resize(3);
  lp.upper << 3, 2, kInf;
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x(0), 2.0, 1e-9);
  EXPECT_NEAR(s.x(1), 2.0, 1e-9);
  EXPECT_NEAR(s.objective, -6.0, 1e-9);
  EXPECT_NEAR(s.duals(0), -1.0, 1e-9);
}

TEST(Simplex, Infeasible) {
  LpProblem lp;
  lp.A.resize(1, 2);
  lp.A << 1, 1;
  lp.b.resize(1);
  lp.b << 5;
  lp.c = Eigen::VectorXd::Zero(2);
  lp.lower = Eigen::VectorXd::Zero(2);
  lp.upper = Eigen::VectorXd::Constant(2, 2.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(Simplex, Unbounded) {
  LpProblem lp;
  lp.A.resize(1, 2);
  lp.A << 1, -1;
  lp.b.resize(1);
  lp.b << 1;
  lp.c.resize(2);
  lp.c << -1, 0;
  lp.lower = Eigen::VectorXd::Zero(2);
  lp.upper = Eigen::VectorXd::Constant(2, kInf);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(Simplex, DegenerateTransportation) {
  // 3x3 transportation problem with balanced supply and demand; the equal
  // totals make the system rank deficient and the vertices degenerate.
  const double cost[3][3] = {{4, 6, 9}, {5, 3, 8}, {7, 5, 2}};
  const double supply[3] = {20, 30, 25}, demand[3] = {25, 25, 25};
  LpProblem lp;
  lp.A = Eigen::MatrixXd::Zero(6, 9);
  lp.b.resize(6);
  lp.c.resize(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      lp.A(i, 3 * i + j) = 1;
      lp.A(3 + j, 3 * i + j) = 1;
      lp.c(3 * i + j) = cost[i][j];
    }
    lp.b(i) = supply[i];
    lp.b(3 + i) = demand[i];
  }
  lp.lower = Eigen::VectorXd::Zero(9);
  lp.upper = Eigen::VectorXd::Constant(9, kInf);
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  // Optimum found by enumeration: ship 20 on (0,0), 5+25 from row 1, 25 on
  // (2,2).
  EXPECT_NEAR(s.objective, 20 * 4 + 5 * 5 + 25 * 3 + 25 * 2, 1e-9);
  EXPECT_LT((lp.A * s.x - lp.b).cwiseAbs().maxCoeff(), 1e-9);
}

NormalizedScores RandomX(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(60.0, 100.0);
  NormalizedScores x;
  for (double& v : x.values) v = u(rng);
  return x;
}

SegmentWeights Truth() {
  SegmentWeights w;
  w.rows[0] = {0.165, 0.235, 0.010, 0.280};
  w.rows[1] = {0.160, 0.343, 0.161, 0.166};
  w.rows[2] = {0.010, 0.103, 0.507, 0.238};
  w.offset = 10.0;
  return w;
}

std::vector<WeightFitSample> Generate(const SegmentWeights& truth,
                                      std::size_t per_segment, double sigma,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<WeightFitSample> out;
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    for (std::size_t i = 0; i < per_segment; ++i) {
      WeightFitSample s;
      s.segment = static_cast<SegmentLevel>(l);
      s.x = RandomX(rng);
      s.target = Integrate(s.x, truth, s.segment) + (sigma > 0 ? noise(rng) : 0);
      out.push_back(s);
    }
  }
  return out;
}

double LInf(const SegmentWeights& a, const SegmentWeights& b) {
  double d = std::abs(a.offset - b.offset);
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    for (std::size_t t = 0; t < kNumTerms; ++t) {
      d = std::max(d, std::abs(a.rows[l][t] - b.rows[l][t]));
    }
  }
  return d;
}

TEST(FitWeights, ExactRecoveryWithoutNoise) {
  const SegmentWeights truth = Truth();
  WeightFitResult r = FitWeights(Generate(truth, 30, 0.0, 1));
  EXPECT_LE(LInf(r.weights, truth), 1e-6);
  EXPECT_LE(r.mae, 1e-8);
  EXPECT_LE(std::abs(r.duality_gap), 1e-8);
}

TEST(FitWeights, ConstantTarget) {
  std::vector<WeightFitSample> s = Generate(Truth(), 10, 0.0, 2);
  for (WeightFitSample& x : s) x.target = 70.0;
  WeightFitResult r = FitWeights(s);
  EXPECT_NEAR(r.weights.offset, 70.0, 1e-8);
  for (const TermVector& row : r.weights.rows) {
    for (double w : row) EXPECT_NEAR(w, 0.0, 1e-10);
  }
  EXPECT_LE(r.mae, 1e-9);
}

TEST(FitWeights, NegativeGeneratorIsClippedToZero) {
  SegmentWeights gen = Truth();
  gen.rows[1][2] = -0.2;
  WeightFitResult r = FitWeights(Generate(gen, 40, 0.0, 3));
  EXPECT_EQ(r.weights.rows[1][2], 0.0);
  for (const TermVector& row : r.weights.rows) {
    for (double w : row) EXPECT_GE(w, 0.0);
  }
  // An unconstrained fit would reproduce the data exactly; the constrained
  // one cannot.
  EXPECT_GT(r.mae, 0.1);
  // The untouched segments are still recovered.
  for (std::size_t t = 0; t < kNumTerms; ++t) {
    EXPECT_NEAR(r.weights.rows[0][t], gen.rows[0][t], 0.05);
    EXPECT_NEAR(r.weights.rows[2][t], gen.rows[2][t], 0.05);
  }
}

TEST(FitWeights, TooFewCasesNamesTheSegment) {
  std::vector<WeightFitSample> s = Generate(Truth(), 10, 0.0, 4);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [n = 0](const WeightFitSample& x) mutable {
                           return x.segment == SegmentLevel::kMid && n++ < 7;
                         }),
          s.end());
  try {
    FitWeights(s);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    EXPECT_NE(std::string(e.what()).find("'mid'"), std::string::npos)
        << e.what();
  }
}

TEST(FitWeights, PerturbationNeverImproves) {
  const std::vector<WeightFitSample> s = Generate(Truth(), 40, 3.0, 5);
  const WeightFitResult r = FitWeights(s);
  const double base = TrainingMae(s, r.weights);
  EXPECT_NEAR(base, r.mae, 1e-9);
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    for (std::size_t t = 0; t < kNumTerms; ++t) {
      for (double step : {-0.01, 0.01}) {
        SegmentWeights w = r.weights;
        w.rows[l][t] = std::max(0.0, w.rows[l][t] + step);
        EXPECT_GE(TrainingMae(s, w), base - 1e-9) << l << "," << t;
      }
    }
  }
  for (double step : {-0.01, 0.01}) {
    SegmentWeights w = r.weights;
    w.offset += step;
    EXPECT_GE(TrainingMae(s, w), base - 1e-9);
  }
}

TEST(FitWeights, NoisyFitIsCloseToTruth) {
  const SegmentWeights truth = Truth();
  const WeightFitResult r = FitWeights(Generate(truth, 1000, 3.0, 6));
  SegmentWeights same_offset = r.weights;
  same_offset.offset = truth.offset;
  EXPECT_LE(LInf(same_offset, truth), 0.05);
  EXPECT_NEAR(r.mae, 3.0 * std::sqrt(2.0 / 3.14159265358979), 0.3);
}

}  // namespace
}  // namespace s2o
