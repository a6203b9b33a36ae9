// Copyright 2026 The gpgo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gpgo/analysis.h"
#include "gpgo/csv.h"

namespace gpgo {
namespace {

TEST(Csv, QuotesAndComments) {
  CsvTable t = ParseCsv("# note\nname,value\n\"a,b\",1.5\n\"say \"\"hi\"\"\",2\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.Text(0, "name"), "a,b");
  EXPECT_EQ(t.Text(1, "name"), "say \"hi\"");
  EXPECT_DOUBLE_EQ(t.Number(0, "value"), 1.5);
  EXPECT_THROW(t.Column("missing"), std::out_of_range);
  std::ostringstream out;
  WriteCsv(out, t);
  CsvTable back = ParseCsv(out.str());
  EXPECT_EQ(back.rows, t.rows);
}

WinrateTable SmallTable() {
  WinrateTable t;
  t.budgets = {16, 32};
  t.constants = {0.05, 0.2, 0.3};
  t.winrates = {{55, 55, 40}, {45, 49, 48}};
  return t;
}

TEST(BestConstant, TiesAndBaseline) {
  auto best = BestConstantPerBudget(SmallTable());
  EXPECT_DOUBLE_EQ(best.at(16), 0.05);  // tie with 0.2 goes to the smaller
  EXPECT_DOUBLE_EQ(best.at(32), 0.1);   // nothing beats the baseline's 50%
  EXPECT_THROW(BestConstantPerBudget(WinrateTable{}), std::invalid_argument);
}

TEST(GpuctFit, ObjectiveFormula) {
  std::map<int, double> best = {{16, 0.05}, {64, 0.15}};
  double expect = std::abs(0.06 * std::pow(16, 0.7) - 0.05 * 4) +
                  std::abs(0.06 * std::pow(64, 0.7) - 0.15 * 8);
  EXPECT_NEAR(GpuctObjective(best, 0.7, 0.06), expect, 1e-12);
}

TEST(GpuctFit, RecoversExactPowerLaw) {
  // c_d * sqrt(d) = c * d^tau holds exactly for tau = 0.62, c = 0.031.
  std::map<int, double> best;
  for (int d : {16, 32, 64, 128, 256, 512}) {
    best[d] = 0.031 * std::pow(d, 0.62) / std::sqrt(d);
  }
  GpuctFit fit = FitGpuct(best);
  EXPECT_NEAR(fit.tau, 0.62, 1e-3);
  EXPECT_NEAR(fit.c, 0.031, 1e-3);
  EXPECT_LE(fit.objective, fit.grid_objective);
}

std::vector<GridValue> SyntheticGrid(const AccuracyModel& m) {
  std::vector<GridValue> g;
  for (int d : {8, 16, 32, 64}) {
    for (int w : {32, 64, 128, 256}) g.push_back({d, w, PredictAccuracy(m, d, w)});
  }
  return g;
}

TEST(AccuracyFit, RecoversLinearTermsExactly) {
  AccuracyModel truth{64, 70, 40, 1290, 390};
  AccuracyFixed fixed;
  fixed.p3 = 1290;
  fixed.p4 = 390;
  AccuracyFit fit = FitAccuracyModel(SyntheticGrid(truth), fixed);
  EXPECT_NEAR(fit.model.p, 64, 1e-8);
  EXPECT_NEAR(fit.model.p1, 70, 1e-7);
  EXPECT_NEAR(fit.model.p2, 40, 1e-7);
  EXPECT_LT(fit.sse, 1e-15);
}

TEST(AccuracyFit, FreeNonlinearTermsReduceError) {
  AccuracyModel truth{60, 50, 30, 200, 80};
  AccuracyFit fit = FitAccuracyModel(SyntheticGrid(truth));
  EXPECT_LT(fit.sse, 1e-6);
  for (size_t i = 1; i < fit.history.size(); ++i) {
    EXPECT_LE(fit.history[i], fit.history[i - 1]);
  }
}

TEST(AccuracyFit, MetricsAreConsistent) {
  AccuracyModel truth{60, 50, 30, 200, 80};
  auto grid = SyntheticGrid(truth);
  grid[3].value += 0.5;
  AccuracyFixed all;
  all.p = 60;
  all.p1 = 50;
  all.p3 = 200;
  all.p4 = 80;
  AccuracyFit fit = FitAccuracyModel(grid, all);
  EXPECT_NEAR(fit.rss, std::sqrt(fit.sse), 1e-12);
  auto metrics = IdentifyErrorMetric(fit, fit.rss, 1e-9);
  int matches = 0;
  for (const auto& m : metrics) {
    matches += m.matches;
    if (m.name == "root_sum_of_squares") {
      EXPECT_TRUE(m.matches);
    }
  }
  EXPECT_GE(matches, 1);
  EXPECT_THROW(FitAccuracyModel(std::vector<GridValue>(grid.begin(), grid.begin() + 3)),
               std::invalid_argument);
  EXPECT_THROW(PredictAccuracy(truth, 0, 10), std::invalid_argument);
}

TEST(Pareto, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::vector<ParetoPoint> pts;
  for (int i = 0; i < 60; ++i) {
    pts.push_back({"n" + std::to_string(i), static_cast<double>(rng() % 20),
                   static_cast<double>(rng() % 20)});
  }
  ParetoResult r = ParetoFront(pts);
  EXPECT_EQ(r.front.size() + r.dominated.size(), pts.size());
  for (const auto& b : pts) {
    bool dominated = false;
    for (const auto& a : pts) {
      if (a.cost >= b.cost && a.score >= b.score &&
          (a.cost > b.cost || a.score > b.score)) {
        dominated = true;
      }
    }
    bool listed = false;
    for (const auto& d : r.dominated) listed |= d.name == b.name;
    EXPECT_EQ(dominated, listed) << b.name;
  }
  pts.push_back(pts[0]);
  EXPECT_THROW(ParetoFront(pts), std::invalid_argument);
}

TEST(Pareto, JoinSkipsMissingCells) {
  std::vector<GridValue> speed = {{16, 64, 10}, {32, 64, 8}};
  std::vector<GridValue> score = {{16, 64, 0.2}, {48, 64, 0.1}};
  auto pts = JoinGrids(speed, score, true);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].name, "se.16.64");
  EXPECT_DOUBLE_EQ(pts[0].score, -0.2);
}

}  // namespace
}  // namespace gpgo
