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

// Numerical procedures behind the bandit-constant and network-size studies:
// best-constant extraction, GPUCT constant fitting, the accuracy
// extrapolation model and Pareto fronts.

#ifndef GPGO_ANALYSIS_H_
#define GPGO_ANALYSIS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpgo {

// Win rates (percent) of PUCT with constant c against PUCT with the baseline
// constant, per descent budget.
struct WinrateTable {
  double baseline = 0.1;
  std::vector<int> budgets;       // strictly increasing
  std::vector<double> constants;  // column order
  // winrates[row][col], in [0, 100].
  std::vector<std::vector<double>> winrates;

  void Validate() const;
};

// Long-format CSV with columns budget, constant, winrate.
WinrateTable LoadWinrateTable(const std::string& path);

// Per budget, the constant with the highest win rate; the baseline counts as
// 50%. Ties go to the smaller constant. Throws on an empty table.
std::map<int, double> BestConstantPerBudget(const WinrateTable& t);

struct GpuctFit {
  double tau = 0;
  double c = 0;
  double objective = 0;
  // Best point of the coarse grid, before refinement.
  double grid_tau = 0;
  double grid_c = 0;
  double grid_objective = 0;
};

// Sum over budgets d of |c * d^tau - c_d * d^0.5|, with powers computed as
// exp(x * log d).
double GpuctObjective(const std::map<int, double>& best_constants, double tau,
                      double c);

// Grid search over tau in [0, 1] and c in (0, 0.5] with step 1e-3, then a
// 1e-4 grid around the winner. The first minimizer in scan order (tau outer,
// c inner) wins ties. Throws std::invalid_argument on empty input.
GpuctFit FitGpuct(const std::map<int, double>& best_constants);

struct GridValue {
  int depth;
  int width;
  double value;
};

// CSV with columns depth, width and `column`.
std::vector<GridValue> LoadGrid(const std::string& path,
                                const std::string& column);

// accuracy(d, w) = p - p1/d - p2/w - 1 / (d/p3 + w/p4)
struct AccuracyModel {
  double p = 0;
  double p1 = 0;
  double p2 = 0;
  double p3 = 1;
  double p4 = 1;
};

// Throws std::invalid_argument for non-positive d or w.
double PredictAccuracy(const AccuracyModel& m, double d, double w);

struct AccuracyFixed {
  std::optional<double> p, p1, p2, p3, p4;
};

struct AccuracyFit {
  AccuracyModel model;
  double sse = 0;      // sum of squared residuals
  double rss = 0;      // square root of sse
  double sae = 0;      // sum of absolute residuals
  double max_abs = 0;  // largest absolute residual
  // Best sse so far after each refinement iteration; never increases.
  std::vector<double> history;
};

// Least squares fit of the accuracy model. p, p1 and p2 enter linearly and
// are solved exactly for given p3, p4; free p3, p4 are found by a
// multi-start pattern search in log space. Any subset may be fixed.
// Throws std::invalid_argument for fewer than 5 points, non-positive depths
// or widths, or a grid that cannot separate the free linear terms.
AccuracyFit FitAccuracyModel(std::span<const GridValue> grid,
                             const AccuracyFixed& fixed = {});

struct ErrorMetric {
  std::string name;
  double value;
  bool matches;
};
// The candidate readings of a reported fit error, each flagged when within
// `tolerance` of `reported`.
std::vector<ErrorMetric> IdentifyErrorMetric(const AccuracyFit& fit,
                                             double reported, double tolerance);

struct ParetoPoint {
  std::string name;
  double cost;   // throughput, higher is better
  double score;  // accuracy or negated MSE, higher is better
};

struct ParetoResult {
  std::vector<ParetoPoint> front;
  std::vector<ParetoPoint> dominated;
};

// A dominates B iff A.cost >= B.cost and A.score >= B.score with one of the
// two strict. Input order is preserved in both outputs. Throws
// std::invalid_argument on duplicate names.
ParetoResult ParetoFront(std::span<const ParetoPoint> points);

// Joins a speed grid with a score grid on (depth, width) and names the
// networks "se.<depth>.<width>". Cells missing from either grid are skipped.
std::vector<ParetoPoint> JoinGrids(std::span<const GridValue> speed,
                                   std::span<const GridValue> score,
                                   bool negate_score);

}  // namespace gpgo

#endif  // GPGO_ANALYSIS_H_
