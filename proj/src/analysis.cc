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

#include "gpgo/analysis.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gpgo/csv.h"

namespace gpgo {

void WinrateTable::Validate() const {
  if (budgets.empty() || constants.empty()) {
    throw std::invalid_argument("empty win-rate table");
  }
  for (size_t i = 1; i < budgets.size(); ++i) {
    if (budgets[i] <= budgets[i - 1]) {
      throw std::invalid_argument("budgets must be strictly increasing");
    }
  }
  if (winrates.size() != budgets.size()) {
    throw std::invalid_argument("win-rate table has wrong row count");
  }
  for (const auto& row : winrates) {
    if (row.size() != constants.size()) {
      throw std::invalid_argument("win-rate table has wrong column count");
    }
    for (double v : row) {
      if (!(v >= 0 && v <= 100)) {
        throw std::invalid_argument("win rate outside [0, 100]");
      }
    }
  }
}

WinrateTable LoadWinrateTable(const std::string& path) {
  CsvTable csv = ReadCsv(path);
  std::set<int> budget_set;
  std::set<double> constant_set;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    budget_set.insert(static_cast<int>(csv.Number(r, "budget")));
    constant_set.insert(csv.Number(r, "constant"));
  }
  WinrateTable t;
  t.budgets.assign(budget_set.begin(), budget_set.end());
  t.constants.assign(constant_set.begin(), constant_set.end());
  t.winrates.assign(t.budgets.size(),
                    std::vector<double>(t.constants.size(), NAN));
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    auto bi = std::ranges::find(t.budgets,
                                static_cast<int>(csv.Number(r, "budget"))) -
              t.budgets.begin();
    auto ci = std::ranges::find(t.constants, csv.Number(r, "constant")) -
              t.constants.begin();
    t.winrates[bi][ci] = csv.Number(r, "winrate");
  }
  t.Validate();
  return t;
}

std::map<int, double> BestConstantPerBudget(const WinrateTable& t) {
  t.Validate();
  std::map<int, double> best;
  for (size_t r = 0; r < t.budgets.size(); ++r) {
    std::vector<std::pair<double, double>> cells = {{t.baseline, 50.0}};
    for (size_t c = 0; c < t.constants.size(); ++c) {
      cells.emplace_back(t.constants[c], t.winrates[r][c]);
    }
    std::ranges::sort(cells);
    auto top = cells.front();
    for (const auto& cell : cells) {
      if (cell.second > top.second) top = cell;
    }
    best[t.budgets[r]] = top.first;
  }
  return best;
}

double GpuctObjective(const std::map<int, double>& best_constants, double tau,
                      double c) {
  double sum = 0;
  for (const auto& [d, cd] : best_constants) {
    double log_d = std::log(static_cast<double>(d));
    sum += std::abs(c * std::exp(tau * log_d) - cd * std::exp(0.5 * log_d));
  }
  return sum;
}

GpuctFit FitGpuct(const std::map<int, double>& best_constants) {
  if (best_constants.empty()) {
    throw std::invalid_argument("no budgets to fit");
  }
  // Steps are integers so grid points are exact decimal values.
  GpuctFit fit;
  fit.grid_objective = INFINITY;
  int best_ti = 0;
  int best_ci = 1;
  for (int ti = 0; ti <= 1000; ++ti) {
    for (int ci = 1; ci <= 500; ++ci) {
      double obj = GpuctObjective(best_constants, ti / 1000.0, ci / 1000.0);
      if (obj < fit.grid_objective) {
        fit.grid_objective = obj;
        best_ti = ti;
        best_ci = ci;
      }
    }
  }
  fit.grid_tau = best_ti / 1000.0;
  fit.grid_c = best_ci / 1000.0;

  fit.tau = fit.grid_tau;
  fit.c = fit.grid_c;
  fit.objective = fit.grid_objective;
  const int t0 = best_ti * 10;
  const int c0 = best_ci * 10;
  for (int ti = std::max(0, t0 - 10); ti <= std::min(10000, t0 + 10); ++ti) {
    for (int ci = std::max(1, c0 - 10); ci <= std::min(5000, c0 + 10); ++ci) {
      double obj = GpuctObjective(best_constants, ti / 10000.0, ci / 10000.0);
      if (obj < fit.objective) {
        fit.objective = obj;
        fit.tau = ti / 10000.0;
        fit.c = ci / 10000.0;
      }
    }
  }
  return fit;
}

std::vector<GridValue> LoadGrid(const std::string& path,
                                const std::string& column) {
  CsvTable csv = ReadCsv(path);
  std::vector<GridValue> out;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    out.push_back({static_cast<int>(csv.Number(r, "depth")),
                   static_cast<int>(csv.Number(r, "width")),
                   csv.Number(r, column)});
  }
  return out;
}

double PredictAccuracy(const AccuracyModel& m, double d, double w) {
  if (!(d > 0) || !(w > 0)) {
    throw std::invalid_argument("depth and width must be positive");
  }
  return m.p - m.p1 / d - m.p2 / w - 1.0 / (d / m.p3 + w / m.p4);
}

namespace {

struct Residuals {
  double sse = 0;
  double sae = 0;
  double max_abs = 0;
};

Residuals Measure(const AccuracyModel& m, std::span<const GridValue> grid) {
  Residuals r;
  for (const auto& g : grid) {
    double e = PredictAccuracy(m, g.depth, g.width) - g.value;
    r.sse += e * e;
    r.sae += std::abs(e);
    r.max_abs = std::max(r.max_abs, std::abs(e));
  }
  return r;
}

// Solves for the free linear parameters at fixed p3, p4 and returns the
// completed model.
class LinearSolver {
 public:
  LinearSolver(std::span<const GridValue> grid, const AccuracyFixed& fixed)
      : grid_(grid), fixed_(fixed) {
    if (!fixed.p) free_.push_back(0);
    if (!fixed.p1) free_.push_back(1);
    if (!fixed.p2) free_.push_back(2);
    design_.resize(static_cast<Eigen::Index>(grid.size()),
                   static_cast<Eigen::Index>(free_.size()));
    for (size_t i = 0; i < grid.size(); ++i) {
      const double basis[3] = {1.0, -1.0 / grid[i].depth,
                               -1.0 / grid[i].width};
      for (size_t k = 0; k < free_.size(); ++k) {
        design_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            basis[free_[k]];
      }
    }
    if (!free_.empty()) {
      qr_.compute(design_);
      if (qr_.rank() < static_cast<Eigen::Index>(free_.size())) {
        throw std::invalid_argument(
            "degenerate domain: depths and widths do not separate the free "
            "linear parameters");
      }
    }
  }

  AccuracyModel Solve(double p3, double p4) const {
    AccuracyModel m;
    m.p = fixed_.p.value_or(0);
    m.p1 = fixed_.p1.value_or(0);
    m.p2 = fixed_.p2.value_or(0);
    m.p3 = p3;
    m.p4 = p4;
    if (free_.empty()) return m;
    Eigen::VectorXd y(static_cast<Eigen::Index>(grid_.size()));
    for (size_t i = 0; i < grid_.size(); ++i) {
      const auto& g = grid_[i];
      double fixed_part = 0;
      if (fixed_.p) fixed_part += *fixed_.p;
      if (fixed_.p1) fixed_part -= *fixed_.p1 / g.depth;
      if (fixed_.p2) fixed_part -= *fixed_.p2 / g.width;
      fixed_part -= 1.0 / (g.depth / p3 + g.width / p4);
      y(static_cast<Eigen::Index>(i)) = g.value - fixed_part;
    }
    Eigen::VectorXd x = qr_.solve(y);
    double* slots[3] = {&m.p, &m.p1, &m.p2};
    for (size_t k = 0; k < free_.size(); ++k) {
      *slots[free_[k]] = x(static_cast<Eigen::Index>(k));
    }
    return m;
  }

 private:
  std::span<const GridValue> grid_;
  AccuracyFixed fixed_;
  std::vector<int> free_;
  Eigen::MatrixXd design_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

}  // namespace

AccuracyFit FitAccuracyModel(std::span<const GridValue> grid,
                             const AccuracyFixed& fixed) {
  if (grid.size() < 5) {
    throw std::invalid_argument("insufficient points: need at least 5, got " +
                                std::to_string(grid.size()));
  }
  for (const auto& g : grid) {
    if (g.depth <= 0 || g.width <= 0) {
      throw std::invalid_argument("degenerate domain: non-positive depth or "
                                  "width");
    }
  }
  if ((fixed.p3 && !(*fixed.p3 > 0)) || (fixed.p4 && !(*fixed.p4 > 0))) {
    throw std::invalid_argument("p3 and p4 must be positive");
  }
  LinearSolver solver(grid, fixed);
  auto sse_at = [&](double lp3, double lp4) {
    return Measure(solver.Solve(std::exp(lp3), std::exp(lp4)), grid).sse;
  };

  AccuracyFit fit;
  double best_l3 = std::log(fixed.p3.value_or(1.0));
  double best_l4 = std::log(fixed.p4.value_or(1.0));
  double best = sse_at(best_l3, best_l4);

  const bool free3 = !fixed.p3;
  const bool free4 = !fixed.p4;
  if (free3 || free4) {
    // Starts on a log grid from 1 to 1e6 for each free denominator.
    std::vector<double> starts;
    for (int e = 0; e <= 6; ++e) starts.push_back(e * std::log(10.0));
    std::vector<std::pair<double, double>> seeds;
    for (double a : free3 ? starts : std::vector<double>{best_l3}) {
      for (double b : free4 ? starts : std::vector<double>{best_l4}) {
        seeds.emplace_back(a, b);
      }
    }
    std::vector<std::pair<int, int>> dirs;
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        if ((i == 0 && j == 0) || (i != 0 && !free3) || (j != 0 && !free4)) {
          continue;
        }
        dirs.emplace_back(i, j);
      }
    }
    best = INFINITY;
    for (auto [l3, l4] : seeds) {
      double cur = sse_at(l3, l4);
      double step = 1.0;
      for (int iter = 0; iter < 10000 && step > 1e-12; ++iter) {
        double trial_best = cur;
        double n3 = l3;
        double n4 = l4;
        for (auto [i, j] : dirs) {
          double t3 = l3 + i * step;
          double t4 = l4 + j * step;
          double s = sse_at(t3, t4);
          if (s < trial_best) {
            trial_best = s;
            n3 = t3;
            n4 = t4;
          }
        }
        if (trial_best < cur) {
          cur = trial_best;
          l3 = n3;
          l4 = n4;
        } else {
          step *= 0.5;
        }
        if (cur < best) {
          best = cur;
          best_l3 = l3;
          best_l4 = l4;
        }
        fit.history.push_back(best);
      }
    }
  } else {
    fit.history.push_back(best);
  }

  fit.model = solver.Solve(std::exp(best_l3), std::exp(best_l4));
  // Fixed denominators are reported exactly as given, not via exp(log(x)).
  if (fixed.p3) fit.model.p3 = *fixed.p3;
  if (fixed.p4) fit.model.p4 = *fixed.p4;
  Residuals r = Measure(fit.model, grid);
  fit.sse = r.sse;
  fit.rss = std::sqrt(r.sse);
  fit.sae = r.sae;
  fit.max_abs = r.max_abs;
  return fit;
}

std::vector<ErrorMetric> IdentifyErrorMetric(const AccuracyFit& fit,
                                             double reported,
                                             double tolerance) {
  std::vector<ErrorMetric> out = {
      {"sum_of_squares", fit.sse, false},
      {"root_sum_of_squares", fit.rss, false},
      {"sum_of_absolute", fit.sae, false},
  };
  for (auto& m : out) m.matches = std::abs(m.value - reported) <= tolerance;
  return out;
}

ParetoResult ParetoFront(std::span<const ParetoPoint> points) {
  std::set<std::string> names;
  for (const auto& p : points) {
    if (!names.insert(p.name).second) {
      throw std::invalid_argument("duplicate network name " + p.name);
    }
  }
  ParetoResult r;
  for (const auto& b : points) {
    bool dominated = false;
    for (const auto& a : points) {
      if (a.cost >= b.cost && a.score >= b.score &&
          (a.cost > b.cost || a.score > b.score)) {
        dominated = true;
        break;
      }
    }
    (dominated ? r.dominated : r.front).push_back(b);
  }
  return r;
}

std::vector<ParetoPoint> JoinGrids(std::span<const GridValue> speed,
                                   std::span<const GridValue> score,
                                   bool negate_score) {
  std::vector<ParetoPoint> out;
  for (const auto& s : score) {
    for (const auto& v : speed) {
      if (v.depth == s.depth && v.width == s.width) {
        out.push_back({"se." + std::to_string(s.depth) + "." +
                           std::to_string(s.width),
                       v.value, negate_score ? -s.value : s.value});
        break;
      }
    }
  }
  return out;
}

}  // namespace gpgo
