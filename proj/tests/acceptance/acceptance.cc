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

// Acceptance checks. Each criterion prints one line:
//   PASS <name>: <detail>     FAIL <name>: <detail>     REPORT <name>: <detail>
// With no arguments every criterion runs; otherwise only the named ones.
// The exit status is non-zero iff some criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fuzz.h"
#include "gpgo/analysis.h"
#include "gpgo/csv.h"
#include "gpgo/harness.h"
#include "gpgo/nn.h"
#include "gpgo/search.h"
#include "oracles.h"

namespace gpgo {
namespace {

const std::string kData = GPGO_DATA_DIR;

struct Outcome {
  enum Kind { kPass, kFail, kReport } kind;
  std::string detail;
};

Outcome Check(bool ok, const std::string& detail) {
  return {ok ? Outcome::kPass : Outcome::kFail, detail};
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

std::string Fmt(double v, int precision = 4) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

std::set<std::string> ReadNames(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::set<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.insert(line);
  }
  return out;
}

Outcome BanditIdentity() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int64_t bad = 0;
  double worst = 0;
  const BanditConfig half = BanditConfig::Gpuct(1.0, 0.5);
  for (int i = 0; i < 100000; ++i) {
    const double c = 10.0 * u(rng);
    const double p = u(rng);
    const int64_t n_s = 1 + static_cast<int64_t>(rng() % 1000000);
    const int64_t n_sa = static_cast<int64_t>(rng() % (n_s + 1));
    const double expect = c * p * std::sqrt(static_cast<double>(n_s)) / (1.0 + n_sa);
    BanditConfig cfg = half;
    cfg.c = c;
    for (double got : {GpuctExplorationTerm(c, 0.5, p, n_s, n_sa),
                       ExplorationTerm(cfg, p, n_s, n_sa)}) {
      double rel = expect == 0 ? std::abs(got) : std::abs(got - expect) / expect;
      worst = std::max(worst, rel);
      bad += rel > 1e-12;
    }
  }
  return Check(bad == 0, "100000 tuples, worst relative difference " + Fmt(worst, 3));
}

Outcome ConstantFit() {
  auto start = std::chrono::steady_clock::now();
  WinrateTable t = LoadWinrateTable(kData + "/puct_constants_winrates.csv");
  auto best = BestConstantPerBudget(t);
  std::vector<double> got;
  for (const auto& [d, c] : best) got.push_back(c);
  const std::vector<double> expect = {0.05, 0.15, 0.15, 0.20, 0.20, 0.25};
  GpuctFit fit = FitGpuct(best);
  double elapsed = Seconds(start);
  bool ok = got == expect && std::abs(fit.tau - 0.737) <= 0.010 &&
            std::abs(fit.c - 0.057) <= 0.003 && elapsed < 10.0;
  std::string list;
  for (double c : got) list += (list.empty() ? "" : ",") + Fmt(c);
  return Check(ok, "best constants [" + list + "], tau=" + Fmt(fit.tau) +
                       " c=" + Fmt(fit.c) + " in " + Fmt(elapsed, 3) + "s");
}

std::set<std::string> DominatedNames(const std::string& score_file,
                                     const std::string& column, bool negate) {
  auto speed = LoadGrid(kData + "/se_gpu_speed.csv", "batches_per_second");
  auto score = LoadGrid(kData + "/" + score_file, column);
  auto points = JoinGrids(speed, score, negate);
  CsvTable res = ReadCsv(kData + "/residual_networks.csv");
  for (size_t r = 0; r < res.rows.size(); ++r) {
    double s = res.Number(r, column);
    points.push_back({res.Text(r, "name"), res.Number(r, "gpu_speed"), negate ? -s : s});
  }
  std::set<std::string> out;
  for (const auto& p : ParetoFront(points).dominated) out.insert(p.name);
  return out;
}

Outcome Pareto() {
  auto start = std::chrono::steady_clock::now();
  auto accuracy = DominatedNames("se_accuracy.csv", "accuracy", false);
  auto value = DominatedNames("se_value_mse.csv", "mse", true);
  double elapsed = Seconds(start);
  auto want_accuracy = ReadNames(kData + "/dominated_accuracy.txt");
  auto want_value = ReadNames(kData + "/dominated_value.txt");
  bool ok = accuracy == want_accuracy && value == want_value && elapsed < 1.0;
  return Check(ok, "accuracy-dominated " + std::to_string(accuracy.size()) + "/" +
                       std::to_string(want_accuracy.size()) + ", value-dominated " +
                       std::to_string(value.size()) + "/" +
                       std::to_string(want_value.size()) + ", exact sets " +
                       (accuracy == want_accuracy && value == want_value ? "yes" : "no") +
                       ", " + Fmt(elapsed * 1000, 3) + " ms");
}

Outcome Extrapolation() {
  auto grid = LoadGrid(kData + "/se_accuracy.csv", "accuracy");
  AccuracyFixed fixed;
  fixed.p = 64.2;
  fixed.p1 = 70.5;
  fixed.p3 = 1290;
  fixed.p4 = 390;
  AccuracyFit fit = FitAccuracyModel(grid, fixed);
  std::string metrics;
  bool metric_ok = false;
  for (const auto& m : IdentifyErrorMetric(fit, 1.39, 0.2)) {
    metrics += " " + m.name + "=" + Fmt(m.value) + (m.matches ? "(match)" : "");
    metric_ok |= m.matches;
  }
  CsvTable table = ReadCsv(kData + "/extrapolated_accuracy.csv");
  double worst = 0;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    double pred = PredictAccuracy(fit.model, table.Number(r, "depth"), table.Number(r, "width"));
    worst = std::max(worst, std::abs(pred - table.Number(r, "accuracy")));
  }
  bool predictions_ok = worst <= 0.15;
  std::string detail = std::to_string(grid.size()) + " points, p2=" + Fmt(fit.model.p2, 5) +
                       ";" + metrics + "; residual vs 1.39+-0.2 " +
                       (metric_ok ? "matched" : "not matched") + "; " +
                       std::to_string(table.rows.size()) +
                       " extrapolated values, worst deviation " + Fmt(worst, 3) +
                       (predictions_ok ? " (within 0.15)" : " (outside 0.15)");
  return Check(metric_ok && predictions_ok, detail);
}

Outcome ParameterCounts() {
  CsvTable se = ReadCsv(kData + "/se_parameters.csv");
  double worst = 0;
  std::string worst_name;
  for (size_t r = 0; r < se.rows.size(); ++r) {
    int d = static_cast<int>(se.Number(r, "depth"));
    int w = static_cast<int>(se.Number(r, "width"));
    double want = se.Number(r, "parameters");
    double rel = std::abs(ParamCount(NetworkDescriptor::MobileSE(d, w)) - want) / want;
    if (rel > worst) {
      worst = rel;
      worst_name = "se." + std::to_string(d) + "." + std::to_string(w);
    }
  }
  CsvTable res = ReadCsv(kData + "/residual_networks.csv");
  double worst_res = 0;
  for (size_t r = 0; r < res.rows.size(); ++r) {
    auto d = NetworkDescriptor::Parse(res.Text(r, "name"));
    double want = res.Number(r, "parameters");
    worst_res = std::max(worst_res, std::abs(ParamCount(d) - want) / want);
  }
  // The breakdown must account for every parameter.
  bool breakdown_ok = true;
  for (const char* name : {"se.16.64", "residual.20.256"}) {
    auto d = NetworkDescriptor::Parse(name);
    int64_t sum = 0;
    for (const auto& g : ParamBreakdown(d)) sum += g.count;
    breakdown_ok &= sum == ParamCount(d);
  }
  bool ok = worst <= 0.02 && worst_res <= 0.02 && breakdown_ok;
  return Check(ok, std::to_string(se.rows.size()) + " MobileSE cells, worst " +
                       Fmt(100 * worst, 3) + "% (" + worst_name + "); " +
                       std::to_string(res.rows.size()) + " residual nets, worst " +
                       Fmt(100 * worst_res, 3) + "%; breakdown sums " +
                       (breakdown_ok ? "ok" : "wrong"));
}

Outcome Rules() {
  auto corpus = oracle::LadderCorpus();
  int agree = 0, captured = 0;
  std::string first_bad;
  for (const auto& c : corpus) {
    bool expect = oracle::LadderRace(c.point).Captured(oracle::FromBoard(c.board));
    captured += expect;
    LadderStatus want = expect ? LadderStatus::kCapturedInLadder
                               : LadderStatus::kEscapesLadder;
    if (LadderStatusAt(c.board, c.point) == want) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = c.label;
    }
  }
  oracle::FuzzReport fuzz = oracle::FuzzRules(10000, 9, 31337, 16);
  bool ok = agree == static_cast<int>(corpus.size()) && fuzz.total() == 0;
  std::string detail = "ladders " + std::to_string(agree) + "/" +
                       std::to_string(corpus.size()) + " agree (" +
                       std::to_string(captured) + " captured); fuzz " +
                       std::to_string(fuzz.games) + " games, " +
                       std::to_string(fuzz.plies) + " plies, " +
                       std::to_string(fuzz.total()) + " violations";
  if (!first_bad.empty()) detail += "; first ladder mismatch " + first_bad;
  if (!fuzz.first_failure.empty()) detail += "; " + fuzz.first_failure;
  return Check(ok, detail);
}

PlayerSpec NetPlayer(const std::string& name, BanditConfig cfg, int descents,
                     std::shared_ptr<const Evaluator> eval) {
  PlayerSpec p;
  p.name = name;
  p.bandit = cfg;
  p.budget = SearchBudget::Descents(descents);
  p.evaluator = std::move(eval);
  return p;
}

Outcome Equivalence() {
  // A seeded random network gives uneven priors and values, so ties are rare
  // and any difference in selection would show. Without a pass head the
  // games run to the move cap or a natural end instead of stopping early.
  NetworkDescriptor desc = NetworkDescriptor::Parse("se.2.48.8", 9);
  desc.pass_logit = false;
  auto net = std::make_shared<const Network>(Network::Build(desc, 20260418));
  auto eval = std::make_shared<const NetworkEvaluator>(net);
  PlayerSpec gpuct = NetPlayer("gpuct", BanditConfig::Gpuct(0.1, 0.5), 64, eval);
  PlayerSpec puct = NetPlayer("puct", BanditConfig::Puct(0.1), 64, eval);
  PlayerSpec other = NetPlayer("opponent", BanditConfig::Puct(0.1), 64, eval);
  GameConfig game;
  game.board_size = 9;
  int identical = 0;
  int64_t plies = 0;
  std::string first_bad;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    GameOutcome a = PlayGame(gpuct, other, game, seed);
    GameOutcome b = PlayGame(puct, other, game, seed);
    plies += a.record.moves.size();
    if (a.record.moves == b.record.moves) {
      ++identical;
    } else if (first_bad.empty()) {
      first_bad = "seed " + std::to_string(seed);
    }
  }
  std::string detail = std::to_string(identical) + "/50 games identical, " +
                       std::to_string(plies) + " plies";
  if (!first_bad.empty()) detail += "; first difference at " + first_bad;
  return Check(identical == 50, detail);
}

Outcome Exploratory() {
  // GPGO_EXPLORATORY_GAMES and GPGO_EXPLORATORY_DESCENTS shrink the run for
  // quick checks.
  int64_t games = 400;
  int descents = 512;
  if (const char* g = std::getenv("GPGO_EXPLORATORY_GAMES")) games = std::atoll(g);
  if (const char* d = std::getenv("GPGO_EXPLORATORY_DESCENTS")) descents = std::atoi(d);
  // No trained network ships with the build. A zero-weight network gives a
  // constant value, and with pessimistic first-play urgency both bandits then
  // collapse onto the first edge they try, so the area-score evaluator
  // (flat priors, value from the current score) stands in for it.
  auto eval = std::make_shared<const ScoreEvaluator>();
  PlayerSpec a = NetPlayer("gpuct", BanditConfig::Gpuct(0.057, 0.737), descents, eval);
  PlayerSpec b = NetPlayer("puct", BanditConfig::Puct(0.1), descents, eval);
  MatchConfig cfg;
  cfg.game.board_size = 9;
  cfg.seed = 1;
  MatchResult r = RunMatch(a, b, games, cfg);
  return {Outcome::kReport,
          "GPUCT(0.057, 0.737) vs PUCT(0.1), 9x9, " + std::to_string(games) +
              " games at " + std::to_string(descents) +
              " descents, score evaluator: winrate " + Fmt(100 * r.winrate()) +
              "% +- " + Fmt(100 * r.standard_error()) + " (" +
              std::to_string(r.capped) + " capped)"};
}

double MedianThroughput(const Network& net) {
  std::vector<double> runs;
  for (int i = 0; i < 3; ++i) runs.push_back(BenchForward(net, 1, 0.2).batches_per_second);
  std::sort(runs.begin(), runs.end());
  return runs[1];
}

Outcome Throughput() {
  std::map<std::string, double> speed;
  auto measure = [&](int d, int w) {
    auto desc = NetworkDescriptor::MobileSE(d, w, 9);
    std::string name = "se." + std::to_string(d) + "." + std::to_string(w);
    if (!speed.count(name)) speed[name] = MedianThroughput(Network::Build(desc, 1));
    return speed[name];
  };
  bool ok = true;
  std::string detail = "depth at w=32:";
  double prev = 1e300;
  for (int d : {2, 4, 8}) {
    double s = measure(d, 32);
    detail += " " + Fmt(s, 5);
    ok &= s < prev;
    prev = s;
  }
  detail += "; width at d=4:";
  prev = 1e300;
  for (int w : {16, 32, 64}) {
    double s = measure(4, w);
    detail += " " + Fmt(s, 5);
    ok &= s < prev;
    prev = s;
  }
  return Check(ok, detail + " batches/s");
}

int Main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"bandit_identity", BanditIdentity},
      {"constant_fit", ConstantFit},
      {"pareto", Pareto},
      {"extrapolation", Extrapolation},
      {"parameter_counts", ParameterCounts},
      {"rules", Rules},
      {"equivalence", Equivalence},
      {"exploratory", Exploratory},
      {"throughput", Throughput},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.first == w; })) {
      std::cerr << "unknown criterion " << w << "\n";
      return 2;
    }
  }
  bool failed = false;
  for (const auto& [name, run] : all) {
    if (!wanted.empty() && !wanted.count(name)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.kind == Outcome::kPass   ? "PASS"
                      : o.kind == Outcome::kFail ? "FAIL"
                                                 : "REPORT";
    std::cout << tag << " " << name << ": " << o.detail << std::endl;
    failed |= o.kind == Outcome::kFail;
  }
  return failed ? 1 : 0;
}

}  // namespace
}  // namespace gpgo

int main(int argc, char** argv) { return gpgo::Main(argc, argv); }
