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

// Command-line front end: tournaments, matches, self-play, the analysis
// procedures, GTP and a few network utilities.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gpgo/analysis.h"
#include "gpgo/csv.h"
#include "gpgo/gtp.h"
#include "gpgo/harness.h"
#include "gpgo/nn.h"
#include "gpgo/sgf.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace gpgo {
namespace {

constexpr const char* kVersion = "1.0";

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) {
    fs::create_directories(fs::path(path).parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json BanditJson(const BanditConfig& b) {
  json j;
  j["kind"] = b.kind == BanditKind::kPuct ? "puct" : "gpuct";
  j["c"] = b.c;
  j["tau"] = b.tau;
  j["fpu"] = b.fpu;
  return j;
}

json PlayerJson(const PlayerSpec& p) {
  json j;
  j["name"] = p.name;
  j["kind"] = p.kind == PlayerKind::kSearch ? "search" : "policy";
  j["weights"] = p.weights;
  j["prior"] = p.prior;
  j["bandit"] = BanditJson(p.bandit);
  j["budget"] = p.budget.ToString();
  return j;
}

json GameConfigJson(const GameConfig& g, uint64_t seed) {
  json j;
  j["board_size"] = g.board_size;
  j["komi"] = g.komi;
  j["opening_plies"] = g.opening_plies;
  j["move_cap"] = g.move_cap > 0 ? g.move_cap : 2 * g.board_size * g.board_size;
  j["seed"] = seed;
  j["version"] = kVersion;
  return j;
}

// "puct:C" or "gpuct:C:TAU".
BanditConfig ParseBandit(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  BanditConfig cfg;
  if (parts.size() == 2 && parts[0] == "puct") {
    cfg = BanditConfig::Puct(std::stod(parts[1]));
  } else if (parts.size() == 3 && parts[0] == "gpuct") {
    cfg = BanditConfig::Gpuct(std::stod(parts[1]), std::stod(parts[2]));
  } else {
    throw std::invalid_argument("bandit must be puct:C or gpuct:C:TAU");
  }
  cfg.Validate();
  return cfg;
}

struct GameOptions {
  int size = 9;
  double komi = 7.5;
  int opening = -1;
  uint64_t seed = 1;
  int concurrency = 1;
  std::string sgf_dir;

  void Add(CLI::App* app) {
    app->add_option("--size", size, "board size")->capture_default_str();
    app->add_option("--komi", komi, "komi")->capture_default_str();
    app->add_option("--opening", opening,
                    "random opening plies (default 4 on small boards, 8 on "
                    "19x19)");
    app->add_option("--seed", seed, "base seed")->capture_default_str();
    app->add_option("--concurrency", concurrency, "games played at once")
        ->capture_default_str();
    app->add_option("--sgf-dir", sgf_dir, "directory for game records");
  }

  MatchConfig Match() const {
    MatchConfig mc;
    mc.game.board_size = size;
    mc.game.komi = komi;
    mc.game.opening_plies = opening >= 0 ? opening : (size >= 19 ? 8 : 4);
    mc.seed = seed;
    mc.concurrency = concurrency;
    if (!sgf_dir.empty()) {
      fs::create_directories(sgf_dir);
      std::string dir = sgf_dir;
      mc.on_game = [dir](int64_t i, const GameOutcome& o) {
        std::string name = o.record.metadata.at("PB") + "_vs_" +
                           o.record.metadata.at("PW") + "_" +
                           std::to_string(i) + ".sgf";
        WriteText((fs::path(dir) / name).string(), EmitSgf(o.record) + "\n");
      };
    }
    return mc;
  }
};

int Tournament(const std::string& players_path, int64_t games,
               const std::string& budget, const GameOptions& opts,
               const std::string& out, const std::string& manifest) {
  auto players = LoadPlayers(players_path, SearchBudget::Parse(budget));
  MatchConfig mc = opts.Match();
  ResultTable table = RoundRobin(players, games, mc);
  WriteText(out, table.ToCsv());
  if (!manifest.empty()) {
    json j;
    j["command"] = "tournament";
    j["config"] = GameConfigJson(mc.game, mc.seed);
    j["games_per_pair"] = games;
    for (const auto& p : players) j["players"].push_back(PlayerJson(p));
    for (const auto& r : table.rows) {
      j["results"].push_back({{"name", r.name},
                              {"games", r.games},
                              {"wins", r.wins},
                              {"winrate", r.winrate},
                              {"stderr", r.standard_error}});
    }
    WriteText(manifest, j.dump(2) + "\n");
  }
  return 0;
}

int Match(const std::string& a_bandit, const std::string& b_bandit,
          const std::string& a_weights, const std::string& b_weights,
          const std::string& prior, int64_t games, const std::string& budget,
          const GameOptions& opts, const std::string& out) {
  PlayerSpec a, b;
  a.name = "a";
  b.name = "b";
  a.bandit = ParseBandit(a_bandit);
  b.bandit = ParseBandit(b_bandit);
  a.weights = a_weights;
  b.weights = b_weights;
  a.prior = b.prior = prior;
  a.budget = b.budget = SearchBudget::Parse(budget);
  MatchConfig mc = opts.Match();
  MatchResult r = RunMatch(a, b, games, mc);
  json j;
  j["command"] = "match";
  j["config"] = GameConfigJson(mc.game, mc.seed);
  j["a"] = PlayerJson(a);
  j["b"] = PlayerJson(b);
  j["games"] = r.games;
  j["wins_a"] = r.wins_a;
  j["winrate"] = r.winrate();
  j["stderr"] = r.standard_error();
  j["capped_games"] = r.capped;
  WriteText(out, j.dump(2) + "\n");
  return 0;
}

int SelfPlayCommand(const std::string& weights, const std::string& prior,
                    const std::string& bandit, int games,
                    const std::string& budget, double noise,
                    int temperature_plies, const GameOptions& opts,
                    const std::string& out_dir) {
  PlayerSpec p;
  p.weights = weights;
  p.prior = prior;
  Resolve(p, opts.size);
  SelfPlayConfig cfg;
  cfg.game = opts.Match().game;
  cfg.bandit = ParseBandit(bandit);
  cfg.budget = SearchBudget::Parse(budget);
  cfg.root_noise_fraction = noise;
  cfg.temperature_plies = temperature_plies;
  SelfPlayData data = SelfPlay(*p.evaluator, cfg, games, opts.seed);
  fs::create_directories(out_dir);
  for (size_t i = 0; i < data.games.size(); ++i) {
    WriteText((fs::path(out_dir) / ("game_" + std::to_string(i) + ".sgf")).string(),
              EmitSgf(data.games[i]) + "\n");
  }
  WriteText((fs::path(out_dir) / "examples.gpds").string(),
            SaveDataset(data.examples, opts.size));
  json j;
  j["command"] = "selfplay";
  j["config"] = GameConfigJson(cfg.game, opts.seed);
  j["bandit"] = BanditJson(cfg.bandit);
  j["budget"] = cfg.budget.ToString();
  j["games"] = data.games.size();
  j["examples"] = data.examples.size();
  j["draws"] = data.draws;
  WriteText((fs::path(out_dir) / "manifest.json").string(), j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return 0;
}

int FitConstants(const std::string& table_path, const std::string& out) {
  WinrateTable t = LoadWinrateTable(table_path);
  auto best = BestConstantPerBudget(t);
  GpuctFit fit = FitGpuct(best);
  json j;
  j["command"] = "fit-constants";
  for (const auto& [d, c] : best) j["best_constant"][std::to_string(d)] = c;
  j["tau"] = fit.tau;
  j["c"] = fit.c;
  j["objective"] = fit.objective;
  j["grid"] = {{"tau", fit.grid_tau},
               {"c", fit.grid_c},
               {"objective", fit.grid_objective}};
  WriteText(out, j.dump(2) + "\n");
  return 0;
}

int Pareto(const std::string& speed_path, const std::string& score_path,
           const std::string& column, bool negate,
           const std::string& residual_path, const std::string& speed_column,
           const std::string& out) {
  auto speed = LoadGrid(speed_path, "batches_per_second");
  auto score = LoadGrid(score_path, column);
  auto points = JoinGrids(speed, score, negate);
  if (!residual_path.empty()) {
    CsvTable res = ReadCsv(residual_path);
    for (size_t r = 0; r < res.rows.size(); ++r) {
      double s = res.Number(r, column);
      points.push_back(
          {res.Text(r, "name"), res.Number(r, speed_column), negate ? -s : s});
    }
  }
  ParetoResult pr = ParetoFront(points);
  CsvTable csv;
  csv.header = {"name", "speed", column, "dominated"};
  for (const auto& p : points) {
    bool dominated = std::ranges::any_of(
        pr.dominated, [&](const ParetoPoint& d) { return d.name == p.name; });
    csv.rows.push_back({p.name, FormatNumber(p.cost),
                        FormatNumber(negate ? -p.score : p.score),
                        dominated ? "1" : "0"});
  }
  std::ostringstream ss;
  WriteCsv(ss, csv);
  WriteText(out, ss.str());
  return 0;
}

int Extrapolate(const std::string& accuracy_path,
                const std::vector<std::string>& fixes, double reported,
                double tolerance, const std::vector<std::string>& predict,
                const std::string& out) {
  auto grid = LoadGrid(accuracy_path, "accuracy");
  AccuracyFixed fixed;
  for (const auto& f : fixes) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--fix NAME=VALUE");
    std::string name = f.substr(0, eq);
    double v = std::stod(f.substr(eq + 1));
    if (name == "p") fixed.p = v;
    else if (name == "p1") fixed.p1 = v;
    else if (name == "p2") fixed.p2 = v;
    else if (name == "p3") fixed.p3 = v;
    else if (name == "p4") fixed.p4 = v;
    else throw std::invalid_argument("unknown parameter " + name);
  }
  AccuracyFit fit = FitAccuracyModel(grid, fixed);
  json j;
  j["command"] = "extrapolate";
  j["points"] = grid.size();
  j["model"] = {{"p", fit.model.p},   {"p1", fit.model.p1},
                {"p2", fit.model.p2}, {"p3", fit.model.p3},
                {"p4", fit.model.p4}};
  j["fixed"] = fixes;
  j["sum_of_squares"] = fit.sse;
  j["root_sum_of_squares"] = fit.rss;
  j["sum_of_absolute"] = fit.sae;
  j["max_abs_residual"] = fit.max_abs;
  if (reported > 0) {
    j["reported_error"] = reported;
    j["tolerance"] = tolerance;
    for (const auto& m : IdentifyErrorMetric(fit, reported, tolerance)) {
      j["metrics"].push_back(
          {{"name", m.name}, {"value", m.value}, {"matches", m.matches}});
    }
  }
  for (const auto& p : predict) {
    auto x = p.find('x');
    if (x == std::string::npos) throw std::invalid_argument("--predict DxW");
    int d = std::stoi(p.substr(0, x));
    int w = std::stoi(p.substr(x + 1));
    j["predictions"].push_back(
        {{"depth", d}, {"width", w}, {"accuracy", PredictAccuracy(fit.model, d, w)}});
  }
  WriteText(out, j.dump(2) + "\n");
  return 0;
}

int Params(const std::string& net, int board_size, bool no_pass, bool layers) {
  NetworkDescriptor d = NetworkDescriptor::Parse(net, board_size);
  d.pass_logit = !no_pass;
  std::cout << d.Name() << " " << ParamCount(d) << "\n";
  for (const auto& g : ParamBreakdown(d)) {
    std::cout << "  " << g.name << " " << g.count << "\n";
  }
  if (layers) {
    for (const auto& t : Layout(d)) {
      std::string dims;
      for (int x : t.dims) dims += (dims.empty() ? "" : "x") + std::to_string(x);
      std::cout << "    " << t.name << " [" << dims << "] " << t.size() << "\n";
    }
  }
  return 0;
}

int Bench(const std::vector<std::string>& nets, int board_size, int batch,
          double seconds) {
  CsvTable csv;
  csv.header = {"name", "batch", "batches_per_second", "examples_per_second"};
  for (const auto& n : nets) {
    Network net = Network::Build(NetworkDescriptor::Parse(n, board_size), 1);
    BenchResult r = BenchForward(net, batch, seconds);
    csv.rows.push_back({r.name, std::to_string(r.batch_size),
                        FormatNumber(r.batches_per_second),
                        FormatNumber(r.examples_per_second())});
  }
  WriteCsv(std::cout, csv);
  return 0;
}

int Ingest(const std::string& manifest, const IngestOptions& opts,
           const std::string& out) {
  IngestReport r = IngestManifest(manifest, opts);
  WriteText(out, r.SummaryJson() + "\n");
  return 0;
}

int InitWeights(const std::string& net, int board_size, uint64_t seed,
                bool zero, const std::string& out) {
  NetworkDescriptor d = NetworkDescriptor::Parse(net, board_size);
  Network n = zero ? Network::Zero(d) : Network::Build(d, seed);
  SaveWeightsToFile(n, out);
  std::cout << d.Name() << " " << n.num_parameters() << " parameters -> "
            << out << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"gpgo: Go engine and experiment lab"};
  app.require_subcommand(1);
  int status = 0;

  GameOptions tour_opts;
  std::string players, tour_budget = "descents:32", tour_out = "-", tour_manifest;
  int64_t tour_games = 2;
  auto* tour = app.add_subcommand("tournament", "round robin between players");
  tour->add_option("--players", players, "JSON list of players")->required();
  tour->add_option("--games", tour_games, "games per pair (even)")
      ->capture_default_str();
  tour->add_option("--budget", tour_budget, "descents:N or time:Ts")
      ->capture_default_str();
  tour->add_option("--out", tour_out, "result CSV");
  tour->add_option("--manifest", tour_manifest, "run manifest JSON");
  tour_opts.Add(tour);
  tour->callback([&] {
    status = Tournament(players, tour_games, tour_budget, tour_opts, tour_out,
                        tour_manifest);
  });

  GameOptions match_opts;
  std::string a_bandit = "gpuct:0.057:0.737", b_bandit = "puct:0.1";
  std::string a_weights, b_weights, match_prior = "uniform";
  std::string match_budget = "descents:32", match_out = "-";
  int64_t match_games = 2;
  auto* match = app.add_subcommand("match", "head-to-head match");
  match->add_option("--a", a_bandit, "bandit of player a")->capture_default_str();
  match->add_option("--b", b_bandit, "bandit of player b")->capture_default_str();
  match->add_option("--a-weights", a_weights, "weights of player a");
  match->add_option("--b-weights", b_weights, "weights of player b");
  match->add_option("--prior", match_prior, "uniform or score when no weights")
      ->capture_default_str();
  match->add_option("--games", match_games, "games (even)")->capture_default_str();
  match->add_option("--budget", match_budget, "descents:N or time:Ts")
      ->capture_default_str();
  match->add_option("--out", match_out, "result JSON");
  match_opts.Add(match);
  match->callback([&] {
    status = Match(a_bandit, b_bandit, a_weights, b_weights, match_prior,
                   match_games, match_budget, match_opts, match_out);
  });

  GameOptions sp_opts;
  std::string sp_weights, sp_prior = "uniform", sp_bandit = "gpuct:0.057:0.737";
  std::string sp_budget = "descents:64", sp_out = "selfplay";
  int sp_games = 10, sp_temperature = 0;
  double sp_noise = 0.0;
  auto* sp = app.add_subcommand("selfplay", "generate self-play games");
  sp->add_option("--weights", sp_weights, "network weights");
  sp->add_option("--prior", sp_prior, "uniform or score when no weights")
      ->capture_default_str();
  sp->add_option("--bandit", sp_bandit, "puct:C or gpuct:C:TAU")
      ->capture_default_str();
  sp->add_option("--games", sp_games, "games")->capture_default_str();
  sp->add_option("--budget", sp_budget, "descents:N or time:Ts")
      ->capture_default_str();
  sp->add_option("--noise", sp_noise, "root Dirichlet noise fraction");
  sp->add_option("--temperature-plies", sp_temperature,
                 "plies sampled by visit count");
  sp->add_option("--out-dir", sp_out, "output directory")->capture_default_str();
  sp_opts.Add(sp);
  sp->callback([&] {
    status = SelfPlayCommand(sp_weights, sp_prior, sp_bandit, sp_games,
                             sp_budget, sp_noise, sp_temperature, sp_opts,
                             sp_out);
  });

  std::string fit_table = std::string(GPGO_DATA_DIR) + "/puct_constants_winrates.csv";
  std::string fit_out = "-";
  uint64_t unused_seed = 0;
  auto* fit = app.add_subcommand("fit-constants", "fit GPUCT tau and c");
  fit->add_option("--table", fit_table, "win-rate CSV")->capture_default_str();
  fit->add_option("--out", fit_out, "report JSON");
  fit->add_option("--seed", unused_seed, "accepted for uniformity; unused");
  fit->callback([&] { status = FitConstants(fit_table, fit_out); });

  std::string par_speed = std::string(GPGO_DATA_DIR) + "/se_gpu_speed.csv";
  std::string par_score = std::string(GPGO_DATA_DIR) + "/se_accuracy.csv";
  std::string par_column = "accuracy", par_residual, par_speed_column = "gpu_speed";
  std::string par_out = "-";
  bool par_negate = false;
  auto* par = app.add_subcommand("pareto", "Pareto front of networks");
  par->add_option("--speed", par_speed, "speed grid CSV")->capture_default_str();
  par->add_option("--scores", par_score, "score grid CSV")->capture_default_str();
  par->add_option("--column", par_column, "score column")->capture_default_str();
  par->add_flag("--negate", par_negate, "lower scores are better (MSE)");
  par->add_option("--residual", par_residual, "extra networks CSV");
  par->add_option("--residual-speed-column", par_speed_column,
                  "speed column of the extra networks")
      ->capture_default_str();
  par->add_option("--out", par_out, "front CSV");
  par->add_option("--seed", unused_seed, "accepted for uniformity; unused");
  par->callback([&] {
    status = Pareto(par_speed, par_score, par_column, par_negate, par_residual,
                    par_speed_column, par_out);
  });

  std::string ex_acc = std::string(GPGO_DATA_DIR) + "/se_accuracy.csv";
  std::vector<std::string> ex_fix, ex_predict;
  double ex_reported = 0, ex_tol = 0.2;
  std::string ex_out = "-";
  auto* ex = app.add_subcommand("extrapolate", "fit the accuracy model");
  ex->add_option("--accuracy", ex_acc, "accuracy grid CSV")->capture_default_str();
  ex->add_option("--fix", ex_fix, "fix a parameter, e.g. p3=1290");
  ex->add_option("--reported-error", ex_reported,
                 "identify which error metric matches this value");
  ex->add_option("--tolerance", ex_tol, "metric tolerance")->capture_default_str();
  ex->add_option("--predict", ex_predict, "DxW points to predict");
  ex->add_option("--out", ex_out, "report JSON");
  ex->add_option("--seed", unused_seed, "accepted for uniformity; unused");
  ex->callback([&] {
    status = Extrapolate(ex_acc, ex_fix, ex_reported, ex_tol, ex_predict, ex_out);
  });

  std::string gtp_weights, gtp_budget = "descents:64", gtp_bandit = "gpuct:0.057:0.737";
  int gtp_size = 19;
  double gtp_komi = 7.5;
  bool gtp_policy = false;
  auto* gtp = app.add_subcommand("gtp", "GTP engine on stdin/stdout");
  gtp->add_option("--weights", gtp_weights, "network weights");
  gtp->add_option("--budget", gtp_budget, "descents:N or time:Ts")
      ->capture_default_str();
  gtp->add_option("--bandit", gtp_bandit, "puct:C or gpuct:C:TAU")
      ->capture_default_str();
  gtp->add_option("--size", gtp_size, "initial board size")->capture_default_str();
  gtp->add_option("--komi", gtp_komi, "initial komi")->capture_default_str();
  gtp->add_flag("--policy-only", gtp_policy, "play the raw policy");
  gtp->callback([&] {
    PlayerSpec p = GtpSession::DefaultPlayer();
    p.weights = gtp_weights;
    p.bandit = ParseBandit(gtp_bandit);
    p.budget = SearchBudget::Parse(gtp_budget);
    if (gtp_policy) p.kind = PlayerKind::kPolicyOnly;
    GtpSession session(p, gtp_size, gtp_komi);
    session.Run(std::cin, std::cout);
  });

  std::string params_net;
  int params_size = 19;
  bool params_no_pass = false;
  auto* params = app.add_subcommand("params", "parameter count and breakdown");
  params->add_option("--net", params_net, "descriptor, e.g. se.16.384.64")
      ->required();
  params->add_option("--board-size", params_size, "board size")
      ->capture_default_str();
  params->add_flag("--no-pass-logit", params_no_pass, "drop the pass head");
  bool params_layers = false;
  params->add_flag("--layers", params_layers, "list every tensor");
  params->callback([&] {
    status = Params(params_net, params_size, params_no_pass, params_layers);
  });

  std::vector<std::string> bench_nets;
  int bench_size = 19, bench_batch = 1;
  double bench_seconds = 1.0;
  auto* bench = app.add_subcommand("bench", "forward-pass throughput");
  bench->add_option("--net", bench_nets, "descriptors")->required();
  bench->add_option("--board-size", bench_size, "board size")->capture_default_str();
  bench->add_option("--batch", bench_batch, "batch size")->capture_default_str();
  bench->add_option("--seconds", bench_seconds, "time per network")
      ->capture_default_str();
  bench->callback(
      [&] { status = Bench(bench_nets, bench_size, bench_batch, bench_seconds); });

  std::string ingest_manifest, ingest_out = "-";
  IngestOptions ingest_opts;
  auto* ingest = app.add_subcommand("ingest", "filter and split SGF games");
  ingest->add_option("--manifest", ingest_manifest, "file of SGF paths")
      ->required();
  ingest->add_option("--min-komi", ingest_opts.min_komi)->capture_default_str();
  ingest->add_option("--max-komi", ingest_opts.max_komi)->capture_default_str();
  ingest->add_option("--size", ingest_opts.board_size)->capture_default_str();
  ingest->add_option("--take-last", ingest_opts.take_last)->capture_default_str();
  ingest->add_option("--validation", ingest_opts.validation_count)
      ->capture_default_str();
  ingest->add_option("--seed", ingest_opts.seed)->capture_default_str();
  ingest->add_option("--out", ingest_out, "summary JSON");
  ingest->callback([&] { status = Ingest(ingest_manifest, ingest_opts, ingest_out); });

  std::string init_net, init_out;
  int init_size = 19;
  uint64_t init_seed = 1;
  bool init_zero = false;
  auto* init = app.add_subcommand("init-weights", "write a seeded network");
  init->add_option("--net", init_net, "descriptor")->required();
  init->add_option("--board-size", init_size, "board size")->capture_default_str();
  init->add_option("--seed", init_seed, "init seed")->capture_default_str();
  init->add_flag("--zero", init_zero, "all-zero weights");
  init->add_option("--out", init_out, "weight file")->required();
  init->callback([&] {
    status = InitWeights(init_net, init_size, init_seed, init_zero, init_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "gpgo: " << e.what() << "\n";
    return 1;
  }
  return status;
}

}  // namespace
}  // namespace gpgo

int main(int argc, char** argv) { return gpgo::Main(argc, argv); }
