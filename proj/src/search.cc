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

#include "gpgo/search.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gpgo/encoding.h"

namespace gpgo {

BanditConfig BanditConfig::Puct(double c) {
  BanditConfig cfg;
  cfg.kind = BanditKind::kPuct;
  cfg.c = c;
  cfg.tau = 0.5;
  return cfg;
}

BanditConfig BanditConfig::Gpuct(double c, double tau) {
  BanditConfig cfg;
  cfg.kind = BanditKind::kGpuct;
  cfg.c = c;
  cfg.tau = tau;
  return cfg;
}

void BanditConfig::Validate() const {
  if (!(c >= 0)) throw std::invalid_argument("bandit constant must be >= 0");
  if (!(tau >= 0 && tau <= 1)) {
    throw std::invalid_argument("bandit tau must lie in [0, 1]");
  }
}

std::string BanditConfig::ToString() const {
  std::ostringstream ss;
  if (kind == BanditKind::kPuct) {
    ss << "puct(c=" << c << ")";
  } else {
    ss << "gpuct(c=" << c << ",tau=" << tau << ")";
  }
  return ss.str();
}

double GpuctExplorationTerm(double c, double tau, double prior, int64_t n_s,
                            int64_t n_sa) {
  if (n_s <= 0) return 0.0;
  return c * prior * std::exp(tau * std::log(static_cast<double>(n_s))) /
         (1.0 + static_cast<double>(n_sa));
}

double PuctExplorationTerm(double c, double prior, int64_t n_s, int64_t n_sa) {
  if (n_s <= 0) return 0.0;
  return c * prior * std::sqrt(static_cast<double>(n_s)) /
         (1.0 + static_cast<double>(n_sa));
}

double ExplorationTerm(const BanditConfig& cfg, double prior, int64_t n_s,
                       int64_t n_sa) {
  if (cfg.kind == BanditKind::kPuct) {
    return PuctExplorationTerm(cfg.c, prior, n_s, n_sa);
  }
  return GpuctExplorationTerm(cfg.c, cfg.tau, prior, n_s, n_sa);
}

double ValuePerspective(double v_white, Color to_play) {
  return to_play == Color::kWhite ? v_white : 1.0 - v_white;
}

NetworkEvaluator::NetworkEvaluator(std::shared_ptr<const Network> net)
    : net_(std::move(net)) {
  if (!net_) throw std::invalid_argument("null network");
}

NetOutput NetworkEvaluator::Evaluate(const Board& board) const {
  return net_->Forward(Encode(board));
}

NetOutput UniformEvaluator::Evaluate(const Board& board) const {
  NetOutput out;
  out.policy_logits.assign(board.num_points() + 1, 0.0f);
  out.value = 0.5f;
  return out;
}

NetOutput ScoreEvaluator::Evaluate(const Board& board) const {
  NetOutput out;
  out.policy_logits.assign(board.num_points() + 1, 0.0f);
  double s = board.AreaScore();
  out.value = s < 0 ? 1.0f : (s > 0 ? 0.0f : 0.5f);
  return out;
}

SearchBudget SearchBudget::Parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("budget must look like descents:N or time:Ts");
  }
  std::string kind = text.substr(0, colon);
  std::string value = text.substr(colon + 1);
  try {
    size_t used = 0;
    if (kind == "descents") {
      int n = std::stoi(value, &used);
      if (used != value.size() || n <= 0) throw std::invalid_argument("");
      return Descents(n);
    }
    if (kind == "time") {
      if (!value.empty() && value.back() == 's') value.pop_back();
      double s = std::stod(value, &used);
      if (used != value.size() || !(s > 0)) throw std::invalid_argument("");
      return Seconds(s);
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad budget '" + text + "'");
}

std::string SearchBudget::ToString() const {
  if (descents > 0) return "descents:" + std::to_string(descents);
  std::ostringstream ss;
  ss << "time:" << seconds << "s";
  return ss.str();
}

std::vector<double> LegalSoftmax(std::span<const float> logits,
                                 std::span<const int> legal) {
  std::vector<double> p(legal.size());
  if (legal.empty()) return p;
  double top = -INFINITY;
  for (int i : legal) top = std::max(top, static_cast<double>(logits[i]));
  double sum = 0;
  for (size_t k = 0; k < legal.size(); ++k) {
    p[k] = std::exp(static_cast<double>(logits[legal[k]]) - top);
    sum += p[k];
  }
  for (double& v : p) v /= sum;
  return p;
}

int SelectChild(const BanditConfig& cfg, int64_t n_s,
                std::span<const double> priors,
                std::span<const int64_t> visits, std::span<const double> q) {
  if (priors.empty()) throw std::invalid_argument("no legal moves to select");
  int best = 0;
  double best_score = -INFINITY;
  for (size_t a = 0; a < priors.size(); ++a) {
    double qa = visits[a] > 0 ? q[a] : cfg.fpu;
    double score = qa + ExplorationTerm(cfg, priors[a], n_s, visits[a]);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(a);
    }
  }
  return best;
}

Search::Search(const Evaluator& evaluator, BanditConfig cfg,
               SearchOptions options)
    : evaluator_(evaluator), cfg_(cfg), options_(options) {
  cfg_.Validate();
}

int Search::SelectEdge(const Node& node) const {
  int best = -1;
  double best_score = -INFINITY;
  for (int k = 0; k < node.num_edges; ++k) {
    const Edge& e = edges_[node.first_edge + k];
    double q = e.visits > 0 ? e.value_sum / e.visits : cfg_.fpu;
    double score = q + ExplorationTerm(cfg_, e.prior, node.visits, e.visits);
    if (score > best_score) {
      best_score = score;
      best = node.first_edge + k;
    }
  }
  return best;
}

double Search::Expand(int node_index) {
  const Board& board = nodes_[node_index].board;
  if (board.is_terminal()) {
    Color w = Winner(board);
    double v_white = w == Color::kWhite ? 1.0 : (w == Color::kBlack ? 0.0 : 0.5);
    return ValuePerspective(v_white, board.to_play());
  }
  NetOutput out = evaluator_.Evaluate(board);
  std::vector<int> legal;
  for (const Move& m : board.LegalMoves()) {
    legal.push_back(PolicyIndex(m, board.size()));
  }
  std::vector<double> priors = LegalSoftmax(out.policy_logits, legal);
  Node& node = nodes_[node_index];
  node.first_edge = static_cast<int32_t>(edges_.size());
  node.num_edges = static_cast<int32_t>(legal.size());
  node.expanded = true;
  for (size_t k = 0; k < legal.size(); ++k) {
    edges_.push_back({legal[k], static_cast<float>(priors[k])});
  }
  return ValuePerspective(out.value, board.to_play());
}

void Search::RunDescent() {
  std::vector<int> node_path = {0};
  std::vector<int> edge_path;
  int node = 0;
  while (nodes_[node].expanded && nodes_[node].num_edges > 0) {
    int e = SelectEdge(nodes_[node]);
    edge_path.push_back(e);
    if (edges_[e].child < 0) {
      const Board& parent = nodes_[node].board;
      Move m = MoveFromPolicyIndex(edges_[e].policy_index, parent.to_play(),
                                   parent.size());
      Node child{parent.Play(m)};
      nodes_.push_back(std::move(child));
      edges_[e].child = static_cast<int32_t>(nodes_.size() - 1);
      node_path.push_back(edges_[e].child);
      break;
    }
    node = edges_[e].child;
    node_path.push_back(node);
  }
  // Value of the leaf for its side to move. Terminal leaves are never
  // expanded, so they are re-scored on every visit.
  double v = Expand(node_path.back());
  for (int n : node_path) nodes_[n].visits++;
  for (size_t i = edge_path.size(); i-- > 0;) {
    // The edge's mover is the opponent of whoever moves at its child.
    v = 1.0 - v;
    edges_[edge_path[i]].visits++;
    edges_[edge_path[i]].value_sum += v;
  }
}

void Search::AddRootNoise(std::mt19937_64& rng) {
  Node& root = nodes_[0];
  if (root.num_edges == 0) return;
  std::gamma_distribution<double> gamma(options_.root_noise_alpha, 1.0);
  std::vector<double> noise(root.num_edges);
  double sum = 0;
  for (double& x : noise) sum += (x = gamma(rng));
  if (!(sum > 0)) return;
  const double f = options_.root_noise_fraction;
  for (int k = 0; k < root.num_edges; ++k) {
    Edge& e = edges_[root.first_edge + k];
    e.prior = static_cast<float>((1 - f) * e.prior + f * noise[k] / sum);
  }
}

void Search::CheckInvariants() const {
  for (const Node& n : nodes_) {
    if (!n.expanded) continue;
    int64_t sum = 0;
    for (int k = 0; k < n.num_edges; ++k) sum += edges_[n.first_edge + k].visits;
    if (n.visits != sum + 1) {
      throw std::logic_error("visit bookkeeping broken: N(s) != sum N(s,a) + 1");
    }
  }
}

SearchResult Search::Run(const Board& root, const SearchBudget& budget,
                         std::mt19937_64* rng) {
  if (root.is_terminal()) {
    throw std::invalid_argument("cannot search a finished game");
  }
  if (budget.descents <= 0 && !(budget.seconds > 0)) {
    throw std::invalid_argument("search budget must be positive");
  }
  nodes_.clear();
  edges_.clear();
  nodes_.push_back(Node{root});

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  int64_t descents = 0;
  auto done = [&] {
    if (budget.descents > 0) return descents >= budget.descents;
    // The first descent always runs so a move can be chosen.
    return descents > 0 &&
           std::chrono::duration<double>(Clock::now() - start).count() >=
               budget.seconds;
  };
  while (!done()) {
    RunDescent();
    ++descents;
    if (descents == 1 && options_.root_noise_fraction > 0 && rng != nullptr) {
      AddRootNoise(*rng);
    }
    if (options_.check_invariants) CheckInvariants();
  }

  SearchResult result;
  result.descents = descents;
  const Node& r = nodes_[0];
  result.root_visits = r.visits;
  int best = -1;
  for (int k = 0; k < r.num_edges; ++k) {
    const Edge& e = edges_[r.first_edge + k];
    EdgeStats s;
    s.move = MoveFromPolicyIndex(e.policy_index, root.to_play(), root.size());
    s.prior = e.prior;
    s.visits = e.visits;
    s.q = e.visits > 0 ? e.value_sum / e.visits : cfg_.fpu;
    result.root_edges.push_back(s);
    if (best < 0) {
      best = k;
      continue;
    }
    // Most visits, then higher Q, then higher prior; earlier index otherwise.
    const EdgeStats& b = result.root_edges[best];
    if (std::tie(s.visits, s.q, s.prior) > std::tie(b.visits, b.q, b.prior)) {
      best = k;
    }
  }
  result.move = result.root_edges[best].move;
  return result;
}

}  // namespace gpgo
