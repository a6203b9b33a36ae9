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

#ifndef GPGO_SEARCH_H_
#define GPGO_SEARCH_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gpgo/board.h"
#include "gpgo/nn.h"

namespace gpgo {

enum class BanditKind {
  // c * P * sqrt(N(s)) / (1 + N(s,a))
  kPuct,
  // c * P * exp(tau * log N(s)) / (1 + N(s,a)); tau = 0.5 is PUCT.
  kGpuct,
};

struct BanditConfig {
  BanditKind kind = BanditKind::kGpuct;
  double c = 0.1;
  double tau = 0.5;
  // Q of an edge that has never been visited, from the mover's perspective.
  double fpu = 0.0;

  static BanditConfig Puct(double c);
  static BanditConfig Gpuct(double c, double tau);
  // Throws std::invalid_argument unless c >= 0 and tau in [0, 1].
  void Validate() const;
  std::string ToString() const;
};

// The exploration bonus of `cfg`. N(s) = 0 gives 0 for both kinds.
double ExplorationTerm(const BanditConfig& cfg, double prior, int64_t n_s,
                       int64_t n_sa);
double GpuctExplorationTerm(double c, double tau, double prior, int64_t n_s,
                            int64_t n_sa);
double PuctExplorationTerm(double c, double prior, int64_t n_s, int64_t n_sa);

// Converts a White win probability to the perspective of `to_play`.
double ValuePerspective(double v_white, Color to_play);

// Supplies priors (as logits) and a value for a position. Implementations
// must be safe to call from several threads at once.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual NetOutput Evaluate(const Board& board) const = 0;
};

class NetworkEvaluator final : public Evaluator {
 public:
  // Throws std::invalid_argument if the network's board size differs from
  // the boards it will be asked about (checked per call).
  explicit NetworkEvaluator(std::shared_ptr<const Network> net);
  NetOutput Evaluate(const Board& board) const override;
  const Network& network() const { return *net_; }

 private:
  std::shared_ptr<const Network> net_;
};

// Flat priors and a value of one half.
class UniformEvaluator final : public Evaluator {
 public:
  NetOutput Evaluate(const Board& board) const override;
};

// Flat priors; the value is the outcome if the game stopped now and were
// scored by area. Strong on small boards late in the game.
class ScoreEvaluator final : public Evaluator {
 public:
  NetOutput Evaluate(const Board& board) const override;
};

struct SearchBudget {
  // Exactly one of these is positive.
  int descents = 0;
  double seconds = 0.0;

  static SearchBudget Descents(int n) { return {n, 0.0}; }
  static SearchBudget Seconds(double s) { return {0, s}; }
  // "descents:32", "time:10s", "time:0.5".
  static SearchBudget Parse(const std::string& text);
  std::string ToString() const;
};

struct EdgeStats {
  Move move;
  double prior = 0;
  int64_t visits = 0;
  // Mean value from the perspective of the player making the move; fpu when
  // unvisited.
  double q = 0;
};

struct SearchResult {
  Move move;
  int64_t descents = 0;
  int64_t root_visits = 0;
  std::vector<EdgeStats> root_edges;
};

struct SearchOptions {
  // Dirichlet noise mixed into the root priors; 0 disables it.
  double root_noise_fraction = 0.0;
  double root_noise_alpha = 0.03;
  // Debug check of N(s) == sum N(s,a) + 1 at every node after each descent.
  bool check_invariants = false;
};

// A fresh tree per call; nothing is reused between searches.
class Search {
 public:
  Search(const Evaluator& evaluator, BanditConfig cfg,
         SearchOptions options = {});

  // Throws std::invalid_argument on a terminal root. `rng` is only consumed
  // when root noise is on.
  SearchResult Run(const Board& root, const SearchBudget& budget,
                   std::mt19937_64* rng = nullptr);

  // Tree storage, exposed read-only for tests. Node 0 is the root.
  struct Edge {
    int policy_index;
    float prior;
    int32_t visits = 0;
    double value_sum = 0;
    int32_t child = -1;
  };
  struct Node {
    Board board;
    int64_t visits = 0;
    int32_t first_edge = 0;
    int32_t num_edges = 0;
    bool expanded = false;
  };
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  int SelectEdge(const Node& node) const;
  // Returns the value of node's position for its side to move.
  double Expand(int node_index);
  void RunDescent();
  void AddRootNoise(std::mt19937_64& rng);
  void CheckInvariants() const;

  const Evaluator& evaluator_;
  BanditConfig cfg_;
  SearchOptions options_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

// select_child on explicit edge statistics: argmax of Q + exploration with
// ties to the lowest index. `q` entries for unvisited edges are ignored in
// favour of cfg.fpu. Throws std::invalid_argument when there are no edges.
int SelectChild(const BanditConfig& cfg, int64_t n_s,
                std::span<const double> priors,
                std::span<const int64_t> visits, std::span<const double> q);

// Softmax of `logits` restricted to `legal` policy indices.
std::vector<double> LegalSoftmax(std::span<const float> logits,
                                 std::span<const int> legal);

}  // namespace gpgo

#endif  // GPGO_SEARCH_H_
