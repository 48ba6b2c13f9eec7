// Copyright 2026 The iiglearn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Explicit extensive-form game tree with chance, plus the exact folded
// quantities one player faces when the opponent is fixed: reach p^nu, folded
// rewards r^nu and losses l^nu, expected values and exploitability.
//
// Depth indexes a player's OWN decisions; opponent moves and chance are
// folded into the adversarial transitions. Rewards follow the convention:
// reward 1 at every non-final own decision and the scaled terminal utility
// (the opponent's complement for the min player) at the final one, so the
// per-episode cumulative loss sum_h (1 - r_h) equals 1 minus the player's
// scaled utility whenever the player acts at least once.

#ifndef IIG_GAME_TREE_H_
#define IIG_GAME_TREE_H_

#include <array>
#include <string>
#include <vector>

#include "iig/rng.h"
#include "iig/treeplex.h"

namespace iig {

inline constexpr int kMaxPlayer = 0;
inline constexpr int kMinPlayer = 1;

enum class NodeKind { kChance, kDecision, kTerminal };

struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  int owner = -1;              // decision nodes
  int infoset = -1;            // decision nodes, dense per-player id
  double utility = 0.0;        // terminal nodes, max player, original units
  std::vector<int> children;   // decision: one per action; chance: outcomes
  std::vector<double> probs;   // chance nodes only
};

class GameTree {
 public:
  const std::string& Name() const { return name_; }
  int Root() const { return root_; }
  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  const GameNode& Node(int id) const { return nodes_[id]; }
  const Treeplex& PlayerTreeplex(int player) const { return treeplex_[player]; }

  double UtilityLo() const { return utility_lo_; }
  double UtilityHi() const { return utility_hi_; }
  // Affine map of terminal utilities into [0, 1] (max-player view).
  double ScaledUtility(double u) const {
    if (utility_hi_ == utility_lo_) return 0.5;
    return (u - utility_lo_) / (utility_hi_ - utility_lo_);
  }

  // Throws StructuralError on invariant violations (perfect recall, chance
  // normalization, tree structure).
  void Validate() const;

  std::string Serialize() const;
  static GameTree Parse(const std::string& text);

 private:
  friend class GameTreeBuilder;
  std::string name_;
  std::vector<GameNode> nodes_;
  int root_ = 0;
  double utility_lo_ = 0.0;
  double utility_hi_ = 0.0;
  std::array<Treeplex, 2> treeplex_;
};

// Builds a GameTree from nodes whose decision points carry an info-set key
// (any string unique to the acting player's observation history). Finalize()
// derives both treeplexes, assigns dense info-set ids in the canonical
// (depth, parent sequence, key) order and validates perfect recall.
class GameTreeBuilder {
 public:
  explicit GameTreeBuilder(std::string name) : name_(std::move(name)) {}

  int AddChance(std::vector<double> probs);
  int AddDecision(int owner, std::string infoset_key, int num_actions);
  int AddTerminal(double utility);
  void SetChild(int node, int slot, int child);

  GameTree Finalize(int root);

 private:
  struct PendingNode {
    GameNode node;
    std::string key;
  };
  std::string name_;
  std::vector<PendingNode> pending_;
};

// -- Episodes -------------------------------------------------------------

struct TrajectoryStep {
  int infoset = -1;
  int action = -1;
  int seq = -1;        // sequence index in the player's treeplex
  double reward = 1.0; // convention reward in the player's own units
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
};

struct EpisodeResult {
  std::array<Trajectory, 2> trajectory;
  double scaled_utility = 0.0;  // max-player units
};

EpisodeResult SampleEpisode(const GameTree& game, const BehavioralPolicy& mu,
                            const BehavioralPolicy& nu, RngStream& rng);

// -- Folded model ----------------------------------------------------------

// Exact per-info-set reach, per-sequence folded rewards and losses for one
// player against a fixed opponent policy. void_loss collects the loss mass
// of paths where the player never acts, so that for every policy pi:
//   V_player(pi, opponent) = 1 - void_loss - <pi_plan, loss>.
struct FoldedModel {
  std::vector<double> infoset_reach;  // p^nu_{1:h}(x)
  SequenceVector reward;              // r^nu(x, a), convention units
  SequenceVector loss;                // l^nu(x, a) = reach(x) (1 - reward)
  double void_loss = 0.0;
};

FoldedModel ComputeFoldedModel(const GameTree& game,
                               const BehavioralPolicy& opponent, int player);

// Exact expected scaled utility of the max player.
double ExpectedValue(const GameTree& game, const BehavioralPolicy& mu,
                     const BehavioralPolicy& nu);

// max_mu V(mu, nu) - min_nu V(mu, nu) in scaled units; zero at equilibrium.
double Exploitability(const GameTree& game, const BehavioralPolicy& mu,
                      const BehavioralPolicy& nu);

struct RegretPair {
  double regret_max = 0.0;
  double regret_min = 0.0;
};

// Oracle regrets of a finite policy sequence: accumulates folded losses and
// runs one best response per player on the cumulative loss (exact by
// linearity). Throws ArgumentError on an empty sequence.
RegretPair OracleRegret(
    const GameTree& game,
    const std::vector<std::pair<BehavioralPolicy, BehavioralPolicy>>& policies);

}  // namespace iig

#endif  // IIG_GAME_TREE_H_
