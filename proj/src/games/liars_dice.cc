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
// Liar's dice, one roll per player. Bids are (quantity, face) pairs ordered
// by quantity then face; each bid must exceed the previous one and "liar"
// challenges it. The challenge is resolved against the actual roll counts.

#include <cstdint>
#include <string>
#include <vector>

#include "iig/errors.h"
#include "iig/games.h"

namespace iig {

namespace {

struct DiceBuild {
  GameTreeBuilder* builder;
  const LiarsDiceConfig* config;
  int roll[2];        // face of each player's die, 0-based
  int num_bids;       // quantities 1..2*dice, faces 1..faces
  int64_t* nodes_left;

  bool BidHolds(int bid) const {
    const int quantity = bid / config->faces + 1;
    const int face = bid % config->faces;
    int count = 0;
    for (int p = 0; p < 2; ++p) count += roll[p] == face ? 1 : 0;
    return count >= quantity;
  }

  // `last_bid` = -1 before any bid. Returns the subtree root.
  int Bidding(int to_act, int last_bid, const std::string& line) {
    if (--*nodes_left < 0) {
      throw ResourceError("liars_dice: node budget exceeded");
    }
    std::vector<int> bids;
    for (int b = last_bid + 1; b < num_bids; ++b) bids.push_back(b);
    const bool can_call = last_bid >= 0;
    const int num_actions = static_cast<int>(bids.size()) + (can_call ? 1 : 0);
    const std::string key = std::to_string(roll[to_act]) + "|" + line;
    const int node = builder->AddDecision(to_act, key, num_actions);
    for (size_t i = 0; i < bids.size(); ++i) {
      const int child = Bidding(1 - to_act, bids[i],
                                line + "b" + std::to_string(bids[i]) + ".");
      builder->SetChild(node, static_cast<int>(i), child);
    }
    if (can_call) {
      // Challenger wins when the bid does not hold.
      const bool bid_holds = BidHolds(last_bid);
      const int challenger = to_act;
      const int winner = bid_holds ? 1 - challenger : challenger;
      const int term = builder->AddTerminal(winner == kMaxPlayer ? 1.0 : -1.0);
      builder->SetChild(node, num_actions - 1, term);
    }
    return node;
  }
};

}  // namespace

LiarsDiceResult BuildLiarsDice(const LiarsDiceConfig& config) {
  if (config.dice_per_player != 1) {
    throw ArgumentError("liars_dice: only 1 die per player is supported");
  }
  if (config.faces < 2 || config.faces > 6) {
    throw ArgumentError("liars_dice: faces must be in [2, 6]");
  }
  if (config.opener != kMaxPlayer && config.opener != kMinPlayer) {
    throw ArgumentError("liars_dice: bad opener");
  }
  GameTreeBuilder builder("liars_dice");
  const int outcomes = config.faces * config.faces;
  std::vector<double> probs(outcomes, 1.0 / outcomes);
  const int root = builder.AddChance(probs);
  int64_t nodes_left = config.node_budget;
  int outcome = 0;
  for (int r0 = 0; r0 < config.faces; ++r0) {
    for (int r1 = 0; r1 < config.faces; ++r1) {
      DiceBuild build{&builder, &config, {r0, r1},
                      2 * config.dice_per_player * config.faces, &nodes_left};
      builder.SetChild(root, outcome++, build.Bidding(config.opener, -1, ""));
    }
  }
  LiarsDiceResult result{builder.Finalize(root), {0, 0}, 24570};
  for (int p = 0; p < 2; ++p) {
    result.achieved_ax[p] = result.game.PlayerTreeplex(p).NumSequences();
  }
  return result;
}

}  // namespace iig
