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
// Benchmark game builders and synthetic instances for property tests.

#ifndef IIG_GAMES_H_
#define IIG_GAMES_H_

#include <cstdint>
#include <string>

#include "iig/game_tree.h"

namespace iig {

// Simultaneous matching pennies embedded turn-based: the max player moves,
// the min player moves without observing. Utilities +1 / -1.
GameTree BuildMatchingPennies();

// Standard 3-card Kuhn poker; each player's treeplex has A_X = 12.
GameTree BuildKuhn();

// Standard Leduc hold'em: 3 ranks x 2 suits, ante 1, bet sizes 2 then 4,
// two raises per round. Each player's treeplex has A_X = 1092.
GameTree BuildLeduc();

struct LiarsDiceConfig {
  int dice_per_player = 1;
  int faces = 6;
  int opener = kMaxPlayer;     // who makes the first bid
  int64_t node_budget = 2'000'000;
};

struct LiarsDiceResult {
  GameTree game;
  int achieved_ax[2];               // per-player treeplex A_X
  int target_ax = 24570;            // reported figure for 1 die, 6 faces
};

// Experimental: the variant matching the reported A_X = 24570 is not pinned
// down, so the builder reports achieved sizes alongside the target.
// Throws ResourceError when the tree exceeds the node budget.
LiarsDiceResult BuildLiarsDice(const LiarsDiceConfig& config);

// Bandit-style hard instance with information-set-dependent action space:
// K Bernoulli bits drawn by chance, one K-way choice, the chosen arm's bit
// paid for the remaining steps. star = 0 keeps every mean at 0.5; otherwise
// arm `star` (1-based) has mean 0.5 + delta. Min player has a single
// inert action.
GameTree BuildHardVariable(int num_arms, int horizon, double delta, int star);

// Hard instance with fixed action-set size: an A-ary depth-H tree with
// deterministic transitions and Bernoulli terminal rewards, mean 0.5
// everywhere except 0.5 + delta at the starred leaf (1-based, 0 = none).
GameTree BuildHardFixed(int actions, int horizon, double delta, int64_t star,
                        int64_t node_budget = 2'000'000);

struct RandomGameConfig {
  int node_budget = 200;
  int max_branch = 3;       // decision actions and chance outcomes in [2..]
  uint64_t seed = 1;
  // When set, every root-to-leaf path gives each player exactly this many
  // decisions (the fixed-episode-length regime); 0 = free-form.
  int uniform_own_depth = 0;
  int max_own_depth = 3;    // free-form cap per player
};

// Random perfect-recall game with chance; both players act at least once on
// every path. Info sets are derived from observation histories, so perfect
// recall holds by construction. Deterministic in the seed.
GameTree BuildRandomGame(const RandomGameConfig& config);

// Parses a game spec string: a bare name ("kuhn", "leduc", "matching_pennies",
// "liars_dice") or name:key=value,... ("hard_var:K=8,H=4,delta=0.05,star=3",
// "hard_fixed:A=2,H=3,delta=0.1,star=1", "random:budget=200,seed=7").
// Throws ArgumentError for unknown names or bad parameters, listing valid
// names in the message.
GameTree BuildGameFromSpec(const std::string& spec);

}  // namespace iig

#endif  // IIG_GAMES_H_
