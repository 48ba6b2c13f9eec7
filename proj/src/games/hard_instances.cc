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
// Bandit-style lower-bound game instances. Per-step rewards are folded into
// the terminal utility (the engine's reward convention preserves per-episode
// losses), so the generic machinery runs them unchanged.

#include <cmath>
#include <string>
#include <vector>

#include "iig/errors.h"
#include "iig/games.h"

namespace iig {

GameTree BuildHardVariable(int num_arms, int horizon, double delta, int star) {
  if (num_arms < 2) throw ArgumentError("hard_var: K must be >= 2");
  if (horizon < 1) throw ArgumentError("hard_var: H must be >= 1");
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw ArgumentError("hard_var: delta must be in (0, 0.5)");
  }
  if (star < 0 || star > num_arms) {
    throw ArgumentError("hard_var: star must be in [0, K]");
  }
  if (num_arms > 20) throw ResourceError("hard_var: K too large (2^K states)");

  GameTreeBuilder builder("hard_var");
  // One chance node samples all K Bernoulli bits at once; the max player
  // cannot distinguish the outcomes (one root info set with K arms).
  const int64_t num_states = int64_t{1} << num_arms;
  std::vector<double> probs(num_states);
  for (int64_t state = 0; state < num_states; ++state) {
    double p = 1.0;
    for (int k = 0; k < num_arms; ++k) {
      const double mean = (star == k + 1) ? 0.5 + delta : 0.5;
      p *= (state >> k) & 1 ? mean : 1.0 - mean;
    }
    probs[state] = p;
  }
  const int root = builder.AddChance(probs);
  for (int64_t state = 0; state < num_states; ++state) {
    const int pick = builder.AddDecision(kMaxPlayer, "arms", num_arms);
    builder.SetChild(root, static_cast<int>(state), pick);
    for (int k = 0; k < num_arms; ++k) {
      const int bit = (state >> k) & 1;
      // Inert min-player move, then a chain of single-action steps; the
      // chain info sets depend on the chosen arm only, not the hidden bit.
      const int min_node =
          builder.AddDecision(kMinPlayer, "inert", 1);
      builder.SetChild(pick, k, min_node);
      int prev = min_node;
      int prev_slot = 0;
      for (int h = 2; h <= horizon; ++h) {
        const int step = builder.AddDecision(
            kMaxPlayer, "arm" + std::to_string(k) + "h" + std::to_string(h),
            1);
        builder.SetChild(prev, prev_slot, step);
        prev = step;
        prev_slot = 0;
      }
      // Reward `bit` per step over H steps, as a terminal utility.
      const int term = builder.AddTerminal(static_cast<double>(bit * horizon));
      builder.SetChild(prev, prev_slot, term);
    }
  }
  return builder.Finalize(root);
}

GameTree BuildHardFixed(int actions, int horizon, double delta, int64_t star,
                        int64_t node_budget) {
  if (actions < 2) throw ArgumentError("hard_fixed: A must be >= 2");
  if (horizon < 1) throw ArgumentError("hard_fixed: H must be >= 1");
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw ArgumentError("hard_fixed: delta must be in (0, 0.5)");
  }
  double leaves = std::pow(actions, horizon);
  if (star < 0 || static_cast<double>(star) > leaves) {
    throw ArgumentError("hard_fixed: star out of range");
  }
  if (leaves * 4 > static_cast<double>(node_budget)) {
    throw ResourceError("hard_fixed: tree exceeds the node budget");
  }

  GameTreeBuilder builder("hard_fixed");
  const int min_node = builder.AddDecision(kMinPlayer, "inert", 1);
  int64_t next_leaf = 1;

  // Deterministic A-ary tree of singleton info sets; leaf action nodes pay a
  // Bernoulli reward realized through a final chance layer.
  struct Grow {
    GameTreeBuilder* builder;
    int actions;
    int horizon;
    double delta;
    int64_t star;
    int64_t* next_leaf;

    int Visit(int depth, const std::string& path) {
      const int node =
          builder->AddDecision(kMaxPlayer, "n" + path, actions);
      for (int a = 0; a < actions; ++a) {
        const std::string child_path = path + static_cast<char>('a' + a);
        if (depth < horizon) {
          builder->SetChild(node, a, Visit(depth + 1, child_path));
        } else {
          const int64_t leaf = (*next_leaf)++;
          const double mean = leaf == star ? 0.5 + delta : 0.5;
          const int chance = builder->AddChance({1.0 - mean, mean});
          builder->SetChild(chance, 0, builder->AddTerminal(0.0));
          builder->SetChild(chance, 1, builder->AddTerminal(1.0));
          builder->SetChild(node, a, chance);
        }
      }
      return node;
    }
  };
  Grow grow{&builder, actions, horizon, delta, star, &next_leaf};
  builder.SetChild(min_node, 0, grow.Visit(1, ""));
  return builder.Finalize(min_node);
}

}  // namespace iig
