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
// Random perfect-recall games for property tests. Info-set keys are the
// acting player's observation history: own actions are always appended to
// the key; chance outcomes and opponent actions are appended publicly,
// privately or not at all, which is what creates imperfect information.
// Keys grow monotonically along every path, so perfect recall holds by
// construction. Action counts are derived from the key so that all nodes of
// an info set agree.

#include <string>
#include <vector>

#include "iig/errors.h"
#include "iig/games.h"
#include "iig/rng.h"

namespace iig {

namespace {

uint64_t HashKey(const std::string& key, uint64_t seed) {
  uint64_t h = 1469598103934665603ULL ^ seed;
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

struct RandomBuild {
  GameTreeBuilder* builder;
  const RandomGameConfig* config;
  RngStream* rng;
  int nodes_used = 1;

  struct PathState {
    std::string obs[2];
    int own_depth[2] = {0, 0};
    int depth = 0;
  };

  int ActionsForKey(int owner, const std::string& key) const {
    const uint64_t h = HashKey(key, config->seed * 2 + owner);
    return 2 + static_cast<int>(h % (config->max_branch - 1));
  }

  int Terminal() {
    ++nodes_used;
    return builder->AddTerminal(rng->NextDouble() * 2.0 - 1.0);
  }

  int Grow(PathState state) {
    const bool uniform = config->uniform_own_depth > 0;
    const int target =
        uniform ? config->uniform_own_depth : config->max_own_depth;
    const int owed0 = uniform ? target - state.own_depth[0]
                              : (state.own_depth[0] == 0 ? 1 : 0);
    const int owed1 = uniform ? target - state.own_depth[1]
                              : (state.own_depth[1] == 0 ? 1 : 0);
    const bool budget_out = nodes_used >= config->node_budget ||
                            state.depth > 40;

    if (owed0 <= 0 && owed1 <= 0) {
      const bool may_grow = !uniform && !budget_out &&
                            (state.own_depth[0] < config->max_own_depth ||
                             state.own_depth[1] < config->max_own_depth);
      if (!may_grow || rng->NextDouble() < 0.35) return Terminal();
    }
    if (!budget_out && rng->NextDouble() < 0.25) return Chance(state);

    int owner;
    if (owed0 > 0 && owed1 > 0) {
      owner = state.own_depth[0] <= state.own_depth[1] ? 0 : 1;
    } else if (owed0 > 0) {
      owner = 0;
    } else if (owed1 > 0) {
      owner = 1;
    } else {
      owner = rng->NextInt(2);
      if (state.own_depth[owner] >= config->max_own_depth) owner = 1 - owner;
      if (state.own_depth[owner] >= config->max_own_depth) return Terminal();
    }
    return Decision(owner, state);
  }

  int Chance(PathState state) {
    ++nodes_used;
    const int arity = 2 + rng->NextInt(config->max_branch - 1);
    std::vector<double> probs(arity);
    double sum = 0.0;
    for (double& p : probs) {
      p = 0.2 + rng->NextDouble();
      sum += p;
    }
    for (double& p : probs) p /= sum;
    const int node = builder->AddChance(probs);
    // 0: public outcome, 1: seen by max only, 2: seen by min only.
    const int visibility = rng->NextInt(3);
    for (int k = 0; k < arity; ++k) {
      PathState next = state;
      next.depth++;
      const std::string obs = "c" + std::to_string(k) + ".";
      if (visibility == 0 || visibility == 1) next.obs[0] += obs;
      if (visibility == 0 || visibility == 2) next.obs[1] += obs;
      builder->SetChild(node, k, Grow(next));
    }
    return node;
  }

  int Decision(int owner, PathState state) {
    ++nodes_used;
    const std::string key = state.obs[owner];
    const int num_actions = ActionsForKey(owner, key);
    const int node = builder->AddDecision(owner, key, num_actions);
    const bool observed = rng->NextInt(2) == 0;
    for (int a = 0; a < num_actions; ++a) {
      PathState next = state;
      next.depth++;
      next.own_depth[owner]++;
      const std::string obs = "a" + std::to_string(a) + ".";
      next.obs[owner] += obs;
      if (observed) next.obs[1 - owner] += "o" + obs;
      builder->SetChild(node, a, Grow(next));
    }
    return node;
  }
};

}  // namespace

GameTree BuildRandomGame(const RandomGameConfig& config) {
  if (config.node_budget < 8) {
    throw ArgumentError("random game: budget must be >= 8");
  }
  if (config.max_branch < 2) {
    throw ArgumentError("random game: max_branch must be >= 2");
  }
  RngStream rng(config.seed, kGameGenStream);
  GameTreeBuilder builder("random");
  RandomBuild build{&builder, &config, &rng};
  // A private deal up front so the max player has hidden information on
  // every path; further hidden chance and unobserved actions come later.
  const int arity = 2 + rng.NextInt(config.max_branch - 1);
  std::vector<double> probs(arity, 1.0 / arity);
  const int root = builder.AddChance(probs);
  for (int k = 0; k < arity; ++k) {
    RandomBuild::PathState next;
    next.depth = 1;
    next.obs[0] = "d" + std::to_string(k) + ".";
    builder.SetChild(root, k, build.Grow(next));
  }
  return builder.Finalize(root);
}

}  // namespace iig
