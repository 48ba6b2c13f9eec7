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

#include "test_support.h"

#include <cmath>
#include <stdexcept>

#include "iig/games.h"

namespace iig::test {

Treeplex MakeT1() {
  TreeplexBuilder builder;
  const int root = builder.AddRoot(2);
  builder.AddChild(root, 0, 1);
  builder.AddChild(root, 1, 1);
  builder.AddChild(root, 1, 1);
  return builder.Build();
}

Treeplex MakeSingleInfoSet(int actions) {
  TreeplexBuilder builder;
  builder.AddRoot(actions);
  return builder.Build();
}

Treeplex RandomTreeplex(RngStream& rng, int max_depth, int max_actions,
                        int max_children_per_seq, int actions) {
  TreeplexBuilder builder;
  auto draw_actions = [&]() {
    return actions > 0 ? actions : 1 + rng.NextInt(max_actions);
  };
  struct Pending {
    int handle;
    int num_actions;
    int depth;
  };
  std::vector<Pending> open;
  const int num_roots = 1 + rng.NextInt(2);
  for (int r = 0; r < num_roots; ++r) {
    const int num_act = draw_actions();
    open.push_back({builder.AddRoot(num_act), num_act, 1});
  }
  for (size_t i = 0; i < open.size(); ++i) {
    const Pending cur = open[i];
    if (cur.depth >= max_depth) continue;
    for (int a = 0; a < cur.num_actions; ++a) {
      const int kids = rng.NextInt(max_children_per_seq + 1);
      for (int c = 0; c < kids; ++c) {
        const int num_act = draw_actions();
        open.push_back(
            {builder.AddChild(cur.handle, a, num_act), num_act, cur.depth + 1});
      }
    }
  }
  return builder.Build();
}

Treeplex RandomConstantATree(RngStream& rng, int actions, int depth_h) {
  TreeplexBuilder builder;
  struct Pending {
    int handle;
    int depth;
  };
  std::vector<Pending> open = {{builder.AddRoot(actions), 1}};
  for (size_t i = 0; i < open.size(); ++i) {
    const Pending cur = open[i];
    if (cur.depth >= depth_h) continue;
    for (int a = 0; a < actions; ++a) {
      const int kids = 1 + rng.NextInt(2);  // at least one successor
      for (int c = 0; c < kids; ++c) {
        open.push_back({builder.AddChild(cur.handle, a, actions),
                        cur.depth + 1});
      }
    }
  }
  return builder.Build();
}

std::vector<double> RandomKernelReach(const Treeplex& tp, RngStream& rng) {
  std::vector<double> reach(tp.NumInfoSets(), 0.0);
  const auto& roots = tp.Roots();
  std::vector<double> draw(roots.size());
  double sum = 0.0;
  for (double& v : draw) {
    v = 0.05 + rng.NextDouble();
    sum += v;
  }
  for (size_t i = 0; i < roots.size(); ++i) reach[roots[i]] = draw[i] / sum;
  for (int s = 0; s < tp.NumSequences(); ++s) {
    const auto& children = tp.SeqChildren(s);
    if (children.empty()) continue;
    std::vector<double> branch(children.size());
    double branch_sum = 0.0;
    for (double& v : branch) {
      v = 0.05 + rng.NextDouble();
      branch_sum += v;
    }
    const double parent_reach = reach[tp.SeqInfoSet(s)];
    for (size_t c = 0; c < children.size(); ++c) {
      reach[children[c]] = parent_reach * branch[c] / branch_sum;
    }
  }
  return reach;
}

BehavioralPolicy RandomPolicy(const Treeplex& tp, RngStream& rng) {
  BehavioralPolicy policy;
  policy.probs.resize(tp.NumSequences());
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) {
      const double v = 0.05 + rng.NextDouble();
      policy.probs[rec.first_seq + a] = v;
      sum += v;
    }
    for (int a = 0; a < rec.num_actions; ++a) {
      policy.probs[rec.first_seq + a] /= sum;
    }
  }
  return policy;
}

double BalancedIdentitySum(const Treeplex& tp,
                           const std::vector<double>& kernel_reach,
                           const std::vector<double>& balanced_reach) {
  double total = 0.0;
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    total += tp.InfoSet(x).num_actions * kernel_reach[x] / balanced_reach[x];
  }
  return total;
}

std::vector<double> BalancedPerDepthSums(
    const Treeplex& tp, const std::vector<double>& kernel_reach,
    const std::vector<double>& balanced_reach) {
  std::vector<double> sums(tp.MaxDepth(), 0.0);
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    sums[tp.InfoSet(x).depth - 1] +=
        tp.InfoSet(x).num_actions * kernel_reach[x] / balanced_reach[x];
  }
  return sums;
}

namespace {

void EnumeratePlans(const Treeplex& tp, int infoset, std::vector<int>* choice,
                    double* best, const SequenceVector& loss) {
  if (infoset == tp.NumInfoSets()) {
    // Evaluate the deterministic plan downward along chosen actions.
    std::vector<double> mass(tp.NumSequences(), 0.0);
    double value = 0.0;
    for (int x = 0; x < tp.NumInfoSets(); ++x) {
      const auto& rec = tp.InfoSet(x);
      const double parent = rec.parent_seq == kRootParent
                                ? 1.0
                                : mass[rec.parent_seq];
      const int seq = rec.first_seq + (*choice)[x];
      mass[seq] = parent;
      value += parent * loss[seq];
    }
    if (value < *best) *best = value;
    return;
  }
  for (int a = 0; a < tp.InfoSet(infoset).num_actions; ++a) {
    (*choice)[infoset] = a;
    EnumeratePlans(tp, infoset + 1, choice, best, loss);
  }
}

void EnumerateWalk(const GameTree& game, int node, double prob,
                   EpisodeResult partial, const BehavioralPolicy& mu,
                   const BehavioralPolicy& nu,
                   std::vector<OutcomeRecord>* out) {
  const GameNode& n = game.Node(node);
  if (n.kind == NodeKind::kTerminal) {
    partial.scaled_utility = game.ScaledUtility(n.utility);
    if (!partial.trajectory[kMaxPlayer].steps.empty()) {
      partial.trajectory[kMaxPlayer].steps.back().reward =
          partial.scaled_utility;
    }
    if (!partial.trajectory[kMinPlayer].steps.empty()) {
      partial.trajectory[kMinPlayer].steps.back().reward =
          1.0 - partial.scaled_utility;
    }
    out->push_back({prob, std::move(partial)});
    return;
  }
  if (n.kind == NodeKind::kChance) {
    for (size_t k = 0; k < n.children.size(); ++k) {
      if (n.probs[k] == 0.0) continue;
      EnumerateWalk(game, n.children[k], prob * n.probs[k], partial, mu, nu,
                    out);
    }
    return;
  }
  const BehavioralPolicy& policy = n.owner == kMaxPlayer ? mu : nu;
  const Treeplex& tp = game.PlayerTreeplex(n.owner);
  const int first = tp.InfoSet(n.infoset).first_seq;
  for (size_t a = 0; a < n.children.size(); ++a) {
    const double p = policy.probs[first + a];
    if (p == 0.0) continue;
    EpisodeResult next = partial;
    next.trajectory[n.owner].steps.push_back(
        TrajectoryStep{n.infoset, static_cast<int>(a),
                       first + static_cast<int>(a), 1.0});
    EnumerateWalk(game, n.children[a], prob * p, std::move(next), mu, nu, out);
  }
}

}  // namespace

double BruteForceBestResponseValue(const Treeplex& tp,
                                   const SequenceVector& loss) {
  if (tp.NumSequences() > 24) {
    throw std::runtime_error("brute force oracle: treeplex too large");
  }
  std::vector<int> choice(tp.NumInfoSets(), 0);
  double best = 1e300;
  EnumeratePlans(tp, 0, &choice, &best, loss);
  return best;
}

std::vector<OutcomeRecord> EnumerateOutcomes(const GameTree& game,
                                             const BehavioralPolicy& mu,
                                             const BehavioralPolicy& nu) {
  std::vector<OutcomeRecord> out;
  EnumerateWalk(game, game.Root(), 1.0, EpisodeResult{}, mu, nu, &out);
  return out;
}

GameTree MakeTwoStepToyGame() {
  GameTreeBuilder builder("two_step_toy");
  const int root = builder.AddChance({0.4, 0.6});
  const double utils[2][2][2][2] = {
      {{{0.0, 1.0}, {2.0, -1.0}}, {{1.5, 0.5}, {-2.0, 1.0}}},
      {{{1.0, -0.5}, {0.0, 2.0}}, {{-1.0, 0.5}, {2.0, 0.0}}}};
  for (int deal = 0; deal < 2; ++deal) {
    const std::string d = std::to_string(deal);
    // The max player observes the deal, the min player does not.
    const int max1 = builder.AddDecision(kMaxPlayer, "d" + d, 2);
    builder.SetChild(root, deal, max1);
    for (int a1 = 0; a1 < 2; ++a1) {
      const int min1 =
          builder.AddDecision(kMinPlayer, "a" + std::to_string(a1), 2);
      builder.SetChild(max1, a1, min1);
      for (int b1 = 0; b1 < 2; ++b1) {
        const int max2 = builder.AddDecision(
            kMaxPlayer, "d" + d + "a" + std::to_string(a1) + "b" +
                            std::to_string(b1), 2);
        builder.SetChild(min1, b1, max2);
        for (int a2 = 0; a2 < 2; ++a2) {
          const int min2 = builder.AddDecision(
              kMinPlayer, "a" + std::to_string(a1) + "b" + std::to_string(b1) +
                              "a" + std::to_string(a2), 2);
          builder.SetChild(max2, a2, min2);
          for (int b2 = 0; b2 < 2; ++b2) {
            builder.SetChild(min2, b2,
                             builder.AddTerminal(utils[deal][a1][b1][a2] +
                                                 0.25 * b2));
          }
        }
      }
    }
  }
  return builder.Finalize(root);
}

GameTree SmallRandomGame(uint64_t seed, int max_infosets, int uniform_depth) {
  for (uint64_t attempt = 0; attempt < 64; ++attempt) {
    RandomGameConfig config;
    config.node_budget = 60;
    config.max_branch = 3;
    config.seed = seed * 1000 + attempt;
    config.uniform_own_depth = uniform_depth;
    config.max_own_depth = uniform_depth > 0 ? uniform_depth : 3;
    GameTree game = BuildRandomGame(config);
    if (game.PlayerTreeplex(kMaxPlayer).NumInfoSets() <= max_infosets &&
        game.PlayerTreeplex(kMinPlayer).NumInfoSets() <= max_infosets) {
      return game;
    }
  }
  throw std::runtime_error("small random game: no fit within attempts");
}

}  // namespace iig::test
