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
// Shared fixtures and independent oracles for the test and acceptance
// suites. Everything here recomputes results by enumeration or brute force
// and must stay independent of the library's fast paths.

#ifndef IIG_TESTS_TEST_SUPPORT_H_
#define IIG_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "iig/game_tree.h"
#include "iig/rng.h"
#include "iig/treeplex.h"

namespace iig::test {

// The three-info-set example tree: a root with actions a, b; a leads to one
// singleton info set, b to two.
Treeplex MakeT1();

// A root-only treeplex with `actions` actions.
Treeplex MakeSingleInfoSet(int actions);

// Random treeplex built directly (no game): random branching, depth
// <= max_depth. Constant action count when `actions` > 0.
Treeplex RandomTreeplex(RngStream& rng, int max_depth, int max_actions,
                        int max_children_per_seq, int actions = 0);

// Random constant-A tree with every leaf at exactly depth H (the
// fixed-action-set regime).
Treeplex RandomConstantATree(RngStream& rng, int actions, int depth_h);

// Reach probabilities of a random proper transition kernel on tp: a random
// root distribution and a random distribution over every nonempty branch.
std::vector<double> RandomKernelReach(const Treeplex& tp, RngStream& rng);

// Strictly positive random behavioral policy.
BehavioralPolicy RandomPolicy(const Treeplex& tp, RngStream& rng);

// sum_h sum_x A(x) q(x) / p*(x) with q given as per-info-set reach.
double BalancedIdentitySum(const Treeplex& tp,
                           const std::vector<double>& kernel_reach,
                           const std::vector<double>& balanced_reach);

// Per-depth sums A(x) q(x) / p*(x), indexed by depth - 1.
std::vector<double> BalancedPerDepthSums(
    const Treeplex& tp, const std::vector<double>& kernel_reach,
    const std::vector<double>& balanced_reach);

// Minimum of <plan, loss> over every deterministic plan, by exhaustive
// enumeration of action choices (use only on tiny treeplexes).
double BruteForceBestResponseValue(const Treeplex& tp,
                                   const SequenceVector& loss);

// One realized episode outcome with its probability under (mu, nu).
struct OutcomeRecord {
  double prob = 0.0;
  EpisodeResult episode;
};

// Exhaustive enumeration of all episode outcomes; probabilities sum to 1.
std::vector<OutcomeRecord> EnumerateOutcomes(const GameTree& game,
                                             const BehavioralPolicy& mu,
                                             const BehavioralPolicy& nu);

// A game where each player takes two decisions on every path: chance deal,
// max, min, max, min, varied utilities. For estimator-bias enumeration.
GameTree MakeTwoStepToyGame();

// Random game whose players both have at most max_infosets info sets
// (retries over seeds derived from `seed`). uniform_depth > 0 pins every
// path to that many own decisions per player.
GameTree SmallRandomGame(uint64_t seed, int max_infosets, int uniform_depth);

}  // namespace iig::test

#endif  // IIG_TESTS_TEST_SUPPORT_H_
