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

#include "iig/treeplex.h"

#include <cmath>

#include "doctest.h"
#include "iig/errors.h"
#include "iig/games.h"
#include "iig/rng.h"
#include "test_support.h"

namespace iig {
namespace {

using test::MakeSingleInfoSet;
using test::MakeT1;

TEST_CASE("behavioral_to_realization depth-1 identity") {
  const Treeplex tp = MakeSingleInfoSet(2);
  BehavioralPolicy policy{{0.3, 0.7}};
  const RealizationPlan plan = BehavioralToRealization(tp, policy);
  CHECK(plan.mass[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(plan.mass[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("behavioral_to_realization chains multiply") {
  TreeplexBuilder builder;
  const int root = builder.AddRoot(2);
  builder.AddChild(root, 0, 2);
  const Treeplex tp = builder.Build();
  BehavioralPolicy policy{{0.5, 0.5, 0.4, 0.6}};
  const RealizationPlan plan = BehavioralToRealization(tp, policy);
  CHECK(plan.mass[2] == doctest::Approx(0.5 * 0.4).epsilon(1e-15));
}

TEST_CASE("behavioral_to_realization uniform on T1") {
  const Treeplex tp = MakeT1();
  const RealizationPlan plan = BehavioralToRealization(tp, UniformPolicy(tp));
  REQUIRE(tp.NumSequences() == 5);
  for (int s = 0; s < 5; ++s) {
    CHECK(plan.mass[s] == doctest::Approx(0.5).epsilon(1e-15));
  }
  ValidatePlan(tp, plan, 1e-12);
}

TEST_CASE("behavioral_to_realization rejects layout mismatch") {
  const Treeplex tp = MakeT1();
  BehavioralPolicy bad{{0.5, 0.5}};
  CHECK_THROWS_AS(BehavioralToRealization(tp, bad), StructuralError);
}

TEST_CASE("realization_to_behavioral inverts and falls back") {
  const Treeplex tp = MakeSingleInfoSet(2);
  const BehavioralPolicy out = RealizationToBehavioral(
      tp, RealizationPlan{{0.3, 0.7}}, UniformPolicy(tp));
  CHECK(out.probs[0] == doctest::Approx(0.3));

  // Zero mass at the child info set: takes the fallback.
  TreeplexBuilder builder;
  const int root = builder.AddRoot(2);
  builder.AddChild(root, 1, 2);
  const Treeplex chain = builder.Build();
  const BehavioralPolicy fb = UniformPolicy(chain);
  const BehavioralPolicy policy =
      RealizationToBehavioral(chain, RealizationPlan{{1.0, 0.0, 0.0, 0.0}}, fb);
  CHECK(policy.probs[2] == doctest::Approx(0.5));
  CHECK(policy.probs[3] == doctest::Approx(0.5));
}

TEST_CASE("behavioral round trip is the identity on positive policies") {
  RngStream rng(7, kTestStream);
  for (int trial = 0; trial < 30; ++trial) {
    const Treeplex tp = test::RandomTreeplex(rng, 4, 3, 2);
    const BehavioralPolicy policy = test::RandomPolicy(tp, rng);
    const BehavioralPolicy back = RealizationToBehavioral(
        tp, BehavioralToRealization(tp, policy), UniformPolicy(tp));
    for (int s = 0; s < tp.NumSequences(); ++s) {
      CHECK(std::abs(back.probs[s] - policy.probs[s]) <= 1e-12);
    }
  }
}

TEST_CASE("average_realization") {
  const Treeplex tp = MakeSingleInfoSet(2);
  const RealizationPlan avg = AverageRealization(
      tp, {RealizationPlan{{0.2, 0.8}}, RealizationPlan{{0.6, 0.4}}});
  CHECK(avg.mass[0] == doctest::Approx(0.4));
  CHECK(avg.mass[1] == doctest::Approx(0.6));

  const RealizationPlan same = AverageRealization(
      tp, std::vector<RealizationPlan>(5, RealizationPlan{{0.2, 0.8}}));
  CHECK(same.mass[0] == doctest::Approx(0.2));

  CHECK_THROWS_AS(AverageRealization(tp, {}), ArgumentError);

  RngStream rng(11, kTestStream);
  for (int trial = 0; trial < 20; ++trial) {
    const Treeplex rtp = test::RandomTreeplex(rng, 4, 3, 2);
    std::vector<RealizationPlan> plans;
    for (int i = 0; i < 4; ++i) {
      plans.push_back(
          BehavioralToRealization(rtp, test::RandomPolicy(rtp, rng)));
    }
    ValidatePlan(rtp, AverageRealization(rtp, plans), 1e-9);
  }
}

TEST_CASE("balanced kernel on T1 matches the hand computation") {
  const Treeplex tp = MakeT1();
  const BalancedKernel kernel = ComputeBalancedKernel(tp);
  // Layout: info set 0 = root, then the child of action a, then the two
  // children of action b (insertion order within the parent sequence).
  CHECK(kernel.subtree_actions[0] == 5);
  CHECK(kernel.subtree_actions[1] == 1);
  CHECK(kernel.subtree_actions[2] == 1);
  CHECK(kernel.subtree_actions[3] == 1);
  CHECK(kernel.step_prob[0] == doctest::Approx(1.0));
  CHECK(kernel.step_prob[1] == doctest::Approx(1.0));   // x2 | (root, a)
  CHECK(kernel.step_prob[2] == doctest::Approx(0.5));   // x3 | (root, b)
  CHECK(kernel.reach[2] == doctest::Approx(0.5));
  ValidateBalancedKernel(tp, kernel);
}

TEST_CASE("balanced kernel on a singleton chain is all ones") {
  TreeplexBuilder builder;
  int handle = builder.AddRoot(1);
  for (int d = 0; d < 5; ++d) handle = builder.AddChild(handle, 0, 1);
  const Treeplex tp = builder.Build();
  const BalancedKernel kernel = ComputeBalancedKernel(tp);
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    CHECK(kernel.reach[x] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("balanced kernel normalizes on Kuhn") {
  const GameTree kuhn = BuildKuhn();
  for (int player = 0; player < 2; ++player) {
    const Treeplex& tp = kuhn.PlayerTreeplex(player);
    ValidateBalancedKernel(tp, ComputeBalancedKernel(tp), 1e-12);
  }
}

TEST_CASE("sequence_inner_product") {
  const Treeplex tp = MakeSingleInfoSet(2);
  CHECK(SequenceInnerProduct(tp, RealizationPlan{{0.3, 0.7}}, {1.0, 0.0}) ==
        doctest::Approx(0.3));
  CHECK(SequenceInnerProduct(tp, RealizationPlan{{0.3, 0.7}}, {0.0, 0.0}) ==
        0.0);
  CHECK_THROWS_AS(
      SequenceInnerProduct(tp, RealizationPlan{{0.3, 0.7}}, {1.0}),
      StructuralError);

  RngStream rng(3, kTestStream);
  for (int trial = 0; trial < 20; ++trial) {
    const Treeplex rtp = test::RandomTreeplex(rng, 3, 3, 2);
    const RealizationPlan plan =
        BehavioralToRealization(rtp, test::RandomPolicy(rtp, rng));
    SequenceVector loss(rtp.NumSequences());
    for (double& v : loss) v = rng.NextDouble() * 2 - 1;
    double naive = 0.0;
    for (int s = 0; s < rtp.NumSequences(); ++s) naive += plan.mass[s] * loss[s];
    CHECK(SequenceInnerProduct(rtp, plan, loss) ==
          doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("best_sequence_response single decision") {
  const Treeplex tp = MakeSingleInfoSet(2);
  const BestResponse br = BestSequenceResponse(tp, {0.2, 0.9});
  CHECK(br.plan.mass[0] == 1.0);
  CHECK(br.plan.mass[1] == 0.0);
  CHECK(br.value == doctest::Approx(0.2));
}

TEST_CASE("best_sequence_response T1 hand DP") {
  const Treeplex tp = MakeT1();
  // Sequences: (root,a)=0, (root,b)=1, x2=2, x3=3, x4=4.
  const BestResponse br = BestSequenceResponse(tp, {0.1, 0.0, 0.0, 0.5, 0.5});
  CHECK(br.value == doctest::Approx(0.1));
  CHECK(br.plan.mass[0] == 1.0);
  CHECK(br.plan.mass[1] == 0.0);
}

TEST_CASE("best_sequence_response matches brute force on tiny trees") {
  RngStream rng(17, kTestStream);
  int done = 0;
  while (done < 25) {
    const Treeplex tp = test::RandomTreeplex(rng, 3, 3, 2);
    if (tp.NumSequences() > 12) continue;
    ++done;
    SequenceVector loss(tp.NumSequences());
    for (double& v : loss) v = rng.NextDouble() * 2 - 1;
    const BestResponse br = BestSequenceResponse(tp, loss);
    CHECK(br.value ==
          doctest::Approx(test::BruteForceBestResponseValue(tp, loss))
              .epsilon(1e-12));
    // And the returned plan achieves it.
    CHECK(SequenceInnerProduct(tp, br.plan, loss) ==
          doctest::Approx(br.value).epsilon(1e-12));
  }
}

TEST_CASE("best_sequence_response is a minimizer over random plans") {
  RngStream rng(23, kTestStream);
  const Treeplex tp = test::RandomTreeplex(rng, 4, 3, 2);
  SequenceVector loss(tp.NumSequences());
  for (double& v : loss) v = rng.NextDouble() * 2 - 1;
  const BestResponse br = BestSequenceResponse(tp, loss);
  for (int trial = 0; trial < 100; ++trial) {
    const RealizationPlan plan =
        BehavioralToRealization(tp, test::RandomPolicy(tp, rng));
    CHECK(br.value <= SequenceInnerProduct(tp, plan, loss) + 1e-12);
  }
}

TEST_CASE("balanced identity holds for random kernels") {
  RngStream rng(29, kTestStream);
  for (int trial = 0; trial < 20; ++trial) {
    const Treeplex tp = test::RandomTreeplex(rng, 4, 3, 2);
    const BalancedKernel kernel = ComputeBalancedKernel(tp);
    for (int k = 0; k < 20; ++k) {
      const auto reach = test::RandomKernelReach(tp, rng);
      const double sum = test::BalancedIdentitySum(tp, reach, kernel.reach);
      CHECK(std::abs(sum - tp.NumSequences()) <= 1e-6 * tp.NumSequences());
    }
  }
}

TEST_CASE("fixed-action per-depth inequality") {
  RngStream rng(31, kTestStream);
  for (int trial = 0; trial < 10; ++trial) {
    const int actions = 2 + rng.NextInt(2);
    const int depth = 2 + rng.NextInt(2);
    const Treeplex tp = test::RandomConstantATree(rng, actions, depth);
    const BalancedKernel kernel = ComputeBalancedKernel(tp);
    const auto reach = test::RandomKernelReach(tp, rng);
    const auto sums = test::BalancedPerDepthSums(tp, reach, kernel.reach);
    for (int h = 1; h <= tp.MaxDepth(); ++h) {
      const double bound =
          std::pow(actions, h - tp.MaxDepth()) * tp.NumSequences();
      CHECK(sums[h - 1] <= bound + 1e-9);
    }
  }
}

TEST_CASE("treeplex serialization round trips bit-exactly") {
  RngStream rng(37, kTestStream);
  for (int trial = 0; trial < 10; ++trial) {
    const Treeplex tp = test::RandomTreeplex(rng, 4, 3, 2);
    const std::string text = tp.Serialize();
    const Treeplex back = Treeplex::Parse(text);
    CHECK(back.Serialize() == text);
    CHECK(back.NumSequences() == tp.NumSequences());
    CHECK(back.MaxDepth() == tp.MaxDepth());
  }
  const GameTree kuhn = BuildKuhn();
  const std::string text = kuhn.PlayerTreeplex(0).Serialize();
  CHECK(Treeplex::Parse(text).Serialize() == text);
}

TEST_CASE("treeplex parse rejects malformed input") {
  CHECK_THROWS_AS(Treeplex::Parse("nonsense"), StructuralError);
  CHECK_THROWS_AS(Treeplex::Parse("treeplex H=1 X=2 AX=2\n"
                                  "infoset 0 depth=1 parent=ROOT actions=2\n"),
                  StructuralError);  // header disagrees with body
}

TEST_CASE("policy and plan validators reject bad input") {
  const Treeplex tp = MakeSingleInfoSet(2);
  CHECK_THROWS_AS(ValidatePolicy(tp, BehavioralPolicy{{0.6, 0.6}}),
                  StructuralError);
  CHECK_THROWS_AS(ValidatePolicy(tp, BehavioralPolicy{{-0.1, 1.1}}),
                  StructuralError);
  CHECK_THROWS_AS(ValidatePlan(tp, RealizationPlan{{0.2, 0.2}}),
                  StructuralError);
}

}  // namespace
}  // namespace iig
