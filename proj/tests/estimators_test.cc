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

#include "iig/estimators.h"

#include <cmath>

#include "doctest.h"
#include "iig/errors.h"
#include "iig/games.h"
#include "iig/rng.h"
#include "test_support.h"

namespace iig {
namespace {

Trajectory SingleStep(int infoset, int action, int seq, double reward) {
  Trajectory traj;
  traj.steps.push_back(TrajectoryStep{infoset, action, seq, reward});
  return traj;
}

TEST_CASE("ix loss estimate arithmetic") {
  const Treeplex tp = test::MakeSingleInfoSet(2);
  const Trajectory traj = SingleStep(0, 0, 0, 0.25);
  const SparseSeqVector est = IxLossEstimate(
      traj, RealizationPlan{{0.5, 0.5}}, SequenceVector{0.1, 0.1});
  REQUIRE(est.size() == 1);
  CHECK(est[0].first == 0);
  CHECK(est[0].second == doctest::Approx(1.25).epsilon(1e-15));
  // Unvisited sequences simply do not appear.
  for (const auto& [seq, value] : est) CHECK(seq != 1);

  CHECK_THROWS_AS(IxLossEstimate(traj, RealizationPlan{{0.0, 1.0}},
                                 SequenceVector{0.0, 0.0}),
                  NumericError);
}

TEST_CASE("ix transition estimate arithmetic") {
  const Trajectory traj = SingleStep(0, 0, 0, 1.0);
  const SparseSeqVector est = IxTransitionEstimate(
      traj, RealizationPlan{{0.25, 0.75}}, SequenceVector{0.25, 0.25});
  REQUIRE(est.size() == 1);
  CHECK(est[0].second == doctest::Approx(2.0).epsilon(1e-15));
}

// Exhaustive-expectation oracles on the two-step toy game.
struct ExpectationOracle {
  GameTree game = test::MakeTwoStepToyGame();
  BehavioralPolicy mu, nu;
  RealizationPlan mu_plan;
  FoldedModel folded;

  explicit ExpectationOracle(uint64_t seed) {
    RngStream rng(seed, kTestStream);
    mu = test::RandomPolicy(game.PlayerTreeplex(0), rng);
    nu = test::RandomPolicy(game.PlayerTreeplex(1), rng);
    mu_plan = BehavioralToRealization(game.PlayerTreeplex(0), mu);
    folded = ComputeFoldedModel(game, nu, kMaxPlayer);
  }

  // E over all outcomes of the sparse estimator, as a dense vector.
  SequenceVector ExpectedEstimate(double gamma, bool loss_numerator) const {
    const Treeplex& tp = game.PlayerTreeplex(0);
    SequenceVector gamma_of(tp.NumSequences(), gamma);
    SequenceVector expected(tp.NumSequences(), 0.0);
    for (const auto& outcome : test::EnumerateOutcomes(game, mu, nu)) {
      const SparseSeqVector est =
          loss_numerator
              ? IxLossEstimate(outcome.episode.trajectory[0], mu_plan, gamma_of)
              : IxTransitionEstimate(outcome.episode.trajectory[0], mu_plan,
                                     gamma_of);
      for (const auto& [seq, value] : est) {
        expected[seq] += outcome.prob * value;
      }
    }
    return expected;
  }
};

TEST_CASE("unbiased loss estimate matches the folded loss exactly") {
  const ExpectationOracle oracle(5);
  const SequenceVector expected = oracle.ExpectedEstimate(0.0, true);
  const Treeplex& tp = oracle.game.PlayerTreeplex(0);
  for (int s = 0; s < tp.NumSequences(); ++s) {
    CHECK(std::abs(expected[s] - oracle.folded.loss[s]) <= 1e-10);
  }
}

TEST_CASE("ix loss estimate is biased downward, monotone in gamma") {
  const ExpectationOracle oracle(6);
  const Treeplex& tp = oracle.game.PlayerTreeplex(0);
  for (const double gamma : {0.01, 0.1}) {
    const SequenceVector expected = oracle.ExpectedEstimate(gamma, true);
    for (int s = 0; s < tp.NumSequences(); ++s) {
      CHECK(expected[s] <= oracle.folded.loss[s] + 1e-12);
    }
  }
}

TEST_CASE("unbiased transition estimate recovers the adversarial reach") {
  const ExpectationOracle oracle(7);
  const SequenceVector expected = oracle.ExpectedEstimate(0.0, false);
  const Treeplex& tp = oracle.game.PlayerTreeplex(0);
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    for (int a = 0; a < rec.num_actions; ++a) {
      CHECK(std::abs(expected[rec.first_seq + a] -
                     oracle.folded.infoset_reach[x]) <= 1e-10);
    }
  }
}

TEST_CASE("balanced ix parameters") {
  const Treeplex tp = test::MakeT1();
  const BalancedKernel kernel = ComputeBalancedKernel(tp);
  const SequenceVector gamma = BalancedIxParams(tp, kernel, {0.1, 0.1});
  // x3 (info set 2) has balanced reach 0.5.
  const int seq_x3 = tp.InfoSet(2).first_seq;
  CHECK(gamma[seq_x3] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(gamma[0] == doctest::Approx(0.1).epsilon(1e-15));  // reach 1 at root
}

TEST_CASE("adaptive ix parameters") {
  const Treeplex tp = test::MakeSingleInfoSet(2);
  EstimatorState state(tp);
  CHECK(AdaptiveIxParams(tp, state, 10.0)[0] == doctest::Approx(10.0));
  state.Accumulate(tp, {}, {{0, 4.0}});
  CHECK(AdaptiveIxParams(tp, state, 10.0)[0] == doctest::Approx(2.0));
  CHECK(AdaptiveIxParams(tp, state, 10.0)[1] == doctest::Approx(10.0));

  // Nonincreasing over episodes on every sequence.
  RngStream rng(3, kTestStream);
  SequenceVector prev = AdaptiveIxParams(tp, state, 10.0);
  for (int t = 0; t < 20; ++t) {
    state.Accumulate(tp, {}, {{rng.NextInt(2), rng.NextDouble()}});
    const SequenceVector cur = AdaptiveIxParams(tp, state, 10.0);
    for (int s = 0; s < tp.NumSequences(); ++s) CHECK(cur[s] <= prev[s] + 1e-15);
    prev = cur;
  }
}

TEST_CASE("adaptive learning rates take the subtree minimum") {
  // Chain: root (1 action) -> child (2 actions).
  TreeplexBuilder builder;
  const int root = builder.AddRoot(1);
  builder.AddChild(root, 0, 2);
  const Treeplex tp = builder.Build();
  EstimatorState state(tp);
  CHECK(AdaptiveLearningRates(tp, state, 10.0)[0] == doctest::Approx(10.0));

  // Descendant mean P = 9 - root rate becomes min(10, 1) = 1.
  state.Accumulate(tp, {}, {{1, 9.0}, {2, 9.0}});
  const auto rates = AdaptiveLearningRates(tp, state, 10.0);
  CHECK(rates[1] == doctest::Approx(1.0));
  CHECK(rates[0] == doctest::Approx(1.0));
}

TEST_CASE("adaptive rates are nondecreasing along any path") {
  RngStream rng(11, kTestStream);
  for (int trial = 0; trial < 10; ++trial) {
    const Treeplex tp = test::RandomTreeplex(rng, 4, 3, 2);
    EstimatorState state(tp);
    for (int t = 0; t < 50; ++t) {
      const int seq = rng.NextInt(tp.NumSequences());
      state.Accumulate(tp, {}, {{seq, rng.NextDouble() * 3}});
    }
    const auto rates = AdaptiveLearningRates(tp, state, 2.0);
    for (int x = 0; x < tp.NumInfoSets(); ++x) {
      const auto& rec = tp.InfoSet(x);
      if (rec.parent_seq == kRootParent) continue;
      CHECK(rates[x] >= rates[tp.SeqInfoSet(rec.parent_seq)] - 1e-15);
    }
  }
}

TEST_CASE("adaptive rates are pointwise nonincreasing in t") {
  RngStream rng(13, kTestStream);
  const Treeplex tp = test::RandomTreeplex(rng, 3, 3, 2);
  EstimatorState state(tp);
  auto prev = AdaptiveLearningRates(tp, state, 5.0);
  for (int t = 0; t < 30; ++t) {
    state.Accumulate(tp, {}, {{rng.NextInt(tp.NumSequences()), 1.0}});
    const auto cur = AdaptiveLearningRates(tp, state, 5.0);
    for (int x = 0; x < tp.NumInfoSets(); ++x) CHECK(cur[x] <= prev[x] + 1e-15);
    prev = cur;
  }
}

TEST_CASE("tweaked schedule") {
  const Treeplex tp = test::MakeSingleInfoSet(2);
  EstimatorState state(tp);
  auto [rates0, ix0] = TweakedSchedule(tp, state, 1.5, 0.3);
  CHECK(rates0[0] == doctest::Approx(1.5));
  CHECK(ix0[0] == doctest::Approx(0.3));

  state.Accumulate(tp, {}, {{0, 3.0}, {1, 3.0}});  // info-set mean 3
  auto [rates, ix] = TweakedSchedule(tp, state, 1.5, 0.3);
  CHECK(rates[0] == doctest::Approx(1.5 / 2.0));
  CHECK(ix[0] == doctest::Approx(0.3 / 2.0));

  // The sqrt decay dominates the adaptive decay pointwise.
  for (double p : {0.0, 0.5, 3.0, 100.0}) {
    CHECK(1.5 / std::sqrt(1.0 + p) >= 1.5 / (1.0 + p));
  }
}

TEST_CASE("theorem schedules reproduce the plug-in constants") {
  const ScheduleParams shannon = TheoremSchedules(
      ScheduleMode::kTheoremBalancedShannon, 2, 12, 10000, 0.1);
  CHECK(shannon.iota == doctest::Approx(std::log(360.0)).epsilon(1e-12));
  CHECK(shannon.gamma_h[0] == doctest::Approx(7.003e-3).epsilon(1e-3));
  CHECK(shannon.eta_h[0] == doctest::Approx(9.101e-3).epsilon(1e-3));
  CHECK(shannon.eta_h.size() == 2);

  const ScheduleParams fixed_one = TheoremSchedules(
      ScheduleMode::kFixedActionSet, 3, 3, 100, 0.1, 0.5, /*actions=*/1);
  CHECK(fixed_one.gamma_h[0] == doctest::Approx(fixed_one.gamma_h[2]));

  for (const auto& [t, l2] :
       std::vector<std::pair<int64_t, double>>{{1, 2.0}, {3, 3.0}, {7, 4.0}}) {
    const ScheduleParams ada =
        TheoremSchedules(ScheduleMode::kAdaptive, 2, 12, t, 0.1);
    CHECK(ada.l2 == doctest::Approx(l2).epsilon(1e-12));
  }

  // Pure function: identical calls give bit-identical results.
  const ScheduleParams a = TheoremSchedules(
      ScheduleMode::kTheoremBalancedTsallis, 3, 20, 500, 0.05, 0.5);
  const ScheduleParams b = TheoremSchedules(
      ScheduleMode::kTheoremBalancedTsallis, 3, 20, 500, 0.05, 0.5);
  CHECK(a.eta == b.eta);
  CHECK(a.gamma == b.gamma);
  CHECK(a.iota_prime == b.iota_prime);

  CHECK_THROWS_AS(
      TheoremSchedules(ScheduleMode::kAdaptive, 2, 12, 0, 0.1),
      ArgumentError);
  CHECK_THROWS_AS(
      TheoremSchedules(ScheduleMode::kAdaptive, 2, 12, 100, 1.5),
      ArgumentError);
  CHECK_THROWS_AS(TheoremSchedules(ScheduleMode::kFixedActionSet, 2, 12, 100,
                                   0.1, 0.5, /*actions=*/0),
                  ArgumentError);
  CHECK_THROWS_AS(
      TheoremSchedules(ScheduleMode::kTweaked, 2, 12, 100, 0.1),
      ArgumentError);
}

TEST_CASE("accumulators touch only trajectory sequences") {
  RngStream rng(17, kTestStream);
  const Treeplex tp = test::RandomTreeplex(rng, 3, 3, 2);
  EstimatorState state(tp);
  for (int t = 0; t < 10; ++t) {
    const SequenceVector loss_before = state.cum_loss;
    const SequenceVector trans_before = state.cum_transition;
    const int touched = rng.NextInt(tp.NumSequences());
    state.Accumulate(tp, {{touched, 1.0}}, {{touched, 2.0}});
    for (int s = 0; s < tp.NumSequences(); ++s) {
      if (s == touched) continue;
      CHECK(state.cum_loss[s] == loss_before[s]);
      CHECK(state.cum_transition[s] == trans_before[s]);
    }
  }
}

}  // namespace
}  // namespace iig
