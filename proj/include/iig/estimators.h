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
// Trajectory-feedback estimators: plain and implicit-exploration (IX) loss
// estimates, transition estimates, their cumulative accumulators, and the
// balanced / adaptive / tweaked rate schedules.

#ifndef IIG_ESTIMATORS_H_
#define IIG_ESTIMATORS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "iig/game_tree.h"
#include "iig/treeplex.h"

namespace iig {

// Sparse per-sequence vector: (sequence index, value) pairs in path order.
using SparseSeqVector = std::vector<std::pair<int, double>>;

// Cumulative per-player estimator state. Only sequences on the episode's
// trajectory change at each step.
struct EstimatorState {
  explicit EstimatorState(const Treeplex& tp)
      : cum_loss(tp.NumSequences(), 0.0),
        cum_transition(tp.NumSequences(), 0.0),
        cum_transition_infoset(tp.NumInfoSets(), 0.0),
        episodes(0) {}

  SequenceVector cum_loss;                    // \tilde L
  SequenceVector cum_transition;              // \tilde P per sequence
  std::vector<double> cum_transition_infoset; // \tilde P per info set
                                              // (mean over its actions)
  int64_t episodes;

  // Adds sparse episode estimates; maintains the per-info-set action mean
  // incrementally.
  void Accumulate(const Treeplex& tp, const SparseSeqVector& loss,
                  const SparseSeqVector& transition);
};

// IX loss estimate: (1 - r_h) / (plan + gamma) on visited sequences, zero
// elsewhere. gamma = 0 gives the unbiased estimate and requires a strictly
// positive plan on the trajectory (NumericError otherwise).
SparseSeqVector IxLossEstimate(const Trajectory& traj,
                               const RealizationPlan& plan,
                               const SequenceVector& gamma_of);

// Transition estimate: numerator 1 instead of (1 - r_h).
SparseSeqVector IxTransitionEstimate(const Trajectory& traj,
                                     const RealizationPlan& plan,
                                     const SequenceVector& gamma_of);

// gamma*_h(x) = gamma_h / p*_{1:h}(x), broadcast to the info set's sequences.
SequenceVector BalancedIxParams(const Treeplex& tp,
                                const BalancedKernel& kernel,
                                const std::vector<double>& gamma_h);

// gamma^t(x, a) = gamma / (1 + \tilde P(x, a)).
SequenceVector AdaptiveIxParams(const Treeplex& tp, const EstimatorState& state,
                                double gamma);

// eta^t(x) = min over x and all its treeplex descendants of
// eta / (1 + \tilde P(x')); one bottom-up pass.
std::vector<double> AdaptiveLearningRates(const Treeplex& tp,
                                          const EstimatorState& state,
                                          double eta);

// Rates eta / sqrt(1 + \tilde P(x)) with the same min-over-descendants
// monotonization; IX values gamma / sqrt(1 + \tilde P(x, a)).
std::pair<std::vector<double>, SequenceVector> TweakedSchedule(
    const Treeplex& tp, const EstimatorState& state, double eta, double gamma);

enum class ScheduleMode {
  kTheoremBalancedTsallis,
  kTheoremBalancedShannon,
  kFixedActionSet,
  kAdaptive,
  kTweaked,
  kManual,
};

struct ScheduleParams {
  ScheduleMode mode = ScheduleMode::kManual;
  double eta = 0.0;           // global learning rate (adaptive/tweaked/manual)
  double gamma = 0.0;         // global IX base
  double delta = 0.0;
  double tsallis_q = 0.5;
  double iota = 0.0;          // log(3 A_X / delta)
  double iota_prime = 0.0;    // log(3 A_X T / delta)
  double l2 = 0.0;            // 1 + log2(1 + T)
  std::vector<double> eta_h;  // per depth, balanced modes
  std::vector<double> gamma_h;
};

// Fills the schedule constants for the theorem-backed modes. `actions` is the
// constant action-set size, required by kFixedActionSet only. Pure function.
ScheduleParams TheoremSchedules(ScheduleMode mode, int depth_h, int total_ax,
                                int64_t episodes_t, double delta,
                                double tsallis_q = 0.5, int actions = 0);

}  // namespace iig

#endif  // IIG_ESTIMATORS_H_
