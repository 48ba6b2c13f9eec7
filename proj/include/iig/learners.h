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
// The online learners. The Shannon-family algorithms (balanced Shannon,
// adaptive, tweaked, IX-OMD) all run through the fast tree update, which
// rewrites the policy only at the info sets visited in the last episode.
// Balanced-Tsallis re-solves its update as a convex program each episode.

#ifndef IIG_LEARNERS_H_
#define IIG_LEARNERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "iig/estimators.h"
#include "iig/fw_solver.h"
#include "iig/game_tree.h"
#include "iig/treeplex.h"

namespace iig {

enum class Algorithm {
  kBalancedShannon,
  kBalancedTsallis,
  kAdaptive,
  kTweaked,
  kIxOmd,
};

// Selection strings: balanced_shannon, balanced_tsallis, adaptive, tweaked,
// ixomd. Throws ArgumentError listing the valid names.
Algorithm ParseAlgorithm(const std::string& name);
std::string AlgorithmName(Algorithm algo);

struct RegularizerConfig {
  enum class Kind { kTsallis, kShannon };
  Kind kind = Kind::kShannon;
  double tau = 0.5;  // strictly inside (0, 1) for Tsallis
};

// -- Core updates ------------------------------------------------------------

// Backward-pass policy rewrite along one trajectory (the O(H A) update).
// `loss` holds the per-step IX losses aligned with traj.steps; eta_old /
// eta_new are the per-visited-info-set rates before and after the episode,
// also aligned with traj.steps. Info sets off the trajectory are untouched.
// Computed in log space; throws NumericError on non-finite intermediates.
void FastTreeUpdate(const Treeplex& tp, const Trajectory& traj,
                    const std::vector<double>& loss,
                    const std::vector<double>& eta_old,
                    const std::vector<double>& eta_new,
                    const BehavioralPolicy& mu0, BehavioralPolicy* policy);

// Reference solver for update (U2): bottom-up closed-form softmax recursion
// over the dilated objective. `mu0` is a per-sequence reference measure (a
// base policy in learner use; it need not be normalized). Throws
// NumericError if the stationarity residual exceeds tol.
BehavioralPolicy DirectU2Solve(const Treeplex& tp,
                               const SequenceVector& cum_loss,
                               const std::vector<double>& eta_infoset,
                               const BehavioralPolicy& mu0, double tol = 1e-9);

struct U1SolveResult {
  BehavioralPolicy policy;
  RealizationPlan plan;
  double residual = 0.0;  // duality gap of the accepted solve
  int iterations = 0;
};

// Update (U1) with Tsallis regularizer: minimizes <w, L> - sum_h (1/eta_h)
// sum_s (p*_s w_s)^tau over the realization polytope by away-step
// Frank-Wolfe (linear oracle = BestSequenceResponse), duality gap <= tol.
U1SolveResult TsallisU1Solve(const Treeplex& tp, const SequenceVector& cum_loss,
                             const BalancedKernel& kernel,
                             const std::vector<double>& eta_h, double tau,
                             double tol = 1e-8, int max_iterations = 100000,
                             FwActiveSet* warm_start = nullptr);

// Same program with the Shannon regularizer sum (p* w) log(p* w); used as an
// independent route when checking the equivalence with update (U2).
U1SolveResult ShannonU1Solve(const Treeplex& tp, const SequenceVector& cum_loss,
                             const BalancedKernel& kernel,
                             const std::vector<double>& eta_h, double tol = 1e-12,
                             int max_iterations = 200000,
                             FwActiveSet* warm_start = nullptr);

struct DilatedConversion {
  std::vector<double> eta_star;  // per info set
  BehavioralPolicy mu_star;
};

// Converts the balanced per-depth rates into the equivalent dilated form:
// eta*(x) = 1 / (p*_{1:h}(x) sum_{h'>=h} 1/eta_h'), and mu* the argmin of the
// balanced entropy over the polytope. Single traversal, O(A_X).
DilatedConversion BalancedToDilated(const Treeplex& tp,
                                    const BalancedKernel& kernel,
                                    const std::vector<double>& eta_h);

// -- Learner state -------------------------------------------------------------

struct LearnerState {
  const Treeplex* tp = nullptr;
  Algorithm algo = Algorithm::kAdaptive;
  ScheduleParams sched;
  BalancedKernel kernel;            // balanced modes only
  EstimatorState est;

  BehavioralPolicy policy;          // mu^t
  RealizationPlan plan;             // kept consistent with policy
  BehavioralPolicy mu0;             // base policy (anchor of update (U2))
  std::vector<double> rate;         // eta^t per info set
  SequenceVector gamma_seq;         // per-sequence IX values (balanced modes)

  int64_t episode = 1;              // t
  int64_t policy_version = 0;       // bumped when the policy actually moves
  int last_touched_infosets = 0;    // sparse-update audit
  double last_solver_residual = 0.0;
  FwActiveSet fw_warm;              // Tsallis warm start

  explicit LearnerState(const Treeplex& treeplex)
      : tp(&treeplex), est(treeplex) {}
};

LearnerState MakeLearner(const Treeplex& tp, Algorithm algo,
                         const ScheduleParams& sched);

// One episode of feedback: computes the IX estimates, refreshes the adaptive
// rates, applies the fast tree update (Shannon family) or the Tsallis solve,
// and advances t. Numeric errors propagate.
void LearnerStep(LearnerState& state, const Trajectory& traj);

// One IX-OMD step: constant uniform rate, constant IX parameter, previous
// iterate as anchor (alpha == 1 path of the fast update).
void IxomdStep(LearnerState& state, const Trajectory& traj);

}  // namespace iig

#endif  // IIG_LEARNERS_H_
