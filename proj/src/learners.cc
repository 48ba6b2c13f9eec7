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

#include "iig/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iig/errors.h"

namespace iig {

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "balanced_shannon") return Algorithm::kBalancedShannon;
  if (name == "balanced_tsallis") return Algorithm::kBalancedTsallis;
  if (name == "adaptive") return Algorithm::kAdaptive;
  if (name == "tweaked") return Algorithm::kTweaked;
  if (name == "ixomd") return Algorithm::kIxOmd;
  throw ArgumentError(
      "unknown algorithm '" + name +
      "'; valid names: balanced_shannon, balanced_tsallis, adaptive, "
      "tweaked, ixomd");
}

std::string AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kBalancedShannon: return "balanced_shannon";
    case Algorithm::kBalancedTsallis: return "balanced_tsallis";
    case Algorithm::kAdaptive: return "adaptive";
    case Algorithm::kTweaked: return "tweaked";
    case Algorithm::kIxOmd: return "ixomd";
  }
  return "?";
}

// -- Fast tree update -----------------------------------------------------------

void FastTreeUpdate(const Treeplex& tp, const Trajectory& traj,
                    const std::vector<double>& loss,
                    const std::vector<double>& eta_old,
                    const std::vector<double>& eta_new,
                    const BehavioralPolicy& mu0, BehavioralPolicy* policy) {
  const int steps = static_cast<int>(traj.steps.size());
  if (static_cast<int>(loss.size()) != steps ||
      static_cast<int>(eta_old.size()) != steps ||
      static_cast<int>(eta_new.size()) != steps) {
    throw ArgumentError("fast tree update: misaligned trajectory inputs");
  }
  double z_log = 0.0;     // log Z at the child visited info set
  double z_rate = 1.0;    // its (new) learning rate
  bool have_child = false;
  std::vector<double> logw;
  for (int i = steps - 1; i >= 0; --i) {
    const TrajectoryStep& step = traj.steps[i];
    const InfoSetRecord& rec = tp.InfoSet(step.infoset);
    if (!(eta_old[i] > 0.0) || !(eta_new[i] > 0.0)) {
      throw NumericError("fast tree update: nonpositive learning rate");
    }
    const double alpha = eta_new[i] / eta_old[i];
    const double corrected =
        loss[i] - (have_child ? z_log / z_rate : 0.0);

    logw.assign(rec.num_actions, 0.0);
    double max_logw = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < rec.num_actions; ++a) {
      const int seq = rec.first_seq + a;
      double lw = alpha * std::log(policy->probs[seq]);
      if (alpha != 1.0) lw += (1.0 - alpha) * std::log(mu0.probs[seq]);
      if (a == step.action) lw -= eta_new[i] * corrected;
      logw[a] = lw;
      max_logw = std::max(max_logw, lw);
    }
    if (!std::isfinite(max_logw)) {
      throw NumericError("fast tree update: degenerate local policy");
    }
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) {
      sum += std::exp(logw[a] - max_logw);
    }
    const double log_z = max_logw + std::log(sum);
    if (!std::isfinite(log_z)) {
      throw NumericError("fast tree update: overflow in normalizer");
    }
    for (int a = 0; a < rec.num_actions; ++a) {
      policy->probs[rec.first_seq + a] = std::exp(logw[a] - log_z);
    }
    z_log = log_z;
    z_rate = eta_new[i];
    have_child = true;
  }
}

// -- Direct (U2) solve ----------------------------------------------------------

BehavioralPolicy DirectU2Solve(const Treeplex& tp,
                               const SequenceVector& cum_loss,
                               const std::vector<double>& eta_infoset,
                               const BehavioralPolicy& mu0, double tol) {
  if (static_cast<int>(cum_loss.size()) != tp.NumSequences()) {
    throw StructuralError("direct u2: loss layout mismatch");
  }
  if (!(tol > 0.0)) throw ArgumentError("direct u2: tol must be > 0");
  const int n = tp.NumInfoSets();
  BehavioralPolicy out;
  out.probs.assign(tp.NumSequences(), 0.0);
  std::vector<double> value(n, 0.0);  // optimal local objective, unit reach
  std::vector<double> logw;
  for (int x = n - 1; x >= 0; --x) {
    const InfoSetRecord& rec = tp.InfoSet(x);
    const double eta = eta_infoset[x];
    if (!(eta > 0.0)) throw NumericError("direct u2: nonpositive rate");
    logw.assign(rec.num_actions, 0.0);
    double max_logw = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < rec.num_actions; ++a) {
      const int seq = rec.first_seq + a;
      double q = cum_loss[seq];
      for (int child : tp.SeqChildren(seq)) q += value[child];
      logw[a] = std::log(mu0.probs[seq]) - eta * q;
      max_logw = std::max(max_logw, logw[a]);
    }
    if (!std::isfinite(max_logw)) {
      throw NumericError("direct u2: degenerate reference measure");
    }
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) {
      sum += std::exp(logw[a] - max_logw);
    }
    const double log_z = max_logw + std::log(sum);
    for (int a = 0; a < rec.num_actions; ++a) {
      out.probs[rec.first_seq + a] = std::exp(logw[a] - log_z);
    }
    value[x] = -log_z / eta;
  }
  return out;
}

// -- (U1) solves via Frank-Wolfe ---------------------------------------------

namespace {

constexpr double kMassFloor = 1e-300;

// <w, L> - sum_s (p*_s w_s)^tau / eta_{depth(s)}
class TsallisObjective : public PolytopeObjective {
 public:
  TsallisObjective(const Treeplex& tp, const SequenceVector& cum_loss,
                   const BalancedKernel& kernel,
                   const std::vector<double>& eta_h, double tau)
      : loss_(cum_loss), tau_(tau) {
    weight_.resize(tp.NumSequences());
    inv_eta_.resize(tp.NumSequences());
    for (int x = 0; x < tp.NumInfoSets(); ++x) {
      const auto& rec = tp.InfoSet(x);
      for (int a = 0; a < rec.num_actions; ++a) {
        weight_[rec.first_seq + a] = kernel.reach[x];
        inv_eta_[rec.first_seq + a] = 1.0 / eta_h[rec.depth - 1];
      }
    }
  }

  double Value(const SequenceVector& w) const override {
    double total = 0.0;
    for (size_t s = 0; s < w.size(); ++s) {
      total += w[s] * loss_[s];
      total -= std::pow(weight_[s] * w[s], tau_) * inv_eta_[s];
    }
    return total;
  }

  void Gradient(const SequenceVector& w, SequenceVector* out) const override {
    for (size_t s = 0; s < w.size(); ++s) {
      const double ws = std::max(w[s], kMassFloor);
      (*out)[s] = loss_[s] - tau_ * inv_eta_[s] * std::pow(weight_[s], tau_) *
                                 std::pow(ws, tau_ - 1.0);
    }
  }

 private:
  SequenceVector loss_;
  std::vector<double> weight_;   // p*_{1:h}(x) per sequence
  std::vector<double> inv_eta_;  // 1/eta_h per sequence
  double tau_;
};

// <w, L> + sum_s (p*_s w_s) log(p*_s w_s) / eta_{depth(s)}
class ShannonObjective : public PolytopeObjective {
 public:
  ShannonObjective(const Treeplex& tp, const SequenceVector& cum_loss,
                   const BalancedKernel& kernel,
                   const std::vector<double>& eta_h)
      : loss_(cum_loss) {
    weight_.resize(tp.NumSequences());
    inv_eta_.resize(tp.NumSequences());
    for (int x = 0; x < tp.NumInfoSets(); ++x) {
      const auto& rec = tp.InfoSet(x);
      for (int a = 0; a < rec.num_actions; ++a) {
        weight_[rec.first_seq + a] = kernel.reach[x];
        inv_eta_[rec.first_seq + a] = 1.0 / eta_h[rec.depth - 1];
      }
    }
  }

  double Value(const SequenceVector& w) const override {
    double total = 0.0;
    for (size_t s = 0; s < w.size(); ++s) {
      total += w[s] * loss_[s];
      const double m = weight_[s] * w[s];
      if (m > 0.0) total += m * std::log(m) * inv_eta_[s];
    }
    return total;
  }

  void Gradient(const SequenceVector& w, SequenceVector* out) const override {
    for (size_t s = 0; s < w.size(); ++s) {
      const double m = weight_[s] * std::max(w[s], kMassFloor);
      (*out)[s] = loss_[s] + weight_[s] * (1.0 + std::log(m)) * inv_eta_[s];
    }
  }

 private:
  SequenceVector loss_;
  std::vector<double> weight_;
  std::vector<double> inv_eta_;
};

U1SolveResult FinishU1(const Treeplex& tp, FwResult fw) {
  U1SolveResult out;
  out.residual = fw.gap;
  out.iterations = fw.iterations;
  out.policy = RealizationToBehavioral(tp, fw.plan, UniformPolicy(tp));
  out.plan = std::move(fw.plan);
  return out;
}

}  // namespace

U1SolveResult TsallisU1Solve(const Treeplex& tp, const SequenceVector& cum_loss,
                             const BalancedKernel& kernel,
                             const std::vector<double>& eta_h, double tau,
                             double tol, int max_iterations,
                             FwActiveSet* warm_start) {
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw ArgumentError("tsallis solve: tau must be inside (0, 1)");
  }
  if (!(tol > 0.0)) throw ArgumentError("tsallis solve: tol must be > 0");
  TsallisObjective objective(tp, cum_loss, kernel, eta_h, tau);
  return FinishU1(tp,
                  FrankWolfeSolve(tp, objective, tol, max_iterations,
                                  warm_start));
}

U1SolveResult ShannonU1Solve(const Treeplex& tp, const SequenceVector& cum_loss,
                             const BalancedKernel& kernel,
                             const std::vector<double>& eta_h, double tol,
                             int max_iterations, FwActiveSet* warm_start) {
  if (!(tol > 0.0)) throw ArgumentError("shannon solve: tol must be > 0");
  ShannonObjective objective(tp, cum_loss, kernel, eta_h);
  // Best effort at the gap floor: the caller inspects `residual`.
  return FinishU1(tp, FrankWolfeSolve(tp, objective, tol, max_iterations,
                                      warm_start, /*strict=*/false));
}

// -- Balanced -> dilated conversion --------------------------------------------

DilatedConversion BalancedToDilated(const Treeplex& tp,
                                    const BalancedKernel& kernel,
                                    const std::vector<double>& eta_h) {
  const int depth_h = tp.MaxDepth();
  if (static_cast<int>(eta_h.size()) < depth_h) {
    throw ArgumentError("balanced_to_dilated: need an eta per depth");
  }
  for (int d = 0; d < depth_h; ++d) {
    if (!(eta_h[d] > 0.0)) {
      throw ArgumentError("balanced_to_dilated: eta_h must be > 0");
    }
  }
  // suffix[d] = sum_{h = d+1..H} 1/eta_h (0-based d).
  std::vector<double> suffix(depth_h + 1, 0.0);
  for (int d = depth_h - 1; d >= 0; --d) {
    suffix[d] = suffix[d + 1] + 1.0 / eta_h[d];
  }
  DilatedConversion conv;
  conv.eta_star.resize(tp.NumInfoSets());
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    conv.eta_star[x] =
        1.0 / (kernel.reach[x] * suffix[tp.InfoSet(x).depth - 1]);
  }
  // mu* = argmin over the polytope of sum (p* w / eta_h) log(p* w). With the
  // dilated rates eta* this is a (U2) solve against the reference measure 1
  // and the linear term (p* log p*) / eta_h.
  SequenceVector linear(tp.NumSequences());
  BehavioralPolicy ones;
  ones.probs.assign(tp.NumSequences(), 1.0);
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    const double v = kernel.reach[x] * std::log(kernel.reach[x]) /
                     eta_h[rec.depth - 1];
    for (int a = 0; a < rec.num_actions; ++a) linear[rec.first_seq + a] = v;
  }
  conv.mu_star = DirectU2Solve(tp, linear, conv.eta_star, ones);
  return conv;
}

// -- Learner ------------------------------------------------------------------

namespace {

std::vector<double> FillPerDepth(double value, int depth_h) {
  return std::vector<double>(depth_h, value);
}

// Recomputes plan mass below (and including) an info set whose local policy
// or upstream mass changed.
void RefreshPlanSubtree(const Treeplex& tp, const BehavioralPolicy& policy,
                        int top_infoset, RealizationPlan* plan) {
  std::vector<int> stack = {top_infoset};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const InfoSetRecord& rec = tp.InfoSet(x);
    const double parent = rec.parent_seq == kRootParent
                              ? 1.0
                              : plan->mass[rec.parent_seq];
    for (int a = 0; a < rec.num_actions; ++a) {
      const int seq = rec.first_seq + a;
      plan->mass[seq] = parent * policy.probs[seq];
      for (int child : tp.SeqChildren(seq)) stack.push_back(child);
    }
  }
}

// Lowers rate[x] along the visited path after \tilde P grew; the minimum over
// the subtree can only change at the visited info sets (their ancestors are
// the shallower path entries).
void RefreshRatesAlongPath(const Treeplex& tp, const LearnerState& state,
                           const Trajectory& traj, bool sqrt_decay,
                           std::vector<double>* rate) {
  for (int i = static_cast<int>(traj.steps.size()) - 1; i >= 0; --i) {
    const int x = traj.steps[i].infoset;
    const InfoSetRecord& rec = tp.InfoSet(x);
    const double own =
        sqrt_decay
            ? state.sched.eta /
                  std::sqrt(1.0 + state.est.cum_transition_infoset[x])
            : state.sched.eta / (1.0 + state.est.cum_transition_infoset[x]);
    double value = own;
    for (int a = 0; a < rec.num_actions; ++a) {
      for (int child : tp.SeqChildren(rec.first_seq + a)) {
        value = std::min(value, (*rate)[child]);
      }
    }
    (*rate)[x] = value;
  }
}

bool TouchesRealChoice(const Treeplex& tp, const Trajectory& traj) {
  for (const auto& step : traj.steps) {
    if (tp.InfoSet(step.infoset).num_actions > 1) return true;
  }
  return false;
}

}  // namespace

LearnerState MakeLearner(const Treeplex& tp, Algorithm algo,
                         const ScheduleParams& sched) {
  LearnerState state(tp);
  state.algo = algo;
  state.sched = sched;
  const int depth_h = tp.MaxDepth();

  switch (algo) {
    case Algorithm::kBalancedShannon:
    case Algorithm::kBalancedTsallis: {
      state.kernel = ComputeBalancedKernel(tp);
      if (state.sched.eta_h.empty()) {
        if (!(sched.eta > 0.0) || !(sched.gamma >= 0.0)) {
          throw ArgumentError("learner: balanced modes need eta > 0");
        }
        state.sched.eta_h = FillPerDepth(sched.eta, depth_h);
        state.sched.gamma_h = FillPerDepth(sched.gamma, depth_h);
      }
      if (static_cast<int>(state.sched.eta_h.size()) < depth_h) {
        throw ArgumentError("learner: schedule shallower than the treeplex");
      }
      // A_X = 1 degenerates the Shannon rate to zero; the polytope is a
      // single point there, so any positive rate is equivalent.
      for (double& eta : state.sched.eta_h) {
        if (eta <= 0.0) {
          if (tp.NumSequences() != tp.NumInfoSets()) {
            throw ArgumentError("learner: nonpositive schedule rate");
          }
          eta = 1.0;
        }
      }
      state.gamma_seq = BalancedIxParams(tp, state.kernel, state.sched.gamma_h);
      if (algo == Algorithm::kBalancedShannon) {
        DilatedConversion conv =
            BalancedToDilated(tp, state.kernel, state.sched.eta_h);
        state.rate = std::move(conv.eta_star);
        state.mu0 = conv.mu_star;
        state.policy = state.mu0;
      } else {
        U1SolveResult first =
            TsallisU1Solve(tp, SequenceVector(tp.NumSequences(), 0.0),
                           state.kernel, state.sched.eta_h, sched.tsallis_q,
                           1e-8, 100000, &state.fw_warm);
        state.policy = std::move(first.policy);
        state.last_solver_residual = first.residual;
        state.mu0 = UniformPolicy(tp);
      }
      break;
    }
    case Algorithm::kAdaptive:
    case Algorithm::kTweaked: {
      if (!(sched.eta > 0.0) || !(sched.gamma > 0.0)) {
        throw ArgumentError("learner: adaptive modes need eta, gamma > 0");
      }
      state.mu0 = UniformPolicy(tp);
      state.policy = state.mu0;
      state.rate.assign(tp.NumInfoSets(), sched.eta);
      break;
    }
    case Algorithm::kIxOmd: {
      if (!(sched.eta > 0.0) || !(sched.gamma >= 0.0)) {
        throw ArgumentError("learner: ixomd needs eta > 0");
      }
      state.mu0 = UniformPolicy(tp);
      state.policy = state.mu0;
      state.rate.assign(tp.NumInfoSets(), sched.eta);
      break;
    }
  }
  state.plan = BehavioralToRealization(tp, state.policy);
  return state;
}

namespace {

void ShannonFamilyStep(LearnerState& state, const Trajectory& traj) {
  const Treeplex& tp = *state.tp;
  const int steps = static_cast<int>(traj.steps.size());
  const bool adaptive = state.algo == Algorithm::kAdaptive;
  const bool tweaked = state.algo == Algorithm::kTweaked;

  // IX parameters and estimates for this episode, from pre-episode state.
  std::vector<double> loss(steps), eta_old(steps), eta_new(steps);
  SparseSeqVector sparse_loss(steps), sparse_trans;
  for (int i = 0; i < steps; ++i) {
    const TrajectoryStep& step = traj.steps[i];
    double gamma;
    if (adaptive) {
      gamma = state.sched.gamma / (1.0 + state.est.cum_transition[step.seq]);
    } else if (tweaked) {
      gamma = state.sched.gamma /
              std::sqrt(1.0 + state.est.cum_transition[step.seq]);
    } else {
      gamma = state.gamma_seq.empty() ? state.sched.gamma
                                      : state.gamma_seq[step.seq];
    }
    const double denom = state.plan.mass[step.seq] + gamma;
    if (!(denom > 0.0)) {
      throw NumericError("learner: zero IX denominator");
    }
    loss[i] = (1.0 - step.reward) / denom;
    sparse_loss[i] = {step.seq, loss[i]};
    if (adaptive || tweaked) {
      sparse_trans.emplace_back(step.seq, 1.0 / denom);
    }
    eta_old[i] = state.rate[step.infoset];
  }

  state.est.Accumulate(tp, sparse_loss, sparse_trans);

  if (adaptive || tweaked) {
    RefreshRatesAlongPath(tp, state, traj, /*sqrt_decay=*/tweaked,
                          &state.rate);
  }
  for (int i = 0; i < steps; ++i) eta_new[i] = state.rate[traj.steps[i].infoset];

  FastTreeUpdate(tp, traj, loss, eta_old, eta_new, state.mu0, &state.policy);
  state.last_touched_infosets = steps;
  if (steps > 0) {
    RefreshPlanSubtree(tp, state.policy, traj.steps.front().infoset,
                       &state.plan);
    if (TouchesRealChoice(tp, traj)) ++state.policy_version;
  }
  ++state.episode;
}

void TsallisStep(LearnerState& state, const Trajectory& traj) {
  const Treeplex& tp = *state.tp;
  SparseSeqVector sparse_loss;
  sparse_loss.reserve(traj.steps.size());
  for (const auto& step : traj.steps) {
    const double gamma = state.gamma_seq[step.seq];
    const double denom = state.plan.mass[step.seq] + gamma;
    if (!(denom > 0.0)) throw NumericError("learner: zero IX denominator");
    sparse_loss.emplace_back(step.seq, (1.0 - step.reward) / denom);
  }
  state.est.Accumulate(tp, sparse_loss, {});

  U1SolveResult solved =
      TsallisU1Solve(tp, state.est.cum_loss, state.kernel, state.sched.eta_h,
                     state.sched.tsallis_q, 1e-8, 100000, &state.fw_warm);
  state.policy = std::move(solved.policy);
  state.plan = BehavioralToRealization(tp, state.policy);
  state.last_solver_residual = solved.residual;
  state.last_touched_infosets = tp.NumInfoSets();
  ++state.policy_version;
  ++state.episode;
}

}  // namespace

void LearnerStep(LearnerState& state, const Trajectory& traj) {
  if (state.algo == Algorithm::kBalancedTsallis) {
    TsallisStep(state, traj);
  } else {
    ShannonFamilyStep(state, traj);
  }
}

void IxomdStep(LearnerState& state, const Trajectory& traj) {
  if (state.algo != Algorithm::kIxOmd) {
    throw ArgumentError("ixomd_step: learner not configured for ixomd");
  }
  ShannonFamilyStep(state, traj);
}

}  // namespace iig
