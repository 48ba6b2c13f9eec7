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
#include <string>

#include "iig/errors.h"

namespace iig {

void EstimatorState::Accumulate(const Treeplex& tp, const SparseSeqVector& loss,
                                const SparseSeqVector& transition) {
  for (const auto& [seq, value] : loss) cum_loss[seq] += value;
  for (const auto& [seq, value] : transition) {
    cum_transition[seq] += value;
    const int x = tp.SeqInfoSet(seq);
    cum_transition_infoset[x] += value / tp.InfoSet(x).num_actions;
  }
  ++episodes;
}

namespace {

SparseSeqVector IxEstimate(const Trajectory& traj, const RealizationPlan& plan,
                           const SequenceVector& gamma_of,
                           bool loss_numerator) {
  SparseSeqVector out;
  out.reserve(traj.steps.size());
  for (const auto& step : traj.steps) {
    const double denom = plan.mass[step.seq] + gamma_of[step.seq];
    if (!(denom > 0.0)) {
      throw NumericError(
          "ix estimate: zero denominator on visited sequence " +
          std::to_string(step.seq));
    }
    const double numer = loss_numerator ? 1.0 - step.reward : 1.0;
    out.emplace_back(step.seq, numer / denom);
  }
  return out;
}

}  // namespace

SparseSeqVector IxLossEstimate(const Trajectory& traj,
                               const RealizationPlan& plan,
                               const SequenceVector& gamma_of) {
  return IxEstimate(traj, plan, gamma_of, /*loss_numerator=*/true);
}

SparseSeqVector IxTransitionEstimate(const Trajectory& traj,
                                     const RealizationPlan& plan,
                                     const SequenceVector& gamma_of) {
  return IxEstimate(traj, plan, gamma_of, /*loss_numerator=*/false);
}

SequenceVector BalancedIxParams(const Treeplex& tp,
                                const BalancedKernel& kernel,
                                const std::vector<double>& gamma_h) {
  if (static_cast<int>(gamma_h.size()) < tp.MaxDepth()) {
    throw ArgumentError("balanced ix: need a gamma per depth");
  }
  SequenceVector out(tp.NumSequences());
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    const double value = gamma_h[rec.depth - 1] / kernel.reach[x];
    for (int a = 0; a < rec.num_actions; ++a) out[rec.first_seq + a] = value;
  }
  return out;
}

SequenceVector AdaptiveIxParams(const Treeplex& tp, const EstimatorState& state,
                                double gamma) {
  if (!(gamma > 0.0)) throw ArgumentError("adaptive ix: gamma must be > 0");
  SequenceVector out(tp.NumSequences());
  for (int s = 0; s < tp.NumSequences(); ++s) {
    out[s] = gamma / (1.0 + state.cum_transition[s]);
  }
  return out;
}

std::vector<double> AdaptiveLearningRates(const Treeplex& tp,
                                          const EstimatorState& state,
                                          double eta) {
  if (!(eta > 0.0)) throw ArgumentError("adaptive rates: eta must be > 0");
  std::vector<double> rates(tp.NumInfoSets());
  // The layout is topologically sorted, so a reverse scan sees every child
  // before its parent; never-visited descendants contribute eta and so never
  // tighten the minimum below it.
  for (int x = tp.NumInfoSets() - 1; x >= 0; --x) {
    const auto& rec = tp.InfoSet(x);
    double value = eta / (1.0 + state.cum_transition_infoset[x]);
    for (int a = 0; a < rec.num_actions; ++a) {
      for (int child : tp.SeqChildren(rec.first_seq + a)) {
        value = std::min(value, rates[child]);
      }
    }
    rates[x] = value;
  }
  return rates;
}

std::pair<std::vector<double>, SequenceVector> TweakedSchedule(
    const Treeplex& tp, const EstimatorState& state, double eta, double gamma) {
  if (!(eta > 0.0) || !(gamma > 0.0)) {
    throw ArgumentError("tweaked schedule: eta and gamma must be > 0");
  }
  std::vector<double> rates(tp.NumInfoSets());
  for (int x = tp.NumInfoSets() - 1; x >= 0; --x) {
    const auto& rec = tp.InfoSet(x);
    double value = eta / std::sqrt(1.0 + state.cum_transition_infoset[x]);
    for (int a = 0; a < rec.num_actions; ++a) {
      for (int child : tp.SeqChildren(rec.first_seq + a)) {
        value = std::min(value, rates[child]);
      }
    }
    rates[x] = value;
  }
  SequenceVector ix(tp.NumSequences());
  for (int s = 0; s < tp.NumSequences(); ++s) {
    ix[s] = gamma / std::sqrt(1.0 + state.cum_transition[s]);
  }
  return {std::move(rates), std::move(ix)};
}

ScheduleParams TheoremSchedules(ScheduleMode mode, int depth_h, int total_ax,
                                int64_t episodes_t, double delta,
                                double tsallis_q, int actions) {
  if (episodes_t < 1) throw ArgumentError("schedule: T must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ArgumentError("schedule: delta must be in (0, 1)");
  }
  if (depth_h < 1 || total_ax < 1) {
    throw ArgumentError("schedule: bad treeplex dimensions");
  }
  const double h = depth_h;
  const double ax = total_ax;
  const double t = static_cast<double>(episodes_t);

  ScheduleParams params;
  params.mode = mode;
  params.delta = delta;
  params.tsallis_q = tsallis_q;
  params.iota = std::log(3.0 * ax / delta);
  params.iota_prime = std::log(3.0 * ax * t / delta);
  params.l2 = 1.0 + std::log2(1.0 + t);

  switch (mode) {
    case ScheduleMode::kTheoremBalancedTsallis: {
      if (!(tsallis_q > 0.0) || !(tsallis_q < 1.0)) {
        throw ArgumentError("schedule: tsallis exponent must be in (0, 1)");
      }
      const double gamma = std::sqrt(h * params.iota / (2.0 * ax * t));
      const double eta = std::sqrt(2.0 * tsallis_q * (1.0 - tsallis_q) / t) *
                         std::pow(h / ax, tsallis_q - 0.5);
      params.eta_h.assign(depth_h, eta);
      params.gamma_h.assign(depth_h, gamma);
      params.eta = eta;
      params.gamma = gamma;
      break;
    }
    case ScheduleMode::kTheoremBalancedShannon: {
      const double gamma = std::sqrt(h * params.iota / (2.0 * ax * t));
      const double eta = std::sqrt(2.0 * h * std::log(ax) / (ax * t));
      params.eta_h.assign(depth_h, eta);
      params.gamma_h.assign(depth_h, gamma);
      params.eta = eta;
      params.gamma = gamma;
      break;
    }
    case ScheduleMode::kFixedActionSet: {
      if (actions < 1) {
        throw ArgumentError(
            "schedule: fixed-action mode needs the action count A");
      }
      params.eta_h.resize(depth_h);
      params.gamma_h.resize(depth_h);
      for (int d = 1; d <= depth_h; ++d) {
        const double power = std::pow(actions, h - d);
        params.gamma_h[d - 1] =
            std::sqrt(power * params.iota / (2.0 * ax * t));
        params.eta_h[d - 1] =
            std::sqrt(2.0 * power * std::log(ax) / (ax * t));
      }
      params.eta = params.eta_h[0];
      params.gamma = params.gamma_h[0];
      break;
    }
    case ScheduleMode::kAdaptive: {
      params.eta = 2.0 * std::sqrt(params.iota_prime * t / (params.l2 * ax));
      params.gamma =
          std::sqrt(2.0 * params.iota_prime * h * t / (params.l2 * ax));
      break;
    }
    case ScheduleMode::kTweaked:
      throw ArgumentError(
          "schedule: tweaked mode has no theorem-backed constants; pass "
          "eta/gamma explicitly");
    case ScheduleMode::kManual:
      throw ArgumentError("schedule: manual mode takes eta/gamma directly");
  }
  return params;
}

}  // namespace iig
