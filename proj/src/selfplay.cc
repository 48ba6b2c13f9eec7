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

#include "iig/selfplay.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "iig/errors.h"
#include "iig/games.h"
#include "iig/rng.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iig {

// -- Average tracker ------------------------------------------------------------

void AverageRealizationTracker::FlushInfoSet(int x, int64_t t,
                                             const BehavioralPolicy& policy) {
  const InfoSetRecord& rec = tp_->InfoSet(x);
  const double parent_now = rec.parent_seq == kRootParent
                                ? static_cast<double>(t)
                                : acc_[rec.parent_seq];
  const double grown = parent_now - last_parent_acc_[x];
  if (grown != 0.0) {
    for (int a = 0; a < rec.num_actions; ++a) {
      const int seq = rec.first_seq + a;
      acc_[seq] += grown * policy.probs[seq];
    }
  }
  last_parent_acc_[x] = parent_now;
}

void AverageRealizationTracker::FlushPath(const Trajectory& traj, int64_t t,
                                          const BehavioralPolicy& policy) {
  for (const auto& step : traj.steps) FlushInfoSet(step.infoset, t, policy);
}

void AverageRealizationTracker::FlushAll(int64_t t,
                                         const BehavioralPolicy& policy) {
  for (int x = 0; x < tp_->NumInfoSets(); ++x) FlushInfoSet(x, t, policy);
}

RealizationPlan AverageRealizationTracker::Average(int64_t t) const {
  RealizationPlan avg;
  avg.mass = acc_;
  const double inv = t > 0 ? 1.0 / static_cast<double>(t) : 0.0;
  for (double& v : avg.mass) v *= inv;
  return avg;
}

// -- Run ------------------------------------------------------------------------

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

ScheduleParams ScheduleFor(Algorithm algo, const Treeplex& tp,
                           const RunConfig& cfg, int64_t phase_episodes) {
  if (cfg.theorem_schedule) {
    switch (algo) {
      case Algorithm::kBalancedShannon:
        return TheoremSchedules(ScheduleMode::kTheoremBalancedShannon,
                                tp.MaxDepth(), tp.NumSequences(),
                                phase_episodes, cfg.delta);
      case Algorithm::kBalancedTsallis:
        return TheoremSchedules(ScheduleMode::kTheoremBalancedTsallis,
                                tp.MaxDepth(), tp.NumSequences(),
                                phase_episodes, cfg.delta, cfg.tsallis_q);
      case Algorithm::kAdaptive:
        return TheoremSchedules(ScheduleMode::kAdaptive, tp.MaxDepth(),
                                tp.NumSequences(), phase_episodes, cfg.delta);
      case Algorithm::kTweaked:
      case Algorithm::kIxOmd:
        throw ArgumentError(
            "no theorem schedule for " +
            AlgorithmName(algo) + "; pass --eta/--gamma instead");
    }
  }
  ScheduleParams params;
  params.mode = algo == Algorithm::kAdaptive  ? ScheduleMode::kAdaptive
                : algo == Algorithm::kTweaked ? ScheduleMode::kTweaked
                                              : ScheduleMode::kManual;
  params.eta = cfg.eta;
  params.gamma = cfg.gamma;
  params.delta = cfg.delta;
  params.tsallis_q = cfg.tsallis_q;
  return params;
}

// Per-player oracle-regret accumulator. Folded losses are recomputed only
// when the opponent's policy actually changed; unchanged episodes batch into
// a pending multiplier.
struct RegretAccumulator {
  explicit RegretAccumulator(const Treeplex& tp)
      : cum_loss(tp.NumSequences(), 0.0) {}

  SequenceVector cum_loss;
  SequenceVector cached_loss;
  int64_t cached_version = -1;
  int64_t pending = 0;
  double played = 0.0;  // sum_t <mu^t, l^t>

  void Settle() {
    if (pending == 0) return;
    for (size_t s = 0; s < cum_loss.size(); ++s) {
      cum_loss[s] += static_cast<double>(pending) * cached_loss[s];
    }
    pending = 0;
  }

  void Observe(const GameTree& game, int player, const LearnerState& self,
               const LearnerState& opponent) {
    if (opponent.policy_version != cached_version) {
      Settle();
      cached_loss =
          ComputeFoldedModel(game, opponent.policy, player).loss;
      cached_version = opponent.policy_version;
    }
    ++pending;
    double dot = 0.0;
    for (size_t s = 0; s < cached_loss.size(); ++s) {
      dot += self.plan.mass[s] * cached_loss[s];
    }
    played += dot;
  }

  double Regret(const Treeplex& tp) {
    Settle();
    return played - BestSequenceResponse(tp, cum_loss).value;
  }
};

}  // namespace

RunRecord RunSelfplayOnGame(const GameTree& game, const RunConfig& cfg) {
  if (cfg.episodes < 1) throw ArgumentError("run: T must be >= 1");
  const int64_t eval_every =
      cfg.eval_every > 0 ? cfg.eval_every : std::max<int64_t>(1, cfg.episodes / 20);
  if (eval_every < 1) throw ArgumentError("run: eval_every must be >= 1");

  const Treeplex& tpx = game.PlayerTreeplex(kMaxPlayer);
  const Treeplex& tpy = game.PlayerTreeplex(kMinPlayer);
  const Algorithm algo[2] = {ParseAlgorithm(cfg.algo_max),
                             ParseAlgorithm(cfg.algo_min)};

  auto make_learners = [&](int64_t phase_episodes) {
    return std::array<LearnerState, 2>{
        MakeLearner(tpx, algo[0], ScheduleFor(algo[0], tpx, cfg, phase_episodes)),
        MakeLearner(tpy, algo[1], ScheduleFor(algo[1], tpy, cfg, phase_episodes))};
  };

  int64_t phase_len = cfg.doubling ? 1 : cfg.episodes;
  int64_t phase_left = phase_len;
  auto learners = make_learners(phase_len);

  AverageRealizationTracker tracker_max(tpx);
  AverageRealizationTracker tracker_min(tpy);
  RegretAccumulator regret_max(tpx);
  RegretAccumulator regret_min(tpy);
  const bool track_max = cfg.track_regret != RegretTracking::kNone;
  const bool track_min = cfg.track_regret == RegretTracking::kBoth;
  const BehavioralPolicy uniform_max = UniformPolicy(tpx);
  const BehavioralPolicy uniform_min = UniformPolicy(tpy);

  RngStream episode_rng(cfg.seed, kEpisodeStream);
  RunRecord record;
  const auto start = std::chrono::steady_clock::now();

  for (int64_t t = 1; t <= cfg.episodes; ++t) {
    EpisodeResult episode = SampleEpisode(game, learners[0].policy,
                                          learners[1].policy, episode_rng);
    if (track_max) {
      regret_max.Observe(game, kMaxPlayer, learners[0], learners[1]);
    }
    if (track_min) {
      regret_min.Observe(game, kMinPlayer, learners[1], learners[0]);
    }
    if (cfg.track_average) {
      // Settle the info sets whose locals are about to move.
      if (algo[0] == Algorithm::kBalancedTsallis) {
        tracker_max.FlushAll(t, learners[0].policy);
      } else {
        tracker_max.FlushPath(episode.trajectory[0], t, learners[0].policy);
      }
      if (algo[1] == Algorithm::kBalancedTsallis) {
        tracker_min.FlushAll(t, learners[1].policy);
      } else {
        tracker_min.FlushPath(episode.trajectory[1], t, learners[1].policy);
      }
    }
    LearnerStep(learners[0], episode.trajectory[0]);
    LearnerStep(learners[1], episode.trajectory[1]);

    if (--phase_left == 0 && t < cfg.episodes) {
      phase_len *= 2;
      phase_left = std::min(phase_len, cfg.episodes - t);
      // The reset rewrites every local policy, so the lazy averages must be
      // settled through episode t first.
      if (cfg.track_average) {
        tracker_max.FlushAll(t, learners[0].policy);
        tracker_min.FlushAll(t, learners[1].policy);
      }
      learners = make_learners(phase_len);
    }

    if (t % eval_every == 0) {
      CheckpointRow row;
      row.episode = t;
      if (cfg.track_average) {
        tracker_max.FlushAll(t, learners[0].policy);
        tracker_min.FlushAll(t, learners[1].policy);
        record.avg_policy_max = RealizationToBehavioral(
            tpx, tracker_max.Average(t), uniform_max);
        record.avg_policy_min = RealizationToBehavioral(
            tpy, tracker_min.Average(t), uniform_min);
        row.exploit_avg = Exploitability(game, record.avg_policy_max,
                                         record.avg_policy_min);
      } else {
        row.exploit_avg = kNan;
      }
      row.exploit_last =
          Exploitability(game, learners[0].policy, learners[1].policy);
      row.regret_max = track_max ? regret_max.Regret(tpx) : kNan;
      row.regret_min = track_min ? regret_min.Regret(tpy) : kNan;
      row.theorem1_bound =
          (track_max && track_min)
              ? (row.regret_max + row.regret_min) / static_cast<double>(t)
              : kNan;
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      record.checkpoints.push_back(row);
      if (cfg.checkpoint_callback) cfg.checkpoint_callback(row);
    }
  }
  record.last_policy_max = learners[0].policy;
  record.last_policy_min = learners[1].policy;
  if (cfg.track_average && record.avg_policy_max.probs.empty()) {
    tracker_max.FlushAll(cfg.episodes, learners[0].policy);
    tracker_min.FlushAll(cfg.episodes, learners[1].policy);
    record.avg_policy_max = RealizationToBehavioral(
        tpx, tracker_max.Average(cfg.episodes), uniform_max);
    record.avg_policy_min = RealizationToBehavioral(
        tpy, tracker_min.Average(cfg.episodes), uniform_min);
  }
  return record;
}

RunRecord RunSelfplay(const RunConfig& cfg) {
  const GameTree game = BuildGameFromSpec(cfg.game_spec);
  return RunSelfplayOnGame(game, cfg);
}

// -- Sweep ----------------------------------------------------------------------

namespace {

RunRecord GuardedRun(const RunConfig& cfg) {
  try {
    return RunSelfplay(cfg);
  } catch (const std::exception& e) {
    RunRecord failed;
    failed.failed = true;
    failed.error = e.what();
    return failed;
  }
}

}  // namespace

std::vector<RunRecord> SweepSerial(const std::vector<RunConfig>& configs) {
  std::vector<RunRecord> records(configs.size());
  for (size_t i = 0; i < configs.size(); ++i) {
    records[i] = GuardedRun(configs[i]);
  }
  return records;
}

std::vector<RunRecord> Sweep(const std::vector<RunConfig>& configs,
                             int parallelism) {
  if (parallelism < 1) throw ArgumentError("sweep: parallelism must be >= 1");
  if (parallelism == 1) return SweepSerial(configs);
  std::vector<RunRecord> records(configs.size());
#ifdef _OPENMP
  const int n = static_cast<int>(configs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallelism)
  for (int i = 0; i < n; ++i) {
    records[i] = GuardedRun(configs[i]);
  }
#else
  records = SweepSerial(configs);
#endif
  return records;
}

// -- Grid search -----------------------------------------------------------------

GridSearchResult GridSearch(const RunConfig& base,
                            const std::vector<double>& eta_grid,
                            const std::vector<uint64_t>& seeds,
                            int parallelism) {
  if (eta_grid.empty()) throw ArgumentError("grid search: empty grid");
  if (seeds.empty()) throw ArgumentError("grid search: no seeds");

  std::vector<RunConfig> configs;
  for (double eta : eta_grid) {
    for (uint64_t seed : seeds) {
      RunConfig cfg = base;
      cfg.theorem_schedule = false;
      cfg.eta = eta;
      cfg.gamma = eta / 20.0;  // base IX parameter tied to the global rate
      cfg.seed = seed;
      configs.push_back(cfg);
    }
  }
  std::vector<RunRecord> records = Sweep(configs, parallelism);

  GridSearchResult result;
  result.cells.resize(configs.size());
  result.best_mean_exploit = std::numeric_limits<double>::infinity();
  const size_t per_eta = seeds.size();
  for (size_t g = 0; g < eta_grid.size(); ++g) {
    double mean = 0.0;
    bool ok = true;
    for (size_t s = 0; s < per_eta; ++s) {
      const size_t i = g * per_eta + s;
      result.cells[i].config = configs[i];
      result.cells[i].record = records[i];
      const double final_exploit =
          (!records[i].failed && !records[i].checkpoints.empty())
              ? records[i].checkpoints.back().exploit_avg
              : std::numeric_limits<double>::infinity();
      result.cells[i].final_exploit_avg = final_exploit;
      ok = ok && std::isfinite(final_exploit);
      mean += final_exploit / static_cast<double>(per_eta);
    }
    const bool better =
        ok && (mean < result.best_mean_exploit ||
               (mean == result.best_mean_exploit &&
                eta_grid[g] < result.best_eta));
    if (better) {
      result.best_mean_exploit = mean;
      result.best_eta = eta_grid[g];
      result.best_record = records[g * per_eta];
    }
  }
  for (auto& cell : result.cells) {
    cell.best = cell.config.eta == result.best_eta;
  }
  return result;
}

}  // namespace iig
