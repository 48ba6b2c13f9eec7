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
// T-episode self-play runs with periodic exact evaluation, the grid-search
// tuner, and the sweep executor (OpenMP over independent runs; a serial
// reference executor is kept for the equality tests and the benchmark).

#ifndef IIG_SELFPLAY_H_
#define IIG_SELFPLAY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iig/game_tree.h"
#include "iig/learners.h"

namespace iig {

// Incrementally maintains sum_t mu^t_{1:} without touching the whole tree
// each episode: an info set is settled lazily from its parent sequence's
// accumulated mass, and must be flushed before its local policy changes.
class AverageRealizationTracker {
 public:
  explicit AverageRealizationTracker(const Treeplex& tp)
      : tp_(&tp),
        acc_(tp.NumSequences(), 0.0),
        last_parent_acc_(tp.NumInfoSets(), 0.0) {}

  // Settles the info sets along a top-down trajectory through episode t,
  // using the current policy locals. Call before the learner update.
  void FlushPath(const Trajectory& traj, int64_t t,
                 const BehavioralPolicy& policy);

  // Settles every info set through episode t (parents first).
  void FlushAll(int64_t t, const BehavioralPolicy& policy);

  // Average plan over episodes 1..t; requires FlushAll(t) beforehand.
  RealizationPlan Average(int64_t t) const;

 private:
  void FlushInfoSet(int x, int64_t t, const BehavioralPolicy& policy);

  const Treeplex* tp_;
  SequenceVector acc_;
  std::vector<double> last_parent_acc_;
};

enum class RegretTracking { kNone, kMaxOnly, kBoth };

struct CheckpointRow {
  int64_t episode = 0;
  double exploit_avg = 0.0;
  double exploit_last = 0.0;
  double regret_max = 0.0;
  double regret_min = 0.0;
  double theorem1_bound = 0.0;  // (R_max + R_min) / episode
  double wall_ms = 0.0;
};

struct RunConfig {
  std::string game_spec = "kuhn";
  std::string algo_max = "balanced_shannon";
  std::string algo_min = "balanced_shannon";
  bool theorem_schedule = false;
  double eta = 0.0;
  double gamma = 0.0;
  double delta = 0.1;
  double tsallis_q = 0.5;
  int64_t episodes = 1000;   // T
  int64_t eval_every = 0;    // 0: max(1, T / 20)
  uint64_t seed = 1;
  bool track_average = true;
  RegretTracking track_regret = RegretTracking::kBoth;
  bool doubling = false;     // restart schedule in doubling phases
  // Invoked as each checkpoint row is produced (CSV streaming).
  std::function<void(const CheckpointRow&)> checkpoint_callback;
};

struct RunRecord {
  std::vector<CheckpointRow> checkpoints;
  BehavioralPolicy avg_policy_max;
  BehavioralPolicy avg_policy_min;
  BehavioralPolicy last_policy_max;
  BehavioralPolicy last_policy_min;
  bool failed = false;
  std::string error;
};

RunRecord RunSelfplay(const RunConfig& config);
// Variant sharing a prebuilt game (the sweep builds each game once).
RunRecord RunSelfplayOnGame(const GameTree& game, const RunConfig& config);

// Independent runs, results ordered as the input grid regardless of
// completion order; per-run failures are recorded and the sweep continues.
std::vector<RunRecord> Sweep(const std::vector<RunConfig>& configs,
                             int parallelism);
// Serial reference executor; Sweep(configs, 1) and this agree exactly.
std::vector<RunRecord> SweepSerial(const std::vector<RunConfig>& configs);

struct GridCell {
  RunConfig config;
  RunRecord record;
  double final_exploit_avg = 0.0;
  bool best = false;
};

struct GridSearchResult {
  double best_eta = 0.0;
  double best_mean_exploit = 0.0;
  RunRecord best_record;              // first seed of the winning eta
  std::vector<GridCell> cells;        // grid x seeds, input order
};

// Runs every eta with gamma = eta / 20 over the given seeds; picks the eta
// with the smallest mean final average-profile exploitability, ties toward
// the smaller eta.
GridSearchResult GridSearch(const RunConfig& base,
                            const std::vector<double>& eta_grid,
                            const std::vector<uint64_t>& seeds,
                            int parallelism);

}  // namespace iig

#endif  // IIG_SELFPLAY_H_
