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
// Times the OpenMP sweep executor against the serial reference on an
// identical run grid and checks that the results agree exactly. With
// --check, exits nonzero on disagreement (and on a missing speedup when at
// least four hardware threads are available).

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <thread>
#include <vector>

#include "iig/csv_format.h"
#include "iig/selfplay.h"

namespace {

std::vector<iig::RunConfig> BenchGrid() {
  std::vector<iig::RunConfig> grid;
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    iig::RunConfig cfg;
    cfg.game_spec = "kuhn";
    cfg.algo_max = "tweaked";
    cfg.algo_min = "tweaked";
    cfg.eta = 1.0;
    cfg.gamma = 0.05;
    cfg.episodes = 20000;
    cfg.eval_every = 20000;
    cfg.seed = seed;
    grid.push_back(cfg);
  }
  return grid;
}

bool SameResults(const std::vector<iig::RunRecord>& a,
                 const std::vector<iig::RunRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].failed != b[i].failed) return false;
    if (a[i].checkpoints.size() != b[i].checkpoints.size()) return false;
    for (size_t c = 0; c < a[i].checkpoints.size(); ++c) {
      const auto& x = a[i].checkpoints[c];
      const auto& y = b[i].checkpoints[c];
      // Everything except wall time must match bitwise.
      if (x.episode != y.episode || x.exploit_avg != y.exploit_avg ||
          x.exploit_last != y.exploit_last || x.regret_max != y.regret_max ||
          x.regret_min != y.regret_min ||
          x.theorem1_bound != y.theorem1_bound) {
        return false;
      }
    }
  }
  return true;
}

double TimedRun(const std::vector<iig::RunConfig>& grid, int threads,
                std::vector<iig::RunRecord>* out) {
  const auto start = std::chrono::steady_clock::now();
  *out = threads == 1 ? iig::SweepSerial(grid) : iig::Sweep(grid, threads);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const bool check = argc > 1 && std::strcmp(argv[1], "--check") == 0;
  const auto grid = BenchGrid();
  const unsigned cores = std::thread::hardware_concurrency();

  std::vector<iig::RunRecord> serial, parallel;
  const double t_serial = TimedRun(grid, 1, &serial);
  const double t_parallel = TimedRun(grid, 4, &parallel);

  std::cout << "runs: " << grid.size() << "\n";
  std::cout << "serial executor:   " << iig::FormatCsvValue(t_serial)
            << " s\n";
  std::cout << "openmp executor (4 threads): "
            << iig::FormatCsvValue(t_parallel) << " s\n";
  std::cout << "speedup: " << iig::FormatCsvValue(t_serial / t_parallel)
            << "x on " << cores << " hardware threads\n";

  const bool same = SameResults(serial, parallel);
  std::cout << (same ? "results identical\n" : "RESULTS DIFFER\n");
  if (!check) return same ? 0 : 1;
  if (!same) return 1;
  if (cores >= 4 && t_serial / t_parallel < 1.5) {
    std::cout << "speedup below 1.5x\n";
    return 1;
  }
  return 0;
}
