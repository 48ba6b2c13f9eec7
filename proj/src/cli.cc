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

#include "iig/cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iig/csv_format.h"
#include "iig/errors.h"
#include "iig/estimators.h"
#include "iig/games.h"
#include "iig/learners.h"
#include "iig/selfplay.h"
#include "iig/svg_plot.h"

namespace iig {

std::vector<double> ExpandEtaGrid(const std::string& text) {
  std::vector<double> grid;
  try {
    if (text.rfind("log:", 0) == 0) {
      std::istringstream in(text.substr(4));
      std::string lo_s, hi_s, n_s;
      if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
          !std::getline(in, n_s, ':')) {
        throw ArgumentError("eta grid: expected log:<lo>:<hi>:<n>");
      }
      const double lo = std::stod(lo_s);
      const double hi = std::stod(hi_s);
      const int n = std::stoi(n_s);
      if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
        throw ArgumentError("eta grid: need 0 < lo <= hi and n >= 1");
      }
      for (int i = 0; i < n; ++i) {
        const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        grid.push_back(lo * std::pow(hi / lo, frac));
      }
      return grid;
    }
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
      if (!token.empty()) grid.push_back(std::stod(token));
    }
  } catch (const ArgumentError&) {
    throw;
  } catch (const std::exception&) {
    throw ArgumentError("eta grid: malformed value in '" + text + "'");
  }
  if (grid.empty()) throw ArgumentError("eta grid: empty");
  for (double eta : grid) {
    if (!(eta > 0.0)) throw ArgumentError("eta grid: values must be > 0");
  }
  return grid;
}

namespace {

struct CommonOptions {
  RunConfig run;
  std::string track_regret = "both";
  bool no_average = false;
  bool deterministic_output = false;
  bool dump_schedule = false;
  int threads = 0;
};

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Reads a flat `key = value` file mirroring the long flags and returns the
// equivalent argument tokens. Boolean true values become bare flags.
std::vector<std::string> ConfigFileArgs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open " + path);
  std::vector<std::string> args;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config: expected key = value at " + path + ":" +
                          std::to_string(line_no));
    }
    const std::string key = Trim(trimmed.substr(0, eq));
    const std::string value = Trim(trimmed.substr(eq + 1));
    if (key.empty()) {
      throw ArgumentError("config: empty key at " + path + ":" +
                          std::to_string(line_no));
    }
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value == "false") {
      // absent flag
    } else {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

// Splices config-file tokens after the subcommand so explicit flags, which
// come later, override the file.
std::vector<std::string> InjectConfig(int argc, const char* const* argv) {
  std::vector<std::string> tokens;
  for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);
  std::string path;
  for (size_t i = 0; i < tokens.size();) {
    if (tokens[i] == "--config" && i + 1 < tokens.size()) {
      path = tokens[i + 1];
      tokens.erase(tokens.begin() + i, tokens.begin() + i + 2);
    } else if (tokens[i].rfind("--config=", 0) == 0) {
      path = tokens[i].substr(9);
      tokens.erase(tokens.begin() + i);
    } else {
      ++i;
    }
  }
  if (path.empty() || tokens.empty()) return tokens;
  const std::vector<std::string> file_args = ConfigFileArgs(path);
  std::vector<std::string> out = {tokens[0]};
  out.insert(out.end(), file_args.begin(), file_args.end());
  out.insert(out.end(), tokens.begin() + 1, tokens.end());
  return out;
}

int DefaultThreads() {
  if (const char* env = std::getenv("IIG_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

void AddRunOptions(CLI::App* cmd, CommonOptions* opts) {
  const auto last = CLI::MultiOptionPolicy::TakeLast;
  cmd->add_option("--game", opts->run.game_spec,
                  "game spec, e.g. kuhn or hard_var:K=8,H=4,delta=0.1,star=1")
      ->multi_option_policy(last);
  cmd->add_option("--algo-max", opts->run.algo_max, "max-player algorithm")
      ->multi_option_policy(last);
  cmd->add_option("--algo-min", opts->run.algo_min, "min-player algorithm")
      ->multi_option_policy(last);
  cmd->add_option("--T", opts->run.episodes, "number of episodes")
      ->multi_option_policy(last);
  cmd->add_option("--eta", opts->run.eta, "global learning rate")
      ->multi_option_policy(last);
  cmd->add_option("--gamma", opts->run.gamma, "global IX base parameter")
      ->multi_option_policy(last);
  cmd->add_flag("--theorem-schedule", opts->run.theorem_schedule,
                "derive rates from the high-probability schedules");
  cmd->add_option("--delta", opts->run.delta, "failure probability")
      ->multi_option_policy(last);
  cmd->add_option("--tsallis-q", opts->run.tsallis_q, "Tsallis exponent")
      ->multi_option_policy(last);
  cmd->add_option("--seed", opts->run.seed, "run seed")
      ->multi_option_policy(last);
  cmd->add_option("--eval-every", opts->run.eval_every,
                  "checkpoint interval (0: T/20)")
      ->multi_option_policy(last);
  cmd->add_flag("--doubling", opts->run.doubling,
                "restart the schedule in doubling phases");
  cmd->add_option("--track-regret", opts->track_regret,
                  "oracle-regret tracking: none, max, both")
      ->multi_option_policy(last);
  cmd->add_flag("--no-average", opts->no_average,
                "disable average-profile tracking");
  cmd->add_flag("--deterministic-output", opts->deterministic_output,
                "zero the wall_ms column for byte-identical reruns");
  cmd->add_flag("--dump-schedule", opts->dump_schedule,
                "print the derived schedules and exit");
  cmd->add_option("--threads", opts->threads, "max sweep parallelism")
      ->multi_option_policy(last);
  // Consumed before parsing; registered so it shows in --help.
  cmd->add_option("--config", "flat key = value file mirroring the long "
                              "flags; explicit flags override it");
}

void FinishOptions(CommonOptions* opts) {
  if (opts->threads == 0) opts->threads = DefaultThreads();
  if (opts->track_regret == "none") {
    opts->run.track_regret = RegretTracking::kNone;
  } else if (opts->track_regret == "max") {
    opts->run.track_regret = RegretTracking::kMaxOnly;
  } else if (opts->track_regret == "both") {
    opts->run.track_regret = RegretTracking::kBoth;
  } else {
    throw ArgumentError("--track-regret must be none, max or both");
  }
  opts->run.track_average = !opts->no_average;
}

std::string AlgoColumn(const RunConfig& cfg) {
  return cfg.algo_max == cfg.algo_min ? cfg.algo_max
                                      : cfg.algo_max + "+" + cfg.algo_min;
}

void PrintSchedule(const GameTree& game, const RunConfig& cfg) {
  for (int player = 0; player < 2; ++player) {
    const Treeplex& tp = game.PlayerTreeplex(player);
    const Algorithm algo =
        ParseAlgorithm(player == 0 ? cfg.algo_max : cfg.algo_min);
    std::cout << (player == 0 ? "max" : "min") << " player: H="
              << tp.MaxDepth() << " X=" << tp.NumInfoSets()
              << " AX=" << tp.NumSequences() << " algo="
              << AlgorithmName(algo) << "\n";
    if (!cfg.theorem_schedule) {
      std::cout << "  manual eta=" << FormatCsvValue(cfg.eta)
                << " gamma=" << FormatCsvValue(cfg.gamma) << "\n";
      continue;
    }
    ScheduleMode mode;
    switch (algo) {
      case Algorithm::kBalancedShannon:
        mode = ScheduleMode::kTheoremBalancedShannon;
        break;
      case Algorithm::kBalancedTsallis:
        mode = ScheduleMode::kTheoremBalancedTsallis;
        break;
      case Algorithm::kAdaptive:
        mode = ScheduleMode::kAdaptive;
        break;
      default:
        std::cout << "  no theorem schedule for " << AlgorithmName(algo)
                  << "\n";
        continue;
    }
    const ScheduleParams params =
        TheoremSchedules(mode, tp.MaxDepth(), tp.NumSequences(), cfg.episodes,
                         cfg.delta, cfg.tsallis_q);
    std::cout << "  iota=" << FormatCsvValue(params.iota)
              << " iota'=" << FormatCsvValue(params.iota_prime)
              << " L2=" << FormatCsvValue(params.l2) << "\n";
    if (params.eta_h.empty()) {
      std::cout << "  eta=" << FormatCsvValue(params.eta)
                << " gamma=" << FormatCsvValue(params.gamma) << "\n";
    } else {
      for (size_t d = 0; d < params.eta_h.size(); ++d) {
        std::cout << "  h=" << d + 1 << " eta_h="
                  << FormatCsvValue(params.eta_h[d]) << " gamma_h="
                  << FormatCsvValue(params.gamma_h[d]) << "\n";
      }
    }
  }
}

int CmdRun(CommonOptions& opts, const std::string& out_path) {
  FinishOptions(&opts);
  const GameTree game = BuildGameFromSpec(opts.run.game_spec);
  if (opts.dump_schedule) {
    PrintSchedule(game, opts.run);
    return 0;
  }
  if (out_path.empty()) throw ArgumentError("run: --out is required");
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw ArgumentError("run: cannot write " + out_path);
  out << kCsvHeader << "\n";

  CsvRow base_row;
  base_row.game = opts.run.game_spec;
  base_row.algo = AlgoColumn(opts.run);
  base_row.seed = opts.run.seed;
  base_row.eta = opts.run.eta;
  base_row.gamma = opts.run.gamma;
  const bool zero_wall = opts.deterministic_output;
  opts.run.checkpoint_callback = [&](const CheckpointRow& cp) {
    CsvRow row = base_row;
    row.episode = cp.episode;
    row.exploit_avg = cp.exploit_avg;
    row.exploit_last = cp.exploit_last;
    row.regret_max = cp.regret_max;
    row.regret_min = cp.regret_min;
    row.theorem1_bound = cp.theorem1_bound;
    row.wall_ms = zero_wall ? 0.0 : cp.wall_ms;
    out << FormatCsvRow(row) << "\n";
    out.flush();
  };
  RunSelfplayOnGame(game, opts.run);
  return 0;
}

int CmdTune(CommonOptions& opts, const std::string& out_path,
            const std::string& grid_text, int n_seeds) {
  FinishOptions(&opts);
  if (out_path.empty()) throw ArgumentError("tune: --out is required");
  if (n_seeds < 1) throw ArgumentError("tune: --n-seeds must be >= 1");
  const std::vector<double> grid = ExpandEtaGrid(grid_text);
  std::vector<uint64_t> seeds;
  for (int s = 0; s < n_seeds; ++s) seeds.push_back(opts.run.seed + s);

  const GridSearchResult result =
      GridSearch(opts.run, grid, seeds, opts.threads);

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw ArgumentError("tune: cannot write " + out_path);
  out << kCsvHeader << ",best\n";
  for (const auto& cell : result.cells) {
    CsvRow row;
    row.game = cell.config.game_spec;
    row.algo = AlgoColumn(cell.config);
    row.seed = cell.config.seed;
    row.eta = cell.config.eta;
    row.gamma = cell.config.gamma;
    if (!cell.record.checkpoints.empty()) {
      const CheckpointRow& cp = cell.record.checkpoints.back();
      row.episode = cp.episode;
      row.exploit_avg = cp.exploit_avg;
      row.exploit_last = cp.exploit_last;
      row.regret_max = cp.regret_max;
      row.regret_min = cp.regret_min;
      row.theorem1_bound = cp.theorem1_bound;
      row.wall_ms = opts.deterministic_output ? 0.0 : cp.wall_ms;
    }
    out << FormatCsvRow(row, cell.best ? 1 : 0) << "\n";
  }
  std::cout << "best eta " << FormatCsvValue(result.best_eta)
            << " (gamma " << FormatCsvValue(result.best_eta / 20.0)
            << ") mean final exploitability "
            << FormatCsvValue(result.best_mean_exploit) << "\n";
  return 0;
}

int CmdPlot(const std::vector<std::string>& csvs, const std::string& out_path) {
  if (out_path.empty()) throw ArgumentError("plot: --out is required");
  std::string warnings;
  const int series = WriteConvergencePlot(csvs, out_path, &warnings);
  if (!warnings.empty()) std::cerr << warnings;
  std::cout << "wrote " << series << " series to " << out_path << "\n";
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"self-play learning of epsilon-optimal strategies in zero-sum "
               "imperfect-information games from trajectory feedback"};
  app.require_subcommand(1);

  CommonOptions run_opts, tune_opts;
  std::string run_out, tune_out, plot_out;
  std::string grid_text = "log:0.01:100:9";
  int n_seeds = 1;
  std::vector<std::string> plot_csvs;

  const auto last = CLI::MultiOptionPolicy::TakeLast;
  CLI::App* run = app.add_subcommand("run", "one self-play run, CSV output");
  AddRunOptions(run, &run_opts);
  run->add_option("--out", run_out, "output CSV path")
      ->multi_option_policy(last);

  CLI::App* tune = app.add_subcommand("tune", "grid-search the global rate");
  AddRunOptions(tune, &tune_opts);
  tune->add_option("--eta-grid", grid_text, "comma list or log:<lo>:<hi>:<n>")
      ->multi_option_policy(last);
  tune->add_option("--n-seeds", n_seeds, "seeds per grid cell")
      ->multi_option_policy(last);
  tune->add_option("--out", tune_out, "output CSV path")
      ->multi_option_policy(last);

  CLI::App* plot = app.add_subcommand("plot", "render a convergence SVG");
  plot->add_option("csv", plot_csvs, "input CSV files")->required();
  plot->add_option("--out", plot_out, "output SVG path")
      ->multi_option_policy(last);

  std::vector<std::string> args;
  try {
    args = InjectConfig(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> argv2 = {argc > 0 ? argv[0] : "iig"};
  for (const auto& a : args) argv2.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return CmdRun(run_opts, run_out);
    if (tune->parsed()) return CmdTune(tune_opts, tune_out, grid_text, n_seeds);
    if (plot->parsed()) return CmdPlot(plot_csvs, plot_out);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace iig
