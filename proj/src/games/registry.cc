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

#include <map>
#include <string>

#include "iig/errors.h"
#include "iig/games.h"

namespace iig {

namespace {

constexpr const char* kValidNames =
    "matching_pennies, kuhn, leduc, liars_dice, hard_var, hard_fixed, random";

std::map<std::string, std::string> ParseParams(const std::string& text) {
  std::map<std::string, std::string> params;
  std::string token;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (!token.empty()) {
        const size_t eq = token.find('=');
        if (eq == std::string::npos) {
          throw ArgumentError("game spec: expected key=value, got '" + token +
                              "'");
        }
        params[token.substr(0, eq)] = token.substr(eq + 1);
      }
      token.clear();
    } else {
      token.push_back(text[i]);
    }
  }
  return params;
}

double GetDouble(const std::map<std::string, std::string>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ArgumentError("game spec: bad numeric value for " + key);
  }
}

int GetInt(const std::map<std::string, std::string>& params,
           const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ArgumentError("game spec: bad integer value for " + key);
  }
}

}  // namespace

GameTree BuildGameFromSpec(const std::string& spec) {
  std::string name = spec;
  std::map<std::string, std::string> params;
  const size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    params = ParseParams(spec.substr(colon + 1));
  }
  if (name == "matching_pennies") return BuildMatchingPennies();
  if (name == "kuhn") return BuildKuhn();
  if (name == "leduc") return BuildLeduc();
  if (name == "liars_dice") {
    LiarsDiceConfig config;
    config.faces = GetInt(params, "faces", config.faces);
    const std::string opener =
        params.count("opener") ? params.at("opener") : "max";
    config.opener = opener == "min" ? kMinPlayer : kMaxPlayer;
    return BuildLiarsDice(config).game;
  }
  if (name == "hard_var") {
    return BuildHardVariable(GetInt(params, "K", 8), GetInt(params, "H", 4),
                             GetDouble(params, "delta", 0.1),
                             GetInt(params, "star", 1));
  }
  if (name == "hard_fixed") {
    return BuildHardFixed(GetInt(params, "A", 2), GetInt(params, "H", 3),
                          GetDouble(params, "delta", 0.1),
                          GetInt(params, "star", 1));
  }
  if (name == "random") {
    RandomGameConfig config;
    config.node_budget = GetInt(params, "budget", config.node_budget);
    config.max_branch = GetInt(params, "branching", config.max_branch);
    config.seed = static_cast<uint64_t>(GetInt(params, "seed", 1));
    config.uniform_own_depth =
        GetInt(params, "uniform_depth", config.uniform_own_depth);
    config.max_own_depth = GetInt(params, "depth", config.max_own_depth);
    return BuildRandomGame(config);
  }
  throw ArgumentError("unknown game '" + name + "'; valid names: " +
                      kValidNames);
}

}  // namespace iig
