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

#include "iig/game_tree.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "iig/errors.h"

namespace iig {

namespace {

constexpr double kChanceTol = 1e-12;

// Formats a double so that parsing recovers the exact bits.
std::string ExactDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

// -- Builder ------------------------------------------------------------------

int GameTreeBuilder::AddChance(std::vector<double> probs) {
  if (probs.empty()) throw ArgumentError("game builder: empty chance node");
  PendingNode p;
  p.node.kind = NodeKind::kChance;
  p.node.children.assign(probs.size(), -1);
  p.node.probs = std::move(probs);
  pending_.push_back(std::move(p));
  return static_cast<int>(pending_.size()) - 1;
}

int GameTreeBuilder::AddDecision(int owner, std::string infoset_key,
                                 int num_actions) {
  if (owner != kMaxPlayer && owner != kMinPlayer) {
    throw ArgumentError("game builder: bad owner");
  }
  if (num_actions < 1) throw ArgumentError("game builder: no actions");
  PendingNode p;
  p.node.kind = NodeKind::kDecision;
  p.node.owner = owner;
  p.node.children.assign(num_actions, -1);
  p.key = std::move(infoset_key);
  pending_.push_back(std::move(p));
  return static_cast<int>(pending_.size()) - 1;
}

int GameTreeBuilder::AddTerminal(double utility) {
  PendingNode p;
  p.node.kind = NodeKind::kTerminal;
  p.node.utility = utility;
  pending_.push_back(std::move(p));
  return static_cast<int>(pending_.size()) - 1;
}

void GameTreeBuilder::SetChild(int node, int slot, int child) {
  if (node < 0 || node >= static_cast<int>(pending_.size()) || child < 0 ||
      child >= static_cast<int>(pending_.size())) {
    throw ArgumentError("game builder: node id out of range");
  }
  auto& children = pending_[node].node.children;
  if (slot < 0 || slot >= static_cast<int>(children.size())) {
    throw ArgumentError("game builder: slot out of range");
  }
  children[slot] = child;
}

namespace {

// Per-player info-set metadata collected while walking the raw tree.
struct KeyInfo {
  int depth = 0;
  // Parent own-sequence as (parent key, action), empty key for roots.
  std::string parent_key;
  int parent_action = -1;
  int num_actions = 0;
};

struct DeriveState {
  std::map<std::string, KeyInfo> keys[2];
  double utility_lo = std::numeric_limits<double>::infinity();
  double utility_hi = -std::numeric_limits<double>::infinity();
  bool has_terminal = false;
};

void WalkDerive(const std::vector<GameNode>& nodes,
                const std::vector<std::string>& node_keys, int id,
                std::array<std::pair<std::string, int>, 2> own_parent,
                std::array<int, 2> own_depth, DeriveState* state) {
  const GameNode& node = nodes[id];
  switch (node.kind) {
    case NodeKind::kTerminal:
      state->has_terminal = true;
      state->utility_lo = std::min(state->utility_lo, node.utility);
      state->utility_hi = std::max(state->utility_hi, node.utility);
      return;
    case NodeKind::kChance: {
      double sum = 0.0;
      for (double p : node.probs) {
        if (!(p >= 0.0)) throw StructuralError("game: negative chance prob");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kChanceTol) {
        throw StructuralError("game: chance distribution does not sum to 1");
      }
      for (int child : node.children) {
        WalkDerive(nodes, node_keys, child, own_parent, own_depth, state);
      }
      return;
    }
    case NodeKind::kDecision: {
      const int p = node.owner;
      const std::string& key = node_keys[id];
      KeyInfo info;
      info.depth = own_depth[p] + 1;
      info.parent_key = own_parent[p].first;
      info.parent_action = own_parent[p].second;
      info.num_actions = static_cast<int>(node.children.size());
      auto [it, inserted] = state->keys[p].emplace(key, info);
      if (!inserted) {
        const KeyInfo& seen = it->second;
        if (seen.depth != info.depth || seen.parent_key != info.parent_key ||
            seen.parent_action != info.parent_action ||
            seen.num_actions != info.num_actions) {
          throw StructuralError(
              "game: perfect recall violated at info set '" + key + "'");
        }
      }
      for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
        auto next_parent = own_parent;
        auto next_depth = own_depth;
        next_parent[p] = {key, a};
        next_depth[p] = info.depth;
        WalkDerive(nodes, node_keys, node.children[a], next_parent, next_depth,
                   state);
      }
      return;
    }
  }
}

}  // namespace

GameTree GameTreeBuilder::Finalize(int root) {
  const int n = static_cast<int>(pending_.size());
  if (root < 0 || root >= n) throw ArgumentError("game builder: bad root");

  // Tree structure: every node except the root referenced exactly once.
  std::vector<int> indegree(n, 0);
  for (const auto& p : pending_) {
    for (int child : p.node.children) {
      if (child < 0 || child >= n) {
        throw StructuralError("game builder: unset child slot");
      }
      ++indegree[child];
    }
  }
  for (int i = 0; i < n; ++i) {
    const int expected = i == root ? 0 : 1;
    if (indegree[i] != expected) {
      throw StructuralError("game builder: nodes must form a tree");
    }
  }

  GameTree game;
  game.name_ = name_;
  game.root_ = root;
  game.nodes_.reserve(n);
  std::vector<std::string> node_keys(n);
  for (int i = 0; i < n; ++i) {
    game.nodes_.push_back(pending_[i].node);
    node_keys[i] = pending_[i].key;
  }

  DeriveState state;
  WalkDerive(game.nodes_, node_keys, root, {{{"", -1}, {"", -1}}}, {0, 0},
             &state);
  if (!state.has_terminal) throw StructuralError("game: no terminal nodes");
  game.utility_lo_ = state.utility_lo;
  game.utility_hi_ = state.utility_hi;

  // Canonical treeplex layout per player: depth by depth, sorted by
  // (parent sequence index, key).
  for (int p = 0; p < 2; ++p) {
    auto& keys = state.keys[p];
    if (keys.empty()) {
      throw StructuralError("game: a player has no decisions anywhere");
    }
    int max_depth = 0;
    for (const auto& [key, info] : keys) max_depth = std::max(max_depth, info.depth);

    std::map<std::string, int> first_seq;  // key -> first sequence index
    TreeplexBuilder tb;
    std::map<std::string, int> handle_of;
    int next_seq = 0;
    for (int depth = 1; depth <= max_depth; ++depth) {
      std::vector<std::pair<int, const std::string*>> level;  // (parent seq, key)
      for (const auto& [key, info] : keys) {
        if (info.depth != depth) continue;
        int parent_seq = -1;
        if (depth > 1) {
          auto it = first_seq.find(info.parent_key);
          if (it == first_seq.end()) {
            throw StructuralError("game: orphan info set '" + key + "'");
          }
          parent_seq = it->second + info.parent_action;
        }
        level.emplace_back(parent_seq, &key);
      }
      std::sort(level.begin(), level.end(),
                [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return *a.second < *b.second;
                });
      for (const auto& [parent_seq, key] : level) {
        const KeyInfo& info = keys[*key];
        int handle;
        if (depth == 1) {
          handle = tb.AddRoot(info.num_actions);
        } else {
          handle = tb.AddChild(handle_of[info.parent_key], info.parent_action,
                               info.num_actions);
        }
        handle_of[*key] = handle;
        first_seq[*key] = next_seq;
        next_seq += info.num_actions;
      }
    }
    game.treeplex_[p] = tb.Build();
    for (int i = 0; i < n; ++i) {
      if (game.nodes_[i].kind == NodeKind::kDecision &&
          game.nodes_[i].owner == p) {
        game.nodes_[i].infoset = tb.FinalId(handle_of[node_keys[i]]);
      }
    }
  }

  game.Validate();
  return game;
}

// -- Validation -----------------------------------------------------------

void GameTree::Validate() const {
  for (int p = 0; p < 2; ++p) treeplex_[p].Validate();
  // Re-walk to confirm node info-set assignments agree with the treeplex
  // structure (same depth, same parent sequence, same action count).
  struct Frame {
    int node;
    std::array<int, 2> own_parent_seq;
  };
  std::vector<Frame> stack = {{root_, {kRootParent, kRootParent}}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const GameNode& node = nodes_[f.node];
    if (node.kind == NodeKind::kTerminal) continue;
    if (node.kind == NodeKind::kChance) {
      for (int child : node.children) {
        stack.push_back({child, f.own_parent_seq});
      }
      continue;
    }
    const int p = node.owner;
    const Treeplex& tp = treeplex_[p];
    if (node.infoset < 0 || node.infoset >= tp.NumInfoSets()) {
      throw StructuralError("game: node with unassigned info set");
    }
    const InfoSetRecord& rec = tp.InfoSet(node.infoset);
    if (rec.num_actions != static_cast<int>(node.children.size())) {
      throw StructuralError("game: action count mismatch with treeplex");
    }
    if (rec.parent_seq != f.own_parent_seq[p]) {
      throw StructuralError("game: info-set history inconsistent");
    }
    for (int a = 0; a < rec.num_actions; ++a) {
      Frame next = f;
      next.node = node.children[a];
      next.own_parent_seq[p] = rec.first_seq + a;
      stack.push_back(next);
    }
  }
}

// -- Serialization ----------------------------------------------------------

std::string GameTree::Serialize() const {
  std::ostringstream out;
  out << "game " << name_ << " nodes=" << NumNodes() << " root=" << root_
      << " ulo=" << ExactDouble(utility_lo_) << " uhi="
      << ExactDouble(utility_hi_) << "\n";
  for (int i = 0; i < NumNodes(); ++i) {
    const GameNode& node = nodes_[i];
    switch (node.kind) {
      case NodeKind::kChance: {
        out << "chance " << i << " probs=";
        for (size_t k = 0; k < node.probs.size(); ++k) {
          if (k) out << ",";
          out << ExactDouble(node.probs[k]);
        }
        out << " children=";
        for (size_t k = 0; k < node.children.size(); ++k) {
          if (k) out << ",";
          out << node.children[k];
        }
        out << "\n";
        break;
      }
      case NodeKind::kDecision: {
        out << "decision " << i << " owner="
            << (node.owner == kMaxPlayer ? "max" : "min")
            << " infoset=" << node.infoset << " children=";
        for (size_t k = 0; k < node.children.size(); ++k) {
          if (k) out << ",";
          out << node.children[k];
        }
        out << "\n";
        break;
      }
      case NodeKind::kTerminal:
        out << "terminal " << i << " u=" << ExactDouble(node.utility) << "\n";
        break;
    }
  }
  return out.str();
}

namespace {

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string FieldValue(const std::string& token, const char* name) {
  const std::string prefix = std::string(name) + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw StructuralError("game parse: expected field " + std::string(name));
  }
  return token.substr(prefix.size());
}

}  // namespace

GameTree GameTree::Parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw StructuralError("game parse: empty");
  std::istringstream header(line);
  std::string tag, name, nodes_s, root_s, ulo_s, uhi_s;
  header >> tag >> name >> nodes_s >> root_s >> ulo_s >> uhi_s;
  if (tag != "game") throw StructuralError("game parse: bad header");
  const int num_nodes = std::stoi(FieldValue(nodes_s, "nodes"));
  const int root = std::stoi(FieldValue(root_s, "root"));

  GameTreeBuilder builder(name);
  struct Wiring {
    int node;
    std::vector<int> children;
  };
  std::vector<Wiring> wiring;
  std::vector<int> id_map(num_nodes, -1);
  int parsed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    int id;
    ls >> kind >> id;
    if (id != parsed) throw StructuralError("game parse: ids out of order");
    ++parsed;
    if (kind == "chance") {
      std::string probs_s, children_s;
      ls >> probs_s >> children_s;
      std::vector<double> probs;
      for (const auto& p : SplitComma(FieldValue(probs_s, "probs"))) {
        probs.push_back(std::stod(p));
      }
      id_map[id] = builder.AddChance(probs);
      Wiring w{id_map[id], {}};
      for (const auto& c : SplitComma(FieldValue(children_s, "children"))) {
        w.children.push_back(std::stoi(c));
      }
      if (w.children.size() != probs.size()) {
        throw StructuralError("game parse: chance arity mismatch");
      }
      wiring.push_back(std::move(w));
    } else if (kind == "decision") {
      std::string owner_s, infoset_s, children_s;
      ls >> owner_s >> infoset_s >> children_s;
      const std::string owner = FieldValue(owner_s, "owner");
      Wiring w{-1, {}};
      for (const auto& c : SplitComma(FieldValue(children_s, "children"))) {
        w.children.push_back(std::stoi(c));
      }
      // Zero-pad the numeric id so lexicographic key order matches numeric
      // order and the canonical layout is reproduced exactly.
      char key[16];
      std::snprintf(key, sizeof(key), "%09d",
                    std::stoi(FieldValue(infoset_s, "infoset")));
      id_map[id] = builder.AddDecision(
          owner == "max" ? kMaxPlayer : kMinPlayer, key,
          static_cast<int>(w.children.size()));
      w.node = id_map[id];
      wiring.push_back(std::move(w));
    } else if (kind == "terminal") {
      std::string u_s;
      ls >> u_s;
      id_map[id] = builder.AddTerminal(std::stod(FieldValue(u_s, "u")));
    } else {
      throw StructuralError("game parse: unknown node kind " + kind);
    }
  }
  if (parsed != num_nodes) throw StructuralError("game parse: node count");
  for (const auto& w : wiring) {
    for (size_t slot = 0; slot < w.children.size(); ++slot) {
      builder.SetChild(w.node, static_cast<int>(slot), id_map[w.children[slot]]);
    }
  }
  return builder.Finalize(id_map[root]);
}

// -- Episode sampling ---------------------------------------------------------

EpisodeResult SampleEpisode(const GameTree& game, const BehavioralPolicy& mu,
                            const BehavioralPolicy& nu, RngStream& rng) {
  EpisodeResult result;
  const BehavioralPolicy* policies[2] = {&mu, &nu};
  int id = game.Root();
  while (true) {
    const GameNode& node = game.Node(id);
    if (node.kind == NodeKind::kTerminal) {
      result.scaled_utility = game.ScaledUtility(node.utility);
      break;
    }
    if (node.kind == NodeKind::kChance) {
      id = node.children[rng.SampleDiscrete(node.probs)];
      continue;
    }
    const int p = node.owner;
    const Treeplex& tp = game.PlayerTreeplex(p);
    const int first = tp.InfoSet(node.infoset).first_seq;
    const int num_actions = tp.InfoSet(node.infoset).num_actions;
    const int action = rng.SampleDiscrete(
        std::span<const double>(&policies[p]->probs[first], num_actions));
    result.trajectory[p].steps.push_back(
        TrajectoryStep{node.infoset, action, first + action, 1.0});
    id = node.children[action];
  }
  // Final own decision carries the utility in the acting player's units.
  if (!result.trajectory[kMaxPlayer].steps.empty()) {
    result.trajectory[kMaxPlayer].steps.back().reward = result.scaled_utility;
  }
  if (!result.trajectory[kMinPlayer].steps.empty()) {
    result.trajectory[kMinPlayer].steps.back().reward =
        1.0 - result.scaled_utility;
  }
  return result;
}

// -- Folded model ---------------------------------------------------------

namespace {

struct FoldWalk {
  const GameTree* game;
  const BehavioralPolicy* opponent;
  int player;
  FoldedModel* out;

  // weight: chance times opponent probability of the path so far.
  // last_seq: last own sequence taken, or -1.
  void Visit(int id, double weight, int last_seq) {
    const GameNode& node = game->Node(id);
    switch (node.kind) {
      case NodeKind::kTerminal: {
        const double u = game->ScaledUtility(node.utility);
        const double player_u = player == kMaxPlayer ? u : 1.0 - u;
        if (last_seq >= 0) {
          out->loss[last_seq] += weight * (1.0 - player_u);
        } else {
          out->void_loss += weight * (1.0 - player_u);
        }
        return;
      }
      case NodeKind::kChance: {
        for (size_t k = 0; k < node.children.size(); ++k) {
          if (node.probs[k] == 0.0) continue;
          Visit(node.children[k], weight * node.probs[k], last_seq);
        }
        return;
      }
      case NodeKind::kDecision: {
        if (node.owner == player) {
          out->infoset_reach[node.infoset] += weight;
          const int first =
              game->PlayerTreeplex(player).InfoSet(node.infoset).first_seq;
          for (size_t a = 0; a < node.children.size(); ++a) {
            Visit(node.children[a], weight, first + static_cast<int>(a));
          }
        } else {
          const int first =
              game->PlayerTreeplex(node.owner).InfoSet(node.infoset).first_seq;
          for (size_t a = 0; a < node.children.size(); ++a) {
            const double p = opponent->probs[first + a];
            if (p == 0.0) continue;
            Visit(node.children[a], weight * p, last_seq);
          }
        }
        return;
      }
    }
  }
};

}  // namespace

FoldedModel ComputeFoldedModel(const GameTree& game,
                               const BehavioralPolicy& opponent, int player) {
  const Treeplex& tp = game.PlayerTreeplex(player);
  FoldedModel model;
  model.infoset_reach.assign(tp.NumInfoSets(), 0.0);
  model.loss.assign(tp.NumSequences(), 0.0);
  model.reward.assign(tp.NumSequences(), 1.0);
  FoldWalk walk{&game, &opponent, player, &model};
  walk.Visit(game.Root(), 1.0, -1);
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    if (model.infoset_reach[x] <= 0.0) continue;
    for (int a = 0; a < rec.num_actions; ++a) {
      model.reward[rec.first_seq + a] =
          1.0 - model.loss[rec.first_seq + a] / model.infoset_reach[x];
    }
  }
  return model;
}

double ExpectedValue(const GameTree& game, const BehavioralPolicy& mu,
                     const BehavioralPolicy& nu) {
  const BehavioralPolicy* policies[2] = {&mu, &nu};
  // Iterative DFS accumulating path probability times scaled utility.
  struct Frame {
    int node;
    double weight;
  };
  double value = 0.0;
  std::vector<Frame> stack = {{game.Root(), 1.0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const GameNode& node = game.Node(f.node);
    if (node.kind == NodeKind::kTerminal) {
      value += f.weight * game.ScaledUtility(node.utility);
      continue;
    }
    if (node.kind == NodeKind::kChance) {
      for (size_t k = 0; k < node.children.size(); ++k) {
        if (node.probs[k] == 0.0) continue;
        stack.push_back({node.children[k], f.weight * node.probs[k]});
      }
      continue;
    }
    const int first =
        game.PlayerTreeplex(node.owner).InfoSet(node.infoset).first_seq;
    for (size_t a = 0; a < node.children.size(); ++a) {
      const double p = policies[node.owner]->probs[first + a];
      if (p == 0.0) continue;
      stack.push_back({node.children[a], f.weight * p});
    }
  }
  return value;
}

double Exploitability(const GameTree& game, const BehavioralPolicy& mu,
                      const BehavioralPolicy& nu) {
  const FoldedModel vs_nu = ComputeFoldedModel(game, nu, kMaxPlayer);
  const FoldedModel vs_mu = ComputeFoldedModel(game, mu, kMinPlayer);
  const BestResponse br_max =
      BestSequenceResponse(game.PlayerTreeplex(kMaxPlayer), vs_nu.loss);
  const BestResponse br_min =
      BestSequenceResponse(game.PlayerTreeplex(kMinPlayer), vs_mu.loss);
  // best V_max = 1 - void - br_max.value; best V_min likewise; the gap is
  // best V_max - (1 - best V_min).
  return 1.0 - vs_nu.void_loss - br_max.value - vs_mu.void_loss -
         br_min.value;
}

RegretPair OracleRegret(
    const GameTree& game,
    const std::vector<std::pair<BehavioralPolicy, BehavioralPolicy>>&
        policies) {
  if (policies.empty()) throw ArgumentError("oracle_regret: empty sequence");
  const Treeplex& tpx = game.PlayerTreeplex(kMaxPlayer);
  const Treeplex& tpy = game.PlayerTreeplex(kMinPlayer);
  SequenceVector cum_max(tpx.NumSequences(), 0.0);
  SequenceVector cum_min(tpy.NumSequences(), 0.0);
  double played_max = 0.0;
  double played_min = 0.0;
  for (const auto& [mu, nu] : policies) {
    const FoldedModel vs_nu = ComputeFoldedModel(game, nu, kMaxPlayer);
    const FoldedModel vs_mu = ComputeFoldedModel(game, mu, kMinPlayer);
    const RealizationPlan mu_plan = BehavioralToRealization(tpx, mu);
    const RealizationPlan nu_plan = BehavioralToRealization(tpy, nu);
    played_max += SequenceInnerProduct(tpx, mu_plan, vs_nu.loss);
    played_min += SequenceInnerProduct(tpy, nu_plan, vs_mu.loss);
    for (int s = 0; s < tpx.NumSequences(); ++s) cum_max[s] += vs_nu.loss[s];
    for (int s = 0; s < tpy.NumSequences(); ++s) cum_min[s] += vs_mu.loss[s];
  }
  RegretPair out;
  out.regret_max = played_max - BestSequenceResponse(tpx, cum_max).value;
  out.regret_min = played_min - BestSequenceResponse(tpy, cum_min).value;
  return out;
}

}  // namespace iig
