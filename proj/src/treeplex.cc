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

#include "iig/treeplex.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "iig/errors.h"

namespace iig {

void Treeplex::FinishDerived() {
  num_sequences_ = 0;
  max_depth_ = 0;
  roots_.clear();
  for (int x = 0; x < NumInfoSets(); ++x) {
    num_sequences_ += infosets_[x].num_actions;
    max_depth_ = std::max(max_depth_, infosets_[x].depth);
    if (infosets_[x].parent_seq == kRootParent) roots_.push_back(x);
  }
  seq_infoset_.assign(num_sequences_, -1);
  for (int x = 0; x < NumInfoSets(); ++x) {
    for (int a = 0; a < infosets_[x].num_actions; ++a) {
      seq_infoset_[infosets_[x].first_seq + a] = x;
    }
  }
  seq_children_.resize(num_sequences_);
  for (auto& c : seq_children_) c.clear();
  for (int x = 0; x < NumInfoSets(); ++x) {
    if (infosets_[x].parent_seq != kRootParent) {
      seq_children_[infosets_[x].parent_seq].push_back(x);
    }
  }
}

void Treeplex::Validate() const {
  if (infosets_.empty()) throw StructuralError("treeplex: no info sets");
  int expected_seq = 0;
  int64_t total_actions = 0;
  for (int x = 0; x < NumInfoSets(); ++x) {
    const InfoSetRecord& rec = infosets_[x];
    if (rec.num_actions < 1) {
      throw StructuralError("treeplex: info set with A(x) < 1");
    }
    if (rec.first_seq != expected_seq) {
      throw StructuralError("treeplex: non-contiguous sequence layout");
    }
    expected_seq += rec.num_actions;
    total_actions += rec.num_actions;
    if (rec.parent_seq == kRootParent) {
      if (rec.depth != 1) {
        throw StructuralError("treeplex: root info set with depth != 1");
      }
    } else {
      if (rec.parent_seq < 0 || rec.parent_seq >= num_sequences_) {
        throw StructuralError("treeplex: parent sequence out of range");
      }
      const int parent_x = seq_infoset_[rec.parent_seq];
      if (parent_x >= x) {
        throw StructuralError("treeplex: info sets not topologically sorted");
      }
      if (infosets_[parent_x].depth != rec.depth - 1) {
        throw StructuralError(
            "treeplex: parent of a depth-h info set must have depth h-1");
      }
    }
  }
  if (total_actions != num_sequences_) {
    throw StructuralError("treeplex: A_X does not match the layout");
  }
  // Sorted by (depth, parent_seq): forest property plus deterministic layout.
  for (int x = 1; x < NumInfoSets(); ++x) {
    const auto& a = infosets_[x - 1];
    const auto& b = infosets_[x];
    if (a.depth > b.depth ||
        (a.depth == b.depth && a.depth > 1 && a.parent_seq > b.parent_seq)) {
      throw StructuralError("treeplex: layout not sorted by (depth, parent)");
    }
  }
}

std::string Treeplex::Serialize() const {
  std::ostringstream out;
  out << "treeplex H=" << max_depth_ << " X=" << NumInfoSets()
      << " AX=" << num_sequences_ << "\n";
  for (int x = 0; x < NumInfoSets(); ++x) {
    const InfoSetRecord& rec = infosets_[x];
    out << "infoset " << x << " depth=" << rec.depth << " parent=";
    if (rec.parent_seq == kRootParent) {
      out << "ROOT";
    } else {
      out << rec.parent_seq;
    }
    out << " actions=" << rec.num_actions << "\n";
  }
  return out.str();
}

Treeplex Treeplex::Parse(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  in >> tag;
  if (tag != "treeplex") throw StructuralError("treeplex parse: bad header");
  int header_h = 0, header_x = 0, header_ax = 0;
  std::string field;
  for (int i = 0; i < 3; ++i) {
    in >> field;
    if (field.rfind("H=", 0) == 0) header_h = std::stoi(field.substr(2));
    else if (field.rfind("X=", 0) == 0) header_x = std::stoi(field.substr(2));
    else if (field.rfind("AX=", 0) == 0) header_ax = std::stoi(field.substr(3));
    else throw StructuralError("treeplex parse: bad header field " + field);
  }
  Treeplex tp;
  int next_seq = 0;
  while (in >> tag) {
    if (tag != "infoset") throw StructuralError("treeplex parse: bad line tag");
    int id;
    std::string depth_s, parent_s, actions_s;
    in >> id >> depth_s >> parent_s >> actions_s;
    if (id != static_cast<int>(tp.infosets_.size())) {
      throw StructuralError("treeplex parse: ids must be consecutive");
    }
    InfoSetRecord rec;
    if (depth_s.rfind("depth=", 0) != 0 || parent_s.rfind("parent=", 0) != 0 ||
        actions_s.rfind("actions=", 0) != 0) {
      throw StructuralError("treeplex parse: malformed infoset line");
    }
    rec.depth = std::stoi(depth_s.substr(6));
    const std::string parent = parent_s.substr(7);
    rec.parent_seq = parent == "ROOT" ? kRootParent : std::stoi(parent);
    rec.num_actions = std::stoi(actions_s.substr(8));
    rec.first_seq = next_seq;
    next_seq += rec.num_actions;
    tp.infosets_.push_back(rec);
  }
  tp.FinishDerived();
  tp.Validate();
  if (tp.MaxDepth() != header_h || tp.NumInfoSets() != header_x ||
      tp.NumSequences() != header_ax) {
    throw StructuralError("treeplex parse: header disagrees with body");
  }
  return tp;
}

// -- TreeplexBuilder ----------------------------------------------------------

int TreeplexBuilder::AddRoot(int num_actions) {
  if (num_actions < 1) throw ArgumentError("treeplex builder: A(x) < 1");
  pending_.push_back(Pending{1, -1, 0, num_actions});
  return static_cast<int>(pending_.size()) - 1;
}

int TreeplexBuilder::AddChild(int parent_handle, int parent_action,
                              int num_actions) {
  if (num_actions < 1) throw ArgumentError("treeplex builder: A(x) < 1");
  if (parent_handle < 0 || parent_handle >= static_cast<int>(pending_.size())) {
    throw ArgumentError("treeplex builder: bad parent handle");
  }
  const Pending& parent = pending_[parent_handle];
  if (parent_action < 0 || parent_action >= parent.num_actions) {
    throw ArgumentError("treeplex builder: bad parent action");
  }
  pending_.push_back(
      Pending{parent.depth + 1, parent_handle, parent_action, num_actions});
  return static_cast<int>(pending_.size()) - 1;
}

Treeplex TreeplexBuilder::Build() {
  const int n = static_cast<int>(pending_.size());
  // Order handles depth by depth; within a depth, by the parent's final
  // sequence index, then insertion order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  final_id_.assign(n, -1);

  Treeplex tp;
  tp.infosets_.reserve(n);
  std::vector<int> first_seq_of_handle(n, -1);
  int max_depth = 0;
  for (const auto& p : pending_) max_depth = std::max(max_depth, p.depth);

  int next_seq = 0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::pair<int64_t, int>> level;  // (parent final seq, handle)
    for (int h = 0; h < n; ++h) {
      if (pending_[h].depth != depth) continue;
      int64_t parent_key = -1;
      if (pending_[h].parent_handle >= 0) {
        const Pending& p = pending_[h];
        const int pfs = first_seq_of_handle[p.parent_handle];
        if (pfs < 0) {
          throw StructuralError("treeplex builder: parent not yet placed");
        }
        parent_key = pfs + p.parent_action;
      }
      level.emplace_back(parent_key, h);
    }
    std::stable_sort(level.begin(), level.end(),
                     [](const auto& a, const auto& b) {
                       return a.first < b.first;
                     });
    for (const auto& [parent_key, h] : level) {
      InfoSetRecord rec;
      rec.depth = depth;
      rec.parent_seq = parent_key < 0 ? kRootParent
                                      : static_cast<int>(parent_key);
      rec.first_seq = next_seq;
      rec.num_actions = pending_[h].num_actions;
      first_seq_of_handle[h] = next_seq;
      next_seq += rec.num_actions;
      final_id_[h] = static_cast<int>(tp.infosets_.size());
      tp.infosets_.push_back(rec);
    }
  }
  tp.FinishDerived();
  tp.Validate();
  return tp;
}

// -- Policies and plans -------------------------------------------------------

BehavioralPolicy UniformPolicy(const Treeplex& tp) {
  BehavioralPolicy policy;
  policy.probs.resize(tp.NumSequences());
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    const double p = 1.0 / rec.num_actions;
    for (int a = 0; a < rec.num_actions; ++a) {
      policy.probs[rec.first_seq + a] = p;
    }
  }
  return policy;
}

void ValidatePolicy(const Treeplex& tp, const BehavioralPolicy& policy,
                    double tol) {
  if (static_cast<int>(policy.probs.size()) != tp.NumSequences()) {
    throw StructuralError("policy: length does not match treeplex");
  }
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) {
      const double p = policy.probs[rec.first_seq + a];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw StructuralError("policy: negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw StructuralError("policy: local simplex sum off by " +
                            std::to_string(sum - 1.0));
    }
  }
}

void ValidatePlan(const Treeplex& tp, const RealizationPlan& plan,
                  double tol) {
  if (static_cast<int>(plan.mass.size()) != tp.NumSequences()) {
    throw StructuralError("plan: length does not match treeplex");
  }
  for (double v : plan.mass) {
    if (!(v >= -tol) || !std::isfinite(v)) {
      throw StructuralError("plan: negative or non-finite mass");
    }
  }
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) sum += plan.mass[rec.first_seq + a];
    const double parent = rec.parent_seq == kRootParent
                              ? 1.0
                              : plan.mass[rec.parent_seq];
    if (std::abs(sum - parent) > tol) {
      throw StructuralError("plan: flow constraint violated at info set " +
                            std::to_string(x));
    }
  }
}

RealizationPlan BehavioralToRealization(const Treeplex& tp,
                                        const BehavioralPolicy& policy) {
  if (static_cast<int>(policy.probs.size()) != tp.NumSequences()) {
    throw StructuralError("behavioral_to_realization: layout mismatch");
  }
  RealizationPlan plan;
  plan.mass.resize(tp.NumSequences());
  // Info sets are sorted parents-first, so a single forward pass suffices.
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    const double parent = rec.parent_seq == kRootParent
                              ? 1.0
                              : plan.mass[rec.parent_seq];
    for (int a = 0; a < rec.num_actions; ++a) {
      plan.mass[rec.first_seq + a] = parent * policy.probs[rec.first_seq + a];
    }
  }
  return plan;
}

BehavioralPolicy RealizationToBehavioral(const Treeplex& tp,
                                         const RealizationPlan& plan,
                                         const BehavioralPolicy& fallback) {
  if (static_cast<int>(plan.mass.size()) != tp.NumSequences() ||
      static_cast<int>(fallback.probs.size()) != tp.NumSequences()) {
    throw StructuralError("realization_to_behavioral: layout mismatch");
  }
  BehavioralPolicy policy;
  policy.probs.resize(tp.NumSequences());
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    const auto& rec = tp.InfoSet(x);
    double sum = 0.0;
    for (int a = 0; a < rec.num_actions; ++a) sum += plan.mass[rec.first_seq + a];
    if (sum > 0.0) {
      for (int a = 0; a < rec.num_actions; ++a) {
        policy.probs[rec.first_seq + a] = plan.mass[rec.first_seq + a] / sum;
      }
    } else {
      for (int a = 0; a < rec.num_actions; ++a) {
        policy.probs[rec.first_seq + a] = fallback.probs[rec.first_seq + a];
      }
    }
  }
  return policy;
}

RealizationPlan AverageRealization(const Treeplex& tp,
                                   const std::vector<RealizationPlan>& plans) {
  if (plans.empty()) {
    throw ArgumentError("average_realization: empty input");
  }
  RealizationPlan avg;
  avg.mass.assign(tp.NumSequences(), 0.0);
  for (const auto& plan : plans) {
    if (static_cast<int>(plan.mass.size()) != tp.NumSequences()) {
      throw StructuralError("average_realization: layout mismatch");
    }
    for (int s = 0; s < tp.NumSequences(); ++s) avg.mass[s] += plan.mass[s];
  }
  const double inv = 1.0 / static_cast<double>(plans.size());
  for (double& v : avg.mass) v *= inv;
  return avg;
}

double SequenceInnerProduct(const Treeplex& tp, const RealizationPlan& plan,
                            const SequenceVector& loss) {
  if (static_cast<int>(plan.mass.size()) != tp.NumSequences() ||
      static_cast<int>(loss.size()) != tp.NumSequences()) {
    throw StructuralError("sequence_inner_product: layout mismatch");
  }
  double sum = 0.0;
  for (int s = 0; s < tp.NumSequences(); ++s) sum += plan.mass[s] * loss[s];
  return sum;
}

// -- Balanced kernel ----------------------------------------------------------

BalancedKernel ComputeBalancedKernel(const Treeplex& tp) {
  BalancedKernel kernel;
  const int n = tp.NumInfoSets();
  kernel.subtree_actions.assign(n, 0);
  kernel.step_prob.assign(n, 0.0);
  kernel.reach.assign(n, 0.0);

  // Bottom-up: A_down(x) = A(x) + sum over child info sets. The layout is
  // topologically sorted, so a reverse scan visits children first.
  for (int x = n - 1; x >= 0; --x) {
    const auto& rec = tp.InfoSet(x);
    int64_t total = rec.num_actions;
    for (int a = 0; a < rec.num_actions; ++a) {
      for (int child : tp.SeqChildren(rec.first_seq + a)) {
        total += kernel.subtree_actions[child];
      }
    }
    kernel.subtree_actions[x] = total;
  }

  // Top-down: step probabilities and reach products.
  for (int x = 0; x < n; ++x) {
    const auto& rec = tp.InfoSet(x);
    if (rec.parent_seq == kRootParent) {
      kernel.step_prob[x] = static_cast<double>(kernel.subtree_actions[x]) /
                            static_cast<double>(tp.NumSequences());
      kernel.reach[x] = kernel.step_prob[x];
    } else {
      int64_t branch_total = 0;
      for (int sib : tp.SeqChildren(rec.parent_seq)) {
        branch_total += kernel.subtree_actions[sib];
      }
      kernel.step_prob[x] = static_cast<double>(kernel.subtree_actions[x]) /
                            static_cast<double>(branch_total);
      kernel.reach[x] =
          kernel.reach[tp.SeqInfoSet(rec.parent_seq)] * kernel.step_prob[x];
    }
  }
  return kernel;
}

void ValidateBalancedKernel(const Treeplex& tp, const BalancedKernel& kernel,
                            double tol) {
  double root_sum = 0.0;
  for (int x : tp.Roots()) root_sum += kernel.step_prob[x];
  if (std::abs(root_sum - 1.0) > tol) {
    throw StructuralError("balanced kernel: p*_0 does not sum to 1");
  }
  for (int s = 0; s < tp.NumSequences(); ++s) {
    if (tp.SeqChildren(s).empty()) continue;
    double sum = 0.0;
    for (int child : tp.SeqChildren(s)) sum += kernel.step_prob[child];
    if (std::abs(sum - 1.0) > tol) {
      throw StructuralError("balanced kernel: branch does not sum to 1");
    }
  }
  for (int x = 0; x < tp.NumInfoSets(); ++x) {
    if (!(kernel.reach[x] > 1e-300)) {
      throw StructuralError("balanced kernel: reach underflow");
    }
  }
}

// -- Best response ------------------------------------------------------------

BestResponse BestSequenceResponse(const Treeplex& tp,
                                  const SequenceVector& loss) {
  if (static_cast<int>(loss.size()) != tp.NumSequences()) {
    throw StructuralError("best_sequence_response: layout mismatch");
  }
  const int n = tp.NumInfoSets();
  std::vector<double> value(n, 0.0);  // optimal cost-to-go per info set
  std::vector<int> best_action(n, 0);
  for (int x = n - 1; x >= 0; --x) {
    const auto& rec = tp.InfoSet(x);
    double best = 0.0;
    int arg = 0;
    for (int a = 0; a < rec.num_actions; ++a) {
      double q = loss[rec.first_seq + a];
      for (int child : tp.SeqChildren(rec.first_seq + a)) q += value[child];
      if (a == 0 || q < best) {
        best = q;
        arg = a;
      }
    }
    value[x] = best;
    best_action[x] = arg;
  }

  BestResponse out;
  out.plan.mass.assign(tp.NumSequences(), 0.0);
  double total = 0.0;
  for (int x = 0; x < n; ++x) {
    const auto& rec = tp.InfoSet(x);
    const double parent = rec.parent_seq == kRootParent
                              ? 1.0
                              : out.plan.mass[rec.parent_seq];
    if (parent == 0.0) continue;
    out.plan.mass[rec.first_seq + best_action[x]] = parent;
  }
  for (int x : tp.Roots()) total += value[x];
  out.value = total;
  return out;
}

}  // namespace iig
