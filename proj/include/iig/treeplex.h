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
// One player's information-set tree in sequence form: the treeplex. Info sets
// live in a forest rooted at the depth-1 sets; every non-root info set hangs
// off exactly one parent sequence (perfect recall). Sequences -- (info set,
// action) pairs -- are laid out contiguously, info sets sorted by
// (depth, parent sequence), so vectors indexed by sequence id ("sequence
// vectors") have a deterministic, cache-friendly layout.

#ifndef IIG_TREEPLEX_H_
#define IIG_TREEPLEX_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace iig {

// Dense per-sequence vector of reals; length equals Treeplex::NumSequences().
// Houses losses, loss estimates, cumulative estimates and balanced weights.
using SequenceVector = std::vector<double>;

inline constexpr int kRootParent = -1;

struct InfoSetRecord {
  int depth = 0;       // own-decision depth, 1-based
  int parent_seq = kRootParent;
  int first_seq = 0;   // first sequence index in the flat layout
  int num_actions = 0;
};

class Treeplex {
 public:
  Treeplex() = default;

  int NumInfoSets() const { return static_cast<int>(infosets_.size()); }
  int NumSequences() const { return num_sequences_; }  // A_X
  int MaxDepth() const { return max_depth_; }          // H

  const InfoSetRecord& InfoSet(int x) const { return infosets_[x]; }
  const std::vector<InfoSetRecord>& InfoSets() const { return infosets_; }

  // Info set owning a sequence.
  int SeqInfoSet(int seq) const { return seq_infoset_[seq]; }
  // Successor info sets of a sequence (possibly empty).
  const std::vector<int>& SeqChildren(int seq) const {
    return seq_children_[seq];
  }
  const std::vector<int>& Roots() const { return roots_; }

  int SeqIndex(int infoset, int action) const {
    return infosets_[infoset].first_seq + action;
  }

  // Throws StructuralError if the perfect-recall / layout invariants fail.
  void Validate() const;

  // Line-oriented text format; round trips bit-exactly.
  std::string Serialize() const;
  static Treeplex Parse(const std::string& text);

 private:
  friend class TreeplexBuilder;

  std::vector<InfoSetRecord> infosets_;
  std::vector<std::vector<int>> seq_children_;
  std::vector<int> seq_infoset_;
  std::vector<int> roots_;
  int num_sequences_ = 0;
  int max_depth_ = 0;

  void FinishDerived();  // fills seq_infoset_, roots_, max_depth_
};

// Incremental construction with arbitrary keys; Build() produces the
// canonical layout (info sets sorted by depth, then parent sequence, then
// insertion order) and exposes the handle -> final id mapping.
class TreeplexBuilder {
 public:
  // Returns an info-set handle. Parent is identified by (handle, action).
  int AddRoot(int num_actions);
  int AddChild(int parent_handle, int parent_action, int num_actions);

  Treeplex Build();
  // Valid after Build().
  int FinalId(int handle) const { return final_id_[handle]; }

 private:
  struct Pending {
    int depth;
    int parent_handle;  // -1 for roots
    int parent_action;
    int num_actions;
  };
  std::vector<Pending> pending_;
  std::vector<int> final_id_;
};

// -- Policies and plans -------------------------------------------------------

// Behavioral policy, stored flat over sequences: probs[seq] = mu_h(a|x).
struct BehavioralPolicy {
  SequenceVector probs;
};

// Realization plan: mass[seq] = mu_{1:h}(x_h, a_h), the product of behavioral
// probabilities along the unique history.
struct RealizationPlan {
  SequenceVector mass;
};

BehavioralPolicy UniformPolicy(const Treeplex& tp);

// Throws StructuralError when a local simplex is invalid beyond `tol`.
void ValidatePolicy(const Treeplex& tp, const BehavioralPolicy& policy,
                    double tol = 1e-9);

// Throws StructuralError when the flow constraints fail beyond `tol`.
void ValidatePlan(const Treeplex& tp, const RealizationPlan& plan,
                  double tol = 1e-9);

RealizationPlan BehavioralToRealization(const Treeplex& tp,
                                        const BehavioralPolicy& policy);

// Inverse conversion; info sets with zero parent mass take the fallback
// policy (the average profile's exploitability does not depend on play at
// unreached sets, but a total function is needed).
BehavioralPolicy RealizationToBehavioral(const Treeplex& tp,
                                         const RealizationPlan& plan,
                                         const BehavioralPolicy& fallback);

// Component-wise mean; the realization polytope is convex so the result is a
// valid plan. Throws ArgumentError on empty input.
RealizationPlan AverageRealization(const Treeplex& tp,
                                   const std::vector<RealizationPlan>& plans);

double SequenceInnerProduct(const Treeplex& tp, const RealizationPlan& plan,
                            const SequenceVector& loss);

// -- Balanced transition kernel ----------------------------------------------

// p*: branch probabilities proportional to downstream action counts
// A_down(x) = sum_{x' >= x} A(x'). Roots get A_down(x_1)/A_X.
struct BalancedKernel {
  std::vector<int64_t> subtree_actions;  // A_down per info set
  std::vector<double> step_prob;         // p* of entering x from its parent
                                         // sequence (roots: p*_0)
  std::vector<double> reach;             // p*_{1:h}(x), product along history
};

// One bottom-up plus one top-down traversal; O(A_X).
BalancedKernel ComputeBalancedKernel(const Treeplex& tp);

void ValidateBalancedKernel(const Treeplex& tp, const BalancedKernel& kernel,
                            double tol = 1e-12);

// -- Linear minimization ------------------------------------------------------

struct BestResponse {
  RealizationPlan plan;
  double value = 0.0;
};

// Exact minimizer of <plan, loss> over the realization polytope by bottom-up
// dynamic programming. Ties break toward the lowest action index.
BestResponse BestSequenceResponse(const Treeplex& tp,
                                  const SequenceVector& loss);

}  // namespace iig

#endif  // IIG_TREEPLEX_H_
