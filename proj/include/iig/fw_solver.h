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
// Away-step Frank-Wolfe over the realization polytope. The linear oracle is
// BestSequenceResponse, which is cheap on a treeplex; vertices are
// deterministic plans. Used for the update-(U1) convex programs whose
// regularizers have no closed-form prox.

#ifndef IIG_FW_SOLVER_H_
#define IIG_FW_SOLVER_H_

#include <map>
#include <vector>

#include "iig/treeplex.h"

namespace iig {

class PolytopeObjective {
 public:
  virtual ~PolytopeObjective() = default;
  virtual double Value(const SequenceVector& w) const = 0;
  virtual void Gradient(const SequenceVector& w, SequenceVector* out) const = 0;
};

// Active vertex set; reusable across solves for warm starting.
struct FwActiveSet {
  std::vector<SequenceVector> vertices;  // 0/1 realization plans
  std::vector<double> weights;
  std::map<std::vector<signed char>, int> index;

  bool Empty() const { return vertices.empty(); }
  void Clear() {
    vertices.clear();
    weights.clear();
    index.clear();
  }
};

struct FwResult {
  RealizationPlan plan;
  double gap = 0.0;   // Frank-Wolfe duality gap at termination
  int iterations = 0;
  bool converged = false;
};

// Minimizes the objective over the realization polytope of `tp` to duality
// gap <= tol. When the iteration cap is exceeded or progress stalls at the
// double-precision gap floor, throws NumericError if `strict`, otherwise
// returns the best iterate with converged = false.
FwResult FrankWolfeSolve(const Treeplex& tp, const PolytopeObjective& objective,
                         double tol, int max_iterations,
                         FwActiveSet* warm_start, bool strict = true);

}  // namespace iig

#endif  // IIG_FW_SOLVER_H_
