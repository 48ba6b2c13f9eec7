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

#include "iig/fw_solver.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "iig/errors.h"

namespace iig {

namespace {

std::vector<signed char> VertexKey(const SequenceVector& v) {
  std::vector<signed char> key(v.size());
  for (size_t i = 0; i < v.size(); ++i) key[i] = v[i] > 0.5 ? 1 : 0;
  return key;
}

double Dot(const SequenceVector& a, const SequenceVector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact line search on the convex restriction phi(s) = f(w + s d) by
// bisection on its derivative.
double LineSearch(const PolytopeObjective& objective, const SequenceVector& w,
                  const SequenceVector& d, double s_max) {
  const int n = static_cast<int>(w.size());
  SequenceVector probe(n), grad(n);
  auto deriv = [&](double s) {
    for (int i = 0; i < n; ++i) probe[i] = std::max(0.0, w[i] + s * d[i]);
    objective.Gradient(probe, &grad);
    return Dot(grad, d);
  };
  if (deriv(0.0) >= 0.0) return 0.0;
  if (deriv(s_max) <= 0.0) return s_max;
  double lo = 0.0, hi = s_max;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (deriv(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void RebuildIterate(const FwActiveSet& active, SequenceVector* w) {
  std::fill(w->begin(), w->end(), 0.0);
  for (size_t v = 0; v < active.vertices.size(); ++v) {
    const double weight = active.weights[v];
    if (weight <= 0.0) continue;
    const SequenceVector& vertex = active.vertices[v];
    for (size_t i = 0; i < w->size(); ++i) (*w)[i] += weight * vertex[i];
  }
}

void CompactActiveSet(FwActiveSet* active) {
  FwActiveSet next;
  for (size_t v = 0; v < active->vertices.size(); ++v) {
    if (active->weights[v] <= 1e-15) continue;
    next.index[VertexKey(active->vertices[v])] =
        static_cast<int>(next.vertices.size());
    next.vertices.push_back(std::move(active->vertices[v]));
    next.weights.push_back(active->weights[v]);
  }
  *active = std::move(next);
}

}  // namespace

FwResult FrankWolfeSolve(const Treeplex& tp, const PolytopeObjective& objective,
                         double tol, int max_iterations,
                         FwActiveSet* warm_start, bool strict) {
  FwActiveSet local;
  FwActiveSet& active = warm_start ? *warm_start : local;
  const int n = tp.NumSequences();

  if (active.Empty()) {
    // Seed with the uniform-policy vertex mix collapsed to one plan: start
    // from the uniform plan expressed as a convex combination is overkill;
    // a single best-response vertex at the zero gradient point works just
    // as well and keeps the set small.
    BestResponse seed = BestSequenceResponse(tp, SequenceVector(n, 0.0));
    active.index[VertexKey(seed.plan.mass)] = 0;
    active.vertices.push_back(seed.plan.mass);
    active.weights.push_back(1.0);
  }

  SequenceVector w(n, 0.0);
  RebuildIterate(active, &w);
  SequenceVector grad(n), direction(n);

  FwResult result;
  result.plan.mass = w;
  // Stall detection: the achievable gap in doubles scales with the loss
  // magnitudes; stop once the gap has not improved materially for a while.
  double stall_best = 1e300;
  int stall_counter = 0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    objective.Gradient(w, &grad);
    BestResponse lmo = BestSequenceResponse(tp, grad);
    const double fw_gap = Dot(grad, w) - lmo.value;
    result.gap = fw_gap;
    result.iterations = iter;
    if (fw_gap <= tol) {
      result.converged = true;
      break;
    }
    if (fw_gap < 0.9 * stall_best) {
      stall_best = fw_gap;
      stall_counter = 0;
    } else if (++stall_counter >= 512) {
      break;
    }

    // Away vertex: active vertex with the largest gradient inner product.
    int away = -1;
    double away_score = -1e300;
    for (size_t v = 0; v < active.vertices.size(); ++v) {
      if (active.weights[v] <= 0.0) continue;
      const double score = Dot(grad, active.vertices[v]);
      if (score > away_score) {
        away_score = score;
        away = static_cast<int>(v);
      }
    }

    const double fw_improve = fw_gap;
    const double away_improve = away >= 0 ? away_score - Dot(grad, w) : -1.0;
    const bool do_away = away >= 0 && away_improve > fw_improve &&
                         active.weights[away] < 1.0;

    if (!do_away) {
      for (int i = 0; i < n; ++i) direction[i] = lmo.plan.mass[i] - w[i];
      const double step = LineSearch(objective, w, direction, 1.0);
      if (step <= 0.0) break;  // numerically stalled
      for (double& weight : active.weights) weight *= 1.0 - step;
      const auto key = VertexKey(lmo.plan.mass);
      auto it = active.index.find(key);
      if (it == active.index.end()) {
        active.index[key] = static_cast<int>(active.vertices.size());
        active.vertices.push_back(lmo.plan.mass);
        active.weights.push_back(step);
      } else {
        active.weights[it->second] += step;
      }
      for (int i = 0; i < n; ++i) w[i] += step * direction[i];
    } else {
      const SequenceVector& v = active.vertices[away];
      for (int i = 0; i < n; ++i) direction[i] = w[i] - v[i];
      const double s_max = active.weights[away] / (1.0 - active.weights[away]);
      const double step = LineSearch(objective, w, direction, s_max);
      if (step <= 0.0) break;
      for (double& weight : active.weights) weight *= 1.0 + step;
      active.weights[away] -= step;
      if (active.weights[away] < 1e-15) active.weights[away] = 0.0;
      for (int i = 0; i < n; ++i) w[i] += step * direction[i];
    }

    if ((iter + 1) % 64 == 0) {
      CompactActiveSet(&active);
      RebuildIterate(active, &w);
    }
    for (int i = 0; i < n; ++i) w[i] = std::max(w[i], 0.0);
  }

  result.plan.mass = std::move(w);
  if (!result.converged && result.gap > tol) {
    // One more gap evaluation after the final step.
    objective.Gradient(result.plan.mass, &grad);
    BestResponse lmo = BestSequenceResponse(tp, grad);
    result.gap = Dot(grad, result.plan.mass) - lmo.value;
    result.converged = result.gap <= tol;
  }
  if (!result.converged && strict) {
    char msg[96];
    std::snprintf(msg, sizeof(msg),
                  "frank-wolfe: no convergence, residual gap %.3g",
                  result.gap);
    throw NumericError(msg);
  }
  return result;
}

}  // namespace iig
