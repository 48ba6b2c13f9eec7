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

#include "iig/games.h"

namespace iig {

GameTree BuildMatchingPennies() {
  GameTreeBuilder builder("matching_pennies");
  const int root = builder.AddDecision(kMaxPlayer, "pick", 2);
  for (int a = 0; a < 2; ++a) {
    // The min player cannot observe the max player's move: one info set.
    const int min_node = builder.AddDecision(kMinPlayer, "pick", 2);
    builder.SetChild(root, a, min_node);
    for (int b = 0; b < 2; ++b) {
      const int term = builder.AddTerminal(a == b ? 1.0 : -1.0);
      builder.SetChild(min_node, b, term);
    }
  }
  return builder.Finalize(root);
}

}  // namespace iig
