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

#include <string>
#include <vector>

#include "iig/games.h"

namespace iig {

namespace {

constexpr char kCards[3] = {'J', 'Q', 'K'};

// Net utility for the max player (player 1) given both cards and the final
// betting line. Showdown pots: 1 after check-check, 2 after a called bet.
double KuhnUtility(int card1, int card2, const std::string& line) {
  if (line == "bf") return 1.0;     // P1 bets, P2 folds
  if (line == "cbf") return -1.0;   // P1 checks, P2 bets, P1 folds
  const double pot = (line == "cc") ? 1.0 : 2.0;
  return card1 > card2 ? pot : -pot;
}

}  // namespace

GameTree BuildKuhn() {
  GameTreeBuilder builder("kuhn");
  std::vector<double> deal_probs(6, 1.0 / 6.0);
  const int root = builder.AddChance(deal_probs);
  int outcome = 0;
  for (int card1 = 0; card1 < 3; ++card1) {
    for (int card2 = 0; card2 < 3; ++card2) {
      if (card1 == card2) continue;
      const std::string k1(1, kCards[card1]);
      const std::string k2(1, kCards[card2]);
      // P1: check (0) or bet (1).
      const int p1 = builder.AddDecision(kMaxPlayer, k1, 2);
      builder.SetChild(root, outcome++, p1);

      // P1 checked; P2: check (0) or bet (1).
      const int p2_after_check = builder.AddDecision(kMinPlayer, k2 + "|c", 2);
      builder.SetChild(p1, 0, p2_after_check);
      builder.SetChild(p2_after_check, 0,
                       builder.AddTerminal(KuhnUtility(card1, card2, "cc")));
      // P2 bet; P1: fold (0) or call (1).
      const int p1_facing_bet = builder.AddDecision(kMaxPlayer, k1 + "|cb", 2);
      builder.SetChild(p2_after_check, 1, p1_facing_bet);
      builder.SetChild(p1_facing_bet, 0,
                       builder.AddTerminal(KuhnUtility(card1, card2, "cbf")));
      builder.SetChild(p1_facing_bet, 1,
                       builder.AddTerminal(KuhnUtility(card1, card2, "cbc")));

      // P1 bet; P2: fold (0) or call (1).
      const int p2_facing_bet = builder.AddDecision(kMinPlayer, k2 + "|b", 2);
      builder.SetChild(p1, 1, p2_facing_bet);
      builder.SetChild(p2_facing_bet, 0,
                       builder.AddTerminal(KuhnUtility(card1, card2, "bf")));
      builder.SetChild(p2_facing_bet, 1,
                       builder.AddTerminal(KuhnUtility(card1, card2, "bc")));
    }
  }
  return builder.Finalize(root);
}

}  // namespace iig
