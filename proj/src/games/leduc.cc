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

// Cards 0..5: rank = card / 2 (J, Q, K), two suits per rank. Suits never
// matter for showdown, only for deck accounting.
constexpr int kDeckSize = 6;
constexpr int kMaxRaisesPerRound = 2;
constexpr double kRaiseSize[2] = {2.0, 4.0};

int Rank(int card) { return card / 2; }

// Net chips for player 0 at showdown: pair with the board wins, then higher
// rank, equal ranks split.
double ShowdownUtility(int card0, int card1, int board, double contrib0,
                       double contrib1) {
  const bool pair0 = Rank(card0) == Rank(board);
  const bool pair1 = Rank(card1) == Rank(board);
  int winner;
  if (pair0 != pair1) {
    winner = pair0 ? 0 : 1;
  } else if (Rank(card0) != Rank(card1)) {
    winner = Rank(card0) > Rank(card1) ? 0 : 1;
  } else {
    return 0.0;
  }
  return winner == 0 ? contrib1 : -contrib0;
}

struct LeducBuild {
  GameTreeBuilder* builder;
  int card[2];

  std::string PublicLine(const std::string& round1, int board,
                         const std::string& round2) const {
    std::string line = round1;
    if (board >= 0) {
      line += "|b" + std::to_string(board) + "|" + round2;
    }
    return line;
  }

  // Builds the decision subtree at a betting state and returns its node id.
  // `line` is the betting string of the current round; action order within a
  // state is fold (when facing a raise), call, raise (below the cap).
  int BettingNode(int round, const std::string& round1_line, int board,
                  std::string line, int to_act, int raises, double outstanding,
                  double contrib0, double contrib1) {
    std::vector<char> actions;
    if (outstanding > 0.0) actions.push_back('f');
    actions.push_back('c');
    if (raises < kMaxRaisesPerRound) actions.push_back('r');

    const std::string public_part =
        round == 0 ? line : PublicLine(round1_line, board, line);
    const std::string key = std::to_string(card[to_act]) + "|" + public_part;
    const int node = builder->AddDecision(to_act, key,
                                          static_cast<int>(actions.size()));
    for (size_t i = 0; i < actions.size(); ++i) {
      double c0 = contrib0;
      double c1 = contrib1;
      const char a = actions[i];
      int child;
      if (a == 'f') {
        child = builder->AddTerminal(to_act == 0 ? -c0 : c1);
      } else if (a == 'c') {
        (to_act == 0 ? c0 : c1) += outstanding;
        const bool round_over = !line.empty();
        if (!round_over) {
          child = BettingNode(round, round1_line, board, line + "c",
                              1 - to_act, raises, 0.0, c0, c1);
        } else {
          child = RoundDone(round, round == 0 ? line + "c" : round1_line,
                            board, c0, c1);
        }
      } else {
        (to_act == 0 ? c0 : c1) += outstanding + kRaiseSize[round];
        child = BettingNode(round, round1_line, board, line + "r", 1 - to_act,
                            raises + 1, kRaiseSize[round], c0, c1);
      }
      builder->SetChild(node, static_cast<int>(i), child);
    }
    return node;
  }

  int RoundDone(int round, const std::string& round1_line, int board,
                double contrib0, double contrib1) {
    if (round == 1) {
      return builder->AddTerminal(
          ShowdownUtility(card[0], card[1], board, contrib0, contrib1));
    }
    // Deal the community card from the four remaining.
    std::vector<int> remaining;
    for (int c = 0; c < kDeckSize; ++c) {
      if (c != card[0] && c != card[1]) remaining.push_back(c);
    }
    const int chance = builder->AddChance(
        std::vector<double>(remaining.size(), 1.0 / remaining.size()));
    for (size_t i = 0; i < remaining.size(); ++i) {
      const int sub = BettingNode(1, round1_line, remaining[i], "", 0, 0, 0.0,
                                  contrib0, contrib1);
      builder->SetChild(chance, static_cast<int>(i), sub);
    }
    return chance;
  }
};

}  // namespace

GameTree BuildLeduc() {
  GameTreeBuilder builder("leduc");
  std::vector<double> deal_probs(kDeckSize * (kDeckSize - 1),
                                 1.0 / (kDeckSize * (kDeckSize - 1)));
  const int root = builder.AddChance(deal_probs);
  int outcome = 0;
  for (int c0 = 0; c0 < kDeckSize; ++c0) {
    for (int c1 = 0; c1 < kDeckSize; ++c1) {
      if (c0 == c1) continue;
      LeducBuild build{&builder, {c0, c1}};
      // Both players ante 1.
      const int node = build.BettingNode(0, "", -1, "", 0, 0, 0.0, 1.0, 1.0);
      builder.SetChild(root, outcome++, node);
    }
  }
  return builder.Finalize(root);
}

}  // namespace iig
