// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "support.hpp"
#include "treeamb/error.hpp"

using namespace treeamb;
using namespace treeamb::test;

namespace {

ParityGameArena self_loop(int color) {
  ParityGameArena g("loop");
  g.add_vertex("v", Player::Automaton, color);
  g.add_edge(0, 0);
  return g;
}

void check_partition(const ParityGameArena& g, const WinningAnalysis& w) {
  const auto a = w.region(Player::Automaton);
  const auto p = w.region(Player::Pathfinder);
  for (int v = 0; v < g.num_vertices(); ++v) CHECK(a[v] != p[v]);
}

}  // namespace

TEST_CASE("arena validation") {
  ParityGameArena g("g");
  g.add_vertex("v", Player::Automaton, 0);
  CHECK_THROWS_AS(g.validate(), Error);
  g.set_sink(0, true);
  CHECK_NOTHROW(g.validate());
  CHECK(g.add_edge(0, 0));
  CHECK_FALSE(g.add_edge(0, 0));
  CHECK_THROWS_AS(g.validate(), Error);
  CHECK_THROWS_AS(solve(g), Error);
}

TEST_CASE("solve examples") {
  CHECK(solve(self_loop(0)).wins(Player::Automaton, 0));
  CHECK(solve(self_loop(1)).wins(Player::Pathfinder, 0));

  ParityGameArena cycle("cycle");
  cycle.add_vertex("a", Player::Automaton, 1);
  cycle.add_vertex("b", Player::Pathfinder, 2);
  cycle.add_edge(0, 1);
  cycle.add_edge(1, 0);
  const WinningAnalysis w = solve(cycle);
  CHECK(w.wins(Player::Automaton, 0));
  CHECK(w.wins(Player::Automaton, 1));

  for (const ParityGameArena& g : {self_loop(0), self_loop(1), cycle}) {
    const WinningAnalysis main = solve(g);
    const WinningAnalysis oracle = solve_oracle(g);
    CHECK(main.winner == oracle.winner);
    check_partition(g, main);
  }
}

TEST_CASE("sinks lose for their owner") {
  ParityGameArena g("sink");
  g.add_vertex("p", Player::Pathfinder, 0, true);
  g.add_vertex("a", Player::Automaton, 0, true);
  const WinningAnalysis main = solve(g);
  CHECK(main.wins(Player::Automaton, 0));
  CHECK(main.wins(Player::Pathfinder, 1));
  CHECK(solve_oracle(g).winner == main.winner);
}

TEST_CASE("a player with a choice escapes an odd cycle") {
  ParityGameArena g("choice");
  g.add_vertex("start", Player::Automaton, 0);
  g.add_vertex("odd", Player::Automaton, 1);
  g.add_vertex("even", Player::Automaton, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 1);
  g.add_edge(2, 2);
  const WinningAnalysis w = solve(g);
  CHECK(w.wins(Player::Automaton, 0));
  CHECK(w.automaton_strategy[0] == 2);
  CHECK(w.wins(Player::Pathfinder, 1));
}

TEST_CASE("verify_strategy") {
  const ParityGameArena even = self_loop(0);
  const WinningAnalysis w = solve(even);
  CHECK(verify_strategy(even, Player::Automaton, w.automaton_strategy,
                        w.region(Player::Automaton)));

  const ParityGameArena odd = self_loop(1);
  const Strategy into_odd{0};
  CHECK_FALSE(verify_strategy(odd, Player::Automaton, into_odd, std::vector<bool>{true}));

  const Strategy undefined{-1};
  CHECK_THROWS_AS(verify_strategy(even, Player::Automaton, undefined, std::vector<bool>{true}),
                  Error);
}

TEST_CASE("random arenas: solvers agree and strategies verify") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const ParityGameArena g = random_arena(rng, 8, 3);
    const WinningAnalysis main = solve(g);
    const WinningAnalysis oracle = solve_oracle(g);
    REQUIRE(main.winner == oracle.winner);
    check_partition(g, main);
    for (Player p : {Player::Automaton, Player::Pathfinder}) {
      CHECK(verify_strategy(g, p, main.strategy(p), main.region(p)));
      CHECK(verify_strategy(g, p, oracle.strategy(p), oracle.region(p)));
      // Strategies stay inside the owner's region.
      for (int v = 0; v < g.num_vertices(); ++v) {
        const int s = main.strategy(p)[v];
        if (s >= 0) {
          CHECK(g.owner(v) == p);
          CHECK(main.winner[s] == p);
        }
      }
    }
  }
}

TEST_CASE("strategy ties break toward the lowest edge index") {
  ParityGameArena g("ties");
  g.add_vertex("s", Player::Automaton, 0);
  g.add_vertex("x", Player::Automaton, 2);
  g.add_vertex("y", Player::Automaton, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 1);
  g.add_edge(2, 2);
  CHECK(solve(g).automaton_strategy[0] == 1);
}
