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
//
// The membership game of an automaton and a regular tree, played on the
// finite product of the automaton with the tree's machine, and the objects
// read off its positional strategies.
//
// Invalid moves: in the game on the infinite tree, Automaton may pick a
// tuple that is not a transition and then loses at once. Here such moves
// are absent and an Automaton vertex without transitions is a losing sink.
// Both versions have the same winner from every position: a strategy that
// makes an invalid move loses anyway, so Automaton's winning strategies
// avoid them, and Pathfinder's options are unchanged.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeamb/automata.hpp"
#include "treeamb/games.hpp"
#include "treeamb/trees.hpp"

namespace treeamb {

class MembershipGame {
 public:
  // Automaton vertex (tree state, automaton state).
  struct Position {
    int tree_state;
    int state;
  };
  // Pathfinder vertex (tree state, left state, right state).
  struct Choice {
    int tree_state;
    int left;
    int right;
  };

  const ParityGameArena& arena() const { return arena_; }
  // The automaton the arena was built from; single_initial may have
  // appended a fresh root state.
  const ParityTreeAutomaton& game_automaton() const { return game_automaton_; }
  const ParityTreeAutomaton& automaton() const { return automaton_; }
  const RegularTree& tree() const { return tree_; }
  bool normalized() const { return normalized_; }

  bool is_position(int v) const { return kind_[v] == 0; }
  Position position(int v) const { return positions_[index_[v]]; }
  Choice choice(int v) const { return choices_[index_[v]]; }
  // Vertex of (tree state, automaton state) or -1 when unreachable.
  int vertex_of(int tree_state, int state) const;
  // Letter of game_automaton() for the label at tree state m.
  int letter_at(int tree_state) const { return letter_[tree_state]; }
  const std::vector<int>& roots() const { return roots_; }

  friend struct MembershipGameFactory;

 private:
  MembershipGame(ParityTreeAutomaton automaton, ParityTreeAutomaton game_automaton,
                 RegularTree tree)
      : automaton_(std::move(automaton)),
        game_automaton_(std::move(game_automaton)),
        tree_(std::move(tree)) {}

  ParityTreeAutomaton automaton_;
  ParityTreeAutomaton game_automaton_;
  RegularTree tree_;
  bool normalized_ = false;
  ParityGameArena arena_;
  std::vector<int> kind_;   // 0 position, 1 choice
  std::vector<int> index_;  // into positions_ or choices_
  std::vector<Position> positions_;
  std::vector<Choice> choices_;
  std::vector<int> position_vertex_;  // tree_state * |Q| + state -> vertex
  std::vector<int> letter_;
  std::vector<int> roots_;
};

// Product arena rooted at (t.init, q) for every listed state q; the first
// root is the arena's initial vertex. No normalization is applied.
MembershipGame build_product(const ParityTreeAutomaton& a, const RegularTree& t,
                             const std::vector<int>& root_states);
// The membership game; automata without exactly one initial state are
// first normalized by single_initial.
MembershipGame build_game(const ParityTreeAutomaton& a, const RegularTree& t);

bool member(const ParityTreeAutomaton& a, const RegularTree& t);

// A regular computation of an automaton on a regular tree. The machine's
// alphabet is the automaton's state names.
class RegularRun {
 public:
  RegularRun(RegularTree machine, ParityTreeAutomaton automaton,
             RegularTree tree);

  const RegularTree& machine() const { return machine_; }
  const ParityTreeAutomaton& automaton() const { return automaton_; }
  const RegularTree& tree() const { return tree_; }
  int state_at(const NodePath& v) const { return machine_.label_at(v); }
  int root_state() const { return machine_.out(machine_.init()); }

  // Throws InconsistentRun unless the root carries an initial state and
  // every node carries a transition matching the tree's label.
  void check_consistent() const;

 private:
  RegularTree machine_;
  ParityTreeAutomaton automaton_;
  RegularTree tree_;
};

// True iff the two runs label some node differently.
bool runs_differ(const RegularRun& a, const RegularRun& b);

// A positional Pathfinder strategy on the tree: for every machine state and
// pair of automaton states, the direction to follow.
class PathfinderStrategyTree {
 public:
  PathfinderStrategyTree(std::string name, std::string automaton_name,
                         int num_automaton_states,
                         std::vector<std::string> state_names,
                         std::vector<std::array<int, 2>> next, int init,
                         std::vector<std::vector<Dir>> table);

  const std::string& name() const { return name_; }
  const std::string& automaton_name() const { return automaton_name_; }
  int num_automaton_states() const { return num_q_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  const std::string& state_name(int s) const { return names_[s]; }
  int init() const { return init_; }
  int next(int s, Dir d) const { return next_[s][idx(d)]; }
  Dir direction(int s, int left, int right) const {
    return table_[s][left * num_q_ + right];
  }

 private:
  std::string name_;
  std::string automaton_name_;
  int num_q_;
  std::vector<std::string> names_;
  std::vector<std::array<int, 2>> next_;
  int init_;
  std::vector<std::vector<Dir>> table_;
};

RegularRun automaton_strategy_to_run(const MembershipGame& g,
                                     const WinningAnalysis& analysis);
// The run read off the winning strategy of solve(build_game(a, t)).
RegularRun accepting_run(const ParityTreeAutomaton& a, const RegularTree& t);
PathfinderStrategyTree pathfinder_strategy(const ParityTreeAutomaton& a,
                                           const RegularTree& t);
bool run_is_accepting(const RegularRun& run);
RegularRun run_graft(const RegularRun& run, const RegularRun& sub,
                     const NodePath& v);
NodePath leads(const ParityTreeAutomaton& a, const RegularTree& t0,
               const PathfinderStrategyTree& str, const RegularTree& tprime,
               const RegularRun& run);

}  // namespace treeamb
