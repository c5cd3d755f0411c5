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
// Emptiness, products that demand several distinct runs, and the
// per-tree classification of the number of accepting runs.
//
// Counting works on the product P of the tree's machine with the automaton.
// Let W be Automaton's winning positions of the product game. A finite
// partial run extends to an accepting run iff all its frontier positions
// lie in W, since a finite prefix never changes which colors occur
// infinitely often. Hence the useful transitions at a position are those
// whose two children lie in W, and the accepting runs from a position are
// exactly the ways of picking a useful transition at every node below it.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeamb/automata.hpp"
#include "treeamb/membership.hpp"

namespace treeamb {

// nonempty[q] iff some tree is accepted from q.
std::vector<bool> nonempty_states(const ParityTreeAutomaton& a);
std::optional<RegularTree> emptiness(const ParityTreeAutomaton& a);

// Accepts exactly the trees with at least k pairwise distinct accepting
// runs of a. Checkers of a pair of trackers search along one path for a
// node where the two trackers differ.
ParityTreeAutomaton k_distinct_runs_automaton(const ParityTreeAutomaton& a,
                                              int k);

struct RunCount {
  bool infinite = false;
  std::uint64_t count = 0;  // saturates at the cap given to count_runs
};
RunCount count_runs(const ParityTreeAutomaton& a, const RegularTree& t,
                    std::uint64_t cap);

bool at_least_k(const ParityTreeAutomaton& a, const RegularTree& t, int k);
// Membership in k_distinct_runs_automaton(a, k); slower, independent.
bool at_least_k_product(const ParityTreeAutomaton& a, const RegularTree& t,
                        int k);
bool is_k_ambiguous(const ParityTreeAutomaton& a, int k);

enum class WitnessMode { Infinite, Uncountable };

// One step of a walk in the product: at position (tree_state, state) use
// transition and move in direction dir.
struct WalkStep {
  int tree_state = 0;
  int state = 0;
  Transition transition;
  Dir dir = Dir::L;
};

struct RegenerationWitness {
  enum class Shape {
    Cycle,       // p returns to itself below a branching position
    Branching,   // even return of p with a sibling that has two runs
    Sequential,  // two even returns of p that pick different transitions
  };
  WitnessMode mode = WitnessMode::Infinite;
  Shape shape = Shape::Cycle;
  int tree_state = 0;
  int state = 0;
  NodePath position;  // a node where p occurs in some accepting run
  std::vector<WalkStep> spine;        // closed walk from p back to p
  std::vector<WalkStep> alternative;  // Sequential: the second closed walk
  int branch_step = -1;  // Branching: spine step whose sibling has two runs
  int spine_max_color = 0;
  std::vector<RegularRun> residuals;  // two distinct runs from p
};

std::string_view shape_name(RegenerationWitness::Shape shape);

std::optional<RegenerationWitness> find_regeneration_witness(
    const ParityTreeAutomaton& a, const RegularTree& t, WitnessMode mode);

// Re-derives every property a witness claims from a and t. Returns an
// empty string when valid, otherwise the first failed check.
std::string check_witness(const ParityTreeAutomaton& a, const RegularTree& t,
                          const RegenerationWitness& w);

struct AmbiguityVerdict {
  enum class Kind { Exact, AtLeast, Infinite, Uncountable };
  Kind kind = Kind::Exact;
  std::uint64_t n = 0;  // Exact: the count; AtLeast: K + 1
  std::optional<RegenerationWitness> witness;

  static AmbiguityVerdict exact(std::uint64_t n) { return {Kind::Exact, n, {}}; }
  std::string str() const;  // "exact 3", "at_least 9", "infinite", ...
};

AmbiguityVerdict classify(const ParityTreeAutomaton& a, const RegularTree& t,
                          int max_k);

}  // namespace treeamb
