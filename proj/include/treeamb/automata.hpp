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
// Parity tree automata, deterministic parity word automata and finite tree
// automata, with the run-count-aware constructions on them.

#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeamb/trees.hpp"

namespace treeamb {

// (state, letter, left child state, right child state).
struct Transition {
  int state = 0;
  int letter = 0;
  int left = 0;
  int right = 0;

  int child(Dir d) const { return d == Dir::L ? left : right; }
  auto operator<=>(const Transition&) const = default;
};

// A nondeterministic parity tree automaton with max-parity acceptance. An
// automaton without states is the distinguished empty-language marker.
class ParityTreeAutomaton {
 public:
  ParityTreeAutomaton(std::string name, Alphabet alphabet,
                      std::vector<std::string> state_names,
                      std::vector<int> colors, std::vector<int> initials,
                      std::vector<Transition> transitions);

  static ParityTreeAutomaton empty_marker(std::string name, Alphabet alphabet);

  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  bool is_empty_marker() const { return names_.empty(); }
  const std::string& state_name(int q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const { return names_; }
  int color(int q) const { return colors_[q]; }
  const std::vector<int>& colors() const { return colors_; }
  int max_color() const;
  const std::vector<int>& initials() const { return initials_; }
  bool is_initial(int q) const;

  std::span<const Transition> transitions() const { return transitions_; }
  std::span<const Transition> transitions_from(int q, int letter) const;
  std::span<const Transition> transitions_from(int q) const;
  bool has_transition(const Transition& tr) const;

  std::optional<int> find_state(std::string_view name) const;
  // Throws UnknownState when absent.
  int state_index(std::string_view name) const;

  ParityTreeAutomaton renamed(std::string name) const;
  // Same automaton over a superset alphabet.
  ParityTreeAutomaton with_alphabet(const Alphabet& alphabet) const;
  // All states are renamed prefix + old name.
  ParityTreeAutomaton prefixed(const std::string& prefix) const;

 private:
  std::string name_;
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<int> colors_;
  std::vector<int> initials_;
  std::vector<Transition> transitions_;
  std::vector<int> offset_;  // by state * |alphabet| + letter
  std::unordered_map<std::string, int> index_;
};

// Accumulates states and transitions by name.
class PtaBuilder {
 public:
  PtaBuilder(std::string name, Alphabet alphabet)
      : name_(std::move(name)), alphabet_(std::move(alphabet)) {}

  int add_state(std::string name, int color);
  int state(std::string_view name) const;
  int letter(std::string_view symbol) const { return alphabet_.index(symbol); }
  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  void add_initial(int q) { initials_.push_back(q); }
  void add_transition(int q, int letter, int left, int right) {
    transitions_.push_back({q, letter, left, right});
  }
  // Copies all states and transitions of a over the builder's alphabet,
  // prefixing state names. Returns the id of a's state 0.
  int embed(const ParityTreeAutomaton& a, const std::string& prefix);

  ParityTreeAutomaton build() const;

 private:
  std::string name_;
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<int> colors_;
  std::vector<int> initials_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, int> index_;
};

// A complete deterministic parity word automaton. Letters are tuples of
// colors encoded in mixed radix, first coordinate least significant.
class DetParityWordAutomaton {
 public:
  DetParityWordAutomaton(std::vector<int> radices, std::vector<int> colors,
                         std::vector<int> delta, int init);

  int num_states() const { return static_cast<int>(colors_.size()); }
  int num_letters() const { return num_letters_; }
  const std::vector<int>& radices() const { return radices_; }
  int init() const { return init_; }
  int color(int s) const { return colors_[s]; }
  int step(int s, int letter) const { return delta_[s * num_letters_ + letter]; }
  int encode(std::span<const int> coords) const;

  // Acceptance of stem . cycle^omega.
  bool accepts_lasso(std::span<const int> stem,
                     std::span<const int> cycle) const;

 private:
  std::vector<int> radices_;
  int num_letters_ = 1;
  std::vector<int> colors_;
  std::vector<int> delta_;
  int init_ = 0;
};

// Accepts the tuples of color sequences in which every coordinate has an
// even maximal color occurring infinitely often. Coordinate i ranges over
// 0..max_colors[i].
DetParityWordAutomaton conjunction_dpw(std::span<const int> max_colors);
DetParityWordAutomaton conjunction_dpw(int d1, int d2);

ParityTreeAutomaton trim_useful(const ParityTreeAutomaton& a);
ParityTreeAutomaton union_of(const ParityTreeAutomaton& a1,
                             const ParityTreeAutomaton& a2);
ParityTreeAutomaton intersect(const ParityTreeAutomaton& a1,
                              const ParityTreeAutomaton& a2);
ParityTreeAutomaton restrict_initials(const ParityTreeAutomaton& a,
                                      std::span<const int> initials);
ParityTreeAutomaton restrict_initials(const ParityTreeAutomaton& a,
                                      std::span<const std::string> initials);
// The fresh initial state is appended as the last state.
ParityTreeAutomaton single_initial(const ParityTreeAutomaton& a);
ParityTreeAutomaton moore_reduction(const ParityTreeAutomaton& a2,
                                    const MooreMachine& m);
ParityTreeAutomaton det_pta_for_tree(const RegularTree& t);

// A finite binary tree; leaves carry leaf symbols or variables and inner
// nodes carry inner symbols.
class FiniteLabeledTree {
 public:
  struct Node {
    std::string label;
    int left = -1;
    int right = -1;
    bool is_leaf() const { return left < 0; }
  };

  // Nodes listed by path; the set must be prefix-closed with every inner
  // node having both children.
  explicit FiniteLabeledTree(
      std::span<const std::pair<NodePath, std::string>> nodes);

  const Node& node(int i) const { return nodes_[i]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  // (path, label) pairs in preorder.
  std::vector<std::pair<NodePath, std::string>> labeled_paths() const;

 private:
  std::vector<Node> nodes_;
};

struct LeafTransition {
  int state = 0;
  int symbol = 0;
  auto operator<=>(const LeafTransition&) const = default;
};

class FiniteTreeAutomaton {
 public:
  FiniteTreeAutomaton(std::string name, Alphabet leaf_alphabet,
                      Alphabet inner_alphabet,
                      std::vector<std::string> state_names,
                      std::vector<int> initials,
                      std::vector<LeafTransition> leaves,
                      std::vector<Transition> inner);

  const std::string& name() const { return name_; }
  const Alphabet& leaf_alphabet() const { return leaf_alphabet_; }
  const Alphabet& inner_alphabet() const { return inner_alphabet_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  const std::string& state_name(int q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::vector<int>& initials() const { return initials_; }
  bool is_initial(int q) const;
  const std::vector<LeafTransition>& leaves() const { return leaves_; }
  const std::vector<Transition>& inner() const { return inner_; }

 private:
  std::string name_;
  Alphabet leaf_alphabet_;
  Alphabet inner_alphabet_;
  std::vector<std::string> names_;
  std::vector<int> initials_;
  std::vector<LeafTransition> leaves_;
  std::vector<Transition> inner_;
};

bool fta_accepts(const FiniteTreeAutomaton& b, const FiniteLabeledTree& tau);
bool fta_is_unambiguous(const FiniteTreeAutomaton& b);
// Bottom-up subset construction, read top-down over the reachable subsets.
// The result is unambiguous and accepts the same finite trees.
FiniteTreeAutomaton fta_unambiguous_equivalent(const FiniteTreeAutomaton& b);

}  // namespace treeamb
